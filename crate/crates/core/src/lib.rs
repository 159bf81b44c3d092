//! Longitudinal autoland simulation: a six-degree-of-freedom airframe,
//! Dryden turbulence, elevator degradation, landing-path guidance, a
//! dynamic-inversion controller and fuzzy/tabular Q-learning.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`). The
//! aliases at the crate root fix the scalar to `f64`.

// Negated comparisons are how preconditions reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod atmosphere;
pub mod control;
pub mod degradation;
pub mod dynamics;
pub mod error;
pub mod guidance;
pub mod rl;
pub mod scalar;
pub mod units;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type State = dynamics::AircraftState<f64>;
pub type Inputs = dynamics::ControlInputs<f64>;
pub type Model = dynamics::AeroModel<f64>;
pub type Trim = dynamics::TrimPoint<f64>;
pub type Wind = atmosphere::WindState<f64>;
pub type Geometry = guidance::LandingGeometry<f64>;
pub type Inversion = control::DynamicInversion<f64>;
pub type Grid = rl::StateGrid<f64>;
pub type Actions = rl::ActionSet<f64>;
pub type Table = rl::QTable<f64>;
