//! Nonlinear six-degree-of-freedom rigid-body model, trim and linearisation.

mod eom;
mod integrate;
mod linearize;
mod model;
mod state;
mod trim;

pub(crate) use eom::mat_vec;
pub use eom::{
    aero_forces_moments, body_to_earth, gravity_body, pitch_moment_without_elevator,
    stability_loads, stability_to_body, state_derivative, AeroLoads, StabilityLoads, MIN_AIRSPEED,
};
pub use integrate::{integrate_step, Airframe};
pub use linearize::{
    eigenvalues, linearize_longitudinal, longitudinal_jacobian, longitudinal_rates,
    LongitudinalModel, ModeRoots, LINEARIZATION_STEP,
};
pub use model::{AeroModel, DerivativeSet, Derivatives, ForceReference};
pub use state::{
    saturate_elevator, skew, AircraftState, ControlInputs, StateRates, ELEVATOR_LIMIT, STATE_DIM,
};
pub use trim::{solve_trim, TrimPoint, TRIM_MAX_ITERATIONS, TRIM_TOLERANCE};
