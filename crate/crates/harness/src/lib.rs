//! Training, landing scenarios, metrics and the robustness sweep.

pub mod compare;
pub mod config;
pub mod env;
pub mod error;
pub mod landing;
pub mod metrics;
pub mod output;
pub mod scenario;
pub mod sweep;
pub mod train;

pub use config::{Controller, RunConfig, ScenarioKind};
pub use error::{HarnessError, Result};
