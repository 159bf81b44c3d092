use thiserror::Error;

/// Errors raised by the simulation, controllers and learners.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("simulation diverged at t={t:.3}s: {reason}")]
    Diverged { t: f64, reason: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("trim failed after {iterations} iterations, residual norm {residual:e}")]
    TrimFailure { iterations: usize, residual: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("landing geometry error: {0}")]
    Geometry(String),

    #[error("controller fault: {0}")]
    ControllerFault(String),

    #[error("learning diverged in episode {episode}, step {step}: {reason}")]
    LearningDiverged {
        episode: usize,
        step: usize,
        reason: String,
    },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
