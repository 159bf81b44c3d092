//! Derivative-scale × initial-speed robustness grid.

use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Controller, RunConfig, ScenarioKind};
use crate::metrics::RunMetrics;
use crate::scenario::{landing_setup, run_controller, TrainedTable};

#[derive(Debug, Clone, Serialize)]
pub struct SweepPoint {
    pub derivative_scale: f64,
    pub airspeed: f64,
    /// Set when the run could not be started (e.g. no trim).
    pub error: Option<String>,
    pub metrics: Option<RunMetrics>,
}

impl SweepPoint {
    pub fn diverged(&self) -> bool {
        self.metrics.as_ref().is_none_or(|m| m.diverged)
    }
}

/// Runs every (scale, speed) pair in parallel; output is ordered by scale,
/// then speed.
pub fn robustness_sweep(
    cfg: &RunConfig,
    controller: Controller,
    table: Option<&TrainedTable>,
) -> Vec<SweepPoint> {
    let pairs: Vec<(f64, f64)> = cfg
        .sweep
        .scales()
        .into_iter()
        .flat_map(|s| cfg.sweep.speeds().into_iter().map(move |v| (s, v)))
        .collect();
    pairs
        .par_iter()
        .map(|&(scale, airspeed)| {
            let mut c = cfg.clone();
            c.model.derivative_scale = scale;
            let result = landing_setup(&c, ScenarioKind::Ideal, airspeed)
                .and_then(|setup| run_controller(&c, &setup, controller, table));
            match result {
                Ok(run) => SweepPoint {
                    derivative_scale: scale,
                    airspeed,
                    error: None,
                    metrics: Some(run.metrics),
                },
                Err(e) => SweepPoint {
                    derivative_scale: scale,
                    airspeed,
                    error: Some(e.to_string()),
                    metrics: None,
                },
            }
        })
        .collect()
}
