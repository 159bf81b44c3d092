//! Builds landing runs from a configuration and a controller.

use autoland_core::guidance::plan_landing;
use autoland_core::rl::{ActionSet, QTable, StateGrid};

use crate::config::{Controller, RunConfig, ScenarioKind};
use crate::error::{HarnessError, Result};
use crate::landing::{fly, LandingRun, LandingSetup, Policy};

/// A trained table together with the grid and actions it was trained on.
#[derive(Debug, Clone)]
pub struct TrainedTable {
    pub table: QTable<f64>,
    pub grid: StateGrid<f64>,
    pub actions: ActionSet<f64>,
}

pub fn landing_setup(cfg: &RunConfig, kind: ScenarioKind, airspeed: f64) -> Result<LandingSetup> {
    let g = &cfg.guidance;
    let geometry = plan_landing(
        g.v_stall,
        g.approach_angle,
        cfg.scenario.altitude,
        g.screen_height,
    )?;
    Ok(LandingSetup {
        plant: cfg.model.plant_model(kind),
        airspeed,
        altitude: cfg.scenario.altitude,
        duration: cfg.scenario.duration,
        dt: cfg.scenario.dt,
        geometry,
        turbulence: cfg.turbulence_for(kind),
        sensor: cfg.sensor_for(kind),
        fault: cfg.fault_for(kind),
        pitch_command: cfg.scenario.pitch_command,
        alpha_filter: cfg.scenario.alpha_filter,
        rate_feed: cfg.scenario.rate_feed,
        start_on_glideslope: cfg.scenario.start_on_glideslope,
        gains: cfg.gains,
        seed: cfg.scenario.seed,
    })
}

/// Flies `controller` through the setup. Learned controllers need a table.
pub fn run_controller(
    cfg: &RunConfig,
    setup: &LandingSetup,
    controller: Controller,
    table: Option<&TrainedTable>,
) -> Result<LandingRun> {
    match controller.method() {
        // Both tables act through the fuzzy action assignment.
        Some(_) => {
            let t = table.ok_or_else(|| {
                HarnessError::Config(format!("controller {controller} needs a Q-table"))
            })?;
            let policy = Policy::Table {
                table: &t.table,
                grid: &t.grid,
                actions: &t.actions,
                window: cfg.rl.window,
            };
            fly(setup, &policy)
        }
        None => fly(
            setup,
            &Policy::Inversion {
                model: cfg.model.design_model(),
            },
        ),
    }
}

/// The configured scenario with the configured controller.
pub fn evaluate(cfg: &RunConfig, table: Option<&TrainedTable>) -> Result<LandingRun> {
    let kind = cfg.scenario.kind;
    if kind == ScenarioKind::Sweep {
        return Err(HarnessError::Config(
            "use the sweep command for the sweep scenario".into(),
        ));
    }
    let setup = landing_setup(cfg, kind, cfg.scenario.airspeed)?;
    run_controller(cfg, &setup, cfg.scenario.controller, table)
}
