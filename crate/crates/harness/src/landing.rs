//! Closed-loop landing along the planned glideslope and flare.

use autoland_core::atmosphere::{add_sensor_noise, SensorNoise, Turbulence, TurbulenceConfig};
use autoland_core::control::{di_outer, DIGains, DynamicInversion};
use autoland_core::degradation::{apply_fault, FaultSchedule};
use autoland_core::dynamics::{solve_trim, AeroModel, AircraftState, Airframe, ControlInputs};
use autoland_core::guidance::{DesiredPath, LandingGeometry, PathCommand};
use autoland_core::rl::{faa_action, ActionSet, Neighborhood, QTable, StateGrid, Window};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::{PitchCommand, RateFeed};
use crate::error::Result;
use crate::metrics::RunMetrics;

/// Attitude beyond which a run counts as diverged, deg.
pub const MAX_PITCH_DEG: f64 = 45.0;
/// Climb above the initial altitude beyond which a run counts as diverged, m.
pub const MAX_CLIMB: f64 = 200.0;

/// One record per integration step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub x: f64,
    pub theta: f64,
    pub theta_des: f64,
    pub q: f64,
    pub h: f64,
    pub h_des: f64,
    pub delta_e_cmd: f64,
    pub delta_e_eff: f64,
    pub u: f64,
    pub alpha: f64,
    pub airspeed: f64,
    pub gust: [f64; 3],
    pub omega_w: [f64; 3],
}

#[derive(Debug, Clone)]
pub enum Policy<'a> {
    Table {
        table: &'a QTable<f64>,
        grid: &'a StateGrid<f64>,
        actions: &'a ActionSet<f64>,
        window: Window,
    },
    Inversion {
        /// Model the controller inverts.
        model: AeroModel<f64>,
    },
}

#[derive(Debug, Clone)]
pub struct LandingSetup {
    pub plant: AeroModel<f64>,
    pub airspeed: f64,
    pub altitude: f64,
    pub duration: f64,
    pub dt: f64,
    pub geometry: LandingGeometry<f64>,
    pub turbulence: TurbulenceConfig,
    pub sensor: SensorNoise,
    pub fault: FaultSchedule,
    pub pitch_command: PitchCommand,
    pub rate_feed: RateFeed,
    /// Time constant of the angle-of-attack filter feeding the altitude loop, s.
    /// Zero uses the instantaneous value; infinity holds the trim value.
    pub alpha_filter: f64,
    /// Start descending along the approach angle instead of in level flight.
    pub start_on_glideslope: bool,
    pub gains: DIGains,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct LandingRun {
    pub metrics: RunMetrics,
    pub history: Vec<Sample>,
}

// One pilot per run, so the size difference costs nothing.
#[allow(clippy::large_enum_variant)]
enum Pilot<'a> {
    Table {
        table: &'a QTable<f64>,
        grid: &'a StateGrid<f64>,
        actions: &'a ActionSet<f64>,
        window: Window,
    },
    Inversion(DynamicInversion<f64>),
}

fn divergence(s: &AircraftState<f64>, h0: f64) -> Option<String> {
    if !s.is_finite() {
        Some(format!("non-finite state at t={:.2}", s.t))
    } else if s.theta.abs().to_degrees() > MAX_PITCH_DEG {
        Some(format!(
            "pitch {:.1} deg at t={:.2}",
            s.theta.to_degrees(),
            s.t
        ))
    } else if s.h > h0 + MAX_CLIMB {
        Some(format!("altitude runaway {:.1} m at t={:.2}", s.h, s.t))
    } else {
        None
    }
}

/// Flies one landing. Ends at touchdown, at the horizon, or on divergence.
pub fn fly(setup: &LandingSetup, policy: &Policy<'_>) -> Result<LandingRun> {
    let trim = solve_trim(&setup.plant, setup.airspeed, setup.altitude)?;
    let dt = setup.dt;
    let mut start = trim.state();
    if setup.start_on_glideslope {
        // Same airspeed and angle of attack, flight path along the glideslope.
        start.theta = trim.alpha - setup.geometry.theta_a;
    }
    let mut plane = Airframe::new(setup.plant, start);
    let mut rng = ChaCha8Rng::seed_from_u64(setup.seed);
    let mut turb = Turbulence::new(setup.turbulence, setup.airspeed);
    turb.warm_up(&plane.state, &mut rng, dt)?;
    let mut pilot = match policy {
        Policy::Table {
            table,
            grid,
            actions,
            window,
        } => Pilot::Table {
            table,
            grid,
            actions,
            window: *window,
        },
        Policy::Inversion { model } => {
            Pilot::Inversion(DynamicInversion::new(setup.gains, *model, dt))
        }
    };
    let steps = (setup.duration / dt).round() as usize;
    let mut history = Vec::with_capacity(steps + 1);
    let mut reason = None;
    let mut alpha_f = trim.alpha;
    let mut prev_theta_des: Option<f64> = None;
    let blend = if setup.alpha_filter > 0.0 {
        1.0 - (-dt / setup.alpha_filter).exp()
    } else {
        1.0
    };

    for n in 0..=steps {
        let s = plane.state;
        let (theta_m, q_m) = add_sensor_noise(s.theta, s.q, &setup.sensor, &mut rng);
        let measured = AircraftState {
            theta: theta_m,
            q: q_m,
            ..s
        };
        let path = match setup.geometry.desired_state(s.x) {
            PathCommand::Track(p) => p,
            PathCommand::Touchdown => DesiredPath {
                h: 0.0,
                slope: 0.0,
                theta: 0.0,
            },
        };
        let ground_speed = measured.u * theta_m.cos() + measured.w * theta_m.sin();
        alpha_f += blend * (s.alpha() - alpha_f);
        let theta_des = match setup.pitch_command {
            PitchCommand::AltitudeLoop => di_outer(
                measured.h,
                path.h,
                path.slope * ground_speed,
                measured.u,
                measured.v,
                measured.u * alpha_f.tan(),
                measured.phi,
                setup.gains.k_h,
            )?,
            PitchCommand::Planner => path.theta,
        };
        let delta_e_cmd = match &mut pilot {
            Pilot::Table {
                table,
                grid,
                actions,
                window,
            } => {
                let thetadot_des = match (setup.rate_feed, prev_theta_des) {
                    (RateFeed::Error, Some(p)) => (theta_des - p) / dt,
                    _ => 0.0,
                };
                let nb = Neighborhood::new(
                    grid,
                    *window,
                    theta_m - theta_des,
                    measured.theta_dot() - thetadot_des,
                );
                faa_action(table, &nb, actions)
            }
            Pilot::Inversion(di) => {
                di.track_pitch(&measured, theta_des, plane.alpha_dot())?
                    .delta_e
            }
        };
        prev_theta_des = Some(theta_des);
        let delta_e_eff = apply_fault(delta_e_cmd, s.t, &setup.fault);
        history.push(Sample {
            t: s.t,
            x: s.x,
            theta: s.theta,
            theta_des,
            q: s.q,
            h: s.h,
            h_des: path.h,
            delta_e_cmd,
            delta_e_eff,
            u: s.u,
            alpha: s.alpha(),
            airspeed: s.airspeed(),
            gust: turb.wind.gust,
            omega_w: turb.wind.omega,
        });
        if s.h <= 0.0 || n == steps {
            break;
        }
        if let Some(r) = divergence(&s, setup.altitude) {
            reason = Some(r);
            break;
        }
        turb.advance(&s, &mut rng, dt)?;
        if let Err(e) = plane.step(
            &ControlInputs::new(delta_e_eff, trim.thrust),
            &turb.wind,
            dt,
        ) {
            reason = Some(e.to_string());
            break;
        }
    }
    let diverged = reason.is_some();
    Ok(LandingRun {
        metrics: RunMetrics::from_history(&history, diverged, reason),
        history,
    })
}
