//! Run configuration, read from a single TOML file.

use std::path::Path;

use autoland_core::atmosphere::{SensorNoise, TurbulenceConfig};
use autoland_core::control::DIGains;
use autoland_core::degradation::FaultSchedule;
use autoland_core::dynamics::{AeroModel, DerivativeSet, ForceReference};
use autoland_core::guidance::ScreenHeight;
use autoland_core::rl::{
    FqlTarget, GridConfig, LearningSchedule, Method, RewardParams, TdShare, Window,
};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    Ideal,
    NoiseDisturbance,
    ActuatorFault,
    ModelUncertainty,
    Sweep,
}

impl ScenarioKind {
    pub const LANDING: [ScenarioKind; 4] = [
        ScenarioKind::Ideal,
        ScenarioKind::NoiseDisturbance,
        ScenarioKind::ActuatorFault,
        ScenarioKind::ModelUncertainty,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::Ideal => "ideal",
            ScenarioKind::NoiseDisturbance => "noise_disturbance",
            ScenarioKind::ActuatorFault => "actuator_fault",
            ScenarioKind::ModelUncertainty => "model_uncertainty",
            ScenarioKind::Sweep => "sweep",
        }
    }
}

impl std::fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ScenarioKind {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self> {
        [ScenarioKind::Sweep]
            .into_iter()
            .chain(ScenarioKind::LANDING)
            .find(|k| k.name() == s)
            .ok_or_else(|| HarnessError::Config(format!("unknown scenario {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Controller {
    Fql,
    Ql,
    Di,
}

impl Controller {
    pub const ALL: [Controller; 3] = [Controller::Fql, Controller::Ql, Controller::Di];

    pub fn name(self) -> &'static str {
        match self {
            Controller::Fql => "fql",
            Controller::Ql => "ql",
            Controller::Di => "di",
        }
    }

    pub fn method(self) -> Option<Method> {
        match self {
            Controller::Fql => Some(Method::Fql),
            Controller::Ql => Some(Method::Ql),
            Controller::Di => None,
        }
    }
}

impl std::fmt::Display for Controller {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Controller {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self> {
        Controller::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| HarnessError::Config(format!("unknown controller {s:?}")))
    }
}

/// Source of the pitch command during a landing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum PitchCommand {
    /// Altitude loop on the planned altitude and climb rate.
    #[default]
    AltitudeLoop,
    /// Planned pitch attitude only.
    Planner,
}

/// Rate coordinate a learned table sees during a landing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum RateFeed {
    /// Measured pitch rate θ̇.
    Absolute,
    /// Pitch-rate error θ̇ − θ̇_des, with θ̇_des backward-differenced.
    #[default]
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum FaultPreset {
    #[default]
    Progressive,
    Narrative,
    Healthy,
}

impl FaultPreset {
    pub fn schedule(self) -> FaultSchedule {
        match self {
            FaultPreset::Progressive => FaultSchedule::progressive(),
            FaultPreset::Narrative => FaultSchedule::progressive_narrative(),
            FaultPreset::Healthy => FaultSchedule::healthy(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ScenarioConfig {
    pub kind: ScenarioKind,
    pub controller: Controller,
    pub seed: u64,
    /// Landing horizon, s.
    pub duration: f64,
    /// Initial airspeed, m/s.
    pub airspeed: f64,
    /// Initial altitude, m.
    pub altitude: f64,
    pub dt: f64,
    pub pitch_command: PitchCommand,
    pub rate_feed: RateFeed,
    /// Time constant of the angle-of-attack filter in the altitude loop, s;
    /// `inf` holds the trim value, 0 uses the measured value.
    pub alpha_filter: f64,
    /// Start descending along the approach angle instead of in level flight.
    pub start_on_glideslope: bool,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            kind: ScenarioKind::Ideal,
            controller: Controller::Fql,
            seed: 1,
            duration: 15.0,
            airspeed: 160.0,
            altitude: 100.0,
            dt: 0.01,
            pitch_command: PitchCommand::AltitudeLoop,
            rate_feed: RateFeed::Error,
            alpha_filter: f64::INFINITY,
            start_on_glideslope: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ModelConfig {
    /// Derivative column used outside the model-uncertainty scenario.
    pub derivatives: DerivativeSet,
    /// Derivative column the plant uses in the model-uncertainty scenario.
    pub uncertain_derivatives: DerivativeSet,
    /// Uniform multiplier on every derivative of the plant.
    pub derivative_scale: f64,
    pub force_reference: ForceReference,
    pub drag_abs: bool,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            derivatives: DerivativeSet::Nominal,
            uncertain_derivatives: DerivativeSet::Uncertain,
            derivative_scale: 1.0,
            force_reference: ForceReference::ChordScaled,
            drag_abs: true,
        }
    }
}

impl ModelConfig {
    fn build(&self, set: DerivativeSet, scale: f64) -> AeroModel<f64> {
        let mut m = AeroModel::chaka50(set);
        m.derivatives = m.derivatives.scaled(scale);
        m.force_reference = self.force_reference;
        m.drag_abs = self.drag_abs;
        m
    }

    /// Model the controllers were designed with.
    pub fn design_model(&self) -> AeroModel<f64> {
        self.build(self.derivatives, 1.0)
    }

    /// Model the simulated aircraft flies with in `kind`.
    pub fn plant_model(&self, kind: ScenarioKind) -> AeroModel<f64> {
        let set = if kind == ScenarioKind::ModelUncertainty {
            self.uncertain_derivatives
        } else {
            self.derivatives
        };
        self.build(set, self.derivative_scale)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GuidanceConfig {
    /// Stall speed, m/s.
    pub v_stall: f64,
    /// Approach angle, deg.
    pub approach_angle: f64,
    pub screen_height: ScreenHeight,
}

impl Default for GuidanceConfig {
    fn default() -> Self {
        Self {
            v_stall: 140.0,
            approach_angle: 3.0,
            screen_height: ScreenHeight::FiftyMetres,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TrainingConfig {
    pub method: Method,
    pub episodes: usize,
    pub seed: u64,
    /// Episode length, s.
    pub episode_seconds: f64,
    pub dt: f64,
    /// Range of the initial pitch attitude, deg.
    pub theta0_min: f64,
    pub theta0_max: f64,
    /// Pitch target, deg.
    pub theta_des: f64,
    pub airspeed: f64,
    pub altitude: f64,
}

impl Default for TrainingConfig {
    fn default() -> Self {
        Self {
            method: Method::Fql,
            episodes: 2000,
            seed: 1,
            episode_seconds: 5.0,
            dt: 0.01,
            theta0_min: 0.0,
            theta0_max: 2.0,
            theta_des: 1.0,
            airspeed: 160.0,
            altitude: 100.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default)]
pub struct RlConfig {
    pub grid: GridConfig,
    pub window: Window,
    pub td_share: TdShare,
    pub fql_target: FqlTarget,
    pub reward: RewardParams,
    pub schedule: LearningSchedule,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SweepConfig {
    pub scale_min: f64,
    pub scale_max: f64,
    pub scale_points: usize,
    pub speed_min: f64,
    pub speed_max: f64,
    pub speed_points: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            scale_min: 0.7,
            scale_max: 1.3,
            scale_points: 9,
            speed_min: 150.0,
            speed_max: 220.0,
            speed_points: 9,
        }
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![0.5 * (lo + hi)],
        _ => (0..n)
            .map(|k| {
                let f = k as f64 / (n - 1) as f64;
                // Rounded so grid labels read cleanly.
                ((lo * (1.0 - f) + hi * f) * 1e12).round() / 1e12
            })
            .collect(),
    }
}

impl SweepConfig {
    pub fn scales(&self) -> Vec<f64> {
        linspace(self.scale_min, self.scale_max, self.scale_points)
    }

    pub fn speeds(&self) -> Vec<f64> {
        linspace(self.speed_min, self.speed_max, self.speed_points)
    }
}

/// Everything a run needs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default)]
pub struct RunConfig {
    pub scenario: ScenarioConfig,
    pub model: ModelConfig,
    pub guidance: GuidanceConfig,
    pub training: TrainingConfig,
    pub rl: RlConfig,
    pub gains: DIGains,
    pub turbulence: TurbulenceConfig,
    pub sensor: SensorNoise,
    pub fault: FaultPreset,
    pub sweep: SweepConfig,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: RunConfig =
            toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serialises")
    }

    pub fn validate(&self) -> Result<()> {
        let s = &self.scenario;
        let positive = [
            ("scenario.duration", s.duration),
            ("scenario.dt", s.dt),
            ("scenario.airspeed", s.airspeed),
            ("scenario.altitude", s.altitude),
            ("training.episode_seconds", self.training.episode_seconds),
            ("training.dt", self.training.dt),
            ("model.derivative_scale", self.model.derivative_scale),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(HarnessError::Config(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if self.training.theta0_min > self.training.theta0_max {
            return Err(HarnessError::Config(
                "training.theta0_min exceeds theta0_max".into(),
            ));
        }
        self.gains.validate()?;
        self.rl.schedule.validate()?;
        Ok(())
    }

    /// Turbulence settings in force for `kind`.
    pub fn turbulence_for(&self, kind: ScenarioKind) -> TurbulenceConfig {
        TurbulenceConfig {
            enabled: kind == ScenarioKind::NoiseDisturbance,
            ..self.turbulence
        }
    }

    pub fn sensor_for(&self, kind: ScenarioKind) -> SensorNoise {
        if kind == ScenarioKind::NoiseDisturbance {
            self.sensor
        } else {
            SensorNoise::off()
        }
    }

    pub fn fault_for(&self, kind: ScenarioKind) -> FaultSchedule {
        if kind == ScenarioKind::ActuatorFault {
            self.fault.schedule()
        } else {
            FaultSchedule::healthy()
        }
    }
}
