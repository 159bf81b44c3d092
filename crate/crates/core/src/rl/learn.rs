//! Exploration and learning-rate schedules.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Linear per-step decay with a floor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Decay {
    pub start: f64,
    pub rate: f64,
    pub floor: f64,
}

impl Decay {
    pub fn at(&self, step: u64) -> f64 {
        (self.start - self.rate * step as f64).max(self.floor)
    }
}

/// What advances the decay counter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum DecayClock {
    /// One tick per episode: both decays reach their floors at
    /// episode 20000.
    #[default]
    Episode,
    /// One tick per environment step.
    Step,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LearningSchedule {
    pub epsilon: Decay,
    pub alpha: Decay,
    pub clock: DecayClock,
    pub gamma: f64,
    /// Largest |Q| tolerated before training is declared divergent.
    pub q_limit: f64,
}

impl Default for LearningSchedule {
    fn default() -> Self {
        Self {
            epsilon: Decay {
                start: 0.1,
                rate: 3e-6,
                floor: 0.04,
            },
            alpha: Decay {
                start: 0.02,
                rate: 9e-7,
                floor: 0.002,
            },
            clock: DecayClock::Episode,
            gamma: 0.99,
            q_limit: 1e6,
        }
    }
}

impl LearningSchedule {
    /// Decay counter after `episode` episodes and `step` steps in total.
    pub fn tick(&self, episode: usize, step: u64) -> u64 {
        match self.clock {
            DecayClock::Episode => episode as u64,
            DecayClock::Step => step,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let in01 = |x: f64| (0.0..=1.0).contains(&x);
        for (name, d) in [("epsilon", self.epsilon), ("alpha", self.alpha)] {
            if !(in01(d.start) && in01(d.floor) && d.rate >= 0.0 && d.floor <= d.start) {
                return Err(Error::Config(format!(
                    "{name} schedule out of range: {d:?}"
                )));
            }
        }
        if !(self.gamma >= 0.0 && self.gamma < 1.0) {
            return Err(Error::Config(format!(
                "gamma must be in [0, 1), got {}",
                self.gamma
            )));
        }
        if !(self.q_limit > 0.0) {
            return Err(Error::Config("q_limit must be positive".into()));
        }
        Ok(())
    }
}
