//! Shaped reward for pitch tracking.

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;
use crate::units::deg;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RewardUnits {
    Degrees,
    Radians,
}

/// When the bonus branch replaces the quadratic penalty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum BonusGate {
    /// Only while |e| meets the loosest error threshold; rate bonuses are
    /// paid on top inside that band.
    #[default]
    PitchNear,
    /// Whenever any error or rate threshold is met.
    AnyThreshold,
}

/// Thresholds are in degrees and deg/s; the quadratic penalty is evaluated in
/// `units`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RewardParams {
    /// Growth in |δE| per step that counts as a jump, rad.
    pub jump_threshold: f64,
    pub jump_penalty: f64,
    /// (|e| threshold in deg, bonus)
    pub error_bonuses: Vec<(f64, f64)>,
    /// (|q| threshold in deg/s, bonus)
    pub rate_bonuses: Vec<(f64, f64)>,
    pub error_weight: f64,
    pub rate_weight: f64,
    pub units: RewardUnits,
    pub gate: BonusGate,
}

impl Default for RewardParams {
    fn default() -> Self {
        Self {
            jump_threshold: 0.1,
            jump_penalty: -10_000.0,
            error_bonuses: vec![(0.05, 300.0), (0.02, 300.0)],
            rate_bonuses: vec![(0.04, 400.0), (0.02, 600.0), (0.005, 800.0)],
            error_weight: 100.0,
            rate_weight: 40.0,
            units: RewardUnits::Degrees,
            gate: BonusGate::PitchNear,
        }
    }
}

impl RewardParams {
    /// Largest reward attainable: every bonus at once.
    pub fn max_reward(&self) -> f64 {
        self.error_bonuses
            .iter()
            .chain(&self.rate_bonuses)
            .map(|b| b.1)
            .sum()
    }

    /// `error` and `rate` in rad and rad/s, deflections in rad.
    pub fn reward<T: Scalar>(&self, error: T, rate: T, delta_e: T, prev_delta_e: T) -> T {
        if (delta_e.abs() - prev_delta_e.abs()).as_f64() > self.jump_threshold {
            return T::lit(self.jump_penalty);
        }
        let e_deg = deg(error.as_f64()).abs();
        let q_deg = deg(rate.as_f64()).abs();
        let bonus: f64 = self
            .error_bonuses
            .iter()
            .filter(|(th, _)| e_deg < *th)
            .chain(self.rate_bonuses.iter().filter(|(th, _)| q_deg < *th))
            .map(|b| b.1)
            .sum();
        let near = self.error_bonuses.iter().any(|(th, _)| e_deg < *th);
        let open = match self.gate {
            BonusGate::PitchNear => near,
            BonusGate::AnyThreshold => near || self.rate_bonuses.iter().any(|(th, _)| q_deg < *th),
        };
        if open {
            return T::lit(bonus);
        }
        let (e, q) = match self.units {
            RewardUnits::Degrees => (e_deg, q_deg),
            RewardUnits::Radians => (error.as_f64().abs(), rate.as_f64().abs()),
        };
        let a = self.error_weight * e;
        let b = self.rate_weight * q;
        T::lit(-(a * a) - b * b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::rad;

    #[test]
    fn examples() {
        let p = RewardParams::default();
        assert_eq!(p.reward(rad(0.01), rad(0.001), 0.0, 0.0), 2400.0);
        assert_eq!(p.max_reward(), 2400.0);
        assert_eq!(p.reward(rad(1.0), 0.0, 0.0, 0.0), -10_000.0);
        assert!(
            (p.reward(rad(1.0), rad(1.0), 0.0, 0.0) - (-(100.0f64.powi(2)) - 40.0f64.powi(2)))
                .abs()
                < 1e-6
        );
        assert_eq!(p.reward(0.0, 0.0, 0.2, 0.05), -10_000.0);
        // Shrinking deflection is never a jump.
        assert_eq!(p.reward(0.0, 0.0, 0.0, 0.25), 2400.0);
        assert_eq!(p.reward(rad(0.03), rad(0.03), 0.0, 0.0), 300.0 + 400.0);
    }

    #[test]
    fn any_threshold_gate_pays_rate_bonuses_off_target() {
        let p = RewardParams {
            gate: BonusGate::AnyThreshold,
            ..Default::default()
        };
        assert_eq!(p.reward(rad(1.0), 0.0, 0.0, 0.0), 400.0 + 600.0 + 800.0);
        assert_eq!(p.reward(rad(0.01), rad(0.001), 0.0, 0.0), 2400.0);
    }

    #[test]
    fn radian_penalty() {
        let p = RewardParams {
            units: RewardUnits::Radians,
            ..Default::default()
        };
        let r = p.reward(0.1, 0.1, 0.0, 0.0) + (100.0f64 * 0.1).powi(2) + (40.0f64 * 0.1).powi(2);
        assert!(r.abs() < 1e-9);
    }
}
