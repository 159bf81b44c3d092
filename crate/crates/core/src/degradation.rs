//! Scheduled elevator faults between the commanded and the effective deflection.

use serde::{Deserialize, Serialize};

use crate::dynamics::saturate_elevator;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Fault active after `t_start`: effective = gain·commanded + bias.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FaultSegment {
    /// Onset time, s. The segment covers `(t_start, t_next]`.
    pub t_start: f64,
    /// Effectiveness, in (0, 1].
    pub gain: f64,
    /// Additive bias, deg.
    pub bias_deg: f64,
}

/// Ordered list of fault segments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct FaultSchedule {
    segments: Vec<FaultSegment>,
}

impl FaultSchedule {
    pub fn new(segments: Vec<FaultSegment>) -> Result<Self> {
        for s in &segments {
            if !(s.gain > 0.0 && s.gain <= 1.0) {
                return Err(Error::Config(format!(
                    "fault gain {} outside (0, 1]",
                    s.gain
                )));
            }
            if !(s.t_start >= 0.0) || !s.bias_deg.is_finite() {
                return Err(Error::Config(format!("invalid fault segment {s:?}")));
            }
        }
        if segments.windows(2).any(|w| w[0].t_start >= w[1].t_start) {
            return Err(Error::Config(
                "fault segments must have strictly increasing onset times".into(),
            ));
        }
        Ok(Self { segments })
    }

    /// No fault at any time.
    pub fn healthy() -> Self {
        Self::default()
    }

    /// Progressive three-stage elevator degradation: half effectiveness with
    /// −0.5° bias after 4 s, 40 % with +0.6° after 8 s, 30 % with −0.7° after 12 s.
    pub fn progressive() -> Self {
        Self {
            segments: vec![
                FaultSegment {
                    t_start: 4.0,
                    gain: 0.5,
                    bias_deg: -0.5,
                },
                FaultSegment {
                    t_start: 8.0,
                    gain: 0.4,
                    bias_deg: 0.6,
                },
                FaultSegment {
                    t_start: 12.0,
                    gain: 0.3,
                    bias_deg: -0.7,
                },
            ],
        }
    }

    /// Variant following the narrative description of the same fault
    /// (60° bias at 4 s, 70 % effectiveness at 8 s).
    pub fn progressive_narrative() -> Self {
        Self {
            segments: vec![
                FaultSegment {
                    t_start: 4.0,
                    gain: 0.5,
                    bias_deg: 60.0,
                },
                FaultSegment {
                    t_start: 8.0,
                    gain: 0.7,
                    bias_deg: 0.6,
                },
                FaultSegment {
                    t_start: 12.0,
                    gain: 0.3,
                    bias_deg: -0.7,
                },
            ],
        }
    }

    pub fn segments(&self) -> &[FaultSegment] {
        &self.segments
    }

    /// Segment in force at `t`: the latest one with `t_start < t`.
    pub fn active(&self, t: f64) -> Option<&FaultSegment> {
        self.segments.iter().rev().find(|s| s.t_start < t)
    }
}

/// Effective elevator deflection (rad) for command `delta_e_cmd` (rad) at time `t`.
pub fn apply_fault<T: Scalar>(delta_e_cmd: T, t: f64, schedule: &FaultSchedule) -> T {
    match schedule.active(t) {
        Some(seg) => {
            saturate_elevator(T::lit(seg.gain) * delta_e_cmd + T::lit(seg.bias_deg.to_radians()))
        }
        None => delta_e_cmd,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn deg(x: f64) -> f64 {
        x.to_radians()
    }

    #[test]
    fn progressive_branches() {
        let s = FaultSchedule::progressive();
        assert_eq!(apply_fault(deg(1.0), 5.0, &s), 0.5 * deg(1.0) + deg(-0.5));
        assert_eq!(apply_fault(deg(1.0), 5.0, &s), 0.0);
        assert_eq!(apply_fault(deg(1.0), 10.0, &s), 0.4 * deg(1.0) + deg(0.6));
        assert_eq!(apply_fault(deg(1.0), 13.0, &s), 0.3 * deg(1.0) + deg(-0.7));
        assert_eq!(apply_fault(deg(1.0), 2.0, &s), deg(1.0));
    }

    #[test]
    fn boundary_instants_use_earlier_segment() {
        let s = FaultSchedule::progressive();
        assert_eq!(apply_fault(0.1, 4.0, &s), 0.1);
        assert_eq!(apply_fault(0.1, 8.0, &s), 0.5 * 0.1 + deg(-0.5));
        assert_eq!(apply_fault(0.1, 12.0, &s), 0.4 * 0.1 + deg(0.6));
    }

    #[test]
    fn output_is_resaturated() {
        let s = FaultSchedule::progressive_narrative();
        assert_eq!(apply_fault(0.2, 5.0, &s), 0.25);
    }

    #[test]
    fn identity_schedule_is_passthrough() {
        let s = FaultSchedule::new(vec![FaultSegment {
            t_start: 0.0,
            gain: 1.0,
            bias_deg: 0.0,
        }])
        .unwrap();
        for x in [-0.2, -0.013, 0.0, 0.07, 0.25] {
            assert_eq!(apply_fault(x, 3.0, &s), x);
        }
    }

    #[test]
    fn rejects_bad_segments() {
        let bad_gain = FaultSegment {
            t_start: 1.0,
            gain: 0.0,
            bias_deg: 0.0,
        };
        assert!(FaultSchedule::new(vec![bad_gain]).is_err());
        let a = FaultSegment {
            t_start: 5.0,
            gain: 0.5,
            bias_deg: 0.0,
        };
        let b = FaultSegment {
            t_start: 2.0,
            gain: 0.5,
            bias_deg: 0.0,
        };
        assert!(FaultSchedule::new(vec![a, b]).is_err());
    }
}
