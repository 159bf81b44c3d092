//! Time-averaged tracking error and control effort.

use serde::Serialize;

/// `∫ y dt / (t_end − t_0)` by the trapezoid rule.
pub fn trapezoid_mean(t: &[f64], y: &[f64]) -> f64 {
    assert_eq!(t.len(), y.len());
    match t.len() {
        0 => 0.0,
        1 => y[0],
        n => {
            let area: f64 = (1..n)
                .map(|k| 0.5 * (y[k] + y[k - 1]) * (t[k] - t[k - 1]))
                .sum();
            area / (t[n - 1] - t[0])
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunMetrics {
    /// Mean |θ − θ_des|, deg.
    pub te_theta: f64,
    /// Mean |h − h_des|, m.
    pub te_h: f64,
    /// Mean |δE| commanded, deg.
    pub ce: f64,
    /// Airspeed when the wheels reached the ground, m/s.
    pub touchdown_speed: Option<f64>,
    pub final_altitude: f64,
    pub elapsed: f64,
    pub landed: bool,
    pub diverged: bool,
    pub reason: Option<String>,
}

impl RunMetrics {
    pub fn from_history(
        h: &[crate::landing::Sample],
        diverged: bool,
        reason: Option<String>,
    ) -> Self {
        let t: Vec<f64> = h.iter().map(|s| s.t).collect();
        let series =
            |f: &dyn Fn(&crate::landing::Sample) -> f64| -> Vec<f64> { h.iter().map(f).collect() };
        let te_theta = trapezoid_mean(&t, &series(&|s| (s.theta - s.theta_des).abs().to_degrees()));
        let te_h = trapezoid_mean(&t, &series(&|s| (s.h - s.h_des).abs()));
        let ce = trapezoid_mean(&t, &series(&|s| s.delta_e_cmd.abs().to_degrees()));
        let last = h.last();
        let touched = last.is_some_and(|s| s.h <= 0.0);
        Self {
            te_theta,
            te_h,
            ce,
            touchdown_speed: if touched {
                last.map(|s| s.airspeed)
            } else {
                None
            },
            final_altitude: last.map_or(f64::NAN, |s| s.h),
            elapsed: t.last().copied().unwrap_or(0.0) - t.first().copied().unwrap_or(0.0),
            landed: !diverged && touched,
            diverged,
            reason,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_integrand() {
        let t: Vec<f64> = (0..=1500).map(|k| k as f64 * 0.01).collect();
        let y = vec![0.37; t.len()];
        assert!((trapezoid_mean(&t, &y) - 0.37).abs() < 1e-12);
    }

    #[test]
    fn linear_integrand_is_exact() {
        let t: Vec<f64> = (0..=100).map(|k| k as f64 * 0.01).collect();
        let y: Vec<f64> = t.iter().map(|x| 2.0 * x).collect();
        assert!((trapezoid_mean(&t, &y) - 1.0).abs() < 1e-12);
    }
}
