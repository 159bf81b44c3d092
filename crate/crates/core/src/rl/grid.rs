//! State grid over (pitch error, pitch rate) and the elevator action set.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

/// Outer "catch-all" centre magnitude of both axes.
pub const OUTPOST: f64 = 10.0;

/// Options for the standard grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GridConfig {
    /// Membership width of the fine pitch centres, rad.
    pub sigma_theta: f64,
    /// Membership width of the fine pitch-rate centres, rad/s.
    pub sigma_thetadot: f64,
    /// Add a 0 rad/s pitch-rate centre.
    pub zero_rate_center: bool,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            sigma_theta: 0.002,
            sigma_thetadot: 0.015,
            zero_rate_center: false,
        }
    }
}

/// Cell centres and their Gaussian membership widths on both axes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateGrid<T> {
    pub theta_centers: Vec<T>,
    pub theta_sigmas: Vec<T>,
    pub thetadot_centers: Vec<T>,
    pub thetadot_sigmas: Vec<T>,
}

fn mirrored(negative: &[f64], include_zero: bool) -> Vec<f64> {
    let mut v: Vec<f64> = negative.to_vec();
    if include_zero {
        v.push(0.0);
    }
    v.extend(negative.iter().rev().map(|x| -x));
    v
}

/// Fine width everywhere except at the ±outposts, which get the distance to
/// their inner neighbour.
fn widths(centers: &[f64], fine: f64) -> Vec<f64> {
    let n = centers.len();
    centers
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if c.abs() >= OUTPOST {
                let neighbour = if i == 0 { centers[1] } else { centers[n - 2] };
                (c - neighbour).abs()
            } else {
                fine
            }
        })
        .collect()
}

impl StateGrid<f64> {
    /// Pitch-error centres {−10, −0.024:0.002:−0.002, −0.001, 0, mirror} and
    /// pitch-rate centres {−10, −0.04, −0.02, −0.005, mirror}.
    pub fn standard(cfg: &GridConfig) -> Self {
        let mut neg_theta = vec![-OUTPOST];
        neg_theta.extend((0..12).map(|k| -0.024 + 0.002 * k as f64));
        neg_theta.push(-0.001);
        // Rounded to remove accumulation noise in the 0.002 steps.
        let neg_theta: Vec<f64> = neg_theta.iter().map(|x| (x * 1e6).round() / 1e6).collect();
        let theta = mirrored(&neg_theta, true);
        let rate = mirrored(&[-OUTPOST, -0.04, -0.02, -0.005], cfg.zero_rate_center);
        Self {
            theta_sigmas: widths(&theta, cfg.sigma_theta),
            thetadot_sigmas: widths(&rate, cfg.sigma_thetadot),
            theta_centers: theta,
            thetadot_centers: rate,
        }
    }
}

fn nearest<T: Scalar>(centers: &[T], x: T) -> usize {
    // First centre at or above x; compare with its lower neighbour.
    let hi = centers.partition_point(|c| *c < x);
    if hi == 0 {
        return 0;
    }
    if hi == centers.len() {
        return centers.len() - 1;
    }
    let lo = hi - 1;
    if x - centers[lo] <= centers[hi] - x {
        lo
    } else {
        hi
    }
}

impl<T: Scalar> StateGrid<T> {
    pub fn new(
        theta_centers: Vec<T>,
        theta_sigmas: Vec<T>,
        thetadot_centers: Vec<T>,
        thetadot_sigmas: Vec<T>,
    ) -> Result<Self> {
        let g = Self {
            theta_centers,
            theta_sigmas,
            thetadot_centers,
            thetadot_sigmas,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn cast<U: Scalar>(&self) -> StateGrid<U> {
        let c = |v: &Vec<T>| v.iter().map(|x| U::lit(x.as_f64())).collect();
        StateGrid {
            theta_centers: c(&self.theta_centers),
            theta_sigmas: c(&self.theta_sigmas),
            thetadot_centers: c(&self.thetadot_centers),
            thetadot_sigmas: c(&self.thetadot_sigmas),
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, c, s) in [
            ("pitch", &self.theta_centers, &self.theta_sigmas),
            ("pitch-rate", &self.thetadot_centers, &self.thetadot_sigmas),
        ] {
            if c.is_empty() || c.len() != s.len() {
                return Err(Error::Config(format!(
                    "{name} grid: {} centres, {} widths",
                    c.len(),
                    s.len()
                )));
            }
            if c.windows(2).any(|w| !(w[0] < w[1])) {
                return Err(Error::Config(format!(
                    "{name} centres must be strictly increasing"
                )));
            }
            if s.iter().any(|x| !(*x > T::zero())) {
                return Err(Error::Config(format!("{name} widths must be positive")));
            }
        }
        Ok(())
    }

    pub fn n_theta(&self) -> usize {
        self.theta_centers.len()
    }

    pub fn n_thetadot(&self) -> usize {
        self.thetadot_centers.len()
    }

    /// Closest centre on each axis; ties go to the lower index.
    pub fn nearest_cell(&self, theta: T, thetadot: T) -> (usize, usize) {
        (
            nearest(&self.theta_centers, theta),
            nearest(&self.thetadot_centers, thetadot),
        )
    }

    /// Gaussian validity of cell (i, j) for the query point, in (0, 1].
    pub fn membership(&self, theta: T, thetadot: T, i: usize, j: usize) -> T {
        self.theta_weight(theta, i) * self.thetadot_weight(thetadot, j)
    }

    pub(crate) fn theta_weight(&self, theta: T, i: usize) -> T {
        gaussian(theta - self.theta_centers[i], self.theta_sigmas[i])
    }

    pub(crate) fn thetadot_weight(&self, thetadot: T, j: usize) -> T {
        gaussian(thetadot - self.thetadot_centers[j], self.thetadot_sigmas[j])
    }

    pub fn is_symmetric(&self) -> bool {
        let sym = |c: &[T]| c.iter().zip(c.iter().rev()).all(|(a, b)| *a == -*b);
        sym(&self.theta_centers) && sym(&self.thetadot_centers)
    }
}

fn gaussian<T: Scalar>(offset: T, sigma: T) -> T {
    let z = offset / sigma;
    (lit::<T>(-0.5) * z * z).exp()
}

/// Elevator deflections available to the learners, rad.
#[derive(Debug, Clone, PartialEq)]
pub struct ActionSet<T> {
    values: Vec<T>,
}

pub const N_ACTIONS: usize = 21;
pub const ACTION_STEP: f64 = 0.025;

impl<T: Scalar> ActionSet<T> {
    /// 21 deflections from −0.25 to +0.25 rad in 0.025 rad steps.
    pub fn elevator() -> Self {
        let mid = (N_ACTIONS / 2) as i32;
        Self {
            values: (0..N_ACTIONS as i32)
                .map(|k| lit::<T>((k - mid) as f64 * ACTION_STEP))
                .collect(),
        }
    }

    pub fn from_values(values: Vec<T>) -> Result<Self> {
        if values.is_empty() || values.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Config(
                "actions must be non-empty and strictly increasing".into(),
            ));
        }
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn value(&self, k: usize) -> T {
        self.values[k]
    }

    /// Index of the closest action; ties go to the lower index.
    pub fn nearest(&self, delta_e: T) -> usize {
        nearest(&self.values, delta_e)
    }
}
