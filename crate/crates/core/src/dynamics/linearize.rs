use nalgebra::Matrix4;
use num_complex::Complex64;

use crate::atmosphere::WindState;
use crate::error::Result;
use crate::scalar::{lit, Scalar};

use super::eom::state_derivative;
use super::model::AeroModel;
use super::state::AircraftState;
use super::trim::TrimPoint;

/// Longitudinal small-perturbation model about a trim point.
#[derive(Debug, Clone)]
pub struct LongitudinalModel {
    /// System matrix over (u, w, q, θ).
    pub a: [[f64; 4]; 4],
    /// Eigenvalues sorted by ascending |Im|, then by real part.
    pub eigenvalues: Vec<Complex64>,
}

/// A complex-conjugate pair, or a pair of real roots when the mode is overdamped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModeRoots {
    Oscillatory(Complex64),
    Real(f64, f64),
}

impl ModeRoots {
    /// Root with non-negative imaginary part; for real roots, the slower one.
    pub fn representative(&self) -> Complex64 {
        match *self {
            ModeRoots::Oscillatory(c) => c,
            ModeRoots::Real(a, b) => Complex64::new(a.max(b), 0.0),
        }
    }
}

impl LongitudinalModel {
    /// Phugoid and short-period roots, identified by time scale: the phugoid is
    /// the pair closest to the origin.
    pub fn modes(&self) -> (ModeRoots, ModeRoots) {
        let mut ev = self.eigenvalues.clone();
        ev.sort_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap());
        let pair = |a: Complex64, b: Complex64| {
            if a.im.abs() > 1e-12 {
                ModeRoots::Oscillatory(Complex64::new(a.re, a.im.abs()))
            } else {
                ModeRoots::Real(a.re, b.re)
            }
        };
        (pair(ev[0], ev[1]), pair(ev[2], ev[3]))
    }

    pub fn phugoid(&self) -> ModeRoots {
        self.modes().0
    }

    pub fn short_period(&self) -> ModeRoots {
        self.modes().1
    }
}

/// Longitudinal subsystem rates (u̇, ẇ, q̇, θ̇) for the perturbed state.
pub fn longitudinal_rates<T: Scalar>(
    model: &AeroModel<T>,
    trim: &TrimPoint<T>,
    x: [T; 4],
) -> Result<[T; 4]> {
    let state = AircraftState {
        u: x[0],
        w: x[1],
        q: x[2],
        theta: x[3],
        h: trim.altitude,
        ..AircraftState::zero()
    };
    let d = state_derivative(&state, &trim.inputs(), model, &WindState::calm(), T::zero())?;
    Ok([d.u, d.w, d.q, d.theta])
}

/// Central finite-difference Jacobian of the longitudinal rates with step `step`.
pub fn longitudinal_jacobian<T: Scalar>(
    model: &AeroModel<T>,
    trim: &TrimPoint<T>,
    step: T,
) -> Result<[[f64; 4]; 4]> {
    let s0 = trim.state();
    let x0 = [s0.u, s0.w, s0.q, s0.theta];
    let mut a = [[0.0; 4]; 4];
    for j in 0..4 {
        let mut xp = x0;
        let mut xm = x0;
        xp[j] = xp[j] + step;
        xm[j] = xm[j] - step;
        let fp = longitudinal_rates(model, trim, xp)?;
        let fm = longitudinal_rates(model, trim, xm)?;
        for i in 0..4 {
            a[i][j] = ((fp[i] - fm[i]) / (lit::<T>(2.0) * step)).as_f64();
        }
    }
    Ok(a)
}

pub const LINEARIZATION_STEP: f64 = 1e-6;

/// Linearises the longitudinal dynamics about `trim` and returns the
/// spectrum. A purely real spectrum is reported as is.
pub fn linearize_longitudinal<T: Scalar>(
    model: &AeroModel<T>,
    trim: &TrimPoint<T>,
) -> Result<LongitudinalModel> {
    let a = longitudinal_jacobian(model, trim, lit(LINEARIZATION_STEP))?;
    Ok(LongitudinalModel {
        eigenvalues: eigenvalues(&a),
        a,
    })
}

/// Eigenvalues of a 4×4 matrix sorted by |Im| then real part.
pub fn eigenvalues(a: &[[f64; 4]; 4]) -> Vec<Complex64> {
    let m = Matrix4::from_fn(|i, j| a[i][j]);
    let mut ev: Vec<Complex64> = m
        .complex_eigenvalues()
        .iter()
        .map(|c| Complex64::new(c.re, c.im))
        .collect();
    ev.sort_by(|x, y| {
        x.im.abs()
            .partial_cmp(&y.im.abs())
            .unwrap()
            .then(x.re.partial_cmp(&y.re).unwrap())
            .then(x.im.partial_cmp(&y.im).unwrap())
    });
    ev
}
