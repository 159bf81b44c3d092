use nalgebra::{Matrix3, Vector3};

use crate::atmosphere::WindState;
use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

use super::eom::state_derivative;
use super::model::AeroModel;
use super::state::{AircraftState, ControlInputs};

/// Wings-level, zero flight-path-angle equilibrium.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrimPoint<T> {
    pub delta_e: T,
    pub thrust: T,
    pub alpha: T,
    pub airspeed: T,
    pub altitude: T,
    /// Max-norm of the final (u̇, ẇ, q̇) residual.
    pub residual: T,
    pub iterations: usize,
}

impl<T: Scalar> TrimPoint<T> {
    /// Equilibrium state (θ = α, zero rates) at horizontal position 0.
    pub fn state(&self) -> AircraftState<T> {
        AircraftState::wings_level(self.airspeed, self.alpha, self.alpha, self.altitude)
    }

    pub fn inputs(&self) -> ControlInputs<T> {
        ControlInputs::new(self.delta_e, self.thrust)
    }
}

/// Residual bound in double precision, m/s² and rad/s².
pub const TRIM_TOLERANCE: f64 = 1e-9;
pub const TRIM_MAX_ITERATIONS: usize = 100;

fn residual<T: Scalar>(model: &AeroModel<T>, v: T, h: T, x: [T; 3]) -> Result<[T; 3]> {
    let [alpha, de, thrust] = x;
    let state = AircraftState::wings_level(v, alpha, alpha, h);
    let inputs = ControlInputs {
        delta_e: de,
        thrust,
    };
    let d = state_derivative(&state, &inputs, model, &WindState::calm(), T::zero())?;
    Ok([d.u, d.w, d.q])
}

fn max_norm<T: Scalar>(r: &[T; 3]) -> T {
    r.iter().fold(T::zero(), |m, v| m.max(v.abs()))
}

/// Solves `a·x = b` for a 3×3 system by LU decomposition in double precision.
pub(crate) fn solve3<T: Scalar>(a: [[T; 3]; 3], b: [T; 3]) -> Option<[T; 3]> {
    let m = Matrix3::from_fn(|i, j| a[i][j].as_f64());
    let x = m.lu().solve(&Vector3::from_fn(|i, _| b[i].as_f64()))?;
    x.iter()
        .all(|v| v.is_finite())
        .then(|| [lit(x[0]), lit(x[1]), lit(x[2])])
}

/// Newton iteration on the (x-force, z-force, pitch-moment) balance for
/// angle of attack, elevator and thrust in level flight at airspeed `v`.
pub fn solve_trim<T: Scalar>(model: &AeroModel<T>, v: T, h: T) -> Result<TrimPoint<T>> {
    if !(v >= lit(100.0) && v <= lit(250.0)) {
        return Err(Error::Precondition(format!(
            "trim airspeed {v} m/s outside [100, 250]"
        )));
    }
    let qs = model.dynamic_pressure(v) * model.force_area();
    let mut x = [T::zero(), T::zero(), qs * model.derivatives.cd0];
    let mut r = residual(model, v, h, x)?;
    // Both floors only bind in single precision.
    let tol = lit::<T>(TRIM_TOLERANCE).max(lit::<T>(1e3) * T::epsilon());
    let h_fd = lit::<T>(1e-7).max(T::epsilon().sqrt());
    // Thrust enters the residuals as 1/m, so its perturbation is scaled up.
    let steps = [h_fd, h_fd, h_fd * model.mass];
    for it in 0..TRIM_MAX_ITERATIONS {
        if max_norm(&r) < tol {
            return Ok(TrimPoint {
                delta_e: x[1],
                thrust: x[2],
                alpha: x[0],
                airspeed: v,
                altitude: h,
                residual: max_norm(&r),
                iterations: it,
            });
        }
        let mut jac = [[T::zero(); 3]; 3];
        for (j, step) in steps.iter().enumerate() {
            let mut xp = x;
            let mut xm = x;
            xp[j] = xp[j] + *step;
            xm[j] = xm[j] - *step;
            let rp = residual(model, v, h, xp)?;
            let rm = residual(model, v, h, xm)?;
            for i in 0..3 {
                jac[i][j] = (rp[i] - rm[i]) / (lit::<T>(2.0) * *step);
            }
        }
        let dx = solve3(jac, [-r[0], -r[1], -r[2]]).ok_or(Error::TrimFailure {
            iterations: it,
            residual: max_norm(&r).as_f64(),
        })?;
        // Damped step: never let the angle of attack jump by more than 5°.
        let limit = lit::<T>(5.0).to_radians();
        let scale = if dx[0].abs() > limit {
            limit / dx[0].abs()
        } else {
            T::one()
        };
        for i in 0..3 {
            x[i] = x[i] + scale * dx[i];
        }
        r = residual(model, v, h, x)?;
    }
    if max_norm(&r) < tol {
        return Ok(TrimPoint {
            delta_e: x[1],
            thrust: x[2],
            alpha: x[0],
            airspeed: v,
            altitude: h,
            residual: max_norm(&r),
            iterations: TRIM_MAX_ITERATIONS,
        });
    }
    Err(Error::TrimFailure {
        iterations: TRIM_MAX_ITERATIONS,
        residual: max_norm(&r).as_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::model::AeroModel;

    #[test]
    fn airspeed_out_of_range() {
        let m = AeroModel::default();
        assert!(matches!(
            solve_trim(&m, 90.0, 100.0),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            solve_trim(&m, 260.0, 100.0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn residuals_vanish_at_trim() {
        let m = AeroModel::default();
        let t = solve_trim(&m, 160.0, 100.0).unwrap();
        let d = state_derivative(&t.state(), &t.inputs(), &m, &WindState::calm(), 0.0).unwrap();
        assert!(
            d.u.abs() < 1e-6 && d.w.abs() < 1e-6 && d.q.abs() < 1e-6,
            "{d:?}"
        );
        assert!(d.h.abs() < 1e-6);
    }

    #[test]
    fn solve3_matches_known_solution() {
        let a = [[2.0f64, 1.0, -1.0], [-3.0, -1.0, 2.0], [-2.0, 1.0, 2.0]];
        let x = solve3(a, [8.0, -11.0, -3.0]).unwrap();
        assert!(
            (x[0] - 2.0).abs() < 1e-12 && (x[1] - 3.0).abs() < 1e-12 && (x[2] + 1.0).abs() < 1e-12
        );
    }
}
