//! Forces, moments and equations of motion.

use crate::atmosphere::WindState;
use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

use super::model::AeroModel;
use super::state::{skew, AircraftState, ControlInputs, StateRates};

/// Body-axis aerodynamic force (N) and moment (N·m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AeroLoads<T> {
    pub force: [T; 3],
    pub moment: [T; 3],
}

/// Lift, drag and pitching moment in stability axes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityLoads<T> {
    pub lift: T,
    pub drag: T,
    pub pitch_moment: T,
}

/// Minimum airspeed accepted by the aerodynamic model, m/s.
pub const MIN_AIRSPEED: f64 = 1.0;

/// Rotates stability-axis drag and lift into body axes by the angle of attack.
pub fn stability_to_body<T: Scalar>(alpha: T, drag: T, lift: T) -> [T; 3] {
    let (s, c) = alpha.sin_cos();
    let (fx_s, fz_s) = (-drag, -lift);
    [c * fx_s - s * fz_s, T::zero(), s * fx_s + c * fz_s]
}

/// Stability-axis loads from the linear derivative build-up.
///
/// `q_air` is the air-relative pitch rate. The pitching moment is split so
/// that `pitch_moment_no_elevator + elevator term = pitch_moment`.
pub fn stability_loads<T: Scalar>(
    state: &AircraftState<T>,
    q_air: T,
    delta_e: T,
    model: &AeroModel<T>,
    alpha_dot: T,
) -> Result<(StabilityLoads<T>, T)> {
    let airspeed = state.airspeed();
    if !(airspeed > lit(MIN_AIRSPEED)) {
        return Err(Error::Precondition(format!(
            "airspeed {airspeed} m/s below {MIN_AIRSPEED} m/s"
        )));
    }
    let d = &model.derivatives;
    let alpha = state.alpha();
    let half_chord_over_v = model.chord / (lit::<T>(2.0) * model.v_ref);
    let ad = alpha_dot * half_chord_over_v;
    let uh = state.u / model.v_ref;
    let qh = q_air * half_chord_over_v;

    let cl = d.cl0
        + d.cl_alpha * alpha
        + d.cl_alpha_dot * ad
        + d.cl_u * uh
        + d.cl_q * qh
        + d.cl_de * delta_e;
    let (alpha_d, de_d) = if model.drag_abs {
        (alpha.abs(), delta_e.abs())
    } else {
        (alpha, delta_e)
    };
    let cd = d.cd0
        + d.cd_alpha * alpha_d
        + d.cd_alpha_dot * ad
        + d.cd_u * uh
        + d.cd_q * qh
        + d.cd_de * de_d;
    let cm_free = d.cm0 + d.cm_alpha * alpha + d.cm_alpha_dot * ad + d.cm_u * uh + d.cm_q * qh;

    let qbar = model.dynamic_pressure(airspeed);
    let force_scale = qbar * model.force_area();
    let moment_scale = qbar * model.wing_area * model.chord;
    let free = moment_scale * cm_free;
    Ok((
        StabilityLoads {
            lift: force_scale * cl,
            drag: force_scale * cd,
            pitch_moment: free + moment_scale * d.cm_de * delta_e,
        },
        free,
    ))
}

/// Aerodynamic pitching moment excluding the elevator contribution, N·m.
pub fn pitch_moment_without_elevator<T: Scalar>(
    state: &AircraftState<T>,
    model: &AeroModel<T>,
    alpha_dot: T,
) -> Result<T> {
    stability_loads(state, state.q, T::zero(), model, alpha_dot).map(|(_, free)| free)
}

/// Body-axis aerodynamic force and moment.
///
/// The lateral force and rolling/yawing moments are zero (longitudinal data only).
pub fn aero_forces_moments<T: Scalar>(
    state: &AircraftState<T>,
    inputs: &ControlInputs<T>,
    model: &AeroModel<T>,
    wind: &WindState<T>,
    alpha_dot: T,
) -> Result<AeroLoads<T>> {
    let q_air = state.q - wind.omega[1];
    let (loads, _) = stability_loads(state, q_air, inputs.delta_e, model, alpha_dot)?;
    let force = stability_to_body(state.alpha(), loads.drag, loads.lift);
    let moment = [T::zero(), loads.pitch_moment, T::zero()];
    if force.iter().chain(moment.iter()).any(|v| !v.is_finite()) {
        return Err(Error::Diverged {
            t: state.t.as_f64(),
            reason: format!(
                "non-finite aerodynamic loads at {:?}",
                state.map(|v| v.as_f64())
            ),
        });
    }
    Ok(AeroLoads { force, moment })
}

/// Gravity acceleration resolved in body axes.
pub fn gravity_body<T: Scalar>(g: T, theta: T, phi: T) -> [T; 3] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [-g * st, g * ct * sp, g * ct * cp]
}

/// Body-to-earth direction cosine matrix (earth axes: north, east, down).
pub fn body_to_earth<T: Scalar>(phi: T, theta: T, psi: T) -> [[T; 3]; 3] {
    let (sf, cf) = phi.sin_cos();
    let (st, ct) = theta.sin_cos();
    let (ss, cs) = psi.sin_cos();
    [
        [cs * ct, cs * st * sf - ss * cf, cs * st * cf + ss * sf],
        [ss * ct, ss * st * sf + cs * cf, ss * st * cf - cs * sf],
        [-st, ct * sf, ct * cf],
    ]
}

pub(crate) fn mat_vec<T: Scalar>(m: &[[T; 3]; 3], v: &[T; 3]) -> [T; 3] {
    let mut out = [T::zero(); 3];
    for (o, row) in out.iter_mut().zip(m) {
        *o = row[0] * v[0] + row[1] * v[1] + row[2] * v[2];
    }
    out
}

/// Time derivative of the rigid-body state.
///
/// Translational dynamics are written for the air-relative velocity, so the
/// wind acceleration along the flight path is subtracted when the wind state
/// requests that coupling. Positions integrate the inertial velocity.
pub fn state_derivative<T: Scalar>(
    state: &AircraftState<T>,
    inputs: &ControlInputs<T>,
    model: &AeroModel<T>,
    wind: &WindState<T>,
    alpha_dot: T,
) -> Result<StateRates<T>> {
    if state.theta.abs() > lit::<T>(89.0).to_radians() {
        return Err(Error::Diverged {
            t: state.t.as_f64(),
            reason: format!(
                "pitch {:.2} deg near Euler singularity",
                state.theta.as_f64().to_degrees()
            ),
        });
    }
    let loads = aero_forces_moments(state, inputs, model, wind, alpha_dot)?;
    let gravity = gravity_body(model.g, state.theta, state.phi);
    let omega = skew(state.p, state.q, state.r);

    let vel_air = [state.u, state.v, state.w];
    let vel_inertial = [
        state.u + wind.gust[0],
        state.v + wind.gust[1],
        state.w + wind.gust[2],
    ];
    let transport = mat_vec(&omega, &vel_inertial);
    let wind_accel = if wind.couple_acceleration {
        wind.acceleration(&vel_air)
    } else {
        [T::zero(); 3]
    };
    let m = model.mass;
    let thrust = [inputs.thrust, T::zero(), T::zero()];
    let mut vdot = [T::zero(); 3];
    for i in 0..3 {
        vdot[i] = loads.force[i] / m + thrust[i] / m + gravity[i] - transport[i] - wind_accel[i];
    }

    // I·ω̇ = M − ω × (I·ω)
    let inertia = model.inertia();
    let rates = [state.p, state.q, state.r];
    let h = mat_vec(&inertia, &rates);
    let gyro = mat_vec(&omega, &h);
    let rhs = [
        loads.moment[0] - gyro[0],
        loads.moment[1] - gyro[1],
        loads.moment[2] - gyro[2],
    ];
    let det = model.ix * model.iz - model.ixz * model.ixz;
    let pdot = (model.iz * rhs[0] - model.ixz * rhs[2]) / det;
    let rdot = (model.ix * rhs[2] - model.ixz * rhs[0]) / det;
    let qdot = rhs[1] / model.iy;

    let (sf, cf) = state.phi.sin_cos();
    let (tt, ct) = (state.theta.tan(), state.theta.cos());
    let phidot = state.p + (state.q * sf + state.r * cf) * tt;
    let thetadot = state.q * cf - state.r * sf;
    let psidot = (state.q * sf + state.r * cf) / ct;

    let dcm = body_to_earth(state.phi, state.theta, state.psi);
    let ned = mat_vec(&dcm, &vel_inertial);

    let rates = StateRates {
        u: vdot[0],
        v: vdot[1],
        w: vdot[2],
        p: pdot,
        q: qdot,
        r: rdot,
        phi: phidot,
        theta: thetadot,
        psi: psidot,
        x: ned[0],
        y: ned[1],
        h: -ned[2],
    };
    if rates.to_array().iter().any(|v| !v.is_finite()) {
        return Err(Error::Diverged {
            t: state.t.as_f64(),
            reason: "non-finite state derivative".into(),
        });
    }
    Ok(rates)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::model::AeroModel;
    use approx::assert_abs_diff_eq;

    fn level(v: f64) -> AircraftState<f64> {
        AircraftState::wings_level(v, 0.0, 0.0, 100.0)
    }

    #[test]
    fn gravity_examples() {
        let g = 9.80665;
        let a = gravity_body(g, 0.0, 0.0);
        assert_eq!(a, [-0.0, 0.0, g]);
        let b = gravity_body(g, std::f64::consts::FRAC_PI_2, 0.0);
        assert_abs_diff_eq!(b[0], -g, epsilon = 1e-12);
        assert_abs_diff_eq!(b[2], 0.0, epsilon = 1e-12);
        let c = gravity_body(g, 0.0, std::f64::consts::FRAC_PI_2);
        assert_abs_diff_eq!(c[1], g, epsilon = 1e-12);
        assert_abs_diff_eq!(c[2], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn zero_alpha_rotation_is_identity() {
        assert_eq!(stability_to_body(0.0, 3.0, 7.0), [-3.0, 0.0, -7.0]);
    }

    #[test]
    fn airspeed_guard() {
        let model = AeroModel::default();
        let s = level(0.5);
        let err = aero_forces_moments(
            &s,
            &ControlInputs::default(),
            &model,
            &WindState::calm(),
            0.0,
        );
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn loads_scale_with_dynamic_pressure() {
        // Keep u/V_ref, α and qc/2V_ref fixed by scaling v_ref alongside airspeed.
        let mut model = AeroModel::default();
        let inputs = ControlInputs::new(0.01, 0.0);
        let wind = WindState::calm();
        let s1 = AircraftState::wings_level(160.0, 0.02, 0.0, 100.0);
        let a = aero_forces_moments(&s1, &inputs, &model, &wind, 0.0).unwrap();
        let k = 2f64.sqrt();
        model.v_ref *= k;
        let s2 = AircraftState::wings_level(160.0 * k, 0.02, 0.0, 100.0);
        let b = aero_forces_moments(&s2, &inputs, &model, &wind, 0.0).unwrap();
        for i in 0..3 {
            assert_abs_diff_eq!(
                b.force[i],
                2.0 * a.force[i],
                epsilon = 1e-6 * a.force[i].abs().max(1.0)
            );
            assert_abs_diff_eq!(
                b.moment[i],
                2.0 * a.moment[i],
                epsilon = 1e-6 * a.moment[i].abs().max(1.0)
            );
        }
    }

    #[test]
    fn identity_attitude_kinematics() {
        let model = AeroModel::default();
        let s = AircraftState {
            u: 150.0,
            v: 3.0,
            w: 4.0,
            h: 50.0,
            ..AircraftState::zero()
        };
        let d = state_derivative(
            &s,
            &ControlInputs::default(),
            &model,
            &WindState::calm(),
            0.0,
        )
        .unwrap();
        assert_eq!(d.x, 150.0);
        assert_eq!(d.y, 3.0);
        assert_eq!(d.h, -4.0);
    }

    #[test]
    fn pitch_rate_maps_to_theta_dot_when_wings_level() {
        let model = AeroModel::default();
        let s = AircraftState {
            q: 0.037,
            ..AircraftState::wings_level(160.0, 0.0, 0.1, 100.0)
        };
        let d = state_derivative(
            &s,
            &ControlInputs::default(),
            &model,
            &WindState::calm(),
            0.0,
        )
        .unwrap();
        assert_eq!(d.theta, 0.037);
    }

    #[test]
    fn euler_singularity_is_rejected() {
        let model = AeroModel::default();
        let s = AircraftState::wings_level(160.0, 0.0, 89.5f64.to_radians(), 100.0);
        let r = state_derivative(
            &s,
            &ControlInputs::default(),
            &model,
            &WindState::calm(),
            0.0,
        );
        assert!(matches!(r, Err(Error::Diverged { .. })));
    }

    #[test]
    fn elevator_free_moment_plus_elevator_term_is_total() {
        let model = AeroModel::default();
        let s = AircraftState {
            q: 0.01,
            ..AircraftState::wings_level(160.0, -0.01, 0.0, 100.0)
        };
        let de = 0.05;
        let free = pitch_moment_without_elevator(&s, &model, 0.0).unwrap();
        let total = aero_forces_moments(
            &s,
            &ControlInputs::new(de, 0.0),
            &model,
            &WindState::calm(),
            0.0,
        )
        .unwrap()
        .moment[1];
        let eff = model.elevator_effectiveness(s.airspeed());
        assert_abs_diff_eq!(free + eff * de, total, epsilon = 1e-6);
    }
}
