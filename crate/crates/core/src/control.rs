//! Three-loop dynamic inversion: altitude → pitch → pitch rate → elevator.
//!
//! Each loop imposes first-order error dynamics `ė + k·e = 0` on its output.

use serde::{Deserialize, Serialize};

use crate::dynamics::{pitch_moment_without_elevator, saturate_elevator, AeroModel, AircraftState};
use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

/// Error-dynamics gains, 1/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DIGains {
    pub k_h: f64,
    pub k_theta: f64,
    pub k_q: f64,
}

impl Default for DIGains {
    fn default() -> Self {
        Self {
            k_h: 1.3,
            k_theta: 5.0,
            k_q: 10.0,
        }
    }
}

impl DIGains {
    pub fn validate(&self) -> Result<()> {
        if [self.k_h, self.k_theta, self.k_q]
            .iter()
            .all(|k| *k > 0.0 && k.is_finite())
        {
            Ok(())
        } else {
            Err(Error::Config(format!(
                "dynamic inversion gains must be positive: {self:?}"
            )))
        }
    }
}

/// Altitude loop: pitch attitude that yields the climb rate
/// `ḣ_des − k_h·(h − h_des)` given the body velocity.
#[allow(clippy::too_many_arguments)]
pub fn di_outer<T: Scalar>(
    h: T,
    h_des: T,
    hdot_des: T,
    u: T,
    v: T,
    w: T,
    phi: T,
    k_h: T,
) -> Result<T> {
    if !(u >= lit(1.0)) {
        return Err(Error::ControllerFault(format!(
            "forward speed {u} m/s too low for altitude loop"
        )));
    }
    let b = v * phi.sin() + w * phi.cos();
    let norm = (u * u + b * b).sqrt();
    let arg = ((hdot_des - k_h * (h - h_des)) / norm).clamp_to(-T::one(), T::one());
    Ok(arg.asin() + (b / u).atan())
}

/// Pitch loop: body pitch rate realising `θ̇_des − k_θ·(θ − θ_des)`.
pub fn di_middle<T: Scalar>(
    theta: T,
    theta_des: T,
    thetadot_des: T,
    r: T,
    phi: T,
    k_theta: T,
) -> Result<T> {
    if phi.abs() >= lit::<T>(89.0).to_radians() {
        return Err(Error::ControllerFault(format!(
            "bank {phi} rad too steep for pitch loop"
        )));
    }
    Ok((thetadot_des - k_theta * (theta - theta_des) + r * phi.sin()) / phi.cos())
}

/// Pitch-rate loop: elevator that produces `q̇_des − k_q·(q − q_des)`.
///
/// `m_a` is the aerodynamic pitching moment without the elevator term and
/// `m_de` the elevator effectiveness (N·m/rad). Output is saturated.
#[allow(clippy::too_many_arguments)]
pub fn di_inner<T: Scalar>(
    q: T,
    q_des: T,
    qdot_des: T,
    p: T,
    r: T,
    m_a: T,
    m_de: T,
    inertia: [T; 3],
    k_q: T,
) -> Result<T> {
    if !(m_de.abs() > T::epsilon()) {
        return Err(Error::ControllerFault(
            "vanishing elevator effectiveness".into(),
        ));
    }
    let [ix, iy, iz] = inertia;
    let de = (iy * (qdot_des - k_q * (q - q_des)) + (ix - iz) * r * p - m_a) / m_de;
    if !de.is_finite() {
        return Err(Error::ControllerFault("non-finite elevator command".into()));
    }
    Ok(saturate_elevator(de))
}

/// Commands of one controller update.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DIOutput<T> {
    pub theta_des: T,
    pub q_des: T,
    pub delta_e: T,
}

/// Dynamic inversion controller with backward-differenced feedforwards.
#[derive(Debug, Clone)]
pub struct DynamicInversion<T> {
    pub gains: DIGains,
    /// Model the controller inverts (may differ from the plant).
    pub model: AeroModel<T>,
    pub dt: T,
    prev_theta_des: Option<T>,
    prev_q_des: Option<T>,
}

impl<T: Scalar> DynamicInversion<T> {
    pub fn new(gains: DIGains, model: AeroModel<T>, dt: T) -> Self {
        Self {
            gains,
            model,
            dt,
            prev_theta_des: None,
            prev_q_des: None,
        }
    }

    pub fn reset(&mut self) {
        self.prev_theta_des = None;
        self.prev_q_des = None;
    }

    fn rate(prev: &mut Option<T>, now: T, dt: T) -> T {
        let r = prev.map_or(T::zero(), |p| (now - p) / dt);
        *prev = Some(now);
        r
    }

    /// Pitch and rate loops for an externally supplied pitch command.
    ///
    /// `measured` carries the (possibly noisy) θ and q the controller sees.
    pub fn track_pitch(
        &mut self,
        measured: &AircraftState<T>,
        theta_des: T,
        alpha_dot: T,
    ) -> Result<DIOutput<T>> {
        let thetadot_des = Self::rate(&mut self.prev_theta_des, theta_des, self.dt);
        let q_des = di_middle(
            measured.theta,
            theta_des,
            thetadot_des,
            measured.r,
            measured.phi,
            lit(self.gains.k_theta),
        )?;
        let qdot_des = Self::rate(&mut self.prev_q_des, q_des, self.dt);
        let m_a = pitch_moment_without_elevator(measured, &self.model, alpha_dot)?;
        let m_de = self.model.elevator_effectiveness(measured.airspeed());
        let delta_e = di_inner(
            measured.q,
            q_des,
            qdot_des,
            measured.p,
            measured.r,
            m_a,
            m_de,
            [self.model.ix, self.model.iy, self.model.iz],
            lit(self.gains.k_q),
        )?;
        Ok(DIOutput {
            theta_des,
            q_des,
            delta_e,
        })
    }

    /// Full three-loop update from the desired altitude and climb rate.
    ///
    /// `alpha_outer` is the angle of attack the altitude loop uses to turn a
    /// climb rate into a pitch attitude. Holding the trim value keeps the loop
    /// stable; feeding the measured value couples it to the short period.
    pub fn update(
        &mut self,
        measured: &AircraftState<T>,
        h_des: T,
        hdot_des: T,
        alpha_outer: T,
        alpha_dot: T,
    ) -> Result<DIOutput<T>> {
        let theta_des = di_outer(
            measured.h,
            h_des,
            hdot_des,
            measured.u,
            measured.v,
            measured.u * alpha_outer.tan(),
            measured.phi,
            lit(self.gains.k_h),
        )?;
        self.track_pitch(measured, theta_des, alpha_dot)
    }
}
