//! Dryden turbulence, its coupling into the equations of motion, and sensor noise.

mod dryden;
mod wind;

pub use dryden::{dryden_scales, DrydenFilterState, DrydenParams, ShapingFilter};
pub use wind::{
    half_curl, rotate_gradient, wind_angular_rates, wind_gradients, GradientClosure, WindState,
};

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::dynamics::{body_to_earth, AircraftState};
use crate::error::Result;
use crate::scalar::{lit, Scalar};

/// Turbulence settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TurbulenceConfig {
    pub enabled: bool,
    /// Wind speed at 20 ft, m/s.
    pub u20: f64,
    /// Lowest altitude at which the scale lengths are evaluated, m.
    pub min_altitude: f64,
    pub closure: GradientClosure,
    pub couple_acceleration: bool,
    /// Pre-roll before the run starts, s.
    pub warm_up: f64,
}

impl Default for TurbulenceConfig {
    fn default() -> Self {
        Self {
            enabled: false,
            u20: 7.7,
            min_altitude: 10.0 * crate::units::M_PER_FT,
            closure: GradientClosure::FrozenField,
            couple_acceleration: true,
            warm_up: 5.0,
        }
    }
}

/// Draws three independent unit normal samples.
pub fn white_noise<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> [T; 3] {
    let mut n = [T::zero(); 3];
    for v in &mut n {
        *v = lit::<T>(rng.sample::<f64, _>(StandardNormal));
    }
    n
}

/// Advances the gust field by one step and refreshes the gradients and
/// rigid-air rotation. Does nothing when turbulence is disabled.
#[derive(Debug, Clone)]
pub struct Turbulence<T> {
    pub config: TurbulenceConfig,
    /// Convection speed of the frozen field, m/s.
    pub u1: T,
    pub wind: WindState<T>,
}

impl<T: Scalar> Turbulence<T> {
    pub fn new(config: TurbulenceConfig, u1: T) -> Self {
        let mut wind = WindState::calm();
        wind.couple_acceleration = config.couple_acceleration;
        Self { config, u1, wind }
    }

    pub fn params(&self, altitude: T) -> Result<DrydenParams<T>> {
        dryden_scales(
            altitude.max(lit(self.config.min_altitude)),
            lit(self.config.u20),
            self.u1,
        )
    }

    pub fn advance<R: Rng + ?Sized>(
        &mut self,
        state: &AircraftState<T>,
        rng: &mut R,
        dt: T,
    ) -> Result<()> {
        if !self.config.enabled {
            return Ok(());
        }
        let params = self.params(state.h)?;
        let noise = white_noise(rng);
        let gust = self.wind.filter.step(&params, noise, dt);
        wind_gradients(&mut self.wind, gust, self.u1, dt, self.config.closure);
        let dcm = body_to_earth(state.phi, state.theta, state.psi);
        self.wind.omega = wind_angular_rates(&self.wind.grad, &dcm);
        Ok(())
    }

    /// Runs the filters for the configured warm-up so the run starts in
    /// stationary turbulence.
    pub fn warm_up<R: Rng + ?Sized>(
        &mut self,
        state: &AircraftState<T>,
        rng: &mut R,
        dt: T,
    ) -> Result<()> {
        if !self.config.enabled {
            return Ok(());
        }
        let steps = (self.config.warm_up / dt.as_f64()).round() as usize;
        for _ in 0..steps {
            self.advance(state, rng, dt)?;
        }
        Ok(())
    }
}

/// Standard deviations of the pitch and pitch-rate measurement noise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SensorNoise {
    /// Pitch attitude noise, deg.
    pub sigma_theta_deg: f64,
    /// Pitch rate noise, deg/s.
    pub sigma_q_deg: f64,
}

impl Default for SensorNoise {
    fn default() -> Self {
        Self {
            sigma_theta_deg: 0.05,
            sigma_q_deg: 0.01,
        }
    }
}

impl SensorNoise {
    pub fn off() -> Self {
        Self {
            sigma_theta_deg: 0.0,
            sigma_q_deg: 0.0,
        }
    }
}

/// Adds zero-mean Gaussian noise to pitch (rad) and pitch-rate (rad/s)
/// measurements. Zero sigmas consume no randomness.
pub fn add_sensor_noise<T: Scalar, R: Rng + ?Sized>(
    theta: T,
    q: T,
    sigmas: &SensorNoise,
    rng: &mut R,
) -> (T, T) {
    let mut draw = |sigma_deg: f64| {
        if sigma_deg > 0.0 {
            lit::<T>(sigma_deg.to_radians() * rng.sample::<f64, _>(StandardNormal))
        } else {
            T::zero()
        }
    };
    let nt = draw(sigmas.sigma_theta_deg);
    let nq = draw(sigmas.sigma_q_deg);
    (theta + nt, q + nq)
}
