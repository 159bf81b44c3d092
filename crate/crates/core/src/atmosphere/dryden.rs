//! Dryden continuous-turbulence shaping filters.

use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};
use crate::units::M_PER_FT;

/// Scale lengths and intensities of the low-altitude Dryden model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrydenParams<T> {
    /// Wind speed at 20 ft, m/s.
    pub u20: T,
    /// Altitude, ft.
    pub z_ft: T,
    /// Mean airspeed the field is convected past, m/s.
    pub u1: T,
    /// Scale lengths, ft.
    pub l_u: T,
    pub l_v: T,
    pub l_w: T,
    /// Intensities, m/s.
    pub sigma_u: T,
    pub sigma_v: T,
    pub sigma_w: T,
}

/// Evaluates scale lengths and intensities at altitude `z_m` (metres).
///
/// The empirical fits are in feet; `z_m` is converted before evaluation.
pub fn dryden_scales<T: Scalar>(z_m: T, u20: T, u1: T) -> Result<DrydenParams<T>> {
    if !(z_m > T::zero()) {
        return Err(Error::Domain(format!(
            "Dryden altitude must be positive, got {z_m} m"
        )));
    }
    if !(u1 > T::zero()) {
        return Err(Error::Domain(format!(
            "convection speed must be positive, got {u1} m/s"
        )));
    }
    let z = z_m / lit(M_PER_FT);
    let base = lit::<T>(0.177) + lit::<T>(0.000823) * z;
    let l_u = z / base.powf(lit(1.2));
    let sigma_w = lit::<T>(0.1) * u20;
    let sigma_u = sigma_w / base.powf(lit(0.4));
    Ok(DrydenParams {
        u20,
        z_ft: z,
        u1,
        l_u,
        l_v: l_u,
        l_w: z,
        sigma_u,
        sigma_v: sigma_u,
        sigma_w,
    })
}

impl<T: Scalar> DrydenParams<T> {
    /// Same parameters with every intensity multiplied by `k`.
    pub fn with_intensity_scale(mut self, k: T) -> Self {
        self.sigma_u = self.sigma_u * k;
        self.sigma_v = self.sigma_v * k;
        self.sigma_w = self.sigma_w * k;
        self
    }

    /// Time constant `L/u1` of a scale length given in feet, s.
    pub fn time_scale(&self, l_ft: T) -> T {
        l_ft * lit(M_PER_FT) / self.u1
    }

    /// Transfer functions of the three shaping filters.
    pub fn filters(&self) -> [ShapingFilter<T>; 3] {
        let two = lit::<T>(2.0);
        let sqrt3 = lit::<T>(3.0).sqrt();
        let pi = T::PI();
        let tu = self.time_scale(self.l_u);
        let tv = self.time_scale(self.l_v);
        let tw = self.time_scale(self.l_w);
        [
            ShapingFilter::FirstOrder {
                gain: self.sigma_u * (two * tu / pi).sqrt(),
                tau: tu,
            },
            ShapingFilter::SecondOrder {
                gain: self.sigma_v * (two * tv / pi).sqrt(),
                zero: two * sqrt3 * tv,
                pole: two * tv,
            },
            ShapingFilter::SecondOrder {
                gain: self.sigma_w * (two * tw / pi).sqrt(),
                zero: two * sqrt3 * tw,
                pole: two * tw,
            },
        ]
    }

    pub fn sigmas(&self) -> [T; 3] {
        [self.sigma_u, self.sigma_v, self.sigma_w]
    }
}

/// `gain/(1 + tau·s)` or `gain·(1 + zero·s)/(1 + pole·s)²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShapingFilter<T> {
    FirstOrder { gain: T, tau: T },
    SecondOrder { gain: T, zero: T, pole: T },
}

impl<T: Scalar> ShapingFilter<T> {
    /// |G(jω)|².
    pub fn magnitude_squared(&self, omega: T) -> T {
        match *self {
            ShapingFilter::FirstOrder { gain, tau } => {
                gain * gain / (T::one() + (tau * omega).powi(2))
            }
            ShapingFilter::SecondOrder { gain, zero, pole } => {
                let den = T::one() + (pole * omega).powi(2);
                gain * gain * (T::one() + (zero * omega).powi(2)) / (den * den)
            }
        }
    }

    /// One exact zero-order-hold step of the state-space realisation driven
    /// by the held input `n`. Returns the output after the update.
    fn step(&self, x: &mut [T; 2], n: T, dt: T) -> T {
        match *self {
            ShapingFilter::FirstOrder { gain, tau } => {
                let e = (-dt / tau).exp();
                x[0] = e * x[0] + tau * (T::one() - e) * n;
                gain / tau * x[0]
            }
            ShapingFilter::SecondOrder { gain, zero, pole } => {
                // x1' = −λx1 + n, x2' = −λx2 + x1, y = (K/b²)(a·x1 + (1 − aλ)·x2)
                let lam = T::one() / pole;
                let e = (-lam * dt).exp();
                let g1 = (T::one() - e) / lam;
                let g2 = (T::one() - e * (T::one() + lam * dt)) / (lam * lam);
                let x1 = e * x[0] + g1 * n;
                let x2 = e * (dt * x[0] + x[1]) + g2 * n;
                x[0] = x1;
                x[1] = x2;
                gain / (pole * pole) * (zero * x1 + (T::one() - zero * lam) * x2)
            }
        }
    }
}

/// Internal states of the three shaping filters.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DrydenFilterState<T> {
    pub u: [T; 2],
    pub v: [T; 2],
    pub w: [T; 2],
}

impl<T: Scalar> DrydenFilterState<T> {
    pub fn zero() -> Self {
        Self {
            u: [T::zero(); 2],
            v: [T::zero(); 2],
            w: [T::zero(); 2],
        }
    }

    pub fn is_finite(&self) -> bool {
        self.u
            .iter()
            .chain(&self.v)
            .chain(&self.w)
            .all(|v| v.is_finite())
    }

    /// Advances all three filters by `dt` with unit-variance white samples
    /// `noise` and returns the gust velocities (u, v, w), m/s.
    ///
    /// Continuous white noise of intensity π is approximated by samples of
    /// variance π/dt held over the step, which makes the stationary output
    /// variance equal ∫₀^∞ |G(jω)|² dω = σ².
    pub fn step(&mut self, params: &DrydenParams<T>, noise: [T; 3], dt: T) -> [T; 3] {
        let scale = (T::PI() / dt).sqrt();
        let [fu, fv, fw] = params.filters();
        [
            fu.step(&mut self.u, scale * noise[0], dt),
            fv.step(&mut self.v, scale * noise[1], dt),
            fw.step(&mut self.w, scale * noise[2], dt),
        ]
    }
}
