//! Wind velocity, gradients and equivalent rigid-air rotation seen by the airframe.

use serde::{Deserialize, Serialize};

use crate::dynamics::mat_vec;
use crate::scalar::{lit, Scalar};

use super::dryden::DrydenFilterState;

/// How spatial gradients are closed from the gust time series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum GradientClosure {
    /// The series is a field frozen in the air mass and flown through at u1:
    /// ∂W/∂x = Ẇ_series/u1, local ∂W/∂t = 0.
    #[default]
    FrozenField,
    /// The series is the local time derivative of a field convected at u1:
    /// ∂W/∂t = Ẇ_series, ∂W/∂x = −Ẇ_series/u1.
    Convected,
}

/// Everything the equations of motion need to know about the moving air.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindState<T> {
    pub filter: DrydenFilterState<T>,
    /// Gust velocity in body axes, m/s.
    pub gust: [T; 3],
    /// Gust velocity on the previous step (for backward differencing).
    pub prev_gust: Option<[T; 3]>,
    /// Body-axis spatial gradient, `grad[i][j] = ∂W_i/∂x_j`, 1/s.
    pub grad: [[T; 3]; 3],
    /// Local time derivative ∂W/∂t, m/s².
    pub dw_dt: [T; 3],
    /// Rate of change of the gust series, m/s².
    pub series_rate: [T; 3],
    /// Equivalent rigid-air angular rate in body axes, rad/s.
    pub omega: [T; 3],
    /// Feed the wind acceleration into the translational equations.
    pub couple_acceleration: bool,
}

impl<T: Scalar> WindState<T> {
    /// Still air.
    pub fn calm() -> Self {
        let z = [T::zero(); 3];
        Self {
            filter: DrydenFilterState::zero(),
            gust: z,
            prev_gust: None,
            grad: [z; 3],
            dw_dt: z,
            series_rate: z,
            omega: z,
            couple_acceleration: true,
        }
    }

    pub fn is_calm(&self) -> bool {
        let zero = |a: &[T; 3]| a.iter().all(|v| *v == T::zero());
        zero(&self.gust) && zero(&self.dw_dt) && zero(&self.omega) && self.grad.iter().all(zero)
    }

    /// Rate of change of the body wind along the flight path:
    /// `Ẇ = ∇W·(v_air + W) + ∂W/∂t`.
    pub fn acceleration(&self, vel_air: &[T; 3]) -> [T; 3] {
        let vel = [
            vel_air[0] + self.gust[0],
            vel_air[1] + self.gust[1],
            vel_air[2] + self.gust[2],
        ];
        let conv = mat_vec(&self.grad, &vel);
        [
            conv[0] + self.dw_dt[0],
            conv[1] + self.dw_dt[1],
            conv[2] + self.dw_dt[2],
        ]
    }
}

/// Sets a new gust sample and updates the temporal and spatial derivatives.
///
/// The series rate is the backward difference over `dt` (zero on the first
/// sample); only x-gradients are non-zero under either closure.
pub fn wind_gradients<T: Scalar>(
    wind: &mut WindState<T>,
    gust: [T; 3],
    u1: T,
    dt: T,
    closure: GradientClosure,
) {
    let prev = wind.prev_gust.unwrap_or(gust);
    let mut rate = [T::zero(); 3];
    for i in 0..3 {
        rate[i] = (gust[i] - prev[i]) / dt;
    }
    let z = [T::zero(); 3];
    let mut grad = [z; 3];
    let mut local = z;
    match closure {
        GradientClosure::FrozenField => {
            for i in 0..3 {
                grad[i][0] = rate[i] / u1;
            }
        }
        GradientClosure::Convected => {
            for i in 0..3 {
                grad[i][0] = -rate[i] / u1;
                local[i] = rate[i];
            }
        }
    }
    wind.prev_gust = Some(gust);
    wind.gust = gust;
    wind.series_rate = rate;
    wind.grad = grad;
    wind.dw_dt = local;
}

/// Half the curl of a velocity-gradient tensor.
pub fn half_curl<T: Scalar>(g: &[[T; 3]; 3]) -> [T; 3] {
    let h = lit::<T>(0.5);
    [
        h * (g[2][1] - g[1][2]),
        h * (g[0][2] - g[2][0]),
        h * (g[1][0] - g[0][1]),
    ]
}

fn transpose<T: Scalar>(m: &[[T; 3]; 3]) -> [[T; 3]; 3] {
    let mut t = *m;
    for i in 0..3 {
        for j in 0..3 {
            t[i][j] = m[j][i];
        }
    }
    t
}

fn mat_mul<T: Scalar>(a: &[[T; 3]; 3], b: &[[T; 3]; 3]) -> [[T; 3]; 3] {
    let mut c = [[T::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
        }
    }
    c
}

/// Rotates a gradient tensor between frames: `C·G·Cᵀ`.
pub fn rotate_gradient<T: Scalar>(dcm: &[[T; 3]; 3], g: &[[T; 3]; 3]) -> [[T; 3]; 3] {
    mat_mul(&mat_mul(dcm, g), &transpose(dcm))
}

/// Equivalent rigid-air angular rate in body axes.
///
/// The body gradient is expressed in earth axes with the body-to-earth
/// direction cosines `dcm`, half its curl is taken there and the result is
/// rotated back to body axes.
pub fn wind_angular_rates<T: Scalar>(grad_body: &[[T; 3]; 3], dcm: &[[T; 3]; 3]) -> [T; 3] {
    let grad_earth = rotate_gradient(dcm, grad_body);
    let omega_earth = half_curl(&grad_earth);
    mat_vec(&transpose(dcm), &omega_earth)
}
