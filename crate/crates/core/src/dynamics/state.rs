use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

/// Number of integrated state components (time excluded).
pub const STATE_DIM: usize = 12;

/// Rigid-body state of the aircraft.
///
/// Velocities are air-relative components in body axes, rates are inertial
/// body rates, and `h` is altitude above ground (positive up).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AircraftState<T> {
    pub u: T,
    pub v: T,
    pub w: T,
    pub p: T,
    pub q: T,
    pub r: T,
    pub phi: T,
    pub theta: T,
    pub psi: T,
    pub x: T,
    pub y: T,
    pub h: T,
    pub t: T,
}

/// Time derivative of the twelve integrated components of [`AircraftState`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StateRates<T> {
    pub u: T,
    pub v: T,
    pub w: T,
    pub p: T,
    pub q: T,
    pub r: T,
    pub phi: T,
    pub theta: T,
    pub psi: T,
    pub x: T,
    pub y: T,
    pub h: T,
}

impl<T: Scalar> AircraftState<T> {
    /// Wings-level state flying at airspeed `v` with angle of attack `alpha`
    /// and pitch `theta`.
    pub fn wings_level(v: T, alpha: T, theta: T, h: T) -> Self {
        Self {
            u: v * alpha.cos(),
            w: v * alpha.sin(),
            theta,
            h,
            ..Self::zero()
        }
    }

    pub fn zero() -> Self {
        Self {
            u: T::zero(),
            v: T::zero(),
            w: T::zero(),
            p: T::zero(),
            q: T::zero(),
            r: T::zero(),
            phi: T::zero(),
            theta: T::zero(),
            psi: T::zero(),
            x: T::zero(),
            y: T::zero(),
            h: T::zero(),
            t: T::zero(),
        }
    }

    /// Air-relative speed.
    pub fn airspeed(&self) -> T {
        (self.u * self.u + self.v * self.v + self.w * self.w).sqrt()
    }

    /// Angle of attack from the air-relative body velocity.
    pub fn alpha(&self) -> T {
        self.w.atan2(self.u)
    }

    /// Euler pitch rate θ̇ from the body rates.
    pub fn theta_dot(&self) -> T {
        self.q * self.phi.cos() - self.r * self.phi.sin()
    }

    pub fn to_array(&self) -> [T; STATE_DIM] {
        [
            self.u, self.v, self.w, self.p, self.q, self.r, self.phi, self.theta, self.psi, self.x,
            self.y, self.h,
        ]
    }

    pub fn from_array(a: [T; STATE_DIM], t: T) -> Self {
        Self {
            u: a[0],
            v: a[1],
            w: a[2],
            p: a[3],
            q: a[4],
            r: a[5],
            phi: a[6],
            theta: a[7],
            psi: a[8],
            x: a[9],
            y: a[10],
            h: a[11],
            t,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite()) && self.t.is_finite()
    }

    /// Checks finiteness and the Euler-angle singularity margin (1° from ±90°).
    pub fn validate(&self) -> Result<()> {
        if !self.is_finite() {
            return Err(Error::Diverged {
                t: self.t.as_f64(),
                reason: format!("non-finite state {:?}", self.map(|v| v.as_f64())),
            });
        }
        if self.theta.abs() > lit::<T>(89.0).to_radians() {
            return Err(Error::Diverged {
                t: self.t.as_f64(),
                reason: format!(
                    "pitch {:.2} deg near Euler singularity",
                    self.theta.as_f64().to_degrees()
                ),
            });
        }
        Ok(())
    }

    pub fn map<U>(&self, f: impl Fn(T) -> U) -> AircraftState<U> {
        AircraftState {
            u: f(self.u),
            v: f(self.v),
            w: f(self.w),
            p: f(self.p),
            q: f(self.q),
            r: f(self.r),
            phi: f(self.phi),
            theta: f(self.theta),
            psi: f(self.psi),
            x: f(self.x),
            y: f(self.y),
            h: f(self.h),
            t: f(self.t),
        }
    }
}

impl<T: Scalar> StateRates<T> {
    pub fn to_array(&self) -> [T; STATE_DIM] {
        [
            self.u, self.v, self.w, self.p, self.q, self.r, self.phi, self.theta, self.psi, self.x,
            self.y, self.h,
        ]
    }

    pub fn from_array(a: [T; STATE_DIM]) -> Self {
        Self {
            u: a[0],
            v: a[1],
            w: a[2],
            p: a[3],
            q: a[4],
            r: a[5],
            phi: a[6],
            theta: a[7],
            psi: a[8],
            x: a[9],
            y: a[10],
            h: a[11],
        }
    }
}

/// Skew-symmetric cross-product matrix of the body rates.
pub fn skew<T: Scalar>(p: T, q: T, r: T) -> [[T; 3]; 3] {
    let z = T::zero();
    [[z, -r, q], [r, z, -p], [-q, p, z]]
}

/// Elevator deflection and body-x thrust.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ControlInputs<T> {
    /// Elevator deflection, rad.
    pub delta_e: T,
    /// Propulsive force along body x, N.
    pub thrust: T,
}

/// Elevator saturation, rad.
pub const ELEVATOR_LIMIT: f64 = 0.25;

impl<T: Scalar> ControlInputs<T> {
    /// Builds inputs with the elevator clamped to its travel and thrust floored at 0.
    pub fn new(delta_e: T, thrust: T) -> Self {
        Self {
            delta_e: saturate_elevator(delta_e),
            thrust: thrust.max(T::zero()),
        }
    }
}

pub fn saturate_elevator<T: Scalar>(delta_e: T) -> T {
    let lim = lit::<T>(ELEVATOR_LIMIT);
    delta_e.clamp_to(-lim, lim)
}
