//! Glideslope-and-flare landing path.
//!
//! Along-track coordinate `x` starts at 0 where the glideslope, extended
//! back from the screen height, reaches the initial altitude. The straight
//! segment descends at the approach angle until the flare altitude, where a
//! circular arc of radius `R` tangent to the glideslope brings the path
//! level at touchdown (`x_td`, h = 0).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};
use crate::units::{G0, M_PER_FT};

/// Units of the screen height anchoring the approach segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ScreenHeight {
    #[default]
    FiftyMetres,
    FiftyFeet,
}

impl ScreenHeight {
    pub fn metres(self) -> f64 {
        match self {
            ScreenHeight::FiftyMetres => 50.0,
            ScreenHeight::FiftyFeet => 50.0 * M_PER_FT,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandingGeometry<T> {
    /// Approach angle, rad.
    pub theta_a: T,
    pub v_stall: T,
    /// Touchdown speed 1.15·V_stall, m/s.
    pub v_td: T,
    /// Flare speed 1.23·V_stall, m/s.
    pub v_f: T,
    /// Flare radius, m.
    pub radius: T,
    /// Flare entry altitude, m.
    pub h_f: T,
    /// Approach distance from screen height to flare entry (negative), m.
    pub s_a: T,
    /// Flare distance (negative), m.
    pub s_f: T,
    /// `s_a + s_f`, m.
    pub s_td: T,
    pub screen_height: T,
    /// Altitude at x = 0, m.
    pub h0: T,
    /// Along-track positions of screen height, flare entry and touchdown, m.
    pub x_screen: T,
    pub x_flare: T,
    pub x_td: T,
}

/// Desired altitude, path slope and pitch at one along-track position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesiredPath<T> {
    pub h: T,
    /// dh/dx: multiply by ground speed to get the desired climb rate.
    pub slope: T,
    pub theta: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PathCommand<T> {
    Track(DesiredPath<T>),
    /// Past the touchdown point.
    Touchdown,
}

/// Builds the landing path for the given stall speed, approach angle (deg)
/// and initial altitude.
pub fn plan_landing<T: Scalar>(
    v_stall: T,
    theta_a_deg: T,
    h0: T,
    screen: ScreenHeight,
) -> Result<LandingGeometry<T>> {
    if !(v_stall > T::zero()) {
        return Err(Error::Geometry(format!(
            "stall speed must be positive, got {v_stall}"
        )));
    }
    if !(theta_a_deg > T::zero() && theta_a_deg <= lit(3.0)) {
        return Err(Error::Geometry(format!(
            "approach angle {theta_a_deg} deg outside (0, 3]"
        )));
    }
    let theta_a = theta_a_deg.to_radians();
    let screen_height = lit::<T>(screen.metres());
    let v_td = lit::<T>(1.15) * v_stall;
    let v_f = lit::<T>(1.23) * v_stall;
    let radius = v_f * v_f / (lit::<T>(0.2) * lit(G0));
    let h_f = radius - radius * theta_a.cos();
    if h_f >= screen_height {
        return Err(Error::Geometry(format!(
            "flare altitude {h_f} m is not below the screen height {screen_height} m"
        )));
    }
    if !(h0 > h_f) {
        return Err(Error::Geometry(format!(
            "initial altitude {h0} m not above flare altitude {h_f} m"
        )));
    }
    let tan_a = theta_a.tan();
    let s_a = -(screen_height - h_f) / tan_a;
    let s_f = -radius * theta_a.sin();
    let x_flare = (h0 - h_f) / tan_a;
    let x_td = x_flare - s_f;
    let x_screen = x_flare + s_a;
    Ok(LandingGeometry {
        theta_a,
        v_stall,
        v_td,
        v_f,
        radius,
        h_f,
        s_a,
        s_f,
        s_td: s_a + s_f,
        screen_height,
        h0,
        x_screen,
        x_flare,
        x_td,
    })
}

impl<T: Scalar> LandingGeometry<T> {
    /// Desired altitude, slope and pitch at along-track position `x`.
    pub fn desired_state(&self, x: T) -> PathCommand<T> {
        if x > self.x_td {
            return PathCommand::Touchdown;
        }
        if x <= self.x_flare {
            let tan_a = self.theta_a.tan();
            return PathCommand::Track(DesiredPath {
                h: self.h_f + (self.x_flare - x) * tan_a,
                slope: -tan_a,
                theta: -self.theta_a,
            });
        }
        let dx = x - self.x_td;
        let root = (self.radius * self.radius - dx * dx).sqrt();
        PathCommand::Track(DesiredPath {
            h: self.radius - root,
            slope: dx / root,
            theta: (dx / self.radius).asin(),
        })
    }

    /// Run-start summary (R, h_f, s_a, s_f, s_td).
    pub fn summary(&self) -> String {
        format!(
            "R={:.3} m h_f={:.4} m s_a={:.3} m s_f={:.3} m s_td={:.3} m x_td={:.3} m",
            self.radius.as_f64(),
            self.h_f.as_f64(),
            self.s_a.as_f64(),
            self.s_f.as_f64(),
            self.s_td.as_f64(),
            self.x_td.as_f64()
        )
    }
}

/// Stall speed implied by a touchdown speed of 1.15·V_stall.
pub fn stall_speed_from_touchdown<T: Scalar>(v_td: T) -> T {
    v_td / lit(1.15)
}
