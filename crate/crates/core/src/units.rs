//! Unit conversions used at the I/O boundary.

/// Standard gravity, m/s².
pub const G0: f64 = 9.80665;
/// ISA sea-level air density, kg/m³.
pub const RHO_SEA_LEVEL: f64 = 1.225;
/// Newtons per pound-force.
pub const N_PER_LBF: f64 = 4.448222;
/// Metres per foot.
pub const M_PER_FT: f64 = 0.3048;

pub fn deg(rad: f64) -> f64 {
    rad.to_degrees()
}

pub fn rad(deg: f64) -> f64 {
    deg.to_radians()
}

pub fn lbf_to_newton(lbf: f64) -> f64 {
    lbf * N_PER_LBF
}

pub fn newton_to_lbf(n: f64) -> f64 {
    n / N_PER_LBF
}
