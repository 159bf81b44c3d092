//! Aerodynamic, mass and geometry data of the Chaka-50 regional jet.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::units::{G0, RHO_SEA_LEVEL};

/// Longitudinal stability and control derivatives, 1/rad.
///
/// Row order follows the linear build-up
/// `[1, α, α̇·c̄/2V, u/V, q·c̄/2V, δE]` for lift, drag and pitching moment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Derivatives<T> {
    pub cl0: T,
    pub cl_alpha: T,
    pub cl_alpha_dot: T,
    pub cl_u: T,
    pub cl_q: T,
    pub cl_de: T,
    pub cd0: T,
    pub cd_alpha: T,
    pub cd_alpha_dot: T,
    pub cd_u: T,
    pub cd_q: T,
    pub cd_de: T,
    pub cm0: T,
    pub cm_alpha: T,
    pub cm_alpha_dot: T,
    pub cm_u: T,
    pub cm_q: T,
    pub cm_de: T,
}

/// Which column of the Chaka-50 derivative table to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum DerivativeSet {
    /// Nominal ("Ideal") column.
    #[default]
    Nominal,
    /// Perturbed column with the obvious digit slips repaired
    /// (`c_Du` 0.373 read as 0.0373).
    Uncertain,
    /// Perturbed column with the values exactly as tabulated.
    UncertainLiteral,
}

impl Derivatives<f64> {
    // cl0 is tabulated data that happens to sit near 1/π.
    #[allow(clippy::approx_constant)]
    pub fn nominal() -> Self {
        Self {
            cl0: 0.3180,
            cl_alpha: 14.88,
            cl_alpha_dot: 0.0,
            cl_u: 0.081,
            cl_q: 12.53,
            cl_de: 0.78,
            cd0: 0.0338,
            cd_alpha: 0.8930,
            cd_alpha_dot: 0.0,
            cd_u: 0.041,
            cd_q: 0.0,
            cd_de: 0.1570,
            cm0: -0.06,
            cm_alpha: -11.84,
            cm_alpha_dot: 0.0,
            cm_u: -0.039,
            cm_q: -40.69,
            cm_de: -5.98,
        }
    }

    pub fn uncertain() -> Self {
        Self {
            cd_u: 0.0373,
            ..Self::uncertain_literal()
        }
    }

    pub fn uncertain_literal() -> Self {
        Self {
            cl0: 0.3363,
            cl_alpha: 14.52,
            cl_alpha_dot: 0.0,
            cl_u: 0.076,
            cl_q: 12.56,
            cl_de: 0.74,
            cd0: 0.0358,
            cd_alpha: 0.893,
            cd_alpha_dot: 0.0,
            cd_u: 0.373,
            cd_q: 0.0,
            // Printed as "01483"; the leading zero is a dropped decimal point.
            cd_de: 0.1483,
            cm0: -0.061,
            cm_alpha: -11.84,
            cm_alpha_dot: 0.0,
            cm_u: -0.041,
            cm_q: -37.27,
            cm_de: -5.93,
        }
    }

    pub fn from_set(set: DerivativeSet) -> Self {
        match set {
            DerivativeSet::Nominal => Self::nominal(),
            DerivativeSet::Uncertain => Self::uncertain(),
            DerivativeSet::UncertainLiteral => Self::uncertain_literal(),
        }
    }
}

impl Default for Derivatives<f64> {
    fn default() -> Self {
        Self::nominal()
    }
}

impl<T: Scalar> Derivatives<T> {
    pub fn cast<U: Scalar>(&self) -> Derivatives<U> {
        self.map(|v| U::lit(v.as_f64()))
    }

    pub fn map<U>(&self, f: impl Fn(T) -> U) -> Derivatives<U> {
        Derivatives {
            cl0: f(self.cl0),
            cl_alpha: f(self.cl_alpha),
            cl_alpha_dot: f(self.cl_alpha_dot),
            cl_u: f(self.cl_u),
            cl_q: f(self.cl_q),
            cl_de: f(self.cl_de),
            cd0: f(self.cd0),
            cd_alpha: f(self.cd_alpha),
            cd_alpha_dot: f(self.cd_alpha_dot),
            cd_u: f(self.cd_u),
            cd_q: f(self.cd_q),
            cd_de: f(self.cd_de),
            cm0: f(self.cm0),
            cm_alpha: f(self.cm_alpha),
            cm_alpha_dot: f(self.cm_alpha_dot),
            cm_u: f(self.cm_u),
            cm_q: f(self.cm_q),
            cm_de: f(self.cm_de),
        }
    }

    /// Multiplies every derivative by `factor` (robustness sweep).
    pub fn scaled(&self, factor: T) -> Self {
        self.map(|v| v * factor)
    }
}

/// How the dimensional lift and drag are formed from their coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ForceReference {
    /// `q̄·S·c̄` for all three rows of the build-up, as the matrix form is printed.
    #[default]
    ChordScaled,
    /// `q̄·S` for lift and drag, `q̄·S·c̄` for pitching moment.
    WingArea,
}

/// Complete aircraft model: derivatives, geometry, mass and inertia.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AeroModel<T> {
    pub derivatives: Derivatives<T>,
    /// Wing area, m².
    pub wing_area: T,
    /// Mean aerodynamic chord, m.
    pub chord: T,
    /// Span, m.
    pub span: T,
    /// Mass, kg.
    pub mass: T,
    /// Inertia, kg·m².
    pub ix: T,
    pub iy: T,
    pub iz: T,
    pub ixz: T,
    /// Reference (trim) airspeed used to non-dimensionalise u, q and α̇, m/s.
    pub v_ref: T,
    /// Gravitational acceleration, m/s².
    pub g: T,
    /// Air density, kg/m³.
    pub rho: T,
    pub force_reference: ForceReference,
    /// Take |α| and |δE| in the drag build-up.
    pub drag_abs: bool,
}

impl AeroModel<f64> {
    /// Chaka-50 data with the given derivative column.
    pub fn chaka50(set: DerivativeSet) -> Self {
        Self {
            derivatives: Derivatives::from_set(set),
            ..Self::default()
        }
    }
}

impl Default for AeroModel<f64> {
    fn default() -> Self {
        Self {
            derivatives: Derivatives::nominal(),
            wing_area: 43.42,
            chord: 1.216,
            span: 28.0,
            mass: 18418.27,
            ix: 378056.535,
            iy: 4914073.496,
            iz: 5670084.803,
            ixz: 0.0,
            v_ref: 160.0,
            g: G0,
            rho: RHO_SEA_LEVEL,
            force_reference: ForceReference::ChordScaled,
            drag_abs: true,
        }
    }
}

impl<T: Scalar> AeroModel<T> {
    pub fn cast<U: Scalar>(&self) -> AeroModel<U> {
        let c = |v: T| U::lit(v.as_f64());
        AeroModel {
            derivatives: self.derivatives.cast(),
            wing_area: c(self.wing_area),
            chord: c(self.chord),
            span: c(self.span),
            mass: c(self.mass),
            ix: c(self.ix),
            iy: c(self.iy),
            iz: c(self.iz),
            ixz: c(self.ixz),
            v_ref: c(self.v_ref),
            g: c(self.g),
            rho: c(self.rho),
            force_reference: self.force_reference,
            drag_abs: self.drag_abs,
        }
    }

    /// Inertia tensor in body axes.
    pub fn inertia(&self) -> [[T; 3]; 3] {
        let z = T::zero();
        [
            [self.ix, z, self.ixz],
            [z, self.iy, z],
            [self.ixz, z, self.iz],
        ]
    }

    pub fn dynamic_pressure(&self, airspeed: T) -> T {
        T::lit(0.5) * self.rho * airspeed * airspeed
    }

    /// Reference area multiplying the lift and drag coefficients.
    pub fn force_area(&self) -> T {
        match self.force_reference {
            ForceReference::ChordScaled => self.wing_area * self.chord,
            ForceReference::WingArea => self.wing_area,
        }
    }

    /// Elevator pitch-moment effectiveness `q̄·S·c̄·c_mδE`, N·m/rad.
    pub fn elevator_effectiveness(&self, airspeed: T) -> T {
        self.dynamic_pressure(airspeed) * self.wing_area * self.chord * self.derivatives.cm_de
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("wing_area", self.wing_area),
            ("chord", self.chord),
            ("span", self.span),
            ("mass", self.mass),
            ("ix", self.ix),
            ("iy", self.iy),
            ("iz", self.iz),
            ("v_ref", self.v_ref),
            ("rho", self.rho),
        ];
        for (name, v) in positive {
            if !(v > T::zero()) || !v.is_finite() {
                return Err(Error::Config(format!("{name} must be positive, got {v}")));
            }
        }
        if self.ix * self.iz - self.ixz * self.ixz <= T::zero() {
            return Err(Error::Config(
                "inertia tensor is not positive definite".into(),
            ));
        }
        Ok(())
    }

    /// Static stability sanity check: pitch stiffness and elevator power negative.
    pub fn is_statically_stable(&self) -> bool {
        self.derivatives.cm_alpha < T::zero() && self.derivatives.cm_de < T::zero()
    }
}
