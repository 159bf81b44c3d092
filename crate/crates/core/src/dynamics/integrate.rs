use crate::atmosphere::WindState;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::eom::state_derivative;
use super::model::AeroModel;
use super::state::{AircraftState, ControlInputs, STATE_DIM};

/// Advances the state by one fourth-order Runge–Kutta step.
///
/// Inputs, wind and `alpha_dot` are held constant over the step.
pub fn integrate_step<T: Scalar>(
    state: &AircraftState<T>,
    inputs: &ControlInputs<T>,
    model: &AeroModel<T>,
    wind: &WindState<T>,
    alpha_dot: T,
    dt: T,
) -> Result<AircraftState<T>> {
    if !(dt > T::zero()) {
        return Err(Error::Precondition(format!(
            "time step must be positive, got {dt}"
        )));
    }
    let half = dt / T::lit(2.0);
    let f = |s: &AircraftState<T>| -> Result<[T; STATE_DIM]> {
        Ok(state_derivative(s, inputs, model, wind, alpha_dot)?.to_array())
    };
    let offset = |k: &[T; STATE_DIM], h: T, t: T| {
        let mut a = state.to_array();
        for (ai, ki) in a.iter_mut().zip(k) {
            *ai = *ai + h * *ki;
        }
        AircraftState::from_array(a, t)
    };

    let k1 = f(state)?;
    let k2 = f(&offset(&k1, half, state.t + half))?;
    let k3 = f(&offset(&k2, half, state.t + half))?;
    let k4 = f(&offset(&k3, dt, state.t + dt))?;

    let six = T::lit(6.0);
    let two = T::lit(2.0);
    let mut next = state.to_array();
    for i in 0..STATE_DIM {
        next[i] = next[i] + dt / six * (k1[i] + two * k2[i] + two * k3[i] + k4[i]);
    }
    let out = AircraftState::from_array(next, state.t + dt);
    out.validate()?;
    Ok(out)
}

/// A simulated airframe: model, state and the angle-of-attack history used
/// for the α̇ term (backward difference over the previous step, zero on the
/// first step).
#[derive(Debug, Clone)]
pub struct Airframe<T> {
    pub model: AeroModel<T>,
    pub state: AircraftState<T>,
    prev_alpha: Option<T>,
    alpha_dot: T,
}

impl<T: Scalar> Airframe<T> {
    pub fn new(model: AeroModel<T>, state: AircraftState<T>) -> Self {
        Self {
            model,
            state,
            prev_alpha: None,
            alpha_dot: T::zero(),
        }
    }

    pub fn alpha_dot(&self) -> T {
        self.alpha_dot
    }

    pub fn step(
        &mut self,
        inputs: &ControlInputs<T>,
        wind: &WindState<T>,
        dt: T,
    ) -> Result<&AircraftState<T>> {
        let alpha = self.state.alpha();
        self.alpha_dot = match self.prev_alpha {
            Some(prev) => (alpha - prev) / dt,
            None => T::zero(),
        };
        let next = integrate_step(&self.state, inputs, &self.model, wind, self.alpha_dot, dt)?;
        self.prev_alpha = Some(alpha);
        self.state = next;
        Ok(&self.state)
    }
}
