//! Pitch-tracking environment used for training.

use autoland_core::atmosphere::WindState;
use autoland_core::dynamics::{solve_trim, AeroModel, Airframe, ControlInputs, TrimPoint};
use autoland_core::Result;

/// What the learners observe: pitch error and Euler pitch rate, plus the body
/// pitch rate for the reward.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observation {
    pub error: f64,
    pub thetadot: f64,
    pub q: f64,
}

#[derive(Debug, Clone)]
pub struct PitchEnv {
    pub trim: TrimPoint<f64>,
    pub plane: Airframe<f64>,
    pub theta_des: f64,
    pub dt: f64,
    wind: WindState<f64>,
}

impl PitchEnv {
    /// Trims `model` at the given airspeed and altitude.
    pub fn new(model: AeroModel<f64>, airspeed: f64, altitude: f64, dt: f64) -> Result<Self> {
        let trim = solve_trim(&model, airspeed, altitude)?;
        Ok(Self {
            plane: Airframe::new(model, trim.state()),
            trim,
            theta_des: 0.0,
            dt,
            wind: WindState::calm(),
        })
    }

    /// Trim airspeed and angle of attack with the attitude set to `theta0`.
    pub fn reset(&mut self, theta0: f64, theta_des: f64) -> Observation {
        let mut s = self.trim.state();
        s.theta = theta0;
        self.plane = Airframe::new(self.plane.model, s);
        self.theta_des = theta_des;
        self.observe()
    }

    pub fn observe(&self) -> Observation {
        let s = &self.plane.state;
        Observation {
            error: s.theta - self.theta_des,
            thetadot: s.theta_dot(),
            q: s.q,
        }
    }

    /// Applies `delta_e` at trim thrust for one step.
    pub fn step(&mut self, delta_e: f64) -> Result<Observation> {
        let inputs = ControlInputs::new(delta_e, self.trim.thrust);
        self.plane.step(&inputs, &self.wind, self.dt)?;
        Ok(self.observe())
    }
}
