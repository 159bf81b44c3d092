//! Fuzzy and tabular Q-learning for pitch tracking.

mod fuzzy;
mod grid;
mod learn;
mod qtable;
mod reward;

pub use fuzzy::{
    faa_action, fql_update, fuzzy_max_future, fuzzy_q, ql_update, select_action, FqlTarget, Method,
    Neighborhood, Selection, Taken, TdShare, Window, MAX_CELLS,
};
pub use grid::{ActionSet, GridConfig, StateGrid, ACTION_STEP, N_ACTIONS, OUTPOST};
pub use learn::{Decay, DecayClock, LearningSchedule};
pub use qtable::{QTable, FORMAT_TAG, FORMAT_VERSION};
pub use reward::{BonusGate, RewardParams, RewardUnits};
