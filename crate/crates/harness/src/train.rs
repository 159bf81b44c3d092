//! Online training of the fuzzy and tabular learners.

use autoland_core::rl::{
    fql_update, ql_update, select_action, ActionSet, Method, Neighborhood, QTable, StateGrid, Taken,
};
use autoland_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{ModelConfig, RlConfig, TrainingConfig};
use crate::env::PitchEnv;
use crate::error::Result;

#[derive(Debug, Clone)]
pub struct TrainOutput {
    pub table: QTable<f64>,
    pub grid: StateGrid<f64>,
    pub actions: ActionSet<f64>,
    /// Undiscounted return of every episode.
    pub returns: Vec<f64>,
    pub steps: u64,
}

/// Trailing moving average, used next to the raw curve.
pub fn moving_average(xs: &[f64], width: usize) -> Vec<f64> {
    let width = width.max(1);
    let mut out = Vec::with_capacity(xs.len());
    let mut sum = 0.0;
    for (i, x) in xs.iter().enumerate() {
        sum += x;
        if i >= width {
            sum -= xs[i - width];
        }
        out.push(sum / (i + 1).min(width) as f64);
    }
    out
}

fn diverged(episode: usize, step: u64, reason: String) -> Error {
    Error::LearningDiverged {
        episode,
        step: step as usize,
        reason,
    }
}

/// Runs `cfg.episodes` episodes from `initial` (or an all-zero table).
pub fn train(
    cfg: &TrainingConfig,
    rl: &RlConfig,
    model: &ModelConfig,
    initial: Option<QTable<f64>>,
) -> Result<TrainOutput> {
    rl.schedule.validate()?;
    let grid = StateGrid::standard(&rl.grid);
    let actions = ActionSet::elevator();
    let mut table = initial.unwrap_or_else(|| QTable::for_grid(&grid, &actions));
    if table.shape() != (grid.n_theta(), grid.n_thetadot(), actions.len()) {
        return Err(Error::Config(format!(
            "initial table shape {:?} does not match the grid",
            table.shape()
        ))
        .into());
    }
    let window = cfg.method.window(rl.window);
    let mut env = PitchEnv::new(model.design_model(), cfg.airspeed, cfg.altitude, cfg.dt)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let steps_per_episode = (cfg.episode_seconds / cfg.dt).round() as usize;
    let gamma = rl.schedule.gamma;
    // |Q| stays below max|R|/(1−γ); the factor 2 covers the window updates.
    let mut r_max: f64 = 0.0;
    let mut limit = rl.schedule.q_limit;
    let theta_des = cfg.theta_des.to_radians();
    let mut returns = Vec::with_capacity(cfg.episodes);
    let mut step: u64 = 0;

    for episode in 0..cfg.episodes {
        let theta0 = if cfg.theta0_max > cfg.theta0_min {
            rng.random_range(cfg.theta0_min..=cfg.theta0_max)
        } else {
            cfg.theta0_min
        };
        let obs = env.reset(theta0.to_radians(), theta_des);
        let mut prev_de = env.trim.delta_e;
        let mut ret = 0.0;
        let mut nb = Neighborhood::new(&grid, window, obs.error, obs.thetadot);
        for _ in 0..steps_per_episode {
            let tick = rl.schedule.tick(episode, step);
            let eps = rl.schedule.epsilon.at(tick);
            let alpha = rl.schedule.alpha.at(tick);
            let sel = select_action(cfg.method, &table, &nb, &actions, eps, &mut rng);
            let de = sel.delta_e;
            let k = actions.nearest(de);
            let next = match env.step(de) {
                Ok(o) => o,
                Err(e) => {
                    return Err(
                        diverged(episode, step, format!("plant left its envelope: {e}")).into(),
                    )
                }
            };
            let r = rl.reward.reward(next.error, next.q, de, prev_de);
            if r.abs() > r_max {
                r_max = r.abs();
                limit = limit.max(2.0 * r_max / (1.0 - gamma));
            }
            let nb_next = Neighborhood::new(&grid, window, next.error, next.thetadot);
            let td = match cfg.method {
                Method::Fql => {
                    let taken = Taken::for_step(rl.fql_target, sel.explored, k);
                    fql_update(
                        &mut table,
                        &nb,
                        &nb_next,
                        taken,
                        r,
                        alpha,
                        gamma,
                        rl.td_share,
                    )
                }
                Method::Ql => {
                    ql_update(&mut table, nb.nearest, nb_next.nearest, k, r, alpha, gamma)
                }
            };
            if let Err(e) = td {
                return Err(diverged(episode, step, e.to_string()).into());
            }
            for (i, j, _) in nb.iter() {
                let v = table.get(i, j, k);
                if v.abs() > limit {
                    return Err(diverged(
                        episode,
                        step,
                        format!("|Q({i},{j},{k})| = {:e} exceeds {limit:e}", v.abs()),
                    )
                    .into());
                }
            }
            ret += r;
            prev_de = de;
            nb = nb_next;
            step += 1;
        }
        returns.push(ret);
    }
    Ok(TrainOutput {
        table,
        grid,
        actions,
        returns,
        steps: step,
    })
}
