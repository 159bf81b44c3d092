//! Fuzzy aggregation over a window of neighbouring cells and the two
//! temporal-difference updates.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::grid::{ActionSet, StateGrid};
use super::qtable::QTable;

/// Half-widths of the aggregation window in cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Window {
    pub theta: usize,
    pub thetadot: usize,
}

impl Default for Window {
    fn default() -> Self {
        Self {
            theta: 2,
            thetadot: 2,
        }
    }
}

impl Window {
    pub const SINGLE: Window = Window {
        theta: 0,
        thetadot: 0,
    };
}

pub const MAX_CELLS: usize = 49;

/// Cells around the nearest centre with weights normalised to sum to one.
#[derive(Debug, Clone, Copy)]
pub struct Neighborhood<T> {
    cells: [(u16, u16, T); MAX_CELLS],
    len: usize,
    pub nearest: (usize, usize),
}

impl<T: Scalar> Neighborhood<T> {
    pub fn new(grid: &StateGrid<T>, window: Window, theta: T, thetadot: T) -> Self {
        assert!(
            (2 * window.theta + 1) * (2 * window.thetadot + 1) <= MAX_CELLS,
            "aggregation window too large"
        );
        let (ci, cj) = grid.nearest_cell(theta, thetadot);
        let mut nb = Self {
            cells: [(0, 0, T::zero()); MAX_CELLS],
            len: 0,
            nearest: (ci, cj),
        };
        let i_range = ci.saturating_sub(window.theta)..=(ci + window.theta).min(grid.n_theta() - 1);
        let j_range =
            cj.saturating_sub(window.thetadot)..=(cj + window.thetadot).min(grid.n_thetadot() - 1);
        let mut total = T::zero();
        for i in i_range {
            let wi = grid.theta_weight(theta, i);
            for j in j_range.clone() {
                let w = wi * grid.thetadot_weight(thetadot, j);
                nb.cells[nb.len] = (i as u16, j as u16, w);
                nb.len += 1;
                total = total + w;
            }
        }
        if total > T::zero() && total.is_finite() {
            for c in &mut nb.cells[..nb.len] {
                c.2 = c.2 / total;
            }
        } else {
            // Every Gaussian underflowed: fall back on the nearest cell alone.
            nb.cells[0] = (ci as u16, cj as u16, T::one());
            nb.len = 1;
        }
        nb
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        self.cells[..self.len]
            .iter()
            .map(|&(i, j, w)| (i as usize, j as usize, w))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

/// Weighted average of the greedy actions of the window cells.
pub fn faa_action<T: Scalar>(q: &QTable<T>, nb: &Neighborhood<T>, actions: &ActionSet<T>) -> T {
    nb.iter().fold(T::zero(), |acc, (i, j, w)| {
        acc + w * actions.value(q.greedy(i, j))
    })
}

/// Aggregated value of discrete action `k` over the window.
pub fn fuzzy_q<T: Scalar>(q: &QTable<T>, nb: &Neighborhood<T>, k: usize) -> T {
    nb.iter()
        .fold(T::zero(), |acc, (i, j, w)| acc + w * q.get(i, j, k))
}

/// Aggregated best value over the window.
pub fn fuzzy_max_future<T: Scalar>(q: &QTable<T>, nb: &Neighborhood<T>) -> T {
    nb.iter()
        .fold(T::zero(), |acc, (i, j, w)| acc + w * q.max(i, j))
}

/// How the learner picks its behaviour action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Fuzzy aggregation with window updates.
    Fql,
    /// Tabular learning on the nearest cell.
    Ql,
}

impl Method {
    pub fn window(self, fql_window: Window) -> Window {
        match self {
            Method::Fql => fql_window,
            Method::Ql => Window::SINGLE,
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Fql => "fql",
            Method::Ql => "ql",
        })
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fql" => Ok(Method::Fql),
            "ql" => Ok(Method::Ql),
            other => Err(Error::Config(format!("unknown method {other:?}"))),
        }
    }
}

/// Behaviour action of one step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Selection<T> {
    pub delta_e: T,
    /// Drawn at random rather than from the table.
    pub explored: bool,
}

/// Epsilon-greedy behaviour: with probability `epsilon` a uniformly random
/// discrete action, otherwise the aggregated action (FQL) or the greedy
/// action of the nearest cell (QL).
pub fn select_action<T: Scalar, R: Rng + ?Sized>(
    method: Method,
    q: &QTable<T>,
    nb: &Neighborhood<T>,
    actions: &ActionSet<T>,
    epsilon: f64,
    rng: &mut R,
) -> Selection<T> {
    if rng.random::<f64>() < epsilon {
        return Selection {
            delta_e: actions.value(rng.random_range(0..actions.len())),
            explored: true,
        };
    }
    let delta_e = match method {
        Method::Fql => faa_action(q, nb, actions),
        Method::Ql => {
            let (i, j) = nb.nearest;
            actions.value(q.greedy(i, j))
        }
    };
    Selection {
        delta_e,
        explored: false,
    }
}

/// Which entry of each window cell a fuzzy update changes after a greedy step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum FqlTarget {
    /// The discrete action nearest the executed deflection, in every cell.
    Executed,
    /// Each cell's own greedy action, i.e. its contribution to the executed
    /// deflection. Exploratory steps still update the executed action.
    #[default]
    CellGreedy,
}

/// Action index updated in the window cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Taken {
    Index(usize),
    CellGreedy,
}

impl Taken {
    pub fn for_step(target: FqlTarget, explored: bool, k: usize) -> Self {
        match (target, explored) {
            (FqlTarget::CellGreedy, false) => Taken::CellGreedy,
            _ => Taken::Index(k),
        }
    }
}

/// How the fuzzy TD error is shared among the window cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum TdShare {
    /// Every cell receives the full aggregated TD error.
    Uniform,
    /// Each cell receives the aggregated TD error scaled by its normalised
    /// membership.
    #[default]
    Weighted,
    /// Each cell moves toward the common target `R + γ·F'` using its own value
    /// in the error, with a step scaled by its membership relative to the
    /// window's largest. A max-norm contraction, so the table stays bounded.
    PerCell,
}

/// Fuzzy update. The TD error is formed from the aggregated values of the
/// taken action(s) and the aggregated best next value.
#[allow(clippy::too_many_arguments)]
pub fn fql_update<T: Scalar>(
    q: &mut QTable<T>,
    nb: &Neighborhood<T>,
    nb_next: &Neighborhood<T>,
    taken: Taken,
    reward: T,
    alpha: T,
    gamma: T,
    share: TdShare,
) -> Result<T> {
    let mut chosen = [0usize; MAX_CELLS];
    for (c, (i, j, _)) in nb.iter().enumerate() {
        chosen[c] = match taken {
            Taken::Index(k) => k,
            Taken::CellGreedy => q.greedy(i, j),
        };
    }
    let future = fuzzy_max_future(q, nb_next);
    let current = nb
        .iter()
        .zip(&chosen)
        .fold(T::zero(), |acc, ((i, j, w), &k)| acc + w * q.get(i, j, k));
    let inner = reward + gamma * future - current;
    let td = nb.iter().fold(T::zero(), |acc, (_, _, w)| acc + w * inner);
    check_td(td)?;
    let target = reward + gamma * future;
    let peak = nb.iter().fold(T::zero(), |m, (_, _, w)| m.max(w));
    for ((i, j, w), &k) in nb.iter().zip(&chosen) {
        match share {
            TdShare::Uniform => q.add(i, j, k, alpha * td),
            TdShare::Weighted => q.add(i, j, k, alpha * (w * td)),
            TdShare::PerCell => {
                let own = target - q.get(i, j, k);
                q.add(i, j, k, alpha * (w / peak * own))
            }
        }
    }
    Ok(td)
}

/// Tabular update on a single cell.
pub fn ql_update<T: Scalar>(
    q: &mut QTable<T>,
    cell: (usize, usize),
    next: (usize, usize),
    k: usize,
    reward: T,
    alpha: T,
    gamma: T,
) -> Result<T> {
    let td = reward + gamma * q.max(next.0, next.1) - q.get(cell.0, cell.1, k);
    check_td(td)?;
    q.add(cell.0, cell.1, k, alpha * td);
    Ok(td)
}

fn check_td<T: Scalar>(td: T) -> Result<()> {
    if td.is_finite() {
        Ok(())
    } else {
        Err(Error::LearningDiverged {
            episode: 0,
            step: 0,
            reason: format!("non-finite TD error {td}"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::grid::GridConfig;
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn setup() -> (StateGrid<f64>, ActionSet<f64>, QTable<f64>) {
        let g = StateGrid::standard(&GridConfig::default());
        let a = ActionSet::elevator();
        let q = QTable::for_grid(&g, &a);
        (g, a, q)
    }

    #[test]
    fn weights_normalised() {
        let (g, _, _) = setup();
        let nb = Neighborhood::new(&g, Window::default(), 0.0031, -0.011);
        assert_eq!(nb.len(), 25);
        let s: f64 = nb.iter().map(|c| c.2).sum();
        assert!((s - 1.0).abs() < 1e-12);
        // Window clipped at the edge of the grid.
        let edge = Neighborhood::new(&g, Window::default(), -20.0, 20.0);
        assert_eq!(edge.len(), 3 * 3);
        let single = Neighborhood::new(&g, Window::SINGLE, 0.0007, 0.03);
        assert_eq!(single.len(), 1);
        assert_eq!(single.iter().next().unwrap().2, 1.0);
    }

    #[test]
    fn faa_of_uniform_table_is_that_action() {
        let (g, a, mut q) = setup();
        for i in 0..g.n_theta() {
            for j in 0..g.n_thetadot() {
                q.set(i, j, 4, 1.0);
            }
        }
        let nb = Neighborhood::new(&g, Window::default(), 0.004, 0.001);
        assert!((faa_action(&q, &nb, &a) - a.value(4)).abs() < 1e-15);
    }

    #[test]
    fn single_cell_fql_matches_ql() {
        let (g, _, mut q1) = setup();
        let mut q2 = q1.clone();
        q1.set(14, 3, 7, 2.5);
        q2.set(14, 3, 7, 2.5);
        let nb = Neighborhood::new(&g, Window::SINGLE, 0.0002, -0.004);
        let nx = Neighborhood::new(&g, Window::SINGLE, 0.0002, -0.004);
        for share in [TdShare::Uniform, TdShare::Weighted, TdShare::PerCell] {
            let (mut a, mut b) = (q1.clone(), q2.clone());
            let t1 =
                fql_update(&mut a, &nb, &nx, Taken::Index(7), -3.0, 0.02, 0.99, share).unwrap();
            let t2 = ql_update(&mut b, nb.nearest, nx.nearest, 7, -3.0, 0.02, 0.99).unwrap();
            assert_eq!(t1.to_bits(), t2.to_bits());
            assert_eq!(a, b);
        }
    }

    #[test]
    fn per_cell_share_moves_each_cell_toward_the_target() {
        let (g, _, mut q) = setup();
        let nb = Neighborhood::new(&g, Window::default(), 0.0007, 0.003);
        for (n, (i, j, _)) in nb.iter().enumerate() {
            q.set(i, j, 3, n as f64);
        }
        let before = q.clone();
        let far = Neighborhood::new(&g, Window::SINGLE, -10.0, -10.0);
        fql_update(
            &mut q,
            &nb,
            &far,
            Taken::Index(3),
            5.0,
            0.5,
            0.9,
            TdShare::PerCell,
        )
        .unwrap();
        let peak = nb.iter().fold(0.0, |m, c| f64::max(m, c.2));
        for (i, j, w) in nb.iter() {
            let old = before.get(i, j, 3);
            assert!((q.get(i, j, 3) - (old + 0.5 * w / peak * (5.0 - old))).abs() < 1e-12);
        }
    }

    #[test]
    fn cell_greedy_updates_each_cells_own_choice() {
        let (g, _, mut q) = setup();
        let nb = Neighborhood::new(&g, Window::default(), 0.0, 0.01);
        let cells: Vec<_> = nb.iter().collect();
        for (n, &(i, j, _)) in cells.iter().enumerate() {
            q.set(i, j, n % 21, 1.0);
        }
        let before = q.clone();
        let far = Neighborhood::new(&g, Window::SINGLE, -10.0, -10.0);
        fql_update(
            &mut q,
            &nb,
            &far,
            Taken::CellGreedy,
            -1.0,
            0.1,
            0.9,
            TdShare::PerCell,
        )
        .unwrap();
        for (n, &(i, j, _)) in cells.iter().enumerate() {
            for k in 0..21 {
                let changed = q.get(i, j, k) != before.get(i, j, k);
                assert_eq!(changed, k == n % 21, "cell ({i},{j}) action {k}");
            }
        }
    }

    #[test]
    fn exploratory_steps_update_the_executed_action() {
        assert_eq!(
            Taken::for_step(FqlTarget::CellGreedy, true, 4),
            Taken::Index(4)
        );
        assert_eq!(
            Taken::for_step(FqlTarget::CellGreedy, false, 4),
            Taken::CellGreedy
        );
        assert_eq!(
            Taken::for_step(FqlTarget::Executed, false, 4),
            Taken::Index(4)
        );
    }

    #[test]
    fn non_finite_td_is_an_error() {
        let (g, _, mut q) = setup();
        let nb = Neighborhood::new(&g, Window::default(), 0.0, 0.0);
        assert!(matches!(
            fql_update(
                &mut q,
                &nb,
                &nb,
                Taken::Index(0),
                f64::NAN,
                0.1,
                0.9,
                TdShare::Uniform
            ),
            Err(Error::LearningDiverged { .. })
        ));
        assert_eq!(q.max_abs(), 0.0);
    }

    #[test]
    fn epsilon_extremes() {
        let (g, a, mut q) = setup();
        let nb = Neighborhood::new(&g, Window::SINGLE, 0.0, 0.0);
        q.set(nb.nearest.0, nb.nearest.1, 17, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            assert_eq!(
                select_action(Method::Ql, &q, &nb, &a, 0.0, &mut rng).delta_e,
                a.value(17)
            );
        }
        let picks: std::collections::HashSet<u64> = (0..500)
            .map(|_| {
                select_action(Method::Ql, &q, &nb, &a, 1.0, &mut rng)
                    .delta_e
                    .to_bits()
            })
            .collect();
        assert_eq!(picks.len(), 21);
    }
}
