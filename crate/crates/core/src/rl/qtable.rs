//! Dense action-value table over grid cells and discrete actions.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::grid::{ActionSet, StateGrid};

pub const FORMAT_TAG: &str = "autoland-qtable";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct QTable<T> {
    n_theta: usize,
    n_thetadot: usize,
    n_actions: usize,
    values: Vec<T>,
}

impl<T: Scalar> QTable<T> {
    pub fn zeros(n_theta: usize, n_thetadot: usize, n_actions: usize) -> Self {
        Self {
            n_theta,
            n_thetadot,
            n_actions,
            values: vec![T::zero(); n_theta * n_thetadot * n_actions],
        }
    }

    pub fn for_grid(grid: &StateGrid<T>, actions: &ActionSet<T>) -> Self {
        Self::zeros(grid.n_theta(), grid.n_thetadot(), actions.len())
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.n_theta, self.n_thetadot, self.n_actions)
    }

    #[inline]
    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        debug_assert!(i < self.n_theta && j < self.n_thetadot && k < self.n_actions);
        (i * self.n_thetadot + j) * self.n_actions + k
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> T {
        self.values[self.index(i, j, k)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: T) {
        let idx = self.index(i, j, k);
        self.values[idx] = v;
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, k: usize, dv: T) {
        let idx = self.index(i, j, k);
        self.values[idx] = self.values[idx] + dv;
    }

    pub fn row(&self, i: usize, j: usize) -> &[T] {
        let s = self.index(i, j, 0);
        &self.values[s..s + self.n_actions]
    }

    /// Best action index in a cell; ties go to the lowest index.
    pub fn greedy(&self, i: usize, j: usize) -> usize {
        let row = self.row(i, j);
        let mut best = 0;
        for (k, v) in row.iter().enumerate().skip(1) {
            if *v > row[best] {
                best = k;
            }
        }
        best
    }

    pub fn max(&self, i: usize, j: usize) -> T {
        self.row(i, j)[self.greedy(i, j)]
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    /// Writes a versioned text file: header lines with grid and actions, then
    /// one `i,j,q_0,...,q_{n-1}` line per cell.
    pub fn save<W: Write>(
        &self,
        grid: &StateGrid<T>,
        actions: &ActionSet<T>,
        mut w: W,
    ) -> Result<()> {
        self.check_compatible(grid, actions)?;
        let io = |e: std::io::Error| Error::Config(format!("writing Q-table: {e}"));
        let join = |v: &[T]| {
            v.iter()
                .map(|x| format!("{:e}", x.as_f64()))
                .collect::<Vec<_>>()
                .join(",")
        };
        writeln!(w, "# {FORMAT_TAG} v{FORMAT_VERSION}").map_err(io)?;
        writeln!(
            w,
            "# shape {},{},{}",
            self.n_theta, self.n_thetadot, self.n_actions
        )
        .map_err(io)?;
        writeln!(w, "# theta_centers {}", join(&grid.theta_centers)).map_err(io)?;
        writeln!(w, "# theta_sigmas {}", join(&grid.theta_sigmas)).map_err(io)?;
        writeln!(w, "# thetadot_centers {}", join(&grid.thetadot_centers)).map_err(io)?;
        writeln!(w, "# thetadot_sigmas {}", join(&grid.thetadot_sigmas)).map_err(io)?;
        writeln!(w, "# actions {}", join(actions.values())).map_err(io)?;
        for i in 0..self.n_theta {
            for j in 0..self.n_thetadot {
                writeln!(w, "{i},{j},{}", join(self.row(i, j))).map_err(io)?;
            }
        }
        Ok(())
    }

    /// Reads a table written by [`QTable::save`]; the stored grid and actions
    /// must match the expected ones.
    pub fn load<R: BufRead>(grid: &StateGrid<T>, actions: &ActionSet<T>, r: R) -> Result<Self> {
        let bad = |m: String| Error::Config(format!("Q-table: {m}"));
        let mut table = Self::for_grid(grid, actions);
        let mut seen = vec![false; table.n_theta * table.n_thetadot];
        let mut header = Vec::new();
        for line in r.lines() {
            let line = line.map_err(|e| bad(e.to_string()))?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(h) = line.strip_prefix('#') {
                header.push(h.trim().to_string());
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 2 + table.n_actions {
                return Err(bad(format!(
                    "row has {} fields, expected {}",
                    fields.len(),
                    2 + table.n_actions
                )));
            }
            let i: usize = fields[0]
                .parse()
                .map_err(|_| bad(format!("bad row index {:?}", fields[0])))?;
            let j: usize = fields[1]
                .parse()
                .map_err(|_| bad(format!("bad row index {:?}", fields[1])))?;
            if i >= table.n_theta || j >= table.n_thetadot {
                return Err(bad(format!("cell ({i},{j}) outside grid")));
            }
            for (k, f) in fields[2..].iter().enumerate() {
                let v: f64 = f.parse().map_err(|_| bad(format!("bad value {f:?}")))?;
                table.set(i, j, k, T::lit(v));
            }
            seen[i * table.n_thetadot + j] = true;
        }
        check_header(&header, &table, grid, actions).map_err(bad)?;
        if seen.iter().any(|s| !s) {
            return Err(bad("missing cells".into()));
        }
        Ok(table)
    }

    fn check_compatible(&self, grid: &StateGrid<T>, actions: &ActionSet<T>) -> Result<()> {
        if self.shape() != (grid.n_theta(), grid.n_thetadot(), actions.len()) {
            return Err(Error::Config(format!(
                "Q-table shape {:?} does not match grid {}x{} with {} actions",
                self.shape(),
                grid.n_theta(),
                grid.n_thetadot(),
                actions.len()
            )));
        }
        Ok(())
    }
}

fn check_header<T: Scalar>(
    header: &[String],
    table: &QTable<T>,
    grid: &StateGrid<T>,
    actions: &ActionSet<T>,
) -> std::result::Result<(), String> {
    let field = |key: &str| -> std::result::Result<&str, String> {
        header
            .iter()
            .find_map(|h| h.strip_prefix(key).map(str::trim))
            .ok_or_else(|| format!("header missing {key:?}"))
    };
    let version = field(FORMAT_TAG)?;
    if version != format!("v{FORMAT_VERSION}") {
        return Err(format!("unsupported version {version}"));
    }
    let (a, b, c) = table.shape();
    if field("shape")? != format!("{a},{b},{c}") {
        return Err(format!(
            "shape {} does not match {a},{b},{c}",
            field("shape")?
        ));
    }
    let same = |key: &str, expected: &[T]| -> std::result::Result<(), String> {
        let got: std::result::Result<Vec<f64>, _> =
            field(key)?.split(',').map(str::parse::<f64>).collect();
        let got = got.map_err(|_| format!("unparsable {key}"))?;
        let ok = got.len() == expected.len()
            && got
                .iter()
                .zip(expected)
                .all(|(g, e)| (g - e.as_f64()).abs() <= 1e-9 * (1.0 + g.abs()));
        if ok {
            Ok(())
        } else {
            Err(format!("{key} do not match the configured grid"))
        }
    };
    same("theta_centers", &grid.theta_centers)?;
    same("theta_sigmas", &grid.theta_sigmas)?;
    same("thetadot_centers", &grid.thetadot_centers)?;
    same("thetadot_sigmas", &grid.thetadot_sigmas)?;
    same("actions", actions.values())
}
