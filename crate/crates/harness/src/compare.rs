//! Scenario × controller comparison table.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::config::{Controller, ScenarioKind};
use crate::metrics::RunMetrics;

#[derive(Debug, Clone, PartialEq)]
pub struct CompareRow {
    pub scenario: ScenarioKind,
    pub controller: Controller,
    pub te_theta: f64,
    pub te_h: f64,
    pub ce: f64,
    pub landed: bool,
    /// Lowest value of each metric within the scenario.
    pub best: [bool; 3],
}

/// Rows sorted by scenario then controller, with the lowest value of each
/// metric per scenario flagged.
pub fn compare(runs: &[(ScenarioKind, Controller, RunMetrics)]) -> Vec<CompareRow> {
    let mut by_key: BTreeMap<(ScenarioKind, Controller), &RunMetrics> = BTreeMap::new();
    for (s, c, m) in runs {
        by_key.insert((*s, *c), m);
    }
    let mut rows: Vec<CompareRow> = by_key
        .iter()
        .map(|(&(scenario, controller), m)| CompareRow {
            scenario,
            controller,
            te_theta: m.te_theta,
            te_h: m.te_h,
            ce: m.ce,
            landed: m.landed,
            best: [false; 3],
        })
        .collect();
    let scenarios: Vec<ScenarioKind> = rows.iter().map(|r| r.scenario).collect();
    for s in scenarios {
        for (k, get) in [
            |r: &CompareRow| r.te_theta,
            |r: &CompareRow| r.te_h,
            |r: &CompareRow| r.ce,
        ]
        .iter()
        .enumerate()
        {
            let best = rows
                .iter()
                .filter(|r| r.scenario == s)
                .map(get)
                .fold(f64::INFINITY, f64::min);
            for r in rows.iter_mut().filter(|r| r.scenario == s) {
                r.best[k] = get(r) == best;
            }
        }
    }
    rows
}

pub const CSV_HEADER: &str =
    "scenario,controller,te_theta_deg,te_h_m,ce_deg,landed,best_te_theta,best_te_h,best_ce";

pub fn to_csv(rows: &[CompareRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.scenario,
            r.controller,
            r.te_theta,
            r.te_h,
            r.ce,
            r.landed,
            r.best[0],
            r.best[1],
            r.best[2]
        );
    }
    out
}

/// Fixed-width text table; `*` marks the best value in a scenario.
pub fn to_text(rows: &[CompareRow]) -> String {
    let mut out = format!(
        "{:<18} {:<10} {:>12} {:>12} {:>12} {:>7}\n",
        "scenario", "controller", "TE_theta deg", "TE_h m", "CE deg", "landed"
    );
    let cell = |v: f64, best: bool| format!("{:.3}{}", v, if best { "*" } else { " " });
    for r in rows {
        let _ = writeln!(
            out,
            "{:<18} {:<10} {:>12} {:>12} {:>12} {:>7}",
            r.scenario.name(),
            r.controller.name(),
            cell(r.te_theta, r.best[0]),
            cell(r.te_h, r.best[1]),
            cell(r.ce, r.best[2]),
            if r.landed { "yes" } else { "no" }
        );
    }
    out
}
