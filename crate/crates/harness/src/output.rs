//! CSV files, Q-table files and run manifests.

use std::fmt::Write as _;
use std::fs;
use std::io::{BufReader, BufWriter};
use std::path::Path;

use autoland_core::rl::{ActionSet, QTable, StateGrid};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::RunConfig;
use crate::error::{HarnessError, Result};
use crate::landing::Sample;
use crate::metrics::RunMetrics;
use crate::sweep::SweepPoint;
use crate::train::moving_average;

pub const HISTORY_HEADER: &str =
    "t,theta_deg,theta_des_deg,q_deg_s,h_m,h_des_m,delta_e_cmd_deg,delta_e_eff_deg,u_m_s,alpha_deg,wz_m_s";
pub const GUST_HEADER: &str = "t,wx_m_s,wy_m_s,wz_m_s,omega_wx,omega_wy,omega_wz";
pub const METRICS_HEADER: &str =
    "label,te_theta_deg,te_h_m,ce_deg,touchdown_speed_m_s,final_altitude_m,elapsed_s,landed,diverged,reason";
pub const CURVE_HEADER: &str = "episode,return,moving_average";
pub const SWEEP_HEADER: &str =
    "derivative_scale,airspeed_m_s,te_theta_deg,te_h_m,ce_deg,landed,diverged,error";

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    }
    fs::write(path, contents).map_err(|e| HarnessError::io(path, e))
}

pub fn history_csv(history: &[Sample]) -> String {
    let mut out = format!("{HISTORY_HEADER}\n");
    for s in history {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            s.t,
            s.theta.to_degrees(),
            s.theta_des.to_degrees(),
            s.q.to_degrees(),
            s.h,
            s.h_des,
            s.delta_e_cmd.to_degrees(),
            s.delta_e_eff.to_degrees(),
            s.u,
            s.alpha.to_degrees(),
            s.gust[2]
        );
    }
    out
}

pub fn gust_csv(history: &[Sample]) -> String {
    let mut out = format!("{GUST_HEADER}\n");
    for s in history {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            s.t, s.gust[0], s.gust[1], s.gust[2], s.omega_w[0], s.omega_w[1], s.omega_w[2]
        );
    }
    out
}

fn opt(v: Option<f64>) -> String {
    v.map_or(String::new(), |x| x.to_string())
}

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "'"))
}

pub fn metrics_csv(rows: &[(String, RunMetrics)]) -> String {
    let mut out = format!("{METRICS_HEADER}\n");
    for (label, m) in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            label,
            m.te_theta,
            m.te_h,
            m.ce,
            opt(m.touchdown_speed),
            m.final_altitude,
            m.elapsed,
            m.landed,
            m.diverged,
            m.reason.as_deref().map(quoted).unwrap_or_default()
        );
    }
    out
}

pub fn learning_curve_csv(returns: &[f64], window: usize) -> String {
    let avg = moving_average(returns, window);
    let mut out = format!("{CURVE_HEADER}\n");
    for (k, (r, a)) in returns.iter().zip(&avg).enumerate() {
        let _ = writeln!(out, "{k},{r},{a}");
    }
    out
}

pub fn sweep_csv(points: &[SweepPoint]) -> String {
    let mut out = format!("{SWEEP_HEADER}\n");
    for p in points {
        let m = p.metrics.as_ref();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            p.derivative_scale,
            p.airspeed,
            opt(m.map(|m| m.te_theta)),
            opt(m.map(|m| m.te_h)),
            opt(m.map(|m| m.ce)),
            m.is_some_and(|m| m.landed),
            p.diverged(),
            p.error.as_deref().map(quoted).unwrap_or_default()
        );
    }
    out
}

pub fn save_table(
    path: &Path,
    table: &QTable<f64>,
    grid: &StateGrid<f64>,
    actions: &ActionSet<f64>,
) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    }
    let f = fs::File::create(path).map_err(|e| HarnessError::io(path, e))?;
    table.save(grid, actions, BufWriter::new(f))?;
    Ok(())
}

pub fn load_table(
    path: &Path,
    grid: &StateGrid<f64>,
    actions: &ActionSet<f64>,
) -> Result<QTable<f64>> {
    let f = fs::File::open(path).map_err(|e| HarnessError::io(path, e))?;
    Ok(QTable::load(grid, actions, BufReader::new(f))?)
}

#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub command: String,
    pub version: String,
    pub seed: u64,
    pub config_sha256: String,
    pub config: RunConfig,
}

pub fn config_hash(cfg: &RunConfig) -> String {
    let digest = Sha256::digest(cfg.to_toml().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

impl Manifest {
    pub fn new(command: &str, seed: u64, cfg: &RunConfig) -> Self {
        Self {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            config_sha256: config_hash(cfg),
            config: cfg.clone(),
        }
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        let text = toml::to_string(self).map_err(|e| HarnessError::Config(e.to_string()))?;
        write_file(&dir.join("manifest.toml"), &text)
    }
}
