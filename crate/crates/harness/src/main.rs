use std::path::{Path, PathBuf};
use std::process::ExitCode;

use autoland_core::dynamics::{linearize_longitudinal, solve_trim, ModeRoots};
use autoland_core::rl::{ActionSet, Method, StateGrid};
use autoland_harness::compare::{compare, to_csv, to_text};
use autoland_harness::config::{Controller, RunConfig, ScenarioKind};
use autoland_harness::output::{
    gust_csv, history_csv, learning_curve_csv, load_table, metrics_csv, save_table, sweep_csv,
    write_file, Manifest,
};
use autoland_harness::scenario::{evaluate, landing_setup, run_controller, TrainedTable};
use autoland_harness::sweep::robustness_sweep;
use autoland_harness::train::train;
use autoland_harness::Result;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "autoland",
    version,
    about = "Auto-landing workbench for the Chaka-50"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// TOML run configuration; defaults are used when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory for CSV files and the manifest.
    #[arg(long, global = true, default_value = "out")]
    out_dir: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Trim point and longitudinal modes.
    Trim {
        /// Trim airspeed in m/s.
        #[arg(long)]
        airspeed: Option<f64>,
        /// Trim altitude in m.
        #[arg(long)]
        altitude: Option<f64>,
    },
    /// Train a Q-table on the pitch-tracking task.
    Train {
        /// Learner: fql or ql.
        #[arg(long)]
        method: Option<Method>,
        #[arg(long)]
        episodes: Option<usize>,
        /// Seed for exploration and episode noise.
        #[arg(long)]
        seed: Option<u64>,
        /// Q-table file to write.
        #[arg(long)]
        out: PathBuf,
        /// Continue from an existing table.
        #[arg(long)]
        init: Option<PathBuf>,
    },
    /// Fly one landing scenario.
    Evaluate {
        /// ideal, noise_disturbance, actuator_fault or model_uncertainty.
        #[arg(long)]
        scenario: Option<ScenarioKind>,
        /// Controller: fql, ql or di.
        #[arg(long)]
        controller: Option<Controller>,
        /// Trained table, required for fql and ql.
        #[arg(long)]
        table: Option<PathBuf>,
        /// Seed for turbulence and sensor noise.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Derivative-scale × airspeed robustness grid.
    Sweep {
        /// Controller: fql, ql or di.
        #[arg(long)]
        controller: Option<Controller>,
        /// Trained table, required for fql and ql.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// All landing scenarios with all three controllers.
    Compare {
        #[arg(long)]
        fql_table: PathBuf,
        #[arg(long)]
        ql_table: PathBuf,
    },
}

fn load_config(path: Option<&Path>) -> Result<RunConfig> {
    match path {
        Some(p) => RunConfig::load(p),
        None => Ok(RunConfig::default()),
    }
}

fn read_table(cfg: &RunConfig, path: &Path) -> Result<TrainedTable> {
    let grid = StateGrid::standard(&cfg.rl.grid);
    let actions = ActionSet::elevator();
    let table = load_table(path, &grid, &actions)?;
    Ok(TrainedTable {
        table,
        grid,
        actions,
    })
}

fn table_for(
    cfg: &RunConfig,
    controller: Controller,
    path: Option<&Path>,
) -> Result<Option<TrainedTable>> {
    match (controller.method(), path) {
        (Some(_), Some(p)) => read_table(cfg, p).map(Some),
        (Some(_), None) => Err(autoland_harness::HarnessError::Config(format!(
            "controller {controller} needs --table"
        ))),
        (None, _) => Ok(None),
    }
}

fn describe(name: &str, m: ModeRoots) -> String {
    match m {
        ModeRoots::Oscillatory(c) => {
            let wn = c.norm();
            format!(
                "{name}: {:.5} ± {:.5}i  wn={:.4} rad/s zeta={:.4}",
                c.re,
                c.im,
                wn,
                -c.re / wn
            )
        }
        ModeRoots::Real(a, b) => format!("{name}: real roots {a:.5}, {b:.5}"),
    }
}

fn run(cli: Cli) -> Result<()> {
    let mut cfg = load_config(cli.common.config.as_deref())?;
    let out_dir = cli.common.out_dir;
    match cli.command {
        Command::Trim { airspeed, altitude } => {
            let v = airspeed.unwrap_or(cfg.scenario.airspeed);
            let h = altitude.unwrap_or(cfg.scenario.altitude);
            let model = cfg.model.design_model();
            let trim = solve_trim(&model, v, h)?;
            println!("airspeed     {v} m/s");
            println!("altitude     {h} m");
            println!("alpha        {:.6} deg", trim.alpha.to_degrees());
            println!("delta_e      {:.6} deg", trim.delta_e.to_degrees());
            println!("thrust       {:.3} N", trim.thrust);
            println!(
                "residual     {:.3e} after {} iterations",
                trim.residual, trim.iterations
            );
            let lin = linearize_longitudinal(&model, &trim)?;
            println!("{}", describe("phugoid", lin.phugoid()));
            println!("{}", describe("short period", lin.short_period()));
        }
        Command::Train {
            method,
            episodes,
            seed,
            out,
            init,
        } => {
            if let Some(m) = method {
                cfg.training.method = m;
            }
            if let Some(n) = episodes {
                cfg.training.episodes = n;
            }
            if let Some(s) = seed {
                cfg.training.seed = s;
            }
            let initial = match init {
                Some(p) => Some(read_table(&cfg, &p)?.table),
                None => None,
            };
            let result = train(&cfg.training, &cfg.rl, &cfg.model, initial)?;
            save_table(&out, &result.table, &result.grid, &result.actions)?;
            write_file(
                &out_dir.join("learning_curve.csv"),
                &learning_curve_csv(&result.returns, 100),
            )?;
            Manifest::new("train", cfg.training.seed, &cfg).write(&out_dir)?;
            println!(
                "{} episodes, {} steps; table written to {}",
                result.returns.len(),
                result.steps,
                out.display()
            );
        }
        Command::Evaluate {
            scenario,
            controller,
            table,
            seed,
        } => {
            if let Some(k) = scenario {
                cfg.scenario.kind = k;
            }
            if let Some(c) = controller {
                cfg.scenario.controller = c;
            }
            if let Some(s) = seed {
                cfg.scenario.seed = s;
            }
            let t = table_for(&cfg, cfg.scenario.controller, table.as_deref())?;
            let setup = landing_setup(&cfg, cfg.scenario.kind, cfg.scenario.airspeed)?;
            println!("{}", setup.geometry.summary());
            let run = evaluate(&cfg, t.as_ref())?;
            let label = format!("{}/{}", cfg.scenario.kind, cfg.scenario.controller);
            write_file(
                &out_dir.join("metrics.csv"),
                &metrics_csv(&[(label.clone(), run.metrics.clone())]),
            )?;
            write_file(&out_dir.join("history.csv"), &history_csv(&run.history))?;
            if cfg.turbulence_for(cfg.scenario.kind).enabled {
                write_file(&out_dir.join("gust.csv"), &gust_csv(&run.history))?;
            }
            Manifest::new("evaluate", cfg.scenario.seed, &cfg).write(&out_dir)?;
            let m = &run.metrics;
            println!(
                "{label}: TE_theta={:.4} deg TE_h={:.4} m CE={:.4} deg landed={} diverged={}",
                m.te_theta, m.te_h, m.ce, m.landed, m.diverged
            );
            if let Some(r) = &m.reason {
                println!("reason: {r}");
            }
        }
        Command::Sweep { controller, table } => {
            let controller = controller.unwrap_or(cfg.scenario.controller);
            let t = table_for(&cfg, controller, table.as_deref())?;
            let points = robustness_sweep(&cfg, controller, t.as_ref());
            write_file(&out_dir.join("sweep.csv"), &sweep_csv(&points))?;
            let rows: Vec<_> = points
                .iter()
                .filter_map(|p| {
                    p.metrics
                        .clone()
                        .map(|m| (format!("scale={}/v={}", p.derivative_scale, p.airspeed), m))
                })
                .collect();
            write_file(&out_dir.join("metrics.csv"), &metrics_csv(&rows))?;
            Manifest::new("sweep", cfg.scenario.seed, &cfg).write(&out_dir)?;
            let diverged = points.iter().filter(|p| p.diverged()).count();
            let te: Vec<f64> = rows.iter().map(|r| r.1.te_theta).collect();
            let lo = te.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = te.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            println!(
                "{} points, {diverged} diverged; TE_theta range [{lo:.4}, {hi:.4}] deg",
                points.len()
            );
        }
        Command::Compare {
            fql_table,
            ql_table,
        } => {
            let fql = read_table(&cfg, &fql_table)?;
            let ql = read_table(&cfg, &ql_table)?;
            let mut runs = Vec::new();
            let mut rows = Vec::new();
            for kind in ScenarioKind::LANDING {
                let setup = landing_setup(&cfg, kind, cfg.scenario.airspeed)?;
                for controller in Controller::ALL {
                    let t = match controller {
                        Controller::Fql => Some(&fql),
                        Controller::Ql => Some(&ql),
                        Controller::Di => None,
                    };
                    let run = run_controller(&cfg, &setup, controller, t)?;
                    rows.push((format!("{kind}/{controller}"), run.metrics.clone()));
                    runs.push((kind, controller, run.metrics));
                }
            }
            let table = compare(&runs);
            write_file(&out_dir.join("compare.csv"), &to_csv(&table))?;
            write_file(&out_dir.join("metrics.csv"), &metrics_csv(&rows))?;
            Manifest::new("compare", cfg.scenario.seed, &cfg).write(&out_dir)?;
            print!("{}", to_text(&table));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
