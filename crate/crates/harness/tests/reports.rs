use autoland_core::rl::{ActionSet, GridConfig, Method, StateGrid};
use autoland_harness::compare::{compare, to_csv, to_text, CSV_HEADER};
use autoland_harness::config::{Controller, RunConfig, ScenarioKind};
use autoland_harness::output::{
    config_hash, history_csv, learning_curve_csv, load_table, metrics_csv, save_table, Manifest,
    HISTORY_HEADER,
};
use autoland_harness::scenario::{evaluate, landing_setup, run_controller, TrainedTable};
use autoland_harness::sweep::robustness_sweep;
use autoland_harness::train::train;

fn small_table(method: Method) -> TrainedTable {
    let mut cfg = RunConfig::default();
    cfg.training.method = method;
    cfg.training.episodes = 30;
    let out = train(&cfg.training, &cfg.rl, &cfg.model, None).unwrap();
    TrainedTable {
        table: out.table,
        grid: out.grid,
        actions: out.actions,
    }
}

#[test]
fn one_point_sweep_equals_evaluate_bit_exactly() {
    let mut cfg = RunConfig::default();
    cfg.scenario.controller = Controller::Di;
    cfg.sweep.scale_points = 1;
    cfg.sweep.speed_points = 1;
    cfg.sweep.speed_min = 160.0;
    cfg.sweep.speed_max = 160.0;
    let points = robustness_sweep(&cfg, Controller::Di, None);
    assert_eq!(points.len(), 1);
    assert_eq!(points[0].derivative_scale, 1.0);
    let direct = evaluate(&cfg, None).unwrap().metrics;
    assert_eq!(points[0].metrics.as_ref().unwrap(), &direct);
}

#[test]
fn default_sweep_is_nine_by_nine_with_a_nominal_centre() {
    let cfg = RunConfig::default();
    let scales = cfg.sweep.scales();
    let speeds = cfg.sweep.speeds();
    assert_eq!((scales.len(), speeds.len()), (9, 9));
    assert_eq!(scales[4], 1.0);
    assert_eq!((scales[0], scales[8]), (0.7, 1.3));
    assert_eq!(speeds[1] - speeds[0], 8.75);
    let table = small_table(Method::Fql);
    let points = robustness_sweep(&cfg, Controller::Fql, Some(&table));
    assert_eq!(points.len(), 81);
    let centre = points
        .iter()
        .find(|p| p.derivative_scale == 1.0 && p.airspeed == 185.0)
        .unwrap();
    let mut direct = cfg.clone();
    direct.scenario.airspeed = 185.0;
    let m = evaluate(&direct, Some(&table)).unwrap().metrics;
    assert_eq!(centre.metrics.as_ref().unwrap(), &m);
}

#[test]
fn compare_of_nothing_is_a_bare_header() {
    let rows = compare(&[]);
    assert!(rows.is_empty());
    assert_eq!(to_csv(&rows), format!("{CSV_HEADER}\n"));
    assert_eq!(to_text(&rows).lines().count(), 1);
}

#[test]
fn compare_of_one_run_is_one_best_row() {
    let m = evaluate(
        &{
            let mut c = RunConfig::default();
            c.scenario.controller = Controller::Di;
            c
        },
        None,
    )
    .unwrap()
    .metrics;
    let rows = compare(&[(ScenarioKind::Ideal, Controller::Di, m.clone())]);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].best, [true; 3]);
    assert_eq!(rows[0].te_theta, m.te_theta);
    assert_eq!(to_csv(&rows).lines().count(), 2);
}

#[test]
fn full_matrix_matches_individual_runs_and_is_order_independent() {
    let cfg = RunConfig::default();
    let fql = small_table(Method::Fql);
    let ql = small_table(Method::Ql);
    let mut runs = Vec::new();
    for kind in ScenarioKind::LANDING {
        let setup = landing_setup(&cfg, kind, 160.0).unwrap();
        for c in Controller::ALL {
            let t = match c {
                Controller::Fql => Some(&fql),
                Controller::Ql => Some(&ql),
                Controller::Di => None,
            };
            runs.push((kind, c, run_controller(&cfg, &setup, c, t).unwrap().metrics));
        }
    }
    let rows = compare(&runs);
    assert_eq!(rows.len(), 12);
    for (kind, c, m) in &runs {
        let r = rows
            .iter()
            .find(|r| r.scenario == *kind && r.controller == *c)
            .unwrap();
        assert_eq!((r.te_theta, r.te_h, r.ce), (m.te_theta, m.te_h, m.ce));
    }
    for kind in ScenarioKind::LANDING {
        let in_scenario: Vec<_> = rows.iter().filter(|r| r.scenario == kind).collect();
        for k in 0..3 {
            assert!(in_scenario.iter().any(|r| r.best[k]));
        }
    }
    let mut reversed = runs.clone();
    reversed.reverse();
    assert_eq!(compare(&reversed), rows);
}

#[test]
fn table_file_round_trips_and_rejects_another_grid() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.qt");
    let t = small_table(Method::Ql);
    save_table(&path, &t.table, &t.grid, &t.actions).unwrap();
    let back = load_table(&path, &t.grid, &t.actions).unwrap();
    assert_eq!(back.values(), t.table.values());
    let other = StateGrid::standard(&GridConfig {
        sigma_thetadot: 0.02,
        ..Default::default()
    });
    assert!(load_table(&path, &other, &ActionSet::elevator()).is_err());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# "));
    let truncated = dir.path().join("short.qt");
    let cut: Vec<&str> = text.lines().take(text.lines().count() - 3).collect();
    std::fs::write(&truncated, cut.join("\n")).unwrap();
    assert!(load_table(&truncated, &t.grid, &t.actions).is_err());
}

#[test]
fn csv_outputs_have_headers_and_plain_decimals() {
    let mut cfg = RunConfig::default();
    cfg.scenario.controller = Controller::Di;
    let run = evaluate(&cfg, None).unwrap();
    let h = history_csv(&run.history);
    let mut lines = h.lines();
    assert_eq!(lines.next().unwrap(), HISTORY_HEADER);
    assert_eq!(lines.count(), run.history.len());
    let cols = HISTORY_HEADER.split(',').count();
    assert!(h.lines().all(|l| l.split(',').count() == cols));
    let m = metrics_csv(&[("ideal/di".into(), run.metrics)]);
    assert_eq!(m.lines().count(), 2);
    let curve = learning_curve_csv(&[1.0, 3.0], 2);
    assert_eq!(curve.lines().nth(2).unwrap(), "1,3,2");
}

#[test]
fn manifest_pins_the_configuration() {
    let a = RunConfig::default();
    let mut b = a.clone();
    b.training.seed = 2;
    assert_eq!(config_hash(&a), config_hash(&a.clone()));
    assert_ne!(config_hash(&a), config_hash(&b));
    let dir = tempfile::tempdir().unwrap();
    Manifest::new("evaluate", 1, &a).write(dir.path()).unwrap();
    let text = std::fs::read_to_string(dir.path().join("manifest.toml")).unwrap();
    assert!(text.contains(&config_hash(&a)));
    let parsed: toml::Value = toml::from_str(&text).unwrap();
    let cfg_text = toml::to_string(parsed.get("config").unwrap()).unwrap();
    assert_eq!(RunConfig::from_toml(&cfg_text).unwrap(), a);
}

#[test]
fn config_round_trips_and_rejects_nonsense() {
    let cfg = RunConfig::default();
    assert_eq!(RunConfig::from_toml(&cfg.to_toml()).unwrap(), cfg);
    assert_eq!(RunConfig::from_toml("").unwrap(), cfg);
    assert!(RunConfig::from_toml("[scenario]\ndt = -0.01\n").is_err());
    assert!(RunConfig::from_toml("[gains]\nk_q = 0.0\n").is_err());
    assert!(RunConfig::from_toml("[training]\ntheta0_min = 3.0\n").is_err());
    let partial = RunConfig::from_toml("[training]\nepisodes = 20000\nmethod = \"ql\"\n").unwrap();
    assert_eq!(partial.training.episodes, 20000);
    assert_eq!(partial.training.method, Method::Ql);
}
