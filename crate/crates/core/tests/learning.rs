use autoland_core::degradation::{apply_fault, FaultSchedule, FaultSegment};
use autoland_core::dynamics::saturate_elevator;
use autoland_core::rl::{
    faa_action, fql_update, ql_update, ActionSet, GridConfig, Neighborhood, QTable, RewardParams,
    StateGrid, Taken, TdShare, Window,
};
use proptest::prelude::*;

fn grid() -> StateGrid<f64> {
    StateGrid::standard(&GridConfig::default())
}

fn random_table(seed: u64) -> QTable<f64> {
    use rand::{Rng, SeedableRng};
    let g = grid();
    let a = ActionSet::elevator();
    let mut q = QTable::for_grid(&g, &a);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let (ni, nj, nk) = q.shape();
    for i in 0..ni {
        for j in 0..nj {
            for k in 0..nk {
                q.set(i, j, k, rng.random_range(-5000.0..2400.0));
            }
        }
    }
    q
}

proptest! {
    #[test]
    fn window_weights_form_a_partition_of_unity(
        e in -0.2f64..0.2,
        r in -0.3f64..0.3,
        half in 0usize..=3,
    ) {
        let g = grid();
        let nb = Neighborhood::new(&g, Window { theta: half, thetadot: half }, e, r);
        let sum: f64 = nb.iter().map(|c| c.2).sum();
        prop_assert!((sum - 1.0).abs() < 1e-12);
        prop_assert!(nb.iter().all(|c| c.2 >= 0.0 && c.2 <= 1.0));
        prop_assert!(nb.iter().any(|c| (c.0, c.1) == nb.nearest));
    }

    #[test]
    fn fuzzy_action_stays_inside_the_action_range(
        seed in 0u64..1000,
        e in -0.05f64..0.05,
        r in -0.1f64..0.1,
    ) {
        let g = grid();
        let a = ActionSet::elevator();
        let q = random_table(seed);
        let nb = Neighborhood::new(&g, Window::default(), e, r);
        let de = faa_action(&q, &nb, &a);
        let vals = a.values();
        prop_assert!(de >= vals[0] - 1e-15 && de <= vals[vals.len() - 1] + 1e-15);
    }

    #[test]
    fn single_cell_fuzzy_update_is_tabular_update(
        seed in 0u64..1000,
        e in -0.05f64..0.05,
        r in -0.1f64..0.1,
        e2 in -0.05f64..0.05,
        r2 in -0.1f64..0.1,
        k in 0usize..21,
        reward in -20000.0f64..2400.0,
        alpha in 0.01f64..1.0,
        gamma in 0.0f64..1.0,
    ) {
        let g = grid();
        let mut q1 = random_table(seed);
        let mut q2 = q1.clone();
        let nb = Neighborhood::new(&g, Window::SINGLE, e, r);
        let nb2 = Neighborhood::new(&g, Window::SINGLE, e2, r2);
        let td1 = fql_update(&mut q1, &nb, &nb2, Taken::Index(k), reward, alpha, gamma, TdShare::PerCell).unwrap();
        let td2 = ql_update(&mut q2, nb.nearest, nb2.nearest, k, reward, alpha, gamma).unwrap();
        prop_assert_eq!(td1.to_bits(), td2.to_bits());
        prop_assert!(q1.values().iter().zip(q2.values()).all(|(a, b)| a.to_bits() == b.to_bits()));
    }

    #[test]
    fn per_cell_update_never_overshoots_the_target(
        seed in 0u64..1000,
        e in -0.05f64..0.05,
        r in -0.1f64..0.1,
        reward in -20000.0f64..2400.0,
        alpha in 0.0f64..1.0,
    ) {
        let g = grid();
        let mut q = random_table(seed);
        let before = q.clone();
        let nb = Neighborhood::new(&g, Window::default(), e, r);
        fql_update(&mut q, &nb, &nb, Taken::CellGreedy, reward, alpha, 0.0, TdShare::PerCell).unwrap();
        for (i, j, _) in nb.iter() {
            for k in 0..21 {
                let (old, new) = (before.get(i, j, k), q.get(i, j, k));
                // Each entry moves toward the target and stops at or before it.
                prop_assert!((new - reward).abs() <= (old - reward).abs() + 1e-9);
            }
        }
    }

    #[test]
    fn reward_never_exceeds_the_bonus_sum(
        e in -0.1f64..0.1,
        r in -0.1f64..0.1,
        de in -0.25f64..0.25,
        prev in -0.25f64..0.25,
    ) {
        let p = RewardParams::default();
        prop_assert!(p.reward(e, r, de, prev) <= p.max_reward());
    }

    #[test]
    fn faulted_deflection_is_saturated_and_affine(
        cmd in -0.25f64..0.25,
        t in 0.0f64..15.0,
        gain in 0.05f64..1.0,
        bias in -5.0f64..5.0,
    ) {
        let s = FaultSchedule::new(vec![FaultSegment { t_start: 2.0, gain, bias_deg: bias }]).unwrap();
        let out = apply_fault(cmd, t, &s);
        let expected = if t > 2.0 { saturate_elevator(gain * cmd + bias.to_radians()) } else { cmd };
        prop_assert_eq!(out, expected);
        prop_assert!(out.abs() <= 0.25);
    }
}

#[test]
fn table_survives_a_save_load_round_trip_bit_exactly() {
    let g = grid();
    let a = ActionSet::elevator();
    let q = random_table(7);
    let mut buf = Vec::new();
    q.save(&g, &a, &mut buf).unwrap();
    let back = QTable::load(&g, &a, buf.as_slice()).unwrap();
    assert!(q
        .values()
        .iter()
        .zip(back.values())
        .all(|(x, y)| x.to_bits() == y.to_bits()));
}

#[test]
fn table_saved_on_another_grid_is_rejected() {
    let g = grid();
    let a = ActionSet::elevator();
    let mut buf = Vec::new();
    random_table(1).save(&g, &a, &mut buf).unwrap();
    let wider = StateGrid::standard(&GridConfig {
        sigma_theta: 0.003,
        ..Default::default()
    });
    assert!(QTable::load(&wider, &a, buf.as_slice()).is_err());
    let extra = StateGrid::standard(&GridConfig {
        zero_rate_center: true,
        ..Default::default()
    });
    assert!(QTable::load(&extra, &a, buf.as_slice()).is_err());
}

#[test]
fn single_precision_learner_agrees_with_double() {
    let g = grid();
    let g32: StateGrid<f32> = g.cast();
    let a = ActionSet::elevator();
    let a32 =
        ActionSet::<f32>::from_values(a.values().iter().map(|v| *v as f32).collect()).unwrap();
    let mut q = QTable::for_grid(&g, &a);
    let mut q32 = QTable::for_grid(&g32, &a32);
    let nb = Neighborhood::new(&g, Window::default(), 0.004, -0.01);
    let nb32 = Neighborhood::new(&g32, Window::default(), 0.004f32, -0.01);
    for _ in 0..50 {
        fql_update(
            &mut q,
            &nb,
            &nb,
            Taken::Index(3),
            100.0,
            0.2,
            0.9,
            TdShare::PerCell,
        )
        .unwrap();
        fql_update(
            &mut q32,
            &nb32,
            &nb32,
            Taken::Index(3),
            100.0f32,
            0.2,
            0.9,
            TdShare::PerCell,
        )
        .unwrap();
    }
    for (x, y) in q.values().iter().zip(q32.values()) {
        assert!((x - *y as f64).abs() < 1e-3 * x.abs().max(1.0));
    }
    assert!((faa_action(&q, &nb, &a) - faa_action(&q32, &nb32, &a32) as f64).abs() < 1e-6);
}
