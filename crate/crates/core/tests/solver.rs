use blotto_core::numeric::{self, int, ratio, Rational};
use blotto_core::solver::lp::{certificate, solve_matrix_game_exact};
use blotto_core::solver::{solve_lp_pipeline, solve_symmetric_grid, DEFAULT_ENUMERATION_CAP};
use blotto_core::{
    best_response_gap, embed_strategy, exact_payoff, expected_payoff_reduced, mc_check,
    reduced_matrix, shift_payoff, solve_matrix_game, DiscreteStrategy, GameSpec, Player,
    Polynomial,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn game(n: Rational, a: Rational, r: &[i64]) -> GameSpec {
    GameSpec::new(n, a, Polynomial::from_ints(r)).unwrap()
}

fn cubic() -> GameSpec {
    game(int(2), int(1), &[0, 0, 0, -1])
}

#[test]
fn random_matrices_satisfy_duality_certificate() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..50 {
        let (m, n) = (rng.random_range(1..=8), rng.random_range(1..=8));
        let a: Vec<Vec<f64>> = (0..m)
            .map(|_| (0..n).map(|_| rng.random_range(-10.0..10.0)).collect())
            .collect();
        let sol = solve_matrix_game(&a, 1e-9).unwrap();
        for probs in [&sol.row, &sol.col] {
            assert!(probs.iter().all(|&p| p >= 0.0));
            assert!((probs.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        }
        let (lower, upper) = certificate(&a, &sol.row, &sol.col);
        assert!(
            upper - lower <= 2e-9,
            "{m}x{n}: duality gap {}",
            upper - lower
        );
        assert!(lower - 1e-9 <= sol.value && sol.value <= upper + 1e-9);
    }
}

#[test]
fn float_and_exact_simplex_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..25 {
        let (m, n) = (rng.random_range(1..=6), rng.random_range(1..=6));
        let ints: Vec<Vec<i64>> = (0..m)
            .map(|_| (0..n).map(|_| rng.random_range(-9..=9)).collect())
            .collect();
        let exact = solve_matrix_game_exact(
            &ints
                .iter()
                .map(|r| r.iter().map(|&v| int(v)).collect())
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let float = solve_matrix_game(
            &ints
                .iter()
                .map(|r| r.iter().map(|&v| v as f64).collect())
                .collect::<Vec<_>>(),
            1e-9,
        )
        .unwrap();
        assert!((numeric::to_f64(&exact.value) - float.value).abs() <= 1e-9);
        // the exact solution is itself an exact certificate
        let total: Rational = exact.col.iter().sum();
        for row in &ints {
            let payoff: Rational = row.iter().zip(&exact.col).map(|(&v, q)| int(v) * q).sum();
            assert!(payoff / &total <= exact.value);
        }
    }
}

#[test]
fn grid_refinement_for_cubic_games() {
    for (n, a) in [
        (int(2), int(1)),
        (int(3), ratio(1, 2)),
        (ratio(5, 2), int(2)),
    ] {
        let g = GameSpec::new(n, a, Polynomial::from_ints(&[0, 0, 0, -1])).unwrap();
        let mut previous = f64::INFINITY;
        for steps in [4, 8, 16, 32] {
            let r = solve_lp_pipeline(&g, steps, 1e-9).unwrap();
            let total = r.gap1 + r.gap2;
            assert!(
                total <= previous + 1e-12,
                "L={steps}: {total} after {previous}"
            );
            if steps >= 16 {
                assert!(total <= 1e-6, "L={steps}: {total}");
            }
            previous = total;
        }
    }
}

#[test]
fn lp_and_symmetric_grid_values_agree() {
    let games = [
        cubic(),
        game(int(2), int(1), &[0, 0, 1]),
        game(int(1), int(1), &[0, 0, 0, 0, 1]),
        game(int(2), int(1), &[0, 0, 0, 0, 0, -1]),
        game(int(2), int(2), &[0, 1, 0, 1]),
    ];
    for g in &games {
        let lp = solve_lp_pipeline(g, 8, 1e-9).unwrap();
        let sym = solve_symmetric_grid(g, 8, None, DEFAULT_ENUMERATION_CAP).unwrap();
        let slack = (2.0 * (lp.gap1 + lp.gap2 + sym.gap1 + sym.gap2)).max(1e-9);
        assert!(
            (lp.value - sym.value).abs() <= slack,
            "{} vs {}",
            lp.value,
            sym.value
        );
    }
}

#[test]
fn symmetric_grid_outputs_are_symmetric() {
    for g in [
        cubic(),
        game(int(3), int(1), &[1, -2, 0, 1, 0, 1]),
        game(int(2), int(1), &[0, 0, 1]),
    ] {
        let r = solve_symmetric_grid(&g, 6, None, DEFAULT_ENUMERATION_CAP).unwrap();
        assert!(r.strategy1.is_symmetric() && r.strategy2.is_symmetric());
    }
}

#[test]
fn component_bound_saturates_at_grid_size() {
    let g = game(int(3), int(1), &[1, -2, 0, 1, 0, 1]);
    // L = 3 gives four half-grid points
    let at_size = solve_symmetric_grid(&g, 3, Some(4), DEFAULT_ENUMERATION_CAP).unwrap();
    let beyond = solve_symmetric_grid(&g, 3, Some(11), DEFAULT_ENUMERATION_CAP).unwrap();
    assert_eq!(at_size.strategy1, beyond.strategy1);
    assert_eq!(at_size.strategy2, beyond.strategy2);
    assert_eq!(at_size.value_exact, beyond.value_exact);
}

#[test]
fn coarsest_symmetric_grid_uses_centre_and_ends() {
    let g = cubic();
    let r = solve_symmetric_grid(&g, 1, None, DEFAULT_ENUMERATION_CAP).unwrap();
    for (s, nu) in [(&r.strategy1, g.nu1()), (&r.strategy2, g.nu2())] {
        for atom in s.atoms() {
            let t = atom.location.clone();
            assert!(t == int(0) || t == nu || t == -nu.clone());
        }
    }
    assert_eq!(r.value_exact, ratio(-13, 4));
}

#[test]
fn monte_carlo_stderr_shrinks_like_root_n() {
    let g = cubic();
    let s1 = DiscreteStrategy::for_game(
        &g,
        Player::One,
        [(int(0), ratio(1, 2)), (int(1), ratio(1, 2))],
    )
    .unwrap();
    let s2 = DiscreteStrategy::for_game(
        &g,
        Player::Two,
        [(int(-1), ratio(1, 3)), (int(1), ratio(2, 3))],
    )
    .unwrap();
    let errs: Vec<f64> = [1_000, 10_000, 100_000]
        .iter()
        .map(|&k| mc_check(&g, &s1, &s2, k, 5).unwrap().stderr)
        .collect();
    for w in errs.windows(2) {
        let ratio = w[0] / w[1];
        let expected = 10f64.sqrt();
        assert!(
            ratio >= expected / 2.0 && ratio <= expected * 2.0,
            "ratio {ratio}"
        );
    }
    let exact = numeric::to_f64(&exact_payoff(&g, &s1, &s2));
    let est = mc_check(&g, &s1, &s2, 100_000, 9).unwrap();
    assert!((est.estimate - exact).abs() <= 4.0 * est.stderr);
}

#[test]
fn monte_carlo_on_worked_pair() {
    let g = cubic();
    let s1 = DiscreteStrategy::pure(&g, Player::One, int(0)).unwrap();
    let s2 = DiscreteStrategy::for_game(
        &g,
        Player::Two,
        [(int(-1), ratio(1, 2)), (int(1), ratio(1, 2))],
    )
    .unwrap();
    for seed in [1, 2, 3] {
        let est = mc_check(&g, &s1, &s2, 100_000, seed).unwrap();
        assert!((est.estimate + 3.25).abs() <= 4.0 * est.stderr);
    }
    let zero = game(int(2), int(0), &[0, 0, 0, -1]);
    let s1 = DiscreteStrategy::for_game(
        &zero,
        Player::One,
        [(int(0), ratio(1, 2)), (int(1), ratio(1, 2))],
    )
    .unwrap();
    let s2 = DiscreteStrategy::pure(&zero, Player::Two, int(-1)).unwrap();
    let est = mc_check(&zero, &s1, &s2, 1000, 4).unwrap();
    assert_eq!((est.estimate, est.stderr), (0.0, 0.0));
}

#[test]
fn pipeline_supports_stay_within_bound() {
    let games = [
        cubic(),
        game(int(2), int(1), &[0, 0, 1]),
        game(int(1), int(1), &[0, 0, 0, 0, 1]),
        game(int(2), int(1), &[0, 0, 0, 0, 0, -1]),
        game(int(1), int(2), &[0, 0, 0, 0, 0, 0, 1]),
    ];
    for g in &games {
        let m = shift_payoff(g).rank_degree();
        let r = solve_lp_pipeline(g, 8, 1e-9).unwrap();
        let (k1, k2) = r.support_sizes();
        assert!(k1 <= m + 2 && k2 <= m + 2);
        let br = best_response_gap(g, &r.strategy1, &r.strategy2);
        assert_eq!((br.gap1, br.gap2), (r.gap1, r.gap2));
    }
}

fn random_strategy(
    rng: &mut ChaCha8Rng,
    g: &GameSpec,
    player: Player,
    atoms: usize,
) -> DiscreteStrategy {
    let nu = g.offset(player);
    let raw: Vec<i64> = (0..atoms).map(|_| rng.random_range(1..=9)).collect();
    let total: i64 = raw.iter().sum();
    DiscreteStrategy::for_game(
        g,
        player,
        raw.iter()
            .map(|&w| (&nu * ratio(rng.random_range(-16..=16), 16), ratio(w, total))),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduced_payoff_matches_exact(seed in any::<u64>(), atoms1 in 1usize..=6, atoms2 in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let degree = rng.random_range(1..=6);
        let mut coeffs: Vec<Rational> = (0..=degree).map(|_| ratio(rng.random_range(-12..=12), 4)).collect();
        coeffs[degree] = int(rng.random_range(1..=3));
        let g = GameSpec::new(
            ratio(rng.random_range(1..=12), 3),
            ratio(rng.random_range(0..=9), 3),
            Polynomial::new(coeffs),
        )
        .unwrap();
        let m = shift_payoff(&g).rank_degree();
        let matrix = reduced_matrix(&g, m).unwrap();
        let s1 = random_strategy(&mut rng, &g, Player::One, atoms1);
        let s2 = random_strategy(&mut rng, &g, Player::Two, atoms2);
        let f = embed_strategy(&s1, matrix.basis1()).unwrap();
        let h = embed_strategy(&s2, matrix.basis2()).unwrap();
        let reduced = expected_payoff_reduced(&f, &matrix, &h).unwrap();
        let exact = numeric::to_f64(&exact_payoff(&g, &s1, &s2));
        prop_assert!((reduced - exact).abs() <= 1e-9 * exact.abs().max(1.0), "{} vs {}", reduced, exact);
    }
}
