//! Orthogonal bases and the reduced payoff matrix checked against closed
//! forms and a direct double-integral oracle.

use blotto_core::numeric::{self, int, ratio, Rational};
use blotto_core::poly::inner_product;
use blotto_core::{
    gram_schmidt_basis, reduced_matrix, shift_payoff, GameSpec, Interval, Polynomial,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Closed-form orthonormal coefficients on [-nu, nu] for degrees 0..=4.
fn closed_forms(nu: f64) -> Vec<Vec<f64>> {
    let s = f64::sqrt;
    vec![
        vec![s(0.5) * nu.powf(-0.5)],
        vec![0.0, s(1.5) * nu.powf(-1.5)],
        vec![
            -s(5.0 / 8.0) * nu.powf(-0.5),
            0.0,
            s(45.0 / 8.0) * nu.powf(-2.5),
        ],
        vec![
            0.0,
            -s(63.0 / 8.0) * nu.powf(-1.5),
            0.0,
            s(175.0 / 8.0) * nu.powf(-3.5),
        ],
        vec![
            s(81.0 / 128.0) * nu.powf(-0.5),
            0.0,
            -s(2025.0 / 32.0) * nu.powf(-2.5),
            0.0,
            s(11025.0 / 128.0) * nu.powf(-4.5),
        ],
    ]
}

#[test]
fn normalized_basis_matches_closed_forms() {
    for nu in [ratio(1, 2), int(1), int(3)] {
        let basis = gram_schmidt_basis(4, &Interval::new(nu.clone()).unwrap()).unwrap();
        let expected = closed_forms(numeric::to_f64(&nu));
        for (i, want) in expected.iter().enumerate() {
            let got = basis.normalized_coeffs(i);
            assert_eq!(got.len(), want.len());
            for (g, w) in got.iter().zip(want) {
                let rel = (g - w).abs() / w.abs().max(1.0);
                assert!(rel <= 1e-10, "nu={nu} degree {i}: {g} vs {w}");
            }
        }
    }
}

/// ∫_lo^hi x^p dx by antiderivative, without the parity shortcut.
fn integrate_monomial(p: usize, lo: &Rational, hi: &Rational) -> Rational {
    (numeric::pow(hi, p + 1) - numeric::pow(lo, p + 1)) / numeric::from_usize(p + 1)
}

/// ∫∫ P(x - y) f(x) g(y) dy dx, expanding the integrand term by term.
fn double_integral(
    kernel: &Polynomial,
    f: &Polynomial,
    g: &Polynomial,
    nu1: &Rational,
    nu2: &Rational,
) -> Rational {
    let mut acc = Rational::zero();
    for (k, ck) in kernel.coeffs().iter().enumerate() {
        // (x - y)^k = Σ_p C(k,p) x^p (-y)^{k-p}
        for p in 0..=k {
            let sign = if (k - p) % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            let coef = ck * Rational::from_integer(numeric::binomial(k, p)) * sign;
            let mut ix = Rational::zero();
            for (a, fa) in f.coeffs().iter().enumerate() {
                ix += fa * integrate_monomial(a + p, &-nu1.clone(), nu1);
            }
            let mut iy = Rational::zero();
            for (b, gb) in g.coeffs().iter().enumerate() {
                iy += gb * integrate_monomial(b + k - p, &-nu2.clone(), nu2);
            }
            acc += coef * ix * iy;
        }
    }
    acc
}

/// r(z) = a²/8 - z²/2 gives P(z) = -z² for every a.
fn neg_square_game(n: Rational, a: Rational) -> GameSpec {
    let r = Polynomial::new(vec![&a * &a / int(8), int(0), ratio(-1, 2)]);
    GameSpec::new(n, a, r).unwrap()
}

#[test]
fn neg_square_kernel_matrix_entries() {
    let game = neg_square_game(int(2), int(1));
    assert_eq!(
        shift_payoff(&game).poly(),
        &Polynomial::from_ints(&[0, 0, -1])
    );
    let m = reduced_matrix(&game, 2).unwrap();
    let (nu1, nu2) = (1.5f64, 1.0f64);
    let v = m.normalized();
    // the cross term 2xy pairs two positive first moments, so this entry is positive
    let e11 = (4.0 / 3.0) * nu1.powf(1.5) * nu2.powf(1.5);
    let e20 = -(4.0 * 5f64.sqrt() / 15.0) * nu1.powf(2.5) * nu2.powf(0.5);
    let e02 = -(4.0 * 5f64.sqrt() / 15.0) * nu1.powf(0.5) * nu2.powf(2.5);
    let e00 = -(2.0 / 3.0) * (nu1.powf(2.5) * nu2.powf(0.5) + nu1.powf(0.5) * nu2.powf(2.5));
    for (got, want) in [
        (v[1][1], e11),
        (v[2][0], e20),
        (v[0][2], e02),
        (v[0][0], e00),
    ] {
        assert!((got - want).abs() <= 1e-12 * want.abs(), "{got} vs {want}");
    }
    assert_eq!(v[2][2], 0.0);
    assert_eq!(v[1][0], 0.0);
}

#[test]
fn matrix_equals_double_integral_oracle() {
    let game = GameSpec::new(
        ratio(3, 2),
        ratio(2, 3),
        Polynomial::new(vec![
            int(1),
            ratio(-1, 2),
            int(2),
            ratio(1, 3),
            int(0),
            int(-1),
        ]),
    )
    .unwrap();
    let kernel = shift_payoff(&game);
    let m = reduced_matrix(&game, 5).unwrap();
    let (nu1, nu2) = (game.nu1(), game.nu2());
    for i in 0..=5 {
        for j in 0..=5 {
            let oracle = double_integral(
                kernel.poly(),
                &m.basis1().monic()[i],
                &m.basis2().monic()[j],
                &nu1,
                &nu2,
            );
            assert_eq!(m.entries()[i][j], oracle, "entry ({i}, {j})");
        }
    }
}

#[test]
fn neg_square_rows_beyond_two_vanish() {
    let game = neg_square_game(int(3), ratio(1, 2));
    let m = reduced_matrix(&game, 6).unwrap();
    for i in 0..=6 {
        for j in 0..=6 {
            if i >= 3 || j >= 3 {
                assert!(m.entries()[i][j].is_zero(), "({i}, {j})");
            }
        }
    }
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(p, q)| ratio(p, q))
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=40, 1i64..=4).prop_map(|(p, q)| ratio(p, q))
}

fn polynomial(max_len: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(small_rational(), 0..=max_len).prop_map(Polynomial::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn orthogonality_is_exact(max_degree in 0usize..=8, nu in positive_rational()) {
        let basis = gram_schmidt_basis(max_degree, &Interval::new(nu.clone()).unwrap()).unwrap();
        for (i, p) in basis.monic().iter().enumerate() {
            prop_assert_eq!(p.degree(), Some(i));
            prop_assert!((p - &Polynomial::monomial(Rational::one(), i)).degree().is_none_or(|d| d < i));
            let parity_ok = if i % 2 == 0 { p.is_even() } else { p.is_odd() };
            prop_assert!(parity_ok);
            prop_assert!(basis.sq_norms()[i] > Rational::zero());
            for q in &basis.monic()[..i] {
                prop_assert!(inner_product(p, q, &nu).is_zero());
            }
        }
    }

    #[test]
    fn inner_product_symmetric_bilinear(
        p in polynomial(9), q in polynomial(9), s in polynomial(9),
        c in small_rational(), nu in positive_rational(),
    ) {
        prop_assert_eq!(inner_product(&p, &q, &nu), inner_product(&q, &p, &nu));
        let lhs = inner_product(&(&p.scale(&c) + &s), &q, &nu);
        let rhs = inner_product(&p, &q, &nu) * &c + inner_product(&s, &q, &nu);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn odd_degree_outcomes_drop_one_degree(
        coeffs in prop::collection::vec(small_rational(), 1..=9),
        lead in small_rational().prop_filter("nonzero", |c| !c.is_zero()),
        n in positive_rational(), a in positive_rational(),
    ) {
        let mut c = coeffs;
        if c.len() % 2 == 1 {
            c.push(int(0));
        }
        // c has even length, so the leading index is odd
        *c.last_mut().unwrap() = lead;
        let degree = c.len() - 1;
        let game = GameSpec::new(n, a, Polynomial::new(c)).unwrap();
        let kernel = shift_payoff(&game);
        prop_assert!(kernel.poly().is_even());
        prop_assert!(kernel.degree().is_none_or(|m| m < degree));
    }

    #[test]
    fn kernel_is_shift_identity(r in polynomial(7), a in positive_rational(), z in small_rational()) {
        let game = GameSpec::new(int(1), a.clone(), r.clone()).unwrap();
        let half = &a / int(2);
        let direct = r.eval(&(&z + &half)) + r.eval(&(-&z + &half));
        prop_assert_eq!(shift_payoff(&game).eval(&z), direct);
    }
}
