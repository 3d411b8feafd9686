//! Exact-polynomial best responses over the continuous strategy intervals.

use num_traits::{One, Zero};

use crate::numeric::{self, Rational};
use crate::poly::{horner_f64, Polynomial};
use crate::reduction::{shift_payoff, GameSpec, ShiftedKernel};
use crate::strategy::{exact_payoff_with, DiscreteStrategy};

/// Resolution of the critical-point search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootScan {
    /// Number of equal cells scanned for sign changes of the derivative.
    pub cells: usize,
    /// Bisection stops once the bracket is narrower than this.
    pub tol: f64,
}

impl Default for RootScan {
    fn default() -> Self {
        RootScan {
            cells: 1024,
            tol: 1e-12,
        }
    }
}

/// Real roots of `p` in `[lo, hi]`, bracketed on a uniform scan and
/// refined by bisection. Scan points where `p` vanishes are roots too.
pub fn isolate_roots(p: &[f64], lo: f64, hi: f64, scan: RootScan) -> Vec<f64> {
    let mut roots = Vec::new();
    if p.iter().all(|c| *c == 0.0) || hi <= lo {
        return roots;
    }
    let cells = scan.cells.max(1);
    let step = (hi - lo) / cells as f64;
    let at = |k: usize| if k == cells { hi } else { lo + step * k as f64 };
    let mut left = at(0);
    let mut fl = horner_f64(p, left);
    if fl == 0.0 {
        roots.push(left);
    }
    for k in 1..=cells {
        let right = at(k);
        let fr = horner_f64(p, right);
        if fr == 0.0 {
            roots.push(right);
        } else if fl != 0.0 && (fl < 0.0) != (fr < 0.0) {
            let (mut a, mut b, mut fa) = (left, right, fl);
            while b - a > scan.tol {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                let fm = horner_f64(p, mid);
                if fm == 0.0 {
                    a = mid;
                    b = mid;
                    break;
                }
                if (fm < 0.0) == (fa < 0.0) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            roots.push(0.5 * (a + b));
        }
        left = right;
        fl = fr;
    }
    roots
}

/// `(argmax, max)` of `p` over `[-nu, nu]`.
pub fn maximize(p: &Polynomial, nu: &Rational, scan: RootScan) -> (f64, f64) {
    let nu_f = numeric::to_f64(nu);
    let coeffs = p.to_f64_coeffs();
    if nu.is_zero() {
        return (0.0, numeric::to_f64(&p.eval(nu)));
    }
    let dp = p.derivative().to_f64_coeffs();
    let mut best = (-nu_f, numeric::to_f64(&p.eval(&-nu.clone())));
    let mut consider = |t: f64, v: f64| {
        if v > best.1 {
            best = (t, v);
        }
    };
    consider(nu_f, numeric::to_f64(&p.eval(nu)));
    let cells = scan.cells.max(1);
    for k in 0..=cells {
        let t = -nu_f + 2.0 * nu_f * k as f64 / cells as f64;
        consider(t, horner_f64(&coeffs, t));
    }
    for t in isolate_roots(&dp, -nu_f, nu_f, scan) {
        consider(t, horner_f64(&coeffs, t));
    }
    best
}

/// `x ↦ Σ_j q_j P(x - y_j)`, Player 1's payoff against `s2`.
pub fn response_to_player2(kernel: &ShiftedKernel, s2: &DiscreteStrategy) -> Polynomial {
    let one = Rational::one();
    s2.atoms().iter().fold(Polynomial::zero(), |acc, b| {
        let shifted = kernel.poly().compose_affine(&one, &-b.location.clone());
        &acc + &shifted.scale(&b.weight)
    })
}

/// `y ↦ Σ_i p_i P(x_i - y)`, Player 2's loss against `s1`.
pub fn response_to_player1(kernel: &ShiftedKernel, s1: &DiscreteStrategy) -> Polynomial {
    let minus_one = -Rational::one();
    s1.atoms().iter().fold(Polynomial::zero(), |acc, a| {
        let shifted = kernel.poly().compose_affine(&minus_one, &a.location);
        &acc + &shifted.scale(&a.weight)
    })
}

/// Best-response gaps of a strategy pair.
#[derive(Clone, Debug, PartialEq)]
pub struct BestResponse {
    pub value: f64,
    pub value_exact: Rational,
    /// How much Player 1 gains by the best pure deviation.
    pub gap1: f64,
    /// How much Player 2 gains by the best pure deviation.
    pub gap2: f64,
    pub best_x: f64,
    pub best_y: f64,
}

impl BestResponse {
    pub fn max_gap(&self) -> f64 {
        self.gap1.max(self.gap2)
    }
}

pub fn best_response_gap(
    game: &GameSpec,
    s1: &DiscreteStrategy,
    s2: &DiscreteStrategy,
) -> BestResponse {
    best_response_gap_with(game, s1, s2, RootScan::default())
}

pub fn best_response_gap_with(
    game: &GameSpec,
    s1: &DiscreteStrategy,
    s2: &DiscreteStrategy,
    scan: RootScan,
) -> BestResponse {
    let kernel = shift_payoff(game);
    let value_exact = exact_payoff_with(&kernel, s1, s2);
    let value = numeric::to_f64(&value_exact);
    let (best_x, max1) = maximize(&response_to_player2(&kernel, s2), &game.nu1(), scan);
    let (best_y, neg_min2) = maximize(&-&response_to_player1(&kernel, s1), &game.nu2(), scan);
    BestResponse {
        value,
        value_exact,
        gap1: max1 - value,
        gap2: value + neg_min2,
        best_x,
        best_y,
    }
}
