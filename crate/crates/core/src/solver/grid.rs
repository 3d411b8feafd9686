//! Discretized games on uniform allocation grids.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numeric::{self, Rational};
use crate::reduction::{shift_payoff, GameSpec, Player, ShiftedKernel};

/// Payoff matrix of the game restricted to grid allocations.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteGameMatrix {
    pub row_locations: Vec<Rational>,
    pub col_locations: Vec<Rational>,
    /// `payoffs[i][j] = P(row_i - col_j)`
    pub payoffs: Vec<Vec<Rational>>,
}

impl DiscreteGameMatrix {
    pub fn payoffs_f64(&self) -> Vec<Vec<f64>> {
        self.payoffs
            .iter()
            .map(|row| row.iter().map(numeric::to_f64).collect())
            .collect()
    }
}

/// `{-nu + k·2nu/L : k = 0..L}`, or `{0}` when `nu = 0`.
pub fn full_grid(nu: &Rational, steps: usize) -> Vec<Rational> {
    if nu.is_zero() {
        return vec![Rational::zero()];
    }
    let h = nu * numeric::int(2) / numeric::from_usize(steps);
    (0..=steps)
        .map(|k| -nu + &h * numeric::from_usize(k))
        .collect()
}

/// `{k·nu/L : k = 0..L}`, or `{0}` when `nu = 0`.
pub fn half_grid(nu: &Rational, steps: usize) -> Vec<Rational> {
    if nu.is_zero() {
        return vec![Rational::zero()];
    }
    let h = nu / numeric::from_usize(steps);
    (0..=steps).map(|k| &h * numeric::from_usize(k)).collect()
}

pub fn build_grid_game(game: &GameSpec, steps: usize) -> Result<DiscreteGameMatrix> {
    if steps == 0 {
        return Err(Error::InvalidArgument(
            "grid parameter L must be at least 1".into(),
        ));
    }
    let kernel = shift_payoff(game);
    let rows = full_grid(&game.offset(Player::One), steps);
    let cols = full_grid(&game.offset(Player::Two), steps);
    let payoffs = rows
        .iter()
        .map(|x| cols.iter().map(|y| kernel.eval(&(x - y))).collect())
        .collect();
    Ok(DiscreteGameMatrix {
        row_locations: rows,
        col_locations: cols,
        payoffs,
    })
}

/// Payoff between symmetrized pure strategies `{±x}` and `{±y}`:
/// `(P(x - y) + P(x + y)) / 2` since `P` is even.
pub fn symmetrized_payoff(kernel: &ShiftedKernel, x: &Rational, y: &Rational) -> Rational {
    (kernel.eval(&(x - y)) + kernel.eval(&(x + y))) / numeric::int(2)
}

/// Number of mixtures of at most `k` of `points` locations with weights in
/// positive multiples of `1/units` summing to one.
pub fn mixture_count(points: usize, units: usize, k: usize) -> u128 {
    fn choose(n: u128, r: u128) -> u128 {
        if r > n {
            return 0;
        }
        let r = r.min(n - r);
        (0..r).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
    }
    (1..=k.min(points).min(units))
        .map(|parts| {
            choose(points as u128, parts as u128)
                .saturating_mul(choose(units as u128 - 1, parts as u128 - 1))
        })
        .fold(0u128, u128::saturating_add)
}

/// Best mixture found by [`max_min_mixture`].
#[derive(Clone, Debug, PartialEq)]
pub struct GridMixture {
    /// `(row index, weight units)` pairs.
    pub parts: Vec<(usize, usize)>,
    pub guaranteed: f64,
}

/// Maximizes `min_j Σ_i w_i a[i][j]` over row mixtures with at most
/// `max_parts` rows and weights in multiples of `1/units`. Earlier
/// mixtures in enumeration order win ties within `1e-12`.
pub fn max_min_mixture(a: &[Vec<f64>], units: usize, max_parts: usize) -> GridMixture {
    struct Search<'a> {
        a: &'a [Vec<f64>],
        units: usize,
        max_parts: usize,
        current: Vec<(usize, usize)>,
        best: Option<GridMixture>,
    }

    impl Search<'_> {
        fn visit(&mut self, start: usize, remaining: usize, acc: &[f64]) {
            if remaining == 0 {
                let guaranteed = acc.iter().copied().fold(f64::INFINITY, f64::min);
                if self
                    .best
                    .as_ref()
                    .is_none_or(|b| guaranteed > b.guaranteed + 1e-12)
                {
                    self.best = Some(GridMixture {
                        parts: self.current.clone(),
                        guaranteed,
                    });
                }
                return;
            }
            if self.current.len() == self.max_parts {
                return;
            }
            let scale = 1.0 / self.units as f64;
            for i in start..self.a.len() {
                // the last allowed part must take everything that is left
                let lo = if self.current.len() + 1 == self.max_parts {
                    remaining
                } else {
                    1
                };
                for w in (lo..=remaining).rev() {
                    let next: Vec<f64> = acc
                        .iter()
                        .zip(&self.a[i])
                        .map(|(s, v)| s + v * w as f64 * scale)
                        .collect();
                    self.current.push((i, w));
                    self.visit(i + 1, remaining - w, &next);
                    self.current.pop();
                }
            }
        }
    }

    let cols = a.first().map_or(0, Vec::len);
    let mut search = Search {
        a,
        units,
        max_parts: max_parts.max(1),
        current: Vec::new(),
        best: None,
    };
    search.visit(0, units, &vec![0.0; cols]);
    search.best.expect("at least one mixture exists")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, ratio};
    use crate::poly::Polynomial;

    fn cubic() -> GameSpec {
        GameSpec::new(int(2), int(1), Polynomial::from_ints(&[0, 0, 0, -1])).unwrap()
    }

    #[test]
    fn grid_game_layout() {
        let m = build_grid_game(&cubic(), 2).unwrap();
        assert_eq!(m.row_locations, vec![ratio(-3, 2), int(0), ratio(3, 2)]);
        assert_eq!(m.col_locations, vec![int(-1), int(0), int(1)]);
        assert_eq!(m.payoffs[1][2], ratio(-13, 4));
        let corners = build_grid_game(&cubic(), 1).unwrap();
        assert_eq!(corners.row_locations, vec![ratio(-3, 2), ratio(3, 2)]);
        assert!(build_grid_game(&cubic(), 0).is_err());
    }

    #[test]
    fn degenerate_player_two_grid() {
        let g = GameSpec::new(int(0), int(1), Polynomial::from_ints(&[0, 0, 0, -1])).unwrap();
        let m = build_grid_game(&g, 4).unwrap();
        assert_eq!(m.col_locations, vec![int(0)]);
        assert_eq!(m.row_locations.len(), 5);
    }

    #[test]
    fn counts_match_enumeration() {
        // compositions of 4 units into at most 2 of 3 locations
        // 1 part: 3 ; 2 parts: C(3,2)·C(3,1) = 9
        assert_eq!(mixture_count(3, 4, 2), 12);
        assert_eq!(mixture_count(5, 3, 1), 5);
        assert_eq!(mixture_count(2, 1, 5), 2);
    }

    #[test]
    fn max_min_finds_mixed_optimum() {
        // matching pennies: the even split guarantees zero
        let a = vec![vec![1.0, -1.0], vec![-1.0, 1.0]];
        let best = max_min_mixture(&a, 2, 2);
        assert_eq!(best.parts, vec![(0, 1), (1, 1)]);
        assert!(best.guaranteed.abs() < 1e-15);
        let pure = max_min_mixture(&a, 2, 1);
        assert_eq!(pure.parts.len(), 1);
        assert_eq!(pure.guaranteed, -1.0);
    }
}
