//! Finite mixed strategies, their reduced coordinates, symmetrization and
//! support reduction.

use std::collections::BTreeMap;
use std::ops::Deref;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::caratheodory::caratheodory_reduce;
use crate::error::{Error, Result};
use crate::numeric::{self, Rational};
use crate::poly::{Interval, OrthoBasis};
use crate::reduction::{shift_payoff, GameSpec, Player, ShiftedKernel};

/// Float weights are snapped to the simplest rational this close, so LP
/// round-off does not turn into enormous denominators.
pub const RATIONALIZE_TOL: f64 = 1e-12;

/// One pure strategy in a mixture, in shifted coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Atom {
    pub location: Rational,
    pub weight: Rational,
}

/// A probability distribution on finitely many points of `[-nu, nu]`.
///
/// Always canonical: sorted by location, no duplicate locations, no
/// zero-weight atoms, weights summing to exactly one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteStrategy {
    player: Player,
    interval: Interval,
    atoms: Vec<Atom>,
}

impl DiscreteStrategy {
    pub fn new(
        player: Player,
        interval: Interval,
        atoms: impl IntoIterator<Item = (Rational, Rational)>,
    ) -> Result<Self> {
        let mut merged: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (location, weight) in atoms {
            if weight.is_negative() {
                return Err(Error::InvalidStrategy(format!(
                    "negative weight {}",
                    numeric::format_rational(&weight)
                )));
            }
            interval.check(&location)?;
            *merged.entry(location).or_insert_with(Rational::zero) += weight;
        }
        let atoms: Vec<Atom> = merged
            .into_iter()
            .filter(|(_, w)| !w.is_zero())
            .map(|(location, weight)| Atom { location, weight })
            .collect();
        if atoms.is_empty() {
            return Err(Error::InvalidStrategy(
                "no atoms with positive weight".into(),
            ));
        }
        let total: Rational = atoms.iter().map(|a| &a.weight).sum();
        if !total.is_one() {
            return Err(Error::InvalidStrategy(format!(
                "weights sum to {}, not 1",
                numeric::format_rational(&total)
            )));
        }
        Ok(DiscreteStrategy {
            player,
            interval,
            atoms,
        })
    }

    pub fn for_game(
        game: &GameSpec,
        player: Player,
        atoms: impl IntoIterator<Item = (Rational, Rational)>,
    ) -> Result<Self> {
        Self::new(player, game.interval(player), atoms)
    }

    pub fn pure(game: &GameSpec, player: Player, location: Rational) -> Result<Self> {
        Self::for_game(game, player, [(location, Rational::one())])
    }

    /// Builds a strategy from solver output: float weights below `drop_below`
    /// are discarded, the rest rationalized and renormalized exactly.
    pub fn from_float_weights(
        player: Player,
        interval: Interval,
        locations: &[Rational],
        weights: &[f64],
        drop_below: f64,
    ) -> Result<Self> {
        if locations.len() != weights.len() {
            return Err(Error::DimensionMismatch {
                expected: locations.len(),
                found: weights.len(),
            });
        }
        let kept: Vec<(Rational, Rational)> = locations
            .iter()
            .zip(weights)
            .filter(|(_, &w)| w >= drop_below)
            .map(|(t, &w)| {
                numeric::rationalize(w, RATIONALIZE_TOL)
                    .map(|r| (t.clone(), r))
                    .ok_or_else(|| Error::InvalidStrategy(format!("non-finite weight {w}")))
            })
            .collect::<Result<_>>()?;
        let total: Rational = kept.iter().map(|(_, w)| w).sum();
        if !total.is_positive() {
            return Err(Error::InvalidStrategy("all weights dropped".into()));
        }
        Self::new(
            player,
            interval,
            kept.into_iter().map(|(t, w)| (t, w / &total)),
        )
    }

    pub fn player(&self) -> Player {
        self.player
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn support_size(&self) -> usize {
        self.atoms.len()
    }

    /// Invariant under `t ↦ -t`.
    pub fn is_symmetric(&self) -> bool {
        self.atoms.iter().all(|a| {
            let mirror = -&a.location;
            self.atoms
                .binary_search_by(|b| b.location.cmp(&mirror))
                .is_ok_and(|k| self.atoms[k].weight == a.weight)
        })
    }

    /// `λ·self + (1-λ)·other`, for strategies of the same player.
    pub fn mix(&self, other: &DiscreteStrategy, lambda: &Rational) -> Result<Self> {
        if self.interval != other.interval || self.player != other.player {
            return Err(Error::InvalidStrategy(
                "mixing strategies of different players".into(),
            ));
        }
        if lambda.is_negative() || lambda > &Rational::one() {
            return Err(Error::InvalidArgument(
                "mixing weight outside [0, 1]".into(),
            ));
        }
        let rest = Rational::one() - lambda;
        let atoms = self
            .atoms
            .iter()
            .map(|a| (a.location.clone(), &a.weight * lambda))
            .chain(
                other
                    .atoms
                    .iter()
                    .map(|a| (a.location.clone(), &a.weight * &rest)),
            );
        Self::new(self.player, self.interval.clone(), atoms)
    }
}

/// A strategy's image in the orthonormal basis: component i is `f · f_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoordVector(pub Vec<f64>);

impl Deref for CoordVector {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

fn check_basis(s: &DiscreteStrategy, basis: &OrthoBasis) -> Result<()> {
    if s.interval() != basis.interval() {
        return Err(Error::InvalidArgument(
            "strategy and basis live on different intervals".into(),
        ));
    }
    Ok(())
}

/// Coordinates of the Dirac atom at `t`: the orthonormal basis evaluated at `t`.
pub fn embed_pure(t: &Rational, basis: &OrthoBasis) -> Result<CoordVector> {
    basis.interval().check(t)?;
    Ok(CoordVector(
        (0..basis.len())
            .map(|i| basis.eval_normalized(i, t))
            .collect(),
    ))
}

/// Exact coordinates in the monic basis (`monic[i](t)`).
pub fn embed_pure_monic(t: &Rational, basis: &OrthoBasis) -> Result<Vec<Rational>> {
    basis.interval().check(t)?;
    Ok(basis.monic().iter().map(|p| p.eval(t)).collect())
}

pub fn embed_strategy(s: &DiscreteStrategy, basis: &OrthoBasis) -> Result<CoordVector> {
    let exact = embed_strategy_monic(s, basis)?;
    Ok(CoordVector(
        exact
            .iter()
            .enumerate()
            .map(|(i, v)| numeric::to_f64(v) * basis.inv_norm(i))
            .collect(),
    ))
}

/// Exact monic-basis coordinates of a mixture.
pub fn embed_strategy_monic(s: &DiscreteStrategy, basis: &OrthoBasis) -> Result<Vec<Rational>> {
    check_basis(s, basis)?;
    let mut acc = vec![Rational::zero(); basis.len()];
    for atom in s.atoms() {
        for (slot, v) in acc.iter_mut().zip(embed_pure_monic(&atom.location, basis)?) {
            *slot += v * &atom.weight;
        }
    }
    Ok(acc)
}

/// Even part of a strategy: every atom is split evenly with its mirror image.
pub fn symmetrize(s: &DiscreteStrategy) -> DiscreteStrategy {
    let half = numeric::ratio(1, 2);
    let atoms = s.atoms().iter().flat_map(|a| {
        let w = &a.weight * &half;
        [(a.location.clone(), w.clone()), (-&a.location, w)]
    });
    DiscreteStrategy::new(s.player(), s.interval().clone(), atoms)
        .expect("mirroring preserves validity")
}

/// `Σ p_i q_j P(x_i - y_j)`, exact.
pub fn exact_payoff(game: &GameSpec, s1: &DiscreteStrategy, s2: &DiscreteStrategy) -> Rational {
    exact_payoff_with(&shift_payoff(game), s1, s2)
}

pub fn exact_payoff_with(
    kernel: &ShiftedKernel,
    s1: &DiscreteStrategy,
    s2: &DiscreteStrategy,
) -> Rational {
    let mut acc = Rational::zero();
    for a in s1.atoms() {
        for b in s2.atoms() {
            acc += kernel.eval(&(&a.location - &b.location)) * &a.weight * &b.weight;
        }
    }
    acc
}

/// Payoff-equivalent strategy on at most `basis.len() + 1` of `s`'s atoms.
///
/// Every atom is embedded exactly in the monic basis, so the reduced
/// strategy has the same reduced coordinates as `s`, not merely close ones.
pub fn reduce_support(s: &DiscreteStrategy, basis: &OrthoBasis) -> Result<DiscreteStrategy> {
    check_basis(s, basis)?;
    if s.support_size() <= basis.len() + 1 {
        return Ok(s.clone());
    }
    let points = s
        .atoms()
        .iter()
        .map(|a| embed_pure_monic(&a.location, basis))
        .collect::<Result<Vec<_>>>()?;
    let weights: Vec<Rational> = s.atoms().iter().map(|a| a.weight.clone()).collect();
    let (idx, kept) = caratheodory_reduce(&points, &weights)?;
    DiscreteStrategy::new(
        s.player(),
        s.interval().clone(),
        idx.into_iter()
            .zip(kept)
            .map(|(i, w)| (s.atoms()[i].location.clone(), w)),
    )
}

/// Symmetric strategy grouped into symmetrized pure strategies
/// `{t: w/2, -t: w/2}` (or `{0: w}`), as `(t >= 0, w)` pairs.
pub fn symmetric_components(s: &DiscreteStrategy) -> Result<Vec<(Rational, Rational)>> {
    if !s.is_symmetric() {
        return Err(Error::InvalidStrategy("strategy is not symmetric".into()));
    }
    Ok(s.atoms()
        .iter()
        .filter(|a| !a.location.is_negative())
        .map(|a| {
            let w = if a.location.is_zero() {
                a.weight.clone()
            } else {
                &a.weight * numeric::int(2)
            };
            (a.location.clone(), w)
        })
        .collect())
}

/// Rebuilds a symmetric strategy from symmetrized components.
pub fn from_symmetric_components(
    player: Player,
    interval: Interval,
    components: impl IntoIterator<Item = (Rational, Rational)>,
) -> Result<DiscreteStrategy> {
    let half = numeric::ratio(1, 2);
    let atoms: Vec<(Rational, Rational)> = components
        .into_iter()
        .flat_map(|(t, w)| {
            let hw = &w * &half;
            [(-&t, hw.clone()), (t, hw)]
        })
        .collect();
    DiscreteStrategy::new(player, interval, atoms)
}

/// Support reduction inside the even coordinates of a symmetric strategy.
///
/// Odd coordinates of symmetric strategies vanish, so only the even-index
/// basis polynomials take part; the result uses at most
/// `⌊M/2⌋ + 2` symmetrized components.
pub fn reduce_symmetric_support(
    s: &DiscreteStrategy,
    basis: &OrthoBasis,
) -> Result<DiscreteStrategy> {
    check_basis(s, basis)?;
    let comps = symmetric_components(s)?;
    let even_dim = basis.max_degree() / 2 + 1;
    if comps.len() <= even_dim + 1 {
        return Ok(s.clone());
    }
    let points = comps
        .iter()
        .map(|(t, _)| {
            embed_pure_monic(t, basis).map(|v| v.into_iter().step_by(2).collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let weights: Vec<Rational> = comps.iter().map(|(_, w)| w.clone()).collect();
    let (idx, kept) = caratheodory_reduce(&points, &weights)?;
    from_symmetric_components(
        s.player(),
        s.interval().clone(),
        idx.into_iter()
            .zip(kept)
            .map(|(i, w)| (comps[i].0.clone(), w)),
    )
}

/// Random strategy with `atoms` atoms on the grid `ν·k/64`, integer
/// weights 1..=9 normalized to one.
pub fn random_strategy<R: Rng>(
    game: &GameSpec,
    player: Player,
    atoms: usize,
    rng: &mut R,
) -> DiscreteStrategy {
    let nu = game.offset(player);
    let raw: Vec<i64> = (0..atoms.max(1)).map(|_| rng.random_range(1..=9)).collect();
    let total: i64 = raw.iter().sum();
    DiscreteStrategy::for_game(
        game,
        player,
        raw.iter().map(|&w| {
            (
                &nu * numeric::ratio(rng.random_range(-64..=64), 64),
                numeric::ratio(w, total),
            )
        }),
    )
    .expect("grid points lie in the interval")
}

/// Largest `|E(before, g) - E(after, g)|` over `opponents` seeded random
/// opponent strategies `g`, computed exactly.
pub fn max_payoff_deviation(
    game: &GameSpec,
    before: &DiscreteStrategy,
    after: &DiscreteStrategy,
    opponents: usize,
    seed: u64,
) -> Result<Rational> {
    if before.player() != after.player() {
        return Err(Error::InvalidArgument(
            "strategies belong to different players".into(),
        ));
    }
    let kernel = shift_payoff(game);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = Rational::zero();
    for _ in 0..opponents {
        let size = rng.random_range(1..=6);
        let d = match before.player() {
            Player::One => {
                let g = random_strategy(game, Player::Two, size, &mut rng);
                exact_payoff_with(&kernel, before, &g) - exact_payoff_with(&kernel, after, &g)
            }
            Player::Two => {
                let f = random_strategy(game, Player::One, size, &mut rng);
                exact_payoff_with(&kernel, &f, before) - exact_payoff_with(&kernel, &f, after)
            }
        };
        worst = worst.max(d.abs());
    }
    Ok(worst)
}
