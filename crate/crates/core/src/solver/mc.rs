//! Monte Carlo estimate of the expected payoff, used as an independent
//! check on the exact atom sums.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numeric;
use crate::reduction::{shift_payoff, GameSpec};
use crate::strategy::DiscreteStrategy;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: u64,
}

pub fn mc_check(
    game: &GameSpec,
    s1: &DiscreteStrategy,
    s2: &DiscreteStrategy,
    samples: u64,
    seed: u64,
) -> Result<McEstimate> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let kernel = shift_payoff(game);
    let table: Vec<Vec<f64>> = s1
        .atoms()
        .iter()
        .map(|a| {
            s2.atoms()
                .iter()
                .map(|b| numeric::to_f64(&kernel.eval(&(&a.location - &b.location))))
                .collect()
        })
        .collect();
    let weights = |s: &DiscreteStrategy| -> Result<WeightedIndex<f64>> {
        WeightedIndex::new(s.atoms().iter().map(|a| numeric::to_f64(&a.weight)))
            .map_err(|e| Error::InvalidStrategy(e.to_string()))
    };
    let (d1, d2) = (weights(s1)?, weights(s2)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Welford: constant samples reproduce their value exactly
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for k in 1..=samples {
        let v = table[d1.sample(&mut rng)][d2.sample(&mut rng)];
        let delta = v - mean;
        mean += delta / k as f64;
        m2 += delta * (v - mean);
    }
    let stderr = if samples > 1 {
        (m2 / (samples - 1) as f64 / samples as f64).sqrt()
    } else {
        0.0
    };
    Ok(McEstimate {
        estimate: mean,
        stderr,
        samples,
    })
}
