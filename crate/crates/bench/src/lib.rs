//! Fixture games shared by the criterion benchmarks in `benches/`.

use blotto_core::numeric::int;
use blotto_core::{GameSpec, Polynomial};

/// `r(z) = -z³` with `n = 2`, `a = 1`: kernel degree 2.
pub fn cubic() -> GameSpec {
    GameSpec::new(int(2), int(1), Polynomial::from_ints(&[0, 0, 0, -1])).unwrap()
}

/// `r(z) = 1 + z⁶` with `n = 1`, `a = 2`: kernel degree 6.
pub fn sextic() -> GameSpec {
    GameSpec::new(
        int(1),
        int(2),
        Polynomial::from_ints(&[1, 0, 0, 0, 0, 0, 1]),
    )
    .unwrap()
}

/// Games labelled by outcome degree, smallest first.
pub fn by_degree() -> Vec<(usize, GameSpec)> {
    (2..=6)
        .map(|d| {
            let mut coeffs = vec![0; d + 1];
            coeffs[d] = if d % 2 == 0 { 1 } else { -1 };
            (
                d,
                GameSpec::new(int(2), int(1), Polynomial::from_ints(&coeffs)).unwrap(),
            )
        })
        .collect()
}
