//! Approximate equilibria on allocation grids, certified against the
//! continuous game.

pub mod best_response;
pub mod grid;
pub mod lp;
pub mod mc;

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numeric::{self, Rational};
use crate::poly::gram_schmidt_basis;
use crate::reduction::{shift_payoff, GameSpec, Player};
use crate::strategy::{
    from_symmetric_components, reduce_symmetric_support, symmetrize, DiscreteStrategy,
};

pub use best_response::{best_response_gap, best_response_gap_with, BestResponse, RootScan};
pub use grid::{build_grid_game, DiscreteGameMatrix};
pub use lp::{solve_matrix_game, solve_matrix_game_exact, MatrixGameSolution};
pub use mc::{mc_check, McEstimate};

pub const DEFAULT_GRID: usize = 16;
pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_ENUMERATION_CAP: u128 = 10_000_000;
/// LP weights below this are treated as zero.
pub const WEIGHT_FLOOR: f64 = 1e-12;

/// How an equilibrium candidate was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    LpGrid,
    SymmetricGrid,
    UserSupplied,
    /// The kernel is constant, so every pair is an equilibrium.
    ConstantKernel,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::LpGrid => "lp-grid",
            Method::SymmetricGrid => "symmetric-grid",
            Method::UserSupplied => "user-supplied",
            Method::ConstantKernel => "constant-kernel",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lp-grid" => Ok(Method::LpGrid),
            "symmetric-grid" => Ok(Method::SymmetricGrid),
            "user-supplied" => Ok(Method::UserSupplied),
            "constant-kernel" => Ok(Method::ConstantKernel),
            other => Err(Error::InvalidArgument(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquilibriumReport {
    pub strategy1: DiscreteStrategy,
    pub strategy2: DiscreteStrategy,
    pub value: f64,
    pub value_exact: Rational,
    pub gap1: f64,
    pub gap2: f64,
    pub method: Method,
    /// Grid parameter L, when a grid was used.
    pub grid: Option<usize>,
    /// Component bound K of the symmetric search.
    pub components: Option<usize>,
}

impl EquilibriumReport {
    /// Measures the gaps of a strategy pair and packages them.
    pub fn certify(
        game: &GameSpec,
        strategy1: DiscreteStrategy,
        strategy2: DiscreteStrategy,
        method: Method,
        scan: RootScan,
    ) -> Self {
        let br = best_response_gap_with(game, &strategy1, &strategy2, scan);
        EquilibriumReport {
            strategy1,
            strategy2,
            value: br.value,
            value_exact: br.value_exact,
            gap1: br.gap1,
            gap2: br.gap2,
            method,
            grid: None,
            components: None,
        }
    }

    pub fn support_sizes(&self) -> (usize, usize) {
        (self.strategy1.support_size(), self.strategy2.support_size())
    }

    pub fn within(&self, threshold: f64) -> bool {
        self.gap1 <= threshold && self.gap2 <= threshold
    }
}

fn constant_report(game: &GameSpec, scan: RootScan) -> Result<Option<EquilibriumReport>> {
    if shift_payoff(game).constant_value().is_none() {
        return Ok(None);
    }
    let s1 = DiscreteStrategy::pure(game, Player::One, Rational::zero())?;
    let s2 = DiscreteStrategy::pure(game, Player::Two, Rational::zero())?;
    Ok(Some(EquilibriumReport::certify(
        game,
        s1,
        s2,
        Method::ConstantKernel,
        scan,
    )))
}

/// Symmetrizes and then reduces the support in the even coordinates, which
/// leaves at most `M + 2` atoms. A zero-width interval passes through.
fn symmetric_reduction(s: &DiscreteStrategy, degree: usize) -> Result<DiscreteStrategy> {
    let sym = symmetrize(s);
    if sym.interval().is_degenerate() {
        return Ok(sym);
    }
    let basis = gram_schmidt_basis(degree, sym.interval())?;
    reduce_symmetric_support(&sym, &basis)
}

/// Grid LP, then support reduction and certification on the continuous game.
///
/// The grids are symmetric about the even split, so the symmetrized LP
/// solution is still optimal for the grid game. Symmetrizing also picks a
/// canonical point out of a non-unique LP optimum.
pub fn solve_lp_pipeline(game: &GameSpec, steps: usize, tol: f64) -> Result<EquilibriumReport> {
    solve_lp_pipeline_with(game, steps, tol, RootScan::default())
}

pub fn solve_lp_pipeline_with(
    game: &GameSpec,
    steps: usize,
    tol: f64,
    scan: RootScan,
) -> Result<EquilibriumReport> {
    if let Some(report) = constant_report(game, scan)? {
        return Ok(report);
    }
    let m = shift_payoff(game).rank_degree();
    let matrix = build_grid_game(game, steps)?;
    let sol = solve_matrix_game(&matrix.payoffs_f64(), tol)?;
    let s1 = DiscreteStrategy::from_float_weights(
        Player::One,
        game.interval(Player::One),
        &matrix.row_locations,
        &sol.row,
        WEIGHT_FLOOR,
    )?;
    let s2 = DiscreteStrategy::from_float_weights(
        Player::Two,
        game.interval(Player::Two),
        &matrix.col_locations,
        &sol.col,
        WEIGHT_FLOOR,
    )?;
    let s1 = symmetric_reduction(&s1, m)?;
    let s2 = symmetric_reduction(&s2, m)?;
    let mut report = EquilibriumReport::certify(game, s1, s2, Method::LpGrid, scan);
    report.grid = Some(steps);
    Ok(report)
}

/// Default component bound for the symmetric search: `⌊M/2⌋ + 2`.
pub fn default_components(game: &GameSpec) -> usize {
    shift_payoff(game).rank_degree() / 2 + 2
}

/// Brute force over mixtures of symmetrized grid strategies.
///
/// Player 1 maximizes its guaranteed payoff against Player 2's symmetrized
/// grid strategies; Player 2 mirrors the search. Weights are multiples of
/// `1/L`, at most `K` components each.
pub fn solve_symmetric_grid(
    game: &GameSpec,
    steps: usize,
    components: Option<usize>,
    cap: u128,
) -> Result<EquilibriumReport> {
    if steps == 0 {
        return Err(Error::InvalidArgument(
            "grid parameter L must be at least 1".into(),
        ));
    }
    let k = components.unwrap_or_else(|| default_components(game));
    if k == 0 {
        return Err(Error::InvalidArgument(
            "component bound K must be at least 1".into(),
        ));
    }
    let scan = RootScan::default();
    if let Some(mut report) = constant_report(game, scan)? {
        report.grid = Some(steps);
        report.components = Some(k);
        return Ok(report);
    }
    let kernel = shift_payoff(game);
    let xs = grid::half_grid(&game.nu1(), steps);
    let ys = grid::half_grid(&game.nu2(), steps);
    for points in [xs.len(), ys.len()] {
        let needed = grid::mixture_count(points, steps, k);
        if needed > cap {
            return Err(Error::EnumerationBudget { needed, cap });
        }
    }
    let table: Vec<Vec<f64>> = xs
        .iter()
        .map(|x| {
            ys.iter()
                .map(|y| numeric::to_f64(&grid::symmetrized_payoff(&kernel, x, y)))
                .collect()
        })
        .collect();
    let best1 = grid::max_min_mixture(&table, steps, k);
    let transposed: Vec<Vec<f64>> = (0..ys.len())
        .map(|j| table.iter().map(|row| -row[j]).collect())
        .collect();
    let best2 = grid::max_min_mixture(&transposed, steps, k);

    let units = numeric::from_usize(steps);
    let build = |player: Player, locs: &[Rational], parts: &[(usize, usize)]| {
        from_symmetric_components(
            player,
            game.interval(player),
            parts
                .iter()
                .map(|&(i, w)| (locs[i].clone(), numeric::from_usize(w) / &units)),
        )
    };
    let s1 = build(Player::One, &xs, &best1.parts)?;
    let s2 = build(Player::Two, &ys, &best2.parts)?;
    let mut report = EquilibriumReport::certify(game, s1, s2, Method::SymmetricGrid, scan);
    report.grid = Some(steps);
    report.components = Some(k);
    Ok(report)
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
    fn lp_pipeline_recovers_worked_example() {
        let r = solve_lp_pipeline(&cubic(), 16, 1e-9).unwrap();
        assert_eq!(r.method, Method::LpGrid);
        assert_eq!(r.strategy1.atoms().len(), 1);
        assert!(r.strategy1.atoms()[0].location.is_zero());
        let atoms2 = r.strategy2.atoms();
        assert_eq!(atoms2.len(), 2);
        assert_eq!(atoms2[0].location, int(-1));
        assert_eq!(atoms2[0].weight, ratio(1, 2));
        assert_eq!(r.value_exact, ratio(-13, 4));
        assert!(r.within(1e-6));
    }

    #[test]
    fn constant_kernel_short_circuits() {
        let g = GameSpec::new(int(2), int(3), Polynomial::from_ints(&[0, 1])).unwrap();
        let r = solve_lp_pipeline(&g, 16, 1e-9).unwrap();
        assert_eq!(r.method, Method::ConstantKernel);
        assert_eq!(r.value, 3.0);
        assert_eq!((r.gap1, r.gap2), (0.0, 0.0));
    }

    #[test]
    fn symmetric_grid_pure_components() {
        let r = solve_symmetric_grid(&cubic(), 8, Some(1), DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(r.strategy1.atoms().len(), 1);
        assert!(r.strategy1.atoms()[0].location.is_zero());
        assert_eq!(r.strategy2.atoms()[1].location, int(1));
        assert_eq!(r.value_exact, ratio(-13, 4));
        assert!(r.strategy1.is_symmetric() && r.strategy2.is_symmetric());
    }

    #[test]
    fn symmetric_grid_budget() {
        let err = solve_symmetric_grid(&cubic(), 32, Some(6), 1000).unwrap_err();
        assert!(matches!(err, Error::EnumerationBudget { .. }));
    }

    #[test]
    fn method_names_round_trip() {
        for m in [
            Method::LpGrid,
            Method::SymmetricGrid,
            Method::UserSupplied,
            Method::ConstantKernel,
        ] {
            assert_eq!(m.as_str().parse::<Method>().unwrap(), m);
        }
        assert!("simplex".parse::<Method>().is_err());
    }
}
