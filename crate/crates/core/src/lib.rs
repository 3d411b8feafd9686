//! Equilibria of two-battlefield continuous Blotto games with polynomial
//! outcome functions.
//!
//! The payoff kernel `P(x - y)` of such a game has finite rank, so every
//! mixed strategy is payoff-equivalent to one supported on a handful of
//! points. This crate builds the kernel and its reduced matrix exactly,
//! reduces strategy supports constructively, and computes and certifies
//! approximate equilibria on allocation grids.

pub mod caratheodory;
pub mod error;
pub mod numeric;
pub mod poly;
pub mod reduction;
pub mod solver;
pub mod strategy;

pub use caratheodory::caratheodory_reduce;
pub use error::{Error, Result};
pub use numeric::{format_rational, parse_rational, Rational};
pub use poly::{
    gram_schmidt_basis, inner_product, monomial_inner_product, Interval, OrthoBasis, Polynomial,
};
pub use reduction::{
    expected_payoff_reduced, payoff, reduced_matrix, shift_payoff, GameSpec, Player, ReducedMatrix,
    ShiftedKernel,
};
pub use solver::{
    best_response_gap, build_grid_game, mc_check, solve_lp_pipeline, solve_matrix_game,
    solve_symmetric_grid, EquilibriumReport, McEstimate, Method,
};
pub use strategy::{
    embed_pure, embed_strategy, exact_payoff, max_payoff_deviation, random_strategy,
    reduce_support, reduce_symmetric_support, symmetrize, Atom, CoordVector, DiscreteStrategy,
};
