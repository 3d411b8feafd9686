//! Dense tableau simplex for two-player zero-sum matrix games.

use crate::error::{Error, Result};
use crate::numeric::{Rational, Scalar};

/// Mixed strategies and value of a matrix game; the row player maximizes.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixGameSolution<T> {
    pub row: Vec<T>,
    pub col: Vec<T>,
    pub value: T,
}

fn check_shape<T>(a: &[Vec<T>]) -> Result<(usize, usize)> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("empty payoff matrix".into()));
    }
    if let Some(bad) = a.iter().find(|r| r.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.len(),
        });
    }
    Ok((m, n))
}

/// Solves the game with the classic reduction: shift every payoff to at
/// least one, then maximize `Σ u` subject to `A u <= 1, u >= 0`. The
/// column strategy is `u / Σu`, the row strategy comes from the slack
/// reduced costs, and the value is `1 / Σu` minus the shift. Bland's rule
/// for entering and leaving variables.
pub fn simplex_game<T: Scalar>(a: &[Vec<T>], max_iter: usize) -> Result<MatrixGameSolution<T>> {
    let (m, n) = check_shape(a)?;
    let min = a.iter().flatten().fold(
        a[0][0].clone(),
        |acc, v| if *v < acc { v.clone() } else { acc },
    );
    let shift = if min.is_negative() { -min } else { T::zero() } + T::one();

    // columns: u_0..u_{n-1}, s_0..s_{m-1}, rhs
    let width = n + m + 1;
    let mut tab: Vec<Vec<T>> = Vec::with_capacity(m + 1);
    for (i, row) in a.iter().enumerate() {
        let mut t = vec![T::zero(); width];
        for (j, v) in row.iter().enumerate() {
            t[j] = v.clone() + shift.clone();
        }
        t[n + i] = T::one();
        t[width - 1] = T::one();
        tab.push(t);
    }
    let mut obj = vec![T::zero(); width];
    obj.iter_mut().take(n).for_each(|v| *v = -T::one());
    tab.push(obj);
    let mut basis: Vec<usize> = (n..n + m).collect();

    let mut iterations = 0;
    loop {
        let entering = (0..n + m).find(|&j| tab[m][j].is_negative() && !tab[m][j].negligible());
        let Some(col) = entering else { break };
        if iterations == max_iter {
            return Err(Error::LpFailure(format!(
                "no convergence within {max_iter} pivots"
            )));
        }
        iterations += 1;

        let mut leave: Option<(usize, T)> = None;
        for i in 0..m {
            let coef = &tab[i][col];
            if !coef.is_positive() || coef.negligible() {
                continue;
            }
            let ratio = tab[i][width - 1].clone() / coef.clone();
            let better = match &leave {
                None => true,
                Some((r, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*r]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // bounded: every column has a strictly positive entry
        let (row, _) = leave.ok_or_else(|| Error::LpFailure("unbounded program".into()))?;

        let pivot = tab[row][col].clone();
        for v in tab[row].iter_mut() {
            *v = v.clone() / pivot.clone();
        }
        let pivot = tab[row].clone();
        for (i, line) in tab.iter_mut().enumerate() {
            if i == row || line[col].is_zero() {
                continue;
            }
            let factor = line[col].clone();
            for (x, p) in line.iter_mut().zip(&pivot) {
                *x = x.clone() - factor.clone() * p.clone();
            }
        }
        basis[row] = col;
    }

    let total = tab[m][width - 1].clone();
    if !total.is_positive() || total.negligible() {
        return Err(Error::LpFailure("degenerate optimum".into()));
    }
    let mut col = vec![T::zero(); n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            col[b] = tab[i][width - 1].clone() / total.clone();
        }
    }
    let row: Vec<T> = (0..m)
        .map(|i| {
            let y = tab[m][n + i].clone() / total.clone();
            if y.is_negative() {
                T::zero()
            } else {
                y
            }
        })
        .collect();
    let value = T::one() / total - shift;
    Ok(MatrixGameSolution { row, col, value })
}

fn iteration_cap(m: usize, n: usize) -> usize {
    10 * (m + n) * (m + n)
}

/// Float solve followed by a direct check of both one-sided bounds.
pub fn solve_matrix_game(a: &[Vec<f64>], tol: f64) -> Result<MatrixGameSolution<f64>> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let (m, n) = check_shape(a)?;
    if a.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("non-finite payoff".into()));
    }
    let mut sol = simplex_game(a, iteration_cap(m, n))?;
    for probs in [&mut sol.row, &mut sol.col] {
        let total: f64 = probs.iter().sum();
        probs.iter_mut().for_each(|p| *p /= total);
    }
    let (lower, upper) = certificate(a, &sol.row, &sol.col);
    if lower < sol.value - tol || upper > sol.value + tol {
        return Err(Error::LpFailure(format!(
            "certificate violated: [{lower}, {upper}] around value {}",
            sol.value
        )));
    }
    Ok(sol)
}

/// Exact rational simplex, for checking the float path.
pub fn solve_matrix_game_exact(a: &[Vec<Rational>]) -> Result<MatrixGameSolution<Rational>> {
    let (m, n) = check_shape(a)?;
    simplex_game(a, iteration_cap(m, n))
}

/// `(min_j (pᵀA)_j, max_i (Aq)_i)`: what the row strategy guarantees and
/// what the column strategy concedes.
pub fn certificate(a: &[Vec<f64>], p: &[f64], q: &[f64]) -> (f64, f64) {
    let n = q.len();
    let lower = (0..n)
        .map(|j| a.iter().zip(p).map(|(row, pi)| row[j] * pi).sum::<f64>())
        .fold(f64::INFINITY, f64::min);
    let upper = a
        .iter()
        .map(|row| row.iter().zip(q).map(|(v, qj)| v * qj).sum::<f64>())
        .fold(f64::NEG_INFINITY, f64::max);
    (lower, upper)
}
