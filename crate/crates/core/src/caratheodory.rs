//! Constructive Carathéodory reduction of convex combinations.

use crate::error::{Error, Result};
use crate::numeric::Scalar;

/// A nonzero solution of `rows · v = 0`, or `None` when the system has full
/// column rank. Gaussian elimination with partial pivoting; the first free
/// column is set to one.
pub fn null_vector<T: Scalar>(rows: &[Vec<T>], ncols: usize) -> Option<Vec<T>> {
    let mut a: Vec<Vec<T>> = rows.to_vec();
    let nrows = a.len();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let best = (r..nrows)
            .max_by(|&i, &j| {
                a[i][col]
                    .abs()
                    .partial_cmp(&a[j][col].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
                    // prefer the earliest row on ties
                    .then(j.cmp(&i))
            })
            .expect("non-empty range");
        if a[best][col].negligible() {
            continue;
        }
        a.swap(r, best);
        let pivot = a[r][col].clone();
        for v in a[r].iter_mut() {
            *v = v.clone() / pivot.clone();
        }
        let pivot = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot) {
                *x = x.clone() - factor.clone() * p.clone();
            }
        }
        pivot_cols.push(col);
        r += 1;
    }
    let free = (0..ncols).find(|c| !pivot_cols.contains(c))?;
    let mut v = vec![T::zero(); ncols];
    v[free] = T::one();
    for (row, &pc) in pivot_cols.iter().enumerate() {
        v[pc] = -a[row][free].clone();
    }
    Some(v)
}

/// Rewrites `Σ weights[i] · points[i]` using at most `d + 1` of the points,
/// where `d` is the point dimension.
///
/// Returns the surviving indices in ascending order and their new weights.
/// Each round finds an affine dependency `Σ δ_s p_s = 0, Σ δ_s = 0` among
/// `d + 2` active points and moves along it until the first weight hits
/// zero (ties broken by smallest index). Exact for rational scalars.
pub fn caratheodory_reduce<T: Scalar>(
    points: &[Vec<T>],
    weights: &[T],
) -> Result<(Vec<usize>, Vec<T>)> {
    let first = points
        .first()
        .ok_or_else(|| Error::InvalidArgument("no points to reduce".into()))?;
    let d = first.len();
    if let Some(bad) = points.iter().find(|p| p.len() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: bad.len(),
        });
    }
    if weights.len() != points.len() {
        return Err(Error::DimensionMismatch {
            expected: points.len(),
            found: weights.len(),
        });
    }
    if weights.iter().any(|w| w.is_negative() && !w.negligible()) {
        return Err(Error::InvalidArgument("negative weight".into()));
    }
    let total = weights.iter().fold(T::zero(), |acc, w| acc + w.clone());
    if !(total - T::one()).negligible() {
        return Err(Error::InvalidArgument("weights must sum to one".into()));
    }

    let mut w: Vec<T> = weights.to_vec();
    let mut active: Vec<usize> = (0..points.len())
        .filter(|&i| w[i].is_positive() && !w[i].negligible())
        .collect();
    while active.len() > d + 1 {
        let group: Vec<usize> = active[..d + 2].to_vec();
        let mut rows: Vec<Vec<T>> = (0..d)
            .map(|k| group.iter().map(|&i| points[i][k].clone()).collect())
            .collect();
        rows.push(vec![T::one(); group.len()]);
        let mut delta = null_vector(&rows, group.len())
            .expect("d + 2 columns in d + 1 rows always leave a free column");
        if !delta.iter().any(|x| x.is_negative() && !x.negligible()) {
            delta.iter_mut().for_each(|x| *x = -x.clone());
        }
        let mut step: Option<(T, usize)> = None;
        for (s, ds) in delta.iter().enumerate() {
            if !ds.is_negative() || ds.negligible() {
                continue;
            }
            let ratio = -w[group[s]].clone() / ds.clone();
            if step.as_ref().is_none_or(|(best, _)| ratio < *best) {
                step = Some((ratio, s));
            }
        }
        let (b, hit) = step.expect("dependency has a negative coefficient");
        for (s, ds) in delta.iter().enumerate() {
            let i = group[s];
            w[i] = w[i].clone() + b.clone() * ds.clone();
            if w[i].is_negative() || w[i].negligible() {
                w[i] = T::zero();
            }
        }
        w[group[hit]] = T::zero();
        active.retain(|&i| !w[i].is_zero());
    }
    let kept = active.iter().map(|&i| w[i].clone()).collect();
    Ok((active, kept))
}
