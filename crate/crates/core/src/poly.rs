//! Exact univariate polynomials and the `L²[-ν, ν]` inner product.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{self, from_usize, Rational};

/// Dense polynomial with exact rational coefficients in ascending degree.
///
/// Trailing zero coefficients are always stripped, so the zero polynomial has
/// an empty coefficient vector and `degree() == None`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| numeric::int(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero past the end).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when every odd-power coefficient is zero.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().step_by(2).all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * from_usize(k))
                .collect(),
        )
    }

    /// `p(scale * z + shift)`, expanded exactly by Horner's scheme.
    pub fn compose_affine(&self, scale: &Rational, shift: &Rational) -> Self {
        let inner = Polynomial::new(vec![shift.clone(), scale.clone()]);
        let mut acc = Polynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &inner) + &Polynomial::constant(c.clone());
        }
        acc
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(numeric::to_f64).collect()
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        horner_f64(&self.to_f64_coeffs(), t)
    }
}

/// Horner evaluation of an ascending float coefficient slice.
pub fn horner_f64(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let mag_str = numeric::format_rational(&mag);
            match k {
                0 => write!(f, "{mag_str}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag_str}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// The symmetric domain `[-nu, nu]` of one player's shifted allocation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    nu: Rational,
}

impl Interval {
    /// Accepts `nu >= 0`; zero is the single-point domain of a player with
    /// no resources.
    pub fn new(nu: Rational) -> Result<Self> {
        if nu.is_negative() {
            return Err(Error::InvalidInterval(numeric::format_rational(&nu)));
        }
        Ok(Interval { nu })
    }

    pub fn nu(&self) -> &Rational {
        &self.nu
    }

    pub fn is_degenerate(&self) -> bool {
        self.nu.is_zero()
    }

    pub fn contains(&self, t: &Rational) -> bool {
        t.abs() <= self.nu
    }

    pub fn check(&self, t: &Rational) -> Result<()> {
        if self.contains(t) {
            Ok(())
        } else {
            Err(Error::OutOfInterval {
                location: numeric::format_rational(t),
                nu: numeric::format_rational(&self.nu),
            })
        }
    }
}

/// `∫_{-nu}^{nu} x^a x^b dx`.
pub fn monomial_inner_product(a: usize, b: usize, nu: &Rational) -> Rational {
    let s = a + b;
    if s % 2 == 1 {
        return Rational::zero();
    }
    numeric::pow(nu, s + 1) * numeric::ratio(2, (s + 1) as i64)
}

/// Exact `∫_{-nu}^{nu} p(x) q(x) dx`.
pub fn inner_product(p: &Polynomial, q: &Polynomial, nu: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for (a, pa) in p.coeffs().iter().enumerate() {
        if pa.is_zero() {
            continue;
        }
        for (b, qb) in q.coeffs().iter().enumerate() {
            if (a + b) % 2 == 1 || qb.is_zero() {
                continue;
            }
            acc += pa * qb * monomial_inner_product(a, b, nu);
        }
    }
    acc
}

/// Orthogonal polynomial family on `[-nu, nu]`, stored exactly as monic
/// polynomials with their squared norms. The orthonormal family is
/// `monic[i] / sqrt(sq_norms[i])` and only exists in floating point.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthoBasis {
    interval: Interval,
    monic: Vec<Polynomial>,
    sq_norms: Vec<Rational>,
    inv_norms: Vec<f64>,
}

/// Gram–Schmidt on `1, x, x², …` under the interval inner product.
pub fn gram_schmidt_basis(max_degree: usize, interval: &Interval) -> Result<OrthoBasis> {
    if interval.is_degenerate() {
        return Err(Error::InvalidInterval(numeric::format_rational(
            interval.nu(),
        )));
    }
    let nu = interval.nu();
    let mut monic: Vec<Polynomial> = Vec::with_capacity(max_degree + 1);
    let mut sq_norms: Vec<Rational> = Vec::with_capacity(max_degree + 1);
    for k in 0..=max_degree {
        let xk = Polynomial::monomial(Rational::one(), k);
        let mut v = xk.clone();
        for (prev, norm) in monic.iter().zip(&sq_norms) {
            let proj = inner_product(&xk, prev, nu) / norm;
            if !proj.is_zero() {
                v = &v - &prev.scale(&proj);
            }
        }
        let norm = inner_product(&v, &v, nu);
        debug_assert!(norm.is_positive());
        monic.push(v);
        sq_norms.push(norm);
    }
    let inv_norms = sq_norms
        .iter()
        .map(|s| 1.0 / numeric::to_f64(s).sqrt())
        .collect();
    Ok(OrthoBasis {
        interval: interval.clone(),
        monic,
        sq_norms,
        inv_norms,
    })
}

impl OrthoBasis {
    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    pub fn nu(&self) -> &Rational {
        self.interval.nu()
    }

    pub fn max_degree(&self) -> usize {
        self.monic.len() - 1
    }

    pub fn len(&self) -> usize {
        self.monic.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monic.is_empty()
    }

    pub fn monic(&self) -> &[Polynomial] {
        &self.monic
    }

    pub fn sq_norms(&self) -> &[Rational] {
        &self.sq_norms
    }

    /// `1 / sqrt(sq_norms[i])`
    pub fn inv_norm(&self, i: usize) -> f64 {
        self.inv_norms[i]
    }

    /// Float coefficients of the i-th orthonormal polynomial.
    pub fn normalized_coeffs(&self, i: usize) -> Vec<f64> {
        let s = self.inv_norms[i];
        self.monic[i]
            .coeffs()
            .iter()
            .map(|c| numeric::to_f64(c) * s)
            .collect()
    }

    /// Orthonormal polynomial i at a rational point: exact monic value,
    /// scaled once in floating point.
    pub fn eval_normalized(&self, i: usize, t: &Rational) -> f64 {
        numeric::to_f64(&self.monic[i].eval(t)) * self.inv_norms[i]
    }
}
