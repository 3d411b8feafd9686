//! Shifted payoff kernel and its finite-rank matrix in orthogonal bases.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{self, Rational};
use crate::poly::{gram_schmidt_basis, inner_product, Interval, OrthoBasis, Polynomial};

/// A two-battlefield continuous Blotto game.
///
/// Player 2 splits `n` between the fields, Player 1 splits `n + a`. The
/// per-field outcome for Player 1 is `r(z)` with `z` the allocation
/// difference on that field.
#[derive(Clone, Debug, PartialEq)]
pub struct GameSpec {
    n: Rational,
    a: Rational,
    r: Polynomial,
}

/// Which side of the game a strategy belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Player {
    /// Maximizer, resources `n + a`.
    One,
    /// Minimizer, resources `n`.
    Two,
}

impl GameSpec {
    pub fn new(n: Rational, a: Rational, r: Polynomial) -> Result<Self> {
        if n.is_negative() {
            return Err(Error::InvalidGame("n must be nonnegative".into()));
        }
        if a.is_negative() {
            return Err(Error::InvalidGame("a must be nonnegative".into()));
        }
        Ok(GameSpec { n, a, r })
    }

    pub fn n(&self) -> &Rational {
        &self.n
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn r(&self) -> &Polynomial {
        &self.r
    }

    /// `(n + a) / 2`
    pub fn nu1(&self) -> Rational {
        (&self.n + &self.a) / numeric::int(2)
    }

    /// `n / 2`
    pub fn nu2(&self) -> Rational {
        &self.n / numeric::int(2)
    }

    pub fn interval(&self, player: Player) -> Interval {
        let nu = match player {
            Player::One => self.nu1(),
            Player::Two => self.nu2(),
        };
        Interval::new(nu).expect("game invariants keep nu nonnegative")
    }

    /// Offset between original allocations and shifted coordinates.
    pub fn offset(&self, player: Player) -> Rational {
        match player {
            Player::One => self.nu1(),
            Player::Two => self.nu2(),
        }
    }
}

/// `P(z) = r(z + a/2) + r(-z + a/2)`; Player 1 earns `P(x - y)` in shifted
/// coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftedKernel {
    poly: Polynomial,
}

impl ShiftedKernel {
    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    /// Degree M of the kernel; `None` when it vanishes identically.
    pub fn degree(&self) -> Option<usize> {
        self.poly.degree()
    }

    /// M with the zero kernel counted as degree 0.
    pub fn rank_degree(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    /// Zero or constant kernels make every strategy pair an equilibrium.
    pub fn constant_value(&self) -> Option<Rational> {
        match self.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.poly.coeff(0)),
            Some(_) => None,
        }
    }

    pub fn eval(&self, z: &Rational) -> Rational {
        self.poly.eval(z)
    }

    /// Coefficients `c[p][q]` of `P(x - y) = Σ c[p][q] x^p y^q`.
    pub fn bivariate(&self) -> Vec<Vec<Rational>> {
        let size = self.poly.coeffs().len();
        let mut c = vec![vec![Rational::zero(); size]; size];
        for (k, ck) in self.poly.coeffs().iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            for (p, row) in c.iter_mut().enumerate().take(k + 1) {
                let q = k - p;
                let mut term = ck * Rational::from_integer(numeric::binomial(k, p));
                if q % 2 == 1 {
                    term = -term;
                }
                row[q] += term;
            }
        }
        c
    }
}

pub fn shift_payoff(game: &GameSpec) -> ShiftedKernel {
    let half_a = game.a() / numeric::int(2);
    let one = Rational::one();
    let forward = game.r().compose_affine(&one, &half_a);
    let backward = game.r().compose_affine(&-one, &half_a);
    let poly = &forward + &backward;
    debug_assert!(poly.is_even());
    ShiftedKernel { poly }
}

/// Player 1's payoff for the pure pair `(x, y)` in shifted coordinates.
pub fn payoff(game: &GameSpec, x: &Rational, y: &Rational) -> Result<Rational> {
    game.interval(Player::One).check(x)?;
    game.interval(Player::Two).check(y)?;
    Ok(shift_payoff(game).eval(&(x - y)))
}

/// Float counterpart of [`payoff`].
pub fn payoff_f64(game: &GameSpec, x: f64, y: f64) -> Result<f64> {
    let (nu1, nu2) = (numeric::to_f64(&game.nu1()), numeric::to_f64(&game.nu2()));
    if x.abs() > nu1 || y.abs() > nu2 || !x.is_finite() || !y.is_finite() {
        return Err(Error::OutOfInterval {
            location: format!("({x}, {y})"),
            nu: format!("({nu1}, {nu2})"),
        });
    }
    Ok(shift_payoff(game).poly().eval_f64(x - y))
}

/// Matrix of the payoff operator between the two players' bases.
///
/// `entries` is exact and uses the monic bases; `normalized` is the float
/// view in the orthonormal bases.
#[derive(Clone, Debug)]
pub struct ReducedMatrix {
    entries: Vec<Vec<Rational>>,
    normalized: Vec<Vec<f64>>,
    basis1: OrthoBasis,
    basis2: OrthoBasis,
}

impl ReducedMatrix {
    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn normalized(&self) -> &[Vec<f64>] {
        &self.normalized
    }

    pub fn basis1(&self) -> &OrthoBasis {
        &self.basis1
    }

    pub fn basis2(&self) -> &OrthoBasis {
        &self.basis2
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }
}

/// Builds the reduced matrix with bases of degree `basis_degree`.
///
/// Entry `(i, j)` is `∫∫ P(x - y) f_i(x) g_j(y) dy dx` for the monic bases,
/// obtained by expanding `P(x - y)` into monomials and taking exact moments.
pub fn reduced_matrix(game: &GameSpec, basis_degree: usize) -> Result<ReducedMatrix> {
    let kernel = shift_payoff(game);
    let m = kernel.rank_degree();
    if basis_degree < m {
        return Err(Error::BasisTooSmall {
            requested: basis_degree,
            required: m,
        });
    }
    let iv2 = game.interval(Player::Two);
    if iv2.is_degenerate() {
        return Err(Error::DegenerateOpponent);
    }
    let basis1 = gram_schmidt_basis(basis_degree, &game.interval(Player::One))?;
    let basis2 = gram_schmidt_basis(basis_degree, &iv2)?;
    let c = kernel.bivariate();
    let moments = |basis: &OrthoBasis| -> Vec<Vec<Rational>> {
        basis
            .monic()
            .iter()
            .map(|f| {
                (0..c.len())
                    .map(|p| {
                        inner_product(f, &Polynomial::monomial(Rational::one(), p), basis.nu())
                    })
                    .collect()
            })
            .collect()
    };
    let mf = moments(&basis1);
    let mg = moments(&basis2);
    let dim = basis_degree + 1;
    let mut entries = vec![vec![Rational::zero(); dim]; dim];
    for (i, row) in entries.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            if (i + j) % 2 == 1 {
                continue;
            }
            let mut acc = Rational::zero();
            for (p, cp) in c.iter().enumerate() {
                if mf[i][p].is_zero() {
                    continue;
                }
                for (q, cpq) in cp.iter().enumerate() {
                    if cpq.is_zero() || mg[j][q].is_zero() {
                        continue;
                    }
                    acc += cpq * &mf[i][p] * &mg[j][q];
                }
            }
            *entry = acc;
        }
    }
    let normalized = entries
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, e)| numeric::to_f64(e) * basis1.inv_norm(i) * basis2.inv_norm(j))
                .collect()
        })
        .collect();
    Ok(ReducedMatrix {
        entries,
        normalized,
        basis1,
        basis2,
    })
}

/// `fvecᵀ · normalized · gvec` for coordinate vectors in the orthonormal bases.
pub fn expected_payoff_reduced(fvec: &[f64], matrix: &ReducedMatrix, gvec: &[f64]) -> Result<f64> {
    let dim = matrix.dim();
    for v in [fvec, gvec] {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
    }
    Ok(matrix
        .normalized()
        .iter()
        .zip(fvec)
        .map(|(row, fi)| fi * row.iter().zip(gvec).map(|(e, gj)| e * gj).sum::<f64>())
        .sum())
}
