//! Reference construction of the interpolatory symbol through a linear solve.
//!
//! The B-spline symbol `s(z)` is multiplied by the unique Laurent polynomial
//! `l(z) = sum_{j=-n}^{n} y_j z^j` that makes `s(z) l(z)` interpolatory. The
//! coefficients `y` form row `n+1` of the inverse of a Hurwitz-type matrix
//! built from the coefficients of `s`. This path shares nothing with the
//! closed form beyond the B-spline symbol, so it is used to validate it.

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::scalar::Scalar;
use crate::symbols::{bspline_symbol, LevelParam, SubdivisionMask};

/// Relative pivot threshold for the float realization.
pub const FLOAT_PIVOT_RTOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct HurwitzSystem<S> {
    pub n: usize,
    /// `s_0..s_{2n+2}`: coefficient of `z^(j-(n+1))` in the B-spline symbol.
    pub s_coeffs: Vec<S>,
    /// `(2n+1) x (2n+1)`, `matrix[r][c] = s_{2c-r}` in 1-based indices.
    pub matrix: Vec<Vec<S>>,
}

impl<S: Scalar> HurwitzSystem<S> {
    pub fn from_s_coeffs(n: usize, s_coeffs: Vec<S>) -> Self {
        let size = 2 * n + 1;
        let s_at = |m: i64| -> S {
            if m < 0 || m as usize >= s_coeffs.len() {
                S::zero()
            } else {
                s_coeffs[m as usize].clone()
            }
        };
        let matrix = (1..=size as i64)
            .map(|r| (1..=size as i64).map(|c| s_at(2 * c - r)).collect())
            .collect();
        HurwitzSystem {
            n,
            s_coeffs,
            matrix,
        }
    }

    pub fn size(&self) -> usize {
        2 * self.n + 1
    }

    pub fn transpose(&self) -> Vec<Vec<S>> {
        let size = self.size();
        (0..size)
            .map(|c| (0..size).map(|r| self.matrix[r][c].clone()).collect())
            .collect()
    }
}

pub fn build_hurwitz<S: Scalar>(n: usize, v: &S) -> Result<HurwitzSystem<S>> {
    if n == 0 {
        return Err(Error::InvalidInput("Hurwitz system needs n >= 1".into()));
    }
    let s = bspline_symbol(n, v)?;
    let shift = n as i64 + 1;
    let s_coeffs = (0..=2 * shift).map(|j| s.coeff(j - shift)).collect();
    Ok(HurwitzSystem::from_s_coeffs(n, s_coeffs))
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting. Exact for
/// the rational realization, where only an exactly zero pivot is singular.
pub fn gauss_solve<S: Scalar>(mut a: Vec<Vec<S>>, mut b: Vec<S>) -> Result<Vec<S>> {
    let size = b.len();
    let scale = a
        .iter()
        .flatten()
        .map(|x| x.to_f64().abs())
        .fold(0.0, f64::max);
    for col in 0..size {
        let pivot_row = (col..size)
            .max_by(|&i, &j| {
                a[i][col]
                    .to_f64()
                    .abs()
                    .total_cmp(&a[j][col].to_f64().abs())
            })
            .unwrap();
        let pivot = a[pivot_row][col].clone();
        let too_small = if S::is_exact() {
            pivot.is_zero()
        } else {
            pivot.to_f64().abs() <= FLOAT_PIVOT_RTOL * scale
        };
        if too_small {
            return Err(Error::SingularMatrix {
                column: col,
                pivot: pivot.to_f64(),
            });
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for row in col + 1..size {
            if a[row][col].is_zero() {
                continue;
            }
            let factor = a[row][col].clone() / pivot.clone();
            for k in col..size {
                let delta = factor.clone() * a[col][k].clone();
                a[row][k] = a[row][k].clone() - delta;
            }
            b[row] = b[row].clone() - factor * b[col].clone();
        }
    }
    let mut x = vec![S::zero(); size];
    for row in (0..size).rev() {
        let mut acc = b[row].clone();
        for k in row + 1..size {
            acc = acc - a[row][k].clone() * x[k].clone();
        }
        x[row] = acc / a[row][row].clone();
    }
    Ok(x)
}

/// Row `n+1` of the inverse as the Laurent polynomial `sum_{j=-n}^{n} y_{j+n+1} z^j`,
/// obtained from `A^T y = e_{n+1}`.
pub fn solve_ell<S: Scalar>(sys: &HurwitzSystem<S>) -> Result<LaurentPoly<S>> {
    let size = sys.size();
    let mut rhs = vec![S::zero(); size];
    rhs[sys.n] = S::one();
    let y = gauss_solve(sys.transpose(), rhs)?;
    Ok(LaurentPoly::new(-(sys.n as i64), y))
}

/// `s(z) * l(z)` built through the Hurwitz system.
pub fn oracle_symbol<S: Scalar>(n: usize, v: &S) -> Result<SubdivisionMask<S>> {
    let sys = build_hurwitz(n, v)?;
    let ell = solve_ell(&sys)?;
    let s = bspline_symbol(n, v)?;
    Ok(SubdivisionMask {
        symbol: &s * &ell,
        n,
        level: LevelParam { v: v.clone(), k: 0 },
    })
}
