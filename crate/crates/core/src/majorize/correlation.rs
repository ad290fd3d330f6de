//! Correlation matrices and Schur powers of coefficient matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::peirce::CoeffMatrix;

/// Unit diagonal within `tol` and `λ_min ≥ −tol`.
pub fn is_correlation(c: &CoeffMatrix, tol: f64) -> bool {
    c.diagonal().iter().all(|d| (d - 1.0).abs() <= tol)
        && c.lambda_min().map(|l| l >= -tol).unwrap_or(false)
}

/// `A^{(k)} = [a_ijᵏ]`; negative `k` requires every entry nonzero.
pub fn schur_power(a: &CoeffMatrix, k: i32) -> Result<CoeffMatrix> {
    if k == 0 {
        return Err(Error::Domain("Schur power k must be nonzero".into()));
    }
    if k < 0 {
        if let Some((idx, _)) = a.entries().iter().enumerate().find(|(_, v)| **v == 0.0) {
            let n = a.n();
            return Err(Error::Domain(format!(
                "entry ({}, {}) is zero, negative Schur power undefined",
                idx / n,
                idx % n
            )));
        }
    }
    Ok(a.map(|v| v.powi(k)))
}

/// `[a_ij / b_ij]`.
pub fn ratio_matrix(a: &CoeffMatrix, b: &CoeffMatrix) -> Result<CoeffMatrix> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            expected: a.n(),
            got: b.n(),
        });
    }
    let n = a.n();
    for i in 0..n {
        for j in i..n {
            if b.get(i, j) == 0.0 {
                return Err(Error::Domain(format!("b[{i}][{j}] is zero")));
            }
        }
    }
    Ok(CoeffMatrix::from_fn(n, |i, j| a.get(i, j) / b.get(i, j)))
}

/// `c_ij = a_ij / √(a_ii a_jj)`.
pub fn corr_normalize(a: &CoeffMatrix) -> Result<CoeffMatrix> {
    let d = a.diagonal();
    if let Some((i, v)) = d.iter().enumerate().find(|(_, v)| !(**v > 0.0)) {
        return Err(Error::Domain(format!("diagonal entry {i} is {v}, must be positive")));
    }
    let s: Vec<f64> = d.iter().map(|v| v.sqrt()).collect();
    Ok(CoeffMatrix::from_fn(a.n(), |i, j| {
        if i == j {
            1.0
        } else {
            a.get(i, j) / (s[i] * s[j])
        }
    }))
}

/// `a_ij = a_i / a_j` for `i ≤ j`, with `0 < a₁ ≤ ⋯ ≤ aₙ`.
pub fn corr_ratio(a: &[f64]) -> Result<CoeffMatrix> {
    if a.is_empty() {
        return Err(Error::Domain("empty vector".into()));
    }
    if !(a[0] > 0.0) {
        return Err(Error::Domain(format!("a[0] = {} must be positive", a[0])));
    }
    if let Some(i) = a.windows(2).position(|w| !(w[0] <= w[1])) {
        return Err(Error::Domain(format!("a must be nondecreasing (fails at {})", i + 1)));
    }
    Ok(CoeffMatrix::from_fn(a.len(), |i, j| if i == j { 1.0 } else { a[i] / a[j] }))
}

/// `a_ij = 1 / (1 + |a_i − a_j|)`.
pub fn corr_abs_diff(a: &[f64]) -> Result<CoeffMatrix> {
    if a.is_empty() {
        return Err(Error::Domain("empty vector".into()));
    }
    if a.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("non-finite entry".into()));
    }
    Ok(CoeffMatrix::from_fn(a.len(), |i, j| 1.0 / (1.0 + (a[i] - a[j]).abs())))
}

/// Positive definite functions with `φ(0) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PosDefFn {
    Cos,
    Sinc,
    /// `t / sinh t`
    TOverSinh,
    /// `e^{−|t|}`
    ExpAbs,
}

impl PosDefFn {
    pub const ALL: [PosDefFn; 4] = [PosDefFn::Cos, PosDefFn::Sinc, PosDefFn::TOverSinh, PosDefFn::ExpAbs];

    pub fn eval(self, t: f64) -> f64 {
        match self {
            PosDefFn::Cos => t.cos(),
            PosDefFn::Sinc => {
                if t.abs() < 1e-4 {
                    1.0 - t * t / 6.0
                } else {
                    t.sin() / t
                }
            }
            PosDefFn::TOverSinh => {
                if t.abs() < 1e-4 {
                    1.0 - t * t / 6.0
                } else {
                    t / t.sinh()
                }
            }
            PosDefFn::ExpAbs => (-t.abs()).exp(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PosDefFn::Cos => "cos",
            PosDefFn::Sinc => "sinc",
            PosDefFn::TOverSinh => "t/sinh",
            PosDefFn::ExpAbs => "exp-abs",
        }
    }
}

/// `[φ(a_i − a_j)]`.
pub fn corr_posdef_fn(phi: PosDefFn, a: &[f64]) -> Result<CoeffMatrix> {
    if a.is_empty() {
        return Err(Error::Domain("empty vector".into()));
    }
    if a.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("non-finite entry".into()));
    }
    Ok(CoeffMatrix::from_fn(a.len(), |i, j| phi.eval(a[i] - a[j])))
}
