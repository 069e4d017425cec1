//! Truncated sequence spaces `ℓ_p^N`, their duals, and coordinate arrays
//! between them.

use crate::error::{Error, Result};
use crate::exponent::Exponent;

/// `(Σ|v_k|^p)^{1/p}`, or `max|v_k|` for `p = ∞`.
pub fn lp_norm(v: &[f64], p: Exponent) -> f64 {
    match p {
        Exponent::Infinity => v.iter().fold(0.0, |m, x| m.max(x.abs())),
        Exponent::Finite(1.0) => v.iter().map(|x| x.abs()).sum(),
        Exponent::Finite(2.0) => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
        Exponent::Finite(p) => {
            // Scaled by the largest entry: |x|^p overflows for large p.
            let m = lp_norm(v, Exponent::Infinity);
            if m == 0.0 || !m.is_finite() {
                return m;
            }
            m * v.iter().map(|x| (x.abs() / m).powf(p)).sum::<f64>().powf(1.0 / p)
        }
    }
}

/// An element of `ℓ_p^N`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeqVec {
    coeffs: Vec<f64>,
    exponent: Exponent,
}

impl SeqVec {
    pub fn new(coeffs: Vec<f64>, exponent: Exponent) -> Self {
        Self { coeffs, exponent }
    }

    pub fn zeros(n: usize, exponent: Exponent) -> Self {
        Self::new(vec![0.0; n], exponent)
    }

    /// The unit vector `e_k` (0-based `k`).
    pub fn unit(n: usize, k: usize, exponent: Exponent) -> Self {
        let mut coeffs = vec![0.0; n];
        coeffs[k] = 1.0;
        Self::new(coeffs, exponent)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn exponent(&self) -> Exponent {
        self.exponent
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn norm(&self) -> f64 {
        lp_norm(&self.coeffs, self.exponent)
    }
}

/// An element of `ℓ_q^N`, the dual of `ℓ_p^N`, acting by coordinate sum.
#[derive(Clone, Debug, PartialEq)]
pub struct DualVec {
    coeffs: Vec<f64>,
    exponent: Exponent,
}

impl DualVec {
    /// `exponent` is the exponent of the dual space itself (`q`).
    pub fn new(coeffs: Vec<f64>, exponent: Exponent) -> Self {
        Self { coeffs, exponent }
    }

    /// The coordinate functional `e_k*` (0-based `k`).
    pub fn unit(n: usize, k: usize, exponent: Exponent) -> Self {
        let mut coeffs = vec![0.0; n];
        coeffs[k] = 1.0;
        Self::new(coeffs, exponent)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn exponent(&self) -> Exponent {
        self.exponent
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn norm(&self) -> f64 {
        lp_norm(&self.coeffs, self.exponent)
    }
}

/// The evaluation `f(x) = Σ f_k x_k`.
pub fn pair(f: &DualVec, x: &SeqVec) -> Result<f64> {
    dot(f.coeffs(), x.coeffs())
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            actual: b.len(),
        });
    }
    Ok(a.iter().zip(b).map(|(x, y)| x * y).sum())
}

/// A dense row-major array viewed as an operator `ℓ_p^cols → ℓ_q^rows`.
///
/// Rectangular arrays are accepted; the domain dimension is `cols`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorArray {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
    domain: Exponent,
    codomain: Exponent,
}

impl OperatorArray {
    pub fn new(
        rows: usize,
        cols: usize,
        entries: Vec<f64>,
        domain: Exponent,
        codomain: Exponent,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                actual: entries.len(),
            });
        }
        if let Some(pos) = entries.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFiniteEntry {
                row: pos / cols.max(1),
                col: pos % cols.max(1),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
            domain,
            codomain,
        })
    }

    pub fn identity(n: usize, domain: Exponent, codomain: Exponent) -> Self {
        Self::diagonal(&vec![1.0; n], domain, codomain)
    }

    pub fn diagonal(d: &[f64], domain: Exponent, codomain: Exponent) -> Self {
        let n = d.len();
        let mut entries = vec![0.0; n * n];
        for (i, v) in d.iter().enumerate() {
            entries[i * n + i] = *v;
        }
        Self {
            rows: n,
            cols: n,
            entries,
            domain,
            codomain,
        }
    }

    /// Builds an array whose `i`-th row is `rows[i]`.
    pub fn from_rows(rows: &[Vec<f64>], domain: Exponent, codomain: Exponent) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    actual: r.len(),
                });
            }
            entries.extend_from_slice(r);
        }
        Self::new(rows.len(), cols, entries, domain, codomain)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn domain(&self) -> Exponent {
        self.domain
    }

    pub fn codomain(&self) -> Exponent {
        self.codomain
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn with_exponents(mut self, domain: Exponent, codomain: Exponent) -> Self {
        self.domain = domain;
        self.codomain = codomain;
        self
    }

    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                actual: x.len(),
            });
        }
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &[f64]) -> Vec<f64> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `Aᵀ y`.
    pub(crate) fn apply_transpose_unchecked(&self, y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.cols];
        for (i, yi) in y.iter().enumerate() {
            if *yi == 0.0 {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                *o += a * yi;
            }
        }
        out
    }

    /// The transpose, viewed `ℓ_{q'} → ℓ_{p'}` (conjugate exponents swapped).
    pub fn transpose(&self) -> Self {
        let mut entries = vec![0.0; self.entries.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                entries[j * self.rows + i] = self.get(i, j);
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
            domain: self.codomain.conjugate(),
            codomain: self.domain.conjugate(),
        }
    }

    pub fn scaled(&self, alpha: f64) -> Self {
        Self {
            entries: self.entries.iter().map(|v| v * alpha).collect(),
            ..self.clone()
        }
    }

    /// True when every off-diagonal entry is exactly zero.
    pub fn is_diagonal(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j) == 0.0))
    }

    pub fn diagonal_entries(&self) -> Vec<f64> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    /// `max_{i,j} |A_ij − A_ji|`; infinite for non-square arrays.
    pub fn symmetry_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    /// `max_{i,j} |A_ij − B_ij|`.
    pub fn max_abs_diff(&self, other: &OperatorArray) -> Result<f64> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::LengthMismatch {
                expected: self.entries.len(),
                actual: other.entries.len(),
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }
}

/// Exact norm of `diag(d): ℓ_p^N → ℓ_q^N`.
///
/// For `p <= q` this is `max|d_i|`; for `p > q` it is `‖d‖_r` with
/// `1/r = 1/q − 1/p`.
pub fn diag_operator_norm(d: &[f64], p: Exponent, q: Exponent) -> Result<f64> {
    if d.is_empty() {
        return Err(Error::Empty("diagonal"));
    }
    if p <= q {
        return Ok(lp_norm(d, Exponent::Infinity));
    }
    let inv_r = q.reciprocal() - p.reciprocal();
    let r = if inv_r == 1.0 {
        Exponent::ONE
    } else {
        Exponent::new(1.0 / inv_r)?
    };
    Ok(lp_norm(d, r))
}
