//! Dense symmetric eigendecomposition by cyclic Jacobi rotations.

use crate::error::{Error, Result};
use crate::spaces::OperatorArray;

const JACOBI_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Eigenpairs of a symmetric matrix, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    n: usize,
    values: Vec<f64>,
    /// Column-major: column `k` is the eigenvector for `values[k]`.
    vectors: Vec<f64>,
}

impl SymmetricEigen {
    /// Decomposes the symmetric part `(A + Aᵀ)/2` of a row-major `n×n` array.
    pub fn new(a: &[f64], n: usize) -> Result<Self> {
        if a.len() != n * n {
            return Err(Error::LengthMismatch {
                expected: n * n,
                actual: a.len(),
            });
        }
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] = 0.5 * (a[i * n + j] + a[j * n + i]);
            }
        }
        let mut v = vec![0.0; n * n];
        for i in 0..n {
            v[i * n + i] = 1.0;
        }

        let scale = m.iter().map(|x| x * x).sum::<f64>().sqrt();
        for _ in 0..MAX_SWEEPS {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| m[i * n + j] * m[i * n + j])
                .sum::<f64>()
                .sqrt();
            if off <= JACOBI_TOL * scale * 1e-3 || off == 0.0 {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = m[p * n + q];
                    if apq == 0.0 {
                        continue;
                    }
                    let app = m[p * n + p];
                    let aqq = m[q * n + q];
                    let theta = (aqq - app) / (2.0 * apq);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let t = if theta == 0.0 { 1.0 } else { t };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let mkp = m[k * n + p];
                        let mkq = m[k * n + q];
                        m[k * n + p] = c * mkp - s * mkq;
                        m[k * n + q] = s * mkp + c * mkq;
                    }
                    for k in 0..n {
                        let mpk = m[p * n + k];
                        let mqk = m[q * n + k];
                        m[p * n + k] = c * mpk - s * mqk;
                        m[q * n + k] = s * mpk + c * mqk;
                    }
                    m[p * n + q] = 0.0;
                    m[q * n + p] = 0.0;
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| m[i * n + i].total_cmp(&m[j * n + j]));
        let values = order.iter().map(|&i| m[i * n + i]).collect();
        let mut vectors = vec![0.0; n * n];
        for (col, &src) in order.iter().enumerate() {
            for k in 0..n {
                vectors[col * n + k] = v[k * n + src];
            }
        }
        Ok(Self { n, values, vectors })
    }

    pub fn from_array(a: &OperatorArray) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::LengthMismatch {
                expected: a.rows(),
                actual: a.cols(),
            });
        }
        Self::new(a.entries(), a.rows())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn vector(&self, k: usize) -> &[f64] {
        &self.vectors[k * self.n..(k + 1) * self.n]
    }

    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(f64::NAN)
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(f64::NAN)
    }

    /// Solves `M y = b` through the decomposition, `y = Σ_k (v_kᵀb / λ_k) v_k`.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        if b.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: b.len(),
            });
        }
        let lambda_min = self.values.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
        if self.n > 0 && lambda_min <= f64::EPSILON * self.max().abs().max(f64::MIN_POSITIVE) {
            return Err(Error::SingularFrameOperator(lambda_min));
        }
        let mut y = vec![0.0; self.n];
        for k in 0..self.n {
            let v = self.vector(k);
            let coef: f64 = v.iter().zip(b).map(|(a, c)| a * c).sum::<f64>() / self.values[k];
            for (yi, vi) in y.iter_mut().zip(v) {
                *yi += coef * vi;
            }
        }
        Ok(y)
    }
}

/// Singular values of an array, ascending, via the eigenvalues of `AᵀA`.
pub fn singular_values(a: &OperatorArray) -> Vec<f64> {
    let (m, n) = (a.rows(), a.cols());
    let mut gram = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let s: f64 = (0..m).map(|k| a.get(k, i) * a.get(k, j)).sum();
            gram[i * n + j] = s;
            gram[j * n + i] = s;
        }
    }
    SymmetricEigen::new(&gram, n)
        .map(|e| e.values().iter().map(|l| l.max(0.0).sqrt()).collect())
        .unwrap_or_default()
}
