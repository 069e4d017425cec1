//! Finite Hilbert frames and Schauder frame pairs.

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::linalg::SymmetricEigen;
use crate::spaces::{dot, lp_norm, pair, DualVec, OperatorArray, SeqVec};

/// Relative threshold below which the smallest frame-operator eigenvalue
/// counts as zero.
const DEFICIENCY_TOL: f64 = 1e-12;

/// A finite sequence of vectors in `R^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct HilbertFrame {
    dim: usize,
    vectors: Vec<Vec<f64>>,
}

impl HilbertFrame {
    pub fn new(vectors: Vec<Vec<f64>>) -> Result<Self> {
        let dim = vectors.first().ok_or(Error::Empty("frame"))?.len();
        if dim == 0 {
            return Err(Error::Empty("frame vector"));
        }
        for v in &vectors {
            if v.len() != dim {
                return Err(Error::LengthMismatch {
                    expected: dim,
                    actual: v.len(),
                });
            }
        }
        Ok(Self { dim, vectors })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    /// `Σ_j |⟨x, f_j⟩|²`.
    pub fn energy(&self, x: &[f64]) -> Result<f64> {
        self.vectors
            .iter()
            .map(|f| dot(f, x).map(|c| c * c))
            .sum()
    }
}

/// `S = Σ_j f_j f_jᵀ`, as an `ℓ_2 → ℓ_2` array.
///
/// Entry `(i, k)` and `(k, i)` are accumulated from the same products in the
/// same order, so the result is exactly symmetric.
pub fn frame_operator(frame: &HilbertFrame) -> OperatorArray {
    let d = frame.dim();
    let mut s = vec![0.0; d * d];
    for f in frame.vectors() {
        for i in 0..d {
            for k in 0..d {
                s[i * d + k] += f[i] * f[k];
            }
        }
    }
    OperatorArray::new(d, d, s, Exponent::TWO, Exponent::TWO).expect("finite by construction")
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrameBounds {
    /// Smallest eigenvalue of `S`, or 0 when the frame is deficient.
    pub lower: f64,
    pub upper: f64,
    /// Set when the vectors fail to span `R^d`.
    pub deficient: bool,
}

impl FrameBounds {
    /// `a = b` up to `tol` relative.
    pub fn is_tight(&self, tol: f64) -> bool {
        !self.deficient && (self.upper - self.lower) <= tol * self.upper
    }
}

/// Optimal frame bounds: the extreme eigenvalues of the frame operator.
pub fn frame_bounds(frame: &HilbertFrame) -> FrameBounds {
    let eig = SymmetricEigen::from_array(&frame_operator(frame)).expect("square by construction");
    let upper = eig.max();
    let lower = eig.min();
    let deficient = lower <= DEFICIENCY_TOL * upper.max(f64::MIN_POSITIVE);
    FrameBounds {
        lower: if deficient { 0.0 } else { lower },
        upper,
        deficient,
    }
}

/// The canonical dual vectors `S^{-1} f_j`.
pub fn canonical_dual(frame: &HilbertFrame) -> Result<Vec<Vec<f64>>> {
    let bounds = frame_bounds(frame);
    let eig = SymmetricEigen::from_array(&frame_operator(frame))?;
    if bounds.deficient {
        return Err(Error::SingularFrameOperator(eig.min()));
    }
    frame.vectors().iter().map(|f| eig.solve(f)).collect()
}

/// `Σ_j ⟨x, f_j⟩ S^{-1} f_j`.
pub fn canonical_dual_reconstruct(frame: &HilbertFrame, x: &[f64]) -> Result<Vec<f64>> {
    if x.len() != frame.dim() {
        return Err(Error::LengthMismatch {
            expected: frame.dim(),
            actual: x.len(),
        });
    }
    let duals = canonical_dual(frame)?;
    let mut out = vec![0.0; frame.dim()];
    for (f, g) in frame.vectors().iter().zip(&duals) {
        let c = dot(f, x)?;
        for (o, gi) in out.iter_mut().zip(g) {
            *o += c * gi;
        }
    }
    Ok(out)
}

/// Paired sequences `{x_j} ⊂ ℓ_p^N`, `{f_j} ⊂ ℓ_q^N`.
#[derive(Clone, Debug, PartialEq)]
pub struct FramePair {
    xs: Vec<SeqVec>,
    fs: Vec<DualVec>,
    exponent: Exponent,
    dim: usize,
}

impl FramePair {
    pub fn new(xs: Vec<SeqVec>, fs: Vec<DualVec>) -> Result<Self> {
        if xs.len() != fs.len() {
            return Err(Error::LengthMismatch {
                expected: xs.len(),
                actual: fs.len(),
            });
        }
        let first = xs.first().ok_or(Error::Empty("frame pair"))?;
        let (dim, exponent) = (first.len(), first.exponent());
        let dual = exponent.conjugate();
        for x in &xs {
            if x.len() != dim {
                return Err(Error::LengthMismatch {
                    expected: dim,
                    actual: x.len(),
                });
            }
            if x.exponent() != exponent {
                return Err(Error::ExponentMismatch {
                    expected: exponent.to_string(),
                    actual: x.exponent().to_string(),
                });
            }
        }
        for f in &fs {
            if f.len() != dim {
                return Err(Error::LengthMismatch {
                    expected: dim,
                    actual: f.len(),
                });
            }
            if f.exponent() != dual {
                return Err(Error::ExponentMismatch {
                    expected: dual.to_string(),
                    actual: f.exponent().to_string(),
                });
            }
        }
        Ok(Self {
            xs,
            fs,
            exponent,
            dim,
        })
    }

    /// Builds a pair from raw coordinate lists in `ℓ_p^N × ℓ_q^N`.
    pub fn from_coords(p: Exponent, xs: Vec<Vec<f64>>, fs: Vec<Vec<f64>>) -> Result<Self> {
        let q = p.conjugate();
        Self::new(
            xs.into_iter().map(|c| SeqVec::new(c, p)).collect(),
            fs.into_iter().map(|c| DualVec::new(c, q)).collect(),
        )
    }

    pub fn xs(&self) -> &[SeqVec] {
        &self.xs
    }

    pub fn fs(&self) -> &[DualVec] {
        &self.fs
    }

    pub fn exponent(&self) -> Exponent {
        self.exponent
    }

    pub fn dual_exponent(&self) -> Exponent {
        self.exponent.conjugate()
    }

    /// Number of frame elements.
    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// Truncation dimension `N`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `max_k ‖e_k − Σ_j f_j(e_k) x_j‖_p` over the coordinate vectors.
    pub fn basis_reconstruction_defect(&self) -> f64 {
        (0..self.dim)
            .map(|k| {
                let e = SeqVec::unit(self.dim, k, self.exponent);
                let r = partial_sum_reconstruct(self, &e, self.len()).expect("consistent pair");
                let diff: Vec<f64> = e.coeffs().iter().zip(r.coeffs()).map(|(a, b)| a - b).collect();
                lp_norm(&diff, self.exponent)
            })
            .fold(0.0, f64::max)
    }
}

/// `Σ_{j<=n} f_j(x) x_j`.
pub fn partial_sum_reconstruct(pair_: &FramePair, x: &SeqVec, n: usize) -> Result<SeqVec> {
    if n > pair_.len() {
        return Err(Error::CountOutOfRange {
            count: n,
            available: pair_.len(),
        });
    }
    if x.len() != pair_.dim() {
        return Err(Error::LengthMismatch {
            expected: pair_.dim(),
            actual: x.len(),
        });
    }
    if x.exponent() != pair_.exponent() {
        return Err(Error::ExponentMismatch {
            expected: pair_.exponent().to_string(),
            actual: x.exponent().to_string(),
        });
    }
    let mut out = vec![0.0; pair_.dim()];
    for (xj, fj) in pair_.xs().iter().zip(pair_.fs()).take(n) {
        let c = pair(fj, x)?;
        if c == 0.0 {
            continue;
        }
        for (o, v) in out.iter_mut().zip(xj.coeffs()) {
            *o += c * v;
        }
    }
    Ok(SeqVec::new(out, pair_.exponent()))
}

/// `(n, ‖x − Σ_{j<=n} f_j(x) x_j‖_p)` for `n = 1..=len`.
pub fn reconstruction_error_curve(pair_: &FramePair, x: &SeqVec) -> Result<Vec<(usize, f64)>> {
    (1..=pair_.len())
        .map(|n| {
            let r = partial_sum_reconstruct(pair_, x, n)?;
            let diff: Vec<f64> = x.coeffs().iter().zip(r.coeffs()).map(|(a, b)| a - b).collect();
            Ok((n, lp_norm(&diff, pair_.exponent())))
        })
        .collect()
}

/// Two-column CSV (`n,defect`) with a header row.
pub fn curve_to_csv(header: (&str, &str), curve: &[(usize, f64)]) -> String {
    let mut out = format!("{},{}\n", header.0, header.1);
    for (n, v) in curve {
        out.push_str(&format!("{n},{}\n", crate::report::fmt_float(*v)));
    }
    out
}
