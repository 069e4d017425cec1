//! Hilbert-Schauder frame operators `S: X → X*` with `S x_j = f_j`, and the
//! checks that go with them: symmetry, positivity, the quadratic-form
//! identity `(Sx)(x) = Σ_j f_j(x)²`, the Bessel bound, factorization
//! `S = AᵀA` through `ℓ_2`, uniqueness, local duality and the Hilbert
//! embedding diagnostic.
//!
//! All checks run at a finite truncation. Injectivity in particular is only
//! reported (smallest singular value per `N`), never decided.

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::frames::FramePair;
use crate::linalg::{singular_values, SymmetricEigen};
use crate::norm_estimate::{estimate_min_gain, operator_norm_estimate, EstimatorConfig};
use crate::rng;
use crate::spaces::{diag_operator_norm, lp_norm, pair, OperatorArray, SeqVec};

/// Default tolerance for `‖S x_j − f_j‖_q`.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Sample streams, one per battery, so batteries can run in any order.
const STRUCTURE_STREAM: u64 = 1;
const EQ1_STREAM: u64 = 2;
const BESSEL_STREAM: u64 = 3;

#[derive(Clone, Debug, PartialEq)]
pub struct HsfOperator {
    op: OperatorArray,
    pair: FramePair,
    tol: f64,
    defining_defect: f64,
}

impl HsfOperator {
    pub fn op(&self) -> &OperatorArray {
        &self.op
    }

    pub fn pair(&self) -> &FramePair {
        &self.pair
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// `max_j ‖S x_j − f_j‖_q` recorded at construction.
    pub fn defining_defect(&self) -> f64 {
        self.defining_defect
    }

    pub fn dim(&self) -> usize {
        self.pair.dim()
    }

    pub fn p(&self) -> Exponent {
        self.pair.exponent()
    }

    pub fn q(&self) -> Exponent {
        self.pair.dual_exponent()
    }

    /// The exact `‖S‖_{p→q}` when `S` is diagonal, else `None`.
    pub fn exact_norm(&self) -> Option<f64> {
        if self.op.is_diagonal() {
            diag_operator_norm(&self.op.diagonal_entries(), self.p(), self.q()).ok()
        } else {
            None
        }
    }

    /// `(bound, is_exact)`: the exact diagonal norm, or a seeded estimate
    /// that is only a lower bound for `‖S‖`.
    pub fn norm_bound(&self, cfg: &EstimatorConfig) -> Result<(f64, bool)> {
        match self.exact_norm() {
            Some(n) => Ok((n, true)),
            None => Ok((operator_norm_estimate(&self.op, cfg.restarts, cfg.seed)?, false)),
        }
    }
}

/// Accepts `op` as the HSf-operator of `pair` when `‖S x_j − f_j‖_q <= tol`
/// for every `j`.
pub fn make_hsf(pair_: FramePair, op: OperatorArray, tol: f64) -> Result<HsfOperator> {
    let (n, p, q) = (pair_.dim(), pair_.exponent(), pair_.dual_exponent());
    if op.rows() != n || op.cols() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: op.rows().max(op.cols()),
        });
    }
    let op = op.with_exponents(p, q);
    let mut worst = 0.0f64;
    for (j, (x, f)) in pair_.xs().iter().zip(pair_.fs()).enumerate() {
        let sx = op.apply(x.coeffs())?;
        let diff: Vec<f64> = sx.iter().zip(f.coeffs()).map(|(a, b)| a - b).collect();
        let defect = lp_norm(&diff, q);
        if defect.is_nan() || defect > tol {
            return Err(Error::DefiningProperty {
                index: j + 1,
                defect,
                tol,
            });
        }
        worst = worst.max(defect);
    }
    Ok(HsfOperator {
        op,
        pair: pair_,
        tol,
        defining_defect: worst,
    })
}

/// `Σ_j f_j f_jᵀ`, the only candidate HSf-operator for a Schauder frame.
pub fn pair_operator(pair_: &FramePair) -> OperatorArray {
    let n = pair_.dim();
    let mut s = vec![0.0; n * n];
    for f in pair_.fs() {
        let c = f.coeffs();
        for i in 0..n {
            if c[i] == 0.0 {
                continue;
            }
            for k in 0..n {
                s[i * n + k] += c[i] * c[k];
            }
        }
    }
    OperatorArray::new(n, n, s, pair_.exponent(), pair_.dual_exponent()).expect("finite by construction")
}

/// Verifies `pair` as an HS-frame at this truncation: it must reconstruct
/// every coordinate vector, and `Σ_j f_j f_jᵀ` must map `x_j` to `f_j`.
pub fn verify_hs_frame(pair_: &FramePair, tol: f64) -> Result<HsfOperator> {
    let defect = pair_.basis_reconstruction_defect();
    if defect.is_nan() || defect > tol {
        return Err(Error::NotSchauderFrame { defect, tol });
    }
    make_hsf(pair_.clone(), pair_operator(pair_), tol)
}

#[derive(Clone, Debug, PartialEq)]
pub struct StructureReport {
    /// `max |S_ij − S_ji|`.
    pub symmetry_defect: f64,
    /// `min xᵀSx / ‖x‖₂²` over the samples.
    pub sampled_min_ratio: f64,
    /// Smallest eigenvalue of `(S + Sᵀ)/2`; the binding positivity check.
    pub min_eigenvalue: f64,
    /// Smallest singular value of `S` at this truncation. Says nothing about
    /// injectivity in the limit.
    pub sigma_min: f64,
    pub symmetric: bool,
    pub positive: bool,
}

pub fn check_structure(h: &HsfOperator, samples: usize, seed: u64) -> Result<StructureReport> {
    let s = h.op();
    let symmetry_defect = s.symmetry_defect();
    let eig = SymmetricEigen::from_array(s)?;
    let min_eigenvalue = eig.min();
    let sigma_min = singular_values(s).first().copied().unwrap_or(0.0);
    let mut sampled_min_ratio = f64::INFINITY;
    for x in rng::normal_samples(seed, STRUCTURE_STREAM, samples, h.dim()) {
        let sx = s.apply(&x)?;
        let form: f64 = sx.iter().zip(&x).map(|(a, b)| a * b).sum();
        let nx: f64 = x.iter().map(|v| v * v).sum();
        if nx > 0.0 {
            sampled_min_ratio = sampled_min_ratio.min(form / nx);
        }
    }
    Ok(StructureReport {
        symmetry_defect,
        sampled_min_ratio,
        min_eigenvalue,
        sigma_min,
        symmetric: symmetry_defect <= h.tol(),
        positive: min_eigenvalue >= -h.tol(),
    })
}

/// `(xᵀSx, Σ_j f_j(x)²)`.
pub fn quadratic_form_identity(h: &HsfOperator, x: &SeqVec) -> Result<(f64, f64)> {
    let sx = h.op().apply(x.coeffs())?;
    let lhs: f64 = sx.iter().zip(x.coeffs()).map(|(a, b)| a * b).sum();
    let rhs = h
        .pair()
        .fs()
        .iter()
        .map(|f| pair(f, x).map(|c| c * c))
        .sum::<Result<f64>>()?;
    Ok((lhs, rhs))
}

/// `max |lhs − rhs| / (1 + |lhs|)` over seeded random `x`.
pub fn eq1_max_relative_error(h: &HsfOperator, samples: usize, seed: u64) -> Result<f64> {
    let mut worst = 0.0f64;
    for c in rng::normal_samples(seed, EQ1_STREAM, samples, h.dim()) {
        let (lhs, rhs) = quadratic_form_identity(h, &SeqVec::new(c, h.p()))?;
        worst = worst.max((lhs - rhs).abs() / (1.0 + lhs.abs()));
    }
    Ok(worst)
}

/// `Σ_j f_j(x)² / ‖x‖_p²`.
pub fn bessel_ratio(h: &HsfOperator, x: &SeqVec) -> Result<f64> {
    let energy = h
        .pair()
        .fs()
        .iter()
        .map(|f| pair(f, x).map(|c| c * c))
        .sum::<Result<f64>>()?;
    let n = x.norm();
    Ok(energy / (n * n))
}

#[derive(Clone, Debug, PartialEq)]
pub struct BesselReport {
    pub max_ratio: f64,
    pub min_ratio: f64,
    pub mean_ratio: f64,
    pub s_norm_bound: f64,
    /// False when the bound is an estimate (a lower bound for `‖S‖`).
    pub s_norm_is_exact: bool,
    /// `Some(max_ratio <= bound)` with an exact bound, `None` otherwise.
    pub holds: Option<bool>,
}

pub fn bessel_bound_check(
    h: &HsfOperator,
    samples: usize,
    seed: u64,
    cfg: &EstimatorConfig,
) -> Result<BesselReport> {
    let (bound, exact) = h.norm_bound(cfg)?;
    let mut ratios = Vec::with_capacity(samples);
    for c in rng::normal_samples(seed, BESSEL_STREAM, samples, h.dim()) {
        let x = SeqVec::new(c, h.p());
        if x.norm() > 0.0 {
            ratios.push(bessel_ratio(h, &x)?);
        }
    }
    let max_ratio = ratios.iter().copied().fold(0.0, f64::max);
    let min_ratio = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let mean_ratio = ratios.iter().sum::<f64>() / ratios.len().max(1) as f64;
    Ok(BesselReport {
        max_ratio,
        min_ratio,
        mean_ratio,
        s_norm_bound: bound,
        s_norm_is_exact: exact,
        holds: exact.then_some(max_ratio <= bound * (1.0 + 1e-12)),
    })
}

/// `A: ℓ_p^N → ℓ_2^J`, `x ↦ (f_j(x))_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisOperator {
    array: OperatorArray,
}

impl AnalysisOperator {
    pub fn array(&self) -> &OperatorArray {
        &self.array
    }

    /// The pre-frame operator `Aᵀ: ℓ_2^J → ℓ_q^N`.
    pub fn pre_frame(&self) -> OperatorArray {
        self.array.transpose()
    }

    pub fn norm_estimate(&self, cfg: &EstimatorConfig) -> Result<f64> {
        operator_norm_estimate(&self.array, cfg.restarts, cfg.seed)
    }

    /// Upper estimate of `min ‖Ax‖₂` over the `ℓ_p` unit sphere.
    pub fn lower_bound_estimate(&self, cfg: &EstimatorConfig) -> Result<f64> {
        estimate_min_gain(&self.array, cfg).map(|e| e.value)
    }
}

pub fn analysis_operator(h: &HsfOperator) -> AnalysisOperator {
    let rows: Vec<Vec<f64>> = h.pair().fs().iter().map(|f| f.coeffs().to_vec()).collect();
    let array = OperatorArray::from_rows(&rows, h.p(), Exponent::TWO).expect("consistent pair");
    AnalysisOperator { array }
}

/// `max |S − AᵀA|` elementwise.
pub fn factorization_check(h: &HsfOperator) -> f64 {
    h.op()
        .max_abs_diff(&pair_operator(h.pair()))
        .expect("same shape")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeKind {
    /// Both pairs share `{x_j}`; the functionals are predicted equal.
    SharedVectors,
    /// Both pairs share `{f_j}`; the vectors are predicted equal.
    SharedFunctionals,
}

#[derive(Clone, Debug, PartialEq)]
pub enum UniquenessReport {
    Applicable {
        /// `max_j ‖f_{1,j} − f_{2,j}‖_q` or `max_j ‖x_{1,j} − x_{2,j}‖_p`.
        sequence_defect: f64,
        /// `max |S₁ − S₂|`.
        operator_defect: f64,
    },
    Inapplicable(String),
}

pub fn uniqueness_probe(
    pair1: &FramePair,
    pair2: &FramePair,
    kind: ProbeKind,
    tol: f64,
) -> UniquenessReport {
    if pair1.len() != pair2.len() || pair1.dim() != pair2.dim() {
        return UniquenessReport::Inapplicable("pairs have different shapes".into());
    }
    let vec_defect = max_seq_defect(
        pair1.xs().iter().map(|x| x.coeffs()),
        pair2.xs().iter().map(|x| x.coeffs()),
        pair1.exponent(),
    );
    let fun_defect = max_seq_defect(
        pair1.fs().iter().map(|f| f.coeffs()),
        pair2.fs().iter().map(|f| f.coeffs()),
        pair1.dual_exponent(),
    );
    let (shared, predicted) = match kind {
        ProbeKind::SharedVectors => (vec_defect, fun_defect),
        ProbeKind::SharedFunctionals => (fun_defect, vec_defect),
    };
    if shared > tol {
        return UniquenessReport::Inapplicable(format!(
            "shared sequence differs by {shared:e}"
        ));
    }
    let h1 = match verify_hs_frame(pair1, tol) {
        Ok(h) => h,
        Err(e) => return UniquenessReport::Inapplicable(format!("first pair: {e}")),
    };
    let h2 = match verify_hs_frame(pair2, tol) {
        Ok(h) => h,
        Err(e) => return UniquenessReport::Inapplicable(format!("second pair: {e}")),
    };
    UniquenessReport::Applicable {
        sequence_defect: predicted,
        operator_defect: h1.op().max_abs_diff(h2.op()).expect("same shape"),
    }
}

fn max_seq_defect<'a>(
    a: impl Iterator<Item = &'a [f64]>,
    b: impl Iterator<Item = &'a [f64]>,
    p: Exponent,
) -> f64 {
    a.zip(b)
        .map(|(u, v)| {
            let d: Vec<f64> = u.iter().zip(v).map(|(x, y)| x - y).collect();
            lp_norm(&d, p)
        })
        .fold(0.0, f64::max)
}

/// `(m, ‖f_n − Σ_{j<=m} f_n(x_j) f_j‖_q)` for `m = 1..=len`, `n` 1-based.
pub fn local_duality_curve(h: &HsfOperator, n: usize) -> Result<Vec<(usize, f64)>> {
    let pair_ = h.pair();
    if n == 0 || n > pair_.len() {
        return Err(Error::IndexOutOfRange {
            index: n,
            len: pair_.len(),
        });
    }
    let target = &pair_.fs()[n - 1];
    let mut acc = vec![0.0; pair_.dim()];
    let mut curve = Vec::with_capacity(pair_.len());
    for (m, (xj, fj)) in pair_.xs().iter().zip(pair_.fs()).enumerate() {
        let c = pair(target, xj)?;
        if c != 0.0 {
            for (a, v) in acc.iter_mut().zip(fj.coeffs()) {
                *a += c * v;
            }
        }
        let diff: Vec<f64> = target.coeffs().iter().zip(&acc).map(|(a, b)| a - b).collect();
        curve.push((m + 1, lp_norm(&diff, pair_.dual_exponent())));
    }
    Ok(curve)
}

/// `(N, min_{‖x‖_p = 1} ‖Ax‖₂)` for each member of the family.
///
/// A curve bounded away from zero is evidence that `A` embeds the space
/// into `ℓ_2`; a decaying curve is evidence against. There is no threshold.
pub fn hilbert_embedding_diagnostic(
    family: &[HsfOperator],
    cfg: &EstimatorConfig,
) -> Result<Vec<(usize, f64)>> {
    family
        .iter()
        .map(|h| Ok((h.dim(), analysis_operator(h).lower_bound_estimate(cfg)?)))
        .collect()
}
