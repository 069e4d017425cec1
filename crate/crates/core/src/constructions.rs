//! The shipped constructions: the unit-vector basis of `ℓ_p`, the Haar
//! basis of `L^p[0,1]`, the `ℓ_1` pair whose flip is not a Schauder frame,
//! the coordinate-map table for `ℓ_q` with `q > 2`, and two finite Hilbert
//! frames turned into HS-frames through their canonical duals.

use std::fmt;
use std::str::FromStr;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::frames::{canonical_dual, frame_operator, FramePair, HilbertFrame};
use crate::haar::{dual_atom, haar_hs_operator, normalized_atom, orthonormal_coefficients, HaarIndex};
use crate::hs::{make_hsf, HsfOperator, DEFAULT_TOL};
use crate::norm_estimate::{operator_norm_estimate, EstimatorConfig};
use crate::rng;
use crate::spaces::OperatorArray;
use crate::tailvec::TailVec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConstructionId {
    LpBasis,
    Haar,
    L1Counterexample,
    LqDemo,
    MercedesBenz,
    HilbertFrame,
}

impl ConstructionId {
    pub const ALL: [ConstructionId; 6] = [
        ConstructionId::LpBasis,
        ConstructionId::Haar,
        ConstructionId::L1Counterexample,
        ConstructionId::LqDemo,
        ConstructionId::MercedesBenz,
        ConstructionId::HilbertFrame,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConstructionId::LpBasis => "lp_basis",
            ConstructionId::Haar => "haar",
            ConstructionId::L1Counterexample => "l1_counterexample",
            ConstructionId::LqDemo => "lq_demo",
            ConstructionId::MercedesBenz => "mercedes_benz",
            ConstructionId::HilbertFrame => "hilbert_frame",
        }
    }
}

impl fmt::Display for ConstructionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConstructionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown construction {s:?}")))
    }
}

fn unit_coords(n: usize, k: usize, scale: f64) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[k] = scale;
    v
}

/// `x_n = e_n`, `f_n = e_n*`, `S` the identity viewed `ℓ_p^N → ℓ_q^N`.
pub fn lp_unit_basis_hs(n: usize, p: Exponent) -> Result<(FramePair, HsfOperator)> {
    if p > Exponent::TWO {
        return Err(Error::ExponentOutOfRange {
            p: p.to_string(),
            range: "[1, 2]",
        });
    }
    if n == 0 {
        return Err(Error::Empty("lp basis"));
    }
    let coords: Vec<Vec<f64>> = (0..n).map(|k| unit_coords(n, k, 1.0)).collect();
    let pair_ = FramePair::from_coords(p, coords.clone(), coords)?;
    let h = make_hsf(pair_.clone(), OperatorArray::identity(n, p, p.conjugate()), DEFAULT_TOL)?;
    Ok((pair_, h))
}

/// The first `2^level` Haar atoms of `L^p[0,1]`, `1 < p <= 2`, in
/// orthonormal-Haar coordinates: `x_n = |I_n|^{1/2-1/p} e_n` represents
/// `|I_n|^{-1/p} h_n` and `f_n = |I_n|^{1/2-1/q} e_n` represents
/// `|I_n|^{-1/q} h_n` acting by integration.
pub fn haar_hs_basis(level: u32, p: Exponent) -> Result<(FramePair, HsfOperator)> {
    let s = haar_hs_operator(level, p)?;
    let q = p.conjugate();
    let dim = 1usize << level;
    let mut xs = Vec::with_capacity(dim);
    let mut fs = Vec::with_capacity(dim);
    for n in 1..=dim {
        let scale = HaarIndex::new(n)?.support_scale() as f64;
        xs.push(unit_coords(dim, n - 1, (-scale * (0.5 - p.reciprocal())).exp2()));
        fs.push(unit_coords(dim, n - 1, (-scale * (0.5 - q.reciprocal())).exp2()));
    }
    let pair_ = FramePair::from_coords(p, xs, fs)?;
    let h = make_hsf(pair_.clone(), s, DEFAULT_TOL)?;
    Ok((pair_, h))
}

/// The Haar pair of [`haar_hs_basis`], assembled instead from the atoms as
/// step functions at `repr_level >= level`, through their orthonormal-Haar
/// coefficients.
pub fn haar_pair_from_atoms(level: u32, p: Exponent, repr_level: u32) -> Result<FramePair> {
    if repr_level < level {
        return Err(Error::LevelTooCoarse {
            n: 1usize << level,
            level: repr_level,
            required: level,
        });
    }
    let q = p.conjugate();
    let dim = 1usize << level;
    let mut xs = Vec::with_capacity(dim);
    let mut fs = Vec::with_capacity(dim);
    for n in 1..=dim {
        let idx = HaarIndex::new(n)?;
        let mut x = orthonormal_coefficients(&normalized_atom(idx, p, repr_level)?)?;
        let mut f = orthonormal_coefficients(&dual_atom(idx, q, repr_level)?)?;
        x.truncate(dim);
        f.truncate(dim);
        xs.push(x);
        fs.push(f);
    }
    FramePair::from_coords(p, xs, fs)
}

/// Three unit vectors at 120° in `ℝ²`; tight with bound `3/2`.
pub fn mercedes_benz() -> HilbertFrame {
    let h = 3f64.sqrt() / 2.0;
    HilbertFrame::new(vec![vec![0.0, 1.0], vec![-h, -0.5], vec![h, -0.5]]).expect("fixed frame")
}

/// `count` standard Gaussian vectors in `ℝ^dim`.
pub fn random_hilbert_frame(dim: usize, count: usize, seed: u64) -> Result<HilbertFrame> {
    HilbertFrame::new(rng::normal_samples(seed, 0, count, dim))
}

/// The HS-frame `{S⁻¹f_j, f_j}` of a Hilbert frame, `S` its frame operator.
pub fn hilbert_frame_hs(frame: &HilbertFrame) -> Result<(FramePair, HsfOperator)> {
    let xs = canonical_dual(frame)?;
    let pair_ = FramePair::from_coords(Exponent::TWO, xs, frame.vectors().to_vec())?;
    let h = make_hsf(pair_.clone(), frame_operator(frame), DEFAULT_TOL)?;
    Ok((pair_, h))
}

/// The pair in `ℓ_1 × ℓ_∞` with `x_{2k-1} = x_{2k} = e_k` and
/// `f_1 = 𝟙`, `f_2 = e_1* − 𝟙`, `f_{2k-1} = e_k* − e_1*/2^k`,
/// `f_{2k} = e_1*/2^k` for `k >= 2`, truncated to `2m` elements.
#[derive(Clone, Debug, PartialEq)]
pub struct L1Counterexample {
    m: usize,
    fs: Vec<TailVec>,
}

/// `2^k` must fit a dyadic shift.
const MAX_PAIRS: usize = 120;

impl L1Counterexample {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 || m > MAX_PAIRS {
            return Err(Error::CountOutOfRange {
                count: m,
                available: MAX_PAIRS,
            });
        }
        let one = TailVec::constant(Dyadic::ONE);
        let e1 = TailVec::coordinate(1);
        let mut fs = vec![one.clone(), e1.sub(&one)];
        for k in 2..=m {
            let w = Dyadic::recip_pow2(k as u32);
            fs.push(TailVec::coordinate(k).sub(&e1.scale(w)));
            fs.push(e1.scale(w));
        }
        Ok(Self { m, fs })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of frame elements, `2m`.
    pub fn len(&self) -> usize {
        self.fs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fs.is_empty()
    }

    /// `x_j` is `e_{⌈j/2⌉}`; returns that 1-based coordinate index.
    pub fn vector_index(j: usize) -> usize {
        j.div_ceil(2)
    }

    /// `f_j`, 1-based.
    pub fn functional(&self, j: usize) -> &TailVec {
        &self.fs[j - 1]
    }

    pub fn functionals(&self) -> &[TailVec] {
        &self.fs
    }

    /// `Σ_{j<=n} f_j(x) x_j` for finitely supported `x` (length `<= m`).
    pub fn partial_sum(&self, x: &[Dyadic], n: usize) -> Vec<Dyadic> {
        let mut out = vec![Dyadic::ZERO; self.m.max(x.len())];
        for (j, f) in self.fs.iter().enumerate().take(n) {
            out[Self::vector_index(j + 1) - 1] = out[Self::vector_index(j + 1) - 1] + f.pair(x);
        }
        out
    }

    /// `‖e_k − Σ_{j<=n} f_j(e_k) x_j‖_1`, `k` 1-based.
    pub fn reconstruction_defect(&self, k: usize, n: usize) -> Dyadic {
        let mut ek = vec![Dyadic::ZERO; k];
        ek[k - 1] = Dyadic::ONE;
        let s = self.partial_sum(&ek, n);
        let len = s.len().max(k);
        (0..len)
            .map(|i| {
                let a = ek.get(i).copied().unwrap_or(Dyadic::ZERO);
                let b = s.get(i).copied().unwrap_or(Dyadic::ZERO);
                (a - b).abs()
            })
            .sum()
    }

    /// `Σ_{j<=n} g(x_j) f_j` for a functional `g`: the expansion of `g` in the
    /// flipped pair.
    pub fn dual_partial_sum(&self, g: &TailVec, n: usize) -> TailVec {
        self.fs
            .iter()
            .enumerate()
            .take(n)
            .fold(TailVec::zero(), |acc, (j, f)| {
                acc.add(&f.scale(g.get(Self::vector_index(j + 1))))
            })
    }

    /// `‖g − Σ_{j<=n} g(x_j) f_j‖_∞`.
    pub fn dual_expansion_defect(&self, g: &TailVec, n: usize) -> Dyadic {
        g.sub(&self.dual_partial_sum(g, n)).sup_norm()
    }

    /// The pair in `ℓ_1^m × ℓ_∞^m`, functionals cut to their first `m`
    /// coordinates.
    pub fn to_frame_pair(&self) -> Result<FramePair> {
        let xs = (1..=self.len())
            .map(|j| unit_coords(self.m, Self::vector_index(j) - 1, 1.0))
            .collect();
        let fs = self.fs.iter().map(|f| f.truncate_f64(self.m)).collect();
        FramePair::from_coords(Exponent::ONE, xs, fs)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LqRow {
    pub q: Exponent,
    pub p: Exponent,
    pub n: usize,
    /// `N^{1/p − 1/q}`.
    pub exact: f64,
    pub estimate: f64,
}

/// Norms of the coordinate map `ℓ_q^N → ℓ_p^N`, `e_n ↦ e_n*`, `p` conjugate
/// to `q`.
///
/// This map is the natural candidate for an HSf-operator of the unit-vector
/// basis of `ℓ_q`: it sends `x_n = e_n` to `f_n = e_n*` with
/// `liminf ‖f_n‖ > 0`. Its norm grows without bound in `N`.
pub fn lq_nonexistence_demo(qs: &[Exponent], ns: &[usize], cfg: &EstimatorConfig) -> Result<Vec<LqRow>> {
    let mut rows = Vec::with_capacity(qs.len() * ns.len());
    for &q in qs {
        if q <= Exponent::TWO {
            return Err(Error::ExponentOutOfRange {
                p: q.to_string(),
                range: "(2, inf]",
            });
        }
        let p = q.conjugate();
        for &n in ns {
            if n == 0 {
                return Err(Error::Empty("lq demo dimension"));
            }
            let exact = (n as f64).powf(p.reciprocal() - q.reciprocal());
            let estimate = operator_norm_estimate(&OperatorArray::identity(n, q, p), cfg.restarts, cfg.seed)?;
            rows.push(LqRow { q, p, n, exact, estimate });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{frame_bounds, partial_sum_reconstruct};
    use crate::hs::{factorization_check, verify_hs_frame};
    use crate::spaces::{diag_operator_norm, pair, SeqVec};

    fn e(p: f64) -> Exponent {
        Exponent::new(p).unwrap()
    }

    fn d(num: i128, shift: u32) -> Dyadic {
        Dyadic::new(num, shift)
    }

    #[test]
    fn ids_round_trip() {
        for c in ConstructionId::ALL {
            assert_eq!(c.as_str().parse::<ConstructionId>().unwrap(), c);
        }
        assert!("embedding".parse::<ConstructionId>().is_err());
    }

    #[test]
    fn lp_basis_examples() {
        for p in [1.0, 1.5, 2.0] {
            let (pair_, h) = lp_unit_basis_hs(3, e(p)).unwrap();
            assert_eq!(h.op(), &OperatorArray::identity(3, e(p), e(p).conjugate()));
            assert_eq!(h.exact_norm(), Some(1.0));
            assert_eq!(pair_.basis_reconstruction_defect(), 0.0);
        }
        let (_, h1) = lp_unit_basis_hs(3, Exponent::ONE).unwrap();
        assert_eq!(h1.q(), Exponent::Infinity);
        assert!(lp_unit_basis_hs(3, e(3.0)).is_err());
    }

    #[test]
    fn haar_basis_examples() {
        let (_, h) = haar_hs_basis(2, Exponent::TWO).unwrap();
        assert_eq!(h.op(), &OperatorArray::identity(4, Exponent::TWO, Exponent::TWO));

        let (pair_, h) = haar_hs_basis(3, e(1.5)).unwrap();
        assert!(h.defining_defect() <= 1e-12);
        assert!(factorization_check(&h) <= 1e-12);
        assert!(pair_.basis_reconstruction_defect() <= 1e-12);
        // x_2 pairs with f_2 to exactly one.
        assert!((pair(&pair_.fs()[1], &pair_.xs()[1]).unwrap() - 1.0).abs() < 1e-15);
        assert!(verify_hs_frame(&pair_, DEFAULT_TOL).is_ok());
        assert!(haar_hs_basis(2, Exponent::ONE).is_err());
        assert!(haar_hs_basis(2, e(2.5)).is_err());
    }

    #[test]
    fn haar_pair_matches_atom_assembly() {
        let p = e(1.5);
        let (direct, _) = haar_hs_basis(3, p).unwrap();
        for repr in [3, 4, 6] {
            let assembled = haar_pair_from_atoms(3, p, repr).unwrap();
            for (a, b) in direct.xs().iter().zip(assembled.xs()) {
                for (u, v) in a.coeffs().iter().zip(b.coeffs()) {
                    assert!((u - v).abs() <= 1e-12);
                }
            }
            for (a, b) in direct.fs().iter().zip(assembled.fs()) {
                for (u, v) in a.coeffs().iter().zip(b.coeffs()) {
                    assert!((u - v).abs() <= 1e-12);
                }
            }
        }
        assert!(haar_pair_from_atoms(3, p, 2).is_err());
    }

    #[test]
    fn mercedes_benz_is_tight() {
        let f = mercedes_benz();
        let b = frame_bounds(&f);
        assert!((b.lower - 1.5).abs() < 1e-12 && (b.upper - 1.5).abs() < 1e-12);
        let (pair_, h) = hilbert_frame_hs(&f).unwrap();
        assert!(h.defining_defect() <= 1e-12);
        assert!(pair_.basis_reconstruction_defect() <= 1e-12);
    }

    #[test]
    fn random_hilbert_frame_hs() {
        let f = random_hilbert_frame(4, 8, 3).unwrap();
        let (pair_, h) = hilbert_frame_hs(&f).unwrap();
        assert!(h.defining_defect() <= 1e-10);
        assert!(pair_.basis_reconstruction_defect() <= 1e-10);
        assert!(factorization_check(&h) <= 1e-12);
        assert_eq!(random_hilbert_frame(4, 8, 3).unwrap(), f);
    }

    #[test]
    fn counterexample_functionals() {
        let c = L1Counterexample::new(2).unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(c.functional(1), &TailVec::constant(Dyadic::ONE));
        assert_eq!(c.functional(2), &TailVec::new(vec![Dyadic::ZERO], d(-1, 0)));
        assert_eq!(c.functional(3), &TailVec::new(vec![d(-1, 2), Dyadic::ONE], Dyadic::ZERO));
        assert_eq!(c.functional(4), &TailVec::new(vec![d(1, 2)], Dyadic::ZERO));
        assert!(L1Counterexample::new(0).is_err());
    }

    #[test]
    fn counterexample_reconstruction() {
        let c = L1Counterexample::new(20).unwrap();
        let e2 = [Dyadic::ZERO, Dyadic::ONE];
        assert_eq!(c.partial_sum(&e2, 4)[..2], e2);
        for k in 1..=20 {
            for n in (2 * k..=40).step_by(2) {
                assert!(c.reconstruction_defect(k, n).is_zero(), "k={k} n={n}");
            }
        }
        for n in (2..=40).step_by(2) {
            assert!(c.reconstruction_defect(1, n).is_zero());
        }
        assert!(!c.reconstruction_defect(1, 3).is_zero());
    }

    #[test]
    fn counterexample_flip_fails_on_one() {
        let c = L1Counterexample::new(20).unwrap();
        let one = TailVec::constant(Dyadic::ONE);
        for m in 1..=20 {
            let n = 2 * m;
            let head: Vec<Dyadic> = vec![Dyadic::ONE; m];
            assert_eq!(c.dual_partial_sum(&one, n), TailVec::new(head, Dyadic::ZERO));
            assert_eq!(c.dual_expansion_defect(&one, n), Dyadic::ONE);
        }
    }

    #[test]
    fn counterexample_truncation_is_a_frame_but_not_hs() {
        let c = L1Counterexample::new(6).unwrap();
        let pair_ = c.to_frame_pair().unwrap();
        assert_eq!(pair_.basis_reconstruction_defect(), 0.0);
        let x = SeqVec::new(vec![1.0, -2.0, 0.5, 0.0, 3.0, 1.0], Exponent::ONE);
        assert_eq!(partial_sum_reconstruct(&pair_, &x, 12).unwrap(), x);
        assert!(verify_hs_frame(&pair_, DEFAULT_TOL).is_err());
    }

    #[test]
    fn lq_table() {
        let cfg = EstimatorConfig::new(16, 0);
        let rows = lq_nonexistence_demo(&[e(4.0), e(3.0)], &[1, 8, 16], &cfg).unwrap();
        assert_eq!(rows[0].exact, 1.0);
        assert!((rows[2].exact - 4.0).abs() < 1e-12);
        assert!((rows[4].exact - 2.0).abs() < 1e-12);
        for r in &rows {
            assert!((r.estimate - r.exact).abs() <= 1e-3 * r.exact, "{r:?}");
            let dn = diag_operator_norm(&vec![1.0; r.n], r.q, r.p).unwrap();
            assert!((dn - r.exact).abs() < 1e-12);
        }
        assert!(lq_nonexistence_demo(&[Exponent::TWO], &[4], &cfg).is_err());
        assert!(lq_nonexistence_demo(&[e(1.5)], &[4], &cfg).is_err());
    }
}
