//! Dyadic step functions on `[0, 1)` and the Haar system.
//!
//! A step function at level `L` holds `2^L` cell values. Integrals and
//! `L^p` norms are computed by pairwise summation over the cells, which
//! makes them exactly invariant under refinement: a refined cell block sums
//! to exactly `2^d` times the original cell.
//!
//! Haar indexing: `h_1 ≡ 1`; for `n >= 2`, `n = 2^k + j + 1` with
//! `0 <= j < 2^k`, supported on `I_n = [j 2^{-k}, (j+1) 2^{-k})`, `+1` on the
//! left half and `-1` on the right half.
//!
//! Coordinates used for operators: `u_n = ⟨g, ψ_n⟩` with the
//! `L^2`-orthonormal atoms `ψ_n = |I_n|^{-1/2} h_n`, on both the `L^p` side
//! and the `L^q` side. The pairing `∫ g x` is then the plain coordinate sum.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::norm_estimate::{operator_norm_estimate, EstimatorConfig};
use crate::spaces::OperatorArray;

pub const MAX_LEVEL: u32 = 20;

/// Pairwise (recursive halving) sum.
pub(crate) fn pairwise_sum(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        n => {
            let mid = n / 2;
            pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
        }
    }
}

fn check_level(level: u32) -> Result<()> {
    if level > MAX_LEVEL {
        Err(Error::LevelTooFine(level))
    } else {
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StepFunction {
    level: u32,
    values: Vec<f64>,
}

impl StepFunction {
    pub fn new(level: u32, values: Vec<f64>) -> Result<Self> {
        check_level(level)?;
        if values.len() != 1usize << level {
            return Err(Error::LengthMismatch {
                expected: 1usize << level,
                actual: values.len(),
            });
        }
        Ok(Self { level, values })
    }

    pub fn zero(level: u32) -> Result<Self> {
        check_level(level)?;
        Ok(Self {
            level,
            values: vec![0.0; 1usize << level],
        })
    }

    /// Samples `f` at cell midpoints.
    pub fn from_midpoints(level: u32, f: impl Fn(f64) -> f64) -> Result<Self> {
        check_level(level)?;
        let cells = 1usize << level;
        let h = (-(level as f64)).exp2();
        let values = (0..cells).map(|i| f((i as f64 + 0.5) * h)).collect();
        Ok(Self { level, values })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn cell_width(&self) -> f64 {
        (-(self.level as f64)).exp2()
    }

    /// The same function on the finer grid `level >= self.level`.
    pub fn refine(&self, level: u32) -> Result<Self> {
        check_level(level)?;
        if level < self.level {
            return Err(Error::LevelTooCoarse {
                n: 0,
                level,
                required: self.level,
            });
        }
        let rep = 1usize << (level - self.level);
        let values = self
            .values
            .iter()
            .flat_map(|v| std::iter::repeat_n(*v, rep))
            .collect();
        Ok(Self { level, values })
    }

    pub fn lp_norm(&self, p: Exponent) -> f64 {
        match p {
            Exponent::Infinity => self.values.iter().fold(0.0, |m, v| m.max(v.abs())),
            Exponent::Finite(p) => {
                let powered: Vec<f64> = if p == 1.0 {
                    self.values.iter().map(|v| v.abs()).collect()
                } else {
                    self.values.iter().map(|v| v.abs().powf(p)).collect()
                };
                let integral = pairwise_sum(&powered) * self.cell_width();
                if p == 1.0 {
                    integral
                } else {
                    integral.powf(1.0 / p)
                }
            }
        }
    }

    /// `∫₀¹ self · other`, both brought to the finer of the two levels.
    pub fn integral_product(&self, other: &StepFunction) -> Result<f64> {
        let level = self.level.max(other.level);
        let a = self.refine(level)?;
        let b = other.refine(level)?;
        let prod: Vec<f64> = a.values.iter().zip(&b.values).map(|(x, y)| x * y).collect();
        Ok(pairwise_sum(&prod) * a.cell_width())
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            level: self.level,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &StepFunction) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &StepFunction) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &StepFunction, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let level = self.level.max(other.level);
        let a = self.refine(level)?;
        let b = other.refine(level)?;
        let values = a.values.iter().zip(&b.values).map(|(x, y)| f(*x, *y)).collect();
        Ok(Self { level, values })
    }

    /// `level,<L>` header followed by one cell value per line.
    pub fn to_csv(&self) -> String {
        let mut out = format!("level,{}\n", self.level);
        for v in &self.values {
            let _ = writeln!(out, "{}", crate::report::fmt_float(*v));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or(Error::Empty("csv"))?;
        let level: u32 = header
            .strip_prefix("level,")
            .and_then(|l| l.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad header {header:?}")))?;
        let values = lines
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad value {l:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(level, values)
    }
}

/// Index of a Haar atom, `n >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HaarIndex(usize);

impl HaarIndex {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::IndexOutOfRange { index: 0, len: usize::MAX });
        }
        Ok(Self(n))
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// `(k, j)` with `n = 2^k + j + 1`; `None` for the constant atom.
    pub fn scale_shift(self) -> Option<(u32, usize)> {
        if self.0 == 1 {
            return None;
        }
        let m = self.0 - 1;
        let k = usize::BITS - 1 - m.leading_zeros();
        Some((k, m - (1usize << k)))
    }

    /// `k` such that `|I_n| = 2^{-k}`.
    pub fn support_scale(self) -> u32 {
        self.scale_shift().map_or(0, |(k, _)| k)
    }

    pub fn support_len(self) -> f64 {
        (-(self.support_scale() as f64)).exp2()
    }

    /// `I_n` as `(start, end)`.
    pub fn support(self) -> (f64, f64) {
        match self.scale_shift() {
            None => (0.0, 1.0),
            Some((k, j)) => {
                let w = (-(k as f64)).exp2();
                (j as f64 * w, (j + 1) as f64 * w)
            }
        }
    }

    /// Smallest level at which the atom is a step function.
    pub fn min_level(self) -> u32 {
        self.scale_shift().map_or(0, |(k, _)| k + 1)
    }

    fn check(self, level: u32) -> Result<()> {
        check_level(level)?;
        if level < self.min_level() {
            return Err(Error::LevelTooCoarse {
                n: self.0,
                level,
                required: self.min_level(),
            });
        }
        Ok(())
    }
}

/// `h_n` as a step function at `level`.
pub fn haar_atom(n: HaarIndex, level: u32) -> Result<StepFunction> {
    n.check(level)?;
    let cells = 1usize << level;
    let mut values = vec![0.0; cells];
    match n.scale_shift() {
        None => values.fill(1.0),
        Some((k, j)) => {
            let width = cells >> k;
            let start = j * width;
            values[start..start + width / 2].fill(1.0);
            values[start + width / 2..start + width].fill(-1.0);
        }
    }
    StepFunction::new(level, values)
}

/// `|I_n|^{-1/p} h_n`, the `L^p`-normalized atom.
pub fn normalized_atom(n: HaarIndex, p: Exponent, level: u32) -> Result<StepFunction> {
    let factor = (n.support_scale() as f64 * p.reciprocal()).exp2();
    Ok(haar_atom(n, level)?.scale(factor))
}

/// `|I_n|^{-1/q} h_n`, the normalized dual atom in `L^q`.
pub fn dual_atom(n: HaarIndex, q: Exponent, level: u32) -> Result<StepFunction> {
    normalized_atom(n, q, level)
}

/// `h_n^*(f) = |I_n|^{-1} ∫₀¹ f h_n`, exact over the dyadic grid.
pub fn haar_dual_coefficient(f: &StepFunction, n: HaarIndex) -> Result<f64> {
    let f = if f.level() < n.min_level() {
        f.refine(n.min_level())?
    } else {
        f.clone()
    };
    let level = f.level();
    let values = f.values();
    let integral = match n.scale_shift() {
        None => pairwise_sum(values),
        Some((k, j)) => {
            let width = 1usize << (level - k);
            let start = j * width;
            let half = width / 2;
            pairwise_sum(&values[start..start + half])
                - pairwise_sum(&values[start + half..start + width])
        }
    };
    // |I_n|^{-1} · 2^{-L} = 2^{k-L}
    Ok(integral * (n.support_scale() as f64 - level as f64).exp2())
}

/// Coordinates `⟨f, ψ_n⟩ = |I_n|^{1/2} h_n^*(f)` for `n = 1..=2^level(f)`.
pub fn orthonormal_coefficients(f: &StepFunction) -> Result<Vec<f64>> {
    (1..=1usize << f.level())
        .map(|n| {
            let n = HaarIndex(n);
            Ok(haar_dual_coefficient(f, n)? * (-(n.support_scale() as f64) / 2.0).exp2())
        })
        .collect()
}

/// `Σ_{n<=m} h_n^*(f) h_n`.
///
/// Evaluated as block averages: with `m = 2^K + r`, the sum equals the mean
/// of `f` over each level-`K` block, except on the first `r` blocks where
/// the two half-block means are used. At `m = 2^L` every block is a single
/// cell, so `f` is returned unchanged.
pub fn haar_partial_sum(f: &StepFunction, m: usize) -> Result<StepFunction> {
    let level = f.level();
    let span = 1usize << level;
    if m > span {
        return Err(Error::CountOutOfRange {
            count: m,
            available: span,
        });
    }
    if m == 0 {
        return StepFunction::zero(level);
    }
    let k = usize::BITS - 1 - m.leading_zeros();
    let r = m - (1usize << k);
    let block = span >> k;
    let mut out = vec![0.0; span];
    for (j, (src, dst)) in f
        .values()
        .chunks(block)
        .zip(out.chunks_mut(block))
        .enumerate()
    {
        if j < r {
            let half = block / 2;
            fill_mean(&src[..half], &mut dst[..half]);
            fill_mean(&src[half..], &mut dst[half..]);
        } else {
            fill_mean(src, dst);
        }
    }
    StepFunction::new(level, out)
}

fn fill_mean(src: &[f64], dst: &mut [f64]) {
    let mean = pairwise_sum(src) / src.len() as f64;
    dst.fill(mean);
}

fn check_haar_exponent(p: Exponent) -> Result<()> {
    match p {
        Exponent::Finite(v) if v > 1.0 && v <= 2.0 => Ok(()),
        _ => Err(Error::ExponentOutOfRange {
            p: p.to_string(),
            range: "(1, 2]",
        }),
    }
}

/// The Haar frame operator `S(|I_n|^{-1/p} h_n) = |I_n|^{-1/q} h_n` on the
/// first `2^level` atoms, in orthonormal-Haar coordinates.
///
/// `S h_n = |I_n|^{1/p - 1/q} h_n`, so the array is diagonal with those
/// entries; domain exponent `p`, codomain exponent `q`.
pub fn haar_hs_operator(level: u32, p: Exponent) -> Result<OperatorArray> {
    check_haar_exponent(p)?;
    check_level(level)?;
    let q = p.conjugate();
    let gap = p.reciprocal() - q.reciprocal();
    let d: Vec<f64> = (1..=1usize << level)
        .map(|n| (-(HaarIndex(n).support_scale() as f64) * gap).exp2())
        .collect();
    Ok(OperatorArray::diagonal(&d, p, q))
}

/// The same operator acting on cell values at `level`:
/// `M = Σ_n d_n h_n ⊗ (|I_n|^{-1} 2^{-L} h_n)`.
fn haar_operator_on_cells(level: u32, p: Exponent) -> Result<OperatorArray> {
    let s = haar_hs_operator(level, p)?;
    let cells = 1usize << level;
    let mut m = vec![0.0; cells * cells];
    for n in 1..=cells {
        let idx = HaarIndex(n);
        let h = haar_atom(idx, level)?;
        let w = s.get(n - 1, n - 1) * (idx.support_scale() as f64 - level as f64).exp2();
        for (i, hi) in h.values().iter().enumerate() {
            if *hi == 0.0 {
                continue;
            }
            for (j, hj) in h.values().iter().enumerate() {
                m[i * cells + j] += w * hi * hj;
            }
        }
    }
    OperatorArray::new(cells, cells, m, p, p.conjugate())
}

/// Estimated norm of the Haar frame operator as a map `L^p → L^q` restricted
/// to level-`level` step functions, using the exact step-function norms.
pub fn haar_function_norm_estimate(level: u32, p: Exponent, cfg: &EstimatorConfig) -> Result<f64> {
    let m = haar_operator_on_cells(level, p)?;
    let q = p.conjugate();
    // ‖g‖_{L^r} = 2^{-L/r} ‖values‖_r
    let rescale = (level as f64 * (p.reciprocal() - q.reciprocal())).exp2();
    Ok(operator_norm_estimate(&m, cfg.restarts, cfg.seed)? * rescale)
}
