//! Lower estimates of `‖A‖_{p→q}` (and upper estimates of the smallest gain
//! `min ‖Ax‖_q` over the unit sphere) by projected gradient on the `ℓ_p`
//! sphere.
//!
//! Each restart starts from a seeded Gaussian point, steps along the
//! tangential gradient of `φ(x) = ‖Ax‖_q / ‖x‖_p`, and retracts onto the
//! sphere by rescaling. A step that does not improve `φ` is halved; an
//! accepted step is doubled. For maximization the fixed-point step
//! `x ← J_{p'}(Aᵀ J_q(Ax))` is tried as a second candidate each iteration.
//! Coordinate vertices (and, for maximization, the norming points of the
//! rows) are evaluated as extra candidates. Every reported value is `φ` at a
//! point actually evaluated, so maxima never exceed the true norm and minima
//! never undershoot the true smallest gain, up to rounding.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::rng;
use crate::spaces::{lp_norm, OperatorArray};

pub const DEFAULT_RESTARTS: usize = 64;
pub const DEFAULT_ITERATIONS: usize = 200;
pub const DEFAULT_SEED: u64 = 0;

const MAX_HALVINGS: usize = 40;
const MAX_STEP: f64 = 1e8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EstimatorConfig {
    pub restarts: usize,
    pub iterations: usize,
    pub seed: u64,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        Self {
            restarts: DEFAULT_RESTARTS,
            iterations: DEFAULT_ITERATIONS,
            seed: DEFAULT_SEED,
        }
    }
}

impl EstimatorConfig {
    pub fn new(restarts: usize, seed: u64) -> Self {
        Self {
            restarts,
            seed,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    /// The unit-sphere point at which `value` was attained.
    pub argument: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Goal {
    Max,
    Min,
}

impl Goal {
    fn better(self, candidate: f64, current: f64) -> bool {
        match self {
            Goal::Max => candidate > current,
            Goal::Min => candidate < current,
        }
    }
}

/// Lower estimate of `sup{‖Ax‖_q : ‖x‖_p = 1}` with the default iteration count.
pub fn operator_norm_estimate(a: &OperatorArray, restarts: usize, seed: u64) -> Result<f64> {
    estimate_norm(a, &EstimatorConfig::new(restarts, seed)).map(|e| e.value)
}

pub fn estimate_norm(a: &OperatorArray, cfg: &EstimatorConfig) -> Result<Estimate> {
    run(a, cfg, Goal::Max)
}

/// Upper estimate of `inf{‖Ax‖_q : ‖x‖_p = 1}`.
pub fn estimate_min_gain(a: &OperatorArray, cfg: &EstimatorConfig) -> Result<Estimate> {
    run(a, cfg, Goal::Min)
}

fn run(a: &OperatorArray, cfg: &EstimatorConfig, goal: Goal) -> Result<Estimate> {
    if cfg.restarts == 0 {
        return Err(Error::NoRestarts);
    }
    if a.cols() == 0 {
        return Err(Error::Empty("operator domain"));
    }
    let problem = Problem { a, goal };

    let mut best = problem.vertex_candidates();
    let restarts: Vec<Estimate> = (0..cfg.restarts as u64)
        .into_par_iter()
        .map(|r| problem.restart(cfg.seed, r, cfg.iterations))
        .collect();
    for e in restarts {
        if goal.better(e.value, best.value) {
            best = e;
        }
    }
    Ok(best)
}

struct Problem<'a> {
    a: &'a OperatorArray,
    goal: Goal,
}

impl Problem<'_> {
    fn p(&self) -> Exponent {
        self.a.domain()
    }

    fn q(&self) -> Exponent {
        self.a.codomain()
    }

    fn ratio(&self, x: &[f64]) -> f64 {
        let nx = lp_norm(x, self.p());
        if nx == 0.0 {
            return f64::NAN;
        }
        lp_norm(&self.a.apply_unchecked(x), self.q()) / nx
    }

    fn normalize(&self, mut x: Vec<f64>) -> Option<Vec<f64>> {
        let n = lp_norm(&x, self.p());
        if n == 0.0 || !n.is_finite() {
            return None;
        }
        x.iter_mut().for_each(|v| *v /= n);
        Some(x)
    }

    fn vertex_candidates(&self) -> Estimate {
        let n = self.a.cols();
        let mut best = Estimate {
            value: match self.goal {
                Goal::Max => f64::NEG_INFINITY,
                Goal::Min => f64::INFINITY,
            },
            argument: Vec::new(),
        };
        let mut consider = |x: Vec<f64>| {
            let v = self.ratio(&x);
            if self.goal.better(v, best.value) {
                best = Estimate { value: v, argument: x };
            }
        };
        for i in 0..n {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            consider(e);
        }
        if self.goal == Goal::Max {
            let dual = self.p().conjugate();
            for i in 0..self.a.rows() {
                if let Some(x) = self.normalize(norming_direction(self.a.row(i), dual)) {
                    consider(x);
                }
            }
        }
        best
    }

    fn restart(&self, seed: u64, stream: u64, iterations: usize) -> Estimate {
        let mut rng = rng::seeded(seed, stream);
        let n = self.a.cols();
        let mut x = loop {
            if let Some(x) = self.normalize(rng::normal_vector(&mut rng, n)) {
                break x;
            }
        };
        let mut phi = self.ratio(&x);
        let mut step = 1.0;
        let dual = self.p().conjugate();
        let sign = match self.goal {
            Goal::Max => 1.0,
            Goal::Min => -1.0,
        };

        for _ in 0..iterations {
            let ax = self.a.apply_unchecked(&x);
            let g = self.a.apply_transpose_unchecked(&norming_direction(&ax, self.q()));
            let jp = norming_direction(&x, self.p());
            let mut d: Vec<f64> = g.iter().zip(&jp).map(|(gi, ji)| gi - phi * ji).collect();
            let dn = lp_norm(&d, Exponent::TWO);

            let mut next: Option<(Vec<f64>, f64)> = None;
            if dn > 0.0 && dn.is_finite() {
                d.iter_mut().for_each(|v| *v *= sign / dn);
                for _ in 0..MAX_HALVINGS {
                    let trial: Vec<f64> = x.iter().zip(&d).map(|(a, b)| a + step * b).collect();
                    if let Some(trial) = self.normalize(trial) {
                        let v = self.ratio(&trial);
                        if self.goal.better(v, phi) {
                            next = Some((trial, v));
                            step = (step * 2.0).min(MAX_STEP);
                            break;
                        }
                    }
                    step *= 0.5;
                }
                if next.is_none() {
                    step = 1.0;
                }
            }

            if self.goal == Goal::Max {
                if let Some(fixed) = self.normalize(norming_direction(&g, dual)) {
                    let v = self.ratio(&fixed);
                    let current = next.as_ref().map_or(phi, |(_, w)| *w);
                    if self.goal.better(v, current) {
                        next = Some((fixed, v));
                    }
                }
            }

            match next {
                Some((nx, v)) => {
                    x = nx;
                    phi = v;
                }
                None => break,
            }
        }
        Estimate {
            value: phi,
            argument: x,
        }
    }
}

fn sign(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// A (sub)gradient of `‖·‖_r` at `y`: the unit-dual-norm functional that
/// attains `⟨·, y⟩ = ‖y‖_r`. Zero at `y = 0`.
pub(crate) fn norming_direction(y: &[f64], r: Exponent) -> Vec<f64> {
    match r {
        Exponent::Finite(1.0) => y.iter().map(|v| sign(*v)).collect(),
        Exponent::Infinity => {
            let mut out = vec![0.0; y.len()];
            let mut arg = None;
            let mut m = 0.0;
            for (i, v) in y.iter().enumerate() {
                if v.abs() > m {
                    m = v.abs();
                    arg = Some(i);
                }
            }
            if let Some(i) = arg {
                out[i] = sign(y[i]);
            }
            out
        }
        Exponent::Finite(p) => {
            let n = lp_norm(y, r);
            if n == 0.0 {
                return vec![0.0; y.len()];
            }
            y.iter()
                .map(|v| sign(*v) * (v.abs() / n).powf(p - 1.0))
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::diag_operator_norm;
    use nalgebra::DMatrix;
    use proptest::prelude::*;

    fn e(p: f64) -> Exponent {
        Exponent::new(p).unwrap()
    }

    #[test]
    fn identity_two_by_two() {
        let a = OperatorArray::identity(2, Exponent::TWO, Exponent::TWO);
        assert_eq!(operator_norm_estimate(&a, 8, 0).unwrap(), 1.0);
    }

    #[test]
    fn all_ones_matches_eigen_oracle() {
        // AᵀA = [[2,2],[2,2]] has eigenvalues {0, 4}, so ‖A‖₂ = 2.
        let a = OperatorArray::new(2, 2, vec![1.0; 4], Exponent::TWO, Exponent::TWO).unwrap();
        let est = operator_norm_estimate(&a, 16, 0).unwrap();
        assert!((est - 2.0).abs() <= 2e-6, "{est}");
    }

    #[test]
    fn diagonal_cross_check_three_to_three_halves() {
        let a = OperatorArray::identity(4, e(3.0), e(1.5));
        let exact = diag_operator_norm(&[1.0; 4], e(3.0), e(1.5)).unwrap();
        let est = operator_norm_estimate(&a, 64, 0).unwrap();
        assert!((est - exact).abs() <= 1e-4 * exact, "{est} vs {exact}");
        assert!(est <= exact * (1.0 + 1e-12));
    }

    #[test]
    fn rejects_zero_restarts() {
        let a = OperatorArray::identity(2, Exponent::TWO, Exponent::TWO);
        assert_eq!(operator_norm_estimate(&a, 0, 0), Err(Error::NoRestarts));
    }

    #[test]
    fn rectangular_arrays() {
        let a = OperatorArray::new(3, 2, vec![1.0, 0.0, 0.0, 2.0, 0.0, 0.0], Exponent::TWO, Exponent::TWO)
            .unwrap();
        let est = operator_norm_estimate(&a, 8, 3).unwrap();
        assert!((est - 2.0).abs() < 1e-9);
    }

    #[test]
    fn min_gain_of_flat_minimizer() {
        // min ‖x‖₂ over the ℓ_1.5 sphere is attained by the flat vector.
        let a = OperatorArray::identity(4, e(1.5), Exponent::TWO);
        let est = estimate_min_gain(&a, &EstimatorConfig::default()).unwrap();
        let expected = 4f64.powf(0.5 - 1.0 / 1.5);
        assert!(est.value >= expected * (1.0 - 1e-12));
        assert!(est.value - expected <= 1e-6, "{}", est.value);
    }

    #[test]
    fn deterministic_under_seed() {
        let a = OperatorArray::new(3, 3, vec![1.0, -2.0, 0.5, 0.3, 1.0, 2.0, -1.0, 0.0, 1.5], e(1.5), e(3.0))
            .unwrap();
        let x = estimate_norm(&a, &EstimatorConfig::new(16, 11)).unwrap();
        let y = estimate_norm(&a, &EstimatorConfig::new(16, 11)).unwrap();
        assert_eq!(x, y);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn spectral_norm_matches_svd(entries in prop::collection::vec(-3.0f64..3.0, 36)) {
            let a = OperatorArray::new(6, 6, entries.clone(), Exponent::TWO, Exponent::TWO).unwrap();
            let sigma = DMatrix::from_row_slice(6, 6, &entries).singular_values().max();
            let est = operator_norm_estimate(&a, DEFAULT_RESTARTS, 0).unwrap();
            prop_assert!(est <= sigma * (1.0 + 1e-12));
            prop_assert!((sigma - est) <= 1e-6 * sigma, "{} vs {}", est, sigma);
        }

        #[test]
        fn diagonal_reaches_exact(
            d in prop::collection::vec(0.1f64..3.0, 1..16),
            p in prop_oneof![Just(1.0), Just(1.25), Just(1.5), Just(2.0), Just(3.0), Just(4.0)],
            q in prop_oneof![Just(1.0), Just(1.5), Just(2.0), Just(3.0), Just(5.0)],
        ) {
            let (p, q) = (e(p), e(q));
            let a = OperatorArray::diagonal(&d, p, q);
            let exact = diag_operator_norm(&d, p, q).unwrap();
            let est = operator_norm_estimate(&a, DEFAULT_RESTARTS, 0).unwrap();
            prop_assert!(est <= exact * (1.0 + 1e-12), "{} > {}", est, exact);
            prop_assert!(exact - est <= 1e-4 * exact, "{} vs {}", est, exact);
        }

        #[test]
        fn homogeneous(entries in prop::collection::vec(-3.0f64..3.0, 16), alpha in prop_oneof![Just(-2.0), Just(3.7), Just(0.25)]) {
            let a = OperatorArray::new(4, 4, entries, e(1.5), e(3.0)).unwrap();
            let base = operator_norm_estimate(&a, 16, 5).unwrap();
            let scaled = operator_norm_estimate(&a.scaled(alpha), 16, 5).unwrap();
            prop_assert!((scaled - alpha.abs() * base).abs() <= 1e-9 * scaled.abs().max(1e-300));
        }
    }
}
