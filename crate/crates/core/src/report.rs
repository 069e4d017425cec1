//! The verification battery and its JSON report.
//!
//! Field order is fixed. Floats carry 17 significant digits; non-finite
//! values and the exponent `∞` are written as the strings `"inf"`, `"-inf"`
//! and `"nan"`.

use std::fmt::Write as _;

use crate::error::Result;
use crate::exponent::Exponent;
use crate::frames::FramePair;
use crate::hs::{
    analysis_operator, bessel_bound_check, check_structure, eq1_max_relative_error,
    factorization_check, local_duality_curve, make_hsf, HsfOperator,
};
use crate::norm_estimate::EstimatorConfig;
use crate::spaces::OperatorArray;

/// Threshold for the quadratic-form identity, relative to `1 + |xᵀSx|`.
pub const EQ1_TOL: f64 = 1e-9;
/// Threshold for `max |S − AᵀA|`.
pub const FACTORIZATION_TOL: f64 = 1e-12;
/// Slack in `‖A‖ <= √‖S‖`.
pub const ANALYSIS_SLACK: f64 = 1e-6;

pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

fn json_float(x: f64) -> String {
    if x.is_finite() {
        fmt_float(x)
    } else {
        format!("\"{}\"", fmt_float(x))
    }
}

fn json_exponent(p: Exponent) -> String {
    json_float(p.value())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Inapplicable,
}

impl CheckStatus {
    fn from_bool(ok: bool) -> Self {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Inapplicable => "inapplicable",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BatteryConfig {
    pub tol: f64,
    pub samples: usize,
    pub seed: u64,
    pub estimator: EstimatorConfig,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        Self {
            tol: crate::hs::DEFAULT_TOL,
            samples: 1000,
            seed: 0,
            estimator: EstimatorConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub construction: String,
    pub n: usize,
    pub p: Exponent,
    pub q: Exponent,
    pub defining_defect: f64,
    pub symmetry_defect: f64,
    pub min_eigenvalue: f64,
    pub sigma_min: f64,
    pub eq1_max_relative_error: f64,
    pub bessel_max_ratio: f64,
    pub s_norm_bound: f64,
    pub s_norm_is_exact: bool,
    pub factorization_defect: f64,
    pub analysis_norm_estimate: f64,
    /// `max_n ‖f_n − Σ_j f_n(x_j) f_j‖_q` over the full pair.
    pub local_duality_defect: f64,
    /// `(m, defect)` for `n = 1`.
    pub local_duality_curve: Vec<(usize, f64)>,
    pub checks: Vec<(&'static str, CheckStatus)>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|(_, s)| *s == CheckStatus::Fail)
            .map(|(name, _)| *name)
            .collect()
    }

    pub fn status(&self, name: &str) -> Option<CheckStatus> {
        self.checks.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
    }

    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        let mut field = |name: &str, value: String| {
            let _ = writeln!(out, "  \"{name}\": {value},");
        };
        field("construction", serde_json::Value::from(self.construction.as_str()).to_string());
        field("N", self.n.to_string());
        field("p", json_exponent(self.p));
        field("q", json_exponent(self.q));
        field("defining_defect", json_float(self.defining_defect));
        field("symmetry_defect", json_float(self.symmetry_defect));
        field("min_eigenvalue", json_float(self.min_eigenvalue));
        field("sigma_min", json_float(self.sigma_min));
        field("eq1_max_relative_error", json_float(self.eq1_max_relative_error));
        field("bessel_max_ratio", json_float(self.bessel_max_ratio));
        field("s_norm_bound", json_float(self.s_norm_bound));
        field("s_norm_is_exact", self.s_norm_is_exact.to_string());
        field("factorization_defect", json_float(self.factorization_defect));
        field("analysis_norm_estimate", json_float(self.analysis_norm_estimate));
        field("local_duality_defect", json_float(self.local_duality_defect));
        out.push_str("  \"checks\": {");
        for (i, (name, status)) in self.checks.iter().enumerate() {
            let sep = if i == 0 { "\n" } else { ",\n" };
            let _ = write!(out, "{sep}    \"{name}\": \"{}\"", status.as_str());
        }
        out.push_str("\n  }\n}\n");
        out
    }
}

/// Runs every battery on the candidate `op` for `pair`.
///
/// `op` need not satisfy the defining property; its defect is measured and
/// reported as a failed check instead of being rejected.
pub fn run_battery(
    construction: &str,
    pair: &FramePair,
    op: &OperatorArray,
    cfg: &BatteryConfig,
) -> Result<VerifyReport> {
    let h = make_hsf(pair.clone(), op.clone(), f64::INFINITY)?;
    let tol = cfg.tol;

    let structure = check_structure(&h, cfg.samples, cfg.seed)?;
    let eq1 = eq1_max_relative_error(&h, cfg.samples, cfg.seed)?;
    let bessel = bessel_bound_check(&h, cfg.samples, cfg.seed, &cfg.estimator)?;
    let factorization = factorization_check(&h);
    let analysis = analysis_operator(&h).norm_estimate(&cfg.estimator)?;
    let (ld_defect, ld_curve) = local_duality(&h)?;

    let analysis_status = if bessel.s_norm_is_exact {
        CheckStatus::from_bool(analysis <= bessel.s_norm_bound.sqrt() + ANALYSIS_SLACK)
    } else {
        CheckStatus::Inapplicable
    };
    let checks = vec![
        ("defining_defect", CheckStatus::from_bool(h.defining_defect() <= tol)),
        ("symmetry_defect", CheckStatus::from_bool(structure.symmetry_defect <= tol)),
        ("min_eigenvalue", CheckStatus::from_bool(structure.min_eigenvalue >= -tol)),
        ("eq1_max_relative_error", CheckStatus::from_bool(eq1 <= EQ1_TOL)),
        (
            "bessel_max_ratio",
            bessel.holds.map_or(CheckStatus::Inapplicable, CheckStatus::from_bool),
        ),
        ("factorization_defect", CheckStatus::from_bool(factorization <= FACTORIZATION_TOL)),
        ("analysis_norm_estimate", analysis_status),
        ("local_duality_defect", CheckStatus::from_bool(ld_defect <= tol)),
    ];

    Ok(VerifyReport {
        construction: construction.to_string(),
        n: h.dim(),
        p: h.p(),
        q: h.q(),
        defining_defect: h.defining_defect(),
        symmetry_defect: structure.symmetry_defect,
        min_eigenvalue: structure.min_eigenvalue,
        sigma_min: structure.sigma_min,
        eq1_max_relative_error: eq1,
        bessel_max_ratio: bessel.max_ratio,
        s_norm_bound: bessel.s_norm_bound,
        s_norm_is_exact: bessel.s_norm_is_exact,
        factorization_defect: factorization,
        analysis_norm_estimate: analysis,
        local_duality_defect: ld_defect,
        local_duality_curve: ld_curve,
        checks,
    })
}

/// Worst final defect of the local duality curves, plus the curve for `n = 1`.
fn local_duality(h: &HsfOperator) -> Result<(f64, Vec<(usize, f64)>)> {
    let first = local_duality_curve(h, 1)?;
    let mut worst = first.last().map_or(0.0, |(_, d)| *d);
    for n in 2..=h.pair().len() {
        let curve = local_duality_curve(h, n)?;
        worst = worst.max(curve.last().map_or(0.0, |(_, d)| *d));
    }
    Ok((worst, first))
}
