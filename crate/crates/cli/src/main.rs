use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use hsframes_core::constructions::{
    haar_hs_basis, hilbert_frame_hs, lp_unit_basis_hs, lq_nonexistence_demo, mercedes_benz,
    random_hilbert_frame,
};
use hsframes_core::frames::{curve_to_csv, FramePair};
use hsframes_core::hs::{hilbert_embedding_diagnostic, pair_operator, HsfOperator};
use hsframes_core::report::{fmt_float, run_battery};
use hsframes_core::{
    BatteryConfig, ConstructionId, EstimatorConfig, Exponent, L1Counterexample, OperatorArray,
    TailVec,
};

#[derive(Parser)]
#[command(name = "hsframes", version, about = "Hilbert-Schauder frame verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a construction and run the verification batteries.
    Verify(RunArgs),
    /// Emit the counterexample, nonexistence or embedding curves.
    Demo(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Construction identifier.
    #[arg(value_name = "CONSTRUCTION", required_unless_present = "construction")]
    name: Option<String>,
    #[arg(long, conflicts_with = "name")]
    construction: Option<String>,
    /// Exponent p of the space (q for lq_demo); "inf" accepted.
    #[arg(long, default_value = "1.5")]
    p: Exponent,
    /// Truncation dimension N (pairs m for l1_counterexample).
    #[arg(long, default_value_t = 8)]
    dim: usize,
    /// Haar level L, giving 2^L atoms.
    #[arg(long, default_value_t = 3)]
    level: u32,
    /// RNG seed; HSFRAMES_SEED takes precedence when set.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = hsframes_core::hs::DEFAULT_TOL)]
    tol: f64,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Output directory; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn construction(&self) -> &str {
        self.name.as_deref().or(self.construction.as_deref()).unwrap_or_default()
    }

    fn battery(&self) -> BatteryConfig {
        BatteryConfig {
            tol: self.tol,
            samples: self.samples,
            seed: self.seed,
            estimator: EstimatorConfig {
                seed: self.seed,
                ..EstimatorConfig::default()
            },
        }
    }
}

/// Input the tool refuses: unknown identifiers and out-of-range parameters.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage<T>(msg: impl Into<String>) -> anyhow::Result<T> {
    Err(Usage(msg.into()).into())
}

fn main() -> ExitCode {
    // clap exits with status 2 on malformed arguments.
    let mut cli = Cli::parse();
    if let Err(err) = apply_seed_env(&mut cli) {
        eprintln!("error: {err:#}");
        return ExitCode::from(2);
    }
    let result = match &cli.command {
        Command::Verify(args) => verify(args),
        Command::Demo(args) => demo(args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

fn apply_seed_env(cli: &mut Cli) -> anyhow::Result<()> {
    let Ok(raw) = std::env::var("HSFRAMES_SEED") else {
        return Ok(());
    };
    let seed = raw
        .trim()
        .parse()
        .with_context(|| format!("HSFRAMES_SEED={raw:?} is not an unsigned integer"))?;
    match &mut cli.command {
        Command::Verify(args) | Command::Demo(args) => args.seed = seed,
    }
    Ok(())
}

fn parse_id(name: &str) -> anyhow::Result<ConstructionId> {
    match name.parse() {
        Ok(id) => Ok(id),
        Err(_) => usage(format!("unknown construction {name:?}")),
    }
}

fn in_scope<T>(r: hsframes_core::Result<T>) -> anyhow::Result<T> {
    r.or_else(|e| usage(e.to_string()))
}

fn build(id: ConstructionId, args: &RunArgs) -> anyhow::Result<(FramePair, OperatorArray)> {
    let (pair, h): (FramePair, HsfOperator) = match id {
        ConstructionId::LpBasis => in_scope(lp_unit_basis_hs(args.dim, args.p))?,
        ConstructionId::Haar => in_scope(haar_hs_basis(args.level, args.p))?,
        ConstructionId::MercedesBenz => hilbert_frame_hs(&mercedes_benz())?,
        ConstructionId::HilbertFrame => {
            let frame = in_scope(random_hilbert_frame(args.dim, 2 * args.dim, args.seed))?;
            hilbert_frame_hs(&frame)?
        }
        ConstructionId::L1Counterexample => {
            // No HSf-operator exists; the candidate Σ f_j f_jᵀ is checked and
            // its defining defect reported.
            let pair = in_scope(L1Counterexample::new(args.dim))?.to_frame_pair()?;
            let op = pair_operator(&pair);
            return Ok((pair, op));
        }
        ConstructionId::LqDemo => return usage("lq_demo has no frame pair; use `demo lq_demo`"),
    };
    Ok((pair, h.op().clone()))
}

fn verify(args: &RunArgs) -> anyhow::Result<ExitCode> {
    let id = parse_id(args.construction())?;
    let (pair, op) = build(id, args)?;
    let report = run_battery(id.as_str(), &pair, &op, &args.battery())?;
    let json = report.to_json();
    let curve = curve_to_csv(("m", "defect"), &report.local_duality_curve);
    match &args.out {
        Some(dir) => {
            write_file(dir, "report.json", &json)?;
            write_file(dir, "local_duality.csv", &curve)?;
        }
        None => print!("{json}"),
    }
    let failures = report.failures();
    if failures.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("assertion failed: {}", failures.join(", "));
        Ok(ExitCode::FAILURE)
    }
}

fn demo(args: &RunArgs) -> anyhow::Result<ExitCode> {
    let (file, csv) = match args.construction() {
        "l1_counterexample" => ("l1_counterexample.csv", counterexample_csv(args.dim)?),
        "lq_demo" => ("lq_demo.csv", lq_csv(args)?),
        "embedding" => ("embedding.csv", embedding_csv(args)?),
        other => {
            parse_id(other)?;
            return usage(format!("no demo for {other:?}; expected l1_counterexample, lq_demo or embedding"));
        }
    };
    match &args.out {
        Some(dir) => write_file(dir, file, &csv)?,
        None => print!("{csv}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn counterexample_csv(m: usize) -> anyhow::Result<String> {
    let c = in_scope(L1Counterexample::new(m))?;
    let one = TailVec::constant(hsframes_core::Dyadic::ONE);
    let mut out = String::from("n,one_defect");
    for k in 1..=m {
        out.push_str(&format!(",e{k}_defect"));
    }
    out.push('\n');
    for n in 1..=c.len() {
        out.push_str(&format!("{n},{}", fmt_float(c.dual_expansion_defect(&one, n).to_f64())));
        for k in 1..=m {
            out.push_str(&format!(",{}", fmt_float(c.reconstruction_defect(k, n).to_f64())));
        }
        out.push('\n');
    }
    Ok(out)
}

/// `1, 2, 4, …` up to `dim`, with `dim` itself appended when not a power of two.
fn dims_up_to(dim: usize) -> Vec<usize> {
    let mut ns: Vec<usize> = std::iter::successors(Some(1usize), |n| n.checked_mul(2))
        .take_while(|&n| n <= dim)
        .collect();
    if ns.last() != Some(&dim) && dim > 0 {
        ns.push(dim);
    }
    ns
}

fn lq_csv(args: &RunArgs) -> anyhow::Result<String> {
    let cfg = EstimatorConfig {
        seed: args.seed,
        ..EstimatorConfig::default()
    };
    let rows = in_scope(lq_nonexistence_demo(&[args.p], &dims_up_to(args.dim), &cfg))?;
    let mut out = String::from("q,n,exact_norm,estimate_norm\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_float(r.q.value()),
            r.n,
            fmt_float(r.exact),
            fmt_float(r.estimate)
        ));
    }
    Ok(out)
}

fn embedding_csv(args: &RunArgs) -> anyhow::Result<String> {
    let family = dims_up_to(args.dim)
        .into_iter()
        .map(|n| in_scope(lp_unit_basis_hs(n, args.p)).map(|(_, h)| h))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let cfg = EstimatorConfig {
        seed: args.seed,
        ..EstimatorConfig::default()
    };
    let curve = hilbert_embedding_diagnostic(&family, &cfg)?;
    Ok(curve_to_csv(("n", "lower_bound"), &curve))
}

fn write_file(dir: &Path, name: &str, contents: &str) -> anyhow::Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))
}
