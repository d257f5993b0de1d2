//! Batch front end: parse an instance config, run the requested analysis,
//! print a report, and optionally emit a per-fiber CSV.
//!
//! Exit codes: 0 success, 1 crosscheck failure, 2 config error,
//! 3 numerical inconsistency.

mod config;
mod report;

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fiberwise_core::error::Error as CoreError;
use fiberwise_core::fiber::{self, FiberedGeneratorSet};
use fiberwise_core::gramian;
use fiberwise_core::oracle::{self, CrosscheckConfig};
use fiberwise_core::sampling::{self, UnionVerdict};

use config::{Instance, Realization, TolOverrides};
use report::f17;

#[derive(Parser)]
#[command(
    name = "fiberwise",
    version,
    about = "Fiberwise analysis of finitely generated invariant subspaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Essential-supremum cosine angle between sets A and B over Ω.
    Angle(AnalyzeArgs),
    /// Closedness of the sum of the spaces generated by A and B.
    Closedness(AnalyzeArgs),
    /// Per-fiber frame bounds of set A.
    FrameBounds(AnalyzeArgs),
    /// Injectivity of the sampling operator on each target space.
    Sampling(AnalyzeArgs),
    /// Union-of-subspaces sampling injectivity over all target pairs.
    Union(AnalyzeArgs),
    /// Seeded pipeline-versus-oracle crosscheck on random finite groups.
    Crosscheck(CrosscheckArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Path to the JSON instance config.
    #[arg(long)]
    config: PathBuf,
    /// Write the per-fiber CSV here.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Override the relative singular/eigenvalue cutoff.
    #[arg(long)]
    tol_rank: Option<f64>,
    /// Override the principal-cosine intersection cutoff.
    #[arg(long)]
    tol_intersect: Option<f64>,
    /// Override the closedness angle cutoff.
    #[arg(long)]
    tol_close: Option<f64>,
    /// Suppress the report (CSV and exit code are unaffected).
    #[arg(long)]
    quiet: bool,
}

#[derive(Args)]
struct CrosscheckArgs {
    /// Seed for the instance stream.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of angle instances.
    #[arg(long, default_value_t = 200)]
    angle_count: usize,
    /// Number of injectivity instances.
    #[arg(long, default_value_t = 100)]
    injectivity_count: usize,
    /// Largest tolerated |pipeline − oracle| angle deviation.
    #[arg(long, default_value_t = 1e-8)]
    max_deviation: f64,
    /// Write per-instance results here.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Suppress the report.
    #[arg(long)]
    quiet: bool,
}

enum CliError {
    Config(String),
    Numerical(String),
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Config(_) => ExitCode::from(2),
            CliError::Numerical(_) => ExitCode::from(3),
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Numerical(m) => m,
        }
    }
}

impl From<config::ConfigError> for CliError {
    fn from(e: config::ConfigError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::NumericalInconsistency(_) => CliError::Numerical(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Config(format!("i/o error: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Angle(args) => run_angle(&args),
        Command::Closedness(args) => run_closedness(&args),
        Command::FrameBounds(args) => run_frame_bounds(&args),
        Command::Sampling(args) => run_sampling(&args),
        Command::Union(args) => run_union(&args),
        Command::Crosscheck(args) => return run_crosscheck(&args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}

fn load(args: &AnalyzeArgs) -> Result<Instance, CliError> {
    let overrides = TolOverrides {
        rank: args.tol_rank,
        intersect: args.tol_intersect,
        close: args.tol_close,
    };
    Ok(config::load_instance(&args.config, overrides)?)
}

fn describe_realization(instance: &Instance) -> String {
    match instance.realization {
        Realization::FiniteGroup(pair) => format!(
            "finite-group (N={}, M={}, L={})",
            pair.order(),
            pair.coset_count(),
            pair.subgroup_order()
        ),
        Realization::RealLine {
            grid_size,
            truncation,
        } => format!("real-line (grid_size={grid_size}, truncation={truncation})"),
    }
}

fn write_csv<F>(path: &Option<PathBuf>, write: F) -> Result<(), CliError>
where
    F: FnOnce(BufWriter<File>) -> std::io::Result<()>,
{
    if let Some(path) = path {
        let file = File::create(path)?;
        write(BufWriter::new(file))?;
    }
    Ok(())
}

fn angle_profile(
    instance: &Instance,
) -> Result<(fiberwise_core::fiber::AngleProfile, usize), CliError> {
    let set_a = instance.set("A")?;
    let set_b = instance.set("B")?;
    let tol = instance.tolerance;
    let region = fiber::omega(
        &fiber::range_function(set_a, tol),
        &fiber::range_function(set_b, tol),
    )?;
    let omega_size = region.len();
    let profile = fiber::ess_sup_angle(set_a, set_b, &region, tol)?;
    Ok((profile, omega_size))
}

fn run_angle(args: &AnalyzeArgs) -> Result<(), CliError> {
    let instance = load(args)?;
    let (profile, _) = angle_profile(&instance)?;
    if !args.quiet {
        println!("realization: {}", describe_realization(&instance));
        println!("ess-sup angle over omega: {}", f17(profile.ess_sup));
        match profile.argmax {
            Some(j) => println!(
                "argmax fiber: {} (x = {})",
                j,
                f17(profile.rows[j].coord)
            ),
            None => println!("argmax fiber: none (omega is empty)"),
        }
    }
    write_csv(&args.csv, |out| report::write_angle_csv(out, &profile))
}

fn run_closedness(args: &AnalyzeArgs) -> Result<(), CliError> {
    let instance = load(args)?;
    let set_a = instance.set("A")?;
    let set_b = instance.set("B")?;
    let diag = fiber::closedness_diagnosis(set_a, set_b, instance.tolerance)?;
    if !args.quiet {
        println!("realization: {}", describe_realization(&instance));
        println!(
            "verdict: {}",
            if diag.closed { "closed" } else { "not closed" }
        );
        println!(
            "ess-sup angle over omega-prime: {}",
            f17(diag.ess_sup_omega_prime)
        );
        if diag.witnesses.is_empty() {
            println!("witness fibers: none");
        } else {
            let list: Vec<String> = diag.witnesses.iter().map(|j| j.to_string()).collect();
            println!("witness fibers: {}", list.join(" "));
        }
    }
    write_csv(&args.csv, |out| report::write_angle_csv(out, &diag.profile))
}

fn run_frame_bounds(args: &AnalyzeArgs) -> Result<(), CliError> {
    let instance = load(args)?;
    let set_a = instance.set("A")?;
    let tol = instance.tolerance;
    let rf = fiber::range_function(set_a, tol);
    let mut rows = Vec::new();
    let mut global: Option<(f64, f64)> = None;
    for (j, sub) in rf.iter().enumerate() {
        let g = gramian::gramian(set_a.fiber(j));
        let bounds = gramian::fiber_frame_bounds(&g, tol)?;
        let (lo, hi) = bounds.unwrap_or((0.0, 0.0));
        rows.push((j, set_a.grid().coord(j), sub.dim(), lo, hi));
        if bounds.is_some() {
            global = Some(match global {
                Some((glo, ghi)) => (glo.min(lo), ghi.max(hi)),
                None => (lo, hi),
            });
        }
    }
    if !args.quiet {
        println!("realization: {}", describe_realization(&instance));
        match global {
            Some((lo, hi)) => {
                println!("lower frame bound over spectrum: {}", f17(lo));
                println!("upper frame bound over spectrum: {}", f17(hi));
            }
            None => println!("spectrum: empty (all fibers vanish)"),
        }
    }
    write_csv(&args.csv, |out| report::write_frame_bounds_csv(out, &rows))
}

fn sampling_sets(
    instance: &Instance,
) -> Result<(&FiberedGeneratorSet, &[FiberedGeneratorSet]), CliError> {
    let measuring = instance.set("measuring")?;
    if instance.targets.is_empty() {
        return Err(CliError::Config(
            "config does not define any target sets".into(),
        ));
    }
    Ok((measuring, &instance.targets))
}

fn run_sampling(args: &AnalyzeArgs) -> Result<(), CliError> {
    let instance = load(args)?;
    let (measuring, targets) = sampling_sets(&instance)?;
    let mut reports = Vec::new();
    for (i, target) in targets.iter().enumerate() {
        let report = sampling::injectivity_check(measuring, target, instance.tolerance)?;
        reports.push((i, report));
    }
    if !args.quiet {
        println!("realization: {}", describe_realization(&instance));
        for (i, report) in &reports {
            println!(
                "target {}: {}",
                i,
                if report.injective {
                    "injective"
                } else {
                    "not injective"
                }
            );
            for f in &report.failing_fibers {
                println!(
                    "  failing fiber {} (x = {}): rank {} < dim {}",
                    f.fiber_index,
                    f17(f.coord),
                    f.mixed_rank,
                    f.target_dim
                );
            }
        }
    }
    write_csv(&args.csv, |out| report::write_sampling_csv(out, &reports))
}

fn run_union(args: &AnalyzeArgs) -> Result<(), CliError> {
    let instance = load(args)?;
    let (measuring, targets) = sampling_sets(&instance)?;
    let report = sampling::union_injectivity_check(measuring, targets, instance.tolerance)?;
    if !args.quiet {
        println!("realization: {}", describe_realization(&instance));
        let verdict = match report.verdict {
            UnionVerdict::Injective => "injective",
            UnionVerdict::NotInjective => "not injective",
            UnionVerdict::Inapplicable => "inapplicable (closedness hypothesis violated)",
        };
        println!("union verdict: {verdict}");
        for pc in &report.pair_checks {
            let status = match (&pc.injectivity, pc.hypothesis_ok) {
                (_, false) => "hypothesis violated".to_string(),
                (Some(inj), true) => {
                    if inj.injective {
                        "injective".to_string()
                    } else {
                        format!("not injective ({} failing fibers)", inj.failing_fibers.len())
                    }
                }
                (None, true) => "skipped".to_string(),
            };
            println!(
                "pair ({}, {}): ess-sup over omega-prime = {}, {}",
                pc.delta,
                pc.theta,
                f17(pc.ess_sup_omega_prime),
                status
            );
        }
        if !report.hypothesis_violations.is_empty() {
            let list: Vec<String> = report
                .hypothesis_violations
                .iter()
                .map(|(d, t)| format!("({d}, {t})"))
                .collect();
            println!("hypothesis violations: {}", list.join(" "));
        }
    }
    write_csv(&args.csv, |out| report::write_union_csv(out, &report))
}

fn run_crosscheck(args: &CrosscheckArgs) -> ExitCode {
    let summary = oracle::crosscheck_suite(CrosscheckConfig {
        seed: args.seed,
        angle_instances: args.angle_count,
        injectivity_instances: args.injectivity_count,
        ..CrosscheckConfig::default()
    });
    let passed = summary.passed(args.max_deviation);
    if !args.quiet {
        println!("seed: {}", args.seed);
        println!("max angle deviation: {}", f17(summary.max_angle_deviation));
        println!(
            "max method deviation: {}",
            f17(summary.max_method_deviation)
        );
        println!("max route deviation: {}", f17(summary.max_route_deviation));
        println!(
            "injectivity disagreements: {}",
            summary.injectivity_disagreements
        );
        for failure in &summary.failures {
            println!("failure: {failure}");
        }
        println!("crosscheck: {}", if passed { "PASS" } else { "FAIL" });
    }
    if let Some(path) = &args.csv {
        let write = || -> std::io::Result<()> {
            let file = File::create(path)?;
            report::write_crosscheck_csv(BufWriter::new(file), &summary)
        };
        if let Err(e) = write() {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
