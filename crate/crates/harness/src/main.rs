//! `latcast`: simulate lattice-coded multicast with coded side information.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use latcast_harness::capacity::{capacity_term, snr_db};
use latcast_harness::error::HarnessError;
use latcast_harness::output::{emit, render_summary, to_json, OutputFormat};
use latcast_harness::runner::{ensemble_fraction_good, run_scenario};
use latcast_harness::scenario::Scenario;
use latcast_harness::verify::{run_verify, VerifyLevel};

#[derive(Parser)]
#[command(name = "latcast", version, about = "Lattice-coded Gaussian multicast simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonFlags {
    /// Override the scenario's master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the scenario's trial count.
    #[arg(long)]
    trials: Option<usize>,
    /// Write results to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format for results.
    #[arg(long, default_value = "json")]
    format: OutputFormat,
    /// Worker threads ("auto" uses all cores).
    #[arg(long, default_value = "auto")]
    threads: String,
}

#[derive(Subcommand)]
enum Command {
    /// Print the resolved code parameters (p, ell, achieved rate).
    Params {
        scenario: PathBuf,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Compute the multicast capacity for the scenario's receivers.
    Capacity {
        scenario: PathBuf,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Monte Carlo simulation over the scenario's receiver list.
    Simulate {
        scenario: PathBuf,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// All-subspaces mode: one receiver per subspace of F_p^K.
    Network {
        scenario: PathBuf,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Run the verification suite.
    Verify {
        #[arg(long, default_value = "quick")]
        level: VerifyLevel,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Measure the error rate of many independently drawn codebooks.
    Ensemble {
        scenario: PathBuf,
        #[arg(long)]
        codebooks: usize,
        /// A codebook is good when its network error rate is <= this.
        #[arg(long, default_value_t = 1.0)]
        threshold: f64,
        #[command(flatten)]
        common: CommonFlags,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, HarnessError> {
    match cli.command {
        Command::Params { scenario, common } => {
            let sc = load(&scenario, &common)?;
            with_pool(&common, || cmd_params(&sc, &common))
        }
        Command::Capacity { scenario, common } => {
            let sc = load(&scenario, &common)?;
            cmd_capacity(&sc, &common)
        }
        Command::Simulate { scenario, common } => {
            let sc = load(&scenario, &common)?;
            with_pool(&common, || cmd_simulate(sc, &common))
        }
        Command::Network { scenario, common } => {
            let mut sc = load(&scenario, &common)?;
            sc.network_mode = true;
            with_pool(&common, || cmd_simulate(sc, &common))
        }
        Command::Verify { level, common } => with_pool(&common, || cmd_verify(level, &common)),
        Command::Ensemble { scenario, codebooks, threshold, common } => {
            let sc = load(&scenario, &common)?;
            with_pool(&common, || cmd_ensemble(&sc, codebooks, threshold, &common))
        }
    }
}

fn load(path: &PathBuf, common: &CommonFlags) -> Result<Scenario, HarnessError> {
    let mut sc = Scenario::from_file(path)?;
    if let Some(seed) = common.seed {
        sc.seed = seed;
    }
    if let Some(trials) = common.trials {
        sc.trials = trials;
    }
    Ok(sc)
}

fn with_pool<F>(common: &CommonFlags, f: F) -> Result<ExitCode, HarnessError>
where
    F: FnOnce() -> Result<ExitCode, HarnessError> + Send,
    ExitCode: Send,
{
    match common.threads.as_str() {
        "auto" => f(),
        n => {
            let threads: usize = n.parse().map_err(|_| {
                HarnessError::Config(format!(
                    "threads: expected a number or \"auto\", got \"{n}\""
                ))
            })?;
            if threads == 0 {
                return Err(HarnessError::Config("threads: must be >= 1".into()));
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| HarnessError::Config(format!("threads: {e}")))?;
            pool.install(f)
        }
    }
}

fn cmd_params(sc: &Scenario, common: &CommonFlags) -> Result<ExitCode, HarnessError> {
    let v = sc.validate()?;
    if let Some(w) = &v.p_override_warning {
        eprintln!("warning: {w}");
    }
    let geometry = v.coarse.geometry();
    let report = serde_json::json!({
        "p": v.params.field().modulus(),
        "k": v.params.k(),
        "ell": v.params.ell(),
        "n": v.params.n(),
        "rate_design": v.params.rate(),
        "rate_achieved": v.params.achieved_rate(),
        "epsilon": v.params.epsilon(),
        "message_symbols": v.params.message_len(),
        "codebook_size_log2": v.params.message_len() as f64
            * (v.params.field().modulus() as f64).log2(),
        "lattice_family": v.coarse.family().name(),
        "lattice_scale": v.coarse.scale(),
        "r_cov": geometry.r_cov,
        "r_eff": geometry.r_eff,
        "covering_ratio": geometry.r_cov / geometry.r_eff,
    });
    emit(&to_json(&report), common.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_capacity(sc: &Scenario, common: &CommonFlags) -> Result<ExitCode, HarnessError> {
    let v = sc.validate()?;
    let terms: Vec<serde_json::Value> = v
        .receivers
        .iter()
        .enumerate()
        .map(|(i, (s, sigma2))| {
            serde_json::json!({
                "receiver_index": i,
                "rank_S": s.rank(),
                "sigma2": sigma2,
                "snr_db": snr_db(*sigma2),
                "capacity_term_bits": capacity_term(v.params.k(), s.rank(), *sigma2),
            })
        })
        .collect();
    let c = v
        .receivers
        .iter()
        .map(|(s, s2)| capacity_term(v.params.k(), s.rank(), *s2))
        .fold(f64::INFINITY, f64::min);
    let report = serde_json::json!({
        "k": v.params.k(),
        "capacity_bits_per_dim": c,
        "receivers": terms,
    });
    emit(&to_json(&report), common.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_simulate(sc: Scenario, common: &CommonFlags) -> Result<ExitCode, HarnessError> {
    let v = sc.validate()?;
    if let Some(w) = &v.p_override_warning {
        eprintln!("warning: {w}");
    }
    let summary = run_scenario(&sc)?;
    emit(&render_summary(&summary, common.format), common.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(level: VerifyLevel, common: &CommonFlags) -> Result<ExitCode, HarnessError> {
    let seed = common.seed.unwrap_or(1);
    let results = run_verify(level, seed);
    let mut all_passed = true;
    for r in &results {
        let tag = if r.passed { "PASS" } else { "FAIL" };
        eprintln!("[{tag}] {:<24} {}", r.name, r.details);
        all_passed &= r.passed;
    }
    if common.out.is_some() {
        emit(&to_json(&results), common.out.as_deref())?;
    }
    eprintln!(
        "{} of {} checks passed",
        results.iter().filter(|r| r.passed).count(),
        results.len()
    );
    Ok(if all_passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_ensemble(
    sc: &Scenario,
    codebooks: usize,
    threshold: f64,
    common: &CommonFlags,
) -> Result<ExitCode, HarnessError> {
    let report = ensemble_fraction_good(sc, codebooks, threshold)?;
    emit(&to_json(&report), common.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}
