//! `ib` — exact information bottleneck solving from the shell.
//!
//! Exit codes: 0 success, 1 usage error, 2 validation or file error,
//! 3 at least one solve failed to converge.

use clap::{Args, Parser, Subcommand};
use ib_cli::io::{self, CliError, CliResult, CurveFileData};
use ib_core::ba::{trace_curve, BaConfig, EncoderInit, RestartSchedule};
use ib_core::gaussian::{gaussian_curve, sufficient_statistic};
use ib_core::reduction::{make_sufficient_instance, verify_reduction, VerifyOptions};
use ib_core::synth::{build_model, empirical_reduced_joint, generate, reproduce_table1, SynthConfig};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "ib",
    version,
    about = "Exact information bottleneck solving on finite joints via sufficient-statistic reduction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Trace the IB curve of a joint file over a beta grid
    Curve(CurveArgs),
    /// Generate the synthetic labelled-mixture benchmark samples
    Synth(SynthArgs),
    /// Estimate the reduced joint p(phi, C) from a samples file
    Reduce(ReduceArgs),
    /// Closed-form Gaussian IB curve from a covariance file
    Gaussian(GaussianArgs),
    /// Certify the reduction equivalences on a seeded instance
    Verify(VerifyArgs),
    /// Reproduce benchmark reports
    Reproduce(ReproduceArgs),
}

#[derive(Args)]
struct GridArgs {
    /// Beta grid: `geometric:LO:HI:N` or an ascending list like `0.5,1,2`
    #[arg(long, conflicts_with = "betas_table1")]
    betas: Option<String>,
    /// Shorthand for the benchmark grid geometric:0.01:10:12
    #[arg(long)]
    betas_table1: bool,
}

impl GridArgs {
    fn resolve(&self, default_table1: bool) -> CliResult<(String, Vec<f64>)> {
        if self.betas_table1 {
            let (desc, grid) = io::table1_spec();
            return Ok((desc.to_string(), grid));
        }
        match &self.betas {
            Some(spec) => Ok((spec.clone(), io::parse_beta_spec(spec)?)),
            None if default_table1 => {
                let (desc, grid) = io::table1_spec();
                Ok((desc.to_string(), grid))
            }
            None => Err(CliError::Usage(
                "a beta grid is required: --betas <SPEC> or --betas-table1".into(),
            )),
        }
    }
}

#[derive(Args)]
struct CurveArgs {
    /// Joint probability table (CSV with a rows,cols header)
    #[arg(long)]
    joint: PathBuf,
    #[command(flatten)]
    grid: GridArgs,
    /// Output curve file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Representation alphabet size (default: the joint's row count)
    #[arg(long)]
    alphabet: Option<usize>,
    #[arg(long, default_value_t = 5000)]
    max_iters: usize,
    /// Convergence threshold on the Lagrangian change per iteration
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// RNG seed (falls back to $IB_SEED, then the built-in default)
    #[arg(long)]
    seed: Option<u64>,
    /// Solve each beta independently instead of annealing up the grid
    #[arg(long)]
    no_anneal: bool,
}

#[derive(Args)]
struct SynthArgs {
    /// Ambient dimension of the source vectors
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 16)]
    classes: usize,
    #[arg(long, default_value_t = 200_000)]
    samples: usize,
    #[arg(long, default_value_t = 0.1)]
    sigma: f64,
    #[arg(long)]
    seed: Option<u64>,
    /// Output samples file
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ReduceArgs {
    /// Samples file produced by `ib synth`
    #[arg(long)]
    samples: PathBuf,
    /// Statistic to reduce through (only `bayes`, the generator's exact
    /// Bayes classifier, is available)
    #[arg(long, default_value = "bayes")]
    statistic: String,
    /// Output joint file
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct GaussianArgs {
    /// Covariance file (full joint covariance with dim-t/dim-c split)
    #[arg(long)]
    cov: PathBuf,
    #[command(flatten)]
    grid: GridArgs,
    /// Output curve file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Source alphabet size K_T of the generated instance
    #[arg(long, default_value_t = 64)]
    source_size: usize,
    /// Statistic alphabet size K_Z
    #[arg(long, default_value_t = 8)]
    statistic_size: usize,
    /// Target alphabet size M
    #[arg(long, default_value_t = 8)]
    target_size: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    grid: GridArgs,
    /// BA restarts per beta on each side
    #[arg(long, default_value_t = 50)]
    restarts: usize,
    /// Representation alphabet size (default: twice the statistic size,
    /// which gives the optimiser slack near transitions)
    #[arg(long)]
    alphabet: Option<usize>,
    /// Output report file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReproduceArgs {
    #[command(subcommand)]
    target: ReproduceTarget,
}

#[derive(Subcommand)]
enum ReproduceTarget {
    /// The synthetic benchmark sweep over ambient dimensions
    Table1 {
        /// Dimensions to run, comma separated
        #[arg(long, default_value = "2,5,10")]
        dims: String,
        #[arg(long, default_value_t = 200_000)]
        samples: usize,
        #[arg(long, default_value_t = 0.1)]
        sigma: f64,
        #[arg(long)]
        seed: Option<u64>,
        /// Output CSV (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn resolve_seed(flag: Option<u64>) -> CliResult<u64> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("IB_SEED") {
        Ok(text) => text
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("IB_SEED is not a valid seed: {text:?}"))),
        Err(_) => Ok(ib_core::synth::DEFAULT_SEED),
    }
}

fn emit(out: Option<&PathBuf>, contents: &str) -> CliResult<()> {
    match out {
        Some(path) => io::write_atomic(path, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn cmd_curve(args: CurveArgs) -> CliResult<i32> {
    let (joint, _) = io::read_joint(&args.joint)?;
    let (grid_desc, betas) = args.grid.resolve(false)?;
    let seed = resolve_seed(args.seed)?;
    let config = BaConfig {
        alphabet_size: args.alphabet,
        max_iters: args.max_iters,
        tol: args.tol,
        init: EncoderInit::PerturbedUniform { seed },
        anneal: !args.no_anneal,
    };
    let trace = trace_curve(&joint, &betas, &config)?;
    let data = CurveFileData {
        joint_id: io::joint_id(&joint),
        seed,
        alphabet: args.alphabet,
        max_iters: args.max_iters,
        tol: args.tol,
        anneal: !args.no_anneal,
        grid: grid_desc,
        points: trace.curve.points().to_vec(),
    };
    match &args.out {
        Some(path) => {
            io::write_curve(path, &data)?;
            eprintln!(
                "wrote {} points to {} (max relevance {:.6} nats)",
                data.points.len(),
                path.display(),
                trace.curve.max_relevance()
            );
        }
        None => print!("{}", io::render_curve(&data)),
    }
    Ok(if data.all_converged() { 0 } else { 3 })
}

fn cmd_synth(args: SynthArgs) -> CliResult<i32> {
    let config = SynthConfig {
        dim: args.dim,
        classes: args.classes,
        samples: args.samples,
        sigma: args.sigma,
        seed: resolve_seed(args.seed)?,
    };
    let (_, samples) = generate(&config)?;
    io::write_samples(&args.out, &config, &samples)?;
    eprintln!(
        "wrote {} samples (dim {}, {} classes) to {}",
        samples.len(),
        config.dim,
        config.classes,
        args.out.display()
    );
    Ok(0)
}

fn cmd_reduce(args: ReduceArgs) -> CliResult<i32> {
    if args.statistic != "bayes" {
        return Err(CliError::Usage(format!(
            "unknown statistic {:?}; only `bayes` is available",
            args.statistic
        )));
    }
    let (config, samples) = io::read_samples(&args.samples)?;
    let model = build_model(&config)?;
    let joint = empirical_reduced_joint(&model, &samples)?;
    io::write_joint(&args.out, &joint, Some("reduced"))?;
    eprintln!(
        "wrote {}x{} reduced joint to {} (I(phi;C) = {:.6} nats)",
        joint.rows(),
        joint.cols(),
        args.out.display(),
        ib_core::info::mutual_information(&joint)
    );
    Ok(0)
}

fn cmd_gaussian(args: GaussianArgs) -> CliResult<i32> {
    let g = io::read_covariance(&args.cov)?;
    let (grid_desc, betas) = args.grid.resolve(false)?;
    let spec = sufficient_statistic(&g)?;
    let curve = gaussian_curve(&spec, &betas)?;
    let data = CurveFileData {
        joint_id: format!("gaussian rank {} of {}", spec.rank, args.cov.display()),
        seed: 0,
        alphabet: None,
        max_iters: 0,
        tol: 0.0,
        anneal: false,
        grid: grid_desc,
        points: curve.points().to_vec(),
    };
    match &args.out {
        Some(path) => {
            io::write_curve(path, &data)?;
            eprintln!(
                "wrote {} closed-form points to {} (I(T;C) = {:.6} nats)",
                data.points.len(),
                path.display(),
                spec.mutual_information()
            );
        }
        None => print!("{}", io::render_curve(&data)),
    }
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> CliResult<i32> {
    let seed = resolve_seed(args.seed)?;
    let triple =
        make_sufficient_instance(args.source_size, args.statistic_size, args.target_size, seed)?;
    let (_, betas) = args.grid.resolve(true)?;
    let options = VerifyOptions {
        ba: BaConfig {
            alphabet_size: Some(args.alphabet.unwrap_or(2 * args.statistic_size)),
            max_iters: 20_000,
            tol: 1e-11,
            init: EncoderInit::PerturbedUniform { seed },
            anneal: true,
        },
        schedule: RestartSchedule {
            restarts: args.restarts,
            screen_iters: 100,
            finalists: 8,
        },
        require_sufficiency: true,
    };
    let report = verify_reduction(&triple, &betas, &options)?;
    emit(args.out.as_ref(), &io::render_verify_report(&report))?;
    let all_converged = report
        .points
        .iter()
        .all(|p| p.full.converged && p.reduced.converged);
    Ok(if all_converged { 0 } else { 3 })
}

fn cmd_reproduce(args: ReproduceArgs) -> CliResult<i32> {
    match args.target {
        ReproduceTarget::Table1 {
            dims,
            samples,
            sigma,
            seed,
            out,
        } => {
            let mut parsed = Vec::new();
            for field in dims.split(',') {
                parsed.push(field.trim().parse::<usize>().map_err(|_| {
                    CliError::Usage(format!("invalid dimension {field:?} in --dims"))
                })?);
            }
            let base = SynthConfig {
                samples,
                sigma,
                seed: resolve_seed(seed)?,
                ..SynthConfig::default()
            };
            let rows = reproduce_table1(&parsed, &base)?;
            for r in &rows {
                eprintln!(
                    "d = {:2}: I(phi;C) = {:.4} nats, max relevance = {:.4} nats, {:.2} s total ({:.2} s BA)",
                    r.dim, r.mi_phi_c, r.max_relevance, r.wallclock_s, r.ba_seconds
                );
            }
            emit(out.as_ref(), &io::render_table1_csv(&rows))?;
            Ok(if rows.iter().all(|r| r.all_converged) { 0 } else { 3 })
        }
    }
}

fn run(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::Curve(args) => cmd_curve(args),
        Command::Synth(args) => cmd_synth(args),
        Command::Reduce(args) => cmd_reduce(args),
        Command::Gaussian(args) => cmd_gaussian(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Reproduce(args) => cmd_reproduce(args),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
