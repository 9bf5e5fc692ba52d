//! Thin command-line front end over the library experiments.
//!
//! Exit codes: 0 success, 1 runtime/verification failure, 2 invalid
//! arguments (including Nyquist violations), 3 malformed input file.

use clap::{Args, Parser, Subcommand};
use gensamp::cli::{
    self, parse_rational, render_check, render_ssr, render_table_row, DemoSignal,
    ReconstructConfig, SsrConfig, TableConfig,
};
use gensamp::error::Error;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "gensamp", version, about = "Wavelet coefficient recovery from uniform Fourier samples")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the stable sampling rate over dyadic truncation sizes.
    Ssr(SsrArgs),
    /// Run decaying-coefficient error experiments (one row or a preset).
    Table(TableArgs),
    /// Recover coefficients from a sample file or a built-in demo signal.
    Reconstruct(ReconstructArgs),
    /// Run the oracle cross-check suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SsrArgs {
    /// Wavelet family: haar, db4, db6 (aliases db2t, db3t).
    #[arg(long)]
    family: String,
    /// Sampling density; accepts rationals like 1/13.
    #[arg(long)]
    epsilon: String,
    /// Conditioning bound theta (> 1).
    #[arg(long)]
    theta: f64,
    /// Smallest dyadic scale R.
    #[arg(long, default_value_t = 2)]
    rmin: u32,
    /// Largest dyadic scale R.
    #[arg(long)]
    rmax: u32,
    /// Search cap as a multiple of N.
    #[arg(long, default_value_t = 16)]
    search_cap_mult: usize,
    /// CSV output path.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    /// Run an embedded preset: accuracy, noise or instability.
    #[arg(long, conflicts_with_all = ["family", "m", "n"])]
    preset: Option<String>,
    /// Compare measured values against the embedded reference rows.
    #[arg(long, requires = "preset")]
    check: bool,
    /// Wavelet family (single-row mode).
    #[arg(long)]
    family: Option<String>,
    /// Sampling density; accepts rationals like 1/7.
    #[arg(long)]
    epsilon: Option<String>,
    /// Sample count M.
    #[arg(long)]
    m: Option<usize>,
    /// Reconstruction size N.
    #[arg(long)]
    n: Option<usize>,
    /// Coefficient decay exponent (> 1).
    #[arg(long, default_value_t = 3.0)]
    alpha: f64,
    /// Euclidean norm of injected sample noise.
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    /// Noise seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of decaying coefficients in the test signal.
    #[arg(long, default_value_t = 3000)]
    coeffs: usize,
    /// CSV output path.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ReconstructArgs {
    /// Sample CSV produced by this tool (header + l,re,im rows).
    #[arg(long, conflicts_with = "demo")]
    input: Option<PathBuf>,
    /// Built-in demo signal: box-spikes or bandlimited.
    #[arg(long)]
    demo: Option<String>,
    /// Wavelet family.
    #[arg(long, default_value = "haar")]
    family: String,
    /// Reconstruction size N.
    #[arg(long)]
    n: Option<usize>,
    /// Sample count M (demo mode).
    #[arg(long)]
    m: Option<usize>,
    /// Sampling density (demo mode); accepts rationals.
    #[arg(long)]
    epsilon: Option<String>,
    /// Output grid resolution: 2^grid_pow points per unit.
    #[arg(long, default_value_t = 14)]
    grid_pow: u32,
    /// Output path prefix for `_coeffs.json` and `_grid.csv`.
    #[arg(long, default_value = "reconstruction")]
    output_prefix: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::InvalidScheme(_)
        | Error::InvalidArgument(_)
        | Error::UnknownFamily(_)
        | Error::InvalidTaps(_)
        | Error::InvalidIndex(_)
        | Error::Precondition(_) => 2,
        Error::MalformedFile(_) => 3,
        _ => 1,
    }
}

fn apply_thread_cap() {
    if let Ok(text) = std::env::var("GS_THREADS") {
        if let Ok(n) = text.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Ssr(args) => {
            let config = SsrConfig {
                family: args.family,
                epsilon: parse_rational(&args.epsilon)?,
                theta: args.theta,
                r_min: args.rmin,
                r_max: args.rmax,
                search_cap_mult: args.search_cap_mult,
                output: args.output,
            };
            let curve = cli::run_ssr(&config)?;
            print!("{}", render_ssr(&curve));
            Ok(0)
        }
        Command::Table(args) => {
            let rows = if let Some(preset) = &args.preset {
                let measured = cli::run_preset(preset, args.seed)?;
                let mut all_ok = true;
                let mut rows = Vec::with_capacity(measured.len());
                for (reference, row) in measured {
                    println!("{}", render_table_row(&row));
                    if args.check {
                        let (ok, text) = render_check(&reference, &row);
                        println!("{text}");
                        all_ok &= ok;
                    }
                    rows.push(row);
                }
                if args.check {
                    println!(
                        "reference comparison: {}",
                        if all_ok { "all stable cells within factor 2" } else { "DEVIATIONS PRESENT" }
                    );
                }
                rows
            } else {
                let (family, m, n) = match (&args.family, args.m, args.n) {
                    (Some(f), Some(m), Some(n)) => (f.clone(), m, n),
                    _ => {
                        return Err(Error::InvalidArgument(
                            "single-row mode needs --family, --m and --n (or use --preset)".into(),
                        ))
                    }
                };
                let epsilon = match &args.epsilon {
                    Some(text) => parse_rational(text)?,
                    None => return Err(Error::InvalidArgument("missing --epsilon".into())),
                };
                let config = TableConfig {
                    family,
                    epsilon,
                    m,
                    n,
                    alpha: args.alpha,
                    noise: args.noise,
                    seed: args.seed,
                    n_coeffs: args.coeffs,
                };
                let row = cli::run_table_row(&config)?;
                println!("{}", render_table_row(&row));
                vec![row]
            };
            if let Some(path) = &args.output {
                let config_json = serde_json::json!({
                    "preset": args.preset,
                    "alpha": args.alpha,
                    "noise": args.noise,
                    "seed": args.seed,
                    "coeffs": args.coeffs,
                });
                cli::write_table_csv(path, config_json, &rows)?;
            }
            Ok(0)
        }
        Command::Reconstruct(args) => {
            let demo = match &args.demo {
                Some(name) => Some(DemoSignal::parse(name)?),
                None => None,
            };
            let n = match (args.n, demo) {
                (Some(n), _) => n,
                (None, Some(d)) => d.defaults().1,
                (None, None) => {
                    return Err(Error::InvalidArgument("missing --n for file input".into()))
                }
            };
            let epsilon = match &args.epsilon {
                Some(text) => Some(parse_rational(text)?),
                None => None,
            };
            let config = ReconstructConfig {
                input: args.input,
                demo,
                family: args.family,
                n,
                m: args.m,
                epsilon,
                grid_pow: args.grid_pow,
                output_prefix: args.output_prefix,
            };
            let out = cli::run_reconstruct(&config)?;
            println!(
                "recovered {} coefficients from {} samples (sigma_min {:.6}, kappa {:.4}, residual {:.3e})",
                out.solution.alpha.len(),
                out.m,
                out.solution.sigma_min,
                out.solution.kappa,
                out.solution.residual
            );
            println!(
                "wrote {} and {}",
                out.coeffs_path.display(),
                out.grid_path.display()
            );
            Ok(0)
        }
        Command::Verify(args) => {
            let report = cli::run_verify(args.seed);
            print!("{}", report.render());
            Ok(if report.all_passed() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    apply_thread_cap();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
