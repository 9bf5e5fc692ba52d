//! Library-side implementations of the command-line experiments: rate
//! curves, error-table replication with embedded reference values, sample
//! reconstruction with plot-ready grids, and the oracle verification run.
//!
//! The `gensamp` binary is a thin argument parser over these functions, and
//! every experiment is equally reachable from library code and the runnable
//! examples.

use crate::error::{Error, Result};
use crate::gs::{self, RANK_TOL};
use crate::oracle;
use crate::sampling::{
    self, add_noise, read_samples_csv, sample_indices, synthesize_samples, FunctionModel,
    SampleVector, SamplingScheme,
};
use crate::ssr::{self, SsrCurve};
use crate::wavelet::WaveletFamily;
use num_complex::Complex64;
use serde_json::json;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Parses a density given as a decimal or a rational string like `1/13`,
/// which avoids decimal drift for the critical densities.
pub fn parse_rational(text: &str) -> Result<f64> {
    let t = text.trim();
    if let Some((num, den)) = t.split_once('/') {
        let n: f64 = num
            .trim()
            .parse()
            .map_err(|e| Error::InvalidArgument(format!("bad numerator in `{t}`: {e}")))?;
        let d: f64 = den
            .trim()
            .parse()
            .map_err(|e| Error::InvalidArgument(format!("bad denominator in `{t}`: {e}")))?;
        if d == 0.0 {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        Ok(n / d)
    } else {
        t.parse()
            .map_err(|e| Error::InvalidArgument(format!("bad number `{t}`: {e}")))
    }
}

fn provenance(command: &str, config: serde_json::Value) -> serde_json::Value {
    json!({
        "artifact": "gensamp",
        "version": ARTIFACT_VERSION,
        "command": command,
        "config": config,
    })
}

// ---------------------------------------------------------------------------
// ssr command
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct SsrConfig {
    pub family: String,
    pub epsilon: f64,
    pub theta: f64,
    pub r_min: u32,
    pub r_max: u32,
    pub search_cap_mult: usize,
    pub output: Option<PathBuf>,
}

/// Runs the rate search at the dyadic truncation sizes `N_R`,
/// `R = r_min..=r_max`, and writes the curve as CSV.
pub fn run_ssr(config: &SsrConfig) -> Result<SsrCurve> {
    let family = WaveletFamily::make(&config.family)?;
    let scheme = SamplingScheme::minimal_for(&family, config.epsilon)?;
    let ns: Vec<usize> = (config.r_min..=config.r_max)
        .map(|r| family.n_r(r))
        .collect();
    let curve = ssr::ssr_curve(&family, &scheme, config.theta, &ns, config.search_cap_mult)?;
    if let Some(path) = &config.output {
        write_ssr_csv(path, config, &curve)?;
    }
    Ok(curve)
}

fn write_ssr_csv(path: &Path, config: &SsrConfig, curve: &SsrCurve) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    let header = provenance(
        "ssr",
        json!({
            "family": config.family,
            "epsilon": curve.epsilon,
            "theta": curve.theta,
            "r_min": config.r_min,
            "r_max": config.r_max,
            "search_cap_mult": config.search_cap_mult,
        }),
    );
    writeln!(out, "# {header}")?;
    writeln!(out, "N,theta,M_star,sigma_min_at_M_star,ratio")?;
    for p in &curve.points {
        writeln!(
            out,
            "{},{},{},{},{}",
            p.n, curve.theta, p.m_star, p.sigma_min, p.ratio
        )?;
    }
    Ok(())
}

pub fn render_ssr(curve: &SsrCurve) -> String {
    let mut s = format!(
        "stable sampling rate (theta = {}, epsilon = {})\n{:>8} {:>8} {:>12} {:>10}\n",
        curve.theta, curve.epsilon, "N", "M*", "sigma_min", "M*/N"
    );
    for p in &curve.points {
        s.push_str(&format!(
            "{:>8} {:>8} {:>12.6} {:>10.4}\n",
            p.n, p.m_star, p.sigma_min, p.ratio
        ));
    }
    s
}

// ---------------------------------------------------------------------------
// table command
// ---------------------------------------------------------------------------

/// One error-table experiment: decaying coefficients `beta_j = j^-alpha`,
/// truncated-series error versus least-squares recovery error.
#[derive(Debug, Clone)]
pub struct TableConfig {
    pub family: String,
    pub epsilon: f64,
    pub m: usize,
    pub n: usize,
    pub alpha: f64,
    pub noise: f64,
    pub seed: u64,
    pub n_coeffs: usize,
}

/// Measured row of the error table.
#[derive(Debug, Clone)]
pub struct TableRow {
    pub family: String,
    pub m: usize,
    pub n: usize,
    pub alpha: f64,
    pub noise: f64,
    pub err_fourier: f64,
    pub err_gs: f64,
    pub conv_exponent: f64,
    pub sigma_min: f64,
    /// Recovery error of the same configuration with clean samples.
    pub err_gs_clean: f64,
    /// Set when the stable solver refused and the truncated pseudo-inverse
    /// path was used (the sub-rate instability regime).
    pub truncated_solve: bool,
}

/// Runs one table row.
pub fn run_table_row(config: &TableConfig) -> Result<TableRow> {
    let family = WaveletFamily::make(&config.family)?;
    let scheme = SamplingScheme::minimal_for(&family, config.epsilon)?;
    if config.alpha <= 1.0 {
        return Err(Error::InvalidArgument("alpha must exceed 1".into()));
    }
    if config.n_coeffs < config.n {
        return Err(Error::InvalidArgument(
            "coefficient count below reconstruction size".into(),
        ));
    }
    let beta: Vec<f64> = (1..=config.n_coeffs)
        .map(|j| (j as f64).powf(-config.alpha))
        .collect();
    let model = FunctionModel::wavelet_combo(family.clone(), beta.clone())?;
    let clean = synthesize_samples(&scheme, &model, config.m)?;
    let err_fourier = sampling::truncated_fourier_error(&scheme, &model, config.m)?;
    let problem = gs::assemble(&family, &scheme, config.n, config.m)?;

    let solve_any = |samples: &SampleVector| -> Result<(Vec<Complex64>, f64, bool)> {
        match gs::solve(&problem, samples) {
            Ok(sol) => Ok((sol.alpha, sol.sigma_min, false)),
            Err(Error::IllPosed { .. }) => {
                let sol = gs::solve_truncated(&problem, samples, RANK_TOL)?;
                Ok((sol.alpha, sol.sigma_min, true))
            }
            Err(e) => Err(e),
        }
    };

    let (alpha_clean, sigma_min, truncated_clean) = solve_any(&clean)?;
    let err_gs_clean = gs::reconstruction_error(&beta, &alpha_clean, config.n)?;
    let (err_gs, truncated_solve) = if config.noise > 0.0 {
        let noisy = add_noise(&clean, config.noise, config.seed);
        let (alpha, _, truncated) = solve_any(&noisy)?;
        (gs::reconstruction_error(&beta, &alpha, config.n)?, truncated)
    } else {
        (err_gs_clean, truncated_clean)
    };
    Ok(TableRow {
        family: family.name().to_string(),
        m: config.m,
        n: config.n,
        alpha: config.alpha,
        noise: config.noise,
        err_fourier,
        err_gs,
        conv_exponent: -err_gs.ln() / (config.n as f64).ln(),
        sigma_min,
        err_gs_clean,
        truncated_solve,
    })
}

/// Reference cell for `--check`: measured values are compared against these
/// embedded reference results.
#[derive(Debug, Clone, Copy)]
pub struct ReferenceRow {
    pub family: &'static str,
    pub epsilon: (u32, u32),
    pub m: usize,
    pub n: usize,
    pub alpha: f64,
    pub noise: f64,
    pub err_fourier: f64,
    pub err_gs: f64,
    /// Sub-rate cells amplify a random noise draw through a near-singular
    /// factorization; they are reported but not judged by a fixed factor.
    pub stable: bool,
}

const fn rr(
    family: &'static str,
    epsilon: (u32, u32),
    m: usize,
    n: usize,
    alpha: f64,
    noise: f64,
    err_fourier: f64,
    err_gs: f64,
    stable: bool,
) -> ReferenceRow {
    ReferenceRow {
        family,
        epsilon,
        m,
        n,
        alpha,
        noise,
        err_fourier,
        err_gs,
        stable,
    }
}

/// Noiseless accuracy reference (three families, decaying coefficients).
pub const ACCURACY_REFERENCE: [ReferenceRow; 9] = [
    rr("db3t", (1, 13), 906, 348, 2.0, 0.0, 6.3e-4, 8.9e-5, true),
    rr("db3t", (1, 13), 1748, 672, 2.0, 0.0, 2.9e-4, 3.3e-5, true),
    rr("db3t", (1, 13), 3422, 1316, 2.0, 0.0, 1.6e-4, 1.2e-5, true),
    rr("db2t", (1, 7), 934, 400, 2.5, 0.0, 2.3e-3, 3.1e-6, true),
    rr("db2t", (1, 7), 1834, 786, 2.5, 0.0, 1.2e-3, 8.1e-7, true),
    rr("db2t", (1, 7), 3632, 1556, 2.5, 0.0, 6.3e-4, 2.0e-7, true),
    rr("haar", (1, 1), 256, 256, 3.0, 0.0, 1.4e-2, 4.2e-7, true),
    rr("haar", (1, 1), 512, 512, 3.0, 0.0, 1.2e-2, 7.5e-8, true),
    rr("haar", (1, 1), 1024, 1024, 3.0, 0.0, 1.2e-2, 1.3e-8, true),
];

/// Noisy-sample stability reference.
pub const NOISE_REFERENCE: [ReferenceRow; 6] = [
    rr("db4", (1, 7), 934, 400, 2.5, 1.0e-1, 1.0e-1, 9.7e-2, true),
    rr("db4", (1, 7), 1834, 786, 2.5, 1.0e-2, 1.0e-2, 9.7e-3, true),
    rr("db4", (1, 7), 3632, 1556, 2.5, 1.0e-3, 1.2e-3, 9.8e-4, true),
    rr("haar", (1, 1), 256, 256, 3.0, 1.0e-4, 1.3e-2, 1.2e-4, true),
    rr("haar", (1, 1), 512, 512, 3.0, 1.0e-5, 1.2e-2, 1.2e-5, true),
    rr("haar", (1, 1), 1024, 1024, 3.0, 1.0e-6, 1.2e-2, 1.2e-6, true),
];

/// Sub-rate instability reference: for each sample count, a compliant
/// reconstruction size (ratio `1/(eps a)`) next to one only 5% larger.
pub const INSTABILITY_REFERENCE: [ReferenceRow; 12] = [
    rr("db4", (1, 7), 482, 206, 3.0, 0.0, 4.7e-3, 7.3e-7, true),
    rr("db4", (1, 7), 482, 217, 3.0, 0.0, 4.7e-3, 2.8e-2, false),
    rr("db4", (1, 7), 934, 400, 3.0, 0.0, 2.4e-3, 1.4e-7, true),
    rr("db4", (1, 7), 934, 421, 3.0, 0.0, 2.4e-3, 5.4e-2, false),
    rr("db4", (1, 7), 1834, 786, 3.0, 0.0, 1.2e-3, 2.6e-8, true),
    rr("db4", (1, 7), 1834, 827, 3.0, 0.0, 1.2e-3, 1.4e-2, false),
    rr("db4", (1, 7), 482, 206, 3.0, 1.0e-5, 4.7e-3, 9.6e-6, true),
    rr("db4", (1, 7), 482, 217, 3.0, 1.0e-5, 4.7e-3, 6.7e2, false),
    rr("db4", (1, 7), 934, 400, 3.0, 1.0e-5, 2.4e-3, 9.5e-6, true),
    rr("db4", (1, 7), 934, 421, 3.0, 1.0e-5, 2.4e-3, 4.7e3, false),
    rr("db4", (1, 7), 1834, 786, 3.0, 1.0e-5, 1.2e-3, 9.7e-6, true),
    rr("db4", (1, 7), 1834, 827, 3.0, 1.0e-5, 1.2e-3, 1.9e3, false),
];

pub fn preset_rows(name: &str) -> Result<&'static [ReferenceRow]> {
    match name {
        "accuracy" => Ok(&ACCURACY_REFERENCE),
        "noise" => Ok(&NOISE_REFERENCE),
        "instability" => Ok(&INSTABILITY_REFERENCE),
        other => Err(Error::InvalidArgument(format!(
            "unknown preset `{other}` (expected accuracy, noise or instability)"
        ))),
    }
}

/// Runs a whole preset; rows are independent experiments.
pub fn run_preset(name: &str, seed: u64) -> Result<Vec<(ReferenceRow, TableRow)>> {
    let rows = preset_rows(name)?;
    let mut out = Vec::with_capacity(rows.len());
    for r in rows {
        let config = TableConfig {
            family: r.family.to_string(),
            epsilon: f64::from(r.epsilon.0) / f64::from(r.epsilon.1),
            m: r.m,
            n: r.n,
            alpha: r.alpha,
            noise: r.noise,
            seed,
            n_coeffs: 3000,
        };
        out.push((*r, run_table_row(&config)?));
    }
    Ok(out)
}

pub fn write_table_csv(
    path: &Path,
    command_config: serde_json::Value,
    rows: &[TableRow],
) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "# {}", provenance("table", command_config))?;
    writeln!(out, "M,N,alpha,err_fourier,err_gs,conv_exponent,noise,family")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.m, r.n, r.alpha, r.err_fourier, r.err_gs, r.conv_exponent, r.noise, r.family
        )?;
    }
    Ok(())
}

pub fn render_table_row(row: &TableRow) -> String {
    format!(
        "{:<5} M={:<5} N={:<5} alpha={:<4} noise={:<8.1e} err_fourier={:<10.3e} err_gs={:<10.3e} exponent={:<6.3}{}",
        row.family,
        row.m,
        row.n,
        row.alpha,
        row.noise,
        row.err_fourier,
        row.err_gs,
        row.conv_exponent,
        if row.truncated_solve { "  [sub-rate regime: truncated pseudo-inverse]" } else { "" }
    )
}

/// Compares one measured row against its reference cell, reporting relative
/// deviations.  Stable cells are judged at a factor of two; sub-rate cells
/// are reported without judgement.
pub fn render_check(reference: &ReferenceRow, row: &TableRow) -> (bool, String) {
    let dev_f = row.err_fourier / reference.err_fourier;
    let dev_g = row.err_gs / reference.err_gs;
    let mut ok = true;
    let verdict = |dev: f64, judged: bool, ok: &mut bool| -> String {
        if !judged {
            return format!("x{dev:.2} (informational)");
        }
        if (0.5..=2.0).contains(&dev) {
            format!("x{dev:.2} OK")
        } else {
            *ok = false;
            format!("x{dev:.2} DEV")
        }
    };
    let f_txt = verdict(dev_f, reference.stable, &mut ok);
    let g_txt = verdict(dev_g, reference.stable, &mut ok);
    (
        ok,
        format!(
            "    vs reference: err_fourier {:9.1e} -> {f_txt}; err_gs {:9.1e} -> {g_txt}",
            reference.err_fourier, reference.err_gs
        ),
    )
}

// ---------------------------------------------------------------------------
// reconstruct command
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DemoSignal {
    /// Box with two narrow spikes; the classic ringing showcase.
    BoxSpikes,
    /// Transform-domain profile `(x+1)` on the unit interval, sampled by
    /// quadrature.
    Bandlimited,
}

impl DemoSignal {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "box-spikes" => Ok(Self::BoxSpikes),
            "bandlimited" => Ok(Self::Bandlimited),
            other => Err(Error::InvalidArgument(format!(
                "unknown demo `{other}` (expected box-spikes or bandlimited)"
            ))),
        }
    }

    pub fn model(&self) -> FunctionModel {
        match self {
            Self::BoxSpikes => {
                let s = 1.0 / 300.0;
                FunctionModel::piecewise_constant(
                    vec![
                        1.0 / 3.0,
                        2.0 / 5.0,
                        2.0 / 5.0 + s,
                        3.0 / 5.0,
                        3.0 / 5.0 + s,
                        2.0 / 3.0,
                    ],
                    vec![0.5, 1.0, 0.5, 1.5, 0.5],
                )
                .expect("demo model")
            }
            Self::Bandlimited => {
                let n = (1 << 16) + 1;
                let dx = 1.0 / ((n - 1) as f64);
                let values = (0..n).map(|i| i as f64 * dx + 1.0).collect();
                FunctionModel::callable(0.0, dx, values).expect("demo model")
            }
        }
    }

    /// True signal values for plotting (right-continuous at jumps).
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Self::BoxSpikes => {
                let s = 1.0 / 300.0;
                let mut v = 0.0;
                if (1.0 / 3.0..2.0 / 3.0).contains(&x) {
                    v += 0.5;
                }
                if (0.4..0.4 + s).contains(&x) {
                    v += 0.5;
                }
                if (0.6..0.6 + s).contains(&x) {
                    v += 1.0;
                }
                v
            }
            Self::Bandlimited => {
                if (0.0..=1.0).contains(&x) {
                    x + 1.0
                } else {
                    0.0
                }
            }
        }
    }

    pub fn defaults(&self) -> (usize, usize, f64) {
        match self {
            Self::BoxSpikes => (2048, 512, 0.5),
            Self::Bandlimited => (512, 128, 0.5),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ReconstructConfig {
    pub input: Option<PathBuf>,
    pub demo: Option<DemoSignal>,
    pub family: String,
    pub n: usize,
    /// Sample count; demos synthesize this many, file input fixes it.
    pub m: Option<usize>,
    /// Density for demo synthesis; file input carries its own.
    pub epsilon: Option<f64>,
    pub grid_pow: u32,
    pub output_prefix: PathBuf,
}

#[derive(Debug, Clone)]
pub struct ReconstructOutput {
    pub solution: gs::GsSolution,
    pub scheme: SamplingScheme,
    pub m: usize,
    pub grid_x: Vec<f64>,
    pub truth: Option<Vec<f64>>,
    pub gs_values: Vec<Complex64>,
    pub fourier_values: Vec<Complex64>,
    pub coeffs_path: PathBuf,
    pub grid_path: PathBuf,
}

/// Recovers coefficients from a sample file or a built-in demo signal and
/// writes the coefficient JSON plus a dense evaluation grid of the recovery
/// and of the truncated series (same samples for both).
pub fn run_reconstruct(config: &ReconstructConfig) -> Result<ReconstructOutput> {
    let family = WaveletFamily::make(&config.family)?;
    let (scheme, samples, truth_fn): (
        SamplingScheme,
        SampleVector,
        Option<Box<dyn Fn(f64) -> f64>>,
    ) = match (&config.input, &config.demo) {
        (Some(path), None) => {
            let (scheme, samples) = read_samples_csv(path)?;
            (scheme, samples, None)
        }
        (None, Some(demo)) => {
            let (m_default, _, eps_default) = demo.defaults();
            let eps = config.epsilon.unwrap_or(eps_default);
            let m = config.m.unwrap_or(m_default);
            let scheme = SamplingScheme::minimal_for(&family, eps)?;
            let model = demo.model();
            let samples = synthesize_samples(&scheme, &model, m)?;
            let d = *demo;
            (
                scheme,
                samples,
                Some(Box::new(move |x| d.eval(x)) as Box<dyn Fn(f64) -> f64>),
            )
        }
        _ => {
            return Err(Error::InvalidArgument(
                "need exactly one of --input or --demo".into(),
            ))
        }
    };
    let m = samples.len();
    let problem = gs::assemble(&family, &scheme, config.n, m)?;
    let solution = gs::solve(&problem, &samples)?;

    // dense dyadic evaluation grid across the scheme window
    let (lo, hi) = scheme.window();
    let step = 1.0 / (1u64 << config.grid_pow) as f64;
    let x0_num = (lo / step).ceil() as i64;
    let len = (((hi - lo) / step).floor() as usize).max(2);
    let grid_x: Vec<f64> = (0..len).map(|i| (x0_num + i as i64) as f64 * step).collect();
    let gs_values =
        family.eval_expansion_on_grid(&solution.alpha, config.grid_pow, x0_num, len)?;
    let fourier_values: Vec<Complex64> = grid_x
        .iter()
        .map(|&x| sampling::eval_truncated_series(&scheme, &samples, x))
        .collect();
    let truth = truth_fn.map(|f| grid_x.iter().map(|&x| f(x)).collect());

    let coeffs_path = with_suffix(&config.output_prefix, "_coeffs.json");
    let grid_path = with_suffix(&config.output_prefix, "_grid.csv");
    let config_json = json!({
        "family": family.name(),
        "N": config.n,
        "M": m,
        "epsilon": scheme.epsilon(),
        "grid_pow": config.grid_pow,
        "demo": config.demo.map(|d| format!("{d:?}")),
        "input": config.input.as_ref().map(|p| p.display().to_string()),
    });
    let mut doc = gs::solution_to_json(&problem, &solution);
    doc["provenance"] = provenance("reconstruct", config_json.clone());
    std::fs::write(&coeffs_path, serde_json::to_string_pretty(&doc)?)?;

    let mut out = std::io::BufWriter::new(std::fs::File::create(&grid_path)?);
    writeln!(out, "# {}", provenance("reconstruct", config_json))?;
    writeln!(out, "x,f,gs_re,gs_im,fourier_re,fourier_im")?;
    for (i, &x) in grid_x.iter().enumerate() {
        let f = truth.as_ref().map_or(f64::NAN, |t| t[i]);
        writeln!(
            out,
            "{x},{f},{},{},{},{}",
            gs_values[i].re, gs_values[i].im, fourier_values[i].re, fourier_values[i].im
        )?;
    }
    drop(out);

    Ok(ReconstructOutput {
        solution,
        scheme,
        m,
        grid_x,
        truth,
        gs_values,
        fourier_values,
        coeffs_path,
        grid_path,
    })
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut name = prefix.as_os_str().to_os_string();
    name.push(suffix);
    PathBuf::from(name)
}

// ---------------------------------------------------------------------------
// verify command
// ---------------------------------------------------------------------------

/// Runs the oracle cross-check suite; the report renders deterministically
/// for a fixed seed.
pub fn run_verify(seed: u64) -> oracle::VerifyReport {
    oracle::run_verify(seed)
}
