//! The Fourier sampling side: sampling density, support window, sample
//! index sets, exact sample synthesis for test-function models, and noise
//! injection.
//!
//! With density `eps` and window `[-T1, T2]`, the sampling vectors are
//! `s_l(x) = sqrt(eps) e^{-2 pi i l eps x}` restricted to the scaled window
//! `[-T1/(eps(T1+T2)), T2/(eps(T1+T2))]`, so that for any model supported
//! inside `[-T1, T2]` the samples are plain transform values:
//! `<f, s_l> = sqrt(eps) fhat(-2 pi eps l)`.

use crate::error::{Error, Result};
use crate::wavelet::WaveletFamily;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::io::{BufRead, Write};
use std::path::Path;

/// Uniform Fourier sampling scheme: density and support window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplingScheme {
    epsilon: f64,
    t1: f64,
    t2: f64,
}

impl SamplingScheme {
    /// Validates `eps > 0`, `T1 >= 0 < T2` and the Nyquist constraint
    /// `eps <= 1/(T1+T2)` (with a 1e-9 relative float allowance).
    pub fn new(epsilon: f64, t1: f64, t2: f64) -> Result<Self> {
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(Error::InvalidScheme(format!("epsilon {epsilon} must be positive")));
        }
        if !(t1 >= 0.0) || !(t2 > 0.0) {
            return Err(Error::InvalidScheme(format!(
                "window [-{t1}, {t2}] must have T1 >= 0 and T2 > 0"
            )));
        }
        if epsilon * (t1 + t2) > 1.0 + 1e-9 {
            return Err(Error::InvalidScheme(format!(
                "epsilon {epsilon} violates the Nyquist constraint 1/(T1+T2) = {}",
                1.0 / (t1 + t2)
            )));
        }
        Ok(Self { epsilon, t1, t2 })
    }

    /// The minimal window for a family: `T1 = a-1`, `T2 = 2a-1`, giving the
    /// admissible density range `eps <= 1/(3a-2)`.
    pub fn minimal_for(family: &WaveletFamily, epsilon: f64) -> Result<Self> {
        let a = f64::from(family.support());
        Self::new(epsilon, a - 1.0, 2.0 * a - 1.0)
    }

    /// Largest admissible density for a family under the minimal window.
    pub fn max_density(family: &WaveletFamily) -> f64 {
        1.0 / (3.0 * f64::from(family.support()) - 2.0)
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn t1(&self) -> f64 {
        self.t1
    }

    pub fn t2(&self) -> f64 {
        self.t2
    }

    /// Support of the sampling vectors (width exactly `1/eps`).
    pub fn window(&self) -> (f64, f64) {
        let d = self.epsilon * (self.t1 + self.t2);
        (-self.t1 / d, self.t2 / d)
    }

    /// Checks the containment conditions a reconstruction family needs:
    /// `T1 >= a-1` and `T2 >= 2a-1`.
    pub fn compatible_with(&self, family: &WaveletFamily) -> Result<()> {
        let a = f64::from(family.support());
        if self.t1 + 1e-9 < a - 1.0 || self.t2 + 1e-9 < 2.0 * a - 1.0 {
            return Err(Error::InvalidScheme(format!(
                "window [-{}, {}] too small for support [0, {a}] (need T1 >= {}, T2 >= {})",
                self.t1,
                self.t2,
                a - 1.0,
                2.0 * a - 1.0
            )));
        }
        Ok(())
    }
}

/// Sample index set for `M` samples: `l = -floor(M/2) .. ceil(M/2) - 1`.
pub fn sample_indices(m: usize) -> impl Iterator<Item = i64> + ExactSizeIterator {
    let m = m as i64;
    -(m / 2)..(m + 1) / 2
}

/// Value of the sampling vector `s_l` at `x` (zero outside the window).
pub fn sampling_vector_value(scheme: &SamplingScheme, l: i64, x: f64) -> Complex64 {
    let (lo, hi) = scheme.window();
    if x < lo || x > hi {
        return Complex64::new(0.0, 0.0);
    }
    scheme.epsilon().sqrt() * Complex64::cis(-2.0 * PI * scheme.epsilon() * l as f64 * x)
}

/// A signal model with exactly computable (or quadrature-backed) samples.
#[derive(Debug, Clone)]
pub enum FunctionModel {
    /// Finite expansion in the ordered wavelet basis of `family`.
    WaveletCombo {
        family: WaveletFamily,
        coeffs: Vec<f64>,
    },
    /// Piecewise-constant function: `values[i]` on `[breakpoints[i], breakpoints[i+1])`.
    PiecewiseConstant {
        breakpoints: Vec<f64>,
        values: Vec<f64>,
    },
    /// Arbitrary real function given on a uniform quadrature grid.
    Callable { x0: f64, dx: f64, values: Vec<f64> },
}

impl FunctionModel {
    pub fn wavelet_combo(family: WaveletFamily, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("empty coefficient vector".into()));
        }
        Ok(Self::WaveletCombo { family, coeffs })
    }

    pub fn piecewise_constant(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if breakpoints.len() != values.len() + 1 || values.is_empty() {
            return Err(Error::InvalidArgument(
                "need n+1 breakpoints for n pieces".into(),
            ));
        }
        if breakpoints.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidArgument(
                "breakpoints must be strictly increasing".into(),
            ));
        }
        Ok(Self::PiecewiseConstant { breakpoints, values })
    }

    pub fn callable(x0: f64, dx: f64, values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 || !(dx > 0.0) {
            return Err(Error::InvalidArgument("need a grid of at least 2 points".into()));
        }
        Ok(Self::Callable { x0, dx, values })
    }

    /// Support interval; for wavelet combinations this is the support bound
    /// of the whole reconstruction system, `[-(a-1), 2a-1]`.
    pub fn support(&self) -> (f64, f64) {
        match self {
            Self::WaveletCombo { family, .. } => {
                let a = f64::from(family.support());
                (-(a - 1.0), 2.0 * a - 1.0)
            }
            Self::PiecewiseConstant { breakpoints, .. } => {
                (breakpoints[0], *breakpoints.last().unwrap())
            }
            Self::Callable { x0, dx, values } => (*x0, x0 + dx * (values.len() - 1) as f64),
        }
    }

    fn check_support(&self, scheme: &SamplingScheme) -> Result<()> {
        let (lo, hi) = self.support();
        if lo < -scheme.t1() - 1e-9 || hi > scheme.t2() + 1e-9 {
            return Err(Error::SupportViolation {
                lo,
                hi,
                t1_neg: -scheme.t1(),
                t2: scheme.t2(),
            });
        }
        Ok(())
    }

    /// `||f||^2` when exactly available (wavelet combinations).
    pub fn norm_sq_exact(&self) -> Option<f64> {
        match self {
            Self::WaveletCombo { coeffs, .. } => Some(coeffs.iter().map(|b| b * b).sum()),
            _ => None,
        }
    }
}

/// Samples of a model over a sample index set.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleVector {
    pub values: Vec<Complex64>,
    /// Euclidean norm of the injected noise (0 for clean synthesis).
    pub noise_norm: f64,
    /// Seed used for noise injection, when any.
    pub seed: Option<u64>,
    /// Quadrature error bound for quadrature-backed models (0 for exact paths).
    pub quad_error: f64,
}

impl SampleVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// One sample `<f, s_l> = sqrt(eps) fhat(-2 pi eps l)`.
pub fn sample_inner_product(
    scheme: &SamplingScheme,
    model: &FunctionModel,
    l: i64,
) -> Result<Complex64> {
    model.check_support(scheme)?;
    let eps = scheme.epsilon();
    let w = -2.0 * PI * eps * l as f64;
    let root_eps = eps.sqrt();
    match model {
        FunctionModel::WaveletCombo { family, coeffs } => {
            let mut acc = Complex64::new(0.0, 0.0);
            for (p, &b) in coeffs.iter().enumerate() {
                if b != 0.0 {
                    let idx = family.position_to_index(p + 1)?;
                    acc += b * family.basis_fourier_unchecked(&idx, w);
                }
            }
            Ok(root_eps * acc)
        }
        FunctionModel::PiecewiseConstant { breakpoints, values } => {
            Ok(root_eps * piecewise_transform(breakpoints, values, eps, l))
        }
        FunctionModel::Callable { x0, dx, values } => {
            Ok(root_eps * callable_transform(*x0, *dx, values, eps, l, 1))
        }
    }
}

/// `fhat(-2 pi eps l)` of a piecewise-constant model, in closed form.
fn piecewise_transform(breakpoints: &[f64], values: &[f64], eps: f64, l: i64) -> Complex64 {
    if l == 0 {
        let int: f64 = values
            .iter()
            .zip(breakpoints.windows(2))
            .map(|(v, w)| v * (w[1] - w[0]))
            .sum();
        return Complex64::new(int, 0.0);
    }
    let c = 2.0 * PI * eps * l as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for (v, w) in values.iter().zip(breakpoints.windows(2)) {
        acc += *v * (Complex64::cis(c * w[1]) - Complex64::cis(c * w[0]));
    }
    acc / Complex64::new(0.0, c)
}

/// Trapezoid approximation of `fhat(-2 pi eps l)` for a gridded callable.
fn callable_transform(x0: f64, dx: f64, values: &[f64], eps: f64, l: i64, stride: usize) -> Complex64 {
    let c = 2.0 * PI * eps * l as f64;
    let n = values.len();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut i = 0;
    while i < n {
        let x = x0 + i as f64 * dx;
        let w = if i == 0 || i + stride >= n { 0.5 } else { 1.0 };
        acc += w * values[i] * Complex64::cis(c * x);
        i += stride;
    }
    acc * dx * stride as f64
}

/// Samples the model over the index set of size `m`.
///
/// Wavelet combinations are synthesized by grouping coefficients per level
/// (one transform evaluation plus a Horner pass per level and sample); this
/// is algebraically identical to summing `sample_inner_product` per
/// position and is cross-checked against it in the tests.
pub fn synthesize_samples(
    scheme: &SamplingScheme,
    model: &FunctionModel,
    m: usize,
) -> Result<SampleVector> {
    if m == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    model.check_support(scheme)?;
    let eps = scheme.epsilon();
    let ls: Vec<i64> = sample_indices(m).collect();
    let (values, quad_error) = match model {
        FunctionModel::WaveletCombo { family, coeffs } => {
            let vals: Vec<Complex64> = ls
                .par_iter()
                .map(|&l| eps.sqrt() * combo_transform(family, coeffs, -2.0 * PI * eps * l as f64))
                .collect();
            (vals, 0.0)
        }
        FunctionModel::PiecewiseConstant { breakpoints, values } => {
            let vals = ls
                .iter()
                .map(|&l| eps.sqrt() * piecewise_transform(breakpoints, values, eps, l))
                .collect();
            (vals, 0.0)
        }
        FunctionModel::Callable { x0, dx, values } => {
            let mut worst = 0.0_f64;
            let mut vals = Vec::with_capacity(m);
            for &l in &ls {
                let fine = callable_transform(*x0, *dx, values, eps, l, 1);
                if values.len() % 2 == 1 {
                    let coarse = callable_transform(*x0, *dx, values, eps, l, 2);
                    worst = worst.max((fine - coarse).norm() / 3.0);
                }
                vals.push(eps.sqrt() * fine);
            }
            (vals, worst * eps.sqrt())
        }
    };
    Ok(SampleVector {
        values,
        noise_norm: 0.0,
        seed: None,
        quad_error,
    })
}

/// `fhat(w)` of an ordered wavelet expansion, grouped per level.
fn combo_transform(family: &WaveletFamily, coeffs: &[f64], w: f64) -> Complex64 {
    let a = family.support_i64();
    let n_scaling = (2 * a - 1) as usize;
    let mut acc = Complex64::new(0.0, 0.0);

    let head = coeffs.len().min(n_scaling);
    if head > 0 {
        acc += family.scaling_fourier(w) * shift_polynomial(&coeffs[..head], -a + 1, w);
    }
    let mut pos = n_scaling;
    let mut level: u32 = 0;
    while pos < coeffs.len() {
        let count = (((1_i64 << level) + 1) * a - 1) as usize;
        let block = coeffs.len().min(pos + count);
        let scale = (1_u64 << level) as f64;
        let warg = w / scale;
        acc += scale.sqrt().recip()
            * family.wavelet_fourier(warg)
            * shift_polynomial(&coeffs[pos..block], -a + 1, warg);
        pos += count;
        level += 1;
    }
    acc
}

/// `sum_k c_k e^{-i w (k0 + k)}` by Horner in `e^{-iw}`.
fn shift_polynomial(coeffs: &[f64], k0: i64, w: f64) -> Complex64 {
    let z = Complex64::cis(-w);
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc * Complex64::cis(-w * k0 as f64)
}

/// Adds a pseudorandom complex vector rescaled to Euclidean norm exactly
/// `level`.  Deterministic in `seed`; `level = 0` returns the input.
pub fn add_noise(v: &SampleVector, level: f64, seed: u64) -> SampleVector {
    if level == 0.0 {
        return SampleVector {
            noise_norm: 0.0,
            seed: Some(seed),
            ..v.clone()
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut noise: Vec<Complex64> = (0..v.len())
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let norm = noise.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let scale = level / norm;
    for z in noise.iter_mut() {
        *z *= scale;
    }
    SampleVector {
        values: v.values.iter().zip(&noise).map(|(a, b)| a + b).collect(),
        noise_norm: level,
        seed: Some(seed),
        quad_error: v.quad_error,
    }
}

/// Exact truncated-series error `||f - P_M f|| = sqrt(||f||^2 - sum |<f,s_l>|^2)`
/// for wavelet-combination models.
pub fn truncated_fourier_error(
    scheme: &SamplingScheme,
    model: &FunctionModel,
    m: usize,
) -> Result<f64> {
    let norm_sq = model.norm_sq_exact().ok_or(Error::NotWaveletCombo)?;
    let samples = synthesize_samples(scheme, model, m)?;
    let captured: f64 = samples.values.iter().map(|v| v.norm_sqr()).sum();
    Ok((norm_sq - captured).max(0.0).sqrt())
}

/// Evaluates the truncated series `P_M f = sum_l v_l s_l` at `x`.
pub fn eval_truncated_series(scheme: &SamplingScheme, v: &SampleVector, x: f64) -> Complex64 {
    let (lo, hi) = scheme.window();
    if x < lo || x > hi {
        return Complex64::new(0.0, 0.0);
    }
    let root_eps = scheme.epsilon().sqrt();
    let step = Complex64::cis(-2.0 * PI * scheme.epsilon() * x);
    let m = v.len() as i64;
    let mut phase = Complex64::cis(-2.0 * PI * scheme.epsilon() * (-(m / 2)) as f64 * x);
    let mut acc = Complex64::new(0.0, 0.0);
    for val in &v.values {
        acc += val * phase;
        phase *= step;
    }
    root_eps * acc
}

#[derive(Debug, Serialize, Deserialize)]
struct SampleFileHeader {
    epsilon: f64,
    #[serde(rename = "T1")]
    t1: f64,
    #[serde(rename = "T2")]
    t2: f64,
    #[serde(rename = "M")]
    m: usize,
    noise_norm: f64,
    seed: Option<u64>,
    #[serde(default)]
    quad_error: f64,
}

/// Writes samples as CSV `(l, re, im)` with a JSON header line.
pub fn write_samples_csv(path: &Path, scheme: &SamplingScheme, v: &SampleVector) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    let header = SampleFileHeader {
        epsilon: scheme.epsilon(),
        t1: scheme.t1(),
        t2: scheme.t2(),
        m: v.len(),
        noise_norm: v.noise_norm,
        seed: v.seed,
        quad_error: v.quad_error,
    };
    writeln!(out, "# {}", serde_json::to_string(&header)?)?;
    writeln!(out, "l,re,im")?;
    for (l, val) in sample_indices(v.len()).zip(&v.values) {
        writeln!(out, "{l},{},{}", val.re, val.im)?;
    }
    Ok(())
}

/// Reads a sample CSV written by [`write_samples_csv`].
pub fn read_samples_csv(path: &Path) -> Result<(SamplingScheme, SampleVector)> {
    let file = std::io::BufReader::new(std::fs::File::open(path)?);
    let mut lines = file.lines();
    let header_line = lines
        .next()
        .ok_or_else(|| Error::MalformedFile("empty file".into()))??;
    let json = header_line
        .strip_prefix("# ")
        .ok_or_else(|| Error::MalformedFile("missing `# {json}` header line".into()))?;
    let header: SampleFileHeader =
        serde_json::from_str(json).map_err(|e| Error::MalformedFile(format!("bad header: {e}")))?;
    let scheme = SamplingScheme::new(header.epsilon, header.t1, header.t2)?;
    let columns = lines
        .next()
        .ok_or_else(|| Error::MalformedFile("missing column row".into()))??;
    if columns.trim() != "l,re,im" {
        return Err(Error::MalformedFile(format!("unexpected columns `{columns}`")));
    }
    let mut values = Vec::with_capacity(header.m);
    let expected: Vec<i64> = sample_indices(header.m).collect();
    for (row, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        let mut next_field = |name: &str| -> Result<f64> {
            parts
                .next()
                .ok_or_else(|| Error::MalformedFile(format!("row {row}: missing {name}")))?
                .trim()
                .parse::<f64>()
                .map_err(|e| Error::MalformedFile(format!("row {row}: {name}: {e}")))
        };
        let l = next_field("l")? as i64;
        if row >= expected.len() || l != expected[row] {
            return Err(Error::MalformedFile(format!(
                "row {row}: unexpected sample index {l}"
            )));
        }
        let re = next_field("re")?;
        let im = next_field("im")?;
        values.push(Complex64::new(re, im));
    }
    if values.len() != header.m {
        return Err(Error::MalformedFile(format!(
            "expected {} rows, found {}",
            header.m,
            values.len()
        )));
    }
    Ok((
        scheme,
        SampleVector {
            values,
            noise_norm: header.noise_norm,
            seed: header.seed,
            quad_error: header.quad_error,
        },
    ))
}
