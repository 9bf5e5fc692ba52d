//! Stable sampling rate: the least number of Fourier samples that keeps the
//! reconstruction operator's condition number below a target, curves of that
//! quantity over dyadic truncation sizes, and the sub-threshold instability
//! experiment with its Chebyshev-type witness polynomial.

use crate::error::{Error, Result};
use crate::gs::{assemble_matrix, smallest_singular_value};
use crate::sampling::SamplingScheme;
use crate::wavelet::WaveletFamily;
use ndarray::s;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Relative slack absorbing floating-point equality at analytic thresholds:
/// the comparison is `1/C < theta * (1 + SLACK)`.
const THETA_SLACK: f64 = 1e-9;

/// One stable-sampling-rate query.
#[derive(Debug, Clone)]
pub struct SsrQuery {
    pub family: WaveletFamily,
    pub scheme: SamplingScheme,
    pub theta: f64,
    pub n: usize,
    pub search_cap: usize,
}

impl SsrQuery {
    /// Query with the default cap `16 N`.
    pub fn new(family: WaveletFamily, scheme: SamplingScheme, theta: f64, n: usize) -> Self {
        Self {
            family,
            scheme,
            theta,
            n,
            search_cap: 16 * n,
        }
    }
}

/// Result of one stable-sampling-rate search.
#[derive(Debug, Clone, Copy)]
pub struct SsrPoint {
    pub n: usize,
    pub m_star: usize,
    pub sigma_min: f64,
    pub ratio: f64,
}

/// A curve of stable-sampling-rate points at fixed `theta`.
#[derive(Debug, Clone)]
pub struct SsrCurve {
    pub theta: f64,
    pub epsilon: f64,
    pub points: Vec<SsrPoint>,
}

/// One row of the sub-threshold instability experiment.
#[derive(Debug, Clone, Copy)]
pub struct BlowupRow {
    pub r: u32,
    pub n_r: usize,
    pub n_used: usize,
    pub m: usize,
    pub sigma_min: f64,
    pub log10_kappa: f64,
}

/// Finds `Theta(N; theta)`: the least `M` with `1/C_NM < theta`.
///
/// `C_NM` is nondecreasing in `M` (the sampling spaces are nested), so the
/// search doubles `M` from `N` until the first admissible value and then
/// bisects.  Candidate values below the doubling endpoint reuse rows of the
/// already-assembled matrix (index sets are nested intervals).
pub fn stable_sampling_rate(query: &SsrQuery) -> Result<SsrPoint> {
    if query.theta <= 1.0 {
        return Err(Error::InvalidArgument("theta must exceed 1".into()));
    }
    if query.n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    if query.search_cap < query.n {
        return Err(Error::InvalidArgument("search cap below N".into()));
    }
    query.scheme.compatible_with(&query.family)?;
    let admissible = |c: f64| c > 0.0 && 1.0 < c * query.theta * (1.0 + THETA_SLACK);

    // doubling phase
    let mut m = query.n;
    let mut m_lo = query.n - 1; // M < N is always rank-deficient
    let mut best_c = 0.0_f64;
    let (mut matrix, mut c);
    loop {
        matrix = assemble_matrix(&query.family, &query.scheme, query.n, m)?;
        c = smallest_singular_value(&matrix);
        best_c = best_c.max(c);
        if admissible(c) {
            break;
        }
        if m >= query.search_cap {
            return Err(Error::SsrCapExceeded {
                cap: query.search_cap,
                best_c,
            });
        }
        m_lo = m;
        m = (2 * m).min(query.search_cap);
    }

    // bisection inside (m_lo, m]: sub-candidates take row slices of the
    // assembled matrix (singular values do not depend on row order)
    let mut m_hi = m;
    let mut c_hi = c;
    let half_hi = m_hi / 2;
    while m_hi - m_lo > 1 {
        let mid = m_lo + (m_hi - m_lo) / 2;
        let offset = half_hi - mid / 2;
        let sub = matrix.slice(s![offset..offset + mid, ..]).to_owned();
        let c_mid = smallest_singular_value(&sub);
        if admissible(c_mid) {
            m_hi = mid;
            c_hi = c_mid;
        } else {
            m_lo = mid;
        }
    }
    Ok(SsrPoint {
        n: query.n,
        m_star: m_hi,
        sigma_min: c_hi,
        ratio: m_hi as f64 / query.n as f64,
    })
}

/// Stable-sampling-rate curve over a list of truncation sizes.
pub fn ssr_curve(
    family: &WaveletFamily,
    scheme: &SamplingScheme,
    theta: f64,
    n_list: &[usize],
    search_cap_mult: usize,
) -> Result<SsrCurve> {
    let mut points = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let mut query = SsrQuery::new(family.clone(), *scheme, theta, n);
        query.search_cap = search_cap_mult.max(2) * n;
        points.push(stable_sampling_rate(&query)?);
    }
    Ok(SsrCurve {
        theta,
        epsilon: scheme.epsilon(),
        points,
    })
}

/// Measures the subspace angle when sampling below the critical ratio:
/// `M = floor(c 2^R)` with `c < 1/eps` over the listed scales.
///
/// The reconstruction space is truncated to `N = min(N_R, M)`; for families
/// where the critical ratio is 1 (Haar at density 1) this keeps the matrix
/// square instead of trivially rank-deficient, and the measured angle decays
/// exponentially all the same.
pub fn blowup_experiment(
    family: &WaveletFamily,
    scheme: &SamplingScheme,
    c: f64,
    r_list: &[u32],
) -> Result<Vec<BlowupRow>> {
    if !(c > 0.0) || c * scheme.epsilon() >= 1.0 - 1e-12 {
        return Err(Error::Precondition(format!(
            "need 0 < c < 1/eps = {}; got c = {c}",
            1.0 / scheme.epsilon()
        )));
    }
    scheme.compatible_with(family)?;
    let mut rows = Vec::with_capacity(r_list.len());
    for &r in r_list {
        let m = ((c * (1_u64 << r) as f64).floor() as usize).max(1);
        let n_r = family.n_r(r);
        let n_used = n_r.min(m);
        let matrix = assemble_matrix(family, scheme, n_used, m)?;
        let sigma_min = smallest_singular_value(&matrix);
        rows.push(BlowupRow {
            r,
            n_r,
            n_used,
            m,
            sigma_min,
            log10_kappa: -sigma_min.log10(),
        });
    }
    Ok(rows)
}

/// Least-squares line fit `y ~ slope * x + intercept` with its R^2.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy > 0.0 { sxy * sxy / (sxx * syy) } else { 1.0 };
    (slope, intercept, r2)
}

/// Chebyshev-type trigonometric witness: coefficients of
/// `q(z) = Q(z) / Q(pi)` where `Q(z) = T_{2n}(sin(z/2) / sin(omega/2))`,
/// a degree-`n` trigonometric polynomial with `|Q| <= 1` on `[-omega, omega]`
/// and exponentially large maximum at `z = pi`.
#[derive(Debug, Clone)]
pub struct ChebyshevWitness {
    pub n: usize,
    pub omega: f64,
    /// Coefficients of `q(z) = sum_{|j| <= n} coeffs[j + n] e^{ijz}`.
    pub coeffs: Vec<Complex64>,
    /// The normalizer `Q(pi)`, the maximum of `|Q|` over `[-pi, pi]`.
    pub q_pi: f64,
}

/// Direct evaluation of the un-normalized witness `Q(z)`.
pub fn chebyshev_q_eval(n: usize, omega: f64, z: f64) -> f64 {
    let x = (0.5 * z).sin() / (0.5 * omega).sin();
    let deg = (2 * n) as f64;
    if x.abs() <= 1.0 {
        (deg * x.acos()).cos()
    } else {
        // |T_{2n}(x)| = cosh(2n arccosh |x|); even degree keeps the sign +
        (deg * x.abs().acosh()).cosh()
    }
}

/// Computes the witness coefficients by exact discrete Fourier inversion on
/// `2n + 2` equispaced nodes.
pub fn chebyshev_qomega(n: usize, omega: f64) -> Result<ChebyshevWitness> {
    if n < 1 {
        return Err(Error::Precondition("witness degree must be >= 1".into()));
    }
    if !(PI / 2.0..PI).contains(&omega) {
        return Err(Error::Precondition(format!(
            "omega = {omega} outside [pi/2, pi)"
        )));
    }
    let q_pi = chebyshev_q_eval(n, omega, PI);
    let nodes = 2 * n + 2;
    let values: Vec<f64> = (0..nodes)
        .map(|i| chebyshev_q_eval(n, omega, 2.0 * PI * i as f64 / nodes as f64))
        .collect();
    let mut coeffs = Vec::with_capacity(2 * n + 1);
    for j in -(n as i64)..=(n as i64) {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, &v) in values.iter().enumerate() {
            acc += v * Complex64::cis(-(j as f64) * 2.0 * PI * i as f64 / nodes as f64);
        }
        coeffs.push(acc / (nodes as f64) / q_pi);
    }
    Ok(ChebyshevWitness {
        n,
        omega,
        coeffs,
        q_pi,
    })
}

impl ChebyshevWitness {
    /// Evaluates the normalized witness from its coefficients.
    pub fn eval(&self, z: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, &c) in self.coeffs.iter().enumerate() {
            acc += c * Complex64::cis((i as i64 - self.n as i64) as f64 * z);
        }
        acc
    }
}
