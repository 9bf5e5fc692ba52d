//! Independent brute-force oracles used by the test suite and by the
//! `verify` command: trigonometric-polynomial identities, equidistant and
//! jittered sampling inequalities, and trapezoid quadrature with Richardson
//! error estimates.
//!
//! Everything here stays independent of the production evaluation paths it
//! cross-checks (no shared code beyond [`TrigPoly`] evaluation itself).

use crate::error::{Error, Result};
use crate::gs;
use crate::sampling::{self, FunctionModel, SamplingScheme};
use crate::ssr;
use crate::wavelet::{BasisIndex, CascadeTables, WaveletFamily};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::f64::consts::PI;

/// Trigonometric polynomial `Phi(z) = sum_{j=a1}^{a2} c_j e^{2 pi i j z}`.
#[derive(Debug, Clone)]
pub struct TrigPoly {
    pub a1: i64,
    pub coeffs: Vec<Complex64>,
}

impl TrigPoly {
    pub fn new(a1: i64, coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty());
        Self { a1, coeffs }
    }

    pub fn a2(&self) -> i64 {
        self.a1 + self.coeffs.len() as i64 - 1
    }

    /// Horner evaluation in `w = e^{2 pi i z}`.
    pub fn eval(&self, z: f64) -> Complex64 {
        let w = Complex64::cis(2.0 * PI * z);
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * w + c;
        }
        acc * Complex64::cis(2.0 * PI * self.a1 as f64 * z)
    }

    /// `L^2` norm over one period, exact from the coefficients.
    pub fn l2_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Random polynomial with complex standard normal coefficients.
    pub fn random(rng: &mut ChaCha8Rng, a1: i64, len: usize) -> Self {
        let coeffs = (0..len)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        Self::new(a1, coeffs)
    }
}

/// Discrete Fourier exactness: for `2L >= a2 - a1 + 1`,
/// `(1/2L) sum_{j<2L} |Phi(j/2L)|^2 = sum |c_j|^2`.
///
/// Returns `(lhs, rhs)`; callers assert equality to 1e-12 relative.
pub fn dft_exactness_check(p: &TrigPoly, l: usize) -> Result<(f64, f64)> {
    let nodes = 2 * l;
    if nodes < p.coeffs.len() {
        return Err(Error::Precondition(format!(
            "2L = {nodes} < {} coefficients; the identity is not guaranteed",
            p.coeffs.len()
        )));
    }
    let lhs = (0..nodes)
        .map(|j| p.eval(j as f64 / nodes as f64).norm_sqr())
        .sum::<f64>()
        / nodes as f64;
    let rhs = p.coeffs.iter().map(|c| c.norm_sqr()).sum();
    Ok((lhs, rhs))
}

/// Perturbed-node quadrature inequality: for nodes
/// `a <= x_1 < ... < x_r < a+1` with cyclic gap `delta < 1/(2D)` and a
/// polynomial of degree span at most `2D`,
/// `(1 - 2 delta D) ||Phi|| <= sqrt(sum nu_j |Phi(x_j)|^2) <= (1 + 2 delta D) ||Phi||`
/// with weights `nu_j = (x_{j+1} - x_{j-1}) / 2`.
///
/// Returns `(lower, middle, upper)`.
pub fn grochenig_check(p: &TrigPoly, a: f64, nodes: &[f64], d: u32) -> Result<(f64, f64, f64)> {
    let r = nodes.len();
    if r < 2 {
        return Err(Error::Precondition("need at least two nodes".into()));
    }
    for w in nodes.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::Precondition("nodes must be strictly increasing".into()));
        }
    }
    if nodes[0] < a || nodes[r - 1] >= a + 1.0 {
        return Err(Error::Precondition("nodes must lie in [a, a+1)".into()));
    }
    if (p.coeffs.len() as i64 - 1) > 2 * i64::from(d) {
        return Err(Error::Precondition(format!(
            "degree span {} exceeds 2D = {}",
            p.coeffs.len() - 1,
            2 * d
        )));
    }
    let mut delta: f64 = nodes[0] + 1.0 - nodes[r - 1];
    for w in nodes.windows(2) {
        delta = delta.max(w[1] - w[0]);
    }
    if delta >= 0.5 / f64::from(d) {
        return Err(Error::Precondition(format!(
            "max gap {delta:.6} >= 1/(2D) = {:.6}",
            0.5 / f64::from(d)
        )));
    }
    let mut middle_sq = 0.0;
    for j in 0..r {
        let next = if j + 1 < r { nodes[j + 1] } else { nodes[0] + 1.0 };
        let prev = if j > 0 { nodes[j - 1] } else { nodes[r - 1] - 1.0 };
        let nu = 0.5 * (next - prev);
        middle_sq += nu * p.eval(nodes[j]).norm_sqr();
    }
    let norm = p.l2_norm();
    let factor = 2.0 * delta * f64::from(d);
    Ok(((1.0 - factor) * norm, middle_sq.sqrt(), (1.0 + factor) * norm))
}

/// A function sampled on a uniform grid `x0 + i * dx`.
#[derive(Debug, Clone)]
pub struct SampledFunction {
    pub x0: f64,
    pub dx: f64,
    pub values: Vec<Complex64>,
}

impl SampledFunction {
    pub fn from_real(x0: f64, dx: f64, values: Vec<f64>) -> Self {
        Self {
            x0,
            dx,
            values: values.into_iter().map(|v| Complex64::new(v, 0.0)).collect(),
        }
    }

    pub fn from_fn(x0: f64, dx: f64, n: usize, f: impl Fn(f64) -> Complex64) -> Self {
        Self {
            x0,
            dx,
            values: (0..n).map(|i| f(x0 + i as f64 * dx)).collect(),
        }
    }

    fn trapezoid_inner(&self, other: &SampledFunction, stride: usize) -> Complex64 {
        let n = self.values.len();
        let mut acc = Complex64::new(0.0, 0.0);
        let mut i = 0;
        while i < n {
            let term = self.values[i] * other.values[i].conj();
            let w = if i == 0 || i + stride >= n { 0.5 } else { 1.0 };
            acc += w * term;
            i += stride;
        }
        acc * (self.dx * stride as f64)
    }
}

/// Composite trapezoid estimate of `<g, h> = ∫ g conj(h)` on a shared grid,
/// with a Richardson error estimate from the half-resolution sum.
pub fn quadrature_inner_product(
    g: &SampledFunction,
    h: &SampledFunction,
) -> Result<(Complex64, f64)> {
    if (g.dx - h.dx).abs() > 1e-12 * g.dx.abs()
        || (g.x0 - h.x0).abs() > 1e-9 * g.dx.abs()
        || g.values.len() != h.values.len()
    {
        return Err(Error::GridMismatch(format!(
            "x0 {} vs {}, dx {} vs {}, len {} vs {}",
            g.x0,
            h.x0,
            g.dx,
            h.dx,
            g.values.len(),
            h.values.len()
        )));
    }
    let fine = g.trapezoid_inner(h, 1);
    let n = g.values.len();
    let err = if n >= 3 && (n - 1) % 2 == 0 {
        let coarse = g.trapezoid_inner(h, 2);
        (fine - coarse).norm() / 3.0
    } else {
        f64::NAN
    };
    Ok((fine, err))
}

/// Samples the basis function named by `idx` on the grid
/// `x0_num * dx + i * dx` (with `dx` the cascade grid step), reading exact
/// dyadic values out of the cascade tables.  Requires `idx.level <= levels`.
pub fn sampled_basis(
    tables: &CascadeTables,
    idx: &BasisIndex,
    x0_num: i64,
    len: usize,
) -> SampledFunction {
    let step = 1_i64 << tables.levels;
    let (level, shift, wavelet) = match *idx {
        BasisIndex::Scaling { shift } => (0u32, shift, false),
        BasisIndex::Wavelet { level, shift } => (level, shift, true),
    };
    assert!(level <= tables.levels, "cascade tables too coarse for level");
    let amp = ((1_u64 << level) as f64).sqrt();
    let values = (0..len)
        .map(|i| {
            // table index of 2^j x - k  with x = (x0_num + i) dx
            let t = (x0_num + i as i64) * (1_i64 << level) - shift * step;
            let v = if wavelet {
                tables.psi_at_index(t)
            } else {
                tables.phi_at_index(t)
            };
            amp * v
        })
        .collect();
    SampledFunction {
        x0: x0_num as f64 * tables.dx,
        dx: tables.dx,
        values,
    }
}

/// Haar basis functions sampled with mean values at jump points, which keeps
/// the composite trapezoid rule second-order accurate across the jumps.
pub fn sampled_haar_averaged(idx: &BasisIndex, x0_num: i64, len: usize, levels: u32) -> SampledFunction {
    let dx = 0.5_f64.powi(levels as i32);
    let phi_avg = |u: f64| -> f64 {
        if u > 0.0 && u < 1.0 {
            1.0
        } else if u == 0.0 || u == 1.0 {
            0.5
        } else {
            0.0
        }
    };
    let psi_avg = |u: f64| -> f64 {
        if u == 0.0 {
            0.5
        } else if u > 0.0 && u < 0.5 {
            1.0
        } else if u == 0.5 {
            0.0
        } else if u > 0.5 && u < 1.0 {
            -1.0
        } else if u == 1.0 {
            -0.5
        } else {
            0.0
        }
    };
    let values = (0..len)
        .map(|i| {
            let x = (x0_num + i as i64) as f64 * dx;
            match *idx {
                BasisIndex::Scaling { shift } => phi_avg(x - shift as f64),
                BasisIndex::Wavelet { level, shift } => {
                    let s = (1_u64 << level) as f64;
                    s.sqrt() * psi_avg(s * x - shift as f64)
                }
            }
        })
        .collect();
    SampledFunction {
        x0: x0_num as f64 * dx,
        dx,
        values,
    }
}

/// One line of the verification report.
#[derive(Debug, Clone)]
pub struct VerifyCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of the full oracle cross-check suite.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub seed: u64,
    pub checks: Vec<VerifyCheck>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("oracle cross-checks (seed {})\n", self.seed));
        for c in &self.checks {
            out.push_str(&format!(
                "  [{}] {:<34} {}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            ));
        }
        out.push_str(if self.all_passed() {
            "all checks passed\n"
        } else {
            "FAILURES PRESENT\n"
        });
        out
    }
}

fn check(name: &'static str, passed: bool, detail: String) -> VerifyCheck {
    VerifyCheck { name, passed, detail }
}

/// Runs the full deterministic cross-check suite.
pub fn run_verify(seed: u64) -> VerifyReport {
    let mut checks = Vec::new();
    let haar = WaveletFamily::make("haar").expect("haar");
    let db4 = WaveletFamily::make("db4").expect("db4");
    let db6 = WaveletFamily::make("db6").expect("db6");

    // filter identities
    for fam in [&haar, &db4, &db6] {
        let detail = match fam.validate() {
            Ok(()) => "tap sum, orthonormality, m0(0)=1".to_string(),
            Err(e) => e.to_string(),
        };
        checks.push(check(
            match fam.name() {
                "haar" => "taps_haar",
                "db4" => "taps_db4",
                _ => "taps_db6",
            },
            fam.validate().is_ok(),
            detail,
        ));
    }

    // quadrature-mirror identity of the symbol
    let mut worst = 0.0_f64;
    for fam in [&haar, &db4, &db6] {
        for i in 0..=400 {
            let xi = -PI + 2.0 * PI * i as f64 / 400.0;
            worst = worst.max((fam.m0(xi).norm_sqr() + fam.m0(xi + PI).norm_sqr() - 1.0).abs());
        }
    }
    checks.push(check("qmf_identity", worst < 1e-10, format!("max dev {worst:.2e}")));

    // product evaluator vs Haar closed form
    let mut worst = 0.0_f64;
    for i in 0..=400 {
        let xi = -25.0 + 50.0 * i as f64 / 400.0;
        let closed = if xi.abs() < 1e-12 {
            Complex64::new(1.0, 0.0)
        } else {
            (Complex64::new(1.0, 0.0) - Complex64::cis(-xi)) / Complex64::new(0.0, xi)
        };
        worst = worst.max((haar.scaling_fourier(xi) - closed).norm());
    }
    checks.push(check("haar_product_closed_form", worst < 1e-10, format!("max dev {worst:.2e}")));

    // refinement identity in frequency
    let mut worst = 0.0_f64;
    for fam in [&haar, &db4, &db6] {
        for i in 0..=200 {
            let xi = -40.0 + 80.0 * i as f64 / 200.0;
            worst = worst
                .max((fam.scaling_fourier(xi) - fam.m0(xi / 2.0) * fam.scaling_fourier(xi / 2.0)).norm());
        }
    }
    checks.push(check("refinement_identity", worst < 1e-10, format!("max dev {worst:.2e}")));

    // cascade quadrature facts for db4
    let t = db4.cascade(12);
    let phi_f = sampled_basis(&t, &BasisIndex::Scaling { shift: 0 }, 0, t.phi.len());
    let one = SampledFunction::from_fn(0.0, t.dx, t.phi.len(), |_| Complex64::new(1.0, 0.0));
    let (integral, _) = quadrature_inner_product(&phi_f, &one).expect("grid");
    let (norm_sq, _) = quadrature_inner_product(&phi_f, &phi_f).expect("grid");
    let psi_f = sampled_basis(&t, &BasisIndex::Wavelet { level: 0, shift: 0 }, 0, t.phi.len());
    let (psi_int, _) = quadrature_inner_product(&psi_f, &one).expect("grid");
    // shifted inner product on a widened grid
    let wide = 4 * (1 << 12) + 1;
    let f0 = sampled_basis(&t, &BasisIndex::Scaling { shift: 0 }, 0, wide);
    let f1 = sampled_basis(&t, &BasisIndex::Scaling { shift: 1 }, 0, wide);
    let (shift_ip, _) = quadrature_inner_product(&f0, &f1).expect("grid");
    let cascade_ok = (integral.re - 1.0).abs() < 1e-6
        && (norm_sq.re - 1.0).abs() < 1e-5
        && psi_int.norm() < 1e-6
        && shift_ip.norm() < 1e-5;
    checks.push(check(
        "cascade_db4_quadrature",
        cascade_ok,
        format!(
            "∫phi-1 = {:.2e}, |phi|^2-1 = {:.2e}, ∫psi = {:.2e}, <phi,phi(.-1)> = {:.2e}",
            integral.re - 1.0,
            norm_sq.re - 1.0,
            psi_int.norm(),
            shift_ip.norm()
        ),
    ));

    // Fourier evaluators vs cascade quadrature for db4
    let mut worst = 0.0_f64;
    for &xi in &[0.7, -3.3, 9.1] {
        let kernel = SampledFunction::from_fn(0.0, t.dx, t.phi.len(), |x| Complex64::cis(xi * x));
        let (phi_q, _) = quadrature_inner_product(&phi_f, &kernel).expect("grid");
        let (psi_q, _) = quadrature_inner_product(&psi_f, &kernel).expect("grid");
        worst = worst.max((phi_q - db4.scaling_fourier(xi)).norm());
        worst = worst.max((psi_q - db4.wavelet_fourier(xi)).norm());
    }
    checks.push(check("fourier_vs_cascade_db4", worst < 1e-6, format!("max dev {worst:.2e}")));

    // DFT exactness on random polynomials
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let len = 1 + rng.gen_range(0..=64) as usize;
        let a1 = rng.gen_range(-40..40);
        let p = TrigPoly::random(&mut rng, a1, len);
        let l = (len + 1) / 2 + rng.gen_range(0..4) as usize;
        let (lhs, rhs) = dft_exactness_check(&p, l).expect("pre satisfied");
        worst = worst.max((lhs - rhs).abs() / rhs);
    }
    checks.push(check("dft_exactness", worst < 1e-12, format!("max rel dev {worst:.2e}")));

    // jittered-node inequality
    let mut ok = true;
    let mut margin = f64::INFINITY;
    for _ in 0..100 {
        let d = rng.gen_range(4..24) as u32;
        let len = 1 + rng.gen_range(0..=(2 * d)) as usize;
        let p = TrigPoly::random(&mut rng, -((len as i64) / 2), len);
        let r = (4 * d) as usize;
        let jitter = 0.35 / r as f64;
        let mut nodes: Vec<f64> = (0..r)
            .map(|j| j as f64 / r as f64 + rng.gen_range(-jitter..jitter))
            .collect();
        nodes.sort_by(f64::total_cmp);
        nodes.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
        if nodes[0] < 0.0 {
            for v in nodes.iter_mut() {
                *v += 0.0 - nodes[0];
            }
        }
        if let Ok((lo, mid, hi)) = grochenig_check(&p, 0.0, &nodes, d) {
            ok &= lo <= mid + 1e-9 && mid <= hi + 1e-9;
            margin = margin.min((hi - mid).min(mid - lo));
        }
    }
    checks.push(check("grochenig_inequality", ok, format!("min margin {margin:.2e}")));

    // <phi, s_l> via quadrature vs sqrt(eps) phihat(-2 pi eps l) for db4
    let scheme = SamplingScheme::minimal_for(&db4, 1.0 / 7.0).expect("scheme");
    let mut worst = 0.0_f64;
    let lev = 12u32;
    let dx = 0.5_f64.powi(lev as i32);
    let t12 = db4.cascade(lev);
    for &l in &[0_i64, 1, -3, 11] {
        let phi_s = sampled_basis(&t12, &BasisIndex::Scaling { shift: 0 }, 0, t12.phi.len());
        let svec = SampledFunction::from_fn(0.0, dx, t12.phi.len(), |x| {
            sampling::sampling_vector_value(&scheme, l, x)
        });
        let (q, _) = quadrature_inner_product(&phi_s, &svec).expect("grid");
        let exact = scheme.epsilon().sqrt() * db4.scaling_fourier(-2.0 * PI * scheme.epsilon() * l as f64);
        worst = worst.max((q - exact).norm());
    }
    checks.push(check("sample_formula_db4", worst < 1e-6, format!("max dev {worst:.2e}")));

    // matrix entries vs quadrature on a 16x16 probe (haar and db4)
    let worst = entry_probe_worst_dev(&haar, 1.0, 13);
    let worst_db = entry_probe_worst_dev(&db4, 1.0 / 7.0, 13);
    checks.push(check(
        "entry_vs_quadrature_16x16",
        worst < 1e-6 && worst_db < 1e-6,
        format!("haar {worst:.2e}, db4 {worst_db:.2e}"),
    ));

    // Chebyshev witness properties
    let n = 24;
    let omega = 0.8 * PI;
    let w = ssr::chebyshev_qomega(n, omega).expect("witness");
    let mut sup_in = 0.0_f64;
    for i in 0..=10_000 {
        let z = -omega + 2.0 * omega * i as f64 / 10_000.0;
        sup_in = sup_in.max(ssr::chebyshev_q_eval(n, omega, z).abs());
    }
    let at_pi = ssr::chebyshev_q_eval(n, omega, PI);
    let coeff_eval: Complex64 = w
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, &c)| c * Complex64::cis((i as i64 - n as i64) as f64 * PI))
        .sum();
    let cheb_ok = (sup_in - 1.0).abs() < 1e-8
        && at_pi >= sup_in
        && (coeff_eval.re * w.q_pi - at_pi).abs() < 1e-6 * at_pi;
    checks.push(check(
        "chebyshev_witness",
        cheb_ok,
        format!("sup[-w,w] = {sup_in:.9}, Q(pi) = {at_pi:.3e}"),
    ));

    // ordering bijection
    let mut ok = true;
    for fam in [&haar, &db4, &db6] {
        for p in 1..=10_000usize {
            let idx = fam.position_to_index(p).expect("pos");
            ok &= fam.index_to_position(&idx).expect("idx") == p;
        }
    }
    checks.push(check("ordering_bijection", ok, "p <= 10^4, three families".into()));

    // subspace-angle monotonicity on a small ladder
    let scheme1 = SamplingScheme::minimal_for(&haar, 1.0).expect("scheme");
    let mut prev = 0.0;
    let mut ok = true;
    let mut last = 0.0;
    for m in [16usize, 24, 32, 64, 128, 256] {
        let c = gs::assemble(&haar, &scheme1, 16, m).expect("assemble").c_nm();
        ok &= c >= prev - 1e-12;
        prev = c;
        last = c;
    }
    checks.push(check(
        "cnm_monotone_to_one",
        ok && last > 0.98,
        format!("C(16, 256) = {last:.6}"),
    ));

    // perfectness: exact recovery of an in-space signal
    let n = 18usize;
    let scheme4 = SamplingScheme::minimal_for(&db4, 1.0 / 7.0).expect("scheme");
    let mut beta = vec![0.0; n];
    for (i, b) in beta.iter_mut().enumerate() {
        *b = ((i as f64) * 0.83).sin();
    }
    let model = FunctionModel::wavelet_combo(db4.clone(), beta.clone()).expect("combo");
    let samples = sampling::synthesize_samples(&scheme4, &model, 56).expect("samples");
    let problem = gs::assemble(&db4, &scheme4, n, 56).expect("assemble");
    let sol = gs::solve(&problem, &samples).expect("solve");
    let dev = beta
        .iter()
        .zip(&sol.alpha)
        .map(|(b, a)| (a - b).norm())
        .fold(0.0_f64, f64::max);
    checks.push(check(
        "perfect_recovery_db4",
        dev < 1e-8 * sol.kappa,
        format!("max coeff dev {dev:.2e}, kappa {:.3}", sol.kappa),
    ));

    VerifyReport { seed, checks }
}

/// Worst deviation between assembled matrix entries and trapezoid quadrature
/// of `<phi_j, s_l>` on a 16x16 probe.
fn entry_probe_worst_dev(fam: &WaveletFamily, eps: f64, levels: u32) -> f64 {
    let scheme = SamplingScheme::minimal_for(fam, eps).expect("scheme");
    let n = 16usize;
    let m = 16usize;
    let problem = gs::assemble(fam, &scheme, n, m).expect("assemble");
    let dx = 0.5_f64.powi(levels as i32);
    let (w_lo, w_hi) = scheme.window();
    let x0_num = (w_lo / dx).round() as i64;
    let len = ((w_hi - w_lo) / dx).round() as usize + 1;
    let tables = if fam.support() > 1 { Some(fam.cascade(levels)) } else { None };
    let mut worst = 0.0_f64;
    for (col, idx) in (1..=n).map(|p| (p - 1, fam.position_to_index(p).expect("pos"))) {
        let basis = match &tables {
            Some(t) => sampled_basis(t, &idx, x0_num, len),
            None => sampled_haar_averaged(&idx, x0_num, len, levels),
        };
        for (row, l) in sampling::sample_indices(m).enumerate() {
            let svec = SampledFunction::from_fn(basis.x0, dx, len, |x| {
                sampling::sampling_vector_value(&scheme, l, x)
            });
            let (q, _) = quadrature_inner_product(&basis, &svec).expect("grid");
            worst = worst.max((q - problem.matrix()[(row, col)]).norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trig_poly_eval_matches_direct_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let p = TrigPoly::random(&mut rng, -5, 13);
            for i in 0..10 {
                let z = i as f64 * 0.083;
                let mut direct = Complex64::new(0.0, 0.0);
                for (k, c) in p.coeffs.iter().enumerate() {
                    direct += c * Complex64::cis(2.0 * PI * (p.a1 + k as i64) as f64 * z);
                }
                assert!((p.eval(z) - direct).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn dft_exactness_identity_and_guard() {
        let p = TrigPoly::new(0, vec![Complex64::new(1.0, 0.0)]);
        let (lhs, rhs) = dft_exactness_check(&p, 1).unwrap();
        assert!((lhs - 1.0).abs() < 1e-15 && (rhs - 1.0).abs() < 1e-15);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = TrigPoly::random(&mut rng, -8, 17);
        let (lhs, rhs) = dft_exactness_check(&p, 9).unwrap();
        assert!((lhs - rhs).abs() < 1e-12 * rhs);
        // 2L < number of coefficients: the guard must fire
        assert!(matches!(
            dft_exactness_check(&p, 8),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn grochenig_uniform_nodes_reduce_to_dft() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let d = 8u32;
        let p = TrigPoly::random(&mut rng, -8, 17);
        let r = 32usize;
        let nodes: Vec<f64> = (0..r).map(|j| j as f64 / r as f64).collect();
        let (lo, mid, hi) = grochenig_check(&p, 0.0, &nodes, d).unwrap();
        assert!((mid - p.l2_norm()).abs() < 1e-12 * p.l2_norm());
        assert!(lo <= mid && mid <= hi);
    }

    #[test]
    fn grochenig_adversarial_gap_still_within_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let d = 6u32;
        let p = TrigPoly::random(&mut rng, -6, 13);
        // one gap at 0.99/(2D), the rest uniform-dense
        let big_gap = 0.99 / (2.0 * f64::from(d));
        let r = 120usize;
        let mut nodes = vec![0.0];
        let rest = 1.0 - big_gap;
        for j in 1..r {
            nodes.push(big_gap + rest * (j as f64 - 1.0) / (r as f64 - 1.0));
        }
        let (lo, mid, hi) = grochenig_check(&p, 0.0, &nodes, d).unwrap();
        assert!(lo <= mid + 1e-12 && mid <= hi + 1e-12);
        // gap >= 1/(2D) must be rejected
        let mut bad = nodes.clone();
        bad[0] = 0.0;
        bad[1] = 0.5 / f64::from(d) + 1e-3;
        bad.sort_by(f64::total_cmp);
        assert!(matches!(
            grochenig_check(&p, 0.0, &bad, d),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn quadrature_box_inner_product() {
        // chi_[0,1] sampled with both endpoints 1: trapezoid is exact
        let n = (1 << 12) + 1;
        let dx = 1.0 / ((n - 1) as f64);
        let b = SampledFunction::from_real(0.0, dx, vec![1.0; n]);
        let (v, err) = quadrature_inner_product(&b, &b).unwrap();
        assert!((v.re - 1.0).abs() < 1e-14);
        assert!(err < 1e-12);
        let other = SampledFunction::from_real(0.5, dx, vec![1.0; n]);
        assert!(matches!(
            quadrature_inner_product(&b, &other),
            Err(Error::GridMismatch(_))
        ));
    }

    #[test]
    fn richardson_estimate_bounds_true_error() {
        // random trig polys on a non-periodic window with exact inner
        // products: the estimate should bound the observed error in >= 95%
        // of trials.
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut covered = 0;
        let trials = 100;
        for _ in 0..trials {
            let p = TrigPoly::random(&mut rng, -3, 7);
            let q = TrigPoly::random(&mut rng, -3, 7);
            let b = 0.77;
            let n = (1 << 11) + 1;
            let dx = b / ((n - 1) as f64);
            let pf = SampledFunction::from_fn(0.0, dx, n, |x| p.eval(x));
            let qf = SampledFunction::from_fn(0.0, dx, n, |x| q.eval(x));
            let (got, est) = quadrature_inner_product(&pf, &qf).unwrap();
            // exact integral over [0, b] from the coefficients
            let mut exact = Complex64::new(0.0, 0.0);
            for (i, cp) in p.coeffs.iter().enumerate() {
                for (j, cq) in q.coeffs.iter().enumerate() {
                    let k = (p.a1 + i as i64) - (q.a1 + j as i64);
                    let int = if k == 0 {
                        Complex64::new(b, 0.0)
                    } else {
                        (Complex64::cis(2.0 * PI * k as f64 * b) - 1.0)
                            / Complex64::new(0.0, 2.0 * PI * k as f64)
                    };
                    exact += cp * cq.conj() * int;
                }
            }
            if (got - exact).norm() <= est * 1.5 + 1e-14 {
                covered += 1;
            }
        }
        assert!(covered >= 95, "Richardson bound covered only {covered}/{trials}");
    }

    #[test]
    fn verify_report_is_deterministic_and_green() {
        let a = run_verify(0);
        let b = run_verify(0);
        assert_eq!(a.render(), b.render());
        assert!(a.all_passed(), "\n{}", a.render());
    }
}
