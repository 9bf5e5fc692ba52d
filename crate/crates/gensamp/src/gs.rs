//! Assembly of the cross-Gram matrix between the wavelet reconstruction
//! basis and the Fourier sampling vectors, the least-squares coefficient
//! solve, and exact error functionals.
//!
//! The subspace-angle quantity `C_NM` equals the smallest singular value of
//! the assembled matrix because both bases are orthonormal.

use crate::error::{Error, Result};
use crate::sampling::{sample_indices, SampleVector, SamplingScheme};
use crate::wavelet::WaveletFamily;
use ndarray::{Array1, Array2, ShapeBuilder};
use ndarray_linalg::qr::QR;
use ndarray_linalg::svd::SVD;
use ndarray_linalg::triangular::{Diag, SolveTriangular};
use ndarray_linalg::UPLO;
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::json;
use std::f64::consts::PI;
use std::io::Write;
use std::path::Path;

/// Relative rank-deficiency threshold: below this, coefficients are
/// meaningless at working precision and `solve` refuses.
pub const RANK_TOL: f64 = 1e-13;
/// Below this smallest singular value the solver switches from QR to a
/// full singular-value decomposition.
const QR_SIGMA_FLOOR: f64 = 1e-8;

/// An assembled reconstruction problem: `matrix[(i, j)] = <phi_j, s_l(i)>`.
#[derive(Debug, Clone)]
pub struct GsProblem {
    family: WaveletFamily,
    scheme: SamplingScheme,
    n: usize,
    m: usize,
    matrix: Array2<Complex64>,
}

/// Solution of the least-squares problem together with its conditioning
/// diagnostics.
#[derive(Debug, Clone)]
pub struct GsSolution {
    pub alpha: Vec<Complex64>,
    pub sigma_min: f64,
    pub kappa: f64,
    pub residual: f64,
}

/// Builds the `m x n` matrix with entries
/// `sqrt(eps) * basis_fourier(position j, -2 pi eps l)`, columns in basis
/// order, rows over the sample index set.  Entries are evaluated one by
/// one (no transform shortcuts), in parallel over columns.
pub fn assemble(
    family: &WaveletFamily,
    scheme: &SamplingScheme,
    n: usize,
    m: usize,
) -> Result<GsProblem> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument("need N >= 1 and M >= 1".into()));
    }
    scheme.compatible_with(family)?;
    let matrix = assemble_matrix(family, scheme, n, m)?;
    Ok(GsProblem {
        family: family.clone(),
        scheme: *scheme,
        n,
        m,
        matrix,
    })
}

pub(crate) fn assemble_matrix(
    family: &WaveletFamily,
    scheme: &SamplingScheme,
    n: usize,
    m: usize,
) -> Result<Array2<Complex64>> {
    let eps = scheme.epsilon();
    let root_eps = eps.sqrt();
    let omegas: Vec<f64> = sample_indices(m)
        .map(|l| -2.0 * PI * eps * l as f64)
        .collect();
    let indices: Vec<_> = (1..=n)
        .map(|p| family.position_to_index(p))
        .collect::<Result<_>>()?;

    // column-major storage: chunk c holds column c
    let mut data = vec![Complex64::new(0.0, 0.0); m * n];
    data.par_chunks_mut(m).zip(indices.par_iter()).for_each(|(col, idx)| {
        for (entry, &w) in col.iter_mut().zip(&omegas) {
            *entry = root_eps * family.basis_fourier_unchecked(idx, w);
        }
    });
    Array2::from_shape_vec((m, n).f(), data)
        .map_err(|e| Error::Linalg(format!("shape error: {e}")))
}

/// Smallest singular value of a dense matrix, as `C_NM`; zero for matrices
/// with a nontrivial null space (fewer rows than columns).
pub(crate) fn smallest_singular_value(matrix: &Array2<Complex64>) -> f64 {
    if matrix.nrows() < matrix.ncols() {
        return 0.0;
    }
    let (_, s, _) = matrix.svd(false, false).expect("svd of finite matrix");
    s[s.len() - 1]
}

impl GsProblem {
    pub fn family(&self) -> &WaveletFamily {
        &self.family
    }

    pub fn scheme(&self) -> &SamplingScheme {
        &self.scheme
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.matrix
    }

    /// Subspace-angle quantity `C_NM` = smallest singular value.
    pub fn c_nm(&self) -> f64 {
        smallest_singular_value(&self.matrix)
    }

    /// Writes the matrix in long CSV form `(row, col, re, im)` for external
    /// verification.
    pub fn write_matrix_csv(&self, path: &Path) -> Result<()> {
        let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(out, "row,col,re,im")?;
        for ((i, j), v) in self.matrix.indexed_iter() {
            writeln!(out, "{i},{j},{},{}", v.re, v.im)?;
        }
        Ok(())
    }
}

fn check_rhs(problem: &GsProblem, samples: &SampleVector) -> Result<Array1<Complex64>> {
    if samples.len() != problem.m {
        return Err(Error::LengthMismatch {
            expected: problem.m,
            got: samples.len(),
        });
    }
    Ok(Array1::from_vec(samples.values.clone()))
}

fn conj_transpose_dot(a: &Array2<Complex64>, b: &Array1<Complex64>) -> Array1<Complex64> {
    let mut out = Array1::from_elem(a.ncols(), Complex64::new(0.0, 0.0));
    for (j, col) in a.columns().into_iter().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, y) in col.iter().zip(b.iter()) {
            acc += x.conj() * y;
        }
        out[j] = acc;
    }
    out
}

/// Least-squares coefficient recovery.
///
/// Uses a QR factorization while the problem is comfortably conditioned and
/// a full singular-value decomposition once `sigma_min` drops below 1e-8;
/// never forms the normal equations.  Refuses outright when `sigma_min`
/// falls below [`RANK_TOL`] relative to the largest singular value.
pub fn solve(problem: &GsProblem, samples: &SampleVector) -> Result<GsSolution> {
    let rhs = check_rhs(problem, samples)?;
    let (_, svals, _) = problem.matrix.svd(false, false)?;
    let sigma_max = svals[0];
    let sigma_min = if problem.m < problem.n {
        0.0
    } else {
        svals[svals.len() - 1]
    };
    if sigma_min < RANK_TOL * sigma_max {
        return Err(Error::IllPosed { sigma_min });
    }
    let alpha = if sigma_min >= QR_SIGMA_FLOOR {
        let (q, r) = problem.matrix.qr()?;
        let qh_b = conj_transpose_dot(&q, &rhs);
        r.solve_triangular(UPLO::Upper, Diag::NonUnit, &qh_b)?
    } else {
        svd_apply(&problem.matrix, &rhs, 0.0)?
    };
    let residual = (problem.matrix.dot(&alpha) - &rhs)
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(GsSolution {
        alpha: alpha.to_vec(),
        sigma_min,
        kappa: 1.0 / sigma_min,
        residual,
    })
}

/// Pseudo-inverse solve that keeps only singular directions with
/// `sigma >= rcond * sigma_max`.
///
/// This is the "push through anyway" path for experiments in the unstable
/// regime, where [`solve`] correctly refuses; the retained directions still
/// amplify noise by up to `1/(rcond * sigma_max)`, which is the effect those
/// experiments measure.
pub fn solve_truncated(
    problem: &GsProblem,
    samples: &SampleVector,
    rcond: f64,
) -> Result<GsSolution> {
    let rhs = check_rhs(problem, samples)?;
    let alpha = svd_apply(&problem.matrix, &rhs, rcond)?;
    let (_, svals, _) = problem.matrix.svd(false, false)?;
    let sigma_min = if problem.m < problem.n {
        0.0
    } else {
        svals[svals.len() - 1]
    };
    let residual = (problem.matrix.dot(&alpha) - &rhs)
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(GsSolution {
        alpha: alpha.to_vec(),
        sigma_min,
        kappa: if sigma_min > 0.0 { 1.0 / sigma_min } else { f64::INFINITY },
        residual,
    })
}

/// `alpha = V diag(1/s) U^H rhs`, dropping directions below `rcond * s[0]`.
fn svd_apply(
    matrix: &Array2<Complex64>,
    rhs: &Array1<Complex64>,
    rcond: f64,
) -> Result<Array1<Complex64>> {
    let (u, s, vt) = matrix.svd(true, true)?;
    let u = u.ok_or_else(|| Error::Linalg("svd did not return U".into()))?;
    let vt = vt.ok_or_else(|| Error::Linalg("svd did not return V^T".into()))?;
    let cutoff = rcond * s[0];
    let mut projected = conj_transpose_dot(&u, rhs);
    let k = s.len();
    for i in 0..k {
        projected[i] = if s[i] > cutoff && s[i] > 0.0 {
            projected[i] / s[i]
        } else {
            Complex64::new(0.0, 0.0)
        };
    }
    // alpha = V y = (V^T)^T y, row i of vt is v_i^H
    let n = matrix.ncols();
    let mut alpha = Array1::from_elem(n, Complex64::new(0.0, 0.0));
    for i in 0..k.min(vt.nrows()) {
        let y = projected[i];
        if y != Complex64::new(0.0, 0.0) {
            for j in 0..n {
                alpha[j] += vt[(i, j)].conj() * y;
            }
        }
    }
    Ok(alpha)
}

/// Exact reconstruction error by orthonormality:
/// `sqrt(sum_{j<=N} |beta_j - alpha_j|^2 + sum_{j>N} beta_j^2)`.
pub fn reconstruction_error(beta: &[f64], alpha: &[Complex64], n: usize) -> Result<f64> {
    if beta.len() < n || alpha.len() != n {
        return Err(Error::Precondition(format!(
            "need len(beta) >= N = len(alpha); got {} and {} with N = {n}",
            beta.len(),
            alpha.len()
        )));
    }
    let head: f64 = beta[..n]
        .iter()
        .zip(alpha)
        .map(|(b, a)| (a - Complex64::new(*b, 0.0)).norm_sqr())
        .sum();
    let tail: f64 = beta[n..].iter().map(|b| b * b).sum();
    Ok((head + tail).sqrt())
}

/// Best-approximation error from the first `n` basis elements:
/// `sqrt(sum_{j>N} beta_j^2)`.
pub fn best_approx_error(beta: &[f64], n: usize) -> f64 {
    if n >= beta.len() {
        return 0.0;
    }
    beta[n..].iter().map(|b| b * b).sum::<f64>().sqrt()
}

/// JSON form of a solution: scalars plus `alpha` as `[re, im]` pairs.
pub fn solution_to_json(problem: &GsProblem, solution: &GsSolution) -> serde_json::Value {
    json!({
        "N": problem.n,
        "M": problem.m,
        "epsilon": problem.scheme.epsilon(),
        "family": problem.family.name(),
        "sigma_min": solution.sigma_min,
        "kappa": solution.kappa,
        "residual": solution.residual,
        "alpha": solution.alpha.iter().map(|z| vec![z.re, z.im]).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{add_noise, synthesize_samples, FunctionModel};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn haar() -> WaveletFamily {
        WaveletFamily::make("haar").unwrap()
    }

    fn haar_scheme() -> SamplingScheme {
        SamplingScheme::minimal_for(&haar(), 1.0).unwrap()
    }

    #[test]
    fn assemble_trivial_and_closed_form_entries() {
        let p = assemble(&haar(), &haar_scheme(), 1, 1).unwrap();
        assert!((p.matrix()[(0, 0)] - 1.0).norm() < 1e-12);

        // rows l = -1, 0; column 2 is psi_{0,0}: entry = psihat(-2 pi l)
        let p = assemble(&haar(), &haar_scheme(), 2, 2).unwrap();
        let minus_2i_over_pi = Complex64::new(0.0, -2.0 / PI);
        assert!((p.matrix()[(0, 1)] - minus_2i_over_pi).norm() < 1e-12);
        assert!(p.matrix()[(1, 1)].norm() < 1e-12);
    }

    #[test]
    fn column_norms_obey_bessel() {
        let fam = WaveletFamily::make("db4").unwrap();
        let scheme = SamplingScheme::minimal_for(&fam, 1.0 / 7.0).unwrap();
        let p = assemble(&fam, &scheme, 12, 40).unwrap();
        for col in p.matrix().columns() {
            let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            assert!(norm <= 1.0 + 1e-9, "column norm {norm}");
        }
    }

    #[test]
    fn cnm_identity_block_and_dyadic_thresholds() {
        let eye = Array2::from_shape_fn((6, 6), |(i, j)| {
            Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)
        });
        assert!((smallest_singular_value(&eye) - 1.0).abs() < 1e-12);

        // at M = 2^R the angle equals 2/pi exactly for the Haar system
        for r in 1..=8u32 {
            let n = haar().n_r(r);
            let p = assemble(&haar(), &haar_scheme(), n, 1 << r).unwrap();
            let c = p.c_nm();
            assert!((c - 2.0 / PI).abs() < 1e-10, "R={r}: {c}");
        }
    }

    #[test]
    fn cnm_matches_inverse_power_iteration() {
        // independent eigen-oracle: power iteration on (U^H U)^{-1}
        let fam = haar();
        let p = assemble(&fam, &haar_scheme(), 16, 32).unwrap();
        let u = p.matrix();
        let n = 16;
        // normal matrix
        let mut g = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..32 {
                    acc += u[(k, i)].conj() * u[(k, j)];
                }
                g[i][j] = acc;
            }
        }
        // solve G x = b by Gaussian elimination (test-local)
        let solve_g = |b: &[Complex64]| -> Vec<Complex64> {
            let mut a: Vec<Vec<Complex64>> = g.clone();
            let mut x = b.to_vec();
            for col in 0..n {
                let piv = (col..n).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm())).unwrap();
                a.swap(col, piv);
                x.swap(col, piv);
                let d = a[col][col];
                for row in col + 1..n {
                    let f = a[row][col] / d;
                    for k in col..n {
                        let t = a[col][k];
                        a[row][k] -= f * t;
                    }
                    let t = x[col];
                    x[row] -= f * t;
                }
            }
            for col in (0..n).rev() {
                let mut acc = x[col];
                for k in col + 1..n {
                    acc -= a[col][k] * x[k];
                }
                x[col] = acc / a[col][col];
            }
            x
        };
        let mut v: Vec<Complex64> = (0..n)
            .map(|i| Complex64::new(1.0 + (i as f64 * 0.3).sin(), 0.2))
            .collect();
        let mut lambda = 0.0;
        for _ in 0..400 {
            let w = solve_g(&v);
            let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            lambda = norm
                / v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            v = w.iter().map(|z| z / norm).collect();
        }
        let sigma_oracle = lambda.sqrt().recip();
        assert!((p.c_nm() - sigma_oracle).abs() < 1e-8);
    }

    #[test]
    fn perfect_recovery_of_basis_element() {
        let fam = haar();
        let n = 8usize;
        let mut beta = vec![0.0; n];
        beta[2] = 1.0; // phi_3 in 1-based position language
        let model = FunctionModel::wavelet_combo(fam.clone(), beta.clone()).unwrap();
        for m in [8usize, 11, 16] {
            let samples = synthesize_samples(&haar_scheme(), &model, m).unwrap();
            let p = assemble(&fam, &haar_scheme(), n, m).unwrap();
            let sol = solve(&p, &samples).unwrap();
            for (i, a) in sol.alpha.iter().enumerate() {
                let want = if i == 2 { 1.0 } else { 0.0 };
                assert!((a - want).norm() < 1e-10, "m={m} i={i}");
            }
        }
    }

    #[test]
    fn solve_matches_normal_equations_oracle() {
        let fam = haar();
        let p = assemble(&fam, &haar_scheme(), 4, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rhs: Vec<Complex64> = (0..8)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let samples = SampleVector {
            values: rhs.clone(),
            noise_norm: 0.0,
            seed: None,
            quad_error: 0.0,
        };
        let sol = solve(&p, &samples).unwrap();
        // dense oracle: solve (U^H U) alpha = U^H f by elimination
        let u = p.matrix();
        let mut g = [[Complex64::new(0.0, 0.0); 4]; 4];
        let mut b = [Complex64::new(0.0, 0.0); 4];
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..8 {
                    g[i][j] += u[(k, i)].conj() * u[(k, j)];
                }
            }
            for k in 0..8 {
                b[i] += u[(k, i)].conj() * rhs[k];
            }
        }
        for col in 0..4 {
            for row in col + 1..4 {
                let f = g[row][col] / g[col][col];
                for k in col..4 {
                    let t = g[col][k];
                    g[row][k] -= f * t;
                }
                let t = b[col];
                b[row] -= f * t;
            }
        }
        for col in (0..4).rev() {
            let mut acc = b[col];
            for k in col + 1..4 {
                acc -= g[col][k] * b[k];
            }
            b[col] = acc / g[col][col];
        }
        for i in 0..4 {
            assert!((sol.alpha[i] - b[i]).norm() < 1e-8);
        }
        // consistency: U^H (U alpha - f) ~ 0
        let alpha = Array1::from_vec(sol.alpha.clone());
        let resid = p.matrix().dot(&alpha) - Array1::from_vec(rhs.clone());
        let normal_resid = conj_transpose_dot(p.matrix(), &resid);
        let rhs_norm = rhs.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let dev = normal_resid.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!(dev <= 1e-9 * rhs_norm, "normal residual {dev:.2e}");
    }

    #[test]
    fn noise_amplification_bounded_by_kappa() {
        let fam = haar();
        let n = 16usize;
        let m = 32usize;
        let p = assemble(&fam, &haar_scheme(), n, m).unwrap();
        let zero = SampleVector {
            values: vec![Complex64::new(0.0, 0.0); m],
            noise_norm: 0.0,
            seed: None,
            quad_error: 0.0,
        };
        for seed in 0..5u64 {
            let delta = 1e-3;
            let noisy = add_noise(&zero, delta, seed);
            let sol = solve(&p, &noisy).unwrap();
            let norm = sol.alpha.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            assert!(norm <= delta / sol.sigma_min * (1.0 + 1e-9));
        }
    }

    #[test]
    fn quasi_optimality_at_the_stable_rate() {
        let fam = haar();
        let n = 32usize;
        let m = 32usize; // stable sampling rate for N = 2^5 at density 1
        let p = assemble(&fam, &haar_scheme(), n, m).unwrap();
        let c = p.c_nm();
        let theta = 1.0 / c;
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let decay: f64 = 1.2 + rng.gen_range(0.0..1.3);
            let beta: Vec<f64> = (1..=200)
                .map(|j| (j as f64).powf(-decay) * (1.0 + rng.gen_range(-0.5..0.5)))
                .collect();
            let model = FunctionModel::wavelet_combo(fam.clone(), beta.clone()).unwrap();
            let samples = synthesize_samples(&haar_scheme(), &model, m).unwrap();
            let sol = solve(&p, &samples).unwrap();
            let err = reconstruction_error(&beta, &sol.alpha, n).unwrap();
            let best = best_approx_error(&beta, n);
            assert!(
                err <= theta * best * (1.0 + 1e-7) + 1e-12,
                "err {err:.3e} vs theta*best {:.3e}",
                theta * best
            );
        }
    }

    #[test]
    fn rank_deficiency_is_refused_but_truncated_solve_proceeds() {
        let fam = haar();
        let p = assemble(&fam, &haar_scheme(), 8, 7).unwrap();
        let samples = SampleVector {
            values: vec![Complex64::new(0.1, 0.0); 7],
            noise_norm: 0.0,
            seed: None,
            quad_error: 0.0,
        };
        match solve(&p, &samples) {
            Err(Error::IllPosed { sigma_min }) => assert!(sigma_min < 1e-13),
            other => panic!("expected IllPosed, got {other:?}"),
        }
        let sol = solve_truncated(&p, &samples, RANK_TOL).unwrap();
        assert!(sol.alpha.iter().all(|z| z.norm().is_finite()));
        assert!(sol.residual < 1.0);
    }

    #[test]
    fn error_functionals() {
        let beta: Vec<f64> = (1..=3000).map(|j| (j as f64).powi(-3)).collect();
        let alpha: Vec<Complex64> = beta[..256]
            .iter()
            .map(|b| Complex64::new(*b, 0.0))
            .collect();
        let tail_only = reconstruction_error(&beta, &alpha, 256).unwrap();
        let best = best_approx_error(&beta, 256);
        assert!((tail_only - best).abs() < 1e-16);
        // frozen independent summation of sqrt(sum_{j>256} j^-6) over 3000 terms
        assert!((best - 4.244130e-7).abs() < 1e-12, "{best:.6e}");
        assert_eq!(best_approx_error(&beta, 3000), 0.0);
        assert!(reconstruction_error(&beta, &alpha, 257).is_err());

        // small-instance cross-check against grid quadrature by orthonormality
        let fam = haar();
        let beta4 = vec![0.7, -0.2, 0.4, 0.1];
        let alpha2 = vec![Complex64::new(0.65, 0.02), Complex64::new(-0.3, 0.0)];
        let exact = reconstruction_error(&beta4, &alpha2, 2).unwrap();
        let tables = fam.cascade(10);
        let n_grid = 1usize << 10;
        let mut acc = 0.0;
        for i in 0..n_grid {
            // midpoint of cell i at resolution 2^-10: f and f_tilde are
            // constant there, evaluate via the expansion
            let x = (i as f64 + 0.5) / n_grid as f64;
            let mut diff = Complex64::new(0.0, 0.0);
            for pnum in 1..=4 {
                let idx = fam.position_to_index(pnum).unwrap();
                let b = beta4[pnum - 1];
                let a = if pnum <= 2 { alpha2[pnum - 1] } else { Complex64::new(0.0, 0.0) };
                // Haar basis values at midpoints
                let val = match idx {
                    crate::wavelet::BasisIndex::Scaling { shift } => {
                        let u = x - shift as f64;
                        if (0.0..1.0).contains(&u) { 1.0 } else { 0.0 }
                    }
                    crate::wavelet::BasisIndex::Wavelet { level, shift } => {
                        let s = (1u64 << level) as f64;
                        let u = s * x - shift as f64;
                        s.sqrt() * if (0.0..0.5).contains(&u) { 1.0 } else if (0.5..1.0).contains(&u) { -1.0 } else { 0.0 }
                    }
                };
                diff += (Complex64::new(b, 0.0) - a) * val;
            }
            acc += diff.norm_sqr();
        }
        let _ = tables;
        let grid = (acc / n_grid as f64).sqrt();
        assert!((grid - exact).abs() < 1e-9, "grid {grid} exact {exact}");
    }

    #[test]
    fn solution_json_has_contracted_fields() {
        let fam = haar();
        let p = assemble(&fam, &haar_scheme(), 2, 4).unwrap();
        let model = FunctionModel::wavelet_combo(fam, vec![1.0, 0.5]).unwrap();
        let samples = synthesize_samples(&haar_scheme(), &model, 4).unwrap();
        let sol = solve(&p, &samples).unwrap();
        let v = solution_to_json(&p, &sol);
        for key in ["N", "M", "epsilon", "family", "sigma_min", "kappa", "residual", "alpha"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["alpha"].as_array().unwrap().len(), 2);
    }
}
