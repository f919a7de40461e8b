//! Green-function computations via the eigendecomposition.
//!
//! `G(z) = (H − z)^{-1}` is assembled as `G_ij = Σ_k V_ik V_jk/(λ_k − z)`
//! (one decomposition serves many spectral parameters, which dominates a
//! resolvent scan). On top of that: normalized traces, the shifted
//! linear statistic `[G] = Ḡ − E Ḡ − (H̄²−1)·m·m'`, Ward-identity
//! residuals, local-law diagnostic ratios, and a Helffer–Sjöstrand
//! reconstruction evaluator.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::fmath;
use crate::matrix::CMat;
use crate::semicircle;
use crate::spectra::SpectralData;

#[derive(Debug, Clone, PartialEq)]
pub enum ResolventError {
    /// `Im z = 0`.
    RealAxis,
    /// Eigenvectors required but absent from the spectral data.
    MissingVectors,
    /// Fewer than two replicas for a centered statistic.
    InsufficientReplicas(usize),
    LengthMismatch,
    /// 2-D quadrature failed to reach its tolerance.
    QuadratureFailure { estimate: f64, error: f64, tolerance: f64 },
}

impl fmt::Display for ResolventError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResolventError::RealAxis => write!(f, "spectral parameter must have Im z != 0"),
            ResolventError::MissingVectors => {
                write!(f, "green_function requires eigenvectors in the spectral data")
            }
            ResolventError::InsufficientReplicas(m) => {
                write!(f, "need at least 2 replicas, got {m}")
            }
            ResolventError::LengthMismatch => write!(f, "replica series lengths differ"),
            ResolventError::QuadratureFailure { estimate, error, tolerance } => write!(
                f,
                "quadrature failed: estimate {estimate}, error estimate {error} > tolerance {tolerance}"
            ),
        }
    }
}

impl core::error::Error for ResolventError {}

/// Full Green function at one spectral parameter.
#[derive(Debug, Clone)]
pub struct GreenFunction {
    pub z: Complex64,
    pub entries: CMat,
    /// `Ḡ = (1/N) tr G`.
    pub trace_normalized: Complex64,
}

/// `G_ij = Σ_k V_ik V_jk/(λ_k − z)`. Symmetric by construction.
pub fn green_function(spectrum: &SpectralData, z: Complex64) -> Result<GreenFunction, ResolventError> {
    if z.im == 0.0 {
        return Err(ResolventError::RealAxis);
    }
    let v = spectrum.vectors.as_ref().ok_or(ResolventError::MissingVectors)?;
    let n = spectrum.n();
    let mut g = CMat::zeros(n);
    for k in 0..n {
        let w = Complex64::new(1.0, 0.0) / (Complex64::new(spectrum.eigenvalues[k], 0.0) - z);
        let vk = v.row(k);
        for i in 0..n {
            let t = w * vk[i];
            let row = g.row_mut(i);
            for (gij, &vkj) in row.iter_mut().zip(vk.iter()) {
                *gij += t * vkj;
            }
        }
    }
    let trace: Complex64 = (0..n).map(|i| g.get(i, i)).sum();
    Ok(GreenFunction { z, entries: g, trace_normalized: trace / n as f64 })
}

/// `Ḡ(z) = (1/N) Σ_k 1/(λ_k − z)` straight from the eigenvalues.
pub fn trace_green(spectrum: &SpectralData, z: Complex64) -> Result<Complex64, ResolventError> {
    if z.im == 0.0 {
        return Err(ResolventError::RealAxis);
    }
    let n = spectrum.n();
    let mut s = Complex64::new(0.0, 0.0);
    for &lam in &spectrum.eigenvalues {
        s += Complex64::new(1.0, 0.0) / Complex64::new(lam - z.re, -z.im);
    }
    Ok(s / n as f64)
}

/// The shifted linear statistic across replicas:
/// `[G]_r = Ḡ_r − mean Ḡ − (H̄²−1)_r · m(z)·m'(z)`,
/// with the expectation replaced by the across-replica mean.
#[derive(Debug, Clone)]
pub struct ShiftedLinearStat {
    pub z: Complex64,
    pub m: Complex64,
    pub m_prime: Complex64,
    pub g_bar: Vec<Complex64>,
    pub mean_g_bar: Complex64,
    pub h2: Vec<f64>,
    /// `[G]` per replica.
    pub values: Vec<Complex64>,
}

pub fn shifted_stat(
    g_bar: &[Complex64],
    h2: &[f64],
    z: Complex64,
) -> Result<ShiftedLinearStat, ResolventError> {
    let m_reps = g_bar.len();
    if m_reps < 2 {
        return Err(ResolventError::InsufficientReplicas(m_reps));
    }
    if h2.len() != m_reps {
        return Err(ResolventError::LengthMismatch);
    }
    let m = semicircle::stieltjes(z).map_err(|_| ResolventError::RealAxis)?;
    let m_prime = semicircle::stieltjes_prime(z).map_err(|_| ResolventError::RealAxis)?;
    let mean: Complex64 = g_bar.iter().sum::<Complex64>() / m_reps as f64;
    let values = g_bar
        .iter()
        .zip(h2.iter())
        .map(|(g, &s)| g - mean - m * m_prime * s)
        .collect();
    Ok(ShiftedLinearStat {
        z,
        m,
        m_prime,
        g_bar: g_bar.to_vec(),
        mean_g_bar: mean,
        h2: h2.to_vec(),
        values,
    })
}

/// `max_i |Σ_j |G_ij|² − Im G_ii/η|` — the Ward identity holds exactly
/// in exact arithmetic, so this measures only floating-point error.
pub fn ward_residual(green: &GreenFunction) -> f64 {
    let n = green.entries.n();
    let eta = green.z.im;
    let mut worst = 0.0f64;
    for i in 0..n {
        let row_sum: f64 = green.entries.row(i).iter().map(|g| g.norm_sqr()).sum();
        let r = (row_sum - green.entries.get(i, i).im / eta).abs();
        if r > worst {
            worst = r;
        }
    }
    worst
}

/// Diagnostic ratios against the local-law bounds
/// `max_ij |G_ij − δ_ij m| / (1/q + √(Im m/(Nη)) + 1/(Nη))` and
/// `|Ḡ − m| / ((1/q ∧ 1/(q²(η+κ))) + 1/(Nη))`.
///
/// Reported verbatim: stochastic domination hides `N^ε` factors, so the
/// ratios are diagnostics, not pass/fail bounds.
#[derive(Debug, Clone, Copy)]
pub struct LocalLawReport {
    pub z: Complex64,
    pub kappa: f64,
    pub entry_deviation: f64,
    pub trace_deviation: f64,
    pub entry_bound: f64,
    pub trace_bound: f64,
    pub entry_ratio: f64,
    pub trace_ratio: f64,
}

pub fn local_law_report(green: &GreenFunction, q: f64, n: usize) -> LocalLawReport {
    let z = green.z;
    let eta = z.im;
    let m = semicircle::stieltjes(z).expect("Im z != 0 by GreenFunction construction");
    let kappa = (2.0 - z.re).abs().min((2.0 + z.re).abs());
    let dim = green.entries.n();
    let mut entry_deviation = 0.0f64;
    for i in 0..dim {
        for j in 0..dim {
            let target = if i == j { m } else { Complex64::new(0.0, 0.0) };
            let d = (green.entries.get(i, j) - target).norm();
            if d > entry_deviation {
                entry_deviation = d;
            }
        }
    }
    let trace_deviation = (green.trace_normalized - m).norm();
    let n_eta = n as f64 * eta;
    let entry_bound = 1.0 / q + fmath::sqrt(m.im.abs() / n_eta) + 1.0 / n_eta;
    let trace_bound = (1.0 / q).min(1.0 / (q * q * (eta + kappa))) + 1.0 / n_eta;
    LocalLawReport {
        z,
        kappa,
        entry_deviation,
        trace_deviation,
        entry_bound,
        trace_bound,
        entry_ratio: entry_deviation / entry_bound,
        trace_ratio: trace_deviation / trace_bound,
    }
}

// ---------------------------------------------------------------------------
// Helffer–Sjöstrand reconstruction
// ---------------------------------------------------------------------------

/// A twice-differentiable test function on a compact support.
pub trait TestFunction {
    fn f(&self, x: f64) -> f64;
    fn df(&self, x: f64) -> f64;
    fn d2f(&self, x: f64) -> f64;
    /// Interval outside of which `f`, `f'`, `f''` are (numerically) zero.
    fn support(&self) -> (f64, f64);
}

/// Test function given by closures.
pub struct FnC2<F, G, H> {
    pub f: F,
    pub df: G,
    pub d2f: H,
    pub support: (f64, f64),
}

impl<F: Fn(f64) -> f64, G: Fn(f64) -> f64, H: Fn(f64) -> f64> TestFunction for FnC2<F, G, H> {
    fn f(&self, x: f64) -> f64 {
        (self.f)(x)
    }
    fn df(&self, x: f64) -> f64 {
        (self.df)(x)
    }
    fn d2f(&self, x: f64) -> f64 {
        (self.d2f)(x)
    }
    fn support(&self) -> (f64, f64) {
        self.support
    }
}

/// Test function sampled on a uniform grid (linear interpolation).
pub struct SampledC2 {
    pub x0: f64,
    pub dx: f64,
    pub f: Vec<f64>,
    pub df: Vec<f64>,
    pub d2f: Vec<f64>,
}

impl SampledC2 {
    fn interp(&self, table: &[f64], x: f64) -> f64 {
        let t = (x - self.x0) / self.dx;
        if t <= 0.0 || t >= (table.len() - 1) as f64 {
            return 0.0;
        }
        let i = t as usize;
        let frac = t - i as f64;
        table[i] * (1.0 - frac) + table[i + 1] * frac
    }
}

impl TestFunction for SampledC2 {
    fn f(&self, x: f64) -> f64 {
        self.interp(&self.f, x)
    }
    fn df(&self, x: f64) -> f64 {
        self.interp(&self.df, x)
    }
    fn d2f(&self, x: f64) -> f64 {
        self.interp(&self.d2f, x)
    }
    fn support(&self) -> (f64, f64) {
        (self.x0, self.x0 + self.dx * (self.f.len() - 1) as f64)
    }
}

/// Result of a Helffer–Sjöstrand evaluation.
#[derive(Debug, Clone, Copy)]
pub struct HsReconstruction {
    pub value: f64,
    /// Difference between the two finest refinement levels.
    pub error_estimate: f64,
    pub evaluations: usize,
}

// smooth cutoff: 1 on |y|<=1, 0 on |y|>=2, quintic smoothstep between
fn chi(y: f64) -> f64 {
    let t = y.abs() - 1.0;
    if t <= 0.0 {
        1.0
    } else if t >= 1.0 {
        0.0
    } else {
        1.0 - t * t * t * (10.0 + t * (-15.0 + 6.0 * t))
    }
}

fn chi_prime(y: f64) -> f64 {
    let t = y.abs() - 1.0;
    if t <= 0.0 || t >= 1.0 {
        0.0
    } else {
        let s = 30.0 * t * t * (t - 1.0) * (t - 1.0);
        -s * y.signum()
    }
}

/// Numerically evaluate `(1/π) ∫ ∂_z̄(f̃(z)χ(z)) / (λ − z) d²z` with the
/// almost analytic extension `f̃(x+iy) = f(x) + iy f'(x)` and
/// `χ(z) ≡ χ(Im z)`; returns the reconstruction of `f(λ)`.
///
/// The line `Im z = 0` carrying the Cauchy singularity is excluded by a
/// strip of height `max(eta_cut, 1e−6)`; thanks to the `∂_z̄` cancellation
/// the integrand is bounded there, so the strip contributes `O(height)`.
pub fn hs_reconstruct(
    f: &dyn TestFunction,
    lambda: f64,
    eta_cut: f64,
) -> Result<HsReconstruction, ResolventError> {
    let tol = 2e-3;
    let coarse = hs_pass(f, lambda, eta_cut, 8)?;
    let fine = hs_pass(f, lambda, eta_cut, 16)?;
    let error = (fine.0 - coarse.0).abs();
    if !fine.0.is_finite() || error > tol {
        return Err(ResolventError::QuadratureFailure {
            estimate: fine.0,
            error,
            tolerance: tol,
        });
    }
    Ok(HsReconstruction { value: fine.0, error_estimate: error, evaluations: coarse.1 + fine.1 })
}

fn hs_pass(
    f: &dyn TestFunction,
    lambda: f64,
    eta_cut: f64,
    panels_per_decade: usize,
) -> Result<(f64, usize), ResolventError> {
    let y_lo = eta_cut.max(1e-6);
    if y_lo >= 2.0 {
        return Ok((0.0, 0));
    }
    let mut evals = 0usize;
    let mut total = Complex64::new(0.0, 0.0);

    // geometric y-panels from y_lo to 2
    let decades = fmath::ln(2.0 / y_lo) / core::f64::consts::LN_2;
    let n_panels = ((decades * panels_per_decade as f64) as usize).max(4);
    let ratio = fmath::powf(2.0 / y_lo, 1.0 / n_panels as f64);
    let mut y_a = y_lo;
    for _ in 0..n_panels {
        let y_b = (y_a * ratio).min(2.0);
        // 8-point Gauss-Legendre in y on [y_a, y_b]
        let (nodes, weights) = gauss8();
        for (t, w) in nodes.iter().zip(weights.iter()) {
            let y = 0.5 * (y_a + y_b) + 0.5 * (y_b - y_a) * t;
            let wy = 0.5 * (y_b - y_a) * w;
            let (ix, ne) = x_integral(f, lambda, y);
            evals += ne;
            total += ix * wy;
        }
        y_a = y_b;
    }
    Ok((total.re / core::f64::consts::PI, evals))
}

/// `∫ i·[y f''(x) χ(y) + (f(x) + iy f'(x)) χ'(y)] / (λ − x − iy) dx`
/// by adaptive Simpson, split at the peak `x = λ`.
fn x_integral(f: &dyn TestFunction, lambda: f64, y: f64) -> (Complex64, usize) {
    let (a, b) = f.support();
    let cy = chi(y);
    let cpy = chi_prime(y);
    let mut evals = 0usize;
    let g = |x: f64, evals: &mut usize| -> Complex64 {
        *evals += 1;
        let denom = Complex64::new(lambda - x, -y);
        let mut num = Complex64::new(0.0, 0.0);
        if cy != 0.0 {
            num += Complex64::new(0.0, y * f.d2f(x) * cy);
        }
        if cpy != 0.0 {
            num += Complex64::new(0.0, cpy) * Complex64::new(f.f(x), y * f.df(x));
        }
        num / denom
    };
    let mut out = Complex64::new(0.0, 0.0);
    let tol = 1e-8;
    if lambda > a && lambda < b {
        out += adaptive_simpson(&g, a, lambda, tol, 24, &mut evals);
        out += adaptive_simpson(&g, lambda, b, tol, 24, &mut evals);
    } else {
        out += adaptive_simpson(&g, a, b, tol, 24, &mut evals);
    }
    (out, evals)
}

fn adaptive_simpson<F: Fn(f64, &mut usize) -> Complex64>(
    g: &F,
    a: f64,
    b: f64,
    tol: f64,
    depth: usize,
    evals: &mut usize,
) -> Complex64 {
    let fa = g(a, evals);
    let fb = g(b, evals);
    let fm = g(0.5 * (a + b), evals);
    simpson_step(g, a, b, fa, fm, fb, tol, depth, evals)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64, &mut usize) -> Complex64>(
    g: &F,
    a: f64,
    b: f64,
    fa: Complex64,
    fm: Complex64,
    fb: Complex64,
    tol: f64,
    depth: usize,
    evals: &mut usize,
) -> Complex64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = g(lm, evals);
    let frm = g(rm, evals);
    let h = b - a;
    let whole = (fa + 4.0 * fm + fb) * (h / 6.0);
    let left = (fa + 4.0 * flm + fm) * (h / 12.0);
    let right = (fm + 4.0 * frm + fb) * (h / 12.0);
    let delta = left + right - whole;
    if depth == 0 || delta.norm() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson_step(g, a, m, fa, flm, fm, tol * 0.5, depth - 1, evals)
            + simpson_step(g, m, b, fm, frm, fb, tol * 0.5, depth - 1, evals)
    }
}

fn gauss8() -> ([f64; 8], [f64; 8]) {
    (
        [
            -0.9602898564975363,
            -0.7966664774136267,
            -0.5255324099163290,
            -0.1834346424956498,
            0.1834346424956498,
            0.5255324099163290,
            0.7966664774136267,
            0.9602898564975363,
        ],
        [
            0.1012285362903763,
            0.2223810344533745,
            0.3137066458778873,
            0.3626837833783620,
            0.3626837833783620,
            0.3137066458778873,
            0.2223810344533745,
            0.1012285362903763,
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::{self, EnsembleSpec};
    use crate::matrix::Mat;
    use crate::spectra::eigen_decompose;

    fn zero_spectrum(n: usize) -> SpectralData {
        SpectralData {
            eigenvalues: alloc::vec![0.0; n],
            vectors: Some(Mat::identity(n)),
            source: None,
        }
    }

    /// Dense complex inversion by Gaussian elimination with partial
    /// pivoting — the independent oracle for `green_function`.
    fn invert_shifted(h: &Mat, z: Complex64) -> CMat {
        let n = h.n();
        let mut a = alloc::vec![Complex64::new(0.0, 0.0); n * 2 * n];
        let w = 2 * n;
        for i in 0..n {
            for j in 0..n {
                a[i * w + j] = Complex64::new(h.get(i, j), 0.0);
            }
            a[i * w + i] -= z;
            a[i * w + n + i] = Complex64::new(1.0, 0.0);
        }
        for col in 0..n {
            let mut piv = col;
            for r in col + 1..n {
                if a[r * w + col].norm() > a[piv * w + col].norm() {
                    piv = r;
                }
            }
            if piv != col {
                for c in 0..w {
                    a.swap(col * w + c, piv * w + c);
                }
            }
            let d = a[col * w + col];
            for c in 0..w {
                a[col * w + c] /= d;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[r * w + col];
                if factor.norm() == 0.0 {
                    continue;
                }
                for c in 0..w {
                    let v = a[col * w + c];
                    a[r * w + c] -= factor * v;
                }
            }
        }
        let mut out = CMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, a[i * w + n + j]);
            }
        }
        out
    }

    #[test]
    fn zero_matrix_resolvent_is_minus_inverse_z() {
        let sd = zero_spectrum(4);
        let g = green_function(&sd, Complex64::new(0.0, 1.0)).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expect =
                    if i == j { Complex64::new(0.0, 1.0) } else { Complex64::new(0.0, 0.0) };
                assert!((g.entries.get(i, j) - expect).norm() < 1e-15);
            }
        }
        assert!((g.trace_normalized - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        // Ward identity exact here
        assert!(ward_residual(&g) < 1e-15);
    }

    #[test]
    fn two_by_two_against_direct_inversion() {
        let mut h = Mat::zeros(2);
        h.set_sym(0, 1, 1.0);
        let sd = eigen_decompose(&h, true).unwrap();
        let z = Complex64::new(0.0, 1.0);
        let g = green_function(&sd, z).unwrap();
        let oracle = invert_shifted(&h, z);
        for i in 0..2 {
            for j in 0..2 {
                assert!((g.entries.get(i, j) - oracle.get(i, j)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn n50_against_lu_oracle() {
        let spec = EnsembleSpec::erdos_renyi(50, 0.3).unwrap();
        let s = ensemble::sample(&spec, 77).unwrap();
        let sd = eigen_decompose(&s.h, true).unwrap();
        let z = Complex64::new(1.0, 0.1);
        let g = green_function(&sd, z).unwrap();
        let oracle = invert_shifted(&s.h, z);
        let mut worst = 0.0f64;
        for i in 0..50 {
            for j in 0..50 {
                worst = worst.max((g.entries.get(i, j) - oracle.get(i, j)).norm());
            }
        }
        assert!(worst <= 1e-8, "max deviation {worst:e}");
        // symmetry and conjugation invariants
        let gc = green_function(&sd, z.conj()).unwrap();
        let mut worst_sym = 0.0f64;
        let mut worst_conj = 0.0f64;
        for i in 0..50 {
            for j in 0..50 {
                worst_sym = worst_sym.max((g.entries.get(i, j) - g.entries.get(j, i)).norm());
                worst_conj =
                    worst_conj.max((gc.entries.get(i, j) - g.entries.get(i, j).conj()).norm());
            }
        }
        assert!(worst_sym < 1e-12);
        assert!(worst_conj < 1e-12);
    }

    #[test]
    fn trace_green_examples() {
        let sd = SpectralData { eigenvalues: alloc::vec![-1.0, 1.0], vectors: None, source: None };
        let t = trace_green(&sd, Complex64::new(0.0, 1.0)).unwrap();
        assert!((t - Complex64::new(0.0, 0.5)).norm() < 1e-15);

        let sd0 = zero_spectrum(3);
        let t0 = trace_green(&sd0, Complex64::new(0.0, 1.0)).unwrap();
        assert!((t0 - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert!(trace_green(&sd0, Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn trace_matches_green_diagonal_and_positive_imag() {
        let spec = EnsembleSpec::signed_bernoulli(40, 0.3, 0.0).unwrap();
        let s = ensemble::sample(&spec, 5).unwrap();
        let sd = eigen_decompose(&s.h, true).unwrap();
        let z = Complex64::new(0.5, 0.7);
        let g = green_function(&sd, z).unwrap();
        let t = trace_green(&sd, z).unwrap();
        assert!((g.trace_normalized - t).norm() <= 1e-10);
        assert!(t.im > 0.0);
    }

    #[test]
    fn ward_residual_small_and_linear_growth() {
        let mut residuals = alloc::vec::Vec::new();
        for &n in &[50usize, 100, 200] {
            let spec = EnsembleSpec::erdos_renyi(n, 0.3).unwrap();
            let s = ensemble::sample(&spec, n as u64).unwrap();
            let sd = eigen_decompose(&s.h, true).unwrap();
            let g = green_function(&sd, Complex64::new(0.3, 0.2)).unwrap();
            let r = ward_residual(&g);
            assert!(r <= 1e-8, "ward residual {r:e} at N={n}");
            residuals.push(r);
        }
        // at most linear growth in N (slack factor 10 on top of 4x)
        let floor = 1e-13;
        assert!(residuals[2] <= 40.0 * residuals[0].max(floor));
    }

    #[test]
    fn shifted_stat_degenerate_pair() {
        let z = Complex64::new(1.0, 0.5);
        let g = Complex64::new(0.3, 0.4);
        let st = shifted_stat(&[g, g], &[0.01, 0.01], z).unwrap();
        let expect = -st.m * st.m_prime * 0.01;
        for v in &st.values {
            assert!((v - expect).norm() < 1e-15);
        }
        // mean of (G - mean) is zero by construction
        let mean_centered: Complex64 =
            st.g_bar.iter().map(|g| g - st.mean_g_bar).sum::<Complex64>() / 2.0;
        assert!(mean_centered.norm() < 1e-16);
        assert!(shifted_stat(&[g], &[0.0], z).is_err());
    }

    #[test]
    fn local_law_degenerate_zero_matrix() {
        let sd = zero_spectrum(5);
        let z = Complex64::new(1.0, 0.5);
        let g = green_function(&sd, z).unwrap();
        let rep = local_law_report(&g, 10.0, 5);
        let m = semicircle::stieltjes(z).unwrap();
        let expect = (-Complex64::new(1.0, 0.0) / z - m).norm();
        assert!((rep.trace_deviation - expect).abs() < 1e-14);
        assert!(rep.entry_ratio.is_finite() && rep.trace_ratio.is_finite());
    }

    fn gaussian_bump(center: f64, width: f64) -> impl TestFunction {
        let w2 = width * width;
        FnC2 {
            f: move |x: f64| fmath::exp(-(x - center) * (x - center) / (2.0 * w2)),
            df: move |x: f64| {
                -(x - center) / w2 * fmath::exp(-(x - center) * (x - center) / (2.0 * w2))
            },
            d2f: move |x: f64| {
                let u = (x - center) * (x - center);
                (u / (w2 * w2) - 1.0 / w2) * fmath::exp(-u / (2.0 * w2))
            },
            support: (center - 10.0 * width, center + 10.0 * width),
        }
    }

    #[test]
    fn hs_reconstructs_gaussian_peak() {
        let f = gaussian_bump(0.3, 0.5);
        let r = hs_reconstruct(&f, 0.3, 1e-5).unwrap();
        assert!((r.value - 1.0).abs() < 1e-3, "value {}", r.value);
        // off-center point
        let r = hs_reconstruct(&f, 0.8, 1e-5).unwrap();
        assert!((r.value - f.f(0.8)).abs() < 1e-3);
    }

    #[test]
    fn hs_zero_function_and_linearity() {
        let zero = FnC2 { f: |_| 0.0, df: |_| 0.0, d2f: |_| 0.0, support: (-1.0, 1.0) };
        let r = hs_reconstruct(&zero, 0.0, 1e-5).unwrap();
        assert!(r.value.abs() < 1e-12);

        let f = gaussian_bump(0.0, 0.4);
        let g = gaussian_bump(0.5, 0.6);
        let (a, b) = (2.0, -0.7);
        let combo = FnC2 {
            f: |x: f64| {
                let f = gaussian_bump(0.0, 0.4);
                let g = gaussian_bump(0.5, 0.6);
                2.0 * f.f(x) - 0.7 * g.f(x)
            },
            df: |x: f64| {
                let f = gaussian_bump(0.0, 0.4);
                let g = gaussian_bump(0.5, 0.6);
                2.0 * f.df(x) - 0.7 * g.df(x)
            },
            d2f: |x: f64| {
                let f = gaussian_bump(0.0, 0.4);
                let g = gaussian_bump(0.5, 0.6);
                2.0 * f.d2f(x) - 0.7 * g.d2f(x)
            },
            support: (-6.0, 7.0),
        };
        let lam = 0.2;
        let rc = hs_reconstruct(&combo, lam, 1e-5).unwrap().value;
        let rf = hs_reconstruct(&f, lam, 1e-5).unwrap().value;
        let rg = hs_reconstruct(&g, lam, 1e-5).unwrap().value;
        assert!((rc - (a * rf + b * rg)).abs() < 3e-3, "{rc} vs {}", a * rf + b * rg);
    }

    #[test]
    fn sampled_function_matches_closure() {
        let f = gaussian_bump(0.0, 0.7);
        let n = 4001;
        let x0 = -7.0;
        let dx = 14.0 / (n - 1) as f64;
        let grid: Vec<f64> = (0..n).map(|i| x0 + dx * i as f64).collect();
        let s = SampledC2 {
            x0,
            dx,
            f: grid.iter().map(|&x| f.f(x)).collect(),
            df: grid.iter().map(|&x| f.df(x)).collect(),
            d2f: grid.iter().map(|&x| f.d2f(x)).collect(),
        };
        let r = hs_reconstruct(&s, 0.1, 1e-4).unwrap();
        assert!((r.value - f.f(0.1)).abs() < 5e-3, "value {}", r.value);
    }
}
