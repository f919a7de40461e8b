//! Semicircle-law closed forms and spectral-domain classification.
//!
//! Density `ϱ(x) = (1/2π)√((4−x²)₊)` on `[−2, 2]`, its CDF and the
//! N-quantiles `γ_i` (defined by `N·F(γ_i) = i − 1/2`), the Stieltjes
//! transform `m(z)` solving `1 + z·m + m² = 0` with `Im m · Im z > 0`,
//! its derivative `m'(z) = m/(−z − 2m)`, and membership tests for the
//! spectral domains
//!
//! ```text
//! S      = { E + iη : |E| ≤ 4, 0 < η ≤ 4 }
//! S̃_τ    = { E + iη : |E| ≤ 4, N^{−1+τ} ≤ η ≤ 4 }
//! D_τ    = { E + iη : |4 − E²| + η ≥ τ, |E| ≤ 4, N^{−1+τ} ≤ η ≤ 4 }
//! ```
//!
//! All domain boundaries are treated as closed, exactly as displayed.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;

use crate::fmath;

#[derive(Debug, Clone, PartialEq)]
pub enum SemicircleError {
    /// Quantile index outside `1..=N`.
    QuantileIndex { i: usize, n: usize },
    /// `Im z = 0` passed to a resolvent-transform routine.
    RealAxis,
}

impl fmt::Display for SemicircleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemicircleError::QuantileIndex { i, n } => {
                write!(f, "quantile index {i} outside 1..={n}")
            }
            SemicircleError::RealAxis => write!(f, "spectral parameter must have Im z != 0"),
        }
    }
}

impl core::error::Error for SemicircleError {}

/// `ϱ(x) = (1/2π)√((4−x²)₊)`; zero outside `[−2, 2]`.
pub fn density(x: f64) -> f64 {
    let t = 4.0 - x * x;
    if t <= 0.0 {
        0.0
    } else {
        fmath::sqrt(t) / (2.0 * PI)
    }
}

/// Antiderivative of the density: `F(x) = 1/2 + x√(4−x²)/(4π) + arcsin(x/2)/π`,
/// clamped to `{0, 1}` outside `[−2, 2]`.
pub fn cdf(x: f64) -> f64 {
    if x <= -2.0 {
        0.0
    } else if x >= 2.0 {
        1.0
    } else {
        0.5 + x * fmath::sqrt(4.0 - x * x) / (4.0 * PI) + fmath::asin(x / 2.0) / PI
    }
}

/// The i-th N-quantile `γ_i`, solving `N·F(γ) = i − 1/2` by bisection on
/// the monotone closed-form CDF (bracket shrinks to machine resolution).
pub fn quantile(i: usize, n: usize) -> Result<f64, SemicircleError> {
    if i < 1 || i > n {
        return Err(SemicircleError::QuantileIndex { i, n });
    }
    let target = (i as f64 - 0.5) / n as f64;
    let mut lo = -2.0f64;
    let mut hi = 2.0f64;
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok(mid);
        }
        if cdf(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// All N quantiles `γ_1 < … < γ_N`.
#[derive(Debug, Clone)]
pub struct SemicircleQuantiles {
    pub n: usize,
    pub gamma: Vec<f64>,
}

pub fn quantiles(n: usize) -> SemicircleQuantiles {
    let gamma = (1..=n).map(|i| quantile(i, n).expect("index in range")).collect();
    SemicircleQuantiles { n, gamma }
}

/// `m(z)`: the root of `1 + z·m + m² = 0` with `Im m · Im z > 0`.
///
/// Both quadratic roots are formed explicitly and the branch is selected
/// by the sign condition rather than by a library branch cut.
pub fn stieltjes(z: Complex64) -> Result<Complex64, SemicircleError> {
    if z.im == 0.0 {
        return Err(SemicircleError::RealAxis);
    }
    let s = fmath::complex_sqrt(z * z - Complex64::new(4.0, 0.0));
    let half = Complex64::new(0.5, 0.0);
    let m_plus = (-z + s) * half;
    let m_minus = (-z - s) * half;
    let sign = if z.im > 0.0 { 1.0 } else { -1.0 };
    if m_plus.im * sign >= m_minus.im * sign {
        Ok(m_plus)
    } else {
        Ok(m_minus)
    }
}

/// `m'(z) = m/(−z − 2m)` (equivalently `m²/(1 − m²)`).
pub fn stieltjes_prime(z: Complex64) -> Result<Complex64, SemicircleError> {
    let m = stieltjes(z)?;
    Ok(m / (-z - 2.0 * m))
}

/// A spectral parameter with its derived quantities and domain flags.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub e: f64,
    pub eta: f64,
    /// `α = −log_N η` (so `η = N^{−α}`).
    pub alpha: f64,
    /// Distance to the spectral edge: `κ = min{|2−E|, |2+E|}`.
    pub kappa: f64,
    pub in_s: bool,
    pub in_s_tilde: bool,
    pub in_d: bool,
}

impl SpectralPoint {
    pub fn z(&self) -> Complex64 {
        Complex64::new(self.e, self.eta)
    }
}

/// Classify `z = E + iη` (requires `η > 0`) against `S`, `S̃_τ`, `D_τ`
/// for the given `N` and `τ`. Boundaries are closed.
pub fn classify(z: Complex64, n: usize, tau: f64) -> SpectralPoint {
    let e = z.re;
    let eta = z.im;
    debug_assert!(eta > 0.0, "classify requires Im z > 0");
    let alpha = -fmath::ln(eta) / fmath::ln(n as f64);
    let kappa = (2.0 - e).abs().min((2.0 + e).abs());
    let eta_floor = fmath::powf(n as f64, -1.0 + tau);
    let in_s = e.abs() <= 4.0 && eta > 0.0 && eta <= 4.0;
    let in_s_tilde = e.abs() <= 4.0 && eta >= eta_floor && eta <= 4.0;
    let in_d = (4.0 - e * e).abs() + eta >= tau && e.abs() <= 4.0 && eta >= eta_floor && eta <= 4.0;
    SpectralPoint { e, eta, alpha, kappa, in_s, in_s_tilde, in_d }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn density_closed_forms() {
        assert_relative_eq!(density(0.0), 1.0 / PI, max_relative = 1e-15);
        assert_eq!(density(2.0), 0.0);
        assert_eq!(density(-2.0), 0.0);
        assert_eq!(density(3.0), 0.0);
        assert_relative_eq!(density(1.0), fmath::sqrt(3.0) / (2.0 * PI), max_relative = 1e-15);
    }

    /// Composite Simpson quadrature of the density through the smooth
    /// substitution x = 2 sin θ; independent oracle for the CDF.
    fn cdf_oracle(x: f64) -> f64 {
        if x <= -2.0 {
            return 0.0;
        }
        let upper = fmath::asin(x.min(2.0) / 2.0);
        let lower = -PI / 2.0;
        let steps = 20_000usize; // even
        let h = (upper - lower) / steps as f64;
        let g = |theta: f64| {
            let c = libm::cos(theta);
            density(2.0 * libm::sin(theta)) * 2.0 * c
        };
        let mut s = g(lower) + g(upper);
        for k in 1..steps {
            let w = if k % 2 == 1 { 4.0 } else { 2.0 };
            s += w * g(lower + k as f64 * h);
        }
        s * h / 3.0
    }

    #[test]
    fn cdf_values_and_quadrature_oracle() {
        assert_eq!(cdf(0.0), 0.5);
        assert_eq!(cdf(2.0), 1.0);
        assert_eq!(cdf(-2.5), 0.0);
        let oracle = cdf_oracle(1.0);
        assert!((cdf(1.0) - oracle).abs() < 1e-10, "{} vs {}", cdf(1.0), oracle);
        assert_relative_eq!(cdf(1.0), 0.8044989, max_relative = 1e-6);
        // total mass from quadrature
        assert!((cdf_oracle(2.0) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn quantile_symmetry_and_residual() {
        // odd N: middle quantile is 0
        let g = quantile(51, 101).unwrap();
        assert!(g.abs() < 1e-12);
        // N=2, i=1: F(γ) = 1/4
        let g = quantile(1, 2).unwrap();
        assert!((cdf(g) - 0.25).abs() < 1e-12);
        assert_relative_eq!(g, -0.8086, max_relative = 1e-3);
        for n in [2usize, 5, 101] {
            let qs = quantiles(n);
            for i in 1..=n {
                let gi = qs.gamma[i - 1];
                assert!(
                    (n as f64 * cdf(gi) - (i as f64 - 0.5)).abs() <= 1e-10,
                    "residual at i={i} n={n}"
                );
                let gj = qs.gamma[n - i];
                assert!((gi + gj).abs() <= 1e-10, "antisymmetry at i={i} n={n}");
            }
            for w in qs.gamma.windows(2) {
                assert!(w[0] < w[1]);
            }
        }
    }

    #[test]
    fn stieltjes_known_points() {
        let m = stieltjes(Complex64::new(0.0, 1.0)).unwrap();
        let golden = (fmath::sqrt(5.0) - 1.0) / 2.0;
        assert!((m - Complex64::new(0.0, golden)).norm() < 1e-15);

        // near the edge: m(2) = −1
        let m = stieltjes(Complex64::new(2.0, 1e-9)).unwrap();
        assert!((m - Complex64::new(-1.0, 0.0)).norm() < 1e-4);

        let z = Complex64::new(0.5, 0.5);
        let m = stieltjes(z).unwrap();
        let residual = (Complex64::new(1.0, 0.0) + z * m + m * m).norm();
        assert!(residual <= 1e-12);
        assert!(m.im > 0.0);

        assert!(stieltjes(Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn stieltjes_residual_and_branch_on_grid() {
        for ie in 0..20 {
            for ik in 1..=20 {
                let z = Complex64::new(-4.0 + 8.0 * ie as f64 / 19.0, 4.0 * ik as f64 / 20.0);
                let m = stieltjes(z).unwrap();
                let res = (Complex64::new(1.0, 0.0) + z * m + m * m).norm();
                assert!(res <= 1e-12, "residual {res} at {z}");
                assert!(m.im > 0.0, "branch at {z}");
                // conjugate parameter: conjugate transform
                let mc = stieltjes(z.conj()).unwrap();
                assert!((mc - m.conj()).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn stieltjes_prime_forms_agree() {
        let z = Complex64::new(0.0, 1.0);
        let mp = stieltjes_prime(z).unwrap();
        assert!((mp.re - (-0.2763932022500210)).abs() < 1e-12 && mp.im.abs() < 1e-12);

        for ie in 0..10 {
            for ik in 1..=10 {
                let z = Complex64::new(-3.5 + 7.0 * ie as f64 / 9.0, 0.05 + 3.9 * ik as f64 / 10.0);
                let m = stieltjes(z).unwrap();
                let mp = stieltjes_prime(z).unwrap();
                let alt = m * m / (Complex64::new(1.0, 0.0) - m * m);
                assert!((mp - alt).norm() <= 1e-10 * (1.0 + mp.norm()));
                // central finite differences
                let h = 1e-5;
                let fd = (stieltjes(z + Complex64::new(h, 0.0)).unwrap()
                    - stieltjes(z - Complex64::new(h, 0.0)).unwrap())
                    / Complex64::new(2.0 * h, 0.0);
                assert!((fd - mp).norm() <= 1e-6, "fd mismatch at {z}");
            }
        }
    }

    #[test]
    fn stieltjes_prime_order_one_on_d_tau() {
        // |m'(z)| within [1/C, C] on a grid over D_tau (tau = 0.1).
        // The corner |E| = 4, small eta attains |m'| ≈ 1/13 (m ~ −1/z gives
        // m' ~ 1/z²), so C = 20 rather than 10.
        let n = 1000;
        let tau = 0.1;
        for ie in 0..30 {
            for ik in 0..30 {
                let z = Complex64::new(
                    -4.0 + 8.0 * ie as f64 / 29.0,
                    0.01 + 3.99 * ik as f64 / 29.0,
                );
                let pt = classify(z, n, tau);
                if !pt.in_d {
                    continue;
                }
                let a = stieltjes_prime(z).unwrap().norm();
                assert!((0.05..=20.0).contains(&a), "|m'|={a} at {z}");
            }
        }
    }

    #[test]
    fn classify_examples() {
        let p = classify(Complex64::new(1.0, 0.5), 1000, 0.1);
        assert!(p.in_s && p.in_s_tilde && p.in_d);
        assert_eq!(p.kappa, 1.0);

        let p = classify(Complex64::new(2.0, 1e-5), 1000, 0.1);
        assert!(p.in_s);
        assert!(!p.in_d);

        // boundary of S-tilde is closed
        let n = 1000;
        let eta = fmath::powf(n as f64, -1.0 + 0.2);
        let p = classify(Complex64::new(0.0, eta), n, 0.2);
        assert!(p.in_s_tilde);
        assert!((p.alpha - 0.8).abs() < 1e-12);
    }
}
