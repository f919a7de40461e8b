//! Eigendecomposition and eigenvalue-level statistics: sorted spectra,
//! the counting function `Σ(E) = |{i : λ_i ≤ E}|`, the two-band index
//! set away from the spectral center, normalized fluctuations
//! `X_i = (λ_i − E λ_i)/(γ_i √(½ E H⁴₁₂))`, and the rank-one shift
//! residual `λ_i − E λ_i − (γ_i/2)(H̄² − 1)`.
//!
//! Expectations are estimated by across-replica sample means (two-pass),
//! with the usual `M^{−1/2}` estimator error.

mod eigh;

pub use eigh::{eigh, EigenError, EighResult};

use alloc::vec::Vec;
use core::fmt;

use crate::ensemble::EnsembleSpec;
use crate::matrix::Mat;
use crate::semicircle;

/// Provenance of a decomposed matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceMeta {
    pub seed: u64,
    pub spec: EnsembleSpec,
}

/// Sorted spectrum of one symmetric matrix, optionally with eigenvectors
/// (row `k` of `vectors` is the eigenvector of `eigenvalues[k]`).
#[derive(Debug, Clone)]
pub struct SpectralData {
    pub eigenvalues: Vec<f64>,
    pub vectors: Option<Mat>,
    pub source: Option<SourceMeta>,
}

impl SpectralData {
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn with_source(mut self, meta: SourceMeta) -> Self {
        self.source = Some(meta);
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpectraError {
    Eigen(EigenError),
    /// Fewer than two replicas for a fluctuation statistic.
    InsufficientReplicas(usize),
    /// An index outside `1..=N` (or hitting the central quantile `γ = 0`).
    BadIndex { index: usize, n: usize },
    /// `tau` outside `(0, 1/2)` for the index-set construction.
    TauRange(f64),
    /// Mismatched replica array lengths.
    LengthMismatch,
}

impl fmt::Display for SpectraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectraError::Eigen(e) => write!(f, "{e}"),
            SpectraError::InsufficientReplicas(m) => {
                write!(f, "need at least 2 replicas, got {m}")
            }
            SpectraError::BadIndex { index, n } => {
                write!(f, "eigenvalue index {index} invalid for N={n}")
            }
            SpectraError::TauRange(t) => write!(f, "tau {t} outside (0, 1/2)"),
            SpectraError::LengthMismatch => write!(f, "replica series lengths differ"),
        }
    }
}

impl core::error::Error for SpectraError {}

impl From<EigenError> for SpectraError {
    fn from(e: EigenError) -> Self {
        SpectraError::Eigen(e)
    }
}

/// Full spectrum of a symmetric matrix, ascending, optionally with
/// eigenvectors.
pub fn eigen_decompose(matrix: &Mat, want_vectors: bool) -> Result<SpectralData, SpectraError> {
    let r = eigh(matrix, want_vectors)?;
    Ok(SpectralData { eigenvalues: r.values, vectors: r.vectors, source: None })
}

/// `Σ(E) = |{i : λ_i ≤ E}|` with the inclusive comparison, by binary
/// search on the sorted spectrum.
pub fn counting_function(eigenvalues: &[f64], e: f64) -> usize {
    eigenvalues.partition_point(|&x| x <= e)
}

/// The two-band index set
/// `([τN, N/2 − N^{1−ζ/17}] ∪ [N/2 + N^{1−ζ/17}, (1−τ)N]) ∩ ℕ`
/// with `ζ = min{1/2 − β, β}`. Indices are 1-based. At desk-scale `N`
/// the central gap `N^{1−ζ/17}` is typically wider than `N/2`, so the
/// set is often empty; this is flagged, not an error.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexSet {
    pub n: usize,
    pub tau: f64,
    pub beta: f64,
    pub zeta: f64,
    /// Central half-gap `N^{1−ζ/17}`.
    pub gap: f64,
    /// 1-based indices, ascending.
    pub indices: Vec<usize>,
}

impl IndexSet {
    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

pub fn index_set(n: usize, tau: f64, beta: f64) -> Result<IndexSet, SpectraError> {
    if !(tau > 0.0 && tau < 0.5) {
        return Err(SpectraError::TauRange(tau));
    }
    let exps = crate::ensemble::exponents(beta, 0.0).map_err(|_| SpectraError::TauRange(beta))?;
    let zeta = exps.zeta;
    let nf = n as f64;
    let gap = crate::fmath::powf(nf, 1.0 - zeta / 17.0);
    let half = nf / 2.0;
    let mut indices = Vec::new();
    push_band(&mut indices, tau * nf, half - gap, n);
    push_band(&mut indices, half + gap, (1.0 - tau) * nf, n);
    Ok(IndexSet { n, tau, beta, zeta, gap, indices })
}

fn push_band(out: &mut Vec<usize>, lo: f64, hi: f64, n: usize) {
    if hi < lo {
        return;
    }
    let start = libm::ceil(lo).max(1.0) as usize;
    let end = libm::floor(hi).min(n as f64) as usize;
    for i in start..=end.min(n) {
        if i >= 1 {
            out.push(i);
        }
    }
}

/// Per-replica normalized fluctuations for a set of eigenvalue indices.
#[derive(Debug, Clone)]
pub struct FluctuationSeries {
    /// 1-based indices.
    pub indices: Vec<usize>,
    /// Semicircle quantiles `γ_i` for each index.
    pub gamma: Vec<f64>,
    /// Across-replica mean of `λ_i` (the expectation estimate).
    pub mean_lambda: Vec<f64>,
    /// `x[r][j] = X_{indices[j]}` in replica `r`.
    pub x: Vec<Vec<f64>>,
}

impl FluctuationSeries {
    /// Series of `X_i` across replicas for band `j`.
    pub fn band(&self, j: usize) -> Vec<f64> {
        self.x.iter().map(|row| row[j]).collect()
    }
}

/// `X_i = (λ_i − mean λ_i)/(γ_i √(m4/2))` per replica, with the
/// expectation replaced by the across-replica mean.
pub fn fluctuation_series(
    spectra: &[SpectralData],
    indices: &[usize],
    m4: f64,
) -> Result<FluctuationSeries, SpectraError> {
    let m = spectra.len();
    if m < 2 {
        return Err(SpectraError::InsufficientReplicas(m));
    }
    let n = spectra[0].n();
    let mut gamma = Vec::with_capacity(indices.len());
    for &i in indices {
        if i < 1 || i > n {
            return Err(SpectraError::BadIndex { index: i, n });
        }
        let g = semicircle::quantile(i, n).map_err(|_| SpectraError::BadIndex { index: i, n })?;
        if g == 0.0 {
            return Err(SpectraError::BadIndex { index: i, n });
        }
        gamma.push(g);
    }
    let mean_lambda = mean_at_indices(spectra, indices)?;
    let scale: Vec<f64> =
        gamma.iter().map(|g| g * crate::fmath::sqrt(0.5 * m4)).collect();
    let x = spectra
        .iter()
        .map(|s| {
            indices
                .iter()
                .enumerate()
                .map(|(j, &i)| (s.eigenvalues[i - 1] - mean_lambda[j]) / scale[j])
                .collect()
        })
        .collect();
    Ok(FluctuationSeries { indices: indices.to_vec(), gamma, mean_lambda, x })
}

/// Residuals `r_i = (λ_i − mean λ_i) − (γ_i/2)(H̄² − 1)` per replica and
/// index, with per-index standard deviations of the residual and of the
/// centered eigenvalue.
#[derive(Debug, Clone)]
pub struct ShiftResidualSeries {
    pub indices: Vec<usize>,
    pub gamma: Vec<f64>,
    /// `residuals[r][j]`.
    pub residuals: Vec<Vec<f64>>,
    pub residual_std: Vec<f64>,
    pub centered_std: Vec<f64>,
}

pub fn eigenvalue_shift_residual(
    spectra: &[SpectralData],
    indices: &[usize],
    h2_values: &[f64],
) -> Result<ShiftResidualSeries, SpectraError> {
    let m = spectra.len();
    if m < 2 {
        return Err(SpectraError::InsufficientReplicas(m));
    }
    if h2_values.len() != m {
        return Err(SpectraError::LengthMismatch);
    }
    let n = spectra[0].n();
    let mut gamma = Vec::with_capacity(indices.len());
    for &i in indices {
        if i < 1 || i > n {
            return Err(SpectraError::BadIndex { index: i, n });
        }
        gamma.push(semicircle::quantile(i, n).map_err(|_| SpectraError::BadIndex { index: i, n })?);
    }
    let mean_lambda = mean_at_indices(spectra, indices)?;
    let mut residuals = Vec::with_capacity(m);
    for (s, &h2) in spectra.iter().zip(h2_values) {
        let row: Vec<f64> = indices
            .iter()
            .enumerate()
            .map(|(j, &i)| (s.eigenvalues[i - 1] - mean_lambda[j]) - 0.5 * gamma[j] * h2)
            .collect();
        residuals.push(row);
    }
    let residual_std = column_std(&residuals);
    let centered: Vec<Vec<f64>> = spectra
        .iter()
        .map(|s| {
            indices
                .iter()
                .enumerate()
                .map(|(j, &i)| s.eigenvalues[i - 1] - mean_lambda[j])
                .collect()
        })
        .collect();
    let centered_std = column_std(&centered);
    Ok(ShiftResidualSeries { indices: indices.to_vec(), gamma, residuals, residual_std, centered_std })
}

fn mean_at_indices(spectra: &[SpectralData], indices: &[usize]) -> Result<Vec<f64>, SpectraError> {
    let n = spectra[0].n();
    let mut mean = alloc::vec![0.0; indices.len()];
    for s in spectra {
        if s.n() != n {
            return Err(SpectraError::LengthMismatch);
        }
        for (j, &i) in indices.iter().enumerate() {
            mean[j] += s.eigenvalues[i - 1];
        }
    }
    for v in mean.iter_mut() {
        *v /= spectra.len() as f64;
    }
    Ok(mean)
}

fn column_std(rows: &[Vec<f64>]) -> Vec<f64> {
    let m = rows.len();
    let k = rows.first().map_or(0, Vec::len);
    let mut out = Vec::with_capacity(k);
    for j in 0..k {
        let mean: f64 = rows.iter().map(|r| r[j]).sum::<f64>() / m as f64;
        let var: f64 =
            rows.iter().map(|r| (r[j] - mean) * (r[j] - mean)).sum::<f64>() / (m as f64 - 1.0);
        out.push(crate::fmath::sqrt(var.max(0.0)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::{self, EnsembleSpec};

    #[test]
    fn counting_function_examples() {
        let eigs = [-1.0, 0.0, 1.0];
        assert_eq!(counting_function(&eigs, 0.5), 2);
        assert_eq!(counting_function(&eigs, -2.0), 0);
        assert_eq!(counting_function(&eigs, 1.0), 3); // inclusive at λ_k
        assert_eq!(counting_function(&eigs, 10.0), 3);
    }

    #[test]
    fn index_set_desk_scale_is_empty() {
        // ζ = 0.2 makes the gap N^{1−ζ/17} ≈ N^{0.988} wider than N/2.
        let s = index_set(1000, 0.2, 0.2).unwrap();
        assert!(s.is_empty());
        assert!(s.gap > 500.0);
        // degenerate: τN > N/2
        let s = index_set(100, 0.49, 0.2).unwrap();
        assert!(s.is_empty());
        // a small-gap check with an artificial tiny N is still centered away
        for n in [10usize, 50, 101] {
            let s = index_set(n, 0.05, 0.25).unwrap();
            for &i in &s.indices {
                let g = semicircle::quantile(i, n).unwrap();
                assert!(g != 0.0);
            }
        }
        assert!(index_set(100, 0.7, 0.2).is_err());
    }

    #[test]
    fn fluctuations_vanish_for_identical_replicas() {
        let spec = EnsembleSpec::signed_bernoulli(24, 0.3, 0.0).unwrap();
        let s = ensemble::sample(&spec, 5).unwrap();
        let sd = eigen_decompose(&s.a, false).unwrap();
        let spectra = [sd.clone(), sd];
        let fs = fluctuation_series(&spectra, &[6, 18], 1e-4).unwrap();
        for row in &fs.x {
            for v in row {
                assert_eq!(*v, 0.0);
            }
        }
        assert!(fluctuation_series(&spectra[..1], &[6], 1e-4).is_err());
    }

    #[test]
    fn shift_residual_reduces_to_centered_when_h2_zero() {
        let spec = EnsembleSpec::signed_bernoulli(24, 0.3, 0.0).unwrap();
        let s1 = ensemble::sample(&spec, 1).unwrap();
        let s2 = ensemble::sample(&spec, 2).unwrap();
        let spectra = [
            eigen_decompose(&s1.a, false).unwrap(),
            eigen_decompose(&s2.a, false).unwrap(),
        ];
        let idx = [6usize, 18];
        let r = eigenvalue_shift_residual(&spectra, &idx, &[0.0, 0.0]).unwrap();
        let mean6 = 0.5 * (spectra[0].eigenvalues[5] + spectra[1].eigenvalues[5]);
        assert!((r.residuals[0][0] - (spectra[0].eigenvalues[5] - mean6)).abs() < 1e-15);
        assert_eq!(r.residual_std.len(), 2);
        for (a, b) in r.residual_std.iter().zip(r.centered_std.iter()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn interlacing_of_shifted_and_centered_counting() {
        // A = H + (f/N)·ones is a rank-one nonnegative perturbation:
        // counting functions differ by at most 1 everywhere.
        let spec = EnsembleSpec::erdos_renyi(120, 0.3).unwrap();
        let s = ensemble::sample(&spec, 11).unwrap();
        let ea = eigen_decompose(&s.a, false).unwrap();
        let eh = eigen_decompose(&s.h, false).unwrap();
        let mut e = -3.0;
        while e <= 3.0 {
            let ca = counting_function(&ea.eigenvalues, e) as i64;
            let ch = counting_function(&eh.eigenvalues, e) as i64;
            assert!(ch - 1 <= ca && ca <= ch, "counts {ca} vs {ch} at E={e}");
            e += 0.11;
        }
    }

    #[test]
    fn spectrum_matches_sample_trace_identities() {
        let spec = EnsembleSpec::erdos_renyi(64, 0.3).unwrap();
        let s = ensemble::sample(&spec, 3).unwrap();
        let sd = eigen_decompose(&s.h, false).unwrap();
        let sum: f64 = sd.eigenvalues.iter().sum();
        let tol = 1e-8 * 64.0 * s.h.max_abs().max(1.0);
        assert!((sum - s.h.trace()).abs() <= tol);
        let sum_sq: f64 = sd.eigenvalues.iter().map(|v| v * v).sum();
        assert!((sum_sq - s.h.frobenius_sq()).abs() <= tol);
    }
}
