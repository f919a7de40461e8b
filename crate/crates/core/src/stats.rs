//! Streaming estimators and distributional checks.
//!
//! Welford accumulators (with a deterministic merge for per-worker
//! combination), Kolmogorov–Smirnov distance against the standard
//! normal, Pearson correlation matrices with flagged degenerate entries,
//! and circularity checks against the standard complex Gaussian.
//!
//! KS distances are used descriptively against fixed thresholds; the
//! underlying limit theorems are asymptotic in N, so calibrated p-values
//! would overstate what a desk-scale run can resolve.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::fmath;

#[derive(Debug, Clone, PartialEq)]
pub enum StatsError {
    EmptyInput,
    Insufficient { needed: usize, got: usize },
    LengthMismatch,
}

impl fmt::Display for StatsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatsError::EmptyInput => write!(f, "empty input series"),
            StatsError::Insufficient { needed, got } => {
                write!(f, "need at least {needed} samples, got {got}")
            }
            StatsError::LengthMismatch => write!(f, "series lengths differ"),
        }
    }
}

impl core::error::Error for StatsError {}

/// One-pass mean/variance accumulator (Welford update), exact for
/// constant streams and stable at desk-scale counts.
#[derive(Debug, Clone, Copy, Default)]
pub struct Accumulator {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Accumulator {
    pub fn new() -> Self {
        Accumulator::default()
    }

    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn count(&self) -> u64 {
        self.n
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Sample variance (ddof = 1); zero until two values arrive.
    pub fn variance(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            self.m2 / (self.n - 1) as f64
        }
    }

    /// Combine two accumulators; the result depends only on the two
    /// summaries, so a fold in fixed order is deterministic.
    pub fn merge(&self, other: &Accumulator) -> Accumulator {
        if other.n == 0 {
            return *self;
        }
        if self.n == 0 {
            return *other;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        let nf = n as f64;
        let mean = self.mean + delta * other.n as f64 / nf;
        let m2 = self.m2 + other.m2 + delta * delta * (self.n as f64) * (other.n as f64) / nf;
        Accumulator { n, mean, m2 }
    }

    pub fn accumulate<I: IntoIterator<Item = f64>>(stream: I) -> Accumulator {
        let mut acc = Accumulator::new();
        for x in stream {
            acc.push(x);
        }
        acc
    }
}

/// Standard normal CDF via `erfc`; `Φ(0) = 1/2` exactly.
pub fn phi(x: f64) -> f64 {
    0.5 * fmath::erfc(-x / core::f64::consts::SQRT_2)
}

/// Sup-distance between the empirical CDF of `samples` and `Φ`,
/// evaluated at the jump points of the sorted sample.
pub fn ks_normal(samples: &[f64]) -> Result<f64, StatsError> {
    if samples.is_empty() {
        return Err(StatsError::EmptyInput);
    }
    let mut sorted: Vec<f64> = samples.to_vec();
    sorted.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite samples"));
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = phi(x);
        let lo = i as f64 / n;
        let hi = (i + 1) as f64 / n;
        d = d.max((f - lo).abs()).max((f - hi).abs());
    }
    Ok(d)
}

/// Moments and KS distance of one real series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalityReport {
    pub n: usize,
    pub mean: f64,
    /// Sample variance (ddof = 1).
    pub variance: f64,
    pub skewness: f64,
    pub excess_kurtosis: f64,
    /// KS distance of the (standardized, unless `standardized`) series vs N(0,1).
    pub ks_distance: f64,
    /// Whether the inputs were taken as already standardized.
    pub standardized: bool,
}

pub fn normality_report(samples: &[f64], standardized: bool) -> Result<NormalityReport, StatsError> {
    let n = samples.len();
    if n < 2 {
        return Err(StatsError::Insufficient { needed: 2, got: n });
    }
    let mean = samples.iter().sum::<f64>() / n as f64;
    let mut m2 = 0.0;
    let mut m3 = 0.0;
    let mut m4 = 0.0;
    for &x in samples {
        let d = x - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n as f64;
    m3 /= n as f64;
    m4 /= n as f64;
    let variance = m2 * n as f64 / (n as f64 - 1.0);
    let (skewness, excess_kurtosis) = if m2 > 0.0 {
        (m3 / fmath::powf(m2, 1.5), m4 / (m2 * m2) - 3.0)
    } else {
        (0.0, 0.0)
    };
    let ks_distance = if standardized {
        ks_normal(samples)?
    } else if m2 > 0.0 {
        let sd = fmath::sqrt(m2);
        let std_samples: Vec<f64> = samples.iter().map(|&x| (x - mean) / sd).collect();
        ks_normal(&std_samples)?
    } else {
        ks_normal(samples)?
    };
    Ok(NormalityReport { n, mean, variance, skewness, excess_kurtosis, ks_distance, standardized })
}

/// Pearson correlation matrix; entries touching a zero-variance series
/// are flagged (`None`) rather than silently NaN.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    pub k: usize,
    entries: Vec<Option<f64>>,
}

impl CorrelationMatrix {
    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        self.entries[i * self.k + j]
    }

    pub fn flagged(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.k {
            for j in 0..self.k {
                if self.entries[i * self.k + j].is_none() {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Dense copy with flagged entries as 0 off-diagonal (for eigenvalue
    /// diagnostics).
    pub fn to_mat(&self) -> crate::matrix::Mat {
        let mut m = crate::matrix::Mat::zeros(self.k);
        for i in 0..self.k {
            for j in 0..self.k {
                m.set(i, j, self.entries[i * self.k + j].unwrap_or(if i == j { 1.0 } else { 0.0 }));
            }
        }
        m
    }
}

pub fn correlation_matrix(series: &[&[f64]]) -> Result<CorrelationMatrix, StatsError> {
    let k = series.len();
    if k == 0 {
        return Err(StatsError::EmptyInput);
    }
    let len = series[0].len();
    if len < 2 {
        return Err(StatsError::Insufficient { needed: 2, got: len });
    }
    if series.iter().any(|s| s.len() != len) {
        return Err(StatsError::LengthMismatch);
    }
    let means: Vec<f64> = series.iter().map(|s| s.iter().sum::<f64>() / len as f64).collect();
    let mut cov = alloc::vec![0.0f64; k * k];
    for a in 0..k {
        for b in a..k {
            let mut s = 0.0;
            for t in 0..len {
                s += (series[a][t] - means[a]) * (series[b][t] - means[b]);
            }
            cov[a * k + b] = s;
            cov[b * k + a] = s;
        }
    }
    let mut entries = alloc::vec![None; k * k];
    for a in 0..k {
        for b in 0..k {
            let va = cov[a * k + a];
            let vb = cov[b * k + b];
            if va > 0.0 && vb > 0.0 {
                entries[a * k + b] = Some(cov[a * k + b] / fmath::sqrt(va * vb));
            }
        }
    }
    Ok(CorrelationMatrix { k, entries })
}

/// Estimates for a putatively standard-complex-Gaussian series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexGaussianReport {
    pub n: usize,
    /// `E |Z|²` estimate (1 for the standard complex Gaussian).
    pub e_abs2: f64,
    /// `E Z²` estimate (0 for a circular law).
    pub e_z2: Complex64,
    /// KS of the real part against N(0, 1/2).
    pub ks_re: f64,
    /// KS of the imaginary part against N(0, 1/2).
    pub ks_im: f64,
}

pub fn complex_gaussian_report(samples: &[Complex64]) -> Result<ComplexGaussianReport, StatsError> {
    let n = samples.len();
    if n < 2 {
        return Err(StatsError::Insufficient { needed: 2, got: n });
    }
    let e_abs2 = samples.iter().map(|z| z.norm_sqr()).sum::<f64>() / n as f64;
    let e_z2 = samples.iter().map(|z| z * z).sum::<Complex64>() / n as f64;
    // N(0, 1/2) parts scale to N(0, 1) by √2
    let re: Vec<f64> = samples.iter().map(|z| z.re * core::f64::consts::SQRT_2).collect();
    let im: Vec<f64> = samples.iter().map(|z| z.im * core::f64::consts::SQRT_2).collect();
    Ok(ComplexGaussianReport {
        n,
        e_abs2,
        e_z2,
        ks_re: ks_normal(&re)?,
        ks_im: ks_normal(&im)?,
    })
}
