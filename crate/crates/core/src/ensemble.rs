//! Sparse ensembles: specification, seeded sampling, exact entry moments.
//!
//! A spec fixes the dimension `N`, the sparsity exponent `β ∈ (0, 1/2)`
//! (so `q = N^β` and, for the Erdős–Rényi law, `p = q²/N`), the entry
//! law, and the rank-one shift. `H` is the centered matrix with
//! `E H_ij = 0`, `E H_ij² = 1/N`, and `E|H_ij|^k ≍ 1/(N q^{k−2})`;
//! `A = H + (f/N)·ones`.
//!
//! Sampling is a pure function of `(spec, seed)`: each entry value is
//! keyed by `(seed, i, j)` through a counter-based generator, so the
//! result is bit-identical regardless of sampling order or parallelism.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::fmath;
use crate::matrix::Mat;
use crate::rng::{entry_counter, keyed_uniform};

/// Entry law of the centered matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntryLaw {
    /// `H_ij = (B_ij − p)/√(p(1−p)N)` with `B_ij ~ Bernoulli(p)`, `p = q²/N`.
    ErdosRenyi,
    /// `H_ij = ±1/q` with probability `q²/(2N)` each, `0` otherwise.
    SignedBernoulli,
}

impl EntryLaw {
    pub fn name(&self) -> &'static str {
        match self {
            EntryLaw::ErdosRenyi => "erdos-renyi",
            EntryLaw::SignedBernoulli => "signed-bernoulli",
        }
    }
}

/// Rank-one shift `f ≥ 0` in `A = H + f·(ones)/N`.
///
/// For the Erdős–Rényi law the shift is pinned to the centering value
/// `f = √(Np/(1−p))`, which makes `E H_ij = 0` exact. For the signed
/// Bernoulli law (already centered) any fixed `f ≥ 0` is allowed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShiftMode {
    /// `f = √(Np/(1−p))` for Erdős–Rényi; `f = 0` for the signed law.
    Centering,
    /// Explicit `f ≥ 0` (signed Bernoulli only).
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleSpec {
    pub n: usize,
    pub beta: f64,
    pub law: EntryLaw,
    pub shift: ShiftMode,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EnsembleError {
    Dimension(usize),
    Beta(f64),
    Probability(f64),
    NegativeShift(f64),
    FixedShiftForErdosRenyi,
    AlphaRange(f64),
}

impl fmt::Display for EnsembleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnsembleError::Dimension(n) => write!(f, "matrix dimension {n} must be at least 2"),
            EnsembleError::Beta(b) => write!(f, "beta {b} outside (0, 1/2)"),
            EnsembleError::Probability(p) => write!(f, "edge probability {p} outside (0, 1)"),
            EnsembleError::NegativeShift(v) => write!(f, "rank-one shift {v} must be >= 0"),
            EnsembleError::FixedShiftForErdosRenyi => {
                write!(f, "the Erdos-Renyi construction pins f to the centering value")
            }
            EnsembleError::AlphaRange(a) => write!(f, "alpha {a} outside [0, 1]"),
        }
    }
}

impl core::error::Error for EnsembleError {}

impl EnsembleSpec {
    pub fn erdos_renyi(n: usize, beta: f64) -> Result<Self, EnsembleError> {
        let spec = EnsembleSpec { n, beta, law: EntryLaw::ErdosRenyi, shift: ShiftMode::Centering };
        spec.validate()?;
        Ok(spec)
    }

    pub fn signed_bernoulli(n: usize, beta: f64, f: f64) -> Result<Self, EnsembleError> {
        let shift = if f == 0.0 { ShiftMode::Centering } else { ShiftMode::Fixed(f) };
        let spec = EnsembleSpec { n, beta, law: EntryLaw::SignedBernoulli, shift };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), EnsembleError> {
        if self.n < 2 {
            return Err(EnsembleError::Dimension(self.n));
        }
        if !(self.beta > 0.0 && self.beta < 0.5) {
            return Err(EnsembleError::Beta(self.beta));
        }
        match (self.law, self.shift) {
            (EntryLaw::ErdosRenyi, ShiftMode::Centering) => {
                let p = self.p();
                if !(p > 0.0 && p < 1.0) {
                    return Err(EnsembleError::Probability(p));
                }
            }
            (EntryLaw::ErdosRenyi, ShiftMode::Fixed(_)) => {
                return Err(EnsembleError::FixedShiftForErdosRenyi)
            }
            (EntryLaw::SignedBernoulli, ShiftMode::Centering) => {}
            (EntryLaw::SignedBernoulli, ShiftMode::Fixed(f)) => {
                if !(f >= 0.0) {
                    return Err(EnsembleError::NegativeShift(f));
                }
            }
        }
        Ok(())
    }

    /// `q = N^β`.
    pub fn q(&self) -> f64 {
        fmath::powf(self.n as f64, self.beta)
    }

    /// `p = q²/N = N^{2β−1}` (Erdős–Rényi edge probability).
    pub fn p(&self) -> f64 {
        fmath::powf(self.n as f64, 2.0 * self.beta - 1.0)
    }

    /// The shift magnitude `f` in `A = H + f·(ones)/N`.
    pub fn shift_f(&self) -> f64 {
        match (self.law, self.shift) {
            (EntryLaw::ErdosRenyi, _) => {
                let p = self.p();
                fmath::sqrt(self.n as f64 * p / (1.0 - p))
            }
            (EntryLaw::SignedBernoulli, ShiftMode::Centering) => 0.0,
            (EntryLaw::SignedBernoulli, ShiftMode::Fixed(f)) => f,
        }
    }

    /// `f/N`, the constant added to every entry of `H` to form `A`.
    ///
    /// For Erdős–Rényi this is computed as `p/√(p(1−p)N)` — the exact same
    /// expression (and rounding) used by [`sample`], so `A − H` equals this
    /// value to the bit.
    pub fn shift_per_entry(&self) -> f64 {
        match self.law {
            EntryLaw::ErdosRenyi => {
                let p = self.p();
                p / fmath::sqrt(p * (1.0 - p) * self.n as f64)
            }
            EntryLaw::SignedBernoulli => self.shift_f() / self.n as f64,
        }
    }
}

/// One realization of the ensemble: centered `H`, shifted `A`, and the
/// seed it was drawn from.
#[derive(Debug, Clone)]
pub struct MatrixSample {
    pub spec: EnsembleSpec,
    pub seed: u64,
    pub h: Mat,
    pub a: Mat,
}

/// Draw one sample. Bit-identical output for identical `(spec, seed)`.
pub fn sample(spec: &EnsembleSpec, seed: u64) -> Result<MatrixSample, EnsembleError> {
    spec.validate()?;
    let n = spec.n;
    let mut h = Mat::zeros(n);
    let mut a = Mat::zeros(n);
    let shift = spec.shift_per_entry();
    match spec.law {
        EntryLaw::ErdosRenyi => {
            let p = spec.p();
            let c = 1.0 / fmath::sqrt(p * (1.0 - p) * n as f64);
            for i in 0..n {
                for j in i..n {
                    let u = keyed_uniform(seed, entry_counter(i, j));
                    let a_ij = if u < p { c } else { 0.0 };
                    a.set_sym(i, j, a_ij);
                    h.set_sym(i, j, a_ij - shift);
                }
            }
        }
        EntryLaw::SignedBernoulli => {
            let q = spec.q();
            let thr = q * q / (2.0 * n as f64);
            let v = 1.0 / q;
            for i in 0..n {
                for j in i..n {
                    let u = keyed_uniform(seed, entry_counter(i, j));
                    let h_ij = if u < thr {
                        v
                    } else if u < 2.0 * thr {
                        -v
                    } else {
                        0.0
                    };
                    h.set_sym(i, j, h_ij);
                    a.set_sym(i, j, h_ij + shift);
                }
            }
        }
    }
    Ok(MatrixSample { spec: *spec, seed, h, a })
}

/// Exact moments and cumulants of the off-diagonal entry law.
///
/// Diagonal entries are drawn from the same law, so these apply to every
/// entry.
#[derive(Debug, Clone)]
pub struct EntryLawMoments {
    /// `E H_12^2` (exactly `1/N` for both laws).
    pub m2: f64,
    /// `E H_12^4`.
    pub m4: f64,
    /// Raw moments `E H_12^k`, index `k = 0..=max_order`.
    pub raw: Vec<f64>,
    /// Absolute moments `E |H_12|^k`, index `k = 0..=max_order`.
    pub abs_moments: Vec<f64>,
    /// Cumulants `C_k(H_12)`, index `k = 0..=max_order` (`C_0 = 0` by convention).
    pub cumulants: Vec<f64>,
}

/// Closed-form entry moments up to `max_order` (must be >= 2); cumulants
/// come from the moment–cumulant recursion
/// `C_n = mu_n − Σ_{k=1}^{n−1} C(n−1, k−1) C_k mu_{n−k}`.
pub fn entry_moments(spec: &EnsembleSpec, max_order: usize) -> EntryLawMoments {
    assert!(max_order >= 2, "entry_moments requires max_order >= 2");
    let n = spec.n as f64;
    let mut raw = vec![0.0; max_order + 1];
    let mut abs_moments = vec![0.0; max_order + 1];
    raw[0] = 1.0;
    abs_moments[0] = 1.0;
    match spec.law {
        EntryLaw::ErdosRenyi => {
            let p = spec.p();
            let c = 1.0 / fmath::sqrt(p * (1.0 - p) * n);
            for k in 1..=max_order {
                let ck = fmath::powi(c, k as u32);
                let one_m_p_k = fmath::powi(1.0 - p, k as u32);
                let p_k = fmath::powi(p, k as u32);
                // E (B − p)^k = p (1−p)^k + (1−p)(−p)^k
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                raw[k] = ck * (p * one_m_p_k + sign * (1.0 - p) * p_k);
                abs_moments[k] = ck * (p * one_m_p_k + (1.0 - p) * p_k);
            }
        }
        EntryLaw::SignedBernoulli => {
            let q = spec.q();
            let mass = q * q / n; // total probability of a nonzero entry
            for k in 1..=max_order {
                let mag = mass * fmath::powi(1.0 / q, k as u32);
                abs_moments[k] = mag;
                raw[k] = if k % 2 == 0 { mag } else { 0.0 };
            }
        }
    }

    let mut cumulants = vec![0.0; max_order + 1];
    let binom = pascal(max_order);
    for k in 1..=max_order {
        let mut c = raw[k];
        for j in 1..k {
            c -= binom[k - 1][j - 1] * cumulants[j] * raw[k - j];
        }
        cumulants[k] = c;
    }

    EntryLawMoments { m2: raw[2], m4: raw[4.min(max_order)], raw, abs_moments, cumulants }
}

fn pascal(order: usize) -> Vec<Vec<f64>> {
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(order + 1);
    for r in 0..=order {
        let mut row = vec![1.0; r + 1];
        for c in 1..r {
            row[c] = rows[r - 1][c - 1] + rows[r - 1][c];
        }
        rows.push(row);
    }
    rows
}

/// The sparsity statistic `(1/N)·tr H² − 1 = (1/N)·Σ_ij H_ij² − 1`.
pub fn h2_statistic(sample: &MatrixSample) -> f64 {
    sample.h.frobenius_sq() / sample.h.n() as f64 - 1.0
}

/// The exponent triple driving the error terms of the moment estimates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponents {
    /// `ζ = min{1/2 − β, β}`.
    pub zeta: f64,
    /// `δ = min{β, 1/2 − β, (1 − α)/2}`.
    pub delta: f64,
    /// `ξ = (1/8)·min{α/2, δ}`.
    pub xi: f64,
}

pub fn exponents(beta: f64, alpha: f64) -> Result<Exponents, EnsembleError> {
    if !(beta > 0.0 && beta < 0.5) {
        return Err(EnsembleError::Beta(beta));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(EnsembleError::AlphaRange(alpha));
    }
    let zeta = (0.5 - beta).min(beta);
    let delta = beta.min(0.5 - beta).min((1.0 - alpha) / 2.0);
    let xi = 0.125 * (alpha / 2.0).min(delta);
    Ok(Exponents { zeta, delta, xi })
}
