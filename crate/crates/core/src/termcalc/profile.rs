//! Class tags, ν-maps, and domination exponents.
//!
//! For a monomial `U` with `ν₀` free indices and prefactor `N^{−ν₁}`:
//!
//! * `ν₂` — sum of `m − 1` over the matrix powers `(Y^m)_{xy}`;
//! * `ν₃` — `2 ∧ #{off-diagonal entries}` (uncapped count kept too),
//!   with `ν̃₃ = 2 − ν₃`;
//! * `ν₄` — number of bracket factors `[Y]` (affine in the order `n`);
//! * `b₀ = ν₀ − ν₁ + α·ν₂ + (α/2 − 1/2)·ν₃`,
//!   `b₁ = ν₀ − ν₁ + (α/2 − 1/2)·ν₃`,
//!   `b₂ = ν₀ − ν₁ + α·ν₂ − 1`.
//!
//! Each cumulant token `Ck` contributes `1 + (k−2)β` to `ν₁`.

use super::affine::{AffineForm, Rational};
use super::ast::{Factor, FormalMonomial};

/// Monomial class. `V` is the subset of `U` with all matrix powers in
/// `{1, 2}`; `W` carries exactly one centered product of first-power
/// entries (plus brackets and at most first-power entries outside).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Class {
    U,
    V,
    W,
}

impl Class {
    pub fn name(&self) -> &'static str {
        match self {
            Class::U => "U",
            Class::V => "V",
            Class::W => "W",
        }
    }
}

/// Classify a parsed monomial. `V` implies membership in `U`.
pub fn classify(m: &FormalMonomial) -> Class {
    if m.has_centered() {
        return Class::W;
    }
    let all_low = m.factors.iter().all(|f| match f {
        Factor::Power { power, .. } => *power <= 2,
        _ => true,
    });
    if all_low {
        Class::V
    } else {
        Class::U
    }
}

/// ν-maps and the three domination exponents as exact affine forms.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentProfile {
    pub class: Class,
    pub nu0: u32,
    /// Affine in β.
    pub nu1: AffineForm,
    pub nu2: u32,
    /// Capped at 2 (the convention used by the exponent formulas).
    pub nu3: u32,
    /// The raw off-diagonal count, kept for diagnostics.
    pub nu3_uncapped: u32,
    pub nu3_tilde: u32,
    /// Affine in n.
    pub nu4: AffineForm,
    pub b0: AffineForm,
    pub b1: AffineForm,
    pub b2: AffineForm,
}

pub fn profile(m: &FormalMonomial) -> ExponentProfile {
    let class = classify(m);
    let nu0 = m.indices.len() as u32;

    let mut nu1 = AffineForm::constant(-m.prefactor_exponent);
    for &k in &m.cumulants {
        nu1 = nu1 + AffineForm::int(1) + AffineForm::beta().scale(Rational::int(k as i64 - 2));
    }

    let mut nu2: u32 = 0;
    let mut off_diag: u32 = 0;
    let mut nu4 = AffineForm::ZERO;
    for f in &m.factors {
        match f {
            Factor::Power { power, x, y, .. } => {
                nu2 += power - 1;
                if x != y {
                    off_diag += 1;
                }
            }
            Factor::Bracket { power, .. } => {
                nu4 = nu4 + *power;
            }
            Factor::Centered(entries) => {
                for e in entries {
                    if e.x != e.y {
                        off_diag += 1;
                    }
                }
            }
        }
    }
    let nu3 = off_diag.min(2);
    let nu3_tilde = 2 - nu3;

    let base = AffineForm::int(nu0 as i64) - nu1;
    let half_alpha_minus = (AffineForm::alpha() - AffineForm::int(1)).scale(Rational::new(1, 2));
    let b0 = base
        + AffineForm::alpha().scale(Rational::int(nu2 as i64))
        + half_alpha_minus.scale(Rational::int(nu3 as i64));
    let b1 = base + half_alpha_minus.scale(Rational::int(nu3 as i64));
    let b2 = base + AffineForm::alpha().scale(Rational::int(nu2 as i64)) - AffineForm::int(1);

    ExponentProfile {
        class,
        nu0,
        nu1,
        nu2,
        nu3,
        nu3_uncapped: off_diag,
        nu3_tilde,
        nu4,
        b0,
        b1,
        b2,
    }
}
