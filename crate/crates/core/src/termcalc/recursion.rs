//! Contraction check for the recursive expansion hierarchy.
//!
//! For a parent monomial `V` and one of its expansion children `V⁽¹⁾`
//! the summed-estimate ratio `I` satisfies
//!
//! ```text
//! I(V⁽¹⁾) ≤ I(V) · (Nη)^{(ν̃₃(V⁽¹⁾) − ν̃₃(V))/2} · N^{−β},
//! ```
//!
//! i.e. every expansion step gains at least `N^{−β}` after the `(Nη)`
//! adjustment. With `I(child)/I(parent) = N^{Δb₀}·(Nη)^{−Δν₄}` and
//! `Nη = N^{1−α}` the check is pure affine-exponent arithmetic. Since
//! `I(V) = N`, a gain of `g` per step absorbs the initial factor after
//! `⌈1/g⌉` steps.
//!
//! For `W`-class profiles the ratio `I⁽¹⁾(W*) = N^{b₁(W*) − b₁(W) + 1}`
//! is defined only when `ν₄(W*) = ν₄(W)`; other inputs are rejected.

use super::affine::{AffineForm, Rational};
use super::profile::{Class, ExponentProfile};
use super::TermError;

/// Outcome of one parent→child contraction check.
#[derive(Debug, Clone, PartialEq)]
pub struct ContractionRecord {
    /// Exponent of `I(child)/I(parent)` (affine in α, β).
    pub ratio_exponent: AffineForm,
    /// Exponent of the claimed cap `(Nη)^{Δν̃₃/2}·N^{−β}` (affine, with β symbolic).
    pub claimed_exponent: AffineForm,
    /// Gain `g`: the step satisfies `ratio = (Nη)^{Δν̃₃/2}·N^{−g}`.
    pub gain: AffineForm,
    /// Gain evaluated at the endpoints `α ∈ {0, 1}` with β bound.
    pub gain_at_alpha0: f64,
    pub gain_at_alpha1: f64,
    /// Whether `g ≥ β` holds for all `α ∈ [0, 1]` at the bound β.
    pub satisfied: bool,
    /// `⌈1/min g⌉`: steps needed to absorb `I(V) = N`, when the gain is positive.
    pub steps_to_absorb: Option<u32>,
}

/// Check the contraction inequality for a parent/child profile pair at a
/// given `β`. Children must satisfy the hierarchy monotonicity
/// `ν₄(child) ≤ ν₄(parent)` and `ν₃(child) ≥ ν₃(parent)`.
pub fn recursion_step(
    parent: &ExponentProfile,
    child: &ExponentProfile,
    beta: f64,
) -> Result<ContractionRecord, TermError> {
    let w_parent = parent.class == Class::W;
    let w_child = child.class == Class::W;
    if w_parent != w_child {
        return Err(TermError::ClassMix);
    }

    let d_nu4 = child.nu4 - parent.nu4;
    if d_nu4.depends_on_n() {
        return Err(TermError::Nu4Monotonicity);
    }
    let d_nu4_c = d_nu4.c;

    let ratio_exponent = if w_parent {
        if !d_nu4.is_zero() {
            return Err(TermError::WNu4Restriction);
        }
        child.b1 - parent.b1
    } else {
        if d_nu4_c > Rational::ZERO {
            return Err(TermError::Nu4Monotonicity);
        }
        if child.nu3 < parent.nu3 {
            return Err(TermError::Nu3Monotonicity);
        }
        // I(child)/I(parent) = N^{Δb₀} (Nη)^{−Δν₄}, Nη = N^{1−α}
        let neta_exp = (AffineForm::int(1) - AffineForm::alpha()).scale(-d_nu4_c);
        (child.b0 - parent.b0) + neta_exp
    };

    let d_nu3_tilde = child.nu3_tilde as i64 - parent.nu3_tilde as i64;
    let neta_half = (AffineForm::int(1) - AffineForm::alpha()).scale(Rational::new(d_nu3_tilde, 2));
    let claimed_exponent = neta_half - AffineForm::beta();
    let gain = neta_half - ratio_exponent;
    if gain.depends_on_n() {
        return Err(TermError::GainDependsOnN);
    }

    let (g0, ga) = gain.bind_beta(beta);
    let gain_at_alpha0 = g0;
    let gain_at_alpha1 = g0 + ga;
    let min_gain = gain_at_alpha0.min(gain_at_alpha1);
    let satisfied = min_gain >= beta - 1e-12;
    let steps_to_absorb = if min_gain > 0.0 {
        Some(libm::ceil(1.0 / min_gain) as u32)
    } else {
        None
    };

    Ok(ContractionRecord {
        ratio_exponent,
        claimed_exponent,
        gain,
        gain_at_alpha0,
        gain_at_alpha1,
        satisfied,
        steps_to_absorb,
    })
}
