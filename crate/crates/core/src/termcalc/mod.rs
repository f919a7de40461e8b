//! Formal calculus for Green-function monomials.
//!
//! Parses a concrete syntax for the abstract monomials (classes `U`,
//! `V`, `W`), computes their ν-maps and the domination exponents
//! `b₀`, `b₁`, `b₂` as exact affine forms in `(1, α, β, n)`, builds the
//! structured bound expressions of the estimate lemmas, and checks the
//! recursion-contraction inequality that terminates the expansion
//! hierarchy.
//!
//! ```
//! use srmlab_core::termcalc::{parse, profile, Class};
//!
//! let m = parse("N^{-2} C4 [G]^{n-1} [Gs]^{n-1} Gs^{2}_(i,i) Gs_(j,j) G_(i,i) G_(j,j)")
//!     .unwrap();
//! let p = profile(&m);
//! assert_eq!(p.class, Class::V);
//! assert_eq!(p.nu0, 2);
//! ```

mod affine;
mod ast;
mod bound;
mod parser;
mod profile;
mod recursion;

pub use affine::{AffineForm, Rational};
pub use ast::{CenteredEntry, Factor, FormalMonomial, MatrixTag};
pub use bound::{bound, bound_of_profile, BoundExpr, BoundTerm, EvalParams, Extra, KSum, Lemma};
pub use parser::{parse, ParseError};
pub use profile::{classify, profile, Class, ExponentProfile};
pub use recursion::{recursion_step, ContractionRecord};

use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum TermError {
    Parse(ParseError),
    /// Lemma applied outside its class.
    LemmaClass { lemma: Lemma, class: Class },
    /// Lemma 4.3 requires `ν₂ ≥ 1`.
    Nu2Required,
    /// Parent and child profiles from different class families.
    ClassMix,
    /// Child `ν₄` exceeds the parent's (or has a different n-dependence).
    Nu4Monotonicity,
    /// Child `ν₃` below the parent's.
    Nu3Monotonicity,
    /// The `W`-class ratio is defined only for equal `ν₄`.
    WNu4Restriction,
    /// The gain still depends on the symbolic order `n`.
    GainDependsOnN,
    /// Numeric evaluation of an `n`-dependent form without binding `n`.
    UnboundN,
    /// The `k`-sum limit `ν₄` did not evaluate to a nonnegative integer.
    BadNu4,
}

impl fmt::Display for TermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermError::Parse(e) => write!(f, "{e}"),
            TermError::LemmaClass { lemma, class } => {
                write!(f, "lemma {} does not apply to class {}", lemma.name(), class.name())
            }
            TermError::Nu2Required => write!(f, "lemma L4.3 requires nu2 >= 1"),
            TermError::ClassMix => write!(f, "parent and child must be in the same class family"),
            TermError::Nu4Monotonicity => {
                write!(f, "hierarchy children must satisfy nu4(child) <= nu4(parent)")
            }
            TermError::Nu3Monotonicity => {
                write!(f, "hierarchy children must satisfy nu3(child) >= nu3(parent)")
            }
            TermError::WNu4Restriction => {
                write!(f, "the W-class ratio is defined only for nu4(child) = nu4(parent)")
            }
            TermError::GainDependsOnN => write!(f, "contraction gain depends on the symbolic n"),
            TermError::UnboundN => write!(f, "bind the symbolic order n before evaluating"),
            TermError::BadNu4 => write!(f, "nu4 must evaluate to a nonnegative integer"),
        }
    }
}

impl core::error::Error for TermError {}

impl From<ParseError> for TermError {
    fn from(e: ParseError) -> Self {
        TermError::Parse(e)
    }
}
