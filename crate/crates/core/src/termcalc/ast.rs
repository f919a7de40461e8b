//! Formal Green-function monomials.
//!
//! A monomial is a coefficient `a·N^{e}` (with optional cumulant factors
//! `Ck`, each contributing `N^{-1-(k-2)β}` to the prefactor), a product
//! of matrix-power entries `(Y^m)_{xy}`, bracket factors `[Y]^p`, and at
//! most one centered product `⟨Y_{x1 y1} ⋯ Y_{xk yk}⟩` of first-power
//! entries. `Y` ranges over `G` and its adjoint (written `Gs`).

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::affine::{AffineForm, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixTag {
    G,
    GStar,
}

impl MatrixTag {
    pub fn token(&self) -> &'static str {
        match self {
            MatrixTag::G => "G",
            MatrixTag::GStar => "Gs",
        }
    }
}

/// One first-power entry `Y_{xy}` inside a centered product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenteredEntry {
    pub tag: MatrixTag,
    pub x: String,
    pub y: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    /// `(Y^m)_{xy}`, a matrix power evaluated at an index pair.
    Power { tag: MatrixTag, power: u32, x: String, y: String },
    /// `[Y]^p` with a possibly `n`-dependent power.
    Bracket { tag: MatrixTag, power: AffineForm },
    /// `⟨Y⁽¹⁾_{x1y1} ⋯ Y⁽ᵏ⁾_{xkyk}⟩`.
    Centered(Vec<CenteredEntry>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalMonomial {
    /// Exponent `e` of the explicit prefactor `N^{e}` (as written, so
    /// `N^{-2}` stores `-2`).
    pub prefactor_exponent: Rational,
    /// Orders of the cumulant tokens, sorted ascending.
    pub cumulants: Vec<u32>,
    pub factors: Vec<Factor>,
    /// Distinct free indices in order of first appearance.
    pub indices: Vec<String>,
}

impl FormalMonomial {
    pub fn centered(&self) -> Option<&Vec<CenteredEntry>> {
        self.factors.iter().find_map(|f| match f {
            Factor::Centered(entries) => Some(entries),
            _ => None,
        })
    }

    pub fn has_centered(&self) -> bool {
        self.centered().is_some()
    }
}

impl fmt::Display for FormalMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            Ok(())
        };
        if !self.prefactor_exponent.is_zero() {
            sep(f)?;
            write!(f, "N^{{{}}}", self.prefactor_exponent)?;
        }
        for k in &self.cumulants {
            sep(f)?;
            write!(f, "C{k}")?;
        }
        for factor in &self.factors {
            sep(f)?;
            match factor {
                Factor::Power { tag, power, x, y } => {
                    if *power == 1 {
                        write!(f, "{}_({x},{y})", tag.token())?;
                    } else {
                        write!(f, "{}^{{{power}}}_({x},{y})", tag.token())?;
                    }
                }
                Factor::Bracket { tag, power } => {
                    if *power == AffineForm::int(1) {
                        write!(f, "[{}]", tag.token())?;
                    } else {
                        write!(f, "[{}]^{{{power}}}", tag.token())?;
                    }
                }
                Factor::Centered(entries) => {
                    write!(f, "<")?;
                    for (i, e) in entries.iter().enumerate() {
                        if i > 0 {
                            write!(f, " ")?;
                        }
                        write!(f, "{}_({},{})", e.tag.token(), e.x, e.y)?;
                    }
                    write!(f, ">")?;
                }
            }
        }
        if first {
            // empty product: bare coefficient N^{0}
            write!(f, "N^{{0}}")?;
        }
        Ok(())
    }
}
