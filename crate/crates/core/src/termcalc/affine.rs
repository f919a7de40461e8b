//! Exact affine forms over the basis `(1, α, β, n)` with rational
//! coefficients. Exponent bookkeeping stays exact so that form
//! comparisons never hinge on float rounding.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

/// Reduced rational with an always-positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn new(num: i64, den: i64) -> Rational {
        assert!(den != 0, "zero denominator");
        let mut n = num as i128;
        let mut d = den as i128;
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = gcd(n, d);
        Rational { num: (n / g) as i64, den: (d / g) as i64 }
    }

    pub fn int(v: i64) -> Rational {
        Rational { num: v, den: 1 }
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn as_integer(&self) -> Option<i64> {
        (self.den == 1).then_some(self.num)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    fn from_i128(num: i128, den: i128) -> Rational {
        let (mut n, mut d) = (num, den);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = gcd(n, d);
        let (n, d) = (n / g, d / g);
        assert!(
            n <= i64::MAX as i128 && n >= i64::MIN as i128 && d <= i64::MAX as i128,
            "rational overflow"
        );
        Rational { num: n as i64, den: d as i64 }
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, o: Rational) -> Rational {
        Rational::from_i128(
            self.num as i128 * o.den as i128 + o.num as i128 * self.den as i128,
            self.den as i128 * o.den as i128,
        )
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, o: Rational) -> Rational {
        self + (-o)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, o: Rational) -> Rational {
        Rational::from_i128(self.num as i128 * o.num as i128, self.den as i128 * o.den as i128)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational { num: -self.num, den: self.den }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// `c + c_alpha·α + c_beta·β + c_n·n` with rational coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AffineForm {
    pub c: Rational,
    pub alpha: Rational,
    pub beta: Rational,
    pub n: Rational,
}

impl AffineForm {
    pub const ZERO: AffineForm =
        AffineForm { c: Rational::ZERO, alpha: Rational::ZERO, beta: Rational::ZERO, n: Rational::ZERO };

    pub fn constant(c: Rational) -> AffineForm {
        AffineForm { c, ..AffineForm::ZERO }
    }

    pub fn int(v: i64) -> AffineForm {
        AffineForm::constant(Rational::int(v))
    }

    pub fn alpha() -> AffineForm {
        AffineForm { alpha: Rational::ONE, ..AffineForm::ZERO }
    }

    pub fn beta() -> AffineForm {
        AffineForm { beta: Rational::ONE, ..AffineForm::ZERO }
    }

    pub fn n_sym() -> AffineForm {
        AffineForm { n: Rational::ONE, ..AffineForm::ZERO }
    }

    pub fn scale(self, r: Rational) -> AffineForm {
        AffineForm { c: self.c * r, alpha: self.alpha * r, beta: self.beta * r, n: self.n * r }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero() && self.alpha.is_zero() && self.beta.is_zero() && self.n.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.alpha.is_zero() && self.beta.is_zero() && self.n.is_zero()
    }

    pub fn depends_on_n(&self) -> bool {
        !self.n.is_zero()
    }

    /// Substitute `n := value`, leaving `α, β` symbolic.
    pub fn bind_n(self, value: i64) -> AffineForm {
        AffineForm {
            c: self.c + self.n * Rational::int(value),
            alpha: self.alpha,
            beta: self.beta,
            n: Rational::ZERO,
        }
    }

    /// Substitute `β := value` numerically, leaving `α` symbolic as the
    /// pair `(constant, alpha-coefficient)`.
    pub fn bind_beta(self, beta: f64) -> (f64, f64) {
        debug_assert!(self.n.is_zero(), "bind n before beta");
        (self.c.to_f64() + self.beta.to_f64() * beta, self.alpha.to_f64())
    }

    /// Full numeric evaluation; `n_value` is required only when the form
    /// depends on `n`.
    pub fn eval(&self, alpha: f64, beta: f64, n_value: Option<f64>) -> Option<f64> {
        let n_part = if self.n.is_zero() {
            0.0
        } else {
            self.n.to_f64() * n_value?
        };
        Some(self.c.to_f64() + self.alpha.to_f64() * alpha + self.beta.to_f64() * beta + n_part)
    }
}

impl Add for AffineForm {
    type Output = AffineForm;
    fn add(self, o: AffineForm) -> AffineForm {
        AffineForm {
            c: self.c + o.c,
            alpha: self.alpha + o.alpha,
            beta: self.beta + o.beta,
            n: self.n + o.n,
        }
    }
}

impl Sub for AffineForm {
    type Output = AffineForm;
    fn sub(self, o: AffineForm) -> AffineForm {
        self + (-o)
    }
}

impl Neg for AffineForm {
    type Output = AffineForm;
    fn neg(self) -> AffineForm {
        AffineForm { c: -self.c, alpha: -self.alpha, beta: -self.beta, n: -self.n }
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        let mut write_term = |f: &mut fmt::Formatter<'_>,
                              coef: Rational,
                              sym: Option<&str>|
         -> fmt::Result {
            if coef.is_zero() {
                return Ok(());
            }
            let neg = coef < Rational::ZERO;
            let mag = if neg { -coef } else { coef };
            if wrote {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            } else if neg {
                write!(f, "-")?;
            }
            match sym {
                None => write!(f, "{mag}")?,
                Some(s) => {
                    if mag == Rational::ONE {
                        write!(f, "{s}")?;
                    } else {
                        write!(f, "{mag}*{s}")?;
                    }
                }
            }
            wrote = true;
            Ok(())
        };
        write_term(f, self.c, None)?;
        write_term(f, self.alpha, Some("alpha"))?;
        write_term(f, self.beta, Some("beta"))?;
        write_term(f, self.n, Some("n"))?;
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}
