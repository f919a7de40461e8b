//! Thin wrappers over `libm` for the float functions used in this crate.
//!
//! Routing every transcendental through `libm` (instead of the std
//! intrinsics) keeps results identical between std and `no_std` builds
//! and across platforms.

use num_complex::Complex64;

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn hypot(x: f64, y: f64) -> f64 {
    libm::hypot(x, y)
}

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub fn powi(x: f64, mut k: u32) -> f64 {
    let mut base = x;
    let mut acc = 1.0;
    while k > 0 {
        if k & 1 == 1 {
            acc *= base;
        }
        base *= base;
        k >>= 1;
    }
    acc
}

#[inline]
pub fn asin(x: f64) -> f64 {
    libm::asin(x)
}

#[inline]
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

#[inline]
pub fn copysign(x: f64, y: f64) -> f64 {
    libm::copysign(x, y)
}

#[inline]
pub fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

/// Principal branch of the complex square root (cut on the negative real
/// axis), built from real operations so the branch behaviour does not
/// depend on a library's complex implementation.
pub fn complex_sqrt(w: Complex64) -> Complex64 {
    let r = hypot(w.re, w.im);
    if r == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let re = sqrt(0.5 * (r + w.re));
    let im_mag = sqrt(0.5 * (r - w.re));
    let im = if w.im < 0.0 { -im_mag } else { im_mag };
    Complex64::new(re, im)
}
