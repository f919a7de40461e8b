//! Numerical laboratory for sparse random symmetric matrices.
//!
//! The crate provides the building blocks for desk-scale spectral
//! experiments on sparse ensembles (Erdős–Rényi and signed Bernoulli
//! entry laws with `q = N^β`, `β ∈ (0, 1/2)`):
//!
//! * [`ensemble`] — seeded, order-independent sampling and exact entry
//!   moments/cumulants of the entry laws.
//! * [`semicircle`] — closed-form semicircle density, CDF, N-quantiles,
//!   Stieltjes transform `m(z)` and its derivative, spectral-domain
//!   classification.
//! * [`spectra`] — a self-contained symmetric eigensolver (Householder
//!   tridiagonalization + implicit QL) and eigenvalue-level statistics.
//! * [`resolvent`] — Green functions `G(z) = (H − z)^{-1}`, traces, the
//!   shifted linear statistic, Ward-identity and local-law diagnostics,
//!   and a Helffer–Sjöstrand reconstruction evaluator.
//! * [`stats`] — streaming moments, Kolmogorov–Smirnov distances against
//!   the normal law, correlation matrices, complex-Gaussian checks.
//! * [`termcalc`] — a small formal calculus for Green-function monomials:
//!   parsing, class tags, ν-maps, domination exponents and bound
//!   expressions, and the recursion-contraction check.
//!
//! The crate is `no_std`-compatible (`alloc` required); all float
//! transcendentals go through `libm` so results are bit-stable across
//! platforms.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod ensemble;
pub mod fmath;
pub mod matrix;
pub mod resolvent;
pub mod rng;
pub mod semicircle;
pub mod spectra;
pub mod stats;
pub mod termcalc;

pub use matrix::{CMat, Mat};
pub use num_complex::Complex64;
