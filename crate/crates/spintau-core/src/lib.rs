//! Exact intersection numbers on moduli spaces of curves and the KdV tau
//! functions built from them.
//!
//! Everything here is exact rational arithmetic over `alloc`; floating point
//! and IO live in the companion `spintau` crate.
//!
//! * [`exactcore`]: rationals, combinatorial constants, truncated graded series.
//! * [`virasoro`]: Kontsevich–Witten and generalised Brézin–Gross–Witten
//!   correlators from Virasoro constraints, with operator-level residual checks.
//! * [`kappa`]: kappa polynomials, translations, kappa–psi numbers.
//! * [`spincorr`]: spin correlators, unstable terms and the three-way identity
//!   between the BGW, spin and kappa partition functions.
//! * [`supervol`]: super Weil–Petersson volume polynomials.
//! * [`spectral`]: topological recursion on the four rational spectral curves.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod exactcore;
pub mod kappa;
pub mod spectral;
pub mod spincorr;
pub mod supervol;
pub mod virasoro;

pub use error::Error;
pub use exactcore::{FormalPolynomial, GradedSeries, Monomial, Rational, Truncation};
