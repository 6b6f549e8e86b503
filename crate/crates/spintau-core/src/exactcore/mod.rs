//! Exact scalars, combinatorial constants and the truncated graded series ring.

mod combinat;
mod formal;
mod monomial;
mod rational;
mod ring;
mod series;
mod truncation;
pub mod univariate;

pub use combinat::{
    bernoulli, binomial, chi_abs, double_factorial, euler_characteristic_constant, factorial,
};
pub use formal::FormalPolynomial;
pub use monomial::Monomial;
pub use rational::{parse_rational, q, qi, Rational};
pub use ring::Coeff;
pub use series::{GradedSeries, Key, Substitution};
pub use truncation::Truncation;
