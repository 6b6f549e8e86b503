use super::rational::Rational;
use core::fmt::Debug;
use num_traits::{One, Zero};

/// Commutative ℚ-algebra used as the coefficient ring of a [`GradedSeries`](super::GradedSeries).
pub trait Coeff: Clone + PartialEq + Debug {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn vanishes(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    fn from_rational(c: Rational) -> Self;
    /// The value if `self` is a rational constant.
    fn as_rational(&self) -> Option<Rational>;
}

impl Coeff for Rational {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
    fn from_rational(c: Rational) -> Self {
        c
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}
