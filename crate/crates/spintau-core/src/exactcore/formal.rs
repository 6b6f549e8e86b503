//! Sparse multivariate polynomials over ℚ in formal symbols x_0, x_1, ...
//!
//! Exponent vectors are stored with trailing zeros trimmed, so polynomials
//! over different alphabet sizes compare and multiply consistently.
//! Invariant: no stored coefficient is zero.

use super::rational::{qi, Rational};
use super::ring::Coeff;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Default, PartialOrd, Ord, Hash)]
pub struct FormalPolynomial {
    terms: BTreeMap<Vec<u32>, Rational>,
}

fn trim(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

impl FormalPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::default();
        p.add_term(Vec::new(), c);
        p
    }

    /// The symbol `x_i`.
    pub fn var(i: usize) -> Self {
        Self::monomial(i, 1, qi(1))
    }

    /// `c · x_i^e`.
    pub fn monomial(i: usize, e: u32, c: Rational) -> Self {
        let mut ex = alloc::vec![0; i + 1];
        ex[i] = e;
        let mut p = Self::default();
        p.add_term(ex, c);
        p
    }

    /// Add `c · x^e`; `e` need not be trimmed.
    pub fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = trim(e);
        let slot = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `x^e` (trailing zeros in `e` are ignored).
    pub fn coeff(&self, e: &[u32]) -> Rational {
        let e = trim(e.to_vec());
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        self.scale(&qi(-1))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut r = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let n = e1.len().max(e2.len());
                let e: Vec<u32> = (0..n)
                    .map(|i| e1.get(i).copied().unwrap_or(0) + e2.get(i).copied().unwrap_or(0))
                    .collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::constant(qi(1));
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    /// Drop every term whose weighted degree `Σ w_i e_i` exceeds `max`.
    pub fn truncate_weighted(&self, weights: &[u32], max: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| weighted_degree(e, weights) <= max)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Substitute rational values for every symbol.
    pub fn eval(&self, values: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t *= &values[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Human-readable form using the given symbol names.
    pub fn render(&self, names: &[&str]) -> String {
        self.render_by(|i, k| {
            let name = names.get(i).copied().unwrap_or("x");
            if k == 1 {
                String::from(name)
            } else {
                alloc::format!("{name}^{k}")
            }
        })
    }

    /// Render with `power(i, k)` naming the factor `x_i^k`, `k >= 1`.
    pub fn render_by(&self, power: impl Fn(usize, u32) -> String) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                out.push_str(" + ");
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| power(i, k))
                .collect();
            if mono.is_empty() {
                let _ = write!(out, "{c}");
            } else if c.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                let _ = write!(out, "{c}*{}", mono.join("*"));
            }
        }
        out
    }
}

pub(crate) fn weighted_degree(e: &[u32], weights: &[u32]) -> u32 {
    e.iter().zip(weights).map(|(a, w)| a * w).sum()
}

impl Coeff for FormalPolynomial {
    fn zero_elem() -> Self {
        FormalPolynomial::zero()
    }
    fn one_elem() -> Self {
        FormalPolynomial::constant(qi(1))
    }
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn scale(&self, c: &Rational) -> Self {
        FormalPolynomial::scale(self, c)
    }
    fn from_rational(c: Rational) -> Self {
        FormalPolynomial::constant(c)
    }
    fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::q;

    #[test]
    fn arithmetic() {
        let x = FormalPolynomial::var(0);
        let y = FormalPolynomial::var(1);
        let s = x.add(&y);
        let sq = s.mul(&s);
        assert_eq!(sq.coeff(&[1, 1]), qi(2));
        assert_eq!(sq.coeff(&[2]), qi(1));
        assert!(s.sub(&s).is_zero());
        assert_eq!(sq.eval(&[q(1, 2), q(1, 3)]), q(25, 36));
        assert_eq!(sq.render(&["a", "b"]), "b^2 + 2*a*b + a^2");
    }
}
