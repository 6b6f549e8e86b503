use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::One;

use super::combinat::factorial;

/// Monomial `∏ t_i^{e_i}` stored as a dense exponent vector with trailing
/// zeros trimmed (so equal monomials have equal representations).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_exponents(mut e: Vec<u32>) -> Self {
        while e.last() == Some(&0) {
            e.pop();
        }
        Monomial(e)
    }

    /// `∏ t_{k_i}` for a multiset of indices.
    pub fn from_indices(k: &[u32]) -> Self {
        let mut e = Vec::new();
        for &i in k {
            let i = i as usize;
            if e.len() <= i {
                e.resize(i + 1, 0);
            }
            e[i] += 1;
        }
        Monomial(e)
    }

    /// The multiset of indices, ascending.
    pub fn indices(&self) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.degree() as usize);
        for (i, &e) in self.0.iter().enumerate() {
            for _ in 0..e {
                v.push(i as u32);
            }
        }
        v
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Sparse `(index, exponent)` pairs.
    pub fn sparse(&self) -> Vec<(u32, u32)> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i as u32, e))
            .collect()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `Σ i·e_i`, the total index `|k|`.
    pub fn weight(&self) -> u32 {
        self.0.iter().enumerate().map(|(i, &e)| i as u32 * e).sum()
    }

    /// Largest index present, `None` for the unit monomial.
    pub fn max_index(&self) -> Option<u32> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() as u32 - 1)
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Monomial(
            (0..n)
                .map(|i| self.0.get(i).copied().unwrap_or(0) + other.0.get(i).copied().unwrap_or(0))
                .collect(),
        )
    }

    /// `∂/∂t_k`: returns the multiplicity and the reduced monomial.
    pub fn derive(&self, k: usize) -> Option<(u32, Monomial)> {
        let e = self.exponent(k);
        if e == 0 {
            return None;
        }
        let mut v = self.0.clone();
        v[k] -= 1;
        Some((e, Monomial::from_exponents(v)))
    }

    /// `∏ e_i!`, the ratio between a labelled correlator and the monomial coefficient.
    pub fn symmetry(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::one(), |acc, &e| acc * factorial(e as u64))
    }
}
