//! Truncated graded series in ħ, s² and the times t_0, t_1, ...
//!
//! Invariants: no stored coefficient is zero, every key lies inside the
//! truncation, and the ħ-power is at least -1. Partition functions with
//! ħ^{-1} terms in their exponent leave that range, so callers work with
//! free energies `log Z`; `exp`/`log` are offered on the nilpotent part of
//! the ring (positive t-degree, nonnegative ħ and s² powers), where the
//! truncation is an ideal and both maps are exact.

use super::monomial::Monomial;
use super::rational::{qi, Rational};
use super::ring::Coeff;
use super::truncation::Truncation;
use crate::error::{Error, Result};
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

/// `(ħ-power, s²-power, t-monomial)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Key {
    pub h: i32,
    pub a: i32,
    pub t: Monomial,
}

impl Key {
    pub fn new(h: i32, a: i32, t: Monomial) -> Self {
        Key { h, a, t }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradedSeries<C: Coeff = Rational> {
    trunc: Truncation,
    terms: BTreeMap<Key, C>,
}

/// Images `t_k ↦ S_k` for a ring substitution; unlisted times are fixed.
#[derive(Clone, Debug, Default)]
pub struct Substitution<C: Coeff = Rational> {
    images: BTreeMap<u32, GradedSeries<C>>,
}

impl<C: Coeff> Substitution<C> {
    pub fn new() -> Self {
        Substitution {
            images: BTreeMap::new(),
        }
    }
    pub fn set(&mut self, k: u32, image: GradedSeries<C>) -> &mut Self {
        self.images.insert(k, image);
        self
    }
}

impl<C: Coeff> GradedSeries<C> {
    pub fn new(trunc: Truncation) -> Self {
        GradedSeries {
            trunc,
            terms: BTreeMap::new(),
        }
    }

    /// The constant series `c`.
    pub fn constant(trunc: Truncation, c: C) -> Self {
        let mut s = Self::new(trunc);
        s.add_term(0, 0, Monomial::one(), c);
        s
    }

    /// The series `t_k`.
    pub fn time(trunc: Truncation, k: u32) -> Self {
        let mut s = Self::new(trunc);
        s.add_term(0, 0, Monomial::from_indices(&[k]), C::one_elem());
        s
    }

    pub fn truncation(&self) -> Truncation {
        self.trunc
    }

    /// Accumulate `c · ħ^h s^{2a} t^M`; terms outside the truncation are dropped.
    pub fn add_term(&mut self, h: i32, a: i32, t: Monomial, c: C) {
        debug_assert!(h >= -1, "ħ-power {h} below -1");
        if c.vanishes() || !self.trunc.contains(h, a, &t) {
            return;
        }
        let key = Key { h, a, t };
        match self.terms.get_mut(&key) {
            Some(slot) => {
                slot.add_assign_ref(&c);
                if slot.vanishes() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add_key(&mut self, key: &Key, c: C) {
        self.add_term(key.h, key.a, key.t.clone(), c);
    }

    pub fn get(&self, h: i32, a: i32, t: &Monomial) -> C {
        self.terms
            .get(&Key { h, a, t: t.clone() })
            .cloned()
            .unwrap_or_else(C::zero_elem)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Key, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.trunc != other.trunc {
            Err(Error::TruncationMismatch)
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut r = self.clone();
        for (k, c) in &other.terms {
            r.add_key(k, c.clone());
        }
        Ok(r)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&qi(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut r = Self::new(self.trunc);
        for (k, v) in &self.terms {
            r.add_key(k, v.scale(c));
        }
        r
    }

    /// Multiply every coefficient by the ring element `c`.
    pub fn scale_by(&self, c: &C) -> Self {
        let mut r = Self::new(self.trunc);
        for (k, v) in &self.terms {
            r.add_key(k, v.mul_ref(c));
        }
        r
    }

    /// Multiply by `ħ^h s^{2a} t^M`.
    pub fn shift(&self, h: i32, a: i32, t: &Monomial) -> Self {
        let mut r = Self::new(self.trunc);
        for (k, v) in &self.terms {
            r.add_term(k.h + h, k.a + a, k.t.mul(t), v.clone());
        }
        r
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut r = Self::new(self.trunc);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let h = k1.h + k2.h;
                let a = k1.a + k2.a;
                if h + 1 > self.trunc.gmax as i32 || a > self.trunc.smax as i32 {
                    continue;
                }
                if k1.t.degree() + k2.t.degree() > self.trunc.dmax {
                    continue;
                }
                r.add_term(h, a, k1.t.mul(&k2.t), c1.mul_ref(c2));
            }
        }
        Ok(r)
    }

    /// `∂/∂t_k`.
    pub fn derive(&self, k: u32) -> Self {
        let mut r = Self::new(self.trunc);
        for (key, c) in &self.terms {
            if let Some((e, t)) = key.t.derive(k as usize) {
                r.add_term(key.h, key.a, t, c.scale(&qi(e as i64)));
            }
        }
        r
    }

    /// Keep only keys inside `trunc` (which becomes the new truncation).
    pub fn restrict(&self, trunc: Truncation) -> Self {
        let mut r = Self::new(trunc);
        for (k, c) in &self.terms {
            r.add_key(k, c.clone());
        }
        r
    }

    /// Keep the keys satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&Key) -> bool) -> Self {
        let mut r = Self::new(self.trunc);
        for (k, c) in &self.terms {
            if keep(k) {
                r.add_key(k, c.clone());
            }
        }
        r
    }

    /// The constant (t-independent) part.
    pub fn constant_part(&self) -> Self {
        self.filter(|k| k.t.degree() == 0)
    }

    fn nilpotent(&self) -> bool {
        self.terms
            .keys()
            .all(|k| k.t.degree() >= 1 && k.h >= 0 && k.a >= 0)
    }

    /// `exp(S)` for nilpotent `S`; the result has constant term 1.
    pub fn exp(&self) -> Result<Self> {
        if !self.nilpotent() {
            return Err(Error::NotNilpotent);
        }
        let mut result = Self::constant(self.trunc, C::one_elem());
        let mut power = result.clone();
        for n in 1..=self.trunc.dmax as i64 {
            power = power.mul(self)?.scale(&Rational::new(1.into(), n.into()));
            if power.is_zero() {
                break;
            }
            result = result.add(&power)?;
        }
        Ok(result)
    }

    /// `log(Z)` for `Z = 1 + X` with `X` nilpotent.
    pub fn log(&self) -> Result<Self> {
        let one = C::one_elem();
        let c0 = self.get(0, 0, &Monomial::one());
        if c0 != one {
            return Err(Error::LogConstant);
        }
        let x = self.sub(&Self::constant(self.trunc, one))?;
        if !x.nilpotent() {
            return Err(Error::NotNilpotent);
        }
        let mut result = Self::new(self.trunc);
        let mut power = Self::constant(self.trunc, C::one_elem());
        for n in 1..=self.trunc.dmax as i64 {
            power = power.mul(&x)?;
            if power.is_zero() {
                break;
            }
            let sign = if n % 2 == 1 { 1 } else { -1 };
            result = result.add(&power.scale(&Rational::new(sign.into(), n.into())))?;
        }
        Ok(result)
    }

    /// Ring substitution `t_k ↦ S_k` applied to every term of this (finite) series.
    ///
    /// Exact for the stored terms. When an image has a constant part, output
    /// coefficients also receive contributions from higher-degree input terms,
    /// so completeness then requires the input to be a polynomial or to carry
    /// every term the shift can reach.
    pub fn substitute(&self, subs: &Substitution<C>) -> Result<Self> {
        for img in subs.images.values() {
            self.check(img)?;
        }
        let one = Self::constant(self.trunc, C::one_elem());
        let mut cache: BTreeMap<(u32, u32), Self> = BTreeMap::new();
        let mut r = Self::new(self.trunc);
        for (key, c) in &self.terms {
            let mut acc =
                Self::constant(self.trunc, c.clone()).shift(key.h, key.a, &Monomial::one());
            let mut fixed = Vec::new();
            for (i, e) in key.t.sparse() {
                match subs.images.get(&i) {
                    None => {
                        for _ in 0..e {
                            fixed.push(i);
                        }
                    }
                    Some(img) => {
                        if !cache.contains_key(&(i, e)) {
                            let mut p = one.clone();
                            for _ in 0..e {
                                p = p.mul(img)?;
                            }
                            cache.insert((i, e), p);
                        }
                        acc = acc.mul(&cache[&(i, e)])?;
                    }
                }
            }
            let acc = acc.shift(0, 0, &Monomial::from_indices(&fixed));
            r = r.add(&acc)?;
        }
        Ok(r)
    }

    /// Apply `f` to every key; colliding images are summed.
    pub fn map_keys(&self, trunc: Truncation, f: impl Fn(&Key) -> Key) -> Self {
        let mut r = Self::new(trunc);
        for (k, c) in &self.terms {
            r.add_key(&f(k), c.clone());
        }
        r
    }

    /// Keys where `self` and `other` differ, with both values.
    pub fn differences(&self, other: &Self) -> Vec<(Key, C, C)> {
        let mut out = Vec::new();
        for (k, c) in &self.terms {
            let d = other.terms.get(k).cloned().unwrap_or_else(C::zero_elem);
            if &d != c {
                out.push((k.clone(), c.clone(), d));
            }
        }
        for (k, c) in &other.terms {
            if !self.terms.contains_key(k) {
                out.push((k.clone(), C::zero_elem(), c.clone()));
            }
        }
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out
    }
}
