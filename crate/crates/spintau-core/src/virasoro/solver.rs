//! Correlator recursion extracted from the Virasoro constraints on `F = log Z`.
//!
//! Dividing `(2m+c)!! ∂_{m+c} Z = (L_m + shift) Z` by `Z` and taking
//! `∂_S|_{t=0}` at `ħ^{g-1}` gives
//!
//! ```text
//! (2m+c)!! ⟨τ_{m+c} τ_S⟩_g
//!   = ½ Σ_{i+j=m-1} A_ij [ ⟨τ_i τ_j τ_S⟩_{g-1} + Σ_{I⊔J=S, g1+g2=g} ⟨τ_i τ_I⟩_{g1} ⟨τ_j τ_J⟩_{g2} ]
//!   + Σ_{a∈S} B_{k_a,m} ⟨τ_{k_a+m} τ_{S∖a}⟩_g + constants
//! ```
//!
//! with `c = 1` for KW and `c = 0` for generalised BGW. Every term on the right
//! is strictly smaller: in `2g-2+n` for KW, and in `(2g+n, |k|)` for BGW.

use super::operators::{linear_coefficient, quadratic_coefficient, Model};
use crate::exactcore::{binomial, double_factorial, q, Rational};
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use num_traits::{One, Zero};

/// Memoised solver; BGW values are at s = 1 (the s-power is fixed by grading).
pub struct VirasoroSolver {
    model: Model,
    memo: BTreeMap<(u32, Vec<u32>), Rational>,
}

impl VirasoroSolver {
    pub fn new(model: Model) -> Self {
        assert!(
            model != Model::Kappa,
            "the kappa constraint is checked, not solved"
        );
        VirasoroSolver {
            model,
            memo: BTreeMap::new(),
        }
    }

    /// `⟨∏τ_{k_i}⟩_g` (any order of `k`).
    pub fn correlator(&mut self, g: u32, k: &[u32]) -> Rational {
        let mut k = k.to_vec();
        k.sort_unstable_by(|a, b| b.cmp(a));
        self.solve(g, k)
    }

    /// `k` sorted descending.
    fn solve(&mut self, g: u32, k: Vec<u32>) -> Rational {
        let n = k.len() as i64;
        if n == 0 {
            return Rational::zero();
        }
        if self.model == Model::Kw {
            let w: i64 = k.iter().map(|&x| x as i64).sum();
            if 2 * g as i64 - 2 + n <= 0 || w != 3 * g as i64 - 3 + n {
                return Rational::zero();
            }
        }
        let key = (g, k);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let (g, k) = key;
        let top = k[0] as i64;
        let rest: Vec<u32> = k[1..].to_vec();
        let m = match self.model {
            Model::Kw => top - 1,
            _ => top,
        };
        let lhs = double_factorial(2 * top + 1).expect("odd argument");
        let mut rhs = Rational::zero();

        if m >= 1 {
            let groups = group(&rest);
            for i in 0..m {
                let j = m - 1 - i;
                let a = quadratic_coefficient(i, j) * q(1, 2);
                let (i, j) = (i as u32, j as u32);
                let mut acc = Rational::zero();
                if g >= 1 {
                    acc += self.solve(g - 1, with(&rest, &[i, j]));
                }
                for (sub, mult) in sub_multisets(&groups) {
                    let comp = complement(&rest, &sub);
                    let left = with(&sub, &[i]);
                    let right = with(&comp, &[j]);
                    for g1 in 0..=g {
                        let l = self.solve(g1, left.clone());
                        if l.is_zero() {
                            continue;
                        }
                        let r = self.solve(g - g1, right.clone());
                        acc += l * r * Rational::from_integer(mult.clone());
                    }
                }
                rhs += a * acc;
            }
        }

        let mut seen: Option<u32> = None;
        for &v in &rest {
            if seen == Some(v) {
                continue;
            }
            seen = Some(v);
            if v as i64 + m < 0 {
                continue;
            }
            let count = rest.iter().filter(|&&x| x == v).count() as i64;
            let mut reduced = rest.clone();
            let pos = reduced.iter().position(|&x| x == v).unwrap();
            reduced.remove(pos);
            let reduced = with(&reduced, &[(v as i64 + m) as u32]);
            rhs += linear_coefficient(v as i64, m)
                * Rational::from_integer(count.into())
                * self.solve(g, reduced);
        }

        match (self.model, m, g, rest.as_slice()) {
            (_, 0, 1, []) => rhs += q(1, 8),
            (Model::Kw, -1, 0, [0, 0]) => rhs += Rational::one(),
            (Model::Bgw, 0, 0, []) => rhs += q(1, 2),
            _ => {}
        }

        let v = rhs / Rational::from_integer(lhs);
        self.memo.insert((g, k), v.clone());
        v
    }
}

/// `(value, count)` pairs of a descending multiset.
fn group(k: &[u32]) -> Vec<(u32, u32)> {
    let mut out: Vec<(u32, u32)> = Vec::new();
    for &x in k {
        match out.last_mut() {
            Some((v, c)) if *v == x => *c += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

/// All sub-multisets with their labelled multiplicity `∏ C(c_i, d_i)`.
fn sub_multisets(groups: &[(u32, u32)]) -> Vec<(Vec<u32>, num_bigint::BigInt)> {
    let mut out = alloc::vec![(Vec::new(), num_bigint::BigInt::one())];
    for &(v, c) in groups {
        let mut next = Vec::new();
        for (sub, mult) in &out {
            for d in 0..=c {
                let mut s = sub.clone();
                s.extend(core::iter::repeat_n(v, d as usize));
                next.push((s, mult * binomial(c as i64, d as i64)));
            }
        }
        out = next;
    }
    out
}

/// `whole ∖ part` for descending multisets with `part ⊆ whole`.
fn complement(whole: &[u32], part: &[u32]) -> Vec<u32> {
    let mut out = whole.to_vec();
    for x in part {
        let pos = out.iter().position(|y| y == x).unwrap();
        out.remove(pos);
    }
    out
}

/// `k ∪ extra`, sorted descending.
fn with(k: &[u32], extra: &[u32]) -> Vec<u32> {
    let mut v = k.to_vec();
    v.extend_from_slice(extra);
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}
