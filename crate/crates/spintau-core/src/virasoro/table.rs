use crate::exactcore::{GradedSeries, Monomial, Rational, Truncation};
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use num_traits::Zero;

/// Which correlator family a table holds; fixes the s-grading and the tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Engine {
    /// psi-class intersection numbers, no s-dependence.
    Kw,
    /// Free energy of the generalised BGW tau function at s = 1.
    Bgw,
    /// Spin correlators.
    Spin,
    /// `∫ 𝕂 ∏ψ^k`, the coefficients of `Z^𝕂` at s = 1.
    Zk,
    /// `∫ 𝕂 ∏ψ^{(k)}` with bracketed psi classes.
    ZkBracket,
}

impl Engine {
    pub fn tag(self) -> &'static str {
        match self {
            Engine::Kw => "kw",
            Engine::Bgw => "bgw",
            Engine::Spin => "spin",
            Engine::Zk => "zk",
            Engine::ZkBracket => "zk-bracket",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        [
            Engine::Kw,
            Engine::Bgw,
            Engine::Spin,
            Engine::Zk,
            Engine::ZkBracket,
        ]
        .into_iter()
        .find(|e| e.tag() == tag)
    }

    /// Power of s² carried by `(g, k)`: zero for KW, `1 - g + |k|` otherwise.
    pub fn s2_power(self, g: u32, k: &[u32]) -> i32 {
        match self {
            Engine::Kw => 0,
            _ => 1 - g as i32 + k.iter().sum::<u32>() as i32,
        }
    }
}

/// Sparse table `(g, k) ↦ ⟨∏τ_{k_i}⟩_g` with `k` sorted ascending; absent keys are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelatorTable {
    pub engine: Engine,
    pub trunc: Truncation,
    entries: BTreeMap<(u32, Vec<u32>), Rational>,
}

impl CorrelatorTable {
    pub fn new(engine: Engine, trunc: Truncation) -> Self {
        CorrelatorTable {
            engine,
            trunc,
            entries: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, g: u32, k: &[u32], v: Rational) {
        let mut k = k.to_vec();
        k.sort_unstable();
        if v.is_zero() {
            self.entries.remove(&(g, k));
        } else {
            self.entries.insert((g, k), v);
        }
    }

    pub fn get(&self, g: u32, k: &[u32]) -> Rational {
        let mut k = k.to_vec();
        k.sort_unstable();
        self.entries
            .get(&(g, k))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Nonzero entries in canonical order (genus, then k lexicographically).
    pub fn iter(&self) -> impl Iterator<Item = (u32, &[u32], &Rational)> {
        self.entries.iter().map(|((g, k), v)| (*g, k.as_slice(), v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Keep the entries satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(u32, &[u32]) -> bool) -> Self {
        let mut t = Self::new(self.engine, self.trunc);
        for (g, k, v) in self.iter() {
            if keep(g, k) {
                t.insert(g, k, v.clone());
            }
        }
        t
    }

    /// Lattice points `(g, k)` this table covers: `g <= gmax`, `1 <= n <= dmax`,
    /// `k_i <= kmax`, and the engine's grading window (`|k| = 3g-3+n` for KW,
    /// `1 - g + |k| <= smax` otherwise).
    pub fn lattice(engine: Engine, trunc: Truncation) -> Vec<(u32, Vec<u32>)> {
        let mut out = Vec::new();
        for g in 0..=trunc.gmax {
            for n in 1..=trunc.dmax {
                let cap = match engine {
                    Engine::Kw => {
                        let d = 3 * g as i64 - 3 + n as i64;
                        if d < 0 || 2 * g + n <= 2 {
                            continue;
                        }
                        d as u32
                    }
                    _ => {
                        let w = trunc.smax as i64 - 1 + g as i64;
                        if w < 0 {
                            continue;
                        }
                        w as u32
                    }
                };
                for k in multi_indices(n, trunc.kmax, cap) {
                    let w: u32 = k.iter().sum();
                    if engine == Engine::Kw && w != cap {
                        continue;
                    }
                    out.push((g, k));
                }
            }
        }
        out
    }

    /// `Σ v ħ^{g-1} s^{2a} ∏t_{k_i} / |Aut k|`, restricted to the table's truncation.
    pub fn to_series(&self) -> GradedSeries {
        let mut s = GradedSeries::new(self.trunc);
        for (g, k, v) in self.iter() {
            let t = Monomial::from_indices(k);
            let c = v / Rational::from_integer(t.symmetry());
            s.add_term(g as i32 - 1, self.engine.s2_power(g, k), t, c);
        }
        s
    }

    /// Entries where `self` and `other` differ, as `(g, k, self, other)`.
    pub fn differences(&self, other: &Self) -> Vec<(u32, Vec<u32>, Rational, Rational)> {
        let mut keys: Vec<&(u32, Vec<u32>)> =
            self.entries.keys().chain(other.entries.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter_map(|key| {
                let a = self
                    .entries
                    .get(key)
                    .cloned()
                    .unwrap_or_else(Rational::zero);
                let b = other
                    .entries
                    .get(key)
                    .cloned()
                    .unwrap_or_else(Rational::zero);
                (a != b).then(|| (key.0, key.1.clone(), a, b))
            })
            .collect()
    }
}

/// Nondecreasing sequences of length `n` with entries `<= kmax` and sum `<= cap`.
pub fn multi_indices(n: u32, kmax: u32, cap: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, lo: u32, kmax: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        let mut v = lo;
        while v <= kmax && v * n <= cap {
            cur.push(v);
            go(n - 1, v, kmax, cap - v, cur, out);
            cur.pop();
            v += 1;
        }
    }
    let mut out = Vec::new();
    go(n, 0, kmax, cap, &mut Vec::new(), &mut out);
    out
}
