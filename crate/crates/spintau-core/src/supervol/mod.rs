//! Super Weil–Petersson volume polynomials and the exact form of their recursion.
//!
//! `V̂_{g,n}(s, L)` is read off the spin free energy translated by
//! `t_j ↦ t_j - (-2π²)^j/j!` (the effect of `e^{2π²κ_1}`), with each `t_k`
//! paired against `L^{2k}/(2^k k!)`. Every `κ_1` insertion raises the s²-power,
//! so a bound on s² makes all sums finite. π² is the formal symbol `x_0`.

use crate::error::Result;
use crate::exactcore::{factorial, FormalPolynomial, GradedSeries, Monomial, Rational, Truncation};
use crate::kappa::partitions;
use crate::spincorr::SpinEngine;
use crate::virasoro::{
    apply_translated_oracle, apply_virasoro_oracle, multi_indices, Model, VirasoroSpec,
};
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `p_j = -(-2π²)^j / j!` as a polynomial in π².
pub fn kappa1_shift(j: u32) -> FormalPolynomial {
    let sign = if j % 2 == 1 { 1 } else { -1 };
    let c = Rational::new(
        BigInt::from(sign) * (BigInt::one() << j as usize),
        factorial(j as u64),
    );
    FormalPolynomial::monomial(0, j, c)
}

/// `V̂_{g,n}`: `(s²-power, (k_1..k_n)) ↦ ℚ[π²]` coefficient of `s^{2a} ∏ L_i^{2k_i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct VolumePolynomial {
    pub g: u32,
    pub n: u32,
    pub smax: u32,
    pub terms: BTreeMap<(i32, Vec<u32>), FormalPolynomial>,
}

impl VolumePolynomial {
    pub fn coefficient(&self, a: i32, k: &[u32]) -> FormalPolynomial {
        self.terms
            .get(&(a, k.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    /// The `s^{2a}` slice as `k ↦ coefficient`.
    pub fn slice(&self, a: i32) -> BTreeMap<Vec<u32>, FormalPolynomial> {
        self.terms
            .iter()
            .filter(|((b, _), _)| *b == a)
            .map(|((_, k), v)| (k.clone(), v.clone()))
            .collect()
    }

    /// Invariant under every permutation of the `L` slots.
    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|((a, k), v)| {
            let mut sorted = k.clone();
            sorted.sort_unstable();
            self.coefficient(*a, &sorted) == *v
        })
    }

    /// Evaluate at `π² = pi2`, `s² = s2`, `L_i² = l2[i]` with exact rationals.
    pub fn eval(&self, s2: &Rational, pi2: &Rational, l2: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for ((a, k), v) in &self.terms {
            let mut t = v.eval(core::slice::from_ref(pi2));
            t *= pow(s2, *a);
            for (x, &e) in l2.iter().zip(k) {
                t *= pow(x, e as i32);
            }
            acc += t;
        }
        acc
    }

    /// `V[g,n] = c_0 + s^2*(...) + ... + O(s^{2(smax+1)})` with π² written `pi^2`.
    pub fn render(&self) -> String {
        let mut out = format!("V[{},{}] =", self.g, self.n);
        let mut by_a: BTreeMap<i32, Vec<String>> = BTreeMap::new();
        for ((a, k), v) in &self.terms {
            let mut mono: Vec<String> = Vec::new();
            for (i, &e) in k.iter().enumerate() {
                match e {
                    0 => {}
                    1 => mono.push(format!("L{}^2", i + 1)),
                    _ => mono.push(format!("L{}^{}", i + 1, 2 * e)),
                }
            }
            let c = render_pi2(v);
            let body = if mono.is_empty() {
                c
            } else if v.len() > 1 {
                format!("({c})*{}", mono.join("*"))
            } else {
                format!("{c}*{}", mono.join("*"))
            };
            by_a.entry(*a).or_default().push(body);
        }
        if by_a.is_empty() {
            out.push_str(" 0");
        }
        for (idx, (a, parts)) in by_a.iter().enumerate() {
            out.push_str(if idx == 0 { " " } else { " + " });
            let inner = parts.join(" + ");
            match a {
                0 => out.push_str(&inner),
                1 => out.push_str(&format!("s^2*({inner})")),
                _ => out.push_str(&format!("s^{}*({inner})", 2 * a)),
            }
        }
        out.push_str(&format!(" + O(s^{})", 2 * (self.smax + 1)));
        out
    }
}

/// `c_0 + c_1*pi^2 + c_2*pi^4 + ...`, lowest power first.
pub fn render_pi2(v: &FormalPolynomial) -> String {
    let parts: Vec<String> = v
        .terms()
        .map(|(e, c)| match e.first().copied().unwrap_or(0) {
            0 => format!("{c}"),
            p => format!("{c}*pi^{}", 2 * p),
        })
        .collect();
    if parts.is_empty() {
        String::from("0")
    } else {
        parts.join(" + ")
    }
}

fn pow(x: &Rational, e: i32) -> Rational {
    let mut r = Rational::one();
    for _ in 0..e.unsigned_abs() {
        r *= x;
    }
    if e < 0 {
        r.recip()
    } else {
        r
    }
}

/// `Σ_J ∏ p_j^{c_j}/c_j! ⟨τ_k τ_J⟩_g` over multisets `J` of positive indices with `|J| = w`.
fn translated_correlator(spin: &mut SpinEngine, g: u32, k: &[u32], w: u32) -> FormalPolynomial {
    let mut acc = FormalPolynomial::zero();
    for lambda in partitions(w) {
        let mut idx = k.to_vec();
        let mut coeff = FormalPolynomial::constant(Rational::one());
        for &(j, c) in &lambda {
            let p = kappa1_shift(j);
            for _ in 0..c {
                idx.push(j);
                coeff = coeff.mul(&p);
            }
            coeff = coeff.scale(&Rational::new(BigInt::one(), factorial(c as u64)));
        }
        let v = spin.correlator(g, &idx);
        if !v.is_zero() {
            acc = acc.add(&coeff.scale(&v));
        }
    }
    acc
}

/// `V̂_{g,n}(s, L)` through s²-power `smax`. Needs `n >= 1`; `(0,1)` and `(0,2)`
/// use the extension with enough Ramond points to stabilise the curve.
pub fn volume_polynomial(g: u32, n: u32, smax: u32) -> VolumePolynomial {
    let mut spin = SpinEngine::new();
    let mut terms = BTreeMap::new();
    let budget = smax as i64 - 1 + g as i64;
    if n >= 1 && budget >= 0 {
        let budget = budget as u32;
        for k in tuples(n, budget) {
            let kw: u32 = k.iter().sum();
            let leg: BigInt = k
                .iter()
                .map(|&e| (BigInt::one() << e as usize) * factorial(e as u64))
                .product();
            for w in 0..=budget - kw {
                let a = 1 - g as i32 + (kw + w) as i32;
                if a < 0 {
                    continue;
                }
                let v = translated_correlator(&mut spin, g, &k, w);
                if !v.is_zero() {
                    let v = v.scale(&Rational::new(BigInt::one(), leg.clone()));
                    terms.insert((a, k.clone()), v);
                }
            }
        }
    }
    VolumePolynomial { g, n, smax, terms }
}

/// All `n`-tuples of nonnegative integers with sum at most `cap`.
fn tuples(n: u32, cap: u32) -> Vec<Vec<u32>> {
    let mut out = alloc::vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for t in &out {
            let used: u32 = t.iter().sum();
            for e in 0..=cap - used {
                let mut t2 = t.clone();
                t2.push(e);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

/// `log Z^Ω_{2π²κ_1}` on `trunc`, coefficients in ℚ[π²], unstable terms included.
pub fn translated_free_energy(trunc: Truncation) -> GradedSeries<FormalPolynomial> {
    let mut spin = SpinEngine::new();
    let mut f = GradedSeries::new(trunc);
    for g in 0..=trunc.gmax {
        for n in 1..=trunc.dmax {
            let cap = trunc.smax as i64 - 1 + g as i64;
            if cap < 0 {
                continue;
            }
            for k in multi_indices(n, trunc.kmax, cap as u32) {
                let kw: u32 = k.iter().sum();
                let t = Monomial::from_indices(&k);
                let sym = Rational::new(BigInt::one(), t.symmetry());
                for w in 0..=cap as u32 - kw {
                    let a = 1 - g as i32 + (kw + w) as i32;
                    let v = translated_correlator(&mut spin, g, &k, w);
                    f.add_term(g as i32 - 1, a, t.clone(), v.scale(&sym));
                }
            }
        }
    }
    f
}

/// Residuals of the exact recursion: the BGW constraints on `log Z^Ω` and the
/// translated constraints on `log Z^Ω_{2π²κ_1}`.
#[derive(Clone, Debug)]
pub struct TranslatedVirasoroReport {
    /// `(m, nonzero residual coefficients)` for the untranslated constraints.
    pub plain: Vec<(i64, usize)>,
    /// `(m, nonzero residual coefficients)` for the translated constraints.
    pub translated: Vec<(i64, usize)>,
    /// Coefficients examined in the translated free energy.
    pub translated_terms: usize,
}

impl TranslatedVirasoroReport {
    pub fn all_zero(&self) -> bool {
        self.plain
            .iter()
            .chain(&self.translated)
            .all(|(_, c)| *c == 0)
    }
}

/// Exact verification of the recursion in its Virasoro form, `m = 0..=m_max`.
pub fn translated_virasoro_check(
    z_omega: &GradedSeries,
    translated: &GradedSeries<FormalPolynomial>,
    m_max: i64,
) -> Result<TranslatedVirasoroReport> {
    let spec = VirasoroSpec::new(Model::Bgw, m_max);
    let trunc = translated.truncation();
    let shift: BTreeMap<u32, FormalPolynomial> = (1..=trunc.kmax + trunc.smax)
        .map(|j| (j, kappa1_shift(j)))
        .collect();
    let mut plain = Vec::new();
    let mut trans = Vec::new();
    for m in 0..=m_max {
        plain.push((m, apply_virasoro_oracle(z_omega, &spec, m)?.len()));
        trans.push((
            m,
            apply_translated_oracle(translated, &spec, m, &shift)?.len(),
        ));
    }
    Ok(TranslatedVirasoroReport {
        plain,
        translated: trans,
        translated_terms: translated.len(),
    })
}
