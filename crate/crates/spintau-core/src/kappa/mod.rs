//! Kappa-class polynomials and mixed kappa–psi intersection numbers.
//!
//! Every kappa integral is reduced to psi-class integrals by translation:
//! `∫ ψ^k e^{Σ b_j κ_j}` over `M_{g,n}` equals the KW correlator sum with
//! `t_{j+1} ↦ t_{j+1} + p_j(b)`, where `1 - exp(-Σ b_i z^i) = Σ p_j z^j`.
//! Only partitions of the excess dimension contribute, so all sums are finite.
//!
//! Symbol conventions: in a [`KappaPolynomial`] the symbol `x_{j-1}` is `κ_j`;
//! in [`TranslationData`] it is `b_j`.

use crate::error::{Error, Result};
use crate::exactcore::univariate;
use crate::exactcore::{
    double_factorial, euler_characteristic_constant, factorial, qi, FormalPolynomial, GradedSeries,
    Monomial, Rational, Substitution, Truncation,
};
use crate::virasoro::{CorrelatorTable, Engine, Model, VirasoroSolver};
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use num_traits::{One, Zero};

/// `σ_1, σ_2, ...` with `exp(-Σ σ_i t^i) = Σ (-1)^k (2k+1)!! t^k`; index 0 holds `σ_1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaSequence(pub Vec<Rational>);

/// `K_m` as a polynomial in `κ_1, ..., κ_m`, weighted homogeneous of degree `m`.
#[derive(Clone, Debug, PartialEq)]
pub struct KappaPolynomial {
    pub m: u32,
    pub poly: FormalPolynomial,
}

/// `p_1(b), p_2(b), ...`; index 0 holds `p_1`.
#[derive(Clone, Debug, PartialEq)]
pub struct TranslationData(pub Vec<FormalPolynomial>);

impl TranslationData {
    /// `p_j`, for `j >= 1`.
    pub fn p(&self, j: usize) -> &FormalPolynomial {
        &self.0[j - 1]
    }
}

fn alternating_double_factorials(n: usize) -> Vec<Rational> {
    (0..=n as i64)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            Rational::from_integer(double_factorial(2 * k + 1).unwrap()) * qi(sign)
        })
        .collect()
}

pub fn sigma_coefficients(n: usize) -> SigmaSequence {
    let l = univariate::log(&alternating_double_factorials(n));
    SigmaSequence(l[1..].iter().map(|c| -c).collect())
}

/// `K_0, ..., K_n` from `𝕂(t) = exp(Σ σ_i κ_i t^i)`.
pub fn k_polynomials(n: usize) -> Vec<KappaPolynomial> {
    let sigma = sigma_coefficients(n.max(1));
    let mut f = alloc::vec![FormalPolynomial::zero(); n + 1];
    for i in 1..=n {
        f[i] = FormalPolynomial::var(i - 1).scale(&sigma.0[i - 1]);
    }
    univariate::exp(&f)
        .into_iter()
        .enumerate()
        .map(|(m, poly)| KappaPolynomial { m: m as u32, poly })
        .collect()
}

pub fn translation_polynomials(n: usize) -> TranslationData {
    let mut f = alloc::vec![FormalPolynomial::zero(); n + 1];
    for i in 1..=n {
        f[i] = FormalPolynomial::var(i - 1).scale(&qi(-1));
    }
    let e = univariate::exp(&f);
    TranslationData(e[1..].iter().map(|c| c.scale(&qi(-1))).collect())
}

/// `p_j(σ) = (-1)^{j+1} (2j+1)!!`, the constant shift of `t_{j+1}` taking `Z^KW` to `Z^𝕂`.
pub fn manin_zograf_shift(j: u32) -> Rational {
    let sign = if j % 2 == 1 { 1 } else { -1 };
    Rational::from_integer(double_factorial(2 * j as i64 + 1).unwrap()) * qi(sign)
}

/// Integer partitions of `w` as `(part, multiplicity)` lists.
pub fn partitions(w: u32) -> Vec<Vec<(u32, u32)>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<(u32, u32)>, out: &mut Vec<Vec<(u32, u32)>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            for c in (1..=rest / part).rev() {
                cur.push((part, c));
                go(rest - part * c, part - 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(w, w, &mut Vec::new(), &mut out);
    out
}

/// Kappa–psi integrals over one shared KW solver.
pub struct KappaEngine {
    kw: VirasoroSolver,
    p: TranslationData,
    /// `∫ 𝕂 ψ^k` keyed by `(g, sorted k)`.
    shifted: BTreeMap<(u32, Vec<u32>), Rational>,
}

impl Default for KappaEngine {
    fn default() -> Self {
        Self::new()
    }
}

impl KappaEngine {
    pub fn new() -> Self {
        KappaEngine {
            kw: VirasoroSolver::new(Model::Kw),
            p: translation_polynomials(1),
            shifted: BTreeMap::new(),
        }
    }

    /// KW correlator `⟨∏τ_{k_i}⟩_g`.
    pub fn kw(&mut self, g: u32, k: &[u32]) -> Rational {
        self.kw.correlator(g, k)
    }

    fn ensure(&mut self, w: usize) {
        if self.p.0.len() < w {
            self.p = translation_polynomials(w);
        }
    }

    /// `Σ_λ ∏ weight(j)^{c_j}/c_j! · ⟨τ_k ∏ τ_{j+1}^{c_j}⟩_g` over partitions `λ` of `w`.
    fn translate<C: crate::exactcore::Coeff>(
        &mut self,
        g: u32,
        psi: &[u32],
        w: u32,
        weight: impl Fn(&Self, u32) -> C,
    ) -> C {
        let mut acc = C::zero_elem();
        for lambda in partitions(w) {
            let mut k = psi.to_vec();
            let mut coeff = C::one_elem();
            for &(j, c) in &lambda {
                let base = weight(self, j);
                for _ in 0..c {
                    k.push(j + 1);
                    coeff = coeff.mul_ref(&base);
                }
                coeff = coeff.scale(&Rational::new(One::one(), factorial(c as u64)));
            }
            let v = self.kw.correlator(g, &k);
            if !v.is_zero() {
                acc.add_assign_ref(&coeff.scale(&v));
            }
        }
        acc
    }

    /// `∫_{M_{g,n}} e^{Σ b_j κ_j} ∏ψ_i^{k_i}` restricted to `b`-degree `w` (a polynomial in `b`).
    pub fn translated(&mut self, g: u32, psi: &[u32], w: u32) -> FormalPolynomial {
        self.ensure(w as usize);
        self.translate(g, psi, w, |e, j| e.p.p(j as usize).clone())
    }

    /// `∫_{M_{g,n}} κ_1^{a_1} κ_2^{a_2} ... ∏ψ_i^{k_i}` with `n = psi.len()`.
    pub fn kappa_psi_number(&mut self, g: u32, kappa: &[u32], psi: &[u32]) -> Result<Rational> {
        let n = psi.len() as u32;
        if 2 * g + n <= 2 {
            return Err(Error::Unstable { g, n });
        }
        let w: u32 = kappa
            .iter()
            .enumerate()
            .map(|(j, a)| (j as u32 + 1) * a)
            .sum();
        let psi_w: u32 = psi.iter().sum();
        if w + psi_w != 3 * g + n - 3 {
            return Ok(Rational::zero());
        }
        let poly = self.translated(g, psi, w);
        let sym: num_bigint::BigInt = kappa.iter().map(|&a| factorial(a as u64)).product();
        Ok(poly.coeff(kappa) * Rational::from_integer(sym))
    }

    /// `∫_{M_{g,n}} P(κ) ∏ψ_i^{k_i}` for a kappa polynomial `P`.
    pub fn kappa_integral(
        &mut self,
        g: u32,
        poly: &FormalPolynomial,
        psi: &[u32],
    ) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (a, c) in poly.terms() {
            acc += c * self.kappa_psi_number(g, a, psi)?;
        }
        Ok(acc)
    }

    /// `∫ 𝕂 ∏ψ^k` as `∫ K_w ∏ψ^k`, `w = 3g-3+n-|k|`, expanding `K_w` into kappa monomials.
    pub fn zk_via_kappa(&mut self, g: u32, psi: &[u32]) -> Result<Rational> {
        let n = psi.len() as i64;
        let w = 3 * g as i64 - 3 + n - psi.iter().sum::<u32>() as i64;
        if w < 0 {
            return Ok(Rational::zero());
        }
        let k = k_polynomials(w as usize).pop().unwrap();
        self.kappa_integral(g, &k.poly, psi)
    }

    /// `∫ 𝕂 ∏ψ^k` via the constant shift `t_{j+1} ↦ t_{j+1} + (-1)^{j+1}(2j+1)!!`.
    pub fn zk_via_shift(&mut self, g: u32, psi: &[u32]) -> Rational {
        let n = psi.len() as i64;
        let w = 3 * g as i64 - 3 + n - psi.iter().sum::<u32>() as i64;
        if w < 0 || 2 * g as i64 - 2 + n <= 0 {
            return Rational::zero();
        }
        let mut key = psi.to_vec();
        key.sort_unstable();
        if let Some(v) = self.shifted.get(&(g, key.clone())) {
            return v.clone();
        }
        let v = self.translate(g, psi, w as u32, |_, j| manin_zograf_shift(j));
        self.shifted.insert((g, key), v.clone());
        v
    }
}

/// `∫ κ^a ∏ψ^k` over `M_{g,n}`, `n = psi.len()`; zero off the dimension.
pub fn kappa_psi_number(g: u32, kappa: &[u32], psi: &[u32]) -> Result<Rational> {
    KappaEngine::new().kappa_psi_number(g, kappa, psi)
}

/// `∫_{M_g} 𝕂 = -|χ(M_g)|` for `g >= 2`.
pub fn zk_vacuum(g: u32) -> Result<Rational> {
    euler_characteristic_constant(g)
}

/// `∫ 𝕂 ∏ψ^k` on the lattice of `trunc`, by two routes required to agree.
pub fn zk_correlators(trunc: Truncation) -> Result<CorrelatorTable> {
    let mut engine = KappaEngine::new();
    let mut table = CorrelatorTable::new(Engine::Zk, trunc);
    for (g, k) in CorrelatorTable::lattice(Engine::Zk, trunc) {
        if 2 * g + k.len() as u32 <= 2 {
            continue;
        }
        let a = engine.zk_via_kappa(g, &k)?;
        let b = engine.zk_via_shift(g, &k);
        if a != b {
            return Err(Error::RouteMismatch(format!(
                "zk g={g} k={k:?}: {a} vs {b}"
            )));
        }
        table.insert(g, &k, a);
    }
    Ok(table)
}

/// `log Z^𝕂(s, ħ, t)` including the vacuum terms `-|χ(M_g)| (ħ s^{-2})^{g-1}`.
pub fn zk_series(table: &CorrelatorTable) -> Result<GradedSeries> {
    let mut s = table.to_series();
    for g in 2..=table.trunc.gmax {
        s.add_term(g as i32 - 1, 1 - g as i32, Monomial::one(), zk_vacuum(g)?);
    }
    Ok(s)
}

/// `Σ_j ∏ 1/(2^{j_i} j_i!)` weights of `ψ^{(k)} = Σ_j ψ^{k-j}/(2^j j!)`.
fn bracket_weight(j: u32) -> Rational {
    Rational::new(One::one(), factorial(j as u64) << j as usize)
}

/// `⟨∏τ_{(k_i)}⟩^𝕂` on the lattice of `trunc`, by two routes required to agree.
///
/// Route one expands each bracketed class; route two substitutes
/// `t_l ↦ Σ_j t_{l+j}/(2^j j!)` into the `s = 1` series of `zk`.
pub fn bracket_psi_correlators(zk: &CorrelatorTable) -> Result<CorrelatorTable> {
    let trunc = zk.trunc;
    let mut direct = CorrelatorTable::new(Engine::ZkBracket, trunc);
    for (g, k) in CorrelatorTable::lattice(Engine::ZkBracket, trunc) {
        let mut acc = Rational::zero();
        let mut j = alloc::vec![0u32; k.len()];
        loop {
            let lowered: Vec<u32> = k.iter().zip(&j).map(|(a, b)| a - b).collect();
            let v = zk.get(g, &lowered);
            if !v.is_zero() {
                acc += j.iter().fold(v, |acc, &x| acc * bracket_weight(x));
            }
            let mut i = 0;
            while i < k.len() && j[i] == k[i] {
                j[i] = 0;
                i += 1;
            }
            if i == k.len() {
                break;
            }
            j[i] += 1;
        }
        direct.insert(g, &k, acc);
    }

    let ungraded = Truncation::new(trunc.gmax, trunc.kmax, trunc.dmax, 0);
    let mut flat = GradedSeries::new(ungraded);
    for (g, k, v) in zk.iter() {
        let t = Monomial::from_indices(k);
        flat.add_term(
            g as i32 - 1,
            0,
            t.clone(),
            v / Rational::from_integer(t.symmetry()),
        );
    }
    let mut subs = Substitution::new();
    for l in 0..=trunc.kmax {
        let mut img = GradedSeries::new(ungraded);
        for j in 0..=trunc.kmax - l {
            img.add_term(0, 0, Monomial::from_indices(&[l + j]), bracket_weight(j));
        }
        subs.set(l, img);
    }
    let shifted = flat.substitute(&subs)?;
    for (g, k) in CorrelatorTable::lattice(Engine::ZkBracket, trunc) {
        let t = Monomial::from_indices(&k);
        let v = shifted.get(g as i32 - 1, 0, &t) * Rational::from_integer(t.symmetry());
        let d = direct.get(g, &k);
        if v != d {
            return Err(Error::RouteMismatch(format!(
                "zk-bracket g={g} k={k:?}: {d} vs {v}"
            )));
        }
    }
    Ok(direct)
}

/// `⟨τ_{(k)} τ_0⟩_0^𝕂 := 1/(2^{k+1}(k+1)!)`, the unstable two-point convention.
pub fn bracket_two_point(k: u32) -> Rational {
    Rational::new(One::one(), factorial(k as u64 + 1) << (k as usize + 1))
}

/// `∫_{M_{g,n}} K_m · κ^a ∏ψ^k`, which vanishes for `m > 2g-2+n` unless `(m, n) = (3g-3, 0)`.
pub fn vanishing_check(g: u32, m: u32, kappa: &[u32], psi: &[u32]) -> Result<Rational> {
    let n = psi.len() as u32;
    if n == 0 && m + 3 == 3 * g {
        return Err(Error::VanishingException { g, m });
    }
    if m + 2 <= 2 * g + n {
        return Err(Error::Domain(format!(
            "m = {m} is not above 2g-2+n = {}",
            2 * g + n - 2
        )));
    }
    let k = k_polynomials(m as usize).pop().unwrap();
    let mut poly = FormalPolynomial::zero();
    let mut e = kappa.to_vec();
    while e.last() == Some(&0) {
        e.pop();
    }
    poly.add_term(e, qi(1));
    KappaEngine::new().kappa_integral(g, &k.poly.mul(&poly), psi)
}

/// Kappa monomial exponents from sparse `(j, a_j)` pairs.
pub fn kappa_exponents(pairs: &[(u32, u32)]) -> Vec<u32> {
    let mut m: BTreeMap<u32, u32> = BTreeMap::new();
    for &(j, a) in pairs {
        *m.entry(j).or_default() += a;
    }
    let top = m.keys().next_back().copied().unwrap_or(0);
    (1..=top).map(|j| m.get(&j).copied().unwrap_or(0)).collect()
}
