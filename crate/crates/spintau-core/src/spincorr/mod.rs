//! Spin correlators, the unstable genus-zero terms, and the three constructions
//! of the generalised BGW free energy.
//!
//! Stable spin correlators are bracketed-psi integrals of `𝕂`; the genus-zero
//! slice is also produced by the topological recursion relation and by a
//! closed form, and the three must agree. The unstable `(0,1)` and `(0,2)`
//! terms enter `log Z^Ω` only through [`UnstableData`].

use crate::error::{Error, Result};
use crate::exactcore::{
    chi_abs, factorial, q, GradedSeries, Key, Monomial, Rational, Substitution, Truncation,
};
use crate::kappa::{bracket_psi_correlators, zk_correlators, zk_series, KappaEngine};
use crate::virasoro::{bgw_correlators, multi_indices, CorrelatorTable, Engine};
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{One, Zero};

fn inv_factorial(n: u64) -> Rational {
    Rational::new(BigInt::one(), factorial(n))
}

fn pow2(e: u32) -> BigInt {
    BigInt::one() << e as usize
}

/// `⟨τ_m⟩_0 = 2^{-(m+1)} / ((m+1)(2m+1) m!)`.
pub fn one_point(m: u32) -> Rational {
    let m64 = m as u64;
    Rational::new(
        BigInt::one(),
        pow2(m + 1) * BigInt::from((m64 + 1) * (2 * m64 + 1)),
    ) * inv_factorial(m64)
}

/// `⟨τ_{m_1} τ_{m_2}⟩_0 = 2^{-(|m|+1)} / ((|m|+1) m_1! m_2!)`.
pub fn two_point(m1: u32, m2: u32) -> Rational {
    let w = m1 + m2;
    Rational::new(BigInt::one(), pow2(w + 1) * BigInt::from(w + 1))
        * inv_factorial(m1 as u64)
        * inv_factorial(m2 as u64)
}

/// Genus-zero spin correlator in closed form,
/// `2^{-|m|-1} · 2(2|m|+n-1)!/(2|m|+2)! · ∏ 1/m_i!`, uniform in `n >= 1`.
pub fn genus0_closed_form(m: &[u32]) -> Rational {
    if m.is_empty() {
        return Rational::zero();
    }
    let w: u32 = m.iter().sum();
    let n = m.len() as u64;
    let p = Rational::new(
        factorial(2 * w as u64 + n - 1) * BigInt::from(2),
        factorial(2 * w as u64 + 2),
    );
    m.iter()
        .fold(p / Rational::from_integer(pow2(w + 1)), |acc, &x| {
            acc * inv_factorial(x as u64)
        })
}

/// Genus-zero correlators from the TRR, seeded by `⟨τ_0^3⟩_0 = 1` and the
/// two-point values `⟨τ_k τ_0⟩_0 = 1/(2^{k+1}(k+1)!)`.
#[derive(Default)]
pub struct Genus0Trr {
    memo: BTreeMap<Vec<u32>, Rational>,
}

impl Genus0Trr {
    pub fn new() -> Self {
        Self::default()
    }

    /// `⟨∏τ_{k_i}⟩_0` for any order of `k`; `n <= 2` returns the one- and
    /// two-point seed data.
    pub fn correlator(&mut self, k: &[u32]) -> Rational {
        match *k {
            [] => return Rational::zero(),
            [a] => return one_point(a),
            [a, b] => return two_point(a, b),
            _ => {}
        }
        let mut k = k.to_vec();
        k.sort_unstable_by(|a, b| b.cmp(a));
        self.solve(k)
    }

    /// `k` sorted descending.
    fn solve(&mut self, k: Vec<u32>) -> Rational {
        match k.as_slice() {
            [] | [_] => return Rational::zero(),
            [a, 0] => return Rational::new(BigInt::one(), factorial(*a as u64 + 1) * pow2(a + 1)),
            [_, _] => return Rational::zero(),
            [0, 0, 0] => return Rational::one(),
            _ => {}
        }
        if let Some(v) = self.memo.get(&k) {
            return v.clone();
        }
        let v = if k[0] == 0 {
            // Dilaton at genus zero with no psi classes: ⟨τ_0^n⟩ = (n-1)⟨τ_0^{n-1}⟩.
            let n = k.len() as i64;
            Rational::from_integer(BigInt::from(n - 1)) * self.solve(k[1..].to_vec())
        } else {
            let (k1, k2, k3) = (k[0], k[1], k[2]);
            let rest = &k[3..];
            let mut acc = Rational::zero();
            for mask in 0u32..(1 << rest.len()) {
                let mut left = alloc::vec![0, k1 - 1];
                let mut right = alloc::vec![0, k2, k3];
                for (i, &x) in rest.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        left.push(x);
                    } else {
                        right.push(x);
                    }
                }
                let l = self.correlator(&left);
                if l.is_zero() {
                    continue;
                }
                acc += l * self.correlator(&right);
            }
            acc
        };
        self.memo.insert(k, v.clone());
        v
    }
}

/// Genus-zero slice (`n >= 3`) of the spin table from the TRR.
pub fn genus0_spin_trr(trunc: Truncation) -> CorrelatorTable {
    let mut trr = Genus0Trr::new();
    let mut table = CorrelatorTable::new(Engine::Spin, trunc);
    for (g, k) in CorrelatorTable::lattice(Engine::Spin, trunc) {
        if g == 0 && k.len() >= 3 {
            let v = trr.correlator(&k);
            table.insert(0, &k, v);
        }
    }
    table
}

/// Spin correlators on the lattice of `trunc`.
///
/// Stable entries are the bracketed `𝕂` correlators; the genus-zero stable
/// slice is required to match the TRR and the closed form. The unstable
/// `(0,1)`, `(0,2)` entries come from their closed forms.
pub fn spin_correlators(trunc: Truncation) -> Result<CorrelatorTable> {
    let zk = zk_correlators(trunc)?;
    spin_from_bracket(&bracket_psi_correlators(&zk)?)
}

/// Spin table from an already computed bracket table.
pub fn spin_from_bracket(bracket: &CorrelatorTable) -> Result<CorrelatorTable> {
    let trunc = bracket.trunc;
    let mut trr = Genus0Trr::new();
    let mut table = CorrelatorTable::new(Engine::Spin, trunc);
    for (g, k) in CorrelatorTable::lattice(Engine::Spin, trunc) {
        let n = k.len() as u32;
        if Engine::Spin.s2_power(g, &k) < 0 {
            continue;
        }
        let v = if g == 0 && n <= 2 {
            genus0_closed_form(&k)
        } else {
            bracket.get(g, &k)
        };
        if g == 0 {
            let closed = genus0_closed_form(&k);
            let rec = trr.correlator(&k);
            if v != closed || v != rec {
                return Err(Error::RouteMismatch(format!(
                    "spin g=0 k={k:?}: bracket {v}, closed form {closed}, trr {rec}"
                )));
            }
        }
        table.insert(g, &k, v);
    }
    Ok(table)
}

/// Unstable genus-zero pieces and the normalising series, all within one truncation.
#[derive(Clone, Debug)]
pub struct UnstableData {
    /// `F_{0,1} = Σ_m ⟨τ_m⟩_0 t_m s^{2m+2}`.
    pub f01: GradedSeries,
    /// `F_{0,2} = Σ_{m_1,m_2} ⟨τ_{m_1}τ_{m_2}⟩_0 t_{m_1} t_{m_2} s^{2|m|+2}` over ordered pairs.
    pub f02: GradedSeries,
    /// `S_α = Σ α_m t_m/(2m+1)`, `α_m = (s²/2)^{m+1}/(m+1)!`.
    pub s_alpha: GradedSeries,
    /// `χ(ħ s^{-2}) = Σ_{g>=2} |χ(M_g)| (ħ s^{-2})^{g-1}`.
    pub chi: GradedSeries,
}

impl UnstableData {
    /// Every series is stored at ħ-power 0; callers shift by `ħ^{-1}` where needed.
    pub fn new(trunc: Truncation) -> Result<Self> {
        let mut f01 = GradedSeries::new(trunc);
        let mut f02 = GradedSeries::new(trunc);
        let mut s_alpha = GradedSeries::new(trunc);
        let mut chi = GradedSeries::new(trunc);
        for m in 0..=trunc.kmax {
            let t = Monomial::from_indices(&[m]);
            f01.add_term(0, m as i32 + 1, t.clone(), one_point(m));
            let alpha = Rational::new(BigInt::one(), pow2(m + 1) * factorial(m as u64 + 1));
            s_alpha.add_term(0, m as i32 + 1, t, alpha * q(1, 2 * m as i64 + 1));
            for m2 in 0..=trunc.kmax {
                let t = Monomial::from_indices(&[m, m2]);
                f02.add_term(0, (m + m2) as i32 + 1, t, two_point(m, m2));
            }
        }
        for g in 2..=trunc.gmax {
            chi.add_term(g as i32 - 1, 1 - g as i32, Monomial::one(), chi_abs(g)?);
        }
        Ok(UnstableData {
            f01,
            f02,
            s_alpha,
            chi,
        })
    }
}

fn hbar_inv(s: &GradedSeries) -> GradedSeries {
    s.shift(-1, 0, &Monomial::one())
}

/// `log Z^Ω`: stable spin correlators with their s-grading plus `ħ^{-1}(F_{0,1} + ½F_{0,2})`.
pub fn assemble_z_omega(spin: &CorrelatorTable, unstable: &UnstableData) -> Result<GradedSeries> {
    let stable = spin.filter(|g, k| 2 * g + k.len() as u32 > 2).to_series();
    stable
        .add(&hbar_inv(&unstable.f01))?
        .add(&hbar_inv(&unstable.f02).scale(&q(1, 2)))
}

/// `log(𝒟 · Z^𝕂)` for `log Z^𝕂` given with its vacuum terms:
/// `χ + ħ^{-1}S_α + ½ħ^{-1}F_{0,2} + log Z^𝕂(t')`, `t'_k = Σ_m (s²/2)^m t_{k+m}/m!`.
pub fn d_operator_apply(zk: &GradedSeries, unstable: &UnstableData) -> Result<GradedSeries> {
    let trunc = zk.truncation();
    let mut subs = Substitution::new();
    for k in 0..=trunc.kmax {
        let mut img = GradedSeries::new(trunc);
        for m in 0..=trunc.kmax - k {
            let c = Rational::new(BigInt::one(), pow2(m) * factorial(m as u64));
            img.add_term(0, m as i32, Monomial::from_indices(&[k + m]), c);
        }
        subs.set(k, img);
    }
    let out = zk
        .substitute(&subs)?
        .add(&unstable.chi)?
        .add(&hbar_inv(&unstable.s_alpha))?
        .add(&hbar_inv(&unstable.f02).scale(&q(1, 2)))?;
    if let Some((k, v)) = out.constant_part().iter().next() {
        return Err(Error::Normalization(format!(
            "log(D Z^K) has constant {v} at hbar^{} s^{}",
            k.h,
            2 * k.a
        )));
    }
    Ok(out)
}

/// Outcome of the three-way comparison of free energies.
#[derive(Clone, Debug)]
pub struct TripleRouteReport {
    pub trunc: Truncation,
    /// Nonzero coefficients of `log Z^BGW` inside the truncation.
    pub coefficients: usize,
    /// Keys where the routes differ: `(key, bgw, z_omega, d_zk)`.
    pub mismatches: Vec<(Key, Rational, Rational, Rational)>,
}

impl TripleRouteReport {
    pub fn summary(&self) -> String {
        format!(
            "{} coefficients, {} mismatches",
            self.coefficients,
            self.mismatches.len()
        )
    }
}

/// The three free energies compared by [`triple_route_compare`].
pub struct ThreeRoutes {
    pub bgw: GradedSeries,
    pub z_omega: GradedSeries,
    pub d_zk: GradedSeries,
}

/// Build `log Z^BGW`, `log Z^Ω` and `log(𝒟 Z^𝕂)` on `trunc`.
pub fn three_routes(trunc: Truncation) -> Result<ThreeRoutes> {
    let bgw = bgw_correlators(trunc).to_series();
    let zk = zk_correlators(trunc)?;
    let unstable = UnstableData::new(trunc)?;
    let spin = spin_from_bracket(&bracket_psi_correlators(&zk)?)?;
    let z_omega = assemble_z_omega(&spin, &unstable)?;
    let d_zk = d_operator_apply(&zk_series(&zk)?, &unstable)?;
    Ok(ThreeRoutes { bgw, z_omega, d_zk })
}

/// Compare three routes key by key; the lattice is the union of their supports.
pub fn compare_routes(trunc: Truncation, r: &ThreeRoutes) -> TripleRouteReport {
    let mut keys: Vec<Key> = r
        .bgw
        .iter()
        .chain(r.z_omega.iter())
        .chain(r.d_zk.iter())
        .map(|(k, _)| k.clone())
        .collect();
    keys.sort();
    keys.dedup();
    let mut mismatches = Vec::new();
    for key in keys {
        let a = r.bgw.get(key.h, key.a, &key.t);
        let b = r.z_omega.get(key.h, key.a, &key.t);
        let c = r.d_zk.get(key.h, key.a, &key.t);
        if a != b || a != c {
            mismatches.push((key, a, b, c));
        }
    }
    TripleRouteReport {
        trunc,
        coefficients: r.bgw.len(),
        mismatches,
    }
}

pub fn triple_route_compare(trunc: Truncation) -> Result<TripleRouteReport> {
    Ok(compare_routes(trunc, &three_routes(trunc)?))
}

/// Multi-indices with `n <= nmax` and `|m| <= wmax`, for the genus-zero three-route check.
pub fn genus0_indices(nmax: u32, wmax: u32) -> Vec<Vec<u32>> {
    (1..=nmax)
        .flat_map(|n| multi_indices(n, wmax, wmax))
        .collect()
}

/// On-demand spin correlators at any `(g, k)`, outside a fixed truncation.
///
/// Genus zero uses the closed form; higher genus expands the bracketed
/// classes over `∫ 𝕂 ψ^k` computed by the Manin–Zograf shift.
#[derive(Default)]
pub struct SpinEngine {
    kappa: KappaEngine,
    memo: BTreeMap<(u32, Vec<u32>), Rational>,
}

impl SpinEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn correlator(&mut self, g: u32, k: &[u32]) -> Rational {
        let mut k = k.to_vec();
        k.sort_unstable();
        if k.is_empty() || Engine::Spin.s2_power(g, &k) < 0 {
            return Rational::zero();
        }
        if g == 0 {
            return genus0_closed_form(&k);
        }
        if let Some(v) = self.memo.get(&(g, k.clone())) {
            return v.clone();
        }
        let mut acc = Rational::zero();
        let mut j = alloc::vec![0u32; k.len()];
        loop {
            let lowered: Vec<u32> = k.iter().zip(&j).map(|(a, b)| a - b).collect();
            let v = self.kappa.zk_via_shift(g, &lowered);
            if !v.is_zero() {
                acc += j.iter().fold(v, |acc, &x| {
                    acc * Rational::new(BigInt::one(), pow2(x) * factorial(x as u64))
                });
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
        self.memo.insert((g, k), acc.clone());
        acc
    }
}
