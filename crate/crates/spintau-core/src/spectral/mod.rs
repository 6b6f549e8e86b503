//! Topological recursion on `x = z²/2` curves with a single branch point.
//!
//! Differentials are odd in every variable and are reported in the basis
//! `ξ_k(z) = (2k+1)!! z^{-(2k+2)} dz`. The four built-in curves reproduce the
//! KW, BGW, kappa and super-volume tables; [`compare_to_tables`],
//! [`eta_reexpand`] and [`cns_laplace_check`] cross-check them.

mod curve;
mod recursion;

pub use curve::{CurveLabel, SpectralCurve, PI2, S2};
pub use recursion::{RawDifferential, Recursion};

use crate::error::{Error, Result};
use crate::exactcore::{double_factorial, factorial, FormalPolynomial, Rational};
use crate::kappa::KappaEngine;
use crate::spincorr::SpinEngine;
use crate::supervol::volume_polynomial;
use crate::virasoro::{Engine, Model, VirasoroSolver};
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `ω_{g,n}` in the ξ basis: `(g, n) ↦ (k_1..k_n) ↦ coefficient in ℚ[s², π²]`.
///
/// Index vectors are ordered; a symmetric table stores every permutation.
#[derive(Clone, Debug, PartialEq)]
pub struct OddDifferentialTable {
    pub label: CurveLabel,
    pub entries: BTreeMap<(u32, u32), BTreeMap<Vec<u32>, FormalPolynomial>>,
}

impl OddDifferentialTable {
    pub fn get(&self, g: u32, k: &[u32]) -> FormalPolynomial {
        self.entries
            .get(&(g, k.len() as u32))
            .and_then(|m| m.get(k))
            .cloned()
            .unwrap_or_default()
    }

    /// Every stored vector has each permutation stored with the same value.
    pub fn is_symmetric(&self) -> bool {
        self.entries.values().all(|m| {
            m.iter().all(|(k, v)| {
                (0..k.len()).all(|i| {
                    (i + 1..k.len()).all(|j| {
                        let mut p = k.clone();
                        p.swap(i, j);
                        m.get(&p).cloned().unwrap_or_default() == *v
                    })
                })
            })
        })
    }

    /// `k_i ↦ Σ_{j} s^{2j}/(2^j j!)` applied to each leg, keeping `k'_i <= kmax`.
    pub fn map_legs(&self, kmax: u32) -> Self {
        let mut entries = BTreeMap::new();
        for (&(g, n), m) in &self.entries {
            let mut out: BTreeMap<Vec<u32>, FormalPolynomial> = BTreeMap::new();
            for (k, v) in m {
                if k.iter().any(|&e| e > kmax) {
                    continue;
                }
                let mut partial: Vec<(Vec<u32>, FormalPolynomial)> = alloc::vec![(Vec::new(), v.clone())];
                for &e in k {
                    let mut next = Vec::new();
                    for (prefix, c) in &partial {
                        for j in 0..=kmax - e {
                            let mut p = prefix.clone();
                            p.push(e + j);
                            next.push((p, c.mul(&eta_leg(j))));
                        }
                    }
                    partial = next;
                }
                for (p, c) in partial {
                    let slot = out.entry(p).or_default();
                    *slot = slot.add(&c);
                }
            }
            out.retain(|_, c| !c.is_zero());
            entries.insert((g, n), out);
        }
        OddDifferentialTable { label: self.label, entries }
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for (&(g, n), m) in &self.entries {
            for (k, v) in m {
                s.push_str(&format!("omega[{g},{n}] {k:?} = {}\n", render_even(v)));
            }
        }
        s
    }
}

/// Coefficients in `s²` and `π²` printed as even powers of `s` and `π`.
pub fn render_even(v: &FormalPolynomial) -> String {
    v.render_by(|i, k| {
        let name = if i == S2 { "s" } else { "pi" };
        format!("{name}^{}", 2 * k)
    })
}

/// `s^{2j}/(2^j j!)`.
fn eta_leg(j: u32) -> FormalPolynomial {
    FormalPolynomial::monomial(
        S2,
        j,
        Rational::new(BigInt::one(), (BigInt::one() << j as usize) * factorial(j as u64)),
    )
}

/// Raw pole vectors to the ξ basis; every pole order is even and >= 2.
pub fn to_xi_basis(raw: &BTreeMap<(u32, u32), RawDifferential>, label: CurveLabel) -> Result<OddDifferentialTable> {
    let mut entries = BTreeMap::new();
    for (&(g, n), w) in raw {
        let mut m = BTreeMap::new();
        for (e, c) in w {
            let mut k = Vec::with_capacity(e.len());
            let mut norm = BigInt::one();
            for &p in e {
                if p < 2 || p % 2 == 1 {
                    return Err(Error::Domain(format!("pole order {p} is not even")));
                }
                let kk = p / 2 - 1;
                norm *= double_factorial(2 * kk as i64 + 1)?;
                k.push(kk);
            }
            m.insert(k, c.scale(&Rational::new(BigInt::one(), norm)));
        }
        entries.insert((g, n), m);
    }
    Ok(OddDifferentialTable { label, entries })
}

/// `ω_{g,n}` for all stable `g <= gmax`, `1 <= n <= nmax`.
pub fn tr_correlators(curve: &SpectralCurve, gmax: u32, nmax: u32) -> Result<OddDifferentialTable> {
    let chi_max = 2 * gmax + nmax - 2;
    let mut t = tr_by_chi(curve, chi_max)?;
    t.entries.retain(|&(g, n), _| g <= gmax && n <= nmax);
    Ok(t)
}

/// `ω_{g,n}` for all stable `(g, n)` with `n >= 1` and `2g - 2 + n <= chi_max`.
pub fn tr_by_chi(curve: &SpectralCurve, chi_max: u32) -> Result<OddDifferentialTable> {
    let raw = Recursion::new(curve).run(chi_max)?;
    to_xi_basis(&raw, curve.label)
}

/// Outcome of a table comparison; `mismatches` names each failing lattice point.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CompareReport {
    pub checked: usize,
    pub mismatches: Vec<String>,
}

impl CompareReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.checked > 0
    }

    fn check(&mut self, what: String, got: &FormalPolynomial, want: &FormalPolynomial) {
        self.checked += 1;
        if got != want {
            self.mismatches.push(format!(
                "{what}: recursion {} vs table {}",
                render_even(&got),
                render_even(&want)
            ));
        }
    }
}

/// Index vectors of length `n` with entries summing to at most `cap`.
fn index_vectors(n: u32, cap: u32) -> Vec<Vec<u32>> {
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

fn constant(c: Rational) -> FormalPolynomial {
    FormalPolynomial::constant(c)
}

/// Compare a recursion table with the intersection-number tables:
///
/// * airy: `⟨τ_k⟩^KW_g`;
/// * bessel: the BGW `Θ` numbers (s²-power 0 slice);
/// * ck: `Σ ∫ 𝕂 ψ^k` times `s^{2(1-g+|k|)}`, zero when that power is negative.
///
/// Every index vector with `|k| <= 3g - 3 + n` is checked, both orderings.
pub fn compare_to_tables(table: &OddDifferentialTable) -> Result<CompareReport> {
    let mut rep = CompareReport::default();
    let mut kw = VirasoroSolver::new(Model::Kw);
    let mut bgw = VirasoroSolver::new(Model::Bgw);
    let mut kappa = KappaEngine::new();
    for &(g, n) in table.entries.keys() {
        let dim = 3 * g + n - 3;
        for k in index_vectors(n, dim) {
            let got = table.get(g, &k);
            let w: u32 = k.iter().sum();
            let want = match table.label {
                CurveLabel::Airy => constant(if w == dim { kw.correlator(g, &k) } else { Rational::zero() }),
                CurveLabel::Bessel => {
                    let a = Engine::Bgw.s2_power(g, &k);
                    constant(if a == 0 { bgw.correlator(g, &k) } else { Rational::zero() })
                }
                CurveLabel::Ck => {
                    let a = Engine::Zk.s2_power(g, &k);
                    let v = kappa.zk_via_shift(g, &k);
                    if a < 0 {
                        if !v.is_zero() {
                            rep.mismatches.push(format!("zk({g},{k:?}) nonzero below s^0"));
                        }
                        FormalPolynomial::zero()
                    } else {
                        FormalPolynomial::monomial(S2, a as u32, v)
                    }
                }
                CurveLabel::Cns => {
                    return Err(Error::Domain("cns is compared through cns_laplace_check".into()))
                }
            };
            rep.check(format!("{}[{g}]{k:?}", table.label.tag()), &got, &want);
        }
        for k in table.entries[&(g, n)].keys() {
            if k.iter().sum::<u32>() > dim {
                rep.mismatches.push(format!("{}[{g}]{k:?} above the dimension", table.label.tag()));
            }
        }
    }
    Ok(rep)
}

/// `s → 0` limit of a table (coefficients with no s² factor).
pub fn at_s_zero(table: &OddDifferentialTable) -> BTreeMap<(u32, u32), BTreeMap<Vec<u32>, FormalPolynomial>> {
    table
        .entries
        .iter()
        .map(|(key, m)| {
            let m = m
                .iter()
                .filter_map(|(k, v)| {
                    let mut c = FormalPolynomial::zero();
                    for (e, x) in v.terms() {
                        if e.get(S2).copied().unwrap_or(0) == 0 {
                            c.add_term(e.clone(), x.clone());
                        }
                    }
                    (!c.is_zero()).then(|| (k.clone(), c))
                })
                .collect();
            (*key, m)
        })
        .collect()
}

/// `ck` table re-expanded in `η = √(z² + s²)`, legs with `k' <= kmax`.
pub fn eta_reexpand(table: &OddDifferentialTable, kmax: u32) -> OddDifferentialTable {
    table.map_legs(kmax)
}

/// Compare an η-expanded ck table with spin correlators `⟨τ_k⟩^Ω_g s^{2(1-g+|k|)}`.
pub fn compare_eta_to_spin(eta: &OddDifferentialTable, kmax: u32) -> CompareReport {
    let mut rep = CompareReport::default();
    let mut spin = SpinEngine::new();
    for &(g, n) in eta.entries.keys() {
        for k in index_vectors(n, kmax * n) {
            if k.iter().any(|&e| e > kmax) {
                continue;
            }
            let a = Engine::Spin.s2_power(g, &k);
            let want = if a < 0 {
                FormalPolynomial::zero()
            } else {
                FormalPolynomial::monomial(S2, a as u32, spin.correlator(g, &k))
            };
            rep.check(format!("eta[{g}]{k:?}"), &eta.get(g, &k), &want);
        }
    }
    rep
}

/// Result of matching the cns recursion against the Laplace transform of `V̂_{g,n}(0, L)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaplaceReport {
    /// Per-leg sign `ε` fixed at `(1,1)`: ω = Π(ε · leg factor) · V̂ coefficient.
    pub leg_sign: i32,
    pub report: CompareReport,
}

/// `∂_z ℒ{L^{2k}} = -(2k+1)!/z^{2k+2}`, i.e. `-2^k k!` in the ξ basis.
fn laplace_leg(k: u32) -> Rational {
    Rational::from_integer(-(BigInt::one() << k as usize) * factorial(k as u64))
}

/// `V̂` coefficients carry π² as symbol 0; spectral coefficients use [`PI2`].
fn volume_to_spectral(v: &FormalPolynomial) -> FormalPolynomial {
    let mut out = FormalPolynomial::zero();
    for (e, c) in v.terms() {
        out.add_term(alloc::vec![0, e.first().copied().unwrap_or(0)], c.clone());
    }
    out
}

/// Check `ω^{cns}_{g,n} = Π_i ε ∂_{z_i} ℒ{V̂_{g,n}(0, L)}` for every `(g, n)` in `table`.
///
/// The single sign `ε` is read off at `(1,1)` and then held fixed.
pub fn cns_laplace_check(table: &OddDifferentialTable) -> Result<LaplaceReport> {
    if table.label != CurveLabel::Cns {
        return Err(Error::Domain("Laplace check needs the cns curve".into()));
    }
    let w11 = table.get(1, &[0]);
    let v11 = volume_to_spectral(&volume_polynomial(1, 1, 0).coefficient(0, &[0]));
    let lap11 = v11.scale(&laplace_leg(0));
    let leg_sign = if w11 == lap11 {
        1
    } else if w11 == lap11.neg() {
        -1
    } else {
        return Err(Error::RouteMismatch("cns (1,1) differs from the Laplace side beyond a sign".into()));
    };
    let mut rep = CompareReport::default();
    for &(g, n) in table.entries.keys() {
        let vol = volume_polynomial(g, n, 0);
        let dim = 3 * g + n - 3;
        for k in index_vectors(n, dim) {
            let mut f = Rational::one();
            for &e in &k {
                f *= laplace_leg(e) * Rational::from_integer(BigInt::from(leg_sign));
            }
            let want = volume_to_spectral(&vol.coefficient(0, &k)).scale(&f);
            rep.check(format!("cns[{g}]{k:?}"), &table.get(g, &k), &want);
        }
    }
    Ok(LaplaceReport { leg_sign, report: rep })
}

/// Recompute at doubled series order; a truncated curve must give the same table.
pub fn order_stable(curve: &SpectralCurve, chi_max: u32) -> Result<bool> {
    let a = tr_by_chi(curve, chi_max)?;
    let bigger = curve.with_order(curve.order().unwrap_or(0) * 2 + 2)?;
    let b = tr_by_chi(&bigger, chi_max)?;
    Ok(a.entries == b.entries)
}

/// Smallest cns order that reaches every residue for `2g - 2 + n <= chi_max`.
pub fn required_order(chi_max: u32) -> usize {
    // Pole orders of ω_{g,n} stay below 2(3g-3+n)+2 <= 3 chi_max + 2.
    (3 * chi_max as usize + 4) / 2 + 1
}
