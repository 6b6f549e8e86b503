//! Integral form of the super volume recursion, evaluated numerically.
//!
//! `V̂` are polynomials in `L²` at each order in `s²`, so every integral reduces
//! to finitely many kernel moments. Residuals are reported per `s²`-order.

use crate::numerics::{base_moment, beta_factor, eval_pi2, float, NumericError, Scheme, PREC};
use rayon::prelude::*;
use rug::ops::Pow;
use rug::Float;
use spintau_core::supervol::volume_polynomial;
use std::collections::BTreeMap;

/// Overall factor on both kernels `D` and `R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KernelNormalization {
    /// `D` and `R` exactly as defined in [`crate::numerics`].
    AsWritten,
    /// `D / 2π` and `R / 2π`.
    InverseTwoPi,
}

impl KernelNormalization {
    pub fn tag(self) -> &'static str {
        match self {
            KernelNormalization::AsWritten => "as-written",
            KernelNormalization::InverseTwoPi => "inverse-2pi",
        }
    }

    fn factor(self) -> Float {
        match self {
            KernelNormalization::AsWritten => float(1.0),
            KernelNormalization::InverseTwoPi => {
                float(1.0) / (Float::with_val(PREC, rug::float::Constant::Pi) * 2u32)
            }
        }
    }
}

/// Which unstable volumes enter the product term `P_{g,n+1}`, and the kernel scale.
///
/// The boundary term `R` always uses `V̂_{g,n-1}` when `n >= 2`, unstable or not.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Convention {
    pub include_v01: bool,
    pub include_v02: bool,
    pub normalization: KernelNormalization,
}

impl Convention {
    /// Every flag combination, as-written kernels first.
    pub fn all() -> Vec<Convention> {
        let mut out = Vec::new();
        for normalization in [KernelNormalization::AsWritten, KernelNormalization::InverseTwoPi] {
            for (include_v01, include_v02) in [(false, false), (false, true), (true, false), (true, true)] {
                out.push(Convention { include_v01, include_v02, normalization });
            }
        }
        out
    }

    pub fn label(&self) -> String {
        format!(
            "include_V01={} include_V02={} kernel={}",
            self.include_v01,
            self.include_v02,
            self.normalization.tag()
        )
    }

    fn admits(&self, g: u32, n: u32) -> bool {
        match (g, n) {
            (0, 1) => self.include_v01,
            (0, 2) => self.include_v02,
            _ => true,
        }
    }
}

/// `(s²-order, k) ↦ numeric coefficient` of `V̂_{g,n}` with π² substituted.
type Numeric = Vec<(i32, Vec<u32>, Float)>;

struct Volumes {
    smax: u32,
    cache: BTreeMap<(u32, u32), Numeric>,
}

impl Volumes {
    fn get(&mut self, g: u32, n: u32) -> &Numeric {
        let smax = self.smax;
        self.cache.entry((g, n)).or_insert_with(|| {
            volume_polynomial(g, n, smax)
                .terms
                .iter()
                .map(|((a, k), v)| (*a, k.clone(), eval_pi2(v)))
                .collect()
        })
    }
}

/// Moment requests `(p, x)` collected first, then evaluated in parallel.
#[derive(Default)]
struct Moments {
    keys: BTreeMap<(u32, String), Float>,
    values: BTreeMap<(u32, String), Float>,
}

impl Moments {
    fn key(x: &Float) -> String {
        x.to_string_radix(16, None)
    }

    fn want(&mut self, p: u32, x: &Float) {
        self.keys.insert((p, Self::key(x)), x.clone());
    }

    /// Evaluate every requested moment not already known.
    fn evaluate(&mut self, scheme: Scheme, tol: f64) -> Result<(), NumericError> {
        let keys: Vec<_> = self.keys.iter().filter(|(k, _)| !self.values.contains_key(*k)).collect();
        let out: Result<Vec<_>, _> = keys
            .par_iter()
            .map(|((p, k), x)| base_moment(*p, x, scheme, tol).map(|v| ((*p, k.clone()), v)))
            .collect();
        self.values.extend(out?);
        Ok(())
    }

    fn get(&self, p: u32, x: &Float) -> &Float {
        &self.values[&(p, Self::key(x))]
    }
}

/// One summand of the right-hand side before its moment is known.
enum Term {
    /// `c ∫ u^p D(x, u, 0) du`.
    D { c: Float, p: u32, x: Float },
    /// `c (∫ u^p D(l1+lj, u, 0) du + ∫ u^p D(l1-lj, u, 0) du) / 2`.
    R { c: Float, p: u32, plus: Float, minus: Float },
    /// Polynomial term.
    Plain(Float),
}

fn mono(k: &[u32], l: &[f64]) -> Float {
    k.iter().zip(l).fold(float(1.0), |acc, (&e, &x)| acc * float(x).pow(2 * e))
}

/// Per-order residuals `|LHS - RHS|` of the recursion at `(g, n)` and lengths `l`.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    pub g: u32,
    pub n: u32,
    pub l: Vec<f64>,
    pub convention: Convention,
    /// `(s²-order, lhs, rhs, |lhs - rhs|)`.
    pub orders: Vec<(u32, f64, f64, f64)>,
}

impl ResidualReport {
    pub fn max_residual(&self) -> f64 {
        self.orders.iter().map(|o| o.3).fold(0.0, f64::max)
    }
}

/// Residuals at `(g, n)` and lengths `l` for one convention.
pub fn recursion_residual(
    g: u32,
    n: u32,
    l: &[f64],
    smax: u32,
    convention: Convention,
    scheme: Scheme,
    tol: f64,
) -> Result<ResidualReport, NumericError> {
    Ok(recursion_residuals(g, n, l, smax, &[convention], scheme, tol)?.remove(0))
}

/// Residuals for several conventions; kernel moments are computed once and shared.
pub fn recursion_residuals(
    g: u32,
    n: u32,
    l: &[f64],
    smax: u32,
    conventions: &[Convention],
    scheme: Scheme,
    tol: f64,
) -> Result<Vec<ResidualReport>, NumericError> {
    assert_eq!(l.len(), n as usize, "one length per boundary");
    assert!(n >= 1);
    let mut vols = Volumes { smax, cache: BTreeMap::new() };
    let mut moments = Moments::default();
    let mut reports = Vec::new();
    for &convention in conventions {
        let (lhs, rhs) = assemble(g, n, l, smax, convention, &mut vols);
        for t in rhs.iter().flatten() {
            match t {
                Term::D { p, x, .. } => moments.want(*p, x),
                Term::R { p, plus, minus, .. } => {
                    moments.want(*p, plus);
                    moments.want(*p, minus);
                }
                Term::Plain(_) => {}
            }
        }
        moments.evaluate(scheme, tol)?;
        let scale = convention.normalization.factor();
        let mut orders = Vec::new();
        for (a, terms) in rhs.iter().enumerate() {
            let mut r = float(0.0);
            for t in terms {
                r += match t {
                    Term::D { c, p, x } => Float::with_val(PREC, c * moments.get(*p, x)) * &scale,
                    Term::R { c, p, plus, minus } => {
                        Float::with_val(PREC, moments.get(*p, plus) + moments.get(*p, minus)) * c * &scale / 2u32
                    }
                    Term::Plain(v) => v.clone(),
                };
            }
            let diff = Float::with_val(PREC, &lhs[a] - &r).abs();
            orders.push((a as u32, lhs[a].to_f64(), r.to_f64(), diff.to_f64()));
        }
        reports.push(ResidualReport { g, n, l: l.to_vec(), convention, orders });
    }
    Ok(reports)
}

/// Left-hand side per order and the unevaluated right-hand side terms.
fn assemble(
    g: u32,
    n: u32,
    l: &[f64],
    smax: u32,
    convention: Convention,
    vols: &mut Volumes,
) -> (Vec<Float>, Vec<Vec<Term>>) {
    let mut lhs: Vec<Float> = (0..=smax).map(|_| float(0.0)).collect();
    let mut rhs: Vec<Vec<Term>> = (0..=smax).map(|_| Vec::new()).collect();
    let l1 = l[0];
    let rest: Vec<usize> = (1..n as usize).collect();

    for (a, k, c) in vols.get(g, n).clone() {
        lhs[a as usize] += c * mono(&k, l) * l1;
    }

    // ½ ∫∫ xy D(L1, x, y) V̂_{g-1,n+1}(x, y, L_K).
    if g >= 1 && convention.admits(g - 1, n + 1) {
        let legs: Vec<f64> = rest.iter().map(|&i| l[i]).collect();
        for (a, k, c) in vols.get(g - 1, n + 1).clone() {
            let (p, q) = (2 * k[0] + 1, 2 * k[1] + 1);
            let c = c * mono(&k[2..], &legs) * beta_factor(p, q) / 2u32;
            rhs[a as usize].push(Term::D { c, p: p + q + 1, x: float(l1) });
        }
    }

    // ½ ∫∫ xy D(L1, x, y) V̂_{g1}(x, L_I) V̂_{g2}(y, L_J).
    let m = rest.len();
    for mask in 0u32..(1 << m) {
        let i_legs: Vec<f64> = (0..m).filter(|b| mask >> b & 1 == 1).map(|b| l[rest[b]]).collect();
        let j_legs: Vec<f64> = (0..m).filter(|b| mask >> b & 1 == 0).map(|b| l[rest[b]]).collect();
        for g1 in 0..=g {
            let (n1, n2) = (1 + i_legs.len() as u32, 1 + j_legs.len() as u32);
            let g2 = g - g1;
            if !convention.admits(g1, n1) || !convention.admits(g2, n2) {
                continue;
            }
            let va = vols.get(g1, n1).clone();
            let vb = vols.get(g2, n2).clone();
            for (a1, k1, c1) in &va {
                for (a2, k2, c2) in &vb {
                    let a = (a1 + a2) as usize;
                    if a > smax as usize {
                        continue;
                    }
                    let (p, q) = (2 * k1[0] + 1, 2 * k2[0] + 1);
                    let c = Float::with_val(PREC, c1 * c2)
                        * mono(&k1[1..], &i_legs)
                        * mono(&k2[1..], &j_legs)
                        * beta_factor(p, q)
                        / 2u32;
                    rhs[a].push(Term::D { c, p: p + q + 1, x: float(l1) });
                }
            }
        }
    }

    // Σ_j ∫ x R(L1, Lj, x) V̂_{g,n-1}(x, L_{K∖j}).
    if n >= 2 {
        for &j in &rest {
            let others: Vec<f64> = rest.iter().filter(|&&i| i != j).map(|&i| l[i]).collect();
            for (a, k, c) in vols.get(g, n - 1).clone() {
                let c = c * mono(&k[1..], &others);
                rhs[a as usize].push(Term::R {
                    c,
                    p: 2 * k[0] + 1,
                    plus: float(l1) + float(l[j]),
                    minus: float(l1) - float(l[j]),
                });
            }
        }
    }

    // δ_{1,n}(s² δ_{0,g}/2 + δ_{1,g}/8) L1.
    if n == 1 && g == 0 && smax >= 1 {
        rhs[1].push(Term::Plain(float(l1) / 2u32));
    }
    if n == 1 && g == 1 {
        rhs[0].push(Term::Plain(float(l1) / 8u32));
    }

    (lhs, rhs)
}
