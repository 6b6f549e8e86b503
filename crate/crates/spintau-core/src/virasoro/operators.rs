//! Virasoro operators acting on free energies, and the residual checks built on them.
//!
//! All operators act on `F = log Z` through `Z^{-1} L_m Z`, which turns the
//! second-order part into `F_ij + F_i F_j`. Each residual is restricted to the
//! region where the truncated input determines it completely.

use crate::error::{Error, Result};
use crate::exactcore::{
    double_factorial, q, qi, Coeff, GradedSeries, Monomial, Rational, Truncation,
};
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

/// Which constraint family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    /// `((2m+3)!! ∂_{m+1} - L_m) Z^KW = 0`, `m >= -1`.
    Kw,
    /// `((2m+1)!! ∂_m - L_m - ½ħ^{-1}s² δ_{m,0}) Z^BGW = 0`, `m >= 0`.
    Bgw,
    /// `((2m+1)!! ∂_m - s² L_{m-1} - L_m) Z^𝕂 = 0`, `m >= 0`.
    Kappa,
}

/// Coefficient data of `L_m` for the range `m_min..=m_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VirasoroSpec {
    pub model: Model,
    pub m_min: i64,
    pub m_max: i64,
}

impl VirasoroSpec {
    pub fn new(model: Model, m_max: i64) -> Self {
        let m_min = if model == Model::Kw { -1 } else { 0 };
        VirasoroSpec {
            model,
            m_min,
            m_max,
        }
    }

    /// `(i, j, ½A_ij)` for the `½ħ Σ_{i+j=m-1} A_ij ∂_i∂_j` part (ordered pairs).
    pub fn quadratic_terms(&self, m: i64) -> Vec<(u32, u32, Rational)> {
        (0..m.max(0))
            .map(|i| {
                (
                    i as u32,
                    (m - 1 - i) as u32,
                    quadratic_coefficient(i, m - 1 - i) * q(1, 2),
                )
            })
            .collect()
    }

    /// `(i, B_{i,m})` for the `Σ B_{i,m} t_i ∂_{i+m}` part, `i + m <= kmax`.
    pub fn linear_terms(&self, m: i64, kmax: u32) -> Vec<(u32, Rational)> {
        ((-m).max(0)..=kmax as i64 - m)
            .map(|i| (i as u32, linear_coefficient(i, m)))
            .collect()
    }

    /// Constant part as `(h, a, monomial, coefficient)`: `1/8` at `m = 0`,
    /// `t_0²/(2ħ)` at `m = -1`; the BGW shift `½ħ^{-1}s²` at `m = 0`.
    pub fn constant_terms(&self, m: i64) -> Vec<(i32, i32, Monomial, Rational)> {
        let mut v = Vec::new();
        if m == 0 {
            v.push((0, 0, Monomial::one(), q(1, 8)));
            if self.model == Model::Bgw {
                v.push((-1, 1, Monomial::one(), q(1, 2)));
            }
        }
        if m == -1 {
            v.push((-1, 0, Monomial::from_indices(&[0, 0]), q(1, 2)));
        }
        v
    }

    fn check(&self, m: i64) -> Result<()> {
        if m < self.m_min || m > self.m_max {
            Err(Error::VirasoroRange(m))
        } else {
            Ok(())
        }
    }
}

/// `A_ij = (2i+1)!! (2j+1)!!`.
pub fn quadratic_coefficient(i: i64, j: i64) -> Rational {
    Rational::from_integer(
        double_factorial(2 * i + 1).unwrap() * double_factorial(2 * j + 1).unwrap(),
    )
}

/// `B_{i,m} = (2i+2m+1)!! / (2i-1)!!`, for `i + m >= 0`.
pub fn linear_coefficient(i: i64, m: i64) -> Rational {
    Rational::new(
        double_factorial(2 * i + 2 * m + 1).unwrap(),
        double_factorial(2 * i - 1).unwrap(),
    )
}

/// `Z^{-1} L_m Z` in terms of `F = log Z`, without the BGW shift.
pub fn l_operator<C: Coeff>(f: &GradedSeries<C>, m: i64) -> Result<GradedSeries<C>> {
    let trunc = f.truncation();
    // One extra ħ-power so `ħF_i` survives before the product lowers it again.
    let f = &f.restrict(Truncation::new(
        trunc.gmax + 1,
        trunc.kmax,
        trunc.dmax,
        trunc.smax,
    ));
    let spec = VirasoroSpec::new(Model::Kw, m);
    let mut out = GradedSeries::new(f.truncation());
    for (i, j, c) in spec.quadratic_terms(m) {
        let fi = f.derive(i).shift(1, 0, &Monomial::one());
        let fj = f.derive(j);
        let term = fi.derive(j).add(&fi.mul(&fj)?)?;
        out = out.add(&term.scale(&c))?;
    }
    for (i, c) in spec.linear_terms(m, trunc.kmax) {
        let term = f
            .derive((i as i64 + m) as u32)
            .shift(0, 0, &Monomial::from_indices(&[i]));
        out = out.add(&term.scale(&c))?;
    }
    for (h, a, t, c) in spec.constant_terms(m) {
        out.add_term(h, a, t, C::from_rational(c));
    }
    Ok(out.restrict(trunc))
}

/// Smallest s²-power among terms of positive t-degree, clamped at zero.
fn s2_deficit<C: Coeff>(f: &GradedSeries<C>) -> u32 {
    f.iter()
        .filter(|(k, _)| k.t.degree() > 0)
        .map(|(k, _)| (-k.a).max(0) as u32)
        .max()
        .unwrap_or(0)
}

fn certify<C: Coeff>(r: &GradedSeries<C>, dmax: i64, kmax: i64, smax: i64) -> GradedSeries<C> {
    r.filter(|k| {
        k.t.degree() as i64 <= dmax
            && k.t.max_index().is_none_or(|i| i as i64 <= kmax)
            && k.a as i64 <= smax
    })
}

/// Residual of the `m`-th constraint of `spec` on the free energy `f`:
/// `(2m+c)!! F_{m+c} - Z^{-1}(L_m + shift)Z`, certified region only.
pub fn apply_virasoro_oracle<C: Coeff>(
    f: &GradedSeries<C>,
    spec: &VirasoroSpec,
    m: i64,
) -> Result<GradedSeries<C>> {
    residual(f, spec, m, &BTreeMap::new())
}

/// Residual of the `m`-th constraint conjugated by the translation `t_i ↦ t_i + p_i`:
/// the linear part gains `Σ_i B_{i,m} p_i ∂_{i+m}`. A free energy `F(t + p)` satisfies
/// these exactly when `F` satisfies the untranslated constraints.
pub fn apply_translated_oracle<C: Coeff>(
    f: &GradedSeries<C>,
    spec: &VirasoroSpec,
    m: i64,
    shift: &BTreeMap<u32, C>,
) -> Result<GradedSeries<C>> {
    residual(f, spec, m, shift)
}

fn residual<C: Coeff>(
    f: &GradedSeries<C>,
    spec: &VirasoroSpec,
    m: i64,
    shift: &BTreeMap<u32, C>,
) -> Result<GradedSeries<C>> {
    spec.check(m)?;
    let trunc = f.truncation();
    let c = if spec.model == Model::Kw { 1 } else { 0 };
    let lead = m + c;
    if lead > trunc.kmax as i64 {
        return Err(Error::VirasoroRange(m));
    }
    let lhs = f.derive(lead as u32).scale(&Rational::from_integer(
        double_factorial(2 * lead + 1).unwrap(),
    ));
    let mut rhs = l_operator(f, m)?;
    match spec.model {
        Model::Bgw if m == 0 => rhs.add_term(-1, 1, Monomial::one(), C::from_rational(q(1, 2))),
        Model::Kappa => {
            let lower = l_operator(f, m - 1)?.shift(0, 1, &Monomial::one());
            rhs = rhs.add(&lower)?;
        }
        _ => {}
    }
    for (&i, p) in shift {
        let target = i as i64 + m;
        if target >= 0 && target <= trunc.kmax as i64 {
            let term = f
                .derive(target as u32)
                .scale_by(p)
                .scale(&linear_coefficient(i as i64, m));
            rhs = rhs.add(&term)?;
        }
    }
    let r = lhs.sub(&rhs)?;
    let mut smax = trunc.smax as i64 - s2_deficit(f) as i64;
    if !shift.is_empty() {
        // A shifted index beyond kmax first reaches s²-power kmax + 2 - gmax.
        smax = smax.min(trunc.kmax as i64 + 1 - trunc.gmax as i64);
    }
    Ok(certify(
        &r,
        trunc.dmax as i64 - 2,
        trunc.kmax as i64 - m.max(0),
        smax,
    ))
}

/// `(∂_0 - Σ(2k+1) t_k ∂_k) F - ½ħ^{-1}s² - 1/8`, certified region only.
pub fn check_homogeneity(f: &GradedSeries) -> Result<GradedSeries> {
    let trunc = f.truncation();
    let mut r = f.derive(0);
    for k in 0..=trunc.kmax {
        let term = f.derive(k).shift(0, 0, &Monomial::from_indices(&[k]));
        r = r.sub(&term.scale(&qi(2 * k as i64 + 1)))?;
    }
    r.add_term(-1, 1, Monomial::one(), q(-1, 2));
    r.add_term(0, 0, Monomial::one(), q(-1, 8));
    Ok(certify(
        &r,
        trunc.dmax as i64 - 1,
        trunc.kmax as i64,
        trunc.smax as i64,
    ))
}

/// KdV residual with the region it certifies.
#[derive(Clone, Debug)]
pub struct KdvReport {
    /// `U_{t_1} - U U_{t_0} - (ħ/12) U_{t_0 t_0 t_0}` with `U = ħ ∂_0² F`.
    pub residual: GradedSeries,
    /// Largest t-degree certified.
    pub certified_degree: u32,
    /// Largest ħ-power certified.
    pub certified_hbar: u32,
    /// Largest s²-power certified.
    pub certified_s2: i32,
}

/// KdV residual of the free energy `f`, complete through t-degree `dmax - 5`
/// and ħ-power `gmax`.
pub fn kdv_residual(f: &GradedSeries) -> Result<KdvReport> {
    let t = f.truncation();
    if t.dmax < 5 {
        return Err(Error::TruncationTooSmall);
    }
    let wide = Truncation::new(t.gmax + 1, t.kmax, t.dmax, t.smax);
    let f = f.restrict(wide);
    let u = f.derive(0).derive(0).shift(1, 0, &Monomial::one());
    let u0 = u.derive(0);
    let r = u.derive(1).sub(&u.mul(&u0)?)?.sub(
        &u0.derive(0)
            .derive(0)
            .shift(1, 0, &Monomial::one())
            .scale(&q(1, 12)),
    )?;
    let certified_s2 = t.smax as i32 - s2_deficit(&f) as i32;
    let residual = certify(&r, t.dmax as i64 - 5, t.kmax as i64, certified_s2 as i64);
    Ok(KdvReport {
        residual,
        certified_degree: t.dmax - 5,
        certified_hbar: t.gmax,
        certified_s2,
    })
}
