//! High-precision kernels and quadrature for the integral form of the super
//! volume recursion.
//!
//! All arithmetic is MPFR at [`PREC`] bits; π² is substituted only here.

use num_bigint::BigInt;
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer};
use spintau_core::{FormalPolynomial, Rational};
use std::sync::OnceLock;

/// Working precision in bits (77 significant decimal digits).
pub const PREC: u32 = 256;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumericError {
    #[error("tolerance {tol:e} is below what {prec}-bit arithmetic can certify at scale {scale:e}")]
    ToleranceUnachievable { tol: f64, prec: u32, scale: f64 },
    #[error("{scheme} quadrature did not converge to {tol:e} (last change {change:e})")]
    NoConvergence { scheme: &'static str, tol: f64, change: f64 },
}

pub fn float(x: f64) -> Float {
    Float::with_val(PREC, x)
}

pub fn pi2() -> Float {
    Float::with_val(PREC, Constant::Pi).square()
}

pub fn from_bigint(b: &BigInt) -> Float {
    let i: Integer = b.to_string().parse().expect("decimal integer");
    Float::with_val(PREC, i)
}

pub fn from_rational(r: &Rational) -> Float {
    from_bigint(r.numer()) / from_bigint(r.denom())
}

/// Value of a polynomial in π² (symbol 0).
pub fn eval_pi2(p: &FormalPolynomial) -> Float {
    let x = pi2();
    let mut acc = float(0.0);
    for (e, c) in p.terms() {
        let k = e.first().copied().unwrap_or(0);
        acc += from_rational(c) * x.clone().pow(k);
    }
    acc
}

fn factorial(n: u32) -> Float {
    Float::with_val(PREC, Integer::from(Integer::factorial(n)))
}

/// `D(x, u, 0) = 2 sinh(x/4) sinh(u/4) / (cosh(x/2) + cosh(u/2))`.
///
/// Equal to `sinh(x/4) sinh(u/4) / (cosh((x-u)/4) cosh((x+u)/4))`. Evaluated as
/// `2 sinh(x/4) (e^{-u/4} - e^{-3u/4}) / (1 + e^{-u} + 2 cosh(x/2) e^{-u/2})`
/// for `u >= 0` (odd in `u`), which stays finite for every `u`.
pub fn kernel_base(x: &Float, u: &Float) -> Float {
    if u.is_sign_negative() {
        return -kernel_base(x, &Float::with_val(PREC, -u));
    }
    let decay = |c: i32, d: u32| (Float::with_val(PREC, u * c) / d).exp();
    let num = Float::with_val(PREC, x / 4u32).sinh() * (decay(-1, 4) - decay(-3, 4)) * 2u32;
    let den = float(1.0) + decay(-1, 1) + Float::with_val(PREC, x / 2u32).cosh() * decay(-1, 2) * 2u32;
    num / den
}

/// `D(x, y, z)`; depends on `y, z` only through `y + z`.
pub fn kernel_d(x: &Float, y: &Float, z: &Float) -> Float {
    kernel_base(x, &Float::with_val(PREC, y + z))
}

/// `R(x, y, z) = (D(x+y, z, 0) + D(x-y, z, 0)) / 2`.
pub fn kernel_r(x: &Float, y: &Float, z: &Float) -> Float {
    let a = kernel_base(&Float::with_val(PREC, x + y), z);
    let b = kernel_base(&Float::with_val(PREC, x - y), z);
    (a + b) / 2u32
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Double-exponential (exp-sinh) on `[0, ∞)`.
    TanhSinh,
    /// Adaptive bisection with paired Gauss–Legendre rules on `[0, R]`, `R` from the tail bound.
    Adaptive,
}

/// `|u^p D(x, u, 0)| <= 2 sinh(|x|/4) u^p e^{-u/4}`; its integral over `[r, ∞)`
/// is `2 sinh(|x|/4) 4^{p+1} p! e^{-r/4} Σ_{k<=p} (r/4)^k / k!`.
fn tail_bound(p: u32, x: &Float, r: &Float) -> Float {
    let q = Float::with_val(PREC, r / 4u32);
    let mut term = float(1.0);
    let mut sum = float(1.0);
    for k in 1..=p {
        term = term * &q / k;
        sum += &term;
    }
    let scale = Float::with_val(PREC, x.clone().abs() / 4u32).sinh() * 2u32;
    scale * Float::with_val(PREC, 4u32).pow(p + 1) * factorial(p) * (-q).exp() * sum
}

/// Radius with tail below `tol / 10`.
pub fn truncation_radius(p: u32, x: &Float, tol: f64) -> Float {
    let target = float(tol / 10.0);
    let mut r = float(16.0);
    while tail_bound(p, x, &r) > target {
        r *= 1.25;
    }
    r
}

/// Magnitude estimate of `∫ u^p D(x, u, 0) du`, used to reject tolerances below the working precision.
fn scale(p: u32, x: &Float) -> Float {
    Float::with_val(PREC, x.clone().abs() / 4u32).sinh() * 2u32 * Float::with_val(PREC, 4u32).pow(p + 1) * factorial(p)
}

/// `∫_0^∞ u^p D(x, u, 0) du`.
pub fn base_moment(p: u32, x: &Float, scheme: Scheme, tol: f64) -> Result<Float, NumericError> {
    let sc = scale(p, x);
    let floor = Float::with_val(PREC, &sc * Float::with_val(PREC, 2f64).pow(-(PREC as i32) + 16));
    if floor > tol {
        return Err(NumericError::ToleranceUnachievable { tol, prec: PREC, scale: sc.to_f64() });
    }
    if x.is_zero() {
        return Ok(float(0.0));
    }
    let f = |u: &Float| Float::with_val(PREC, u.clone().pow(p)) * kernel_base(x, u);
    match scheme {
        Scheme::TanhSinh => exp_sinh(f, tol),
        Scheme::Adaptive => {
            let r = truncation_radius(p, x, tol);
            adaptive(f, &float(0.0), &r, tol * 0.9)
        }
    }
}

fn exp_sinh(f: impl Fn(&Float) -> Float, tol: f64) -> Result<Float, NumericError> {
    let half_pi = Float::with_val(PREC, Constant::Pi) / 2u32;
    let eps = Float::with_val(PREC, 2f64).pow(-(PREC as i32));
    // Sum of f(u(t)) u'(t) over t = k h, stopping once terms are negligible.
    let node = |t: &Float| -> Float {
        let sh = Float::with_val(PREC, t.sinh_ref());
        let ch = Float::with_val(PREC, t.cosh_ref());
        let u = Float::with_val(PREC, &half_pi * &sh).exp();
        let w = Float::with_val(PREC, &u * &half_pi) * ch;
        if u.is_infinite() || u.is_zero() {
            return float(0.0);
        }
        f(&u) * w
    };
    let sweep = |h: &Float, start: i64, step: i64| -> Float {
        let mut acc = float(0.0);
        for dir in [1i64, -1] {
            // The origin belongs to the positive sweep only.
            let mut k = if dir == 1 { start } else if start == 0 { -step } else { -start };
            let mut small = 0;
            loop {
                let t = Float::with_val(PREC, h * k);
                let v = node(&t);
                let negligible = Float::with_val(PREC, v.clone().abs()) <= Float::with_val(PREC, &eps * acc.clone().abs());
                acc += v;
                small = if negligible { small + 1 } else { 0 };
                if small >= 3 || t.clone().abs() > 8 {
                    break;
                }
                k += dir * step;
            }
        }
        acc
    };
    let mut h = float(1.0);
    let mut sum = sweep(&h, 0, 1);
    let mut estimate = Float::with_val(PREC, &sum * &h);
    let mut change = f64::INFINITY;
    for _ in 0..14 {
        h /= 2u32;
        // Refinement adds the odd multiples of the new step.
        sum += sweep(&h, 1, 2);
        let next = Float::with_val(PREC, &sum * &h);
        change = Float::with_val(PREC, &next - &estimate).abs().to_f64();
        estimate = next;
        if change < tol / 10.0 {
            return Ok(estimate);
        }
    }
    Err(NumericError::NoConvergence { scheme: "tanh-sinh", tol, change })
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
fn legendre(n: usize) -> Vec<(Float, Float)> {
    let pi = Float::with_val(PREC, Constant::Pi);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let guess = Float::with_val(PREC, &pi * (4 * i as u32 + 3)) / (4 * n as u32 + 2);
        let mut x = guess.cos();
        let mut dp = float(0.0);
        for _ in 0..100 {
            let (p, d) = legendre_eval(n, &x);
            let dx = Float::with_val(PREC, &p / &d);
            x -= &dx;
            dp = d;
            if dx.abs() < Float::with_val(PREC, 2f64).pow(-(PREC as i32) + 4) {
                let (_, d) = legendre_eval(n, &x);
                dp = d;
                break;
            }
        }
        let w = Float::with_val(PREC, 2u32) / ((float(1.0) - x.clone().square()) * dp.square());
        out.push((x, w));
    }
    out
}

fn legendre_eval(n: usize, x: &Float) -> (Float, Float) {
    let mut p0 = float(1.0);
    let mut p1 = x.clone();
    for k in 2..=n {
        let p2 = (Float::with_val(PREC, x * &p1) * (2 * k as u32 - 1) - Float::with_val(PREC, &p0 * (k as u32 - 1))) / k as u32;
        p0 = p1;
        p1 = p2;
    }
    let d = Float::with_val(PREC, x * &p1) - &p0;
    let d = d * n as u32 / (Float::with_val(PREC, x.clone().square()) - 1u32);
    (p1, d)
}

fn rules() -> &'static (Vec<(Float, Float)>, Vec<(Float, Float)>) {
    static RULES: OnceLock<(Vec<(Float, Float)>, Vec<(Float, Float)>)> = OnceLock::new();
    RULES.get_or_init(|| (legendre(20), legendre(30)))
}

fn gauss(f: &impl Fn(&Float) -> Float, a: &Float, b: &Float, rule: &[(Float, Float)]) -> Float {
    let mid = Float::with_val(PREC, a + b) / 2u32;
    let half = Float::with_val(PREC, b - a) / 2u32;
    let mut acc = float(0.0);
    for (x, w) in rule {
        let u = Float::with_val(PREC, &half * x) + &mid;
        acc += f(&u) * w;
    }
    acc * half
}

fn adaptive(f: impl Fn(&Float) -> Float, a: &Float, b: &Float, tol: f64) -> Result<Float, NumericError> {
    let (lo, hi) = rules();
    let total = Float::with_val(PREC, b - a);
    let mut stack = vec![(a.clone(), b.clone(), 0u32)];
    let mut acc = float(0.0);
    while let Some((x0, x1, depth)) = stack.pop() {
        let g1 = gauss(&f, &x0, &x1, lo);
        let g2 = gauss(&f, &x0, &x1, hi);
        let err = Float::with_val(PREC, &g2 - &g1).abs();
        let share = Float::with_val(PREC, &x1 - &x0) / &total * tol;
        if err <= share {
            acc += g2;
        } else if depth >= 40 {
            return Err(NumericError::NoConvergence { scheme: "adaptive", tol, change: err.to_f64() });
        } else {
            let mid = Float::with_val(PREC, &x0 + &x1) / 2u32;
            stack.push((mid.clone(), x1, depth + 1));
            stack.push((x0, mid, depth + 1));
        }
    }
    Ok(acc)
}

/// `p! q! / (p + q + 1)!`: `∫∫ x^p y^q h(x + y) dx dy = p! q!/(p+q+1)! ∫ u^{p+q+1} h(u) du`.
pub fn beta_factor(p: u32, q: u32) -> Float {
    factorial(p) * factorial(q) / factorial(p + q + 1)
}

/// A weighted kernel integral over the positive orthant.
#[derive(Clone, Debug, PartialEq)]
pub enum KernelMoment {
    /// `∫∫ x^{2a+1} y^{2b+1} D(l, x, y) dx dy`.
    D { l: f64, a: u32, b: u32 },
    /// `∫ x^{2a+1} R(l1, l2, x) dx`.
    R { l1: f64, l2: f64, a: u32 },
}

pub fn kernel_moment(m: &KernelMoment, scheme: Scheme, tol: f64) -> Result<Float, NumericError> {
    match *m {
        KernelMoment::D { l, a, b } => {
            let (p, q) = (2 * a + 1, 2 * b + 1);
            let f = beta_factor(p, q);
            let tol_u = tol / f.to_f64();
            Ok(base_moment(p + q + 1, &float(l), scheme, tol_u)? * f)
        }
        KernelMoment::R { l1, l2, a } => {
            let p = 2 * a + 1;
            let plus = base_moment(p, &float(l1 + l2), scheme, tol)?;
            let minus = base_moment(p, &float(l1 - l2), scheme, tol)?;
            Ok((plus + minus) / 2u32)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_forms_agree() {
        let (x, u) = (float(1.3), float(2.7));
        let direct = Float::with_val(PREC, &x / 4u32).sinh() * Float::with_val(PREC, &u / 4u32).sinh()
            / ((Float::with_val(PREC, &x - &u) / 4u32).cosh()
                * (Float::with_val(PREC, &x + &u) / 4u32).cosh());
        let diff = (kernel_base(&x, &u) - direct).abs();
        assert!(diff < 1e-70);
    }

    #[test]
    fn schemes_agree() {
        for p in [1u32, 3, 7, 11] {
            let a = base_moment(p, &float(1.0), Scheme::TanhSinh, 1e-30).unwrap();
            let b = base_moment(p, &float(1.0), Scheme::Adaptive, 1e-30).unwrap();
            let rel = (Float::with_val(PREC, &a - &b) / &a).abs();
            assert!(rel < 1e-28, "p={p}: {a} vs {b}");
        }
    }
}
