//! Truncated power series in one variable, `c[0] + c[1] z + ... + c[N] z^N`.

use super::rational::{q, Rational};
use super::ring::Coeff;
use alloc::vec::Vec;

/// Product truncated to the length of the shorter operand.
pub fn mul<C: Coeff>(a: &[C], b: &[C]) -> Vec<C> {
    let n = a.len().min(b.len());
    let mut out = alloc::vec![C::zero_elem(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.vanishes() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j].add_assign_ref(&x.mul_ref(y));
        }
    }
    out
}

/// `exp(f)` for `f[0] = 0`, via `n E_n = Σ_{k=1}^n k f_k E_{n-k}`.
pub fn exp<C: Coeff>(f: &[C]) -> Vec<C> {
    assert!(
        f.first().is_none_or(|c| c.vanishes()),
        "exp needs zero constant term"
    );
    let mut e: Vec<C> = Vec::with_capacity(f.len());
    e.push(C::one_elem());
    for n in 1..f.len() {
        let mut acc = C::zero_elem();
        for k in 1..=n {
            acc.add_assign_ref(&f[k].mul_ref(&e[n - k]).scale(&q(k as i64, 1)));
        }
        e.push(acc.scale(&q(1, n as i64)));
    }
    e
}

/// `log(g)` for `g[0] = 1`, via `n L_n = n g_n - Σ_{k=1}^{n-1} k L_k g_{n-k}`.
pub fn log(g: &[Rational]) -> Vec<Rational> {
    assert!(g.first() == Some(&q(1, 1)), "log needs constant term 1");
    let mut l = alloc::vec![q(0, 1); g.len()];
    for n in 1..g.len() {
        let mut acc = g[n].clone() * q(n as i64, 1);
        for k in 1..n {
            acc -= &l[k] * &g[n - k] * q(k as i64, 1);
        }
        l[n] = acc / q(n as i64, 1);
    }
    l
}
