use super::rational::{q, qi, Rational};
use crate::error::{Error, Result};
use alloc::format;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `n!!` for `n >= -1`, with `(-1)!! = 0!! = 1`.
pub fn double_factorial(n: i64) -> Result<BigInt> {
    if n < -1 {
        return Err(Error::Domain(format!("double factorial of {n}")));
    }
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    Ok(acc)
}

/// `n!`.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Bernoulli number `B_n` for even `n >= 2` (so `B_2 = 1/6`).
pub fn bernoulli(n: u32) -> Result<Rational> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::Domain(format!("bernoulli({n}) needs even n >= 2")));
    }
    // sum_{k <= m} C(m+1, k) B_k = 0, B_0 = 1
    let n = n as usize;
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(qi(1));
    for m in 1..=n {
        let mut s = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            s += Rational::from_integer(binomial(m as i64 + 1, k as i64)) * bk;
        }
        b.push(-s / qi(m as i64 + 1));
    }
    Ok(b[n].clone())
}

/// `∫_{M_g} K = -|χ(M_g)| = (-1)^g B_{2g} / (2g(2g-2))` for `g >= 2`.
pub fn euler_characteristic_constant(g: u32) -> Result<Rational> {
    if g < 2 {
        return Err(Error::Domain(format!(
            "Euler characteristic constant needs g >= 2, got {g}"
        )));
    }
    let b = bernoulli(2 * g)?;
    let sign = if g % 2 == 0 { qi(1) } else { qi(-1) };
    let gg = g as i64;
    Ok(sign * b * q(1, 2 * gg * (2 * gg - 2)))
}

/// `|χ(M_g)|`, the coefficient of `ħ^{g-1}` in `χ(ħ)`.
pub fn chi_abs(g: u32) -> Result<Rational> {
    Ok(-euler_characteristic_constant(g)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_factorial_values() {
        assert_eq!(double_factorial(-1).unwrap(), BigInt::from(1));
        assert_eq!(double_factorial(0).unwrap(), BigInt::from(1));
        assert_eq!(double_factorial(5).unwrap(), BigInt::from(15));
        assert_eq!(double_factorial(7).unwrap(), BigInt::from(105));
        assert!(double_factorial(-2).is_err());
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(2).unwrap(), q(1, 6));
        assert_eq!(bernoulli(4).unwrap(), q(-1, 30));
        assert_eq!(bernoulli(6).unwrap(), q(1, 42));
        assert_eq!(bernoulli(8).unwrap(), q(-1, 30));
        assert!(bernoulli(3).is_err());
        assert!(bernoulli(0).is_err());
    }

    #[test]
    fn euler_constants() {
        assert_eq!(euler_characteristic_constant(2).unwrap(), q(-1, 240));
        assert_eq!(euler_characteristic_constant(3).unwrap(), q(-1, 1008));
        assert_eq!(chi_abs(2).unwrap(), q(1, 240));
        assert!(euler_characteristic_constant(1).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, 7), BigInt::zero());
    }
}
