use alloc::string::String;
use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision rational, always reduced with positive denominator.
///
/// `Display` prints `p/q`, or `p` when `q = 1`.
pub type Rational = BigRational;

/// `n / d` as a reduced rational. Panics on `d = 0`.
pub fn q(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn qi(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parse `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|_| alloc::format!("bad rational {s:?}"))
}
