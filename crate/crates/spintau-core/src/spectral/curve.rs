use crate::error::{Error, Result};
use crate::exactcore::{factorial, qi, FormalPolynomial, Rational};
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::One;

/// Symbol index of s² in spectral coefficients.
pub const S2: usize = 0;
/// Symbol index of π² in spectral coefficients.
pub const PI2: usize = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurveLabel {
    Airy,
    Bessel,
    Ck,
    Cns,
}

impl CurveLabel {
    pub fn tag(self) -> &'static str {
        match self {
            CurveLabel::Airy => "airy",
            CurveLabel::Bessel => "bessel",
            CurveLabel::Ck => "ck",
            CurveLabel::Cns => "cns",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        [CurveLabel::Airy, CurveLabel::Bessel, CurveLabel::Ck, CurveLabel::Cns]
            .into_iter()
            .find(|c| c.tag() == tag)
    }
}

/// Spectral curve with `x = z²/2` and the data the recursion needs from `y`:
/// the odd Laurent expansion `1/(y(z) - y(-z)) = Σ_{j>=-1} c_j z^{2j+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralCurve {
    pub label: CurveLabel,
    /// `c_{-1}, c_0, c_1, ...`.
    inv_dy: Vec<FormalPolynomial>,
    /// `None` when the expansion is a Laurent polynomial (exact); else the order `N`.
    order: Option<usize>,
}

impl SpectralCurve {
    /// `y = z`: `1/Δy = z^{-1}/2`.
    pub fn airy() -> Self {
        SpectralCurve { label: CurveLabel::Airy, inv_dy: alloc::vec![half()], order: None }
    }

    /// `y = 1/z`: `1/Δy = z/2`.
    pub fn bessel() -> Self {
        SpectralCurve {
            label: CurveLabel::Bessel,
            inv_dy: alloc::vec![FormalPolynomial::zero(), half()],
            order: None,
        }
    }

    /// `y = z/(z² + s²)`, expanded at `z = ∞` to order `n` as `Σ (-1)^j s^{2j} z^{-2j-1}`.
    ///
    /// `Δy = (2/z) Σ (-u)^j` with `u = s²/z²`; its reciprocal `(z/2)(1 + u)` must
    /// terminate, which is checked through order `n`.
    pub fn ck(n: usize) -> Result<Self> {
        let n = n.max(2);
        let series: Vec<FormalPolynomial> = (0..=n)
            .map(|j| FormalPolynomial::monomial(S2, j as u32, qi(if j % 2 == 0 { 1 } else { -1 })))
            .collect();
        let inv = invert(&series);
        if inv[2..].iter().any(|c| !c.is_zero()) {
            return Err(Error::Domain("ck: 1/(y(z)-y(-z)) does not terminate".into()));
        }
        // (z/2)(c_0 + c_1 s²/z²) = c_1 s²/(2z) + c_0 z/2.
        Ok(SpectralCurve {
            label: CurveLabel::Ck,
            inv_dy: alloc::vec![inv[1].scale(&half_q()), inv[0].scale(&half_q())],
            order: None,
        })
    }

    /// `y = cos(2πz)/z`: `1/Δy = (z/2) sec(2πz)` through `z^{2n+1}`, π² formal.
    pub fn cns(n: usize) -> Self {
        let cos: Vec<FormalPolynomial> = (0..=n)
            .map(|j| {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                let c = Rational::new(BigInt::from(sign) << (2 * j), factorial(2 * j as u64));
                FormalPolynomial::monomial(PI2, j as u32, c)
            })
            .collect();
        let sec = invert(&cos);
        let mut inv_dy = alloc::vec![FormalPolynomial::zero()];
        inv_dy.extend(sec.iter().map(|c| c.scale(&half_q())));
        SpectralCurve { label: CurveLabel::Cns, inv_dy, order: Some(n) }
    }

    /// `c_j` of `1/Δy = Σ c_j z^{2j+1}`; errors past the truncation order.
    pub fn inv_dy(&self, j: i64) -> Result<FormalPolynomial> {
        debug_assert!(j >= -1);
        if let Some(n) = self.order {
            if j > n as i64 {
                return Err(Error::SeriesOrder { needed: j as usize, available: n });
            }
        }
        Ok(self.inv_dy.get((j + 1) as usize).cloned().unwrap_or_default())
    }

    pub fn order(&self) -> Option<usize> {
        self.order
    }

    /// Same curve at a different truncation order (no-op for exact curves).
    pub fn with_order(&self, n: usize) -> Result<Self> {
        match self.label {
            CurveLabel::Cns => Ok(Self::cns(n)),
            CurveLabel::Ck => Self::ck(n),
            _ => Ok(self.clone()),
        }
    }
}

fn half_q() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2))
}

fn half() -> FormalPolynomial {
    FormalPolynomial::constant(half_q())
}

/// Reciprocal of `Σ a_i w^i` with `a_0 = 1`, to the same length.
fn invert(a: &[FormalPolynomial]) -> Vec<FormalPolynomial> {
    debug_assert!(a[0] == FormalPolynomial::constant(Rational::one()));
    let mut b: Vec<FormalPolynomial> = alloc::vec![FormalPolynomial::constant(Rational::one())];
    for n in 1..a.len() {
        let mut acc = FormalPolynomial::zero();
        for k in 1..=n {
            acc = acc.sub(&a[k].mul(&b[n - k]));
        }
        b.push(acc);
    }
    b
}
