/// Bounds for a truncated computation: genus, t-index, t-degree and power of s².
///
/// A series key `(h, a, t^M)` lies inside when `h + 1 <= gmax`,
/// every index of `M` is at most `kmax`, `deg M <= dmax` and `a <= smax`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Truncation {
    pub gmax: u32,
    pub kmax: u32,
    pub dmax: u32,
    pub smax: u32,
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation {
            gmax: 2,
            kmax: 6,
            dmax: 5,
            smax: 8,
        }
    }
}

impl Truncation {
    pub const fn new(gmax: u32, kmax: u32, dmax: u32, smax: u32) -> Self {
        Truncation {
            gmax,
            kmax,
            dmax,
            smax,
        }
    }

    pub fn contains(&self, h: i32, a: i32, m: &super::Monomial) -> bool {
        h + 1 <= self.gmax as i32
            && a <= self.smax as i32
            && m.degree() <= self.dmax
            && m.max_index().is_none_or(|i| i <= self.kmax)
    }

    /// True when `self` is contained in `other` in every bound.
    pub fn within(&self, other: &Truncation) -> bool {
        self.gmax <= other.gmax
            && self.kmax <= other.kmax
            && self.dmax <= other.dmax
            && self.smax <= other.smax
    }
}
