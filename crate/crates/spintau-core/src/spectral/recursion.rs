use super::curve::SpectralCurve;
use crate::error::{Error, Result};
use crate::exactcore::{qi, FormalPolynomial};
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

/// `ω_{g,n} = Σ_e c_e Π z_i^{-e_i} dz_i`, keyed by the ordered pole vector `e`.
pub type RawDifferential = BTreeMap<Vec<u32>, FormalPolynomial>;

/// Laurent data in the recursion variable `z` times poles in the remaining legs.
type Local = BTreeMap<(i64, Vec<u32>), FormalPolynomial>;

/// Exact topological recursion with all poles at the single branch point `z = 0`.
///
/// Stable `ω_{g,n}` are polynomials in `1/z_i`, so each is a finite map of pole
/// vectors. `ω_{0,2}(z, z_i)` is expanded for `|z| < |z_i|` and cut at the
/// highest `z`-power that can still reach the residue.
pub struct Recursion<'a> {
    curve: &'a SpectralCurve,
    table: BTreeMap<(u32, u32), RawDifferential>,
}

impl<'a> Recursion<'a> {
    pub fn new(curve: &'a SpectralCurve) -> Self {
        Recursion { curve, table: BTreeMap::new() }
    }

    /// All stable `(g, n)` with `n >= 1` and `2g - 2 + n <= chi_max`.
    pub fn run(mut self, chi_max: u32) -> Result<BTreeMap<(u32, u32), RawDifferential>> {
        for chi in 1..=chi_max {
            for g in 0..=(chi + 1) / 2 {
                let n = chi as i64 + 2 - 2 * g as i64;
                if n < 1 {
                    continue;
                }
                let w = self.step(g, n as u32)?;
                self.table.insert((g, n as u32), w);
            }
        }
        Ok(self.table)
    }

    fn step(&self, g: u32, n: u32) -> Result<RawDifferential> {
        let rest: Vec<usize> = (1..n as usize).collect();
        let mut q: Local = BTreeMap::new();

        // ω_{g-1,n+1}(z, -z, z_L).
        if g >= 1 {
            if g == 1 && n == 1 {
                // ω_{0,2}(z, -z) = 1/(4z²).
                push(&mut q, -2, Vec::new(), FormalPolynomial::constant(crate::exactcore::q(1, 4)));
            } else {
                let w = &self.table[&(g - 1, n + 1)];
                for (e, c) in w {
                    let zpow = -(e[0] as i64) - e[1] as i64;
                    let c = if e[1] % 2 == 1 { c.neg() } else { c.clone() };
                    push(&mut q, zpow, e[2..].to_vec(), c);
                }
            }
        }

        // Σ' ω_{g1}(z, z_I) ω_{g2}(-z, z_J) over splits without ω_{0,1}.
        let m = rest.len();
        for mask in 0u32..(1 << m) {
            let i_legs: Vec<usize> = (0..m).filter(|b| mask >> b & 1 == 1).collect();
            let j_legs: Vec<usize> = (0..m).filter(|b| mask >> b & 1 == 0).collect();
            for g1 in 0..=g {
                let g2 = g - g1;
                let n1 = 1 + i_legs.len() as u32;
                let n2 = 1 + j_legs.len() as u32;
                if (g1 == 0 && n1 == 1) || (g2 == 0 && n2 == 1) {
                    continue;
                }
                let a = self.factor(g1, n1, false)?;
                let b = self.factor(g2, n2, true)?;
                for ((za, ea), ca) in &a {
                    for ((zb, eb), cb) in &b {
                        if za + zb > 0 {
                            continue;
                        }
                        let mut legs = alloc::vec![0u32; m];
                        for (pos, &leg) in i_legs.iter().enumerate() {
                            legs[leg] = ea[pos];
                        }
                        for (pos, &leg) in j_legs.iter().enumerate() {
                            legs[leg] = eb[pos];
                        }
                        push(&mut q, za + zb, legs, ca.mul(cb));
                    }
                }
            }
        }

        // Res_{z=0} Σ_{a odd} z^{a-1} z_1^{-a-1} (1/Δy) Q dz: z^{a-1+2j+1-q} = z^{-1}.
        let mut out: RawDifferential = BTreeMap::new();
        for ((zpow, legs), c) in &q {
            if *zpow > 0 || zpow % 2 != 0 {
                continue;
            }
            let qq = -zpow;
            let mut a = 1;
            while a <= qq + 1 {
                let j = (qq - a - 1) / 2;
                let cj = self.curve.inv_dy(j)?;
                if !cj.is_zero() {
                    let mut e = alloc::vec![(a + 1) as u32];
                    e.extend_from_slice(legs);
                    let entry = out.entry(e).or_default();
                    *entry = entry.add(&cj.mul(c));
                }
                a += 2;
            }
        }
        out.retain(|_, c| !c.is_zero());
        for e in out.keys() {
            if e.iter().any(|&p| p < 2 || p % 2 == 1) {
                return Err(Error::Domain(alloc::format!(
                    "omega_{{{g},{n}}} has a pole of order {e:?} that is not even"
                )));
            }
        }
        Ok(out)
    }

    /// `ω_{g,n}(±z, z_legs)` as `z`-powers; `ω_{0,2}` is cut at `z^{lmax}`.
    fn factor(&self, g: u32, n: u32, negate: bool) -> Result<Local> {
        let mut out: Local = BTreeMap::new();
        if g == 0 && n == 2 {
            for l in 0..=self.max_pole() {
                let sign = if negate && l % 2 == 1 { -1 } else { 1 };
                let c = FormalPolynomial::constant(qi(sign * (l as i64 + 1)));
                out.insert((l as i64, alloc::vec![l + 2]), c);
            }
            return Ok(out);
        }
        let w = self
            .table
            .get(&(g, n))
            .ok_or_else(|| Error::Domain(alloc::format!("omega_{{{g},{n}}} not yet computed")))?;
        for (e, c) in w {
            let c = if negate && e[0] % 2 == 1 { c.neg() } else { c.clone() };
            push(&mut out, -(e[0] as i64), e[1..].to_vec(), c);
        }
        Ok(out)
    }

    fn max_pole(&self) -> u32 {
        self.table.values().flat_map(|w| w.keys()).flat_map(|e| e.iter().copied()).max().unwrap_or(0)
    }
}

fn push(q: &mut Local, zpow: i64, legs: Vec<u32>, c: FormalPolynomial) {
    let entry = q.entry((zpow, legs)).or_default();
    *entry = entry.add(&c);
}

