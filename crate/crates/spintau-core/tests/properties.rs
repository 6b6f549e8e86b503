use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;
use spintau_core::exactcore::{parse_rational, q, GradedSeries, Monomial, Rational, Truncation};
use spintau_core::spincorr::SpinEngine;
use spintau_core::supervol::volume_polynomial;
use spintau_core::virasoro::{
    bgw_correlators, kw_correlators, CorrelatorTable, Engine, Model, VirasoroSolver,
};

const T: Truncation = Truncation::new(2, 3, 4, 2);

fn lowest_terms(r: &Rational) -> bool {
    r.denom() > &Zero::zero() && r.numer().gcd(r.denom()).is_one()
}

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..40).prop_map(|(n, d)| q(n, d))
}

/// Series with positive t-degree, nonnegative ħ and s² powers, inside `T`.
fn nilpotent() -> impl Strategy<Value = GradedSeries> {
    prop::collection::vec(
        (0i32..2, 0i32..3, prop::collection::vec(0u32..=3, 1..3), rational()),
        0..5,
    )
    .prop_map(|terms| {
        let mut s = GradedSeries::new(T);
        for (h, a, idx, c) in terms {
            s.add_term(h, a, Monomial::from_indices(&idx), c);
        }
        s
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rational_ops_stay_reduced(a in rational(), b in rational()) {
        prop_assert!(lowest_terms(&(a.clone() + b.clone())));
        prop_assert!(lowest_terms(&(a.clone() - b.clone())));
        prop_assert!(lowest_terms(&(a.clone() * b.clone())));
        if !b.is_zero() {
            prop_assert!(lowest_terms(&(a / b)));
        }
    }

    #[test]
    fn exp_is_a_homomorphism(a in nilpotent(), b in nilpotent()) {
        let lhs = a.add(&b).unwrap().exp().unwrap();
        let rhs = a.exp().unwrap().mul(&b.exp().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn log_inverts_exp(a in nilpotent()) {
        prop_assert_eq!(a.exp().unwrap().log().unwrap(), a);
    }

    #[test]
    fn derivative_is_a_derivation(a in nilpotent(), b in nilpotent(), k in 0u32..=3) {
        // d/dt_k of a product is complete only one degree below the truncation.
        let small = Truncation { dmax: T.dmax - 1, ..T };
        let lhs = a.mul(&b).unwrap().derive(k).restrict(small);
        let rhs = a.derive(k).mul(&b).unwrap().add(&a.mul(&b.derive(k)).unwrap()).unwrap().restrict(small);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bgw_dilaton(g in 0u32..3, k in prop::collection::vec(0u32..4, 1..4)) {
        let mut s = VirasoroSolver::new(Model::Bgw);
        let mut with0 = k.clone();
        with0.push(0);
        let n = k.len() as i64;
        let w: u32 = k.iter().sum();
        let lhs = s.correlator(g, &with0);
        let rhs = s.correlator(g, &k) * Rational::from_integer((n + 2 * w as i64).into());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn spin_admissibility(g in 0u32..3, k in prop::collection::vec(0u32..4, 1..4)) {
        let v = SpinEngine::new().correlator(g, &k);
        if !v.is_zero() {
            prop_assert!(Engine::Spin.s2_power(g, &k) >= 0);
        }
    }
}

#[test]
fn truncation_monotonicity() {
    let small = Truncation::new(2, 3, 3, 3);
    let big = Truncation::new(3, 5, 5, 5);
    for (lo, hi) in [
        (kw_correlators(small), kw_correlators(big)),
        (bgw_correlators(small), bgw_correlators(big)),
    ] {
        let points = CorrelatorTable::lattice(lo.engine, small);
        assert!(lo.iter().all(|(g, k, _)| points.iter().any(|(h, m)| *h == g && m == k)));
        for (g, k) in &points {
            assert_eq!(lo.get(*g, k), hi.get(*g, k), "g={g} k={k:?}");
        }
    }
}

#[test]
fn volumes_are_symmetric() {
    for (g, n) in [(0, 4), (1, 2), (1, 3), (2, 2)] {
        let v = volume_polynomial(g, n, 2);
        assert!(v.is_symmetric(), "V[{g},{n}]");
        assert!(!v.terms.is_empty());
    }
}

#[test]
fn rationals_parse() {
    assert_eq!(parse_rational("7").unwrap(), q(7, 1));
    assert_eq!(parse_rational(" -2/4 ").unwrap(), q(-1, 2));
    assert!(parse_rational("1/0").is_err());
    assert!(parse_rational("x").is_err());
}
