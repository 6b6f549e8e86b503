use spintau_core::exactcore::{q, qi, Monomial, Truncation};
use spintau_core::virasoro::{
    apply_virasoro_oracle, bgw_correlators, check_homogeneity, kdv_residual, kw_correlators, Model,
    VirasoroSolver, VirasoroSpec,
};

#[test]
fn kw_low_values() {
    let mut s = VirasoroSolver::new(Model::Kw);
    assert_eq!(s.correlator(0, &[0, 0, 0]), qi(1));
    assert_eq!(s.correlator(0, &[0, 0, 0, 1]), qi(1));
    assert_eq!(s.correlator(1, &[1]), q(1, 24));
    assert_eq!(s.correlator(1, &[1, 1]), q(1, 24));
    assert_eq!(s.correlator(2, &[4]), q(1, 1152));
    assert_eq!(s.correlator(2, &[2, 3]), q(29, 5760));
    assert_eq!(s.correlator(0, &[1, 1, 0, 0, 0]), qi(2));
}

#[test]
fn bgw_low_values() {
    let mut s = VirasoroSolver::new(Model::Bgw);
    assert_eq!(s.correlator(0, &[0]), q(1, 2));
    assert_eq!(s.correlator(1, &[0]), q(1, 8));
    assert_eq!(s.correlator(1, &[1]), q(5, 48));
    assert_eq!(s.correlator(0, &[1]), q(1, 24));
    for b in 0..5u32 {
        assert_eq!(
            s.correlator(0, &[0, b]),
            qi(2 * b as i64 + 1) * s.correlator(0, &[b])
        );
    }
}

#[test]
fn oracles_vanish_on_solved_series() {
    let t = Truncation::new(2, 6, 5, 8);
    let kw = kw_correlators(t).to_series();
    for m in -1..=4 {
        let r = apply_virasoro_oracle(&kw, &VirasoroSpec::new(Model::Kw, 4), m).unwrap();
        assert!(
            r.is_zero(),
            "kw m={m}: {:?}",
            r.iter().take(3).collect::<Vec<_>>()
        );
    }
    let bgw = bgw_correlators(t).to_series();
    for m in 0..=4 {
        let r = apply_virasoro_oracle(&bgw, &VirasoroSpec::new(Model::Bgw, 4), m).unwrap();
        assert!(
            r.is_zero(),
            "bgw m={m}: {:?}",
            r.iter().take(3).collect::<Vec<_>>()
        );
    }
    assert!(check_homogeneity(&bgw).unwrap().is_zero());
    assert!(!check_homogeneity(&kw).unwrap().is_zero());
    assert!(kdv_residual(&kw).unwrap().residual.is_zero());
    assert!(kdv_residual(&bgw).unwrap().residual.is_zero());
}

#[test]
fn perturbation_is_detected() {
    let t = Truncation::new(2, 6, 5, 8);
    let mut table = kw_correlators(t);
    table.insert(1, &[1], q(1, 23));
    let f = table.to_series();
    let r = apply_virasoro_oracle(&f, &VirasoroSpec::new(Model::Kw, 4), 0).unwrap();
    assert!(!r.is_zero());
    let _ = Monomial::one();
}
