use spintau_core::exactcore::{q, FormalPolynomial};
use spintau_core::spectral::*;

fn c(x: spintau_core::Rational) -> FormalPolynomial {
    FormalPolynomial::constant(x)
}

#[test]
fn low_order_values() {
    let airy = tr_by_chi(&SpectralCurve::airy(), 1).unwrap();
    assert_eq!(airy.get(0, &[0, 0, 0]), c(q(1, 1)));
    assert_eq!(airy.get(1, &[1]), c(q(1, 24)));
    let bessel = tr_by_chi(&SpectralCurve::bessel(), 1).unwrap();
    assert_eq!(bessel.get(1, &[0]), c(q(1, 8)));
    assert!(bessel.get(0, &[0, 0, 0]).is_zero());
    let ck = tr_by_chi(&SpectralCurve::ck(8).unwrap(), 1).unwrap();
    assert_eq!(ck.get(0, &[0, 0, 0]), FormalPolynomial::monomial(S2, 1, q(1, 1)));
}

#[test]
fn tables_match() {
    for curve in [SpectralCurve::airy(), SpectralCurve::bessel(), SpectralCurve::ck(8).unwrap()] {
        let t = tr_by_chi(&curve, 4).unwrap();
        assert!(t.is_symmetric(), "{:?}", curve.label);
        let rep = compare_to_tables(&t).unwrap();
        assert!(rep.passed(), "{:?}: {:?}", curve.label, rep.mismatches);
    }
}

#[test]
fn ck_limit_is_bessel() {
    let ck = tr_by_chi(&SpectralCurve::ck(8).unwrap(), 4).unwrap();
    let bessel = tr_by_chi(&SpectralCurve::bessel(), 4).unwrap();
    assert_eq!(at_s_zero(&ck), bessel.entries);
}

#[test]
fn eta_matches_spin() {
    let ck = tr_by_chi(&SpectralCurve::ck(8).unwrap(), 3).unwrap();
    let eta = eta_reexpand(&ck, 4);
    assert_eq!(eta.get(1, &[1]), FormalPolynomial::monomial(S2, 1, q(5, 48)));
    let rep = compare_eta_to_spin(&eta, 4);
    assert!(rep.passed(), "{:?}", rep.mismatches);
}

#[test]
fn cns_laplace() {
    let chi = 3;
    let curve = SpectralCurve::cns(required_order(chi));
    let t = tr_by_chi(&curve, chi).unwrap();
    println!("{}", t.render());
    let rep = cns_laplace_check(&t).unwrap();
    assert_eq!(rep.leg_sign, -1);
    assert!(rep.report.passed(), "{:?}", rep.report.mismatches);
    assert!(order_stable(&curve, chi).unwrap());
}

#[test]
fn truncated_order_is_reported() {
    let curve = SpectralCurve::cns(0);
    assert!(matches!(tr_by_chi(&curve, 3), Err(spintau_core::Error::SeriesOrder { .. })));
}
