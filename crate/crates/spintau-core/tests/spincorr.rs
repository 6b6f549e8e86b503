use spintau_core::exactcore::{q, qi, Truncation};
use spintau_core::spincorr::*;

#[test]
fn genus0_routes() {
    let mut trr = Genus0Trr::new();
    assert_eq!(trr.correlator(&[0, 0, 0]), qi(1));
    assert_eq!(trr.correlator(&[1, 0, 0]), q(1, 2));
    assert_eq!(genus0_closed_form(&[0]), q(1, 2));
    assert_eq!(genus0_closed_form(&[1, 0]), q(1, 8));
    assert_eq!(trr.correlator(&[0]), q(1, 2));
    assert_eq!(trr.correlator(&[1, 0]), q(1, 8));
    for m in genus0_indices(5, 4) {
        assert_eq!(trr.correlator(&m), genus0_closed_form(&m), "{m:?}");
    }
}

#[test]
fn triple_route_small() {
    let t = Truncation::new(2, 6, 4, 6);
    let r = triple_route_compare(t).unwrap();
    println!("{}", r.summary());
    for m in r.mismatches.iter().take(5) {
        println!("{m:?}");
    }
    assert!(r.mismatches.is_empty());
    assert!(r.coefficients >= 100);
}
