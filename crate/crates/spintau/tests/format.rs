use spintau::format::{canonical, parse, rational, table, table_from_json};
use spintau_core::exactcore::q;
use spintau_core::spincorr::spin_correlators;
use spintau_core::virasoro::kw_correlators;
use spintau_core::Truncation;

#[test]
fn rationals_roundtrip() {
    for r in [q(0, 1), q(-1, 240), q(5, 48), q(12, 1)] {
        assert_eq!(parse(&rational(&r)).unwrap(), r);
    }
    assert_eq!(rational(&q(4, 1)), "4");
    assert!(parse("1/0").is_err());
}

#[test]
fn tables_roundtrip() {
    let t = Truncation::new(2, 4, 4, 5);
    for original in [kw_correlators(t), spin_correlators(t).unwrap()] {
        let json = table(&original);
        let back = table_from_json(&json).unwrap();
        assert_eq!(canonical(&table(&back)), canonical(&json));
        assert_eq!(back, original);
    }
}
