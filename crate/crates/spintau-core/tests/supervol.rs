use spintau_core::exactcore::{q, qi, FormalPolynomial, Truncation};
use spintau_core::spincorr::{assemble_z_omega, spin_correlators, UnstableData};
use spintau_core::supervol::*;

fn pi2(e: u32, c: spintau_core::Rational) -> FormalPolynomial {
    FormalPolynomial::monomial(0, e, c)
}

#[test]
fn small_volumes() {
    let v = volume_polynomial(1, 1, 2);
    println!("{}", v.render());
    assert_eq!(v.coefficient(0, &[0]), pi2(0, q(1, 8)));
    assert_eq!(v.coefficient(1, &[1]), pi2(0, q(5, 96)));
    assert_eq!(v.coefficient(1, &[0]), pi2(1, q(5, 8)));
    let v03 = volume_polynomial(0, 3, 2);
    println!("{}", v03.render());
    assert_eq!(v03.coefficient(1, &[0, 0, 0]), pi2(0, qi(1)));
    let v12 = volume_polynomial(1, 2, 2);
    assert_eq!(v12.slice(0).len(), 1);
    assert_eq!(v12.coefficient(0, &[0, 0]), pi2(0, q(1, 8)));
    assert!(v12.is_symmetric());
    let v21 = volume_polynomial(2, 1, 1);
    println!("{}", v21.render());
    println!("{}", volume_polynomial(0, 1, 3).render());
    println!("{}", volume_polynomial(0, 2, 2).render());
}

#[test]
fn exact_recursion() {
    let t = Truncation::new(2, 6, 4, 5);
    let spin = spin_correlators(t).unwrap();
    let z = assemble_z_omega(&spin, &UnstableData::new(t).unwrap()).unwrap();
    let tr = translated_free_energy(t);
    let r = translated_virasoro_check(&z, &tr, 4).unwrap();
    println!("{r:?}");
    assert!(r.all_zero());
}
