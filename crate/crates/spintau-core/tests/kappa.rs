use spintau_core::exactcore::{q, qi, FormalPolynomial, Truncation};
use spintau_core::kappa::*;

fn kappa(pairs: &[(usize, u32, i64, i64)]) -> FormalPolynomial {
    let mut p = FormalPolynomial::zero();
    for &(j, e, n, d) in pairs {
        p = p.add(&FormalPolynomial::monomial(j - 1, e, q(n, d)));
    }
    p
}

#[test]
fn sigma_and_k() {
    let s = sigma_coefficients(4);
    assert_eq!(s.0[0], qi(3));
    assert_eq!(s.0[1], q(-21, 2));
    let k = k_polynomials(4);
    assert_eq!(k[1].poly, kappa(&[(1, 1, 3, 1)]));
    assert_eq!(
        k[2].poly,
        kappa(&[(1, 2, 9, 2)]).add(&kappa(&[(2, 1, -21, 2)]))
    );
    let mut k3 = kappa(&[(1, 3, 9, 2), (3, 1, 69, 1)]);
    k3 = k3.add(
        &FormalPolynomial::var(0)
            .mul(&FormalPolynomial::var(1))
            .scale(&q(-63, 2)),
    );
    assert_eq!(k[3].poly, k3);
}

#[test]
fn translation_identity() {
    let p = translation_polynomials(3);
    assert_eq!(p.p(1), &FormalPolynomial::var(0));
}

#[test]
fn kappa_numbers() {
    assert_eq!(kappa_psi_number(1, &[1], &[0]).unwrap(), q(1, 24));
    assert_eq!(kappa_psi_number(0, &[1], &[0, 0, 0, 0]).unwrap(), qi(1));
    assert_eq!(kappa_psi_number(0, &[], &[0, 0, 0]).unwrap(), qi(1));
    assert_eq!(kappa_psi_number(2, &[3], &[]).unwrap(), q(43, 2880));
    assert_eq!(kappa_psi_number(2, &[1, 1], &[]).unwrap(), q(1, 240));
    assert_eq!(kappa_psi_number(2, &[0, 0, 1], &[]).unwrap(), q(1, 1152));
}

#[test]
fn vanishing() {
    assert_eq!(vanishing_check(2, 4, &[], &[0]).unwrap(), qi(0));
    assert_eq!(vanishing_check(3, 5, &[1], &[]).unwrap(), qi(0));
    assert!(vanishing_check(2, 3, &[], &[]).is_err());
    let k3 = k_polynomials(3).pop().unwrap();
    assert_eq!(
        KappaEngine::new().kappa_integral(2, &k3.poly, &[]).unwrap(),
        q(-1, 240)
    );
}

#[test]
fn zk_and_bracket() {
    let t = Truncation::new(2, 6, 5, 8);
    let zk = zk_correlators(t).unwrap();
    assert_eq!(zk.get(1, &[0]), q(1, 8));
    assert_eq!(zk.get(0, &[0, 0, 0]), qi(1));
    let br = bracket_psi_correlators(&zk).unwrap();
    assert_eq!(br.get(0, &[1, 0, 0]), q(1, 2));
    assert_eq!(br.get(1, &[1]), q(5, 48));
    assert_eq!(bracket_two_point(1), q(1, 8));
}
