use supersplit_bench::{affine_translation, degree_two_derivation, dense_polynomial, quadric, rnc};
use supersplit_core::ideals::{decide_split, normalize};
use supersplit_core::Order;

#[test]
fn fixtures_are_well_formed() {
    for n in [4, 8, 12] {
        assert!(dense_polynomial(n).has_parity(supersplit_core::Parity::Even));
    }
    for n in [4, 6, 8] {
        let d = degree_two_derivation(n);
        assert!(!d.is_zero());
        assert_eq!(d.exp().unwrap().filtration_order(), Order::Finite(2));
    }
    assert!(decide_split(&quadric(1)).unwrap().verdict.is_non_split());
    assert!(decide_split(&rnc(4, -2)).unwrap().verdict.is_split());
    assert!(normalize(&affine_translation())
        .unwrap()
        .certificate()
        .is_some());
}
