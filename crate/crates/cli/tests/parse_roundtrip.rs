mod common;

use proptest::prelude::*;
use supersplit_cli::ideal_file::IdealFile;
use supersplit_cli::parse::parse_expression;
use supersplit_core::{OddMonomial, Rational, SuperMonomial, SuperPolynomial};

fn canonical_poly(m: usize, n: usize) -> impl Strategy<Value = SuperPolynomial> {
    let r = common::ring(m, n);
    let odd_bits = (1u64 << n) - 1;
    let term = (
        proptest::collection::vec(0u32..4, m + 1),
        0..=odd_bits,
        -12i64..=12,
        1i64..=9,
    );
    proptest::collection::vec(term, 0..6).prop_map(move |terms| {
        SuperPolynomial::from_terms(
            r,
            terms.into_iter().map(|(e, mask, p, q)| {
                (
                    SuperMonomial::new(e, OddMonomial::from_mask(mask)),
                    Rational::new(p.into(), q.into()),
                )
            }),
        )
    })
}

fn sized_poly() -> impl Strategy<Value = SuperPolynomial> {
    (0usize..4, 1usize..6).prop_flat_map(|(m, n)| canonical_poly(m, n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn parse_inverts_render(p in sized_poly()) {
        let back = parse_expression(&p.to_string(), p.ring(), None).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn files_round_trip(gens in proptest::collection::vec(canonical_poly(2, 3), 1..4)) {
        let gens: Vec<_> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let file = IdealFile {
            ring: common::ring(2, 3),
            degree: None,
            lambda: None,
            ambient: supersplit_core::Ambient::Projective,
            generators: gens,
        };
        let text = file.render();
        let back = IdealFile::parse(&text, None, 12).unwrap();
        prop_assert_eq!(back.render(), text);
        prop_assert_eq!(back, file);
    }

    #[test]
    fn product_order_gives_koszul_sign(a in 1usize..6, b in 1usize..6) {
        let r = common::ring(0, 5);
        let ab = parse_expression(&format!("t{a}*t{b}"), r, None).unwrap();
        let ba = parse_expression(&format!("t{b}*t{a}"), r, None).unwrap();
        prop_assert_eq!(ab, -ba);
    }
}

#[test]
fn expansion_matches_hand_computation() {
    let r = common::ring(2, 2);
    let p = parse_expression("(x0 + t1*t2)^2", r, None).unwrap();
    let x0 = SuperPolynomial::x(r, 0);
    let t12 = SuperPolynomial::theta_product(r, &[1, 2]);
    let two = Rational::from_integer(2.into());
    assert_eq!(p, &x0.pow(2) + &(&x0 * &t12).scale(&two));
    assert_eq!(parse_expression("t2*t1", r, None).unwrap(), -t12);
}
