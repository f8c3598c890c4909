#![allow(dead_code)]

use proptest::prelude::*;
use supersplit_core::{OddMonomial, Rational, RingSignature, SuperMonomial, SuperPolynomial};

pub fn ring(m: usize, n: usize) -> RingSignature {
    RingSignature::projective(m, n).unwrap()
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Small random polynomials: up to `max_terms` terms, exponents below
/// `max_exp`, coefficients `p/q` with `|p| ≤ 5`, `1 ≤ q ≤ 3`.
pub fn poly(
    r: RingSignature,
    max_terms: usize,
    max_exp: u32,
) -> impl Strategy<Value = SuperPolynomial> {
    let vars = r.even_count();
    let odd_bits = if r.odd_count() == 0 {
        0
    } else {
        (1u64 << r.odd_count()) - 1
    };
    let term = (
        proptest::collection::vec(0..max_exp, vars),
        0..=odd_bits,
        -5i64..=5,
        1i64..=3,
    );
    proptest::collection::vec(term, 0..=max_terms).prop_map(move |terms| {
        SuperPolynomial::from_terms(
            r,
            terms.into_iter().map(|(e, mask, p, q)| {
                (
                    SuperMonomial::new(e, OddMonomial::from_mask(mask)),
                    rational(p, q),
                )
            }),
        )
    })
}
