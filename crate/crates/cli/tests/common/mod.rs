#![allow(dead_code)]

use rand::Rng;
use supersplit_core::{OddMonomial, Rational, RingSignature, SuperMonomial, SuperPolynomial};

pub fn ring(m: usize, n: usize) -> RingSignature {
    RingSignature::projective(m, n).unwrap()
}

pub fn rational<R: Rng>(rng: &mut R, nonzero: bool) -> Rational {
    loop {
        let p: i64 = rng.gen_range(-9..=9);
        let q: i64 = rng.gen_range(1..=7);
        if !nonzero || p != 0 {
            return Rational::new(p.into(), q.into());
        }
    }
}

/// Random polynomial with up to `terms` terms and exponents below `max_exp`.
pub fn polynomial<R: Rng>(
    rng: &mut R,
    r: RingSignature,
    terms: usize,
    max_exp: u32,
) -> SuperPolynomial {
    let odd_bits = if r.odd_count() == 0 {
        0
    } else {
        (1u64 << r.odd_count()) - 1
    };
    let count = rng.gen_range(0..=terms);
    SuperPolynomial::from_terms(
        r,
        (0..count)
            .map(|_| {
                let exps = (0..r.even_count())
                    .map(|_| rng.gen_range(0..max_exp))
                    .collect();
                let mask = rng.gen_range(0..=odd_bits);
                (
                    SuperMonomial::new(exps, OddMonomial::from_mask(mask)),
                    rational(rng, true),
                )
            })
            .collect::<Vec<_>>(),
    )
}
