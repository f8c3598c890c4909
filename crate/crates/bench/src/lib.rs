//! Fixed inputs shared by the benchmarks.

use supersplit_core::ideals::rnc_family_ideal;
use supersplit_core::{
    Generator, Rational, RingSignature, SuperDerivation, SuperIdeal, SuperPolynomial,
};

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// A dense-ish even polynomial on `P^{2|n}` touching every odd variable.
pub fn dense_polynomial(n: usize) -> SuperPolynomial {
    let r = RingSignature::projective(2, n).expect("n fits");
    let x = |i| SuperPolynomial::x(r, i);
    let mut acc = &(&x(0) * &x(2)) - &x(1).pow(2);
    for a in 1..n {
        let pair = SuperPolynomial::theta_product(r, &[a, a + 1]).scale(&q(a as i64));
        acc = &acc + &(&x(a % 3) * &pair);
    }
    acc
}

/// A degree-2 derivation on `P^{1|n}` moving every generator.
pub fn degree_two_derivation(n: usize) -> SuperDerivation {
    let r = RingSignature::projective(1, n).expect("n fits");
    let mut images = Vec::new();
    for i in 0..2 {
        let a = i % n + 1;
        let b = (i + 1) % n + 1;
        if a != b {
            images.push((
                Generator::Even(i),
                SuperPolynomial::theta_product(r, &[a.min(b), a.max(b)]),
            ));
        }
    }
    if n >= 3 {
        for a in 1..=n {
            let others: Vec<usize> = (1..=n).filter(|&b| b != a).take(3).collect();
            if others.len() == 3 {
                images.push((
                    Generator::Odd(a),
                    SuperPolynomial::theta_product(r, &others),
                ));
            }
        }
    }
    SuperDerivation::from_images(r, 2, images).expect("valid images")
}

pub fn quadric(lambda: i64) -> SuperIdeal {
    rnc_family_ideal(2, &q(lambda)).expect("quadric")
}

pub fn rnc(d: usize, lambda: i64) -> SuperIdeal {
    rnc_family_ideal(d, &q(lambda)).expect("family")
}

/// `{x0 + θ1θ2, x1 + x0θ1θ3}` in affine charts.
pub fn affine_translation() -> SuperIdeal {
    let r = RingSignature::projective(2, 4).expect("P^{2|4}");
    let t = |i: &[usize]| SuperPolynomial::theta_product(r, i);
    let g0 = &SuperPolynomial::x(r, 0) + &t(&[1, 2]);
    let g1 = &SuperPolynomial::x(r, 1) + &(&SuperPolynomial::x(r, 0) * &t(&[1, 3]));
    SuperIdeal::affine(r, vec![g0, g1]).expect("affine system")
}
