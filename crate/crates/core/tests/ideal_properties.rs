mod common;

use common::{poly, rational, ring};
use proptest::prelude::*;
use supersplit_core::ideals::{
    decide_split, lift_splitting_degree, max_splitting_degree, normalize, rnc_family_ideal,
    LiftOutcome,
};
use supersplit_core::{
    Generator, Order, Parity, RingSignature, SplitCertificate, SuperIdeal, SuperPolynomial,
};

/// Nonzero linear forms in the even and odd generators.
fn linear_form(r: RingSignature) -> impl Strategy<Value = SuperPolynomial> {
    let count = r.even_count() + r.odd_count();
    proptest::collection::vec((-3i64..=3, 1i64..=2), count)
        .prop_filter("nonzero", |c| c.iter().any(|(p, _)| *p != 0))
        .prop_map(move |coeffs| {
            r.generators()
                .zip(coeffs)
                .fold(SuperPolynomial::zero(r), |acc, (g, (p, q))| {
                    &acc + &SuperPolynomial::generator(r, g)
                        .unwrap()
                        .scale(&rational(p, q))
                })
        })
}

fn linear_ideal() -> impl Strategy<Value = SuperIdeal> {
    (1usize..=4, 0usize..=4).prop_flat_map(|(m, n)| {
        let r = ring(m, n);
        proptest::collection::vec(linear_form(r), 1..=3)
            .prop_map(move |gens| SuperIdeal::projective(r, gens, Some(1)).unwrap())
    })
}

/// Affine systems `x_i + h_i` with `h_i` even of theta-degree at least two.
fn perturbed_coordinates() -> impl Strategy<Value = SuperIdeal> {
    let r = ring(1, 4);
    proptest::collection::vec(poly(r, 3, 2), 1..=2).prop_map(move |hs| {
        let gens = hs
            .iter()
            .enumerate()
            .map(|(i, h)| {
                let tail = &h.proj_theta_degree(2) + &h.proj_theta_degree(4);
                &SuperPolynomial::x(r, i) + &tail
            })
            .collect();
        SuperIdeal::affine(r, gens).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn linear_subvarieties_split_trivially(ideal in linear_ideal()) {
        prop_assert_eq!(max_splitting_degree(&ideal), Order::Infinite);
        let decision = decide_split(&ideal).unwrap();
        let cert = decision.verdict.certificate().expect("global certificate");
        prop_assert!(cert.automorphism.is_identity());
        prop_assert!(cert.multiplier_is_identity());
    }

    #[test]
    fn splitting_degree_ignores_unit_rescaling(
        gens in proptest::collection::vec(poly(ring(2, 4), 4, 3), 1..4),
        units in proptest::collection::vec((1i64..=7, 1i64..=5, any::<bool>()), 4),
    ) {
        let r = ring(2, 4);
        let gens: Vec<_> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let scaled: Vec<_> = gens
            .iter()
            .zip(&units)
            .map(|(g, &(p, q, neg))| g.scale(&rational(if neg { -p } else { p }, q)))
            .collect();
        let a = SuperIdeal::affine(r, gens).unwrap();
        let b = SuperIdeal::affine(r, scaled).unwrap();
        prop_assert_eq!(max_splitting_degree(&a), max_splitting_degree(&b));
    }

    #[test]
    fn lifts_raise_the_splitting_degree(ideal in perturbed_coordinates()) {
        let canonical = ideal.canonicalized();
        let m = max_splitting_degree(&canonical);
        prop_assume!(!m.is_infinite());
        match lift_splitting_degree(&canonical, m).unwrap() {
            LiftOutcome::NewSystem(step) => {
                let next = max_splitting_degree(&step.ideal);
                prop_assert!(next > m, "{} -> {}", m, next);
            }
            LiftOutcome::Blocked { residue, .. } => {
                prop_assert_eq!(Order::Finite(residue.degree), m);
            }
        }
    }

    #[test]
    fn normalization_bookkeeping_replays(ideal in perturbed_coordinates()) {
        let norm = normalize(&ideal).unwrap();
        let bookkeeping = SplitCertificate {
            automorphism: norm.automorphism.clone(),
            normalized_generators: norm.current.generators().to_vec(),
            multiplier: norm.multiplier.clone(),
        };
        prop_assert!(bookkeeping.verify(norm.canonical.generators()));
        if let Some(cert) = norm.certificate() {
            prop_assert!(cert.verify(norm.canonical.generators()));
            prop_assert_eq!(max_splitting_degree(&norm.current), Order::Infinite);
        }
    }
}

#[test]
fn coordinate_translation_certificate() {
    let r = ring(2, 2);
    let t12 = SuperPolynomial::theta_product(r, &[1, 2]);
    let ideal = SuperIdeal::affine(r, vec![&SuperPolynomial::x(r, 0) + &t12]).unwrap();
    let cert = normalize(&ideal).unwrap().certificate().unwrap();
    assert_eq!(cert.normalized_generators, vec![SuperPolynomial::x(r, 0)]);
    assert_eq!(
        cert.automorphism.image(Generator::Even(0)),
        &(&SuperPolynomial::x(r, 0) - &t12)
    );
    assert!(cert.verify(ideal.generators()));
}

#[test]
fn quadric_family_decisions() {
    for (p, q) in [(1, 1), (-3, 2), (5, 7)] {
        let d = decide_split(&rnc_family_ideal(2, &rational(p, q)).unwrap()).unwrap();
        assert!(d.verdict.is_non_split());
        let residue = d.verdict.residue().unwrap();
        assert_eq!(residue.degree, 2);
        assert!(!residue.removable_globally);
    }
    let split = decide_split(&rnc_family_ideal(2, &rational(0, 1)).unwrap()).unwrap();
    assert!(split.verdict.is_split());
}

#[test]
fn parity_of_family_generators() {
    for d in 1..=5 {
        let ideal = rnc_family_ideal(d, &rational(1, 1)).unwrap();
        assert!(ideal.is_parity_homogeneous());
        let top = ideal.generators().last().unwrap();
        assert_eq!(
            top.parity(),
            Some(Parity::of_degree(if d == 2 { 0 } else { d }))
        );
    }
}
