use itertools::Itertools;
use proptest::prelude::*;
use supersplit_core::cohomology::{
    conormal_sequence_rnc, obstruction_spaces, obstruction_spaces_with_rank,
    restrict_wedge_tangent, serre_twist_bound, tangent_sequence_rnc, BundleSequence, DeltaStatus,
    TwistBound,
};
use supersplit_core::LineBundleSum;

/// Number of monomials `s^a t^b` with `a + b = k`, `a, b ≥ 0`.
fn binary_forms(k: i64) -> u64 {
    (0..=k.max(-1)).filter(|a| k - a >= 0).count() as u64
}

/// Čech count: Laurent monomials `s^a t^b`, `a + b = k`, with both exponents
/// at most `−1`.
fn cech_h1(k: i64) -> u64 {
    (k.min(0)..=0).filter(|&a| a <= -1 && k - a <= -1).count() as u64
}

#[test]
fn line_bundle_cohomology_matches_monomial_counts() {
    for k in -20..=20 {
        let l = LineBundleSum::line(k);
        assert_eq!(l.h0(), binary_forms(k), "h0 O({k})");
        assert_eq!(l.h1(), cech_h1(k), "h1 O({k})");
    }
}

fn bundle() -> impl Strategy<Value = LineBundleSum> {
    proptest::collection::vec(-8i64..=8, 0..5).prop_map(LineBundleSum::new)
}

proptest! {
    #[test]
    fn wedge_matches_subset_enumeration(b in bundle(), k in 0usize..5) {
        let w = b.wedge(k);
        if k > b.rank() {
            prop_assert!(w.is_err());
        } else {
            let oracle = LineBundleSum::new(
                b.degrees().iter().combinations(k).map(|c| c.into_iter().sum::<i64>()),
            );
            prop_assert_eq!(w.unwrap(), oracle);
        }
    }

    #[test]
    fn top_wedge_is_determinant(b in bundle()) {
        let top = b.wedge(b.rank()).unwrap();
        prop_assert_eq!(top.rank(), 1);
        prop_assert_eq!(top.degree(), b.degree());
    }

    #[test]
    fn hom_is_dual_tensor(a in bundle(), b in bundle()) {
        prop_assert_eq!(a.hom(&b), a.dual().tensor(&b));
        prop_assert_eq!(a.hom(&b).rank(), a.rank() * b.rank());
    }

    #[test]
    fn cohomology_is_additive_and_riemann_roch(a in bundle(), b in bundle()) {
        let s = a.direct_sum(&b);
        prop_assert_eq!(s.h0(), a.h0() + b.h0());
        prop_assert_eq!(s.h1(), a.h1() + b.h1());
        prop_assert_eq!(s.euler_characteristic(), s.degree() + s.rank() as i64);
    }

    #[test]
    fn split_sequences_are_euler_additive(a in bundle(), b in bundle(), t in bundle()) {
        let seq = BundleSequence::new(a.clone(), a.direct_sum(&b), b).unwrap();
        prop_assert!(seq.euler_additive());
        prop_assert!(seq.hom_into(&t).euler_additive());
    }

    #[test]
    fn wedge_of_restricted_tangent_is_balanced(m in 1usize..7, d in 1usize..6, l in 0usize..7) {
        prop_assume!(l <= m);
        let w = restrict_wedge_tangent(m, d, l).unwrap();
        prop_assert!(w.is_balanced());
        // the wedge of the restricted tangent bundle agrees in rank and degree
        let t = restrict_wedge_tangent(m, d, 1).unwrap().wedge(l).unwrap();
        prop_assert_eq!((w.rank(), w.degree()), (t.rank(), t.degree()));
    }
}

#[test]
fn non_additive_sequence_is_rejected() {
    let r = BundleSequence::new(
        LineBundleSum::line(1),
        LineBundleSum::line(3),
        LineBundleSum::zero(),
    );
    assert!(r.is_err());
}

#[test]
fn quadric_bundle_facts() {
    let seq = tangent_sequence_rnc(2).unwrap();
    assert_eq!(seq.sub(), &LineBundleSum::line(2));
    assert_eq!(seq.middle(), &LineBundleSum::repeated(3, 2));
    assert_eq!(seq.quotient(), &LineBundleSum::line(4));
    let chi = |b: &LineBundleSum| b.euler_characteristic();
    assert_eq!(
        (chi(seq.sub()), chi(seq.quotient()), chi(seq.middle())),
        (3, 5, 8)
    );
}

#[test]
fn obstruction_tables() {
    for d in 1..=8 {
        assert!(conormal_sequence_rnc(d).unwrap().euler_additive());
        for n in [1, d, d + 2] {
            let report = obstruction_spaces_with_rank(d, n).unwrap();
            for row in &report.rows {
                assert_eq!(row.six_term_alternating_sum(), 0, "d={d} n={n} k={}", row.k);
                if row.k % 2 == 1 {
                    assert_eq!(row.hom_nu.bundle.rank(), 0);
                    assert_eq!(row.delta_status, DeltaStatus::Zero);
                }
            }
        }
    }
    let quadric = obstruction_spaces(2).unwrap();
    let row = quadric.row(2).unwrap();
    assert_eq!((row.hom_nu.h0, row.q.h1), (1, 1));
    assert_eq!(row.delta_status, DeltaStatus::Isomorphism);
    for (d, degree) in [(4usize, -10i64), (6, -28)] {
        let row = obstruction_spaces(d).unwrap().row(d).unwrap().clone();
        assert_eq!(row.hom_nu.bundle, LineBundleSum::repeated(degree, d - 1));
        assert_eq!(row.hom_nu.h0, 0);
    }
}

#[test]
fn serre_thresholds() {
    assert_eq!(serre_twist_bound(1).unwrap().bound, TwistBound::Unbounded);
    assert_eq!(serre_twist_bound(2).unwrap().bound, TwistBound::Finite(-1));
    assert_eq!(serre_twist_bound(3).unwrap().bound, TwistBound::Finite(0));
    assert_eq!(serre_twist_bound(4).unwrap().bound, TwistBound::Finite(0));
    for d in 1..=7 {
        let report = obstruction_spaces(d).unwrap();
        let bound = serre_twist_bound(d).unwrap();
        for &(k, threshold) in &bound.thresholds {
            let row = report.row(k).unwrap();
            for l in threshold - 6..=threshold + 6 {
                let vanishes = row.twisted_hom_nu(d, l).h0() == 0;
                assert_eq!(vanishes, l <= threshold, "d={d} k={k} l={l}");
            }
        }
    }
}
