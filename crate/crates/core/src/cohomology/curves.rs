use std::fmt;
use std::fmt::Write as _;

use num::integer::binomial;
use num::Zero;
use serde::Serialize;

use super::{BundleSequence, CohomologyError, LineBundleSum};
use crate::ideals;
use crate::superalgebra::{Parity, Rational, RingSignature, SuperPolynomial};
use crate::verdict::{Evidence, ObstructionResidue, Verdict};

fn require(
    what: &'static str,
    constraint: &'static str,
    value: usize,
    ok: bool,
) -> Result<(), CohomologyError> {
    if ok {
        Ok(())
    } else {
        Err(CohomologyError::OutOfRange {
            what,
            constraint,
            value: value as i64,
        })
    }
}

/// `T_{ℙ^m}` restricted to a rational curve of degree `d`: balanced, rank
/// `m`, degree `d(m+1)`.
pub fn restrict_tangent_rnc(m: usize, d: usize) -> Result<LineBundleSum, CohomologyError> {
    restrict_wedge_tangent(m, d, 1)
}

/// `∧^ℓ T_{ℙ^m}` restricted to a rational curve of degree `d`: balanced, rank
/// `C(m, ℓ)`, degree `d(m+1)·C(m−1, ℓ−1)`.
pub fn restrict_wedge_tangent(
    m: usize,
    d: usize,
    l: usize,
) -> Result<LineBundleSum, CohomologyError> {
    require("ambient dimension", "m >= 1", m, m >= 1)?;
    require("curve degree", "d >= 1", d, d >= 1)?;
    require("wedge power", "0 <= l <= m", l, l <= m)?;
    if l == 0 {
        return Ok(LineBundleSum::line(0));
    }
    let rank = binomial(m, l);
    let degree = (d * (m + 1) * binomial(m - 1, l - 1)) as i64;
    Ok(LineBundleSum::balanced(rank, degree))
}

/// Normal bundle of the rational normal curve of degree `d`: `𝒪(d+2)^{⊕(d−1)}`.
pub fn normal_bundle_rnc(d: usize) -> Result<LineBundleSum, CohomologyError> {
    require("normal bundle", "d >= 2", d, d >= 2)?;
    Ok(LineBundleSum::repeated(d as i64 + 2, d - 1))
}

fn normal_or_zero(d: usize) -> LineBundleSum {
    normal_bundle_rnc(d).unwrap_or_else(|_| LineBundleSum::zero())
}

/// `0 → T_{ℙ¹} → T_{ℙ^d}|_V → ν → 0`.
pub fn tangent_sequence_rnc(d: usize) -> Result<BundleSequence, CohomologyError> {
    BundleSequence::new(
        LineBundleSum::line(2),
        restrict_tangent_rnc(d, d)?,
        normal_or_zero(d),
    )
}

/// `0 → ν* → T*_{ℙ^d}|_V → T*_{ℙ¹} → 0`.
pub fn conormal_sequence_rnc(d: usize) -> Result<BundleSequence, CohomologyError> {
    let t = tangent_sequence_rnc(d)?;
    BundleSequence::new(t.quotient().dual(), t.middle().dual(), t.sub().dual())
}

/// What exactness alone says about the connecting map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeltaStatus {
    Zero,
    Injective,
    Surjective,
    Isomorphism,
    /// Nonzero but neither injective nor surjective.
    NotDetermined,
}

impl fmt::Display for DeltaStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DeltaStatus::Zero => "zero",
            DeltaStatus::Injective => "injective",
            DeltaStatus::Surjective => "surjective",
            DeltaStatus::Isomorphism => "isomorphism",
            DeltaStatus::NotDetermined => "not-determined",
        })
    }
}

/// A bundle together with its cohomology dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomTerm {
    pub bundle: LineBundleSum,
    pub text: String,
    pub h0: u64,
    pub h1: u64,
}

impl HomTerm {
    fn new(bundle: LineBundleSum) -> Self {
        HomTerm {
            text: bundle.to_string(),
            h0: bundle.h0(),
            h1: bundle.h1(),
            bundle,
        }
    }
}

/// One degree `k` of the obstruction calculus.
///
/// `q` is `Hom(T*_{(±)^k}, ∧^k T*_−)`, `middle` the Hom out of the ambient
/// cotangent term and `hom_nu` the Hom out of the conormal term, so that
/// `0 → q → middle → hom_nu → 0` is exact and `δ: H⁰(hom_nu) → H¹(q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionRow {
    pub k: usize,
    pub parity: Parity,
    pub hom_nu: HomTerm,
    pub middle: HomTerm,
    pub q: HomTerm,
    pub delta_rank: u64,
    pub delta_status: DeltaStatus,
}

impl ObstructionRow {
    fn from_sequence(k: usize, seq: &BundleSequence) -> Self {
        let q = HomTerm::new(seq.sub().clone());
        let middle = HomTerm::new(seq.middle().clone());
        let hom_nu = HomTerm::new(seq.quotient().clone());
        // 0 → H⁰q → H⁰M → H⁰N →δ H¹q → H¹M → H¹N → 0
        let image_before = middle.h0 - q.h0;
        let delta_rank = hom_nu.h0 - image_before;
        let injective = delta_rank == hom_nu.h0;
        let surjective = delta_rank == q.h1;
        let delta_status = match (delta_rank, injective, surjective) {
            (0, _, _) => DeltaStatus::Zero,
            (_, true, true) => DeltaStatus::Isomorphism,
            (_, true, false) => DeltaStatus::Injective,
            (_, false, true) => DeltaStatus::Surjective,
            _ => DeltaStatus::NotDetermined,
        };
        ObstructionRow {
            k,
            parity: Parity::of_degree(k),
            hom_nu,
            middle,
            q,
            delta_rank,
            delta_status,
        }
    }

    /// Alternating sum of the six cohomology dimensions; zero by exactness.
    pub fn six_term_alternating_sum(&self) -> i64 {
        let d = |t: &HomTerm| t.h0 as i64 - t.h1 as i64;
        d(&self.q) - d(&self.middle) + d(&self.hom_nu)
    }

    /// `Hom(ν*, ∧^k T*_−) ⊗ 𝒪(k·d·ℓ)`: the conormal Hom term after pulling
    /// back a twist by `𝒪(kℓ)` along the degree-`d` map.
    pub fn twisted_hom_nu(&self, d: usize, l: i64) -> LineBundleSum {
        self.hom_nu.bundle.twist(self.k as i64 * d as i64 * l)
    }

    /// Largest `ℓ` with `h⁰` of the twisted conormal Hom term zero; `None`
    /// when the term has rank zero (no constraint).
    pub fn twist_threshold(&self, d: usize) -> Option<i64> {
        let top = self.hom_nu.bundle.max_degree()?;
        let step = (self.k * d) as i64;
        Some((-1 - top).div_euclid(step))
    }
}

/// Per-degree obstruction table for the rational normal curve of degree `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub d: usize,
    pub odd_rank: usize,
    pub odd_cotangent: LineBundleSum,
    pub tangent_restricted: LineBundleSum,
    pub normal: LineBundleSum,
    pub rows: Vec<ObstructionRow>,
}

impl ObstructionReport {
    pub fn row(&self, k: usize) -> Option<&ObstructionRow> {
        self.rows.iter().find(|r| r.k == k)
    }

    /// Aligned text table.
    pub fn to_table(&self) -> String {
        let header = ["k", "parity", "hom_nu", "middle", "Q", "delta"];
        let cell = |t: &HomTerm| format!("{}/{} {}", t.h0, t.h1, t.text);
        let body: Vec<[String; 6]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.k.to_string(),
                    r.parity.to_string(),
                    cell(&r.hom_nu),
                    cell(&r.middle),
                    cell(&r.q),
                    r.delta_status.to_string(),
                ]
            })
            .collect();
        let mut widths = header.map(str::len);
        for row in &body {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let mut out = String::new();
        let mut line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            let _ = writeln!(out, "{}", padded.join("  ").trim_end());
        };
        line(&header.map(String::from));
        for row in &body {
            line(row);
        }
        out
    }
}

/// Obstruction table for `V ⊂ ℙ^{d|d}`, odd cotangent `𝒪(−d)^{⊕d}`.
pub fn obstruction_spaces(d: usize) -> Result<ObstructionReport, CohomologyError> {
    obstruction_spaces_with_rank(d, d)
}

/// Obstruction table for an even embedding of the degree-`d` rational normal
/// curve with `n` odd directions, rows `2 ≤ k ≤ n`.
///
/// Even `k` uses the even conormal sequence; odd `k` uses the odd one,
/// whose conormal term vanishes for an even embedding.
pub fn obstruction_spaces_with_rank(
    d: usize,
    n: usize,
) -> Result<ObstructionReport, CohomologyError> {
    require("curve degree", "d >= 1", d, d >= 1)?;
    let odd_cotangent = LineBundleSum::repeated(-(d as i64), n);
    let even = conormal_sequence_rnc(d)?;
    let odd = BundleSequence::new(
        LineBundleSum::zero(),
        odd_cotangent.clone(),
        odd_cotangent.clone(),
    )?;
    let rows = (2..=n)
        .map(|k| {
            let target = odd_cotangent.wedge(k)?;
            let seq = if k % 2 == 0 { &even } else { &odd };
            Ok(ObstructionRow::from_sequence(k, &seq.hom_into(&target)))
        })
        .collect::<Result<Vec<_>, CohomologyError>>()?;
    Ok(ObstructionReport {
        d,
        odd_rank: n,
        odd_cotangent,
        tangent_restricted: restrict_tangent_rnc(d, d)?,
        normal: normal_or_zero(d),
        rows,
    })
}

/// Splitness of the family `V_λ ⊂ ℙ^{d|d}` cut out by the rational normal
/// curve of degree `d` decorated with `λθ₁⋯θ_d`, read off the obstruction
/// table.
pub fn decide_family(d: usize, lambda: &Rational) -> Result<Verdict, CohomologyError> {
    require("curve degree", "d >= 1", d, d >= 1)?;
    if d == 1 {
        let ideal = ideals::rnc_family_ideal(1, lambda).expect("degree-one family");
        let decision = ideals::decide_split(&ideal).expect("degree-one family is valid");
        return Ok(decision.verdict);
    }
    let report = obstruction_spaces(d)?;
    if d == 2 {
        let row = report.row(2).expect("d = 2 has a k = 2 row").clone();
        if lambda.is_zero() {
            let summary = "lambda = 0, so the obstruction class delta(lambda) vanishes".to_string();
            return Ok(Verdict::Split(
                crate::verdict::SplitEvidence::Cohomological(Evidence {
                    summary,
                    rows: vec![row],
                }),
            ));
        }
        if matches!(
            row.delta_status,
            DeltaStatus::Isomorphism | DeltaStatus::Injective
        ) {
            let ring = RingSignature::projective(2, 2).expect("P^{2|2}");
            let residue = SuperPolynomial::theta_product(ring, &[1, 2]).scale(lambda);
            return Ok(Verdict::NonSplit {
                residue: ObstructionResidue {
                    degree: 2,
                    residue: vec![residue],
                    removable_globally: false,
                },
                evidence: Evidence {
                    summary: format!(
                        "delta is {} on H0(Hom(nu*, wedge^2 T*_-)), so delta(lambda) != 0",
                        if row.delta_status == DeltaStatus::Isomorphism {
                            "an isomorphism"
                        } else {
                            "injective"
                        }
                    ),
                    rows: vec![row],
                },
            });
        }
        return Ok(Verdict::Undetermined {
            residue: None,
            reason: format!("delta is {} at k = 2", row.delta_status),
        });
    }
    Ok(
        split_by_vanishing(&report).unwrap_or_else(|| Verdict::Undetermined {
            residue: None,
            reason: "some Hom(nu*, wedge^k T*_-) has global sections".to_string(),
        }),
    )
}

/// `Split` when every conormal Hom term has no global sections.
pub(crate) fn split_by_vanishing(report: &ObstructionReport) -> Option<Verdict> {
    if report.rows.iter().any(|r| r.hom_nu.h0 > 0) {
        return None;
    }
    let rows: Vec<ObstructionRow> = report
        .rows
        .iter()
        .filter(|r| r.hom_nu.bundle.rank() > 0)
        .cloned()
        .collect();
    let summary = if report.d % 2 == 1 {
        "the odd conormal bundle vanishes and h0(Hom(nu*, wedge^k T*_-)) = 0 for every even k"
    } else {
        "h0(Hom(nu*, wedge^k T*_-)) = 0 for every k"
    };
    Some(Verdict::Split(
        crate::verdict::SplitEvidence::Cohomological(Evidence {
            summary: summary.to_string(),
            rows,
        }),
    ))
}

/// Upper bound on the twist below which every obstruction Hom term loses
/// its sections.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistBound {
    Finite(i64),
    Unbounded,
}

impl Serialize for TwistBound {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            TwistBound::Finite(l) => s.serialize_i64(*l),
            TwistBound::Unbounded => s.serialize_str("unbounded"),
        }
    }
}

impl fmt::Display for TwistBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistBound::Finite(l) => write!(f, "{l}"),
            TwistBound::Unbounded => f.write_str("unbounded"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SerreBound {
    pub d: usize,
    pub bound: TwistBound,
    /// `(k, largest ℓ with h⁰ = 0)` for each row with a nonzero conormal term.
    pub thresholds: Vec<(usize, i64)>,
}

/// Largest `ℓ₀` such that for every `k` and every `ℓ ≤ ℓ₀` the conormal Hom
/// term twisted by `𝒪(k·d·ℓ)` has no global sections.
pub fn serre_twist_bound(d: usize) -> Result<SerreBound, CohomologyError> {
    let report = obstruction_spaces(d)?;
    let thresholds: Vec<(usize, i64)> = report
        .rows
        .iter()
        .filter_map(|r| r.twist_threshold(d).map(|l| (r.k, l)))
        .collect();
    let bound = thresholds
        .iter()
        .map(|&(_, l)| l)
        .min()
        .map_or(TwistBound::Unbounded, TwistBound::Finite);
    Ok(SerreBound {
        d,
        bound,
        thresholds,
    })
}
