use std::collections::BTreeMap;

use num::Zero;
use serde::Serialize;

use super::{
    membership, normalize, reduce_mod_j2, validate, Ambient, IdealError, LiftLog, Membership,
    SuperIdeal, ValidationReport,
};
use crate::cohomology::{obstruction_spaces_with_rank, DeltaStatus, ObstructionReport};
use crate::linalg;
use crate::superalgebra::{Rational, RingSignature, ScalingDegree, SuperMonomial, SuperPolynomial};
use crate::verdict::{Evidence, SplitEvidence, Verdict};

/// What the base equations `P^{α|0}` cut out, as far as the cohomology
/// module can use it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BaseKind {
    /// The whole space or a linear subspace.
    Linear,
    /// The rational normal curve `ℙ¹ ⊂ ℙ^d` in its standard coordinates.
    RationalNormalCurve {
        degree: usize,
    },
    Unrecognized,
}

/// The `2×2` minors `x_i x_{j+1} − x_{i+1} x_j`, `0 ≤ i < j < d`, of the
/// Hankel matrix with rows `(x0..x_{d−1})` and `(x1..x_d)`.
pub fn rnc_minors(ring: RingSignature, d: usize) -> Vec<SuperPolynomial> {
    let x = |i| SuperPolynomial::x(ring, i);
    let mut out = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            out.push(&(&x(i) * &x(j + 1)) - &(&x(i + 1) * &x(j)));
        }
    }
    out
}

fn span_rank(polys: &[&SuperPolynomial]) -> usize {
    let mut index: BTreeMap<&SuperMonomial, usize> = BTreeMap::new();
    for p in polys {
        for (m, _) in p.terms() {
            let next = index.len();
            index.entry(m).or_insert(next);
        }
    }
    let matrix: Vec<Vec<Rational>> = polys
        .iter()
        .map(|p| {
            let mut row = vec![Rational::zero(); index.len()];
            for (m, c) in p.terms() {
                row[index[m]] = c.clone();
            }
            row
        })
        .collect();
    linalg::rank(&matrix)
}

/// Recognizes linear bases and the standard rational normal curve: the
/// base equations must span exactly the same quadrics as its minors.
pub fn recognize_base(ring: RingSignature, base: &[SuperPolynomial]) -> BaseKind {
    let base: Vec<&SuperPolynomial> = base.iter().filter(|p| !p.is_zero()).collect();
    let degree = |p: &SuperPolynomial| p.scaling_degree().ok().and_then(ScalingDegree::value);
    if base.iter().all(|p| degree(p) == Some(1)) {
        return BaseKind::Linear;
    }
    let d = ring.projective_dim();
    if d >= 2
        && base
            .iter()
            .all(|p| p.is_pure_even() && degree(p) == Some(2))
    {
        let minors = rnc_minors(ring, d);
        let minors: Vec<&SuperPolynomial> = minors.iter().collect();
        let both: Vec<&SuperPolynomial> = base.iter().chain(&minors).copied().collect();
        let r = span_rank(&minors);
        if span_rank(&base) == r && span_rank(&both) == r {
            return BaseKind::RationalNormalCurve { degree: d };
        }
    }
    BaseKind::Unrecognized
}

/// Everything `decide_split` looked at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    pub validation: ValidationReport,
    pub steps: Vec<LiftLog>,
    pub base: BaseKind,
    pub report: Option<ObstructionReport>,
}

/// Normalizes as far as global polynomial maps allow, then falls back on the
/// obstruction calculus for rational normal curves.
///
/// A non-split verdict needs a nonzero residue outside the base ideal at
/// degree 2 together with an injective connecting map there. At higher
/// degrees a surviving class only says the system is not split at that
/// level, which does not settle splitness, so the verdict stays open.
pub fn decide_split(ideal: &SuperIdeal) -> Result<Decision, IdealError> {
    let validation = validate(ideal);
    let norm = normalize(ideal)?;
    let ring = ideal.ring();
    let reduced = reduce_mod_j2(&norm.current);
    let base = recognize_base(ring, &reduced.base_generators);
    let mut decision = Decision {
        verdict: Verdict::Undetermined {
            residue: None,
            reason: String::new(),
        },
        validation,
        steps: norm.steps.clone(),
        base,
        report: None,
    };
    let Some(residue) = norm.blocked.clone() else {
        let cert = norm.certificate().expect("unblocked normalization");
        decision.verdict = Verdict::Split(SplitEvidence::GlobalCertificate(cert));
        return Ok(decision);
    };
    let undetermined = |reason: &str| Verdict::Undetermined {
        residue: Some(residue.clone()),
        reason: reason.to_string(),
    };
    if ideal.ambient() == Ambient::Affine {
        decision.verdict =
            undetermined("no global certificate in the searched space, and obstruction spaces are only computed for projective curves");
        return Ok(decision);
    }
    let BaseKind::RationalNormalCurve { degree: d } = base else {
        decision.verdict =
            undetermined("no global certificate in the searched space, and the base is not a rational normal curve");
        return Ok(decision);
    };
    if !reduced.is_even() {
        decision.verdict = undetermined("the embedding is not even");
        return Ok(decision);
    }
    let report = obstruction_spaces_with_rank(d, ring.odd_count())?;
    decision.verdict = verdict_from_report(&report, &residue, &reduced.base_ideal());
    decision.report = Some(report);
    Ok(decision)
}

fn verdict_from_report(
    report: &ObstructionReport,
    residue: &crate::verdict::ObstructionResidue,
    base: &[SuperPolynomial],
) -> Verdict {
    if let Some(v) = crate::cohomology::split_by_vanishing(report) {
        return v;
    }
    let undetermined = |reason: String| Verdict::Undetermined {
        residue: Some(residue.clone()),
        reason,
    };
    let m = residue.degree as usize;
    let Some(row) = report.row(m) else {
        return undetermined(format!("no obstruction row at degree {m}"));
    };
    let statuses: Vec<Membership> = residue
        .residue
        .iter()
        .flat_map(|p| p.odd_decomposition().into_values())
        .map(|c| membership(&c, base))
        .collect();
    if statuses.iter().all(|s| *s == Membership::Member) {
        return undetermined(
            "the residue lies in the base ideal but no global certificate was found".into(),
        );
    }
    if !statuses.contains(&Membership::NotMember) {
        return undetermined("could not decide whether the residue lies in the base ideal".into());
    }
    let injective = matches!(
        row.delta_status,
        DeltaStatus::Injective | DeltaStatus::Isomorphism
    );
    if !injective {
        return undetermined(format!("delta is {} at degree {m}", row.delta_status));
    }
    if m != 2 {
        return undetermined(format!(
            "the class at degree {m} survives, but non-splitness at that level does not imply non-splitness"
        ));
    }
    Verdict::NonSplit {
        residue: residue.clone(),
        evidence: Evidence {
            summary: format!(
                "the residue is nonzero modulo the base ideal and delta is {} at degree 2",
                if row.delta_status == DeltaStatus::Isomorphism {
                    "an isomorphism"
                } else {
                    "injective"
                }
            ),
            rows: vec![row.clone()],
        },
    }
}
