//! The four commands, each returning a serializable result.

use serde::Serialize;
use supersplit_core::cohomology::{
    decide_family, obstruction_spaces, serre_twist_bound, SerreBound,
};
use supersplit_core::ideals::{
    decide_split, max_splitting_degree, normalize, reduce_mod_j2, rnc_family_ideal, validate,
    BaseKind, IdealError, LiftLog, ReducedData, ValidationReport,
};
use supersplit_core::verdict::{ImageEntry, ObstructionResidue, VerdictSummary};
use supersplit_core::{ObstructionReport, Order, Rational, SplitCertificate, SuperIdeal};

use crate::parse::render_rational;

fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(ToString::to_string).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeResult {
    pub ring: String,
    pub generators: Vec<String>,
    pub validation: ValidationReport,
    pub reduced: ReducedData,
    pub max_splitting_degree: Order,
}

pub fn analyze(ideal: &SuperIdeal) -> AnalyzeResult {
    AnalyzeResult {
        ring: ideal.ring().to_string(),
        generators: ideal.rendered_generators(),
        validation: validate(ideal),
        reduced: reduce_mod_j2(ideal),
        max_splitting_degree: max_splitting_degree(ideal),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DecideResult {
    pub verdict: &'static str,
    pub generators: Vec<String>,
    pub base: BaseKind,
    pub lift_steps: Vec<LiftLog>,
    pub decision: VerdictSummary,
    pub obstruction: Option<ObstructionReport>,
}

pub fn decide(ideal: &SuperIdeal) -> Result<DecideResult, IdealError> {
    let d = decide_split(ideal)?;
    let summary = d.verdict.summary();
    Ok(DecideResult {
        verdict: summary.verdict,
        generators: ideal.rendered_generators(),
        base: d.base,
        lift_steps: d.steps,
        decision: summary,
        obstruction: d.report,
    })
}

/// Both routes for a member of the rational normal curve family: the
/// family decision and the generator-level search on its ideal.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyResult {
    pub verdict: &'static str,
    pub d: usize,
    pub lambda: String,
    pub family: VerdictSummary,
    pub generator_search: DecideResult,
    pub routes_agree: bool,
}

pub fn decide_rnc(d: usize, lambda: &Rational) -> Result<FamilyResult, IdealError> {
    let family = decide_family(d, lambda)?.summary();
    let generator_search = decide(&rnc_family_ideal(d, lambda)?)?;
    Ok(FamilyResult {
        verdict: family.verdict,
        d,
        lambda: render_rational(lambda),
        routes_agree: family.verdict == generator_search.verdict,
        family,
        generator_search,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CohomResult {
    pub d: usize,
    pub table: String,
    pub report: ObstructionReport,
    pub serre: SerreBound,
    /// The twisting bound is computed on the curve by the same line-bundle
    /// arithmetic used for linear subspaces.
    pub serre_scope: &'static str,
}

pub fn cohom(d: usize) -> Result<CohomResult, IdealError> {
    let report = obstruction_spaces(d)?;
    Ok(CohomResult {
        d,
        table: report.to_table(),
        serre: serre_twist_bound(d)?,
        serre_scope: "instance-level extension to the rational normal curve",
        report,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct NormalizeResult {
    /// `certificate` or `blocked`.
    pub status: &'static str,
    pub canonical_generators: Vec<String>,
    pub steps: Vec<LiftLog>,
    pub normalized_generators: Vec<String>,
    pub max_splitting_degree: Order,
    pub automorphism: Vec<ImageEntry>,
    pub multiplier_is_identity: bool,
    /// `multiplier · automorphism(canonical)` equals the normalized system.
    pub replay_matches: bool,
    pub residue: Option<ObstructionResidue>,
}

pub fn normalize_ideal(ideal: &SuperIdeal) -> Result<NormalizeResult, IdealError> {
    let norm = normalize(ideal)?;
    let bookkeeping = SplitCertificate {
        automorphism: norm.automorphism.clone(),
        normalized_generators: norm.current.generators().to_vec(),
        multiplier: norm.multiplier.clone(),
    };
    Ok(NormalizeResult {
        status: if norm.blocked.is_none() {
            "certificate"
        } else {
            "blocked"
        },
        canonical_generators: strings(norm.canonical.generators()),
        steps: norm.steps.clone(),
        normalized_generators: strings(norm.current.generators()),
        max_splitting_degree: max_splitting_degree(&norm.current),
        automorphism: norm
            .automorphism
            .rendered_moves()
            .into_iter()
            .map(|(generator, image)| ImageEntry { generator, image })
            .collect(),
        multiplier_is_identity: bookkeeping.multiplier_is_identity(),
        replay_matches: bookkeeping.verify(norm.canonical.generators()),
        residue: norm.blocked,
    })
}
