//! Split bundles on ℙ¹ and the obstruction calculus for rational normal
//! curves `ℙ¹ ⊂ ℙ^d` with odd cotangent bundle `𝒪(−d)^{⊕n}`.

mod bundles;
mod curves;

use thiserror::Error;

pub(crate) use curves::split_by_vanishing;

pub use bundles::{BundleSequence, LineBundleSum};
pub use curves::{
    conormal_sequence_rnc, decide_family, normal_bundle_rnc, obstruction_spaces,
    obstruction_spaces_with_rank, restrict_tangent_rnc, restrict_wedge_tangent, serre_twist_bound,
    tangent_sequence_rnc, DeltaStatus, HomTerm, ObstructionReport, ObstructionRow, SerreBound,
    TwistBound,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("wedge power {k} exceeds rank {rank}")]
    WedgeOutOfRange { k: usize, rank: usize },
    #[error("sequence {sub} -> {middle} -> {quotient} is not additive in rank and degree")]
    NotAdditive {
        sub: String,
        middle: String,
        quotient: String,
    },
    #[error("{what} needs {constraint}, got {value}")]
    OutOfRange {
        what: &'static str,
        constraint: &'static str,
        value: i64,
    },
}
