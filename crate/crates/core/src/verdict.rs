//! Splitting verdicts and the evidence behind them.

use serde::Serialize;

use crate::cohomology::ObstructionRow;
use crate::derivations::SuperAutomorphism;
use crate::superalgebra::SuperPolynomial;

/// A global polynomial witness of splitness.
///
/// `multiplier · automorphism(original) = normalized_generators`, where the
/// multiplier is a unipotent matrix over the ring acting on the generator
/// column and every normalized generator has no component of theta-degree
/// two or more.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitCertificate {
    pub automorphism: SuperAutomorphism,
    pub normalized_generators: Vec<SuperPolynomial>,
    pub multiplier: Vec<Vec<SuperPolynomial>>,
}

impl SplitCertificate {
    pub fn multiplier_is_identity(&self) -> bool {
        self.multiplier.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, p)| {
                if i == j {
                    p == &SuperPolynomial::one(p.ring())
                } else {
                    p.is_zero()
                }
            })
        })
    }

    /// Recomputes `multiplier · automorphism(original)`.
    pub fn replay(&self, original: &[SuperPolynomial]) -> Vec<SuperPolynomial> {
        let moved: Vec<_> = original
            .iter()
            .map(|p| self.automorphism.apply(p).expect("certificate ring"))
            .collect();
        self.multiplier
            .iter()
            .map(|row| {
                row.iter().zip(&moved).fold(
                    SuperPolynomial::zero(self.automorphism.ring()),
                    |acc, (w, f)| &acc + &(w * f),
                )
            })
            .collect()
    }

    pub fn verify(&self, original: &[SuperPolynomial]) -> bool {
        self.replay(original) == self.normalized_generators
    }
}

/// The surviving `ξ^m` components once no further lift was found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionResidue {
    pub degree: u32,
    pub residue: Vec<SuperPolynomial>,
    pub removable_globally: bool,
}

/// Cohomological evidence: a summary sentence and the rows it rests on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub summary: String,
    pub rows: Vec<ObstructionRow>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitEvidence {
    GlobalCertificate(SplitCertificate),
    Cohomological(Evidence),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Split(SplitEvidence),
    NonSplit {
        residue: ObstructionResidue,
        evidence: Evidence,
    },
    Undetermined {
        residue: Option<ObstructionResidue>,
        reason: String,
    },
}

impl Verdict {
    pub fn is_split(&self) -> bool {
        matches!(self, Verdict::Split(_))
    }

    pub fn is_non_split(&self) -> bool {
        matches!(self, Verdict::NonSplit { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Split(_) => "split",
            Verdict::NonSplit { .. } => "non-split",
            Verdict::Undetermined { .. } => "undetermined",
        }
    }

    pub fn evidence_kind(&self) -> &'static str {
        match self {
            Verdict::Split(SplitEvidence::GlobalCertificate(_)) => "global-certificate",
            Verdict::Split(SplitEvidence::Cohomological(_)) | Verdict::NonSplit { .. } => {
                "cohomological"
            }
            Verdict::Undetermined { .. } => "none",
        }
    }

    pub fn certificate(&self) -> Option<&SplitCertificate> {
        match self {
            Verdict::Split(SplitEvidence::GlobalCertificate(c)) => Some(c),
            _ => None,
        }
    }

    pub fn residue(&self) -> Option<&ObstructionResidue> {
        match self {
            Verdict::NonSplit { residue, .. } => Some(residue),
            Verdict::Undetermined { residue, .. } => residue.as_ref(),
            Verdict::Split(_) => None,
        }
    }

    pub fn summary(&self) -> VerdictSummary {
        let (explanation, evidence_rows) = match self {
            Verdict::Split(SplitEvidence::GlobalCertificate(_)) => (
                "an explicit automorphism removes every component of theta-degree two or more"
                    .to_string(),
                Vec::new(),
            ),
            Verdict::Split(SplitEvidence::Cohomological(e))
            | Verdict::NonSplit { evidence: e, .. } => (e.summary.clone(), e.rows.clone()),
            Verdict::Undetermined { reason, .. } => (reason.clone(), Vec::new()),
        };
        VerdictSummary {
            verdict: self.label(),
            evidence_kind: self.evidence_kind(),
            explanation,
            residue: self.residue().cloned(),
            certificate: self.certificate().map(|c| CertificateSummary {
                images: c
                    .automorphism
                    .rendered_moves()
                    .into_iter()
                    .map(|(generator, image)| ImageEntry { generator, image })
                    .collect(),
                normalized_generators: c
                    .normalized_generators
                    .iter()
                    .map(ToString::to_string)
                    .collect(),
                multiplier_is_identity: c.multiplier_is_identity(),
            }),
            evidence_rows,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImageEntry {
    pub generator: String,
    pub image: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateSummary {
    pub images: Vec<ImageEntry>,
    pub normalized_generators: Vec<String>,
    pub multiplier_is_identity: bool,
}

/// Flat, serializable view of a [`Verdict`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictSummary {
    pub verdict: &'static str,
    pub evidence_kind: &'static str,
    pub explanation: String,
    pub residue: Option<ObstructionResidue>,
    pub certificate: Option<CertificateSummary>,
    pub evidence_rows: Vec<ObstructionRow>,
}
