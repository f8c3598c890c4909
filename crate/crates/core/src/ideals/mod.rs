//! Generator systems for subvarieties of `ℙ^{m|n}` (or affine superspace),
//! their graded invariants, and the normalizer that tries to push the
//! maximal splitting degree to infinity.

mod decide;
mod division;
mod lift;

use serde::Serialize;
use thiserror::Error;

pub use decide::{decide_split, recognize_base, rnc_minors, BaseKind, Decision};
pub use division::{membership, reduce_modulo, DivisionOutcome, Membership};
pub use lift::{lift_splitting_degree, normalize, LiftLog, LiftOutcome, LiftStep, Normalization};

use crate::cohomology::CohomologyError;
use crate::derivations::DerivationError;
use crate::superalgebra::{
    AlgebraError, OddMonomial, Order, Parity, Rational, RingSignature, ScalingDegree,
    SuperPolynomial,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Derivation(#[from] DerivationError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error("generator {0} is zero")]
    ZeroGenerator(usize),
    #[error("generator {index} has scaling degree {found:?}, declared {declared}")]
    DegreeMismatch {
        index: usize,
        declared: u32,
        found: ScalingDegree,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Whether generators live in the homogeneous coordinate ring of `ℙ^{m|n}`
/// or in the affine ring with no scaling constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ambient {
    Projective,
    Affine,
}

/// A generator system `F = {P^α}` over a fixed ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperIdeal {
    ring: RingSignature,
    generators: Vec<SuperPolynomial>,
    declared_degree: Option<u32>,
    ambient: Ambient,
}

impl SuperIdeal {
    pub fn new(
        ring: RingSignature,
        generators: Vec<SuperPolynomial>,
        declared_degree: Option<u32>,
        ambient: Ambient,
    ) -> Result<Self, IdealError> {
        for (index, g) in generators.iter().enumerate() {
            ring.check(&g.ring())?;
            if g.is_zero() {
                return Err(IdealError::ZeroGenerator(index));
            }
            if let Some(d) = declared_degree {
                let found = g.scaling_degree()?;
                if found != ScalingDegree::Homogeneous(d) {
                    return Err(IdealError::DegreeMismatch {
                        index,
                        declared: d,
                        found,
                    });
                }
            }
        }
        Ok(SuperIdeal {
            ring,
            generators,
            declared_degree,
            ambient,
        })
    }

    pub fn projective(
        ring: RingSignature,
        generators: Vec<SuperPolynomial>,
        declared_degree: Option<u32>,
    ) -> Result<Self, IdealError> {
        Self::new(ring, generators, declared_degree, Ambient::Projective)
    }

    pub fn affine(
        ring: RingSignature,
        generators: Vec<SuperPolynomial>,
    ) -> Result<Self, IdealError> {
        Self::new(ring, generators, None, Ambient::Affine)
    }

    pub fn ring(&self) -> RingSignature {
        self.ring
    }

    pub fn generators(&self) -> &[SuperPolynomial] {
        &self.generators
    }

    pub fn declared_degree(&self) -> Option<u32> {
        self.declared_degree
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub(crate) fn with_generators(&self, generators: Vec<SuperPolynomial>) -> Self {
        SuperIdeal {
            generators,
            ..self.clone()
        }
    }

    pub fn is_parity_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.parity().is_some())
    }

    /// Splits every parity-mixed generator into its nonzero even and odd
    /// components, keeping order.
    pub fn canonicalized(&self) -> Self {
        let generators = self
            .generators
            .iter()
            .flat_map(|g| {
                if g.parity().is_some() {
                    vec![g.clone()]
                } else {
                    vec![g.proj_parity(Parity::Even), g.proj_parity(Parity::Odd)]
                }
            })
            .collect();
        self.with_generators(generators)
    }

    pub fn rendered_generators(&self) -> Vec<String> {
        self.generators.iter().map(ToString::to_string).collect()
    }
}

/// Per-generator part of a [`ValidationReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorCheck {
    pub index: usize,
    pub generator: String,
    pub scaling_degree: ScalingDegree,
    pub parity: &'static str,
}

/// Whether the odd component of a parity-mixed generator lies in the ideal
/// generated by the even components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OddComponentCheck {
    pub index: usize,
    pub odd_component: String,
    pub status: Membership,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ring: RingSignature,
    pub ambient: Ambient,
    pub generators: Vec<GeneratorCheck>,
    pub homogeneous: bool,
    pub common_degree: Option<u32>,
    pub parity_homogeneous: bool,
    pub even_embedding: bool,
    pub odd_kernel_nonzero: bool,
    pub odd_components: Vec<OddComponentCheck>,
}

pub fn validate(ideal: &SuperIdeal) -> ValidationReport {
    let generators: Vec<GeneratorCheck> = ideal
        .generators
        .iter()
        .enumerate()
        .map(|(index, g)| GeneratorCheck {
            index,
            generator: g.to_string(),
            scaling_degree: g.scaling_degree().expect("generators are nonzero"),
            parity: match g.parity() {
                Some(Parity::Even) => "even",
                Some(Parity::Odd) => "odd",
                None => "mixed",
            },
        })
        .collect();
    let degrees: Vec<Option<u32>> = generators
        .iter()
        .map(|c| c.scaling_degree.value())
        .collect();
    let homogeneous = degrees.iter().all(Option::is_some);
    let common_degree = match degrees.split_first() {
        Some((first, rest)) if homogeneous && rest.iter().all(|d| d == first) => *first,
        _ => None,
    };
    let even_parts: Vec<SuperPolynomial> = ideal
        .generators
        .iter()
        .map(|g| g.proj_parity(Parity::Even))
        .filter(|p| !p.is_zero())
        .collect();
    let odd_components = ideal
        .generators
        .iter()
        .enumerate()
        .filter(|(_, g)| g.parity().is_none())
        .map(|(index, g)| {
            let odd = g.proj_parity(Parity::Odd);
            OddComponentCheck {
                index,
                odd_component: odd.to_string(),
                status: membership(&odd, &even_parts),
            }
        })
        .collect();
    let even_embedding = reduce_mod_j2(ideal).is_even();
    ValidationReport {
        ring: ideal.ring,
        ambient: ideal.ambient,
        generators,
        homogeneous,
        common_degree,
        parity_homogeneous: ideal.is_parity_homogeneous(),
        even_embedding,
        odd_kernel_nonzero: !even_embedding,
        odd_components,
    }
}

/// The generator system modulo `J²`: the base equations `P^{α|0}` and the
/// matrix of `θ_a`-coefficients `P^{α|a}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReducedData {
    pub base_generators: Vec<SuperPolynomial>,
    pub odd_kernel_rows: Vec<Vec<SuperPolynomial>>,
}

impl ReducedData {
    /// True when every `P^{α|a}` vanishes.
    pub fn is_even(&self) -> bool {
        self.odd_kernel_rows
            .iter()
            .flatten()
            .all(SuperPolynomial::is_zero)
    }

    /// Nonzero base equations.
    pub fn base_ideal(&self) -> Vec<SuperPolynomial> {
        self.base_generators
            .iter()
            .filter(|p| !p.is_zero())
            .cloned()
            .collect()
    }
}

pub fn reduce_mod_j2(ideal: &SuperIdeal) -> ReducedData {
    let n = ideal.ring.odd_count();
    ReducedData {
        base_generators: ideal
            .generators
            .iter()
            .map(|g| g.proj_theta_degree(0))
            .collect(),
        odd_kernel_rows: ideal
            .generators
            .iter()
            .map(|g| {
                (1..=n)
                    .map(|a| g.odd_coefficient(OddMonomial::var(a)))
                    .collect()
            })
            .collect(),
    }
}

/// `min{ j ≥ 2 : some generator has ξ^j ≠ 0 }`, or infinity.
pub fn max_splitting_degree(ideal: &SuperIdeal) -> Order {
    ideal
        .generators
        .iter()
        .flat_map(|g| g.theta_degrees())
        .filter(|&j| j >= 2)
        .min()
        .map_or(Order::Infinite, |j| Order::Finite(j as u32))
}

/// The family `V_λ` over the rational normal curve of degree `d`.
///
/// `d = 1` is `ℙ¹ ⊂ ℙ^{1|1}` cut by `λθ₁`; `d = 2` is the superspace quadric
/// `x0*x2 - x1^2 + λθ₁θ₂`; for `d ≥ 3` the `2×2` minors are joined by the
/// separate generator `λθ₁⋯θ_d` so that every generator stays homogeneous.
pub fn rnc_family_ideal(d: usize, lambda: &Rational) -> Result<SuperIdeal, IdealError> {
    use num::Zero;
    if d == 0 {
        return Err(IdealError::Precondition(
            "curve degree must be at least 1".into(),
        ));
    }
    let ring = RingSignature::projective(d, d)?;
    let decoration =
        SuperPolynomial::theta_product(ring, &(1..=d).collect::<Vec<_>>()).scale(lambda);
    match d {
        1 => {
            let gens = if lambda.is_zero() {
                vec![]
            } else {
                vec![decoration]
            };
            SuperIdeal::projective(ring, gens, Some(1))
        }
        2 => {
            let quadric = &rnc_minors(ring, 2)[0] + &decoration;
            SuperIdeal::projective(ring, vec![quadric], Some(2))
        }
        _ => {
            let mut gens = rnc_minors(ring, d);
            if !lambda.is_zero() {
                gens.push(decoration);
            }
            SuperIdeal::projective(ring, gens, None)
        }
    }
}
