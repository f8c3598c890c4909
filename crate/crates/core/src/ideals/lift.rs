//! One step of generator normalization: cancel every `ξ^m` component with a
//! unipotent substitution plus a unipotent change of generators, found by
//! exact linear algebra.

use std::collections::BTreeMap;

use itertools::Itertools;
use num::{One, Zero};
use serde::Serialize;

use super::{max_splitting_degree, Ambient, IdealError, SuperIdeal};
use crate::derivations::SuperAutomorphism;
use crate::linalg::{self, SolutionKind};
use crate::superalgebra::{
    Generator, OddMonomial, Order, Parity, Rational, RingSignature, SuperMonomial, SuperPolynomial,
};
use crate::verdict::{ObstructionResidue, SplitCertificate};

/// Rank checks spent on the minimum-support search before falling back to
/// the basic solution.
const SUPPORT_BUDGET: usize = 20_000;

/// What happened at one lift.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftLog {
    pub m: Order,
    /// Unknown coefficients in the search space.
    pub unknowns: usize,
    /// Unknowns that actually move some `ξ^m` coefficient.
    pub live_unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    pub solution: &'static str,
    pub outcome: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftStep {
    pub ideal: SuperIdeal,
    pub automorphism: SuperAutomorphism,
    /// `I + W`: the new generators are `(I + W) · φ(F)`.
    pub combination: Vec<Vec<SuperPolynomial>>,
    pub log: LiftLog,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LiftOutcome {
    NewSystem(LiftStep),
    Blocked {
        residue: ObstructionResidue,
        log: LiftLog,
    },
}

#[derive(Debug, Clone)]
enum Unknown {
    /// `x_i ↦ x_i + c·μ`
    Even(usize, SuperMonomial),
    /// `θ_a ↦ θ_a + c·μ`
    Odd(usize, SuperMonomial),
    /// `F_α += c·μ·F_β`
    Combination(usize, usize, SuperMonomial),
}

/// Monomials `x^e θ_I` with `|I| = t` and `|e|` in `x_degrees`.
fn monomials(
    ring: RingSignature,
    x_degrees: std::ops::RangeInclusive<i64>,
    t: usize,
) -> Vec<SuperMonomial> {
    let vars = ring.even_count();
    let odd: Vec<OddMonomial> = (0..ring.odd_count())
        .combinations(t)
        .map(|idx| OddMonomial::from_mask(idx.iter().fold(0u64, |m, &i| m | (1 << i))))
        .collect();
    let mut out = Vec::new();
    for deg in x_degrees.filter(|&d| d >= 0) {
        for exps in exponent_vectors(vars, deg as u32) {
            for &o in &odd {
                out.push(SuperMonomial::new(exps.clone(), o));
            }
        }
    }
    out.sort();
    out
}

fn exponent_vectors(vars: usize, degree: u32) -> Vec<Vec<u32>> {
    if vars == 1 {
        return vec![vec![degree]];
    }
    (0..=degree)
        .rev()
        .flat_map(|first| {
            exponent_vectors(vars - 1, degree - first)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
        })
        .collect()
}

fn identity_matrix(ring: RingSignature, size: usize) -> Vec<Vec<SuperPolynomial>> {
    (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    if i == j {
                        SuperPolynomial::one(ring)
                    } else {
                        SuperPolynomial::zero(ring)
                    }
                })
                .collect()
        })
        .collect()
}

/// Tries to raise the maximal splitting degree of a parity-homogeneous
/// system from `m`.
///
/// Unknowns are the coefficients of `q_i` (theta-degree `m`, for `m` even),
/// `r_a` (theta-degree `m`, for `m` odd) and combination entries `w_{αβ}`
/// (theta-degree `m − ℓ_β`, where `ℓ_β` is the lowest theta-degree of
/// `F_β`). In projective mode every unknown must keep generators
/// homogeneous, which fixes its even degree; in affine mode even degrees run
/// from 0 to the largest even degree among the generators.
pub fn lift_splitting_degree(ideal: &SuperIdeal, m: Order) -> Result<LiftOutcome, IdealError> {
    let ring = ideal.ring();
    if !ideal.is_parity_homogeneous() {
        return Err(IdealError::Precondition(
            "generators must be parity-homogeneous; canonicalize first".into(),
        ));
    }
    let current = max_splitting_degree(ideal);
    if current != m {
        return Err(IdealError::Precondition(format!(
            "maximal splitting degree is {current}, not {m}"
        )));
    }
    let gens = ideal.generators();
    let Order::Finite(mu) = m else {
        return Ok(LiftOutcome::NewSystem(LiftStep {
            ideal: ideal.clone(),
            automorphism: SuperAutomorphism::identity(ring),
            combination: identity_matrix(ring, gens.len()),
            log: LiftLog {
                m,
                unknowns: 0,
                live_unknowns: 0,
                equations: 0,
                rank: 0,
                solution: "none",
                outcome: "already-split",
            },
        }));
    };
    let m = mu as usize;
    let m_parity = Parity::of_degree(m);

    let degrees: Vec<Option<i64>> = match ideal.ambient() {
        Ambient::Projective => gens
            .iter()
            .map(|g| {
                g.scaling_degree()?
                    .value()
                    .map(|d| Some(d as i64))
                    .ok_or_else(|| {
                        IdealError::Precondition(format!(
                            "projective lift needs homogeneous generators, {g} is not"
                        ))
                    })
            })
            .collect::<Result<_, _>>()?,
        Ambient::Affine => vec![None; gens.len()],
    };
    let cap = gens
        .iter()
        .filter_map(|g| g.max_even_degree())
        .max()
        .unwrap_or(0) as i64;
    let range = |scaling: Option<i64>, t: usize| match scaling {
        Some(s) => (s - t as i64)..=(s - t as i64),
        None => 0..=cap,
    };
    let projective = ideal.ambient() == Ambient::Projective;

    let mut unknowns: Vec<Unknown> = Vec::new();
    if m_parity == Parity::Even {
        for i in 0..ring.even_count() {
            let r = range(projective.then_some(1), m);
            unknowns.extend(
                monomials(ring, r, m)
                    .into_iter()
                    .map(|mo| Unknown::Even(i, mo)),
            );
        }
    } else {
        for a in 1..=ring.odd_count() {
            let r = range(projective.then_some(1), m);
            unknowns.extend(
                monomials(ring, r, m)
                    .into_iter()
                    .map(|mo| Unknown::Odd(a, mo)),
            );
        }
    }
    let rows: Vec<usize> = (0..gens.len())
        .filter(|&a| gens[a].parity() == Some(m_parity))
        .collect();
    for &alpha in &rows {
        for (beta, fb) in gens.iter().enumerate() {
            let low = fb.min_theta_degree().expect("nonzero generator");
            if low >= m {
                continue;
            }
            let t = m - low;
            let scaling = match (degrees[alpha], degrees[beta]) {
                (Some(da), Some(db)) => Some(da - db),
                _ => None,
            };
            unknowns.extend(
                monomials(ring, range(scaling, t), t)
                    .into_iter()
                    .map(|mo| Unknown::Combination(alpha, beta, mo)),
            );
        }
    }

    // effect of each unknown on ξ^m of each row generator
    let base: Vec<SuperPolynomial> = gens.iter().map(|g| g.proj_theta_degree(0)).collect();
    let one = Rational::one();
    let effect = |u: &Unknown| -> Vec<(usize, SuperPolynomial)> {
        match u {
            Unknown::Even(i, mo) => rows
                .iter()
                .map(|&a| (a, base[a].partial_even(*i).mul_monomial_left(mo, &one)))
                .collect(),
            Unknown::Odd(idx, mo) => rows
                .iter()
                .map(|&a| {
                    let c = gens[a].odd_coefficient(OddMonomial::var(*idx));
                    (a, c.mul_monomial_left(mo, &one))
                })
                .collect(),
            Unknown::Combination(a, b, mo) => {
                vec![(
                    *a,
                    gens[*b].mul_monomial_left(mo, &one).proj_theta_degree(m),
                )]
            }
        }
    };
    let effects: Vec<Vec<(usize, SuperPolynomial)>> = unknowns.iter().map(effect).collect();
    let targets: Vec<(usize, SuperPolynomial)> = rows
        .iter()
        .map(|&a| (a, gens[a].proj_theta_degree(m)))
        .collect();

    let mut index: BTreeMap<(usize, SuperMonomial), usize> = BTreeMap::new();
    for (a, p) in targets.iter().chain(effects.iter().flatten()) {
        for (mo, _) in p.terms() {
            let next = index.len();
            index.entry((*a, mo.clone())).or_insert(next);
        }
    }
    let n_eq = index.len();
    let mut matrix = vec![vec![Rational::zero(); unknowns.len()]; n_eq];
    for (col, eff) in effects.iter().enumerate() {
        for (a, p) in eff {
            for (mo, c) in p.terms() {
                matrix[index[&(*a, mo.clone())]][col] += c;
            }
        }
    }
    let mut rhs = vec![Rational::zero(); n_eq];
    for (a, p) in &targets {
        for (mo, c) in p.terms() {
            rhs[index[&(*a, mo.clone())]] = -c.clone();
        }
    }
    let live_unknowns = (0..unknowns.len())
        .filter(|&c| matrix.iter().any(|row| !row[c].is_zero()))
        .count();
    let rank = if unknowns.is_empty() {
        0
    } else {
        linalg::rank(&matrix)
    };
    let mut log = LiftLog {
        m: Order::Finite(mu),
        unknowns: unknowns.len(),
        live_unknowns,
        equations: n_eq,
        rank,
        solution: "none",
        outcome: "blocked",
    };

    let solution = if unknowns.is_empty() {
        None
    } else {
        linalg::sparsest_solution(&matrix, &rhs, SUPPORT_BUDGET)
    };
    let Some((values, kind)) = solution else {
        let residue = targets
            .into_iter()
            .map(|(_, p)| p)
            .filter(|p| !p.is_zero())
            .collect();
        return Ok(LiftOutcome::Blocked {
            residue: ObstructionResidue {
                degree: mu,
                residue,
                removable_globally: false,
            },
            log,
        });
    };
    log.solution = match kind {
        SolutionKind::MinimumSupport => "minimum-support",
        SolutionKind::Basic => "basic",
    };

    let mut images: Vec<(Generator, SuperPolynomial)> = ring
        .generators()
        .map(|g| {
            (
                g,
                SuperPolynomial::generator(ring, g).expect("ring generator"),
            )
        })
        .collect();
    let mut combination = identity_matrix(ring, gens.len());
    for (u, c) in unknowns.iter().zip(&values) {
        if c.is_zero() {
            continue;
        }
        match u {
            Unknown::Even(i, mo) => {
                let slot = &mut images[*i].1;
                *slot = &*slot + &SuperPolynomial::term(ring, mo.clone(), c.clone());
            }
            Unknown::Odd(a, mo) => {
                let slot = &mut images[ring.even_count() + a - 1].1;
                *slot = &*slot + &SuperPolynomial::term(ring, mo.clone(), c.clone());
            }
            Unknown::Combination(a, b, mo) => {
                let slot = &mut combination[*a][*b];
                *slot = &*slot + &SuperPolynomial::term(ring, mo.clone(), c.clone());
            }
        }
    }
    let automorphism = SuperAutomorphism::from_images(ring, images)?;
    let moved: Vec<SuperPolynomial> = gens
        .iter()
        .map(|g| automorphism.apply(g))
        .collect::<Result<_, _>>()?;
    let new_gens = apply_matrix(ring, &combination, &moved);
    if new_gens.iter().any(SuperPolynomial::is_zero) {
        return Err(IdealError::Precondition(
            "normalization produced a zero generator; the system is redundant".into(),
        ));
    }
    let next = ideal.with_generators(new_gens);
    let new_m = max_splitting_degree(&next);
    assert!(
        new_m > Order::Finite(mu),
        "lift must raise the splitting degree"
    );
    log.outcome = "new-system";
    Ok(LiftOutcome::NewSystem(LiftStep {
        ideal: next,
        automorphism,
        combination,
        log,
    }))
}

fn apply_matrix(
    ring: RingSignature,
    matrix: &[Vec<SuperPolynomial>],
    column: &[SuperPolynomial],
) -> Vec<SuperPolynomial> {
    matrix
        .iter()
        .map(|row| {
            row.iter()
                .zip(column)
                .fold(SuperPolynomial::zero(ring), |acc, (w, f)| &acc + &(w * f))
        })
        .collect()
}

fn mat_mul(
    ring: RingSignature,
    a: &[Vec<SuperPolynomial>],
    b: &[Vec<SuperPolynomial>],
) -> Vec<Vec<SuperPolynomial>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(SuperPolynomial::zero(ring), |acc, (x, brow)| {
                            &acc + &(x * &brow[j])
                        })
                })
                .collect()
        })
        .collect()
}

/// Result of iterating lifts from the canonical form of an ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalization {
    /// The parity-split system the lifts start from.
    pub canonical: SuperIdeal,
    pub steps: Vec<LiftLog>,
    /// The system reached when the loop stopped.
    pub current: SuperIdeal,
    pub automorphism: SuperAutomorphism,
    pub multiplier: Vec<Vec<SuperPolynomial>>,
    /// `None` when the loop reached infinite splitting degree.
    pub blocked: Option<ObstructionResidue>,
}

impl Normalization {
    pub fn certificate(&self) -> Option<SplitCertificate> {
        self.blocked.is_none().then(|| SplitCertificate {
            automorphism: self.automorphism.clone(),
            normalized_generators: self.current.generators().to_vec(),
            multiplier: self.multiplier.clone(),
        })
    }
}

/// Lifts until the maximal splitting degree is infinite or a lift is
/// blocked.
///
/// Keeps `F_t = M_t · Φ_t(F_0)`: after a step with substitution `φ` and
/// combination `I + W`, `Φ ← φ ∘ Φ` and `M ← (I + W) · φ(M)`.
pub fn normalize(ideal: &SuperIdeal) -> Result<Normalization, IdealError> {
    let canonical = ideal.canonicalized();
    let ring = canonical.ring();
    let mut current = canonical.clone();
    let mut automorphism = SuperAutomorphism::identity(ring);
    let mut multiplier = identity_matrix(ring, current.generators().len());
    let mut steps = Vec::new();
    loop {
        let m = max_splitting_degree(&current);
        if m.is_infinite() {
            return Ok(Normalization {
                canonical,
                steps,
                current,
                automorphism,
                multiplier,
                blocked: None,
            });
        }
        match lift_splitting_degree(&current, m)? {
            LiftOutcome::NewSystem(step) => {
                let phi = step.automorphism;
                let moved: Vec<Vec<SuperPolynomial>> = multiplier
                    .iter()
                    .map(|row| row.iter().map(|p| phi.apply(p)).collect::<Result<_, _>>())
                    .collect::<Result<_, _>>()?;
                multiplier = mat_mul(ring, &step.combination, &moved);
                automorphism = phi.compose(&automorphism)?;
                current = step.ideal;
                steps.push(step.log);
            }
            LiftOutcome::Blocked { residue, log } => {
                steps.push(log);
                return Ok(Normalization {
                    canonical,
                    steps,
                    current,
                    automorphism,
                    multiplier,
                    blocked: Some(residue),
                });
            }
        }
    }
}
