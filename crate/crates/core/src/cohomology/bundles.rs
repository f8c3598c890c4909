use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use super::CohomologyError;

/// `⊕ᵢ 𝒪(aᵢ)` on ℙ¹, degrees kept sorted in descending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct LineBundleSum {
    degrees: Vec<i64>,
}

impl LineBundleSum {
    pub fn new(degrees: impl IntoIterator<Item = i64>) -> Self {
        let mut degrees: Vec<i64> = degrees.into_iter().collect();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        LineBundleSum { degrees }
    }

    /// The rank-zero bundle.
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn line(k: i64) -> Self {
        Self::new([k])
    }

    /// `𝒪(k)^{⊕r}`.
    pub fn repeated(k: i64, r: usize) -> Self {
        Self::new(std::iter::repeat_n(k, r))
    }

    /// The balanced bundle of the given rank and total degree: every
    /// summand is `⌊deg/rank⌋` or one more.
    pub fn balanced(rank: usize, degree: i64) -> Self {
        if rank == 0 {
            return Self::zero();
        }
        let q = degree.div_euclid(rank as i64);
        let extra = degree.rem_euclid(rank as i64) as usize;
        Self::new(std::iter::repeat_n(q + 1, extra).chain(std::iter::repeat_n(q, rank - extra)))
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    /// Total degree `Σ aᵢ`.
    pub fn degree(&self) -> i64 {
        self.degrees.iter().sum()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.degrees.first().copied()
    }

    pub fn h0(&self) -> u64 {
        self.degrees.iter().map(|&a| (a + 1).max(0) as u64).sum()
    }

    pub fn h1(&self) -> u64 {
        self.degrees.iter().map(|&a| (-a - 1).max(0) as u64).sum()
    }

    /// `χ = h⁰ − h¹ = Σ(aᵢ + 1)`.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees.iter().map(|a| a + 1).sum()
    }

    pub fn dual(&self) -> Self {
        Self::new(self.degrees.iter().map(|a| -a))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::new(self.degrees.iter().chain(&other.degrees).copied())
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self::new(
            self.degrees
                .iter()
                .cartesian_product(&other.degrees)
                .map(|(a, b)| a + b),
        )
    }

    /// `Hom(self, other) = self^∨ ⊗ other`.
    pub fn hom(&self, other: &Self) -> Self {
        self.dual().tensor(other)
    }

    /// `⊗ 𝒪(k)`.
    pub fn twist(&self, k: i64) -> Self {
        Self::new(self.degrees.iter().map(|a| a + k))
    }

    /// `∧^k`, summing over `k`-subsets of summands.
    pub fn wedge(&self, k: usize) -> Result<Self, CohomologyError> {
        if k > self.rank() {
            return Err(CohomologyError::WedgeOutOfRange {
                k,
                rank: self.rank(),
            });
        }
        Ok(Self::new(
            self.degrees
                .iter()
                .combinations(k)
                .map(|s| s.into_iter().sum::<i64>()),
        ))
    }

    pub fn is_balanced(&self) -> bool {
        match (self.degrees.first(), self.degrees.last()) {
            (Some(hi), Some(lo)) => hi - lo <= 1,
            _ => true,
        }
    }
}

impl fmt::Display for LineBundleSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degrees.is_empty() {
            return f.write_str("0");
        }
        let groups = self.degrees.iter().chunk_by(|&&a| a);
        let parts = groups.into_iter().map(|(a, run)| match run.count() {
            1 => format!("O({a})"),
            r => format!("O({a})^{r}"),
        });
        f.write_str(&parts.collect::<Vec<_>>().join(" + "))
    }
}

/// `0 → sub → middle → quotient → 0`, checked for rank and degree additivity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BundleSequence {
    sub: LineBundleSum,
    middle: LineBundleSum,
    quotient: LineBundleSum,
}

impl BundleSequence {
    pub fn new(
        sub: LineBundleSum,
        middle: LineBundleSum,
        quotient: LineBundleSum,
    ) -> Result<Self, CohomologyError> {
        if middle.rank() != sub.rank() + quotient.rank()
            || middle.degree() != sub.degree() + quotient.degree()
        {
            return Err(CohomologyError::NotAdditive {
                sub: sub.to_string(),
                middle: middle.to_string(),
                quotient: quotient.to_string(),
            });
        }
        Ok(BundleSequence {
            sub,
            middle,
            quotient,
        })
    }

    pub fn sub(&self) -> &LineBundleSum {
        &self.sub
    }

    pub fn middle(&self) -> &LineBundleSum {
        &self.middle
    }

    pub fn quotient(&self) -> &LineBundleSum {
        &self.quotient
    }

    /// `Hom(−, target)` reverses the sequence.
    pub fn hom_into(&self, target: &LineBundleSum) -> BundleSequence {
        BundleSequence {
            sub: self.quotient.hom(target),
            middle: self.middle.hom(target),
            quotient: self.sub.hom(target),
        }
    }

    pub fn euler_additive(&self) -> bool {
        self.middle.euler_characteristic()
            == self.sub.euler_characteristic() + self.quotient.euler_characteristic()
    }
}
