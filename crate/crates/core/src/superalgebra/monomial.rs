use std::cmp::Ordering;
use std::fmt;

/// Maximum number of odd variables; odd monomials are stored as a bitmask.
pub const MAX_ODD: usize = 64;

/// A product `θ_{i1}···θ_{ik}` with strictly increasing indices.
///
/// Bit `a - 1` of the mask stands for `θ_a`. Any sign produced while
/// bringing a product into this order is carried by the coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct OddMonomial(u64);

impl OddMonomial {
    pub const ONE: OddMonomial = OddMonomial(0);

    pub fn from_mask(mask: u64) -> Self {
        OddMonomial(mask)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    /// Single odd variable `θ_a` (1-based).
    pub fn var(a: usize) -> Self {
        assert!((1..=MAX_ODD).contains(&a), "odd index {a} out of range");
        OddMonomial(1 << (a - 1))
    }

    /// Canonicalizes an ordered product of odd variables.
    ///
    /// Returns `None` when an index repeats (the product vanishes), else the
    /// sign of the sorting permutation together with the monomial.
    pub fn from_product(indices: &[usize]) -> Option<(bool, OddMonomial)> {
        let mut acc = OddMonomial::ONE;
        let mut negative = false;
        for &a in indices {
            let (neg, m) = acc.product(OddMonomial::var(a))?;
            negative ^= neg;
            acc = m;
        }
        Some((negative, acc))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Indices in increasing order, 1-based.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut mask = self.0;
        std::iter::from_fn(move || {
            if mask == 0 {
                return None;
            }
            let tz = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(tz + 1)
        })
    }

    pub fn contains(self, a: usize) -> bool {
        (1..=MAX_ODD).contains(&a) && self.0 & (1 << (a - 1)) != 0
    }

    pub fn divides(self, other: OddMonomial) -> bool {
        self.0 & !other.0 == 0
    }

    /// Product `self · other`; `None` if they share an index.
    ///
    /// The sign is the parity of the number of pairs `(i ∈ self, j ∈ other)`
    /// with `i > j`, i.e. the transpositions needed to merge the two lists.
    pub fn product(self, other: OddMonomial) -> Option<(bool, OddMonomial)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut inversions = 0u32;
        let mut rest = other.0;
        while rest != 0 {
            let j = rest.trailing_zeros();
            rest &= rest - 1;
            inversions += (self.0 >> j).count_ones();
        }
        Some((inversions % 2 == 1, OddMonomial(self.0 | other.0)))
    }

    /// Removes the single factor `θ_a`, returning the sign of moving it to
    /// the front first (a left derivative).
    pub fn remove_front(self, a: usize) -> Option<(bool, OddMonomial)> {
        if !self.contains(a) {
            return None;
        }
        let bit = 1u64 << (a - 1);
        let before = (self.0 & (bit - 1)).count_ones();
        Some((before % 2 == 1, OddMonomial(self.0 & !bit)))
    }

    fn cmp_indices(self, other: OddMonomial) -> Ordering {
        self.indices().cmp(other.indices())
    }
}

/// A monomial `x^e θ_I`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SuperMonomial {
    exponents: Box<[u32]>,
    odd: OddMonomial,
}

impl SuperMonomial {
    pub fn new(exponents: Vec<u32>, odd: OddMonomial) -> Self {
        SuperMonomial {
            exponents: exponents.into_boxed_slice(),
            odd,
        }
    }

    pub fn one(even_count: usize) -> Self {
        Self::new(vec![0; even_count], OddMonomial::ONE)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn odd(&self) -> OddMonomial {
        self.odd
    }

    pub fn even_degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn theta_degree(&self) -> usize {
        self.odd.len()
    }

    /// Degree under `x ↦ λx, θ ↦ λθ`.
    pub fn scaling_degree(&self) -> u32 {
        self.even_degree() + self.odd.len() as u32
    }

    pub fn is_one(&self) -> bool {
        self.odd.is_empty() && self.exponents.iter().all(|&e| e == 0)
    }

    pub fn with_odd(&self, odd: OddMonomial) -> Self {
        SuperMonomial {
            exponents: self.exponents.clone(),
            odd,
        }
    }

    pub fn even_part(&self) -> Self {
        self.with_odd(OddMonomial::ONE)
    }

    pub fn mul(&self, other: &SuperMonomial) -> Option<(bool, SuperMonomial)> {
        let (negative, odd) = self.odd.product(other.odd)?;
        let exponents = self
            .exponents
            .iter()
            .zip(other.exponents.iter())
            .map(|(a, b)| a + b)
            .collect::<Vec<_>>();
        Some((negative, SuperMonomial::new(exponents, odd)))
    }

    /// Whether `self` divides `other` in the supercommutative sense.
    pub fn divides(&self, other: &SuperMonomial) -> bool {
        self.odd.divides(other.odd)
            && self
                .exponents
                .iter()
                .zip(other.exponents.iter())
                .all(|(a, b)| a <= b)
    }

    pub(crate) fn fmt_factors(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        for a in self.odd.indices() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "t{a}")?;
        }
        Ok(())
    }
}

impl fmt::Display for SuperMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        self.fmt_factors(f)
    }
}

/// Iteration order of polynomial terms, which is also the printing order:
/// graded-lex descending on the even exponents, then odd part by length and
/// index list ascending.
impl Ord for SuperMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .even_degree()
            .cmp(&self.even_degree())
            .then_with(|| other.exponents.cmp(&self.exponents))
            .then_with(|| self.odd.len().cmp(&other.odd.len()))
            .then_with(|| self.odd.cmp_indices(other.odd))
    }
}

impl PartialOrd for SuperMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
