//! Exact supercommutative polynomial rings `ℚ[x0..xm | t1..tn]`.
//!
//! Even variables commute with everything, odd variables anticommute among
//! themselves and square to zero. Polynomials are kept in a canonical form
//! (odd indices strictly increasing, sign absorbed into the coefficient, no
//! zero coefficients) so structural equality is ring equality.

mod monomial;
mod polynomial;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use monomial::{OddMonomial, SuperMonomial, MAX_ODD};
pub use polynomial::{Parity, ScalingDegree, SuperPolynomial};

/// Coefficient field.
pub type Rational = num::BigRational;

/// Shape of the ring: `even_count = m + 1` even and `odd_count = n` odd
/// variables, printed as `x0..xm` and `t1..tn`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RingSignature {
    even_count: usize,
    odd_count: usize,
}

impl RingSignature {
    pub fn new(even_count: usize, odd_count: usize) -> Result<Self, AlgebraError> {
        if even_count == 0 {
            return Err(AlgebraError::NoEvenVariables);
        }
        if odd_count > MAX_ODD {
            return Err(AlgebraError::TooManyOddVariables(odd_count));
        }
        Ok(RingSignature {
            even_count,
            odd_count,
        })
    }

    /// Homogeneous coordinate ring of `ℙ^{m|n}`.
    pub fn projective(m: usize, n: usize) -> Result<Self, AlgebraError> {
        Self::new(m + 1, n)
    }

    pub fn even_count(&self) -> usize {
        self.even_count
    }

    pub fn odd_count(&self) -> usize {
        self.odd_count
    }

    /// Dimension `m` of the reduced projective space.
    pub fn projective_dim(&self) -> usize {
        self.even_count - 1
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> {
        let even = (0..self.even_count).map(Generator::Even);
        let odd = (1..=self.odd_count).map(Generator::Odd);
        even.chain(odd)
    }

    pub(crate) fn check(&self, other: &RingSignature) -> Result<(), AlgebraError> {
        if self == other {
            Ok(())
        } else {
            Err(AlgebraError::SignatureMismatch {
                left: *self,
                right: *other,
            })
        }
    }
}

impl fmt::Display for RingSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P^{{{}|{}}}", self.even_count - 1, self.odd_count)
    }
}

/// A ring generator: `Even(i)` is `x_i` (0-based), `Odd(a)` is `θ_a` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Even(usize),
    Odd(usize),
}

impl Generator {
    pub fn parity(self) -> Parity {
        match self {
            Generator::Even(_) => Parity::Even,
            Generator::Odd(_) => Parity::Odd,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Even(i) => write!(f, "x{i}"),
            Generator::Odd(a) => write!(f, "t{a}"),
        }
    }
}

/// Extended non-negative degree used for filtration orders and splitting
/// degrees; `Infinite` compares above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(k) => Some(k),
            Order::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Order::Infinite)
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::Infinite => f.write_str("infinity"),
        }
    }
}

impl Serialize for Order {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Order::Finite(k) => s.serialize_u32(*k),
            Order::Infinite => s.serialize_str("infinity"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("ring signature mismatch: {left} vs {right}")]
    SignatureMismatch {
        left: RingSignature,
        right: RingSignature,
    },
    #[error("a ring needs at least one even variable")]
    NoEvenVariables,
    #[error("at most {MAX_ODD} odd variables are supported, got {0}")]
    TooManyOddVariables(usize),
    #[error("generator {0} is not a variable of the ring")]
    UnknownGenerator(Generator),
    #[error("the zero polynomial has no scaling degree")]
    ZeroPolynomial,
    #[error("image of {generator} must be parity-{expected}")]
    ParityViolation {
        generator: Generator,
        expected: Parity,
    },
    #[error("expected {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },
}
