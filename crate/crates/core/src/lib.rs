//! Exact supercommutative algebra and splitting obstructions for
//! subvarieties of projective superspace.
//!
//! The crate is organized bottom-up: [`superalgebra`] provides the ring,
//! [`derivations`] its graded derivations and unipotent automorphisms,
//! [`ideals`] generator systems and the normalizer, and [`cohomology`] the
//! line-bundle calculus on ℙ¹ used when no global normalization exists.

pub mod cohomology;
pub mod derivations;
pub mod ideals;
pub mod linalg;
pub mod superalgebra;
pub mod verdict;

pub use cohomology::{LineBundleSum, ObstructionReport};
pub use derivations::{SuperAutomorphism, SuperDerivation};
pub use ideals::{Ambient, SuperIdeal};
pub use superalgebra::{
    AlgebraError, Generator, OddMonomial, Order, Parity, Rational, RingSignature, ScalingDegree,
    SuperMonomial, SuperPolynomial,
};
pub use verdict::{SplitCertificate, Verdict};
