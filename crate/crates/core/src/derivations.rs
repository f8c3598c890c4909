//! Graded derivations, their exponentials, and unipotent substitution
//! automorphisms filtered by how far they move each generator.

use num::One;
use thiserror::Error;

use crate::superalgebra::{
    AlgebraError, Generator, OddMonomial, Order, Parity, Rational, RingSignature, SuperMonomial,
    SuperPolynomial,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("derivations have degree at least 1")]
    ZeroDegree,
    #[error("image of {generator} has a term of theta-degree {found}, expected {expected}")]
    ImageDegree {
        generator: Generator,
        expected: usize,
        found: usize,
    },
    #[error("only even-degree derivations are exponentiated, got degree {0}")]
    OddExponential(u32),
    #[error("derivations of different degrees cannot be added ({0} vs {1})")]
    DegreeMismatch(u32, u32),
    #[error("image of {0} is not in unipotent normal form")]
    NotUnipotent(Generator),
    #[error("inverse did not converge")]
    InverseDiverged,
}

/// A derivation raising theta-degree by `degree`.
///
/// `x_i` is sent to a polynomial all of whose terms have theta-degree
/// `degree`, and `θ_a` to one whose terms have theta-degree `degree + 1`.
/// Odd degrees flip parity; they can be applied but not exponentiated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperDerivation {
    ring: RingSignature,
    degree: u32,
    even_images: Vec<SuperPolynomial>,
    odd_images: Vec<SuperPolynomial>,
}

impl SuperDerivation {
    pub fn new(
        ring: RingSignature,
        degree: u32,
        even_images: Vec<SuperPolynomial>,
        odd_images: Vec<SuperPolynomial>,
    ) -> Result<Self, DerivationError> {
        if degree == 0 {
            return Err(DerivationError::ZeroDegree);
        }
        check_count(ring.even_count(), even_images.len())?;
        check_count(ring.odd_count(), odd_images.len())?;
        let gens = ring.generators();
        let images = even_images.iter().chain(odd_images.iter());
        for (g, img) in gens.zip(images) {
            ring.check(&img.ring())?;
            let expected = degree as usize + usize::from(matches!(g, Generator::Odd(_)));
            if let Some(found) = img.theta_degrees().into_iter().find(|&t| t != expected) {
                return Err(DerivationError::ImageDegree {
                    generator: g,
                    expected,
                    found,
                });
            }
        }
        Ok(SuperDerivation {
            ring,
            degree,
            even_images,
            odd_images,
        })
    }

    pub fn zero(ring: RingSignature, degree: u32) -> Result<Self, DerivationError> {
        Self::from_images(ring, degree, [])
    }

    /// Builds a derivation from the generators it moves; every other
    /// generator is sent to zero.
    pub fn from_images(
        ring: RingSignature,
        degree: u32,
        images: impl IntoIterator<Item = (Generator, SuperPolynomial)>,
    ) -> Result<Self, DerivationError> {
        let mut even = vec![SuperPolynomial::zero(ring); ring.even_count()];
        let mut odd = vec![SuperPolynomial::zero(ring); ring.odd_count()];
        for (g, img) in images {
            match g {
                Generator::Even(i) if i < even.len() => even[i] = img,
                Generator::Odd(a) if a >= 1 && a <= odd.len() => odd[a - 1] = img,
                _ => return Err(AlgebraError::UnknownGenerator(g).into()),
            }
        }
        Self::new(ring, degree, even, odd)
    }

    pub fn ring(&self) -> RingSignature {
        self.ring
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn parity(&self) -> Parity {
        Parity::of_degree(self.degree as usize)
    }

    pub fn image(&self, g: Generator) -> &SuperPolynomial {
        match g {
            Generator::Even(i) => &self.even_images[i],
            Generator::Odd(a) => &self.odd_images[a - 1],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.even_images
            .iter()
            .chain(&self.odd_images)
            .all(|p| p.is_zero())
    }

    /// Graded Leibniz extension of the generator images.
    pub fn apply(&self, p: &SuperPolynomial) -> Result<SuperPolynomial, DerivationError> {
        self.ring.check(&p.ring())?;
        Ok(self.apply_unchecked(p))
    }

    fn apply_unchecked(&self, p: &SuperPolynomial) -> SuperPolynomial {
        let ring = self.ring;
        let odd_sign_flip = self.degree % 2 == 1;
        let mut out = SuperPolynomial::zero(ring);
        for (m, c) in p.terms() {
            let odd_mono = SuperPolynomial::term(
                ring,
                SuperMonomial::new(vec![0; ring.even_count()], m.odd()),
                Rational::one(),
            );
            // even factors: Σ e_i x^{e-1_i} δ(x_i) θ_I
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 || self.even_images[i].is_zero() {
                    continue;
                }
                let mut exps = m.exponents().to_vec();
                exps[i] -= 1;
                let lowered = SuperMonomial::new(exps, OddMonomial::ONE);
                let coeff = c * Rational::from_integer(e.into());
                let piece = &self.even_images[i].mul_monomial_left(&lowered, &coeff) * &odd_mono;
                out = &out + &piece;
            }
            // odd factors: x^e Σ_r (-1)^{j(r-1)} θ_{i1}..δ(θ_ir)..θ_ik
            let indices: Vec<usize> = m.odd().indices().collect();
            let x_part = m.even_part();
            for (r, &a) in indices.iter().enumerate() {
                let img = &self.odd_images[a - 1];
                if img.is_zero() {
                    continue;
                }
                let prefix = SuperPolynomial::theta_product(ring, &indices[..r]);
                let suffix = SuperPolynomial::theta_product(ring, &indices[r + 1..]);
                let negative = odd_sign_flip && r % 2 == 1;
                let coeff = if negative { -c.clone() } else { c.clone() };
                let piece = &(&prefix * img) * &suffix;
                out = &out + &piece.mul_monomial_left(&x_part, &coeff);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        SuperDerivation {
            ring: self.ring,
            degree: self.degree,
            even_images: self.even_images.iter().map(|p| -p).collect(),
            odd_images: self.odd_images.iter().map(|p| -p).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        SuperDerivation {
            ring: self.ring,
            degree: self.degree,
            even_images: self.even_images.iter().map(|p| p.scale(c)).collect(),
            odd_images: self.odd_images.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, DerivationError> {
        self.ring.check(&other.ring)?;
        if self.degree != other.degree {
            return Err(DerivationError::DegreeMismatch(self.degree, other.degree));
        }
        let sum = |a: &[SuperPolynomial], b: &[SuperPolynomial]| {
            a.iter().zip(b).map(|(p, q)| p + q).collect::<Vec<_>>()
        };
        Ok(SuperDerivation {
            ring: self.ring,
            degree: self.degree,
            even_images: sum(&self.even_images, &other.even_images),
            odd_images: sum(&self.odd_images, &other.odd_images),
        })
    }

    /// Graded commutator `[δ₁, δ₂] = δ₁δ₂ − (−1)^{j₁j₂} δ₂δ₁`, a derivation of
    /// degree `j₁ + j₂`.
    pub fn commutator(&self, other: &Self) -> Result<Self, DerivationError> {
        self.ring.check(&other.ring)?;
        let sign_negative = (self.degree * other.degree).is_multiple_of(2);
        let images = self.ring.generators().map(|g| {
            let ab = self.apply_unchecked(other.image(g));
            let ba = other.apply_unchecked(self.image(g));
            let img = if sign_negative { &ab - &ba } else { &ab + &ba };
            (g, img)
        });
        let images: Vec<_> = images.collect();
        Self::from_images(self.ring, self.degree + other.degree, images)
    }

    /// `exp(δ)`: generator images `Σ_k δ^k(g)/k!`, a finite sum by nilpotence.
    pub fn exp(&self) -> Result<SuperAutomorphism, DerivationError> {
        if self.degree % 2 == 1 {
            return Err(DerivationError::OddExponential(self.degree));
        }
        let images = self
            .ring
            .generators()
            .map(|g| {
                let base = SuperPolynomial::generator(self.ring, g).expect("ring generator");
                let mut acc = base.clone();
                let mut term = base;
                let mut k = 1i64;
                loop {
                    term = self
                        .apply_unchecked(&term)
                        .scale(&Rational::new(1.into(), k.into()));
                    if term.is_zero() {
                        break;
                    }
                    acc = &acc + &term;
                    k += 1;
                }
                acc
            })
            .collect::<Vec<_>>();
        let (even, odd) = images.split_at(self.ring.even_count());
        SuperAutomorphism::new(self.ring, even.to_vec(), odd.to_vec())
    }
}

fn check_count(expected: usize, got: usize) -> Result<(), DerivationError> {
    if expected == got {
        Ok(())
    } else {
        Err(AlgebraError::ImageCount { expected, got }.into())
    }
}

/// A substitution automorphism in unipotent normal form.
///
/// `x_i ↦ x_i + (even terms of theta-degree ≥ 2)` and
/// `θ_a ↦ θ_a + (odd terms of theta-degree ≥ 3)`; such maps are always
/// invertible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperAutomorphism {
    ring: RingSignature,
    even_images: Vec<SuperPolynomial>,
    odd_images: Vec<SuperPolynomial>,
}

impl SuperAutomorphism {
    pub fn identity(ring: RingSignature) -> Self {
        SuperAutomorphism {
            ring,
            even_images: (0..ring.even_count())
                .map(|i| SuperPolynomial::x(ring, i))
                .collect(),
            odd_images: (1..=ring.odd_count())
                .map(|a| SuperPolynomial::theta(ring, a))
                .collect(),
        }
    }

    pub fn new(
        ring: RingSignature,
        even_images: Vec<SuperPolynomial>,
        odd_images: Vec<SuperPolynomial>,
    ) -> Result<Self, DerivationError> {
        check_count(ring.even_count(), even_images.len())?;
        check_count(ring.odd_count(), odd_images.len())?;
        let candidate = SuperAutomorphism {
            ring,
            even_images,
            odd_images,
        };
        for g in ring.generators() {
            let img = candidate.image(g);
            ring.check(&img.ring())?;
            if !img.has_parity(g.parity()) {
                return Err(AlgebraError::ParityViolation {
                    generator: g,
                    expected: g.parity(),
                }
                .into());
            }
            let shift = candidate.shift(g);
            let floor = match g {
                Generator::Even(_) => 2,
                Generator::Odd(_) => 3,
            };
            if shift.min_theta_degree().is_some_and(|t| t < floor) {
                return Err(DerivationError::NotUnipotent(g));
            }
        }
        Ok(candidate)
    }

    /// Builds an automorphism moving only the listed generators.
    pub fn from_images(
        ring: RingSignature,
        images: impl IntoIterator<Item = (Generator, SuperPolynomial)>,
    ) -> Result<Self, DerivationError> {
        let mut out = Self::identity(ring);
        for (g, img) in images {
            match g {
                Generator::Even(i) if i < ring.even_count() => out.even_images[i] = img,
                Generator::Odd(a) if a >= 1 && a <= ring.odd_count() => out.odd_images[a - 1] = img,
                _ => return Err(AlgebraError::UnknownGenerator(g).into()),
            }
        }
        Self::new(ring, out.even_images, out.odd_images)
    }

    pub fn ring(&self) -> RingSignature {
        self.ring
    }

    pub fn image(&self, g: Generator) -> &SuperPolynomial {
        match g {
            Generator::Even(i) => &self.even_images[i],
            Generator::Odd(a) => &self.odd_images[a - 1],
        }
    }

    pub fn images(&self) -> impl Iterator<Item = (Generator, &SuperPolynomial)> {
        self.ring.generators().map(move |g| (g, self.image(g)))
    }

    /// Generators whose image differs from themselves.
    pub fn moved(&self) -> impl Iterator<Item = (Generator, &SuperPolynomial)> {
        self.images()
            .filter(move |(g, _)| !self.shift(*g).is_zero())
    }

    /// `α(g) − g`.
    pub fn shift(&self, g: Generator) -> SuperPolynomial {
        let base = SuperPolynomial::generator(self.ring, g).expect("ring generator");
        self.image(g) - &base
    }

    pub fn is_identity(&self) -> bool {
        self.moved().next().is_none()
    }

    pub fn apply(&self, p: &SuperPolynomial) -> Result<SuperPolynomial, DerivationError> {
        self.ring.check(&p.ring())?;
        Ok(p.substitute_unchecked(&self.even_images, &self.odd_images))
    }

    /// `α ∘ β`: first `β`, then `α`, so `(α ∘ β)(p) = α(β(p))` and each
    /// generator goes to `α` applied to its `β`-image.
    pub fn compose(&self, other: &Self) -> Result<Self, DerivationError> {
        self.ring.check(&other.ring)?;
        let map = |imgs: &[SuperPolynomial]| {
            imgs.iter()
                .map(|p| p.substitute_unchecked(&self.even_images, &self.odd_images))
                .collect::<Vec<_>>()
        };
        Ok(SuperAutomorphism {
            ring: self.ring,
            even_images: map(&other.even_images),
            odd_images: map(&other.odd_images),
        })
    }

    /// Two-sided inverse by iterated correction: starting from the identity,
    /// subtract the defect `α(β(g)) − g`. Each pass clears at least one more
    /// theta-degree, so at most `n` passes are needed.
    pub fn inverse(&self) -> Result<Self, DerivationError> {
        let mut beta = Self::identity(self.ring);
        for _ in 0..self.ring.odd_count() + 2 {
            let composite = self.compose(&beta)?;
            let mut clean = true;
            for g in self.ring.generators() {
                let defect = composite.shift(g);
                if defect.is_zero() {
                    continue;
                }
                clean = false;
                let slot = match g {
                    Generator::Even(i) => &mut beta.even_images[i],
                    Generator::Odd(a) => &mut beta.odd_images[a - 1],
                };
                *slot = &*slot - &defect;
            }
            if clean {
                return Ok(beta);
            }
        }
        Err(DerivationError::InverseDiverged)
    }

    /// Largest `k` with `α(u) − u ∈ J^k` for every generator `u`: x-shifts
    /// need theta-degree ≥ k, θ-shifts theta-degree ≥ k + 1.
    pub fn filtration_order(&self) -> Order {
        let mut best = Order::Infinite;
        for g in self.ring.generators() {
            if let Some(t) = self.shift(g).min_theta_degree() {
                let k = match g {
                    Generator::Even(_) => t,
                    Generator::Odd(_) => t - 1,
                };
                best = best.min(Order::Finite(k as u32));
            }
        }
        best
    }

    /// `(generator, image)` pairs for moved generators, rendered as text.
    pub fn rendered_moves(&self) -> Vec<(String, String)> {
        self.moved()
            .map(|(g, img)| (g.to_string(), img.to_string()))
            .collect()
    }
}

/// Group commutator `αβα⁻¹β⁻¹`.
pub fn group_commutator(
    alpha: &SuperAutomorphism,
    beta: &SuperAutomorphism,
) -> Result<SuperAutomorphism, DerivationError> {
    let ai = alpha.inverse()?;
    let bi = beta.inverse()?;
    alpha.compose(beta)?.compose(&ai)?.compose(&bi)
}
