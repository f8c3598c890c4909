use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};
use serde::Serialize;

use super::{AlgebraError, Generator, OddMonomial, Rational, RingSignature, SuperMonomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_degree(theta_degree: usize) -> Self {
        if theta_degree.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn bit(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Result of [`SuperPolynomial::scaling_degree`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalingDegree {
    Homogeneous(u32),
    NonHomogeneous,
}

impl ScalingDegree {
    pub fn value(self) -> Option<u32> {
        match self {
            ScalingDegree::Homogeneous(d) => Some(d),
            ScalingDegree::NonHomogeneous => None,
        }
    }
}

/// Element of `ℚ[x0..xm | t1..tn]` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SuperPolynomial {
    ring: RingSignature,
    terms: BTreeMap<SuperMonomial, Rational>,
}

impl SuperPolynomial {
    pub fn zero(ring: RingSignature) -> Self {
        SuperPolynomial {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: RingSignature) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: RingSignature, c: Rational) -> Self {
        Self::term(ring, SuperMonomial::one(ring.even_count()), c)
    }

    pub fn term(ring: RingSignature, monomial: SuperMonomial, c: Rational) -> Self {
        debug_assert_eq!(monomial.exponents().len(), ring.even_count());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(monomial, c);
        }
        SuperPolynomial { ring, terms }
    }

    /// The generator `x_i` or `θ_a` as a polynomial.
    pub fn generator(ring: RingSignature, g: Generator) -> Result<Self, AlgebraError> {
        let mut exps = vec![0; ring.even_count()];
        let odd = match g {
            Generator::Even(i) if i < ring.even_count() => {
                exps[i] = 1;
                OddMonomial::ONE
            }
            Generator::Odd(a) if a >= 1 && a <= ring.odd_count() => OddMonomial::var(a),
            _ => return Err(AlgebraError::UnknownGenerator(g)),
        };
        Ok(Self::term(
            ring,
            SuperMonomial::new(exps, odd),
            Rational::one(),
        ))
    }

    pub fn x(ring: RingSignature, i: usize) -> Self {
        Self::generator(ring, Generator::Even(i)).expect("even index in range")
    }

    pub fn theta(ring: RingSignature, a: usize) -> Self {
        Self::generator(ring, Generator::Odd(a)).expect("odd index in range")
    }

    /// `θ_{i1}···θ_{ik}` in the given order, canonicalized with its sign.
    pub fn theta_product(ring: RingSignature, indices: &[usize]) -> Self {
        assert!(indices.iter().all(|&a| a >= 1 && a <= ring.odd_count()));
        match OddMonomial::from_product(indices) {
            None => Self::zero(ring),
            Some((negative, odd)) => {
                let c = if negative {
                    -Rational::one()
                } else {
                    Rational::one()
                };
                Self::term(ring, SuperMonomial::new(vec![0; ring.even_count()], odd), c)
            }
        }
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, summing
    /// duplicates and dropping zeros.
    pub fn from_terms(
        ring: RingSignature,
        terms: impl IntoIterator<Item = (SuperMonomial, Rational)>,
    ) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.exponents().len(), ring.even_count());
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> RingSignature {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in printing order.
    pub fn terms(&self) -> impl Iterator<Item = (&SuperMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &SuperMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&SuperMonomial, &Rational)> {
        self.terms.iter().next()
    }

    pub(crate) fn add_term(&mut self, m: SuperMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.ring.check(&other.ring)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.ring.check(&other.ring)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Supercommutative product.
    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.ring.check(&other.ring)?;
        let mut out = Self::zero(self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((negative, m)) = ma.mul(mb) {
                    let c = ca * cb;
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.ring);
        }
        SuperPolynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `ξ^j`: the terms of theta-degree exactly `j`.
    pub fn proj_theta_degree(&self, j: usize) -> Self {
        self.filter(|m| m.theta_degree() == j)
    }

    /// `ξ^±`: the terms whose theta-degree has the given parity.
    pub fn proj_parity(&self, parity: Parity) -> Self {
        self.filter(|m| Parity::of_degree(m.theta_degree()) == parity)
    }

    pub fn filter(&self, keep: impl Fn(&SuperMonomial) -> bool) -> Self {
        SuperPolynomial {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn theta_degrees(&self) -> BTreeSet<usize> {
        self.terms.keys().map(|m| m.theta_degree()).collect()
    }

    pub fn min_theta_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.theta_degree()).min()
    }

    pub fn max_even_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.even_degree()).max()
    }

    /// `Some(parity)` when all terms share a parity; zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut seen = None;
        for m in self.terms.keys() {
            let p = Parity::of_degree(m.theta_degree());
            match seen {
                None => seen = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(seen.unwrap_or(Parity::Even))
    }

    pub fn has_parity(&self, parity: Parity) -> bool {
        self.is_zero() || self.parity() == Some(parity)
    }

    pub fn is_pure_even(&self) -> bool {
        self.terms.keys().all(|m| m.odd().is_empty())
    }

    /// Degree under the `𝔾_m` action `x ↦ λx, θ ↦ λθ`.
    pub fn scaling_degree(&self) -> Result<ScalingDegree, AlgebraError> {
        let mut degrees = self.terms.keys().map(|m| m.scaling_degree());
        let first = degrees.next().ok_or(AlgebraError::ZeroPolynomial)?;
        if degrees.all(|d| d == first) {
            Ok(ScalingDegree::Homogeneous(first))
        } else {
            Ok(ScalingDegree::NonHomogeneous)
        }
    }

    /// `∂/∂x_i`.
    pub fn partial_even(&self, i: usize) -> Self {
        let mut out = Self::zero(self.ring);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[i] -= 1;
            out.add_term(
                SuperMonomial::new(exps, m.odd()),
                c * Rational::from_integer(e.into()),
            );
        }
        out
    }

    /// Coefficient of `θ_μ` as a pure-even polynomial.
    pub fn odd_coefficient(&self, odd: OddMonomial) -> Self {
        let mut out = Self::zero(self.ring);
        for (m, c) in &self.terms {
            if m.odd() == odd {
                out.add_term(m.even_part(), c.clone());
            }
        }
        out
    }

    /// Groups terms by odd monomial: `p = Σ_μ c_μ(x) θ_μ`.
    pub fn odd_decomposition(&self) -> BTreeMap<u64, SuperPolynomial> {
        let mut out: BTreeMap<u64, SuperPolynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.odd().mask())
                .or_insert_with(|| Self::zero(self.ring))
                .add_term(m.even_part(), c.clone());
        }
        out
    }

    /// Multiplies every term by the monomial `mono` on the left.
    pub fn mul_monomial_left(&self, mono: &SuperMonomial, c: &Rational) -> Self {
        let mut out = Self::zero(self.ring);
        for (m, a) in &self.terms {
            if let Some((negative, prod)) = mono.mul(m) {
                let v = a * c;
                out.add_term(prod, if negative { -v } else { v });
            }
        }
        out
    }

    /// Evaluates the algebra map sending each `x_i` to `even_images[i]` and
    /// each `θ_a` to `odd_images[a - 1]`.
    pub fn substitute(
        &self,
        even_images: &[SuperPolynomial],
        odd_images: &[SuperPolynomial],
    ) -> Result<Self, AlgebraError> {
        if even_images.len() != self.ring.even_count() {
            return Err(AlgebraError::ImageCount {
                expected: self.ring.even_count(),
                got: even_images.len(),
            });
        }
        if odd_images.len() != self.ring.odd_count() {
            return Err(AlgebraError::ImageCount {
                expected: self.ring.odd_count(),
                got: odd_images.len(),
            });
        }
        for (i, img) in even_images.iter().enumerate() {
            self.ring.check(&img.ring)?;
            if !img.has_parity(Parity::Even) {
                return Err(AlgebraError::ParityViolation {
                    generator: Generator::Even(i),
                    expected: Parity::Even,
                });
            }
        }
        for (a, img) in odd_images.iter().enumerate() {
            self.ring.check(&img.ring)?;
            if !img.has_parity(Parity::Odd) {
                return Err(AlgebraError::ParityViolation {
                    generator: Generator::Odd(a + 1),
                    expected: Parity::Odd,
                });
            }
        }
        Ok(self.substitute_unchecked(even_images, odd_images))
    }

    pub(crate) fn substitute_unchecked(
        &self,
        even_images: &[SuperPolynomial],
        odd_images: &[SuperPolynomial],
    ) -> Self {
        let mut powers: Vec<Vec<SuperPolynomial>> = even_images
            .iter()
            .map(|img| vec![Self::one(self.ring), img.clone()])
            .collect();
        let mut out = Self::zero(self.ring);
        for (m, c) in &self.terms {
            let mut acc = Self::constant(self.ring, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &cache[1];
                    cache.push(next);
                }
                acc = &acc * &cache[e as usize];
                if acc.is_zero() {
                    break;
                }
            }
            for a in m.odd().indices() {
                if acc.is_zero() {
                    break;
                }
                acc = &acc * &odd_images[a - 1];
            }
            for (tm, tc) in acc.terms {
                out.add_term(tm, tc);
            }
        }
        out
    }
}

impl fmt::Display for SuperPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                m.fmt_factors(f)?;
            } else {
                write!(f, "{abs}*")?;
                m.fmt_factors(f)?;
            }
        }
        Ok(())
    }
}

impl Serialize for SuperPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

// Operator forms panic on a signature mismatch; the `Result` methods are the
// checked entry points.
impl<'a> Add<&'a SuperPolynomial> for &'a SuperPolynomial {
    type Output = SuperPolynomial;
    fn add(self, rhs: &'a SuperPolynomial) -> SuperPolynomial {
        SuperPolynomial::add(self, rhs).expect("ring signature mismatch")
    }
}

impl<'a> Sub<&'a SuperPolynomial> for &'a SuperPolynomial {
    type Output = SuperPolynomial;
    fn sub(self, rhs: &'a SuperPolynomial) -> SuperPolynomial {
        SuperPolynomial::sub(self, rhs).expect("ring signature mismatch")
    }
}

impl<'a> Mul<&'a SuperPolynomial> for &'a SuperPolynomial {
    type Output = SuperPolynomial;
    fn mul(self, rhs: &'a SuperPolynomial) -> SuperPolynomial {
        SuperPolynomial::mul(self, rhs).expect("ring signature mismatch")
    }
}

impl Neg for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn neg(self) -> SuperPolynomial {
        self.scale(&-Rational::one())
    }
}

impl Neg for SuperPolynomial {
    type Output = SuperPolynomial;
    fn neg(self) -> SuperPolynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn ring(m: usize, n: usize) -> RingSignature {
        RingSignature::projective(m, n).unwrap()
    }

    fn quadric(r: RingSignature, lambda: Rational) -> SuperPolynomial {
        let x = |i| SuperPolynomial::x(r, i);
        let base = &(&x(0) * &x(2)) - &x(1).pow(2);
        &base + &SuperPolynomial::theta_product(r, &[1, 2]).scale(&lambda)
    }

    #[test]
    fn add_examples() {
        let r = ring(2, 2);
        let t12 = SuperPolynomial::theta_product(r, &[1, 2]);
        assert!((&t12 + &(-&t12)).is_zero());
        let x0 = SuperPolynomial::x(r, 0);
        assert_eq!((&x0 + &x0).to_string(), "2*x0");
        assert_eq!(quadric(r, q(1, 1)).to_string(), "x0*x2 - x1^2 + t1*t2");
    }

    #[test]
    fn signature_mismatch_is_error() {
        let a = SuperPolynomial::x(ring(2, 2), 0);
        let b = SuperPolynomial::x(ring(2, 3), 0);
        assert!(matches!(
            a.add(&b),
            Err(AlgebraError::SignatureMismatch { .. })
        ));
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn mul_examples() {
        let r = ring(2, 2);
        let t1 = SuperPolynomial::theta(r, 1);
        let t2 = SuperPolynomial::theta(r, 2);
        assert_eq!((&t2 * &t1).to_string(), "-t1*t2");
        assert!((&t1 * &t1).is_zero());
        let x0 = SuperPolynomial::x(r, 0);
        let t12 = &t1 * &t2;
        let lhs = &(&x0 + &t12) * &(&x0 - &t12);
        assert_eq!(lhs, x0.pow(2));
    }

    #[test]
    fn projections() {
        let r = ring(2, 2);
        let lam = q(3, 2);
        let f = quadric(r, lam.clone());
        assert_eq!(
            f.proj_theta_degree(2),
            SuperPolynomial::theta_product(r, &[1, 2]).scale(&lam)
        );
        assert_eq!(f.proj_theta_degree(0).to_string(), "x0*x2 - x1^2");
        assert!(SuperPolynomial::theta_product(r, &[1, 2])
            .proj_theta_degree(1)
            .is_zero());

        let r3 = ring(3, 3);
        let p = &(&SuperPolynomial::x(r3, 0) * &SuperPolynomial::x(r3, 2))
            - &SuperPolynomial::x(r3, 1).pow(2);
        let odd = SuperPolynomial::theta_product(r3, &[1, 2, 3]).scale(&lam);
        let f3 = &p + &odd;
        assert_eq!(f3.proj_parity(Parity::Even), p);
        assert_eq!(f3.proj_parity(Parity::Odd), odd);
        assert!(SuperPolynomial::x(r3, 0)
            .pow(2)
            .proj_parity(Parity::Odd)
            .is_zero());
    }

    #[test]
    fn scaling_degrees() {
        let r = ring(2, 3);
        assert_eq!(
            quadric(r, q(1, 1)).scaling_degree(),
            Ok(ScalingDegree::Homogeneous(2))
        );
        let mixed = &SuperPolynomial::x(r, 0) + &SuperPolynomial::theta_product(r, &[1, 2]);
        assert_eq!(mixed.scaling_degree(), Ok(ScalingDegree::NonHomogeneous));
        assert_eq!(
            SuperPolynomial::theta_product(r, &[1, 2, 3]).scaling_degree(),
            Ok(ScalingDegree::Homogeneous(3))
        );
        assert_eq!(
            SuperPolynomial::zero(r).scaling_degree(),
            Err(AlgebraError::ZeroPolynomial)
        );
    }

    #[test]
    fn substitute_examples() {
        let r = ring(2, 2);
        let ids: Vec<_> = (0..3).map(|i| SuperPolynomial::x(r, i)).collect();
        let odd: Vec<_> = (1..=2).map(|a| SuperPolynomial::theta(r, a)).collect();
        let p = quadric(r, q(0, 1));
        assert_eq!(p.substitute(&ids, &odd).unwrap(), p);

        let t12 = SuperPolynomial::theta_product(r, &[1, 2]);
        let mut shifted = ids.clone();
        shifted[0] = &ids[0] + &t12;
        let x0 = SuperPolynomial::x(r, 0);
        assert_eq!(
            x0.substitute(&shifted, &odd).unwrap().to_string(),
            "x0 + t1*t2"
        );
        assert_eq!(
            x0.pow(2).substitute(&shifted, &odd).unwrap().to_string(),
            "x0^2 + 2*x0*t1*t2"
        );
    }

    #[test]
    fn substitute_rejects_parity_violation() {
        let r = ring(1, 2);
        let mut even: Vec<_> = (0..2).map(|i| SuperPolynomial::x(r, i)).collect();
        let odd: Vec<_> = (1..=2).map(|a| SuperPolynomial::theta(r, a)).collect();
        even[1] = &even[1] + &SuperPolynomial::theta(r, 1);
        let err = SuperPolynomial::x(r, 0)
            .substitute(&even, &odd)
            .unwrap_err();
        assert_eq!(
            err,
            AlgebraError::ParityViolation {
                generator: Generator::Even(1),
                expected: Parity::Even
            }
        );
        let even: Vec<_> = (0..2).map(|i| SuperPolynomial::x(r, i)).collect();
        let mut odd = odd;
        odd[0] = SuperPolynomial::theta_product(r, &[1, 2]);
        assert!(SuperPolynomial::x(r, 0).substitute(&even, &odd).is_err());
    }

    #[test]
    fn render_fractions_and_constants() {
        let r = ring(2, 2);
        let p = SuperPolynomial::from_terms(
            r,
            [
                (
                    SuperMonomial::new(vec![0, 0, 0], OddMonomial::from_mask(0b11)),
                    q(3, 2),
                ),
                (SuperMonomial::one(3), q(-1, 3)),
                (
                    SuperMonomial::new(vec![1, 0, 0], OddMonomial::ONE),
                    q(-1, 1),
                ),
            ],
        );
        assert_eq!(p.to_string(), "-x0 - 1/3 + 3/2*t1*t2");
        assert_eq!(SuperPolynomial::zero(r).to_string(), "0");
    }
}
