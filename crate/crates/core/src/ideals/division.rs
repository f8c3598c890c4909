use serde::Serialize;

use crate::superalgebra::{OddMonomial, Rational, SuperMonomial, SuperPolynomial};

/// Reduction steps before division gives up. Division by polynomials with
/// odd parts is not guaranteed to terminate under the printing order.
const STEP_LIMIT: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionOutcome {
    pub remainder: SuperPolynomial,
    /// False when the step limit was hit; the remainder is then only a
    /// representative of the same class.
    pub complete: bool,
}

/// Multivariate division of `p` by `divisors`, leading terms taken in the
/// printing order (largest even degree first).
pub fn reduce_modulo(p: &SuperPolynomial, divisors: &[SuperPolynomial]) -> DivisionOutcome {
    let divisors: Vec<(&SuperPolynomial, SuperMonomial, Rational)> = divisors
        .iter()
        .filter_map(|g| g.leading_term().map(|(m, c)| (g, m.clone(), c.clone())))
        .collect();
    let mut rest = p.clone();
    let mut remainder = SuperPolynomial::zero(p.ring());
    for _ in 0..STEP_LIMIT {
        let Some((m, c)) = rest.leading_term().map(|(m, c)| (m.clone(), c.clone())) else {
            return DivisionOutcome {
                remainder,
                complete: true,
            };
        };
        let hit = divisors.iter().find(|(_, lt, _)| lt.divides(&m));
        match hit {
            Some((g, lt, lc)) => {
                let exps = m
                    .exponents()
                    .iter()
                    .zip(lt.exponents())
                    .map(|(a, b)| a - b)
                    .collect();
                let odd = OddMonomial::from_mask(m.odd().mask() & !lt.odd().mask());
                let quotient = SuperMonomial::new(exps, odd);
                let (negative, _) = quotient.mul(lt).expect("disjoint odd parts");
                let mut k = c / lc;
                if negative {
                    k = -k;
                }
                rest = &rest - &g.mul_monomial_left(&quotient, &k);
            }
            None => {
                let term = SuperPolynomial::term(p.ring(), m, c);
                remainder = &remainder + &term;
                rest = &rest - &term;
            }
        }
    }
    DivisionOutcome {
        remainder: &remainder + &rest,
        complete: false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Membership {
    Member,
    NotMember,
    Unknown,
}

/// Decides `p ∈ (divisors)` where that is possible without Gröbner bases.
///
/// A zero remainder proves membership. Non-membership is proved when some
/// term of `p` has even degree below every term of every divisor, or when
/// there is a single pure-even divisor (division by one polynomial is exact
/// coefficientwise in `θ`). Anything else is `Unknown`.
pub fn membership(p: &SuperPolynomial, divisors: &[SuperPolynomial]) -> Membership {
    if p.is_zero() {
        return Membership::Member;
    }
    let floor = divisors
        .iter()
        .flat_map(|g| g.terms().map(|(m, _)| m.even_degree()))
        .min();
    let Some(floor) = floor else {
        return Membership::NotMember;
    };
    if p.terms().any(|(m, _)| m.even_degree() < floor) {
        return Membership::NotMember;
    }
    let out = reduce_modulo(p, divisors);
    let nonzero: Vec<&SuperPolynomial> = divisors.iter().filter(|g| !g.is_zero()).collect();
    match (out.complete, out.remainder.is_zero()) {
        (true, true) => Membership::Member,
        (true, false) if nonzero.len() == 1 && nonzero[0].is_pure_even() => Membership::NotMember,
        _ => Membership::Unknown,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::RingSignature;

    #[test]
    fn division_by_quadric() {
        let r = RingSignature::projective(2, 2).unwrap();
        let x = |i| SuperPolynomial::x(r, i);
        let p = &(&x(0) * &x(2)) - &x(1).pow(2);
        let t12 = SuperPolynomial::theta_product(r, &[1, 2]);
        let multiple = &(&(&x(0) + &x(1)) * &p) * &t12;
        let out = reduce_modulo(&multiple, std::slice::from_ref(&p));
        assert!(out.complete && out.remainder.is_zero());
        assert_eq!(
            membership(&multiple, std::slice::from_ref(&p)),
            Membership::Member
        );
        assert_eq!(
            membership(&t12, std::slice::from_ref(&p)),
            Membership::NotMember
        );
        let near = &(&x(0) * &x(2)) * &t12;
        assert_eq!(
            membership(&near, std::slice::from_ref(&p)),
            Membership::NotMember
        );
        assert_eq!(
            reduce_modulo(&near, std::slice::from_ref(&p))
                .remainder
                .to_string(),
            "x1^2*t1*t2"
        );
    }

    #[test]
    fn odd_divisor_signs() {
        let r = RingSignature::projective(1, 3).unwrap();
        let t = |i: &[usize]| SuperPolynomial::theta_product(r, i);
        // t2 divides t1*t2*t3 up to sign
        let out = reduce_modulo(&t(&[1, 2, 3]), &[t(&[2])]);
        assert!(out.complete && out.remainder.is_zero());
        assert_eq!(membership(&t(&[1, 3]), &[t(&[2])]), Membership::Unknown);
    }
}
