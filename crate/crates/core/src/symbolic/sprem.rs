//! Sparse pseudo-remainders and univariate gcd over the rationals.
//!
//! `sprem(a, b, x)` produces `(m, q, r)` with `m*a = q*b + r` exactly and
//! `deg_x r < deg_x b`, where `m` is the smallest power of the leading
//! coefficient of `b` in `x` that the reduction actually needs (the sparse
//! variant: one factor per reduction step performed).

use crate::error::{Error, Result};
use crate::symbolic::laurent::{LaurentPoly, Var};

/// Result of one pseudo-remainder computation.
#[derive(Clone, Debug, PartialEq)]
pub struct SpremStep {
    pub multiplier: LaurentPoly,
    pub quotient: LaurentPoly,
    pub remainder: LaurentPoly,
    pub var: Var,
}

impl SpremStep {
    /// Re-verifies `m*a = q*b + r` by direct arithmetic.
    pub fn verify(&self, a: &LaurentPoly, b: &LaurentPoly) -> bool {
        self.multiplier
            .mul(a)
            .sub(&self.quotient.mul(b))
            .sub(&self.remainder)
            .is_zero()
    }
}

/// Sparse pseudo-remainder of `a` by `b` with respect to `var`.
///
/// Both inputs must be plain polynomials in `var` (negative exponents in the
/// other variable are fine) and `b` must have positive degree in `var`.
pub fn sprem(a: &LaurentPoly, b: &LaurentPoly, var: Var) -> Result<SpremStep> {
    if !a.is_polynomial_in(var) || !b.is_polynomial_in(var) {
        return Err(Error::NegativeExponent(format!(
            "sprem inputs must be polynomials in {}",
            var.name()
        )));
    }
    let db = b.degree_in(var).unwrap_or(0);
    if b.is_zero() || db < 1 {
        return Err(Error::ConstantDivisor(var.name()));
    }
    let lead = b.leading_coef_in(var);
    let mut m = LaurentPoly::one();
    let mut q = LaurentPoly::zero();
    let mut r = a.clone();
    while let Some(dr) = r.degree_in(var) {
        if dr < db {
            break;
        }
        let rc = r.leading_coef_in(var);
        let shift = match var {
            Var::C1 => LaurentPoly::monomial(1, dr - db, 0),
            Var::C2 => LaurentPoly::monomial(1, 0, dr - db),
        };
        let t = rc.mul(&shift);
        // m*a = q*b + r  ->  (d*m)*a = (d*q + t)*b + (d*r - t*b)
        r = lead.mul(&r).sub(&t.mul(b));
        q = lead.mul(&q).add(&t);
        m = m.mul(&lead);
        debug_assert!(r.degree_in(var).map_or(true, |d| d < dr));
    }
    Ok(SpremStep { multiplier: m, quotient: q, remainder: r, var })
}

/// Monic gcd of two univariate polynomials (in `var`, after clearing the
/// monomial content so Laurent inputs are accepted).
pub fn gcd_univariate(a: &LaurentPoly, b: &LaurentPoly, var: Var) -> Result<LaurentPoly> {
    let prep = |p: &LaurentPoly| -> Result<LaurentPoly> {
        if p.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let (_, _, core) = p.strip_monomial();
        if !core.is_univariate_in(var) {
            return Err(Error::NotUnivariate(var.name()));
        }
        Ok(core.primitive_part())
    };
    let mut x = prep(a)?;
    let mut y = prep(b)?;
    if x.is_zero() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_zero() {
        let r = if y.degree_in(var).unwrap_or(0) == 0 {
            LaurentPoly::zero()
        } else {
            sprem(&x, &y, var)?.remainder
        };
        x = y;
        y = if r.is_zero() { r } else { r.primitive_part() };
    }
    if x.is_zero() {
        return Ok(x);
    }
    // Normalize monic over Q.
    let lead = x.leading_coef_in(var);
    let c = lead.coef_at(0, 0);
    Ok(x.mul_rat(&c.recip()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s).unwrap()
    }

    #[test]
    fn divides_cleanly() {
        let step = sprem(&p("c2^2-1"), &p("c2-1"), Var::C2).unwrap();
        assert!(step.multiplier.is_one());
        assert_eq!(step.quotient, p("c2+1"));
        assert!(step.remainder.is_zero());
        assert!(step.verify(&p("c2^2-1"), &p("c2-1")));
    }

    #[test]
    fn reduction_against_linear_divisor() {
        // a = c1*c2^2 + 1, b = c2 - c1. Oracle: remainder is a at c2 = c1,
        // i.e. c1^3 + 1, and the quotient computed by hand is c1*c2 + c1^2.
        let a = p("c1*c2^2+1");
        let b = p("c2-c1");
        let step = sprem(&a, &b, Var::C2).unwrap();
        assert!(step.multiplier.is_one());
        assert_eq!(step.quotient, p("c1*c2+c1^2"));
        assert_eq!(step.remainder, p("c1^3+1"));
        assert!(step.verify(&a, &b));
    }

    #[test]
    fn multiplier_is_power_of_leading_coefficient() {
        // b has leading coefficient c1^2 in c2; reducing degree 4 -> 0 takes
        // four steps, so m = (c1^2)^4.
        let f3_like = p("c1^2*c2^4+c2+1");
        let b = p("c1^2*c2-1");
        let step = sprem(&f3_like, &b, Var::C2).unwrap();
        assert_eq!(step.multiplier, p("c1^8"));
        assert!(step.verify(&f3_like, &b));
        assert!(step.remainder.is_univariate_in(Var::C1));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            sprem(&p("c2^-1+1"), &p("c2-1"), Var::C2),
            Err(Error::NegativeExponent(_))
        ));
        assert!(matches!(
            sprem(&p("c2+1"), &p("c1"), Var::C2),
            Err(Error::ConstantDivisor("c2"))
        ));
    }

    #[test]
    fn gcd_examples() {
        let g = gcd_univariate(&p("c1^2-1"), &p("c1-1"), Var::C1).unwrap();
        assert_eq!(g, p("c1-1"));
        let g0 = gcd_univariate(&p("2*c1^2-2"), &LaurentPoly::zero(), Var::C1).unwrap();
        assert_eq!(g0, p("c1^2-1"));
        assert!(matches!(
            gcd_univariate(&p("c1*c2+1"), &p("c1"), Var::C1),
            Err(Error::NotUnivariate("c1"))
        ));
    }

    #[test]
    fn gcd_divides_both_inputs() {
        let a = p("c1^3-1").mul(&p("c1-2"));
        let b = p("c1^3-1").mul(&p("c1+5")).mul(&p("c1+5"));
        let g = gcd_univariate(&a, &b, Var::C1).unwrap();
        assert!(a.try_exact_div(&g).unwrap().is_some());
        assert!(b.try_exact_div(&g).unwrap().is_some());
        assert!(g.try_exact_div(&p("c1^3-1")).unwrap().is_some());
    }
}
