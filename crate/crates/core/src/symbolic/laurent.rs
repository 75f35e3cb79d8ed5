//! Sparse Laurent polynomials in `c1`, `c2` with exact rational coefficients.
//!
//! Canonical form: a map from exponent pairs (possibly negative) to nonzero
//! coefficients, ordered lexicographically by `(e1, e2)`. All arithmetic
//! re-canonicalizes.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::field::{parse_rat, parse_term_shape, split_terms, Rat};
use crate::exactalg::{Field, Ring, Scalar};

/// One of the two parameter variables.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Var {
    C1,
    C2,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::C1 => "c1",
            Var::C2 => "c2",
        }
    }

    pub fn other(self) -> Var {
        match self {
            Var::C1 => Var::C2,
            Var::C2 => Var::C1,
        }
    }
}

fn exp_get(e: (i64, i64), var: Var) -> i64 {
    match var {
        Var::C1 => e.0,
        Var::C2 => e.1,
    }
}

fn exp_with(e: (i64, i64), var: Var, v: i64) -> (i64, i64) {
    match var {
        Var::C1 => (v, e.1),
        Var::C2 => (e.0, v),
    }
}

/// Sparse bivariate Laurent polynomial over the rationals.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<(i64, i64), Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(Rat::one())
    }

    pub fn constant(r: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert((0, 0), r);
        }
        LaurentPoly { terms }
    }

    pub fn int(n: i64) -> Self {
        LaurentPoly::constant(Rat::from_integer(BigInt::from(n)))
    }

    pub fn var(v: Var) -> Self {
        LaurentPoly::monomial(1, exp_get((1, 0), v), exp_get((0, 1), v))
    }

    pub fn monomial(coef: i64, e1: i64, e2: i64) -> Self {
        LaurentPoly::monomial_rat(Rat::from_integer(BigInt::from(coef)), e1, e2)
    }

    pub fn monomial_rat(coef: Rat, e1: i64, e2: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert((e1, e2), coef);
        }
        LaurentPoly { terms }
    }

    /// Builds a polynomial from `(coef, e1, e2)` triples.
    pub fn from_terms(list: &[(i64, i64, i64)]) -> Self {
        let mut p = LaurentPoly::zero();
        for &(c, e1, e2) in list {
            p = p.add(&LaurentPoly::monomial(c, e1, e2));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).map_or(false, Rat::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&(0, 0)))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &Rat)> {
        self.terms.iter()
    }

    pub fn coef_at(&self, e1: i64, e2: i64) -> Rat {
        self.terms.get(&(e1, e2)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(*e).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        LaurentPoly { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<(i64, i64), Rat> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = (ea.0 + eb.0, ea.1 + eb.1);
                let entry = terms.entry(e).or_insert_with(Rat::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly { terms }
    }

    pub fn mul_rat(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, c * r)).collect() }
    }

    /// Nonnegative power.
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = LaurentPoly::one();
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base.clone());
            k >>= 1;
        }
        acc
    }

    /// Multiplies by the monomial c1^e1 * c2^e2 (a unit of the Laurent ring).
    pub fn shift(&self, e1: i64, e2: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| ((e.0 + e1, e.1 + e2), c.clone())).collect(),
        }
    }

    pub fn degree_in(&self, var: Var) -> Option<i64> {
        self.terms.keys().map(|e| exp_get(*e, var)).max()
    }

    pub fn min_exp_in(&self, var: Var) -> Option<i64> {
        self.terms.keys().map(|e| exp_get(*e, var)).min()
    }

    /// Maximum of e1 + e2 over the support.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.0 + e.1).max()
    }

    /// No negative exponents in `var`.
    pub fn is_polynomial_in(&self, var: Var) -> bool {
        self.min_exp_in(var).map_or(true, |m| m >= 0)
    }

    /// No negative exponents at all.
    pub fn is_polynomial(&self) -> bool {
        self.is_polynomial_in(Var::C1) && self.is_polynomial_in(Var::C2)
    }

    /// All exponents of `var.other()` are zero.
    pub fn is_univariate_in(&self, var: Var) -> bool {
        let o = var.other();
        self.terms.keys().all(|e| exp_get(*e, o) == 0)
    }

    /// The coefficient of var^k, as a polynomial in the other variable.
    pub fn coef_of_power(&self, var: Var, k: i64) -> LaurentPoly {
        let o = var.other();
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| exp_get(**e, var) == k)
            .map(|(e, c)| (exp_with((0, 0), o, exp_get(*e, o)), c.clone()))
            .collect();
        LaurentPoly { terms }
    }

    /// Leading coefficient with respect to `var`, as a polynomial in the
    /// other variable; zero polynomial for zero input.
    pub fn leading_coef_in(&self, var: Var) -> LaurentPoly {
        match self.degree_in(var) {
            None => LaurentPoly::zero(),
            Some(d) => self.coef_of_power(var, d),
        }
    }

    /// Substitutes a polynomial for one variable. The substituted polynomial
    /// must be usable at negative exponents only if it is a unit; this
    /// implementation requires nonnegative exponents of `var` unless the
    /// replacement is a monomial.
    pub fn substitute(&self, var: Var, value: &LaurentPoly) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            let k = exp_get(*e, var);
            let rest = exp_with(*e, var, 0);
            let powed = if k >= 0 {
                value.pow(k as u32)
            } else if value.terms.len() == 1 {
                let (me, mc) = value.terms.iter().next().expect("single term");
                let inv = LaurentPoly::monomial_rat(mc.recip(), -me.0, -me.1);
                inv.pow((-k) as u32)
            } else {
                return Err(Error::NegativeExponent(format!(
                    "substituting a non-monomial into {}^{k}",
                    var.name()
                )));
            };
            let term = LaurentPoly { terms: [(rest, c.clone())].into_iter().collect() };
            out = out.add(&term.mul(&powed));
        }
        Ok(out)
    }

    /// Strips the monomial content: returns `(m1, m2, p)` such that
    /// `self = c1^m1 c2^m2 * p` and `p` is an ordinary polynomial with a
    /// nonzero term of exponent zero in each variable.
    pub fn strip_monomial(&self) -> (i64, i64, LaurentPoly) {
        if self.is_zero() {
            return (0, 0, LaurentPoly::zero());
        }
        let m1 = self.min_exp_in(Var::C1).expect("nonzero");
        let m2 = self.min_exp_in(Var::C2).expect("nonzero");
        (m1, m2, self.shift(-m1, -m2))
    }

    /// Rational content: gcd of numerators over lcm of denominators, with the
    /// sign of the lexicographically largest term.
    pub fn content(&self) -> Rat {
        if self.is_zero() {
            return Rat::zero();
        }
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num::integer::gcd(num, c.numer().abs());
            den = num::integer::lcm(den, c.denom().clone());
        }
        let mut content = Rat::new(num, den);
        let lead = self.terms.iter().next_back().expect("nonzero").1;
        if lead.is_negative() {
            content = -content;
        }
        content
    }

    /// Divides out the rational content, yielding a primitive integer-
    /// coefficient polynomial with positive leading term.
    pub fn primitive_part(&self) -> LaurentPoly {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        let c = self.content();
        self.mul_rat(&c.recip())
    }

    /// Exact division; `Ok(None)` when not divisible.
    ///
    /// The quotient is computed in the Laurent ring but must be an ordinary
    /// polynomial in every variable where both operands are ordinary, so
    /// `(c1+1)/c2` is not divisible even though `c2` is a Laurent unit.
    pub fn try_exact_div(&self, divisor: &Self) -> Result<Option<LaurentPoly>> {
        let q = self.try_exact_div_laurent(divisor)?;
        if let Some(q) = &q {
            for v in [Var::C1, Var::C2] {
                if self.is_polynomial_in(v)
                    && divisor.is_polynomial_in(v)
                    && !q.is_polynomial_in(v)
                {
                    return Ok(None);
                }
            }
        }
        Ok(q)
    }

    /// Exact division in the Laurent ring, where monomials are units. Used by
    /// fraction-free elimination, whose intermediate quotients are Laurent.
    pub fn try_exact_div_laurent(&self, divisor: &Self) -> Result<Option<LaurentPoly>> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Some(LaurentPoly::zero()));
        }
        // Monomials are units: compare the ordinary-polynomial cores.
        let (a1, a2, a) = self.strip_monomial();
        let (b1, b2, b) = divisor.strip_monomial();
        let mut rem = a;
        let mut quot = LaurentPoly::zero();
        let blead = b.terms.iter().next_back().expect("nonzero divisor");
        while !rem.is_zero() {
            let (rexp, rcoef) = {
                let (e, c) = rem.terms.iter().next_back().expect("nonzero");
                (*e, c.clone())
            };
            let e = (rexp.0 - blead.0 .0, rexp.1 - blead.0 .1);
            if e.0 < 0 || e.1 < 0 {
                return Ok(None);
            }
            let t = LaurentPoly::monomial_rat(&rcoef / blead.1, e.0, e.1);
            quot = quot.add(&t);
            rem = rem.sub(&t.mul(&b));
            if let Some((new_exp, _)) = rem.terms.iter().next_back() {
                if *new_exp >= rexp {
                    return Ok(None);
                }
            }
        }
        Ok(Some(quot.shift(a1 - b1, a2 - b2)))
    }

    /// Exact division; errors when not divisible.
    pub fn exact_div(&self, divisor: &Self) -> Result<LaurentPoly> {
        self.try_exact_div(divisor)?.ok_or(Error::NotDivisible)
    }

    /// Exact evaluation at field values; a ring homomorphism. Negative
    /// exponents require the corresponding value to be nonzero.
    pub fn eval(&self, c1: &Scalar, c2: &Scalar) -> Result<Scalar> {
        let field = c1.field().clone();
        if c2.field() != &field {
            return Err(Error::FieldMismatch(
                field.label().to_string(),
                c2.field().label().to_string(),
            ));
        }
        let mut acc = field.zero();
        for (e, c) in &self.terms {
            if (e.0 < 0 && c1.is_zero()) || (e.1 < 0 && c2.is_zero()) {
                return Err(Error::ZeroToNegativePower);
            }
            let t = field
                .from_rat(c)?
                .mul(&c1.pow(e.0)?)?
                .mul(&c2.pow(e.1)?)?;
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    pub fn eval_in(&self, field: &Field, c1_text: &str, c2_text: &str) -> Result<Scalar> {
        let c1 = field.parse_scalar(c1_text)?;
        let c2 = field.parse_scalar(c2_text)?;
        self.eval(&c1, &c2)
    }

    /// Parses the polynomial text format: terms `coef*c1^a*c2^b` joined by
    /// `+` (a `-` separator is tolerated), exponents possibly negative.
    pub fn parse(text: &str) -> Result<LaurentPoly> {
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut acc = LaurentPoly::zero();
        for term in split_terms(&text) {
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in {text:?}")));
            }
            acc = acc.add(&parse_poly_term(&term)?);
        }
        Ok(acc)
    }
}

fn parse_poly_term(term: &str) -> Result<LaurentPoly> {
    // Factor shapes: rational, c1[^k], c2[^k], joined by '*'.
    let mut coef = Rat::one();
    let mut e1 = 0i64;
    let mut e2 = 0i64;
    let mut negate = false;
    let mut body = term;
    if let Some(stripped) = body.strip_prefix('-') {
        // Either a plain negative rational or a sign on a variable factor.
        if stripped.starts_with(|c: char| c.is_ascii_digit()) {
            // handled by parse_rat below
        } else {
            negate = true;
            body = stripped;
        }
    }
    for factor in body.split('*') {
        if factor.is_empty() {
            return Err(Error::Parse(format!("bad term: {term:?}")));
        }
        if factor.starts_with("c1") || factor.starts_with("c2") {
            let var = if factor.starts_with("c1") { Var::C1 } else { Var::C2 };
            let (coef_part, pow) = parse_term_shape(factor, var.name())?;
            if coef_part.is_some() {
                return Err(Error::Parse(format!("bad factor {factor:?} in {term:?}")));
            }
            match var {
                Var::C1 => e1 += pow.unwrap_or(1),
                Var::C2 => e2 += pow.unwrap_or(1),
            }
        } else {
            coef *= parse_rat(factor)?;
        }
    }
    if negate {
        coef = -coef;
    }
    Ok(LaurentPoly::monomial_rat(coef, e1, e2))
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let mut parts = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let mut factors: Vec<String> = Vec::new();
            if !c.is_one() || (e.0 == 0 && e.1 == 0) {
                factors.push(c.to_string());
            }
            if e.0 != 0 {
                factors.push(if e.0 == 1 { "c1".into() } else { format!("c1^{}", e.0) });
            }
            if e.1 != 0 {
                factors.push(if e.1 == 1 { "c2".into() } else { format!("c2^{}", e.1) });
            }
            parts.push(factors.join("*"));
        }
        write!(out, "{}", parts.join("+"))
    }
}

impl Ring for LaurentPoly {
    fn same_ring(&self, _other: &Self) -> bool {
        true
    }
    fn zero_like(&self) -> Self {
        LaurentPoly::zero()
    }
    fn one_like(&self) -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn ring_add(&self, other: &Self) -> Result<Self> {
        Ok(self.add(other))
    }
    fn ring_sub(&self, other: &Self) -> Result<Self> {
        Ok(self.sub(other))
    }
    fn ring_mul(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(other))
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
    fn ring_exact_div(&self, other: &Self) -> Result<Self> {
        self.try_exact_div_laurent(other)?.ok_or(Error::NotDivisible)
    }
}
