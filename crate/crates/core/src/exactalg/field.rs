//! Exact fields: the rationals, prime fields GF(p), and extensions of either
//! by a monic irreducible polynomial of degree at most 4.
//!
//! Every value is exact; there is no floating point anywhere. A [`Field`] is a
//! cheap-to-clone context handle; a [`Scalar`] is an element tied to its field.
//! Arithmetic between scalars of different fields is an error, never a coercion.

use std::fmt;
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number used for characteristic-zero coefficients.
pub type Rat = BigRational;

pub(crate) fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// An element of the prime field: a rational in characteristic 0, a reduced
/// residue in characteristic p.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub enum Coef {
    Rat(Rat),
    Mod(u64),
}

/// Description of a field: characteristic plus an optional monic minimal
/// polynomial adjoining one root.
///
/// The extension polynomial is given by its coefficient list in ascending
/// order, `[a0, a1, ..., 1]`, over the prime field. `x^2+x+1` adjoins a
/// primitive cube root of unity `z`; `x^2-x+1` adjoins `-z`.
///
/// The label is documentation only; equality compares characteristic and
/// extension.
#[derive(Clone, Eq, Debug)]
pub struct FieldSpec {
    pub characteristic: u64,
    pub extension: Option<Vec<Rat>>,
    pub label: String,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.characteristic == other.characteristic && self.extension == other.extension
    }
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0, extension: None, label: "Q".into() }
    }

    pub fn prime(p: u64) -> Self {
        FieldSpec { characteristic: p, extension: None, label: format!("GF({p})") }
    }

    /// The prime field extended by `x^2+x+1`, i.e. with a primitive cube root
    /// of unity adjoined.
    pub fn with_zeta(characteristic: u64) -> Self {
        let base = if characteristic == 0 { "Q".to_string() } else { format!("GF({characteristic})") };
        FieldSpec {
            characteristic,
            extension: Some(vec![rat_int(1), rat_int(1), rat_int(1)]),
            label: format!("{base}(zeta)"),
        }
    }

    pub fn with_extension(characteristic: u64, coeffs: Vec<Rat>, label: impl Into<String>) -> Self {
        FieldSpec { characteristic, extension: Some(coeffs), label: label.into() }
    }
}

struct FieldInner {
    spec: FieldSpec,
    /// Extension degree; 1 when there is no extension.
    degree: usize,
    /// Reduced extension coefficients (length `degree`, the monic leading 1
    /// dropped), or empty when there is no extension.
    ext: Vec<Coef>,
}

/// A field context: validates its [`FieldSpec`] on construction and provides
/// all arithmetic on [`Scalar`] values.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.0.spec.label)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= n) {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn mod_reduce(r: &Rat, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let den = r.denom().mod_floor_u64(p);
    if den == 0 {
        return Err(Error::NonInvertibleDenominator(r.denom().to_string(), p));
    }
    let num = ((r.numer() % &pb) + &pb) % &pb;
    let num: u64 = num.try_into().expect("reduced residue fits u64");
    Ok(mod_mul(num, mod_inv(den, p)?, p))
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: u64) -> u64;
}
impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        let pb = BigInt::from(p);
        let r = ((self % &pb) + &pb) % &pb;
        r.try_into().expect("residue fits u64")
    }
}

fn mod_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, p);
        }
        base = mod_mul(base, base, p);
        exp >>= 1;
    }
    acc
}

fn mod_inv(a: u64, p: u64) -> Result<u64> {
    if a % p == 0 {
        return Err(Error::DivisionByZero);
    }
    // Fermat: p is prime.
    Ok(mod_pow(a, p - 2, p))
}

impl Field {
    /// Builds the field context for `spec`, checking that the characteristic
    /// is 0 or prime and that any extension polynomial is monic of degree 2-4
    /// and irreducible over the prime field.
    pub fn new(spec: FieldSpec) -> Result<Field> {
        if spec.characteristic != 0 && !is_prime(spec.characteristic) {
            return Err(Error::NonPrimeCharacteristic(spec.characteristic));
        }
        let p = spec.characteristic;
        let (degree, ext, canonical_ext) = match &spec.extension {
            None => (1, Vec::new(), None),
            Some(coeffs) => {
                let deg = coeffs.len().saturating_sub(1);
                if !(2..=4).contains(&deg) {
                    return Err(Error::BadExtension(format!(
                        "degree {deg} not in 2..=4"
                    )));
                }
                let monic = if p == 0 {
                    coeffs[deg].is_one()
                } else {
                    mod_reduce(&coeffs[deg], p)? == 1
                };
                if !monic {
                    return Err(Error::BadExtension("polynomial is not monic".into()));
                }
                let reduced: Vec<Coef> = if p == 0 {
                    coeffs[..deg].iter().map(|c| Coef::Rat(c.clone())).collect()
                } else {
                    coeffs[..deg]
                        .iter()
                        .map(|c| mod_reduce(c, p).map(Coef::Mod))
                        .collect::<Result<_>>()?
                };
                check_irreducible(p, &reduced)?;
                let canonical: Vec<Rat> = match p {
                    0 => coeffs.clone(),
                    _ => reduced
                        .iter()
                        .map(|c| match c {
                            Coef::Mod(v) => rat_int(*v as i64),
                            Coef::Rat(_) => unreachable!(),
                        })
                        .chain(std::iter::once(Rat::one()))
                        .collect(),
                };
                (deg, reduced, Some(canonical))
            }
        };
        let spec = FieldSpec { extension: canonical_ext.or(spec.extension.clone()), ..spec };
        Ok(Field(Arc::new(FieldInner { spec, degree, ext })))
    }

    pub fn rationals() -> Field {
        Field::new(FieldSpec::rationals()).expect("Q is a valid field")
    }

    pub fn prime(p: u64) -> Result<Field> {
        Field::new(FieldSpec::prime(p))
    }

    pub fn with_zeta(characteristic: u64) -> Result<Field> {
        Field::new(FieldSpec::with_zeta(characteristic))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn characteristic(&self) -> u64 {
        self.0.spec.characteristic
    }

    pub fn extension_degree(&self) -> usize {
        self.0.degree
    }

    pub fn label(&self) -> &str {
        &self.0.spec.label
    }

    fn c_zero(&self) -> Coef {
        match self.characteristic() {
            0 => Coef::Rat(Rat::zero()),
            _ => Coef::Mod(0),
        }
    }

    fn c_one(&self) -> Coef {
        match self.characteristic() {
            0 => Coef::Rat(Rat::one()),
            _ => Coef::Mod(1 % self.characteristic()),
        }
    }

    fn c_add(&self, a: &Coef, b: &Coef) -> Coef {
        match (a, b) {
            (Coef::Rat(x), Coef::Rat(y)) => Coef::Rat(x + y),
            (Coef::Mod(x), Coef::Mod(y)) => Coef::Mod((x + y) % self.characteristic()),
            _ => unreachable!("mixed coefficient kinds inside one field"),
        }
    }

    fn c_sub(&self, a: &Coef, b: &Coef) -> Coef {
        match (a, b) {
            (Coef::Rat(x), Coef::Rat(y)) => Coef::Rat(x - y),
            (Coef::Mod(x), Coef::Mod(y)) => {
                let p = self.characteristic();
                Coef::Mod((x + p - y) % p)
            }
            _ => unreachable!("mixed coefficient kinds inside one field"),
        }
    }

    fn c_mul(&self, a: &Coef, b: &Coef) -> Coef {
        match (a, b) {
            (Coef::Rat(x), Coef::Rat(y)) => Coef::Rat(x * y),
            (Coef::Mod(x), Coef::Mod(y)) => Coef::Mod(mod_mul(*x, *y, self.characteristic())),
            _ => unreachable!("mixed coefficient kinds inside one field"),
        }
    }

    fn c_neg(&self, a: &Coef) -> Coef {
        match a {
            Coef::Rat(x) => Coef::Rat(-x),
            Coef::Mod(x) => {
                let p = self.characteristic();
                Coef::Mod((p - x % p) % p)
            }
        }
    }

    fn c_inv(&self, a: &Coef) -> Result<Coef> {
        match a {
            Coef::Rat(x) => {
                if x.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Coef::Rat(x.recip()))
                }
            }
            Coef::Mod(x) => Ok(Coef::Mod(mod_inv(*x, self.characteristic())?)),
        }
    }

    fn c_is_zero(&self, a: &Coef) -> bool {
        match a {
            Coef::Rat(x) => x.is_zero(),
            Coef::Mod(x) => *x == 0,
        }
    }

    fn c_from_rat(&self, r: &Rat) -> Result<Coef> {
        match self.characteristic() {
            0 => Ok(Coef::Rat(r.clone())),
            p => Ok(Coef::Mod(mod_reduce(r, p)?)),
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar { coords: vec![self.c_zero(); self.0.degree], field: self.clone() }
    }

    pub fn one(&self) -> Scalar {
        let mut s = self.zero();
        s.coords[0] = self.c_one();
        s
    }

    pub fn neg_one(&self) -> Scalar {
        self.one().neg()
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_rat(&rat_int(n)).expect("integers embed in every field")
    }

    /// Embeds a rational; errors when the denominator is not invertible mod p.
    pub fn from_rat(&self, r: &Rat) -> Result<Scalar> {
        let mut s = self.zero();
        s.coords[0] = self.c_from_rat(r)?;
        Ok(s)
    }

    /// The adjoined extension root `z`, when an extension is present.
    pub fn generator(&self) -> Option<Scalar> {
        if self.0.degree < 2 {
            return None;
        }
        let mut s = self.zero();
        s.coords[1] = self.c_one();
        Some(s)
    }

    /// A primitive cube root of unity in this field, when one is known.
    ///
    /// Cases handled: the extension `x^2+x+1` (the generator itself), the
    /// extension `x^2-x+1` (the negated generator), and prime fields or their
    /// extensions with p = 1 mod 3 (found in the prime subfield, smallest
    /// residue of the two roots).
    pub fn zeta(&self) -> Option<Scalar> {
        if let Some(ext) = &self.0.spec.extension {
            let cyc3 = self.is_ext_poly(ext, &[1, 1, 1]);
            let cyc6 = self.is_ext_poly(ext, &[1, -1, 1]);
            if cyc3 {
                return self.generator();
            }
            if cyc6 {
                return Some(self.generator().expect("extension present").neg());
            }
        }
        let p = self.characteristic();
        if p == 0 || p % 3 != 1 {
            return None;
        }
        let root = smallest_cube_root(p);
        let mut s = self.zero();
        s.coords[0] = Coef::Mod(root);
        Some(s)
    }

    fn is_ext_poly(&self, ext: &[Rat], pattern: &[i64]) -> bool {
        if ext.len() != pattern.len() {
            return false;
        }
        let p = self.characteristic();
        ext.iter().zip(pattern).all(|(c, want)| {
            if p == 0 {
                c == &rat_int(*want)
            } else {
                mod_reduce(c, p).ok() == mod_reduce(&rat_int(*want), p).ok()
            }
        })
    }

    fn check_same(&self, other: &Field) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.label().to_string(), other.label().to_string()))
        }
    }

    fn reduce_coords(&self, mut coords: Vec<Coef>) -> Vec<Coef> {
        let d = self.0.degree;
        // Fold powers >= d down using x^d = -(ext polynomial tail).
        while coords.len() > d {
            let top = coords.pop().expect("len > d >= 1");
            if self.c_is_zero(&top) {
                continue;
            }
            let k = coords.len() - d;
            for (i, e) in self.0.ext.iter().enumerate() {
                let t = self.c_mul(&top, e);
                let t = self.c_neg(&t);
                coords[k + i] = self.c_add(&coords[k + i], &t);
            }
        }
        coords.resize(d, self.c_zero());
        coords
    }
}

/// Finds the smallest primitive cube root of unity in GF(p), p = 1 mod 3.
fn smallest_cube_root(p: u64) -> u64 {
    if p < 1 << 20 {
        for x in 2..p {
            if (mod_mul(x, x, p) + x + 1) % p == 0 {
                return x;
            }
        }
        unreachable!("p = 1 mod 3 guarantees a root");
    }
    // Large p: a^((p-1)/3) is a cube root; take the smaller primitive one.
    let e = (p - 1) / 3;
    for a in 2..p {
        let x = mod_pow(a, e, p);
        if x != 1 {
            let y = mod_mul(x, x, p);
            return x.min(y);
        }
    }
    unreachable!("some power is a primitive cube root")
}

/// Irreducibility of the reduced extension polynomial over the prime field.
fn check_irreducible(p: u64, tail: &[Coef]) -> Result<()> {
    let deg = tail.len();
    if p == 0 {
        let coeffs: Vec<Rat> = tail
            .iter()
            .map(|c| match c {
                Coef::Rat(r) => r.clone(),
                Coef::Mod(_) => unreachable!(),
            })
            .collect();
        if has_rational_root(&coeffs) {
            return Err(Error::ReducibleExtension("rational root found".into()));
        }
        if deg == 4 && quartic_splits_over_q(&coeffs) {
            return Err(Error::ReducibleExtension(
                "factors into two rational quadratics".into(),
            ));
        }
        Ok(())
    } else {
        let tail: Vec<u64> = tail
            .iter()
            .map(|c| match c {
                Coef::Mod(v) => *v,
                Coef::Rat(_) => unreachable!(),
            })
            .collect();
        if gfp_poly_irreducible(p, &tail) {
            Ok(())
        } else {
            Err(Error::ReducibleExtension(format!("reducible over GF({p})")))
        }
    }
}

/// Rational-root test for a monic polynomial `x^n + tail`, tail ascending.
fn has_rational_root(tail: &[Rat]) -> bool {
    // Clear denominators: primitive integer polynomial b_n x^n + ... + b_0.
    let deg = tail.len();
    let mut denlcm = BigInt::one();
    for c in tail {
        denlcm = num::integer::lcm(denlcm, c.denom().clone());
    }
    let mut ints: Vec<BigInt> = tail
        .iter()
        .map(|c| (c * Rat::from_integer(denlcm.clone())).to_integer())
        .collect();
    ints.push(denlcm.clone());
    let lead = ints[deg].clone();
    let cons = ints[0].clone();
    if cons.is_zero() {
        return true; // root 0
    }
    let eval = |r: &Rat| -> bool {
        let mut acc = Rat::zero();
        for c in ints.iter().rev() {
            acc = acc * r + Rat::from_integer(c.clone());
        }
        acc.is_zero()
    };
    for pn in divisors(&cons.abs()) {
        for qn in divisors(&lead.abs()) {
            let base = Rat::new(pn.clone(), qn.clone());
            if eval(&base) || eval(&(-base.clone())) {
                return true;
            }
        }
    }
    false
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let q = n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += 1;
    }
    out
}

fn is_square_rat(r: &Rat) -> bool {
    if r.is_negative() {
        return false;
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom()
}

/// Whether a monic rational quartic with no rational root factors into two
/// rational quadratics, via the resolvent cubic of its depressed form.
fn quartic_splits_over_q(tail: &[Rat]) -> bool {
    let (e, c, b, a) = (&tail[0], &tail[1], &tail[2], &tail[3]);
    // Depress: x -> x - a/4 gives x^4 + p x^2 + q x + r.
    let a2 = a * a;
    let p = b - &(&a2 * rat_int(3) / rat_int(8));
    let q = c - &(a * b / rat_int(2)) + &a2 * a / rat_int(8);
    let r = e - &(a * c / rat_int(4)) + &a2 * b / rat_int(16)
        - &a2 * &a2 * rat_int(3) / rat_int(256);
    // Resolvent cubic in z = s^2: z^3 + 2p z^2 + (p^2-4r) z - q^2.
    let res_tail = vec![-(&q * &q), &p * &p - rat_int(4) * &r, rat_int(2) * &p];
    let mut roots: Vec<Rat> = Vec::new();
    // Gather rational roots of the monic resolvent by the same root test,
    // then examine each.
    let deg = 3usize;
    let mut denlcm = BigInt::one();
    for cc in &res_tail {
        denlcm = num::integer::lcm(denlcm, cc.denom().clone());
    }
    let mut ints: Vec<BigInt> = res_tail
        .iter()
        .map(|cc| (cc * Rat::from_integer(denlcm.clone())).to_integer())
        .collect();
    ints.push(denlcm.clone());
    let eval = |x: &Rat| -> Rat {
        let mut acc = Rat::zero();
        for cc in ints.iter().rev() {
            acc = acc * x + Rat::from_integer(cc.clone());
        }
        acc
    };
    let cons = ints[0].clone();
    if cons.is_zero() {
        roots.push(Rat::zero());
    } else {
        for pn in divisors(&cons.abs()) {
            for qn in divisors(&ints[deg].abs()) {
                let cand = Rat::new(pn.clone(), qn.clone());
                if eval(&cand).is_zero() {
                    roots.push(cand.clone());
                }
                let neg = -cand;
                if eval(&neg).is_zero() {
                    roots.push(neg);
                }
            }
        }
    }
    for z in roots {
        if z.is_zero() {
            // q must vanish and p^2 - 4r must be a rational square.
            if q.is_zero() && is_square_rat(&(&p * &p - rat_int(4) * &r)) {
                return true;
            }
        } else if is_square_rat(&z) {
            return true;
        }
    }
    false
}

/// Irreducibility over GF(p) for monic degree 2-4: no roots in GF(p^k) for
/// k <= deg/2, tested with gcd(x^(p^k) - x, f).
fn gfp_poly_irreducible(p: u64, tail: &[u64]) -> bool {
    let deg = tail.len();
    let half = deg / 2;
    for k in 1..=half {
        // x^(p^k) mod f by repeated squaring, exponent p^k as repeated modpow.
        let mut xp = gfp_x_pow_p(p, tail);
        for _ in 1..k {
            xp = gfp_poly_pow_p(p, tail, &xp);
        }
        // gcd(f, xp - x) != constant => reducible.
        let mut diff = xp;
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        let mut f_full: Vec<u64> = tail.to_vec();
        f_full.push(1);
        if gfp_poly_gcd_degree(p, &f_full, &diff) > 0 {
            return false;
        }
    }
    true
}

fn gfp_poly_mulmod(p: u64, tail: &[u64], a: &[u64], b: &[u64]) -> Vec<u64> {
    let deg = tail.len();
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + mod_mul(x, y, p)) % p;
        }
    }
    // Reduce modulo x^deg = -tail.
    while prod.len() > deg {
        let top = prod.pop().expect("len > deg");
        if top == 0 {
            continue;
        }
        let k = prod.len() - deg;
        for (i, &t) in tail.iter().enumerate() {
            let sub = mod_mul(top, t, p);
            prod[k + i] = (prod[k + i] + p - sub) % p;
        }
    }
    prod.resize(deg, 0);
    prod
}

/// x^p mod f over GF(p).
fn gfp_x_pow_p(p: u64, tail: &[u64]) -> Vec<u64> {
    let deg = tail.len();
    let mut x = vec![0u64; deg];
    if deg > 1 {
        x[1] = 1;
    }
    gfp_poly_pow(p, tail, &x, p)
}

/// g(x)^p mod f over GF(p).
fn gfp_poly_pow_p(p: u64, tail: &[u64], g: &[u64]) -> Vec<u64> {
    gfp_poly_pow(p, tail, g, p)
}

fn gfp_poly_pow(p: u64, tail: &[u64], g: &[u64], mut e: u64) -> Vec<u64> {
    let deg = tail.len();
    let mut acc = vec![0u64; deg];
    acc[0] = 1;
    let mut base = g.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = gfp_poly_mulmod(p, tail, &acc, &base);
        }
        base = gfp_poly_mulmod(p, tail, &base, &base);
        e >>= 1;
    }
    acc
}

fn gfp_poly_gcd_degree(p: u64, a: &[u64], b: &[u64]) -> usize {
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b
        let lead = *b.last().expect("nonempty");
        let inv = mod_inv(lead, p).expect("nonzero leading coefficient");
        while a.len() >= b.len() && !a.is_empty() {
            let shift = a.len() - b.len();
            let factor = mod_mul(*a.last().expect("nonempty"), inv, p);
            for (i, &bc) in b.iter().enumerate() {
                let sub = mod_mul(factor, bc, p);
                a[shift + i] = (a[shift + i] + p - sub) % p;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// An exact field element: coordinates over the prime field in the power
/// basis of the extension root (length 1 when there is no extension).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scalar {
    coords: Vec<Coef>,
    field: Field,
}

impl Scalar {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| self.field.c_is_zero(c))
    }

    pub fn is_one(&self) -> bool {
        self == &self.field.one()
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.field.check_same(&other.field)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| self.field.c_add(a, b))
            .collect();
        Ok(Scalar { coords, field: self.field.clone() })
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.field.check_same(&other.field)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| self.field.c_sub(a, b))
            .collect();
        Ok(Scalar { coords, field: self.field.clone() })
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.field.check_same(&other.field)?;
        let f = &self.field;
        let mut prod = vec![f.c_zero(); self.coords.len() + other.coords.len()];
        for (i, a) in self.coords.iter().enumerate() {
            if f.c_is_zero(a) {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                let t = f.c_mul(a, b);
                prod[i + j] = f.c_add(&prod[i + j], &t);
            }
        }
        Ok(Scalar { coords: f.reduce_coords(prod), field: f.clone() })
    }

    pub fn neg(&self) -> Scalar {
        let coords = self.coords.iter().map(|c| self.field.c_neg(c)).collect();
        Scalar { coords, field: self.field.clone() }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        if f.0.degree == 1 {
            let c = f.c_inv(&self.coords[0])?;
            return Ok(Scalar { coords: vec![c], field: f.clone() });
        }
        // Extended Euclid on (self as poly, minimal polynomial).
        let d = f.0.degree;
        let mut r0: Vec<Coef> = f.0.ext.clone();
        r0.push(f.c_one()); // the monic minimal polynomial
        let mut r1 = self.coords.clone();
        trim_coefs(f, &mut r1);
        let mut s0 = vec![f.c_zero()];
        let mut s1 = vec![f.c_one()];
        while !(r1.len() == 1 || r1.is_empty()) {
            let (q, r) = poly_divmod(f, &r0, &r1)?;
            let qs1 = poly_mul(f, &q, &s1);
            let s2 = poly_sub(f, &s0, &qs1);
            r0 = r1;
            r1 = r;
            trim_coefs(f, &mut r1);
            s0 = s1;
            s1 = s2;
            if r1.is_empty() {
                return Err(Error::DivisionByZero);
            }
        }
        let lead = f.c_inv(&r1[0])?;
        let mut coords: Vec<Coef> = s1.iter().map(|c| f.c_mul(c, &lead)).collect();
        coords.resize(d, f.c_zero());
        Ok(Scalar { coords: f.reduce_coords(coords), field: f.clone() })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = self.field.one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b)?;
            }
            b = b.mul(&b.clone())?;
            k >>= 1;
        }
        Ok(acc)
    }
}

fn trim_coefs(f: &Field, v: &mut Vec<Coef>) {
    while v.last().map_or(false, |c| f.c_is_zero(c)) {
        v.pop();
    }
}

fn poly_mul(f: &Field, a: &[Coef], b: &[Coef]) -> Vec<Coef> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.c_zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let t = f.c_mul(x, y);
            out[i + j] = f.c_add(&out[i + j], &t);
        }
    }
    out
}

fn poly_sub(f: &Field, a: &[Coef], b: &[Coef]) -> Vec<Coef> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(|| f.c_zero());
        let y = b.get(i).cloned().unwrap_or_else(|| f.c_zero());
        out.push(f.c_sub(&x, &y));
    }
    out
}

fn poly_divmod(f: &Field, a: &[Coef], b: &[Coef]) -> Result<(Vec<Coef>, Vec<Coef>)> {
    let mut rem = a.to_vec();
    trim_coefs(f, &mut rem);
    let mut bb = b.to_vec();
    trim_coefs(f, &mut bb);
    if bb.is_empty() {
        return Err(Error::DivisionByZero);
    }
    let lead_inv = f.c_inv(bb.last().expect("nonempty"))?;
    let mut q = vec![f.c_zero(); rem.len().saturating_sub(bb.len()) + 1];
    while rem.len() >= bb.len() && !rem.is_empty() {
        let shift = rem.len() - bb.len();
        let factor = f.c_mul(rem.last().expect("nonempty"), &lead_inv);
        q[shift] = f.c_add(&q[shift], &factor);
        for (i, bc) in bb.iter().enumerate() {
            let t = f.c_mul(&factor, bc);
            rem[shift + i] = f.c_sub(&rem[shift + i], &t);
        }
        trim_coefs(f, &mut rem);
    }
    Ok((q, rem))
}

// ---------------------------------------------------------------------------
// Text form. Grammar:
//   rational ::= '-'? digits ('/' digits)?
//   term     ::= rational | rational '*' 'z' ('^' int)? | 'z' ('^' int)?
//   scalar   ::= term ('+' term)*
// A '-' directly after a digit or 'z' is also accepted as a separator.
// ---------------------------------------------------------------------------

impl fmt::Display for Scalar {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.coords.iter().enumerate() {
            if self.field.c_is_zero(c) {
                continue;
            }
            let coef = match c {
                Coef::Rat(r) => r.to_string(),
                Coef::Mod(v) => v.to_string(),
            };
            let part = match i {
                0 => coef,
                1 if coef == "1" => "z".to_string(),
                1 => format!("{coef}*z"),
                _ if coef == "1" => format!("z^{i}"),
                _ => format!("{coef}*z^{i}"),
            };
            parts.push(part);
        }
        if parts.is_empty() {
            write!(out, "0")
        } else {
            write!(out, "{}", parts.join("+"))
        }
    }
}

/// Splits a term string on '+', also treating '-' as a separator unless it
/// starts the string or follows one of `^ / * +`.
pub(crate) fn split_terms(s: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut cur = String::new();
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        if ch == '+' {
            parts.push(std::mem::take(&mut cur));
        } else if ch == '-' && prev.map_or(false, |p| !matches!(p, '^' | '/' | '*' | '+' | '-')) {
            parts.push(std::mem::take(&mut cur));
            cur.push('-');
        } else {
            cur.push(ch);
        }
        prev = Some(ch);
    }
    parts.push(cur);
    parts
}

pub(crate) fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::Parse(format!("bad rational: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(n, d))
}

impl Field {
    /// Parses a scalar in the text grammar, e.g. `-1`, `3/2`, `z^2`, `1+2*z`.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let mut acc = self.zero();
        for term in split_terms(text) {
            let term = term.trim();
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in {text:?}")));
            }
            let (coef_str, z_pow) = parse_term_shape(term, "z")?;
            let coef = match coef_str {
                Some(cs) => parse_rat(&cs)?,
                None => Rat::one(),
            };
            let pow = z_pow.unwrap_or(0);
            if pow < 0 {
                return Err(Error::Parse(format!("negative power of z in {term:?}")));
            }
            let pow = pow as usize;
            if pow > 0 && self.0.degree < 2 {
                return Err(Error::Parse(format!(
                    "term {term:?} uses z but field {} has no extension",
                    self.label()
                )));
            }
            let mut coords = vec![self.c_zero(); self.0.degree.max(pow + 1)];
            coords[pow] = self.c_from_rat(&coef)?;
            let t = Scalar { coords: self.reduce_coords(coords), field: self.clone() };
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }
}

/// Parses one term into (coefficient text, variable power). The variable is
/// named by `var`; absent coefficient means 1, absent power means 1.
pub(crate) fn parse_term_shape(term: &str, var: &str) -> Result<(Option<String>, Option<i64>)> {
    let bad = || Error::Parse(format!("bad term: {term:?}"));
    if let Some(idx) = term.find(var) {
        let coef_part = &term[..idx];
        let rest = &term[idx + var.len()..];
        let coef = if coef_part.is_empty() {
            None
        } else if let Some(stripped) = coef_part.strip_suffix('*') {
            if stripped.is_empty() {
                return Err(bad());
            }
            Some(stripped.to_string())
        } else if coef_part == "-" {
            Some("-1".to_string())
        } else {
            return Err(bad());
        };
        let pow = if rest.is_empty() {
            Some(1)
        } else if let Some(ps) = rest.strip_prefix('^') {
            Some(ps.parse::<i64>().map_err(|_| bad())?)
        } else {
            return Err(bad());
        };
        Ok((coef, pow))
    } else {
        Ok((Some(term.to_string()), None))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf7_has_cube_root_two() {
        // 2^3 = 8 = 1 mod 7, checked by hand.
        let f = Field::prime(7).unwrap();
        let zeta = f.zeta().expect("7 = 1 mod 3");
        assert_eq!(zeta, f.from_i64(2));
        assert!(zeta.pow(3).unwrap().is_one());
    }

    #[test]
    fn q_zeta_satisfies_defining_relation() {
        let f = Field::with_zeta(0).unwrap();
        let z = f.zeta().unwrap();
        let lhs = z.mul(&z).unwrap().add(&z).unwrap().add(&f.one()).unwrap();
        assert!(lhs.is_zero());
    }

    #[test]
    fn characteristic_four_rejected() {
        assert_eq!(
            Field::prime(4).unwrap_err(),
            Error::NonPrimeCharacteristic(4)
        );
    }

    #[test]
    fn reducible_extension_rejected() {
        // x^2 - 1 = (x-1)(x+1) over Q.
        let spec = FieldSpec::with_extension(0, vec![rat_int(-1), rat_int(0), rat_int(1)], "bad");
        assert!(matches!(Field::new(spec), Err(Error::ReducibleExtension(_))));
        // x^2 + 1 is irreducible over GF(7) (7 = 3 mod 4) but reducible over GF(5).
        let spec7 = FieldSpec::with_extension(7, vec![rat_int(1), rat_int(0), rat_int(1)], "i7");
        assert!(Field::new(spec7).is_ok());
        let spec5 = FieldSpec::with_extension(5, vec![rat_int(1), rat_int(0), rat_int(1)], "i5");
        assert!(matches!(Field::new(spec5), Err(Error::ReducibleExtension(_))));
    }

    #[test]
    fn gf2_zeta_field_works() {
        let f = Field::with_zeta(2).unwrap();
        let z = f.zeta().unwrap();
        assert!(!z.is_one());
        assert!(z.pow(3).unwrap().is_one());
        let zsq = z.mul(&z).unwrap();
        assert_eq!(z.inv().unwrap(), zsq);
    }

    #[test]
    fn minus_zeta_extension() {
        // x^2 - x + 1 adjoins -zeta; zeta() recovers a primitive cube root.
        let spec = FieldSpec::with_extension(
            0,
            vec![rat_int(1), rat_int(-1), rat_int(1)],
            "Q(-zeta)",
        );
        let f = Field::new(spec).unwrap();
        let z = f.zeta().unwrap();
        assert!(z.pow(3).unwrap().is_one());
        assert!(!z.is_one());
    }

    #[test]
    fn extension_inverse_roundtrip() {
        let f = Field::with_zeta(0).unwrap();
        let z = f.zeta().unwrap();
        let a = z.mul(&f.from_i64(3)).unwrap().add(&f.from_i64(2)).unwrap();
        let b = a.inv().unwrap();
        assert!(a.mul(&b).unwrap().is_one());
    }

    #[test]
    fn scalar_text_roundtrip() {
        let f = Field::with_zeta(0).unwrap();
        for text in ["0", "-1", "3/2", "z^2", "1+2*z", "-1/3+-2*z"] {
            let s = f.parse_scalar(text).unwrap();
            let back = f.parse_scalar(&s.to_string()).unwrap();
            assert_eq!(s, back, "roundtrip failed for {text}");
        }
        // '-' separators are tolerated on input.
        let a = f.parse_scalar("1-2*z").unwrap();
        let b = f.parse_scalar("1+-2*z").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn mixed_field_arithmetic_is_an_error() {
        let q = Field::rationals();
        let g = Field::prime(7).unwrap();
        let e = q.one().add(&g.one());
        assert!(matches!(e, Err(Error::FieldMismatch(_, _))));
    }

    #[test]
    fn rational_denominator_mod_p() {
        let f = Field::prime(7).unwrap();
        let half = f.parse_scalar("1/2").unwrap();
        assert_eq!(half, f.from_i64(4)); // 2*4 = 8 = 1 mod 7
        let bad = Field::prime(2).unwrap().parse_scalar("1/2");
        assert!(bad.is_err());
    }
}
