//! Exact simultaneous diagonalization of commuting matrices whose
//! eigenvalues lie in the ground field.
//!
//! Used to normalize a representation whose commutator images are
//! diagonalizable but not diagonal before classification. Root finding is
//! exact and field-specific: the rational root theorem over Q, exhaustive
//! search over small finite fields. Number-field extensions are not
//! supported (factorization over number fields is out of scope); callers
//! treat that as "cannot normalize".

use crate::error::{Error, Result};
use crate::exactalg::mat::Ring;
use crate::exactalg::{Field, Mat, Scalar};
use num::bigint::BigInt;
use num::{One, Signed, Zero};

/// Dense polynomial over a scalar field, ascending coefficients. Only the
/// ring operations needed by cofactor determinants are supported.
#[derive(Clone, PartialEq, Debug)]
struct FieldPoly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl FieldPoly {
    fn constant(s: Scalar) -> Self {
        let field = s.field().clone();
        FieldPoly { field, coeffs: vec![s] }
    }

    fn trim(mut self) -> Self {
        while self.coeffs.len() > 1 && self.coeffs.last().map_or(false, Scalar::is_zero) {
            self.coeffs.pop();
        }
        self
    }
}

impl Ring for FieldPoly {
    fn same_ring(&self, other: &Self) -> bool {
        self.field == other.field
    }
    fn zero_like(&self) -> Self {
        FieldPoly::constant(self.field.zero())
    }
    fn one_like(&self) -> Self {
        FieldPoly::constant(self.field.one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }
    fn ring_add(&self, other: &Self) -> Result<Self> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero());
            let b = other.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero());
            coeffs.push(a.add(&b)?);
        }
        Ok(FieldPoly { field: self.field.clone(), coeffs }.trim())
    }
    fn ring_sub(&self, other: &Self) -> Result<Self> {
        self.ring_add(&other.ring_neg())
    }
    fn ring_mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(self.zero_like());
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b)?)?;
            }
        }
        Ok(FieldPoly { field: self.field.clone(), coeffs }.trim())
    }
    fn ring_neg(&self) -> Self {
        FieldPoly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(Scalar::neg).collect(),
        }
    }
    fn ring_exact_div(&self, _other: &Self) -> Result<Self> {
        Err(Error::Invalid("exact division of field polynomials is not supported".into()))
    }
}

/// Monic characteristic polynomial det(xI - M), ascending coefficients.
pub fn char_poly(m: &Mat<Scalar>) -> Result<Vec<Scalar>> {
    let n = m.rows();
    let field = m.sample().field().clone();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let neg = m.at(i, j).neg();
            let coeffs = if i == j { vec![neg, field.one()] } else { vec![neg] };
            entries.push(FieldPoly { field: field.clone(), coeffs }.trim());
        }
    }
    let p = Mat::new(n, n, entries)?.det_cofactor()?;
    let mut coeffs = p.coeffs;
    coeffs.resize(n + 1, field.zero());
    Ok(coeffs)
}

fn eval_poly(coeffs: &[Scalar], t: &Scalar) -> Result<Scalar> {
    let field = t.field();
    let mut acc = field.zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(t)?.add(c)?;
    }
    Ok(acc)
}

/// Every element of a small field (at most `cap` elements), or None when the
/// field is infinite or too large to enumerate.
fn small_field_elements(field: &Field, cap: u64) -> Option<Vec<Scalar>> {
    let p = field.characteristic();
    if p == 0 {
        return None;
    }
    let d = field.extension_degree() as u32;
    let size = p.checked_pow(d)?;
    if size > cap {
        return None;
    }
    let mut out = Vec::with_capacity(size as usize);
    let mut idx = vec![0u64; d as usize];
    loop {
        let mut s = field.zero();
        let mut basis = field.one();
        let gen = field.generator();
        for (k, &i) in idx.iter().enumerate() {
            let coef = field.from_i64(i as i64);
            s = s.add(&coef.mul(&basis).expect("same field")).expect("same field");
            if k + 1 < d as usize {
                basis = basis
                    .mul(gen.as_ref().expect("degree > 1 has a generator"))
                    .expect("same field");
            }
        }
        out.push(s);
        // odometer increment
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Some(out);
            }
            idx[k] += 1;
            if idx[k] < p {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Distinct roots of `coeffs` that lie in the field itself.
///
/// Errors with `Invalid` when exact root recovery is not implemented for the
/// field (characteristic-zero extensions, giant prime fields).
pub fn roots_in_field(field: &Field, coeffs: &[Scalar]) -> Result<Vec<Scalar>> {
    if let Some(elems) = small_field_elements(field, 4096) {
        let mut roots = Vec::new();
        for t in elems {
            if eval_poly(coeffs, &t)?.is_zero() {
                roots.push(t);
            }
        }
        return Ok(roots);
    }
    let p = field.characteristic();
    if p != 0 && field.extension_degree() == 1 && p <= (1 << 21) {
        let mut roots = Vec::new();
        for v in 0..p {
            let t = field.from_i64(v as i64);
            if eval_poly(coeffs, &t)?.is_zero() {
                roots.push(t);
            }
        }
        return Ok(roots);
    }
    if p == 0 && field.extension_degree() == 1 {
        return rational_roots(field, coeffs);
    }
    Err(Error::Invalid(format!(
        "exact eigenvalue recovery is not available over {}",
        field.label()
    )))
}

/// Rational root theorem over Q.
fn rational_roots(field: &Field, coeffs: &[Scalar]) -> Result<Vec<Scalar>> {
    use crate::exactalg::Rat;
    // Scalars over Q print as rationals; reparse to get at numerators.
    let rats: Vec<Rat> = coeffs
        .iter()
        .map(|s| crate::exactalg::field::parse_rat(&s.to_string()))
        .collect::<Result<_>>()?;
    let mut denlcm = BigInt::one();
    for r in &rats {
        denlcm = num::integer::lcm(denlcm, r.denom().clone());
    }
    let ints: Vec<BigInt> = rats
        .iter()
        .map(|r| (r * Rat::from_integer(denlcm.clone())).to_integer())
        .collect();
    let mut lo = 0;
    while lo < ints.len() && ints[lo].is_zero() {
        lo += 1;
    }
    let mut roots = Vec::new();
    if lo == ints.len() {
        return Ok(roots); // zero polynomial: callers never pass this
    }
    if lo > 0 {
        roots.push(field.zero());
    }
    let body = &ints[lo..];
    let a0 = body[0].abs();
    let an = body.last().expect("nonempty").abs();
    let divs = |n: &BigInt| -> Vec<BigInt> {
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
    };
    for pn in divs(&a0) {
        for qn in divs(&an) {
            for sign in [1i64, -1] {
                let cand = Rat::new(pn.clone() * BigInt::from(sign), qn.clone());
                let t = field.from_rat(&cand)?;
                if eval_poly(coeffs, &t)?.is_zero() && !roots.contains(&t) {
                    roots.push(t);
                }
            }
        }
    }
    Ok(roots)
}

/// Basis matrix B (columns) of the nullspace of (M - t I).
fn eigenspace(m: &Mat<Scalar>, t: &Scalar) -> Result<Vec<Vec<Scalar>>> {
    let n = m.rows();
    let mut shifted = m.clone();
    for i in 0..n {
        shifted.set(i, i, m.at(i, i).sub(t)?);
    }
    shifted.nullspace()
}

/// A subspace carried as a list of column vectors.
type Block = Vec<Vec<Scalar>>;

/// Restriction of M to the span of `block`; None when the span is not
/// M-invariant or the expression fails.
fn restriction(m: &Mat<Scalar>, block: &Block) -> Result<Option<Mat<Scalar>>> {
    let n = m.rows();
    let k = block.len();
    let field = m.sample().field().clone();
    // Solve [B | M b_j] by row reduction of the transpose system.
    let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(k);
    for b in block {
        let bv = Mat::new(n, 1, b.clone())?;
        let mb = m.mul(&bv)?;
        cols.push(mb.entries().to_vec());
    }
    // Augmented: rows are equations over the ambient space.
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row: Vec<Scalar> = block.iter().map(|b| b[i].clone()).collect();
        for c in &cols {
            row.push(c[i].clone());
        }
        rows.push(row);
    }
    let pivots = Mat::rref_rows(&mut rows)?;
    if pivots.iter().any(|&p| p >= k) {
        return Ok(None); // some M b_j leaves the span
    }
    // With B in column echelon-ish position the solution reads off directly:
    // pivot rows give the coefficients of each M b_j in terms of the b_i.
    let mut entries = vec![field.zero(); k * k];
    for (r, &pc) in pivots.iter().enumerate() {
        for j in 0..k {
            entries[pc * k + j] = rows[r][k + j].clone();
        }
    }
    Ok(Some(Mat::new(k, k, entries)?))
}

/// Columns of `basis` mapped through a block: lifts eigenvectors of a
/// restriction back to the ambient space.
fn lift(block: &Block, vec: &[Scalar]) -> Result<Vec<Scalar>> {
    let n = block[0].len();
    let field = block[0][0].field().clone();
    let mut out = vec![field.zero(); n];
    for (b, c) in block.iter().zip(vec) {
        for i in 0..n {
            out[i] = out[i].add(&b[i].mul(c)?)?;
        }
    }
    Ok(out)
}

/// Splits a block into eigenspace sub-blocks of M restricted to it.
/// Ok(None) when the restriction is not diagonalizable over the field.
fn split_block(m: &Mat<Scalar>, block: &Block) -> Result<Option<Vec<Block>>> {
    let k = block.len();
    let Some(rest) = restriction(m, block)? else {
        return Ok(None);
    };
    let field = rest.sample().field().clone();
    let cp = char_poly(&rest)?;
    let roots = roots_in_field(&field, &cp)?;
    let mut blocks = Vec::new();
    let mut total = 0usize;
    for t in roots {
        let vecs = eigenspace(&rest, &t)?;
        if vecs.is_empty() {
            continue;
        }
        total += vecs.len();
        let lifted: Block = vecs
            .iter()
            .map(|v| lift(block, v))
            .collect::<Result<_>>()?;
        blocks.push(lifted);
    }
    if total != k {
        return Ok(None);
    }
    Ok(Some(blocks))
}

/// A basis P (columns) in which every matrix of `mats` is diagonal, or None
/// when no such basis exists over the ground field.
///
/// Errors only when exact root recovery is unavailable for the field.
pub fn simultaneous_eigenbasis(mats: &[&Mat<Scalar>]) -> Result<Option<Mat<Scalar>>> {
    let n = mats[0].rows();
    let field = mats[0].sample().field().clone();
    let mut blocks: Vec<Block> = vec![(0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { field.one() } else { field.zero() })
                .collect()
        })
        .collect()];
    for m in mats {
        let mut next = Vec::new();
        for block in &blocks {
            match split_block(m, block)? {
                Some(subs) => next.extend(subs),
                None => return Ok(None),
            }
        }
        blocks = next;
    }
    let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    for b in blocks {
        cols.extend(b);
    }
    debug_assert_eq!(cols.len(), n);
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for col in &cols {
            entries.push(col[i].clone());
        }
    }
    Ok(Some(Mat::new(n, n, entries)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_poly_of_diagonal() {
        let f = Field::rationals();
        let m = Mat::from_rows(vec![
            vec![f.from_i64(2), f.zero()],
            vec![f.zero(), f.from_i64(3)],
        ])
        .unwrap();
        // (x-2)(x-3) = 6 - 5x + x^2
        let cp = char_poly(&m).unwrap();
        assert_eq!(cp, vec![f.from_i64(6), f.from_i64(-5), f.one()]);
    }

    #[test]
    fn rational_root_extraction() {
        let f = Field::rationals();
        // (x - 1/2)(x + 3) = x^2 + 5/2 x - 3/2
        let coeffs = vec![
            f.parse_scalar("-3/2").unwrap(),
            f.parse_scalar("5/2").unwrap(),
            f.one(),
        ];
        let mut roots = roots_in_field(&f, &coeffs).unwrap();
        roots.sort_by_key(|r| r.to_string());
        assert!(roots.contains(&f.parse_scalar("1/2").unwrap()));
        assert!(roots.contains(&f.from_i64(-3)));
    }

    #[test]
    fn diagonalizes_a_conjugated_diagonal_pair() {
        let f = Field::prime(10007).unwrap();
        let d1 = Mat::from_rows(vec![
            vec![f.from_i64(2), f.zero()],
            vec![f.zero(), f.from_i64(5)],
        ])
        .unwrap();
        let d2 = Mat::from_rows(vec![
            vec![f.from_i64(7), f.zero()],
            vec![f.zero(), f.from_i64(7)],
        ])
        .unwrap();
        let q = Mat::from_rows(vec![
            vec![f.one(), f.from_i64(3)],
            vec![f.from_i64(2), f.one()],
        ])
        .unwrap();
        let qi = q.inverse().unwrap();
        let a = q.mul(&d1).unwrap().mul(&qi).unwrap();
        let b = q.mul(&d2).unwrap().mul(&qi).unwrap();
        let p = simultaneous_eigenbasis(&[&a, &b]).unwrap().unwrap();
        let pi = p.inverse().unwrap();
        assert!(pi.mul(&a).unwrap().mul(&p).unwrap().is_diagonal());
        assert!(pi.mul(&b).unwrap().mul(&p).unwrap().is_diagonal());
    }

    #[test]
    fn rejects_non_diagonalizable() {
        let f = Field::rationals();
        // Jordan block.
        let m = Mat::from_rows(vec![
            vec![f.one(), f.one()],
            vec![f.zero(), f.one()],
        ])
        .unwrap();
        assert!(simultaneous_eigenbasis(&[&m]).unwrap().is_none());
        // Rotation-like matrix with no rational eigenvalues.
        let r = Mat::from_rows(vec![
            vec![f.zero(), f.neg_one()],
            vec![f.one(), f.zero()],
        ])
        .unwrap();
        assert!(simultaneous_eigenbasis(&[&r]).unwrap().is_none());
    }
}
