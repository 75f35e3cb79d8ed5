//! Dense exact matrices over a scalar field or over the Laurent polynomial
//! ring, with fraction-free (Bareiss) determinants, inverses, and kernels.

use crate::error::{Error, Result};
use crate::exactalg::field::Scalar;

/// The ring interface matrices need: exact arithmetic plus the exact division
/// used by fraction-free elimination.
pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    fn same_ring(&self, other: &Self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn ring_add(&self, other: &Self) -> Result<Self>;
    fn ring_sub(&self, other: &Self) -> Result<Self>;
    fn ring_mul(&self, other: &Self) -> Result<Self>;
    fn ring_neg(&self) -> Self;
    /// Exact division; errors when the quotient does not exist in the ring.
    fn ring_exact_div(&self, other: &Self) -> Result<Self>;
}

impl Ring for Scalar {
    fn same_ring(&self, other: &Self) -> bool {
        self.field() == other.field()
    }
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn ring_add(&self, other: &Self) -> Result<Self> {
        self.add(other)
    }
    fn ring_sub(&self, other: &Self) -> Result<Self> {
        self.sub(other)
    }
    fn ring_mul(&self, other: &Self) -> Result<Self> {
        self.mul(other)
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
    fn ring_exact_div(&self, other: &Self) -> Result<Self> {
        self.div(other)
    }
}

/// Dense row-major matrix over an exact ring.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat<T: Ring> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Ring> Mat<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::ShapeMismatch("rows and cols must be positive".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let first = entries[0].clone();
        if !entries.iter().all(|e| e.same_ring(&first)) {
            return Err(Error::RingMismatch);
        }
        Ok(Mat { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Mat::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn identity_like(n: usize, sample: &T) -> Self {
        let mut entries = vec![sample.zero_like(); n * n];
        for i in 0..n {
            entries[i * n + i] = sample.one_like();
        }
        Mat { rows: n, cols: n, entries }
    }

    pub fn zero_like(rows: usize, cols: usize, sample: &T) -> Self {
        Mat { rows, cols, entries: vec![sample.zero_like(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn sample(&self) -> &T {
        &self.entries[0]
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.entries[0].same_ring(&other.entries[0]) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        self.check_ring(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.ring_add(b))
            .collect::<Result<_>>()?;
        Ok(Mat { rows: self.rows, cols: self.cols, entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} - {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        self.check_ring(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.ring_sub(b))
            .collect::<Result<_>>()?;
        Ok(Mat { rows: self.rows, cols: self.cols, entries })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        self.check_ring(other)?;
        let zero = self.entries[0].zero_like();
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = zero.clone();
                for k in 0..self.cols {
                    let a = self.at(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    let t = a.ring_mul(other.at(k, j))?;
                    acc = acc.ring_add(&t)?;
                }
                entries.push(acc);
            }
        }
        Ok(Mat { rows: self.rows, cols: other.cols, entries })
    }

    pub fn scale(&self, by: &T) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.ring_mul(by))
            .collect::<Result<_>>()?;
        Ok(Mat { rows: self.rows, cols: self.cols, entries })
    }

    pub fn pow(&self, e: u64) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch("pow of non-square matrix".into()));
        }
        let mut acc = Mat::identity_like(self.rows, &self.entries[0]);
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base.clone())?;
            k >>= 1;
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.at(i, j).clone());
            }
        }
        Mat { rows: self.cols, cols: self.rows, entries }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Mat::identity_like(self.rows, &self.entries[0])
    }

    pub fn is_diagonal(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.at(i, j).is_zero()))
    }

    /// Diagonal with all diagonal entries equal.
    pub fn is_scalar_matrix(&self) -> bool {
        self.is_diagonal() && (1..self.rows).all(|i| self.at(i, i) == self.at(0, 0))
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.rows.min(self.cols)).map(|i| self.at(i, i).clone()).collect()
    }

    /// Exact determinant by fraction-free Bareiss elimination. Over a field
    /// the divisions are ordinary; over a polynomial ring they are exact by
    /// the Sylvester identity, so intermediate growth stays controlled.
    pub fn det(&self) -> Result<T> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        let zero = self.entries[0].zero_like();
        let one = self.entries[0].one_like();
        if n == 1 {
            return Ok(self.entries[0].clone());
        }
        let mut m: Vec<Vec<T>> = (0..n)
            .map(|i| self.entries[i * n..(i + 1) * n].to_vec())
            .collect();
        let mut negate = false;
        let mut prev = one;
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        negate = !negate;
                    }
                    None => return Ok(zero),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let a = m[i][j].ring_mul(&m[k][k])?;
                    let b = m[i][k].ring_mul(&m[k][j])?;
                    m[i][j] = a.ring_sub(&b)?.ring_exact_div(&prev)?;
                }
                m[i][k] = zero.clone();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if negate { d.ring_neg() } else { d })
    }

    /// Determinant by cofactor expansion along the first row. Exponential;
    /// used as an independent oracle for small matrices in tests.
    pub fn det_cofactor(&self) -> Result<T> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 1 {
            return Ok(self.entries[0].clone());
        }
        let zero = self.entries[0].zero_like();
        let mut acc = zero;
        for j in 0..n {
            let a = self.at(0, j);
            if a.is_zero() {
                continue;
            }
            let mut sub = Vec::with_capacity((n - 1) * (n - 1));
            for i in 1..n {
                for jj in 0..n {
                    if jj != j {
                        sub.push(self.at(i, jj).clone());
                    }
                }
            }
            let minor = Mat { rows: n - 1, cols: n - 1, entries: sub }.det_cofactor()?;
            let term = a.ring_mul(&minor)?;
            acc = if j % 2 == 0 { acc.ring_add(&term)? } else { acc.ring_sub(&term)? };
        }
        Ok(acc)
    }
}

impl Mat<Scalar> {
    /// Gauss-Jordan inverse; errors on singular input.
    pub fn inverse(&self) -> Result<Mat<Scalar>> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let field = self.entries[0].field().clone();
        let mut aug: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut row: Vec<Scalar> = self.entries[i * n..(i + 1) * n].to_vec();
                for j in 0..n {
                    row.push(if i == j { field.one() } else { field.zero() });
                }
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&i| !aug[i][col].is_zero()).ok_or(Error::SingularMatrix)?;
            aug.swap(col, pivot);
            let inv = aug[col][col].inv()?;
            for j in 0..2 * n {
                aug[col][j] = aug[col][j].mul(&inv)?;
            }
            for i in 0..n {
                if i == col || aug[i][col].is_zero() {
                    continue;
                }
                let f = aug[i][col].clone();
                for j in 0..2 * n {
                    let t = f.mul(&aug[col][j])?;
                    aug[i][j] = aug[i][j].sub(&t)?;
                }
            }
        }
        let entries = aug.into_iter().flat_map(|row| row[n..].to_vec()).collect();
        Mat::new(n, n, entries)
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub(crate) fn rref_rows(rows: &mut Vec<Vec<Scalar>>) -> Result<Vec<usize>> {
        let nrows = rows.len();
        if nrows == 0 {
            return Ok(Vec::new());
        }
        let ncols = rows[0].len();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..ncols {
            if r == nrows {
                break;
            }
            let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][c].inv()?;
            for j in c..ncols {
                rows[r][j] = rows[r][j].mul(&inv)?;
            }
            for i in 0..nrows {
                if i == r || rows[i][c].is_zero() {
                    continue;
                }
                let f = rows[i][c].clone();
                for j in c..ncols {
                    let t = f.mul(&rows[r][j])?;
                    rows[i][j] = rows[i][j].sub(&t)?;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok(pivots)
    }

    pub fn rank(&self) -> Result<usize> {
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|i| self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect();
        Ok(Self::rref_rows(&mut rows)?.len())
    }

    /// Exact reduced basis of the right kernel: one vector per free column,
    /// with a 1 in the free position.
    pub fn nullspace(&self) -> Result<Vec<Vec<Scalar>>> {
        let field = self.entries[0].field().clone();
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|i| self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect();
        let pivots = Self::rref_rows(&mut rows)?;
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![field.zero(); self.cols];
            v[free] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = rows[r][free].neg();
            }
            basis.push(v);
        }
        Ok(basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::Field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn random_mat(field: &Field, n: usize, rng: &mut ChaCha12Rng) -> Mat<Scalar> {
        let p = field.characteristic();
        let entries = (0..n * n)
            .map(|_| {
                if p == 0 {
                    field.from_i64(rng.gen_range(-9..=9))
                } else {
                    field.from_i64(rng.gen_range(0..p as i64))
                }
            })
            .collect();
        Mat::new(n, n, entries).unwrap()
    }

    #[test]
    fn identity_times_random_is_identity_map() {
        let f = Field::prime(10007).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        let m = random_mat(&f, 6, &mut rng);
        let i = Mat::identity_like(6, m.sample());
        assert_eq!(i.mul(&m).unwrap(), m);
        assert_eq!(m.mul(&i).unwrap(), m);
    }

    #[test]
    fn det_examples() {
        let f = Field::rationals();
        let i6 = Mat::identity_like(6, &f.one());
        assert!(i6.det().unwrap().is_one());
        let d = Mat::from_rows(vec![
            vec![f.from_i64(2), f.zero()],
            vec![f.zero(), f.from_i64(3)],
        ])
        .unwrap();
        assert_eq!(d.det().unwrap(), f.from_i64(6));
    }

    #[test]
    fn det_product_rule_random() {
        let f = Field::prime(10007).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(13);
        for _ in 0..200 {
            let a = random_mat(&f, 4, &mut rng);
            let b = random_mat(&f, 4, &mut rng);
            let lhs = a.mul(&b).unwrap().det().unwrap();
            let rhs = a.det().unwrap().mul(&b.det().unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn nullspace_trivial_and_full() {
        let f = Field::rationals();
        let i = Mat::identity_like(3, &f.one());
        assert!(i.nullspace().unwrap().is_empty());
        let z = Mat::zero_like(2, 2, &f.one());
        assert_eq!(z.nullspace().unwrap().len(), 2);
    }

    #[test]
    fn nullspace_vectors_annihilate() {
        let f = Field::prime(7).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        for _ in 0..20 {
            let entries: Vec<Scalar> =
                (0..12).map(|_| f.from_i64(rng.gen_range(0..7))).collect();
            let m = Mat::new(3, 4, entries).unwrap();
            let basis = m.nullspace().unwrap();
            assert_eq!(m.rank().unwrap() + basis.len(), 4);
            for v in basis {
                let col = Mat::new(4, 1, v).unwrap();
                let prod = m.mul(&col).unwrap();
                assert!(prod.entries().iter().all(|e| e.is_zero()));
            }
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let f = Field::prime(10007).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        let mut checked = 0;
        while checked < 25 {
            let m = random_mat(&f, 5, &mut rng);
            let Ok(inv) = m.inverse() else { continue };
            assert!(m.mul(&inv).unwrap().is_identity());
            assert!(inv.mul(&m).unwrap().is_identity());
            checked += 1;
        }
    }

    #[test]
    fn diagonal_inverse_example() {
        // P = diag(1, x1) inverts entrywise.
        let f = Field::rationals();
        let x1 = f.from_rat(&crate::exactalg::field::rat_int(5)).unwrap();
        let p = Mat::from_rows(vec![
            vec![f.one(), f.zero()],
            vec![f.zero(), x1.clone()],
        ])
        .unwrap();
        let pinv = p.inverse().unwrap();
        assert_eq!(*pinv.at(1, 1), x1.inv().unwrap());
        assert_eq!(*pinv.at(0, 0), f.one());
    }

    #[test]
    fn shape_and_ring_errors() {
        let f = Field::rationals();
        let g = Field::prime(7).unwrap();
        let a = Mat::identity_like(2, &f.one());
        let b = Mat::identity_like(3, &f.one());
        assert!(matches!(a.mul(&b), Err(Error::ShapeMismatch(_))));
        let c = Mat::identity_like(2, &g.one());
        assert!(matches!(a.mul(&c), Err(Error::RingMismatch)));
        assert!(Mat::new(2, 2, vec![f.one(), f.zero(), g.one(), g.zero()]).is_err());
    }
}
