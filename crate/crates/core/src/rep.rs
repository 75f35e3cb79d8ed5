//! Representation-level semantics: relation checking, commutator images,
//! Burnside irreducibility, and intertwiner-space equivalence.
//!
//! A representation of `<x, y | x^2 = y^3 = 1>` is carried as the pair
//! `(X, Y)` of exact matrices; the commutator images are `L = XYXY^2` and
//! `G = XY^2XY`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::{Field, FieldSpec, Mat, Rat, Scalar};

/// A pair (X, Y) over an exact field, with X^2 = I and Y^3 = I validated
/// rather than assumed.
#[derive(Clone, Debug, PartialEq)]
pub struct Rep {
    field: Field,
    n: usize,
    x: Mat<Scalar>,
    y: Mat<Scalar>,
}

/// Exact booleans for each relation the hypothesis cares about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub x_squared_identity: bool,
    pub y_cubed_identity: bool,
    pub lambda_diagonal: bool,
    pub gamma_diagonal: bool,
    pub lambda_scalar: bool,
    pub lambda_equals_gamma: bool,
}

impl ValidationReport {
    /// The relations every representation must satisfy.
    pub fn relations_hold(&self) -> bool {
        self.x_squared_identity && self.y_cubed_identity
    }

    /// The standing hypothesis: relations plus diagonal commutator images.
    pub fn satisfies_hypothesis(&self) -> bool {
        self.relations_hold() && self.lambda_diagonal && self.gamma_diagonal
    }
}

/// The commutator images Lambda = XYXY^2 and Gamma = XY^2XY.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutatorImages {
    pub lambda: Mat<Scalar>,
    pub gamma: Mat<Scalar>,
    pub both_diagonal: bool,
}

impl Rep {
    pub fn new(field: Field, x: Mat<Scalar>, y: Mat<Scalar>) -> Result<Rep> {
        let n = x.rows();
        if x.cols() != n || y.rows() != n || y.cols() != n {
            return Err(Error::ShapeMismatch(format!(
                "X is {}x{}, Y is {}x{}",
                x.rows(),
                x.cols(),
                y.rows(),
                y.cols()
            )));
        }
        if x.sample().field() != &field || y.sample().field() != &field {
            return Err(Error::RingMismatch);
        }
        Ok(Rep { field, n, x, y })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn x(&self) -> &Mat<Scalar> {
        &self.x
    }

    pub fn y(&self) -> &Mat<Scalar> {
        &self.y
    }

    pub fn lambda(&self) -> Result<Mat<Scalar>> {
        let y2 = self.y.mul(&self.y)?;
        self.x.mul(&self.y)?.mul(&self.x)?.mul(&y2)
    }

    pub fn gamma(&self) -> Result<Mat<Scalar>> {
        let y2 = self.y.mul(&self.y)?;
        self.x.mul(&y2)?.mul(&self.x)?.mul(&self.y)
    }

    /// Checks each hypothesis relation exactly.
    pub fn validate(&self) -> Result<ValidationReport> {
        let x2 = self.x.mul(&self.x)?;
        let y3 = self.y.pow(3)?;
        let lambda = self.lambda()?;
        let gamma = self.gamma()?;
        Ok(ValidationReport {
            x_squared_identity: x2.is_identity(),
            y_cubed_identity: y3.is_identity(),
            lambda_diagonal: lambda.is_diagonal(),
            gamma_diagonal: gamma.is_diagonal(),
            lambda_scalar: lambda.is_scalar_matrix(),
            lambda_equals_gamma: lambda == gamma,
        })
    }

    pub fn commutators(&self) -> Result<CommutatorImages> {
        let lambda = self.lambda()?;
        let gamma = self.gamma()?;
        let both_diagonal = lambda.is_diagonal() && gamma.is_diagonal();
        Ok(CommutatorImages { lambda, gamma, both_diagonal })
    }

    /// Conjugates by an invertible Q: (QXQ^-1, QYQ^-1).
    pub fn conjugate(&self, q: &Mat<Scalar>) -> Result<Rep> {
        let qinv = q.inverse()?;
        let x = q.mul(&self.x)?.mul(&qinv)?;
        let y = q.mul(&self.y)?.mul(&qinv)?;
        Rep::new(self.field.clone(), x, y)
    }

    /// Dimension of the linear span of all words in X and Y.
    ///
    /// Seeds the span with {I, X, Y} and closes it under left multiplication
    /// by X and Y; the stable span contains every word, so the pair is
    /// irreducible exactly when the result is n^2.
    pub fn burnside_span_dim(&self) -> Result<usize> {
        let n = self.n;
        let full = n * n;
        let mut span = SpanBasis::new(full);
        let mut queue: Vec<Mat<Scalar>> = Vec::new();
        let identity = Mat::identity_like(n, &self.field.one());
        for m in [identity, self.x.clone(), self.y.clone()] {
            if span.insert(vectorize(&m))? {
                queue.push(m);
            }
        }
        while let Some(m) = queue.pop() {
            if span.dim() == full {
                break;
            }
            for g in [&self.x, &self.y] {
                let prod = g.mul(&m)?;
                if span.insert(vectorize(&prod))? {
                    queue.push(prod);
                }
            }
        }
        Ok(span.dim())
    }

    pub fn is_irreducible(&self) -> Result<bool> {
        Ok(self.burnside_span_dim()? == self.n * self.n)
    }
}

fn vectorize(m: &Mat<Scalar>) -> Vec<Scalar> {
    m.entries().to_vec()
}

/// Incrementally maintained row-echelon basis of a subspace of k^width.
pub(crate) struct SpanBasis {
    width: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl SpanBasis {
    pub(crate) fn new(width: usize) -> Self {
        SpanBasis { width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub(crate) fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; inserts and returns true when independent.
    pub(crate) fn insert(&mut self, mut v: Vec<Scalar>) -> Result<bool> {
        debug_assert_eq!(v.len(), self.width);
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if v[pc].is_zero() {
                continue;
            }
            let f = v[pc].clone();
            for j in pc..self.width {
                let t = f.mul(&row[j])?;
                v[j] = v[j].sub(&t)?;
            }
        }
        let Some(pivot) = v.iter().position(|c| !c.is_zero()) else {
            return Ok(false);
        };
        let inv = v[pivot].inv()?;
        for c in v.iter_mut() {
            *c = c.mul(&inv)?;
        }
        // Keep rows ordered by pivot column.
        let at = self.pivots.partition_point(|&pc| pc < pivot);
        self.rows.insert(at, v);
        self.pivots.insert(at, pivot);
        Ok(true)
    }
}

/// Basis of the space of matrices Q with Q X_a = X_b Q and Q Y_a = Y_b Q.
///
/// The combined linear system has 2n^2 equations in the n^2 entries of Q.
pub fn intertwiner_space(a: &Rep, b: &Rep) -> Result<Vec<Mat<Scalar>>> {
    if a.n != b.n {
        return Err(Error::ShapeMismatch(format!("{} vs {}", a.n, b.n)));
    }
    if a.field != b.field {
        return Err(Error::FieldMismatch(
            a.field.label().to_string(),
            b.field.label().to_string(),
        ));
    }
    let n = a.n;
    let field = &a.field;
    // Unknown Q vectorized row-major: q[i*n + j] = Q[i][j].
    // Q M_a - M_b Q = 0 gives, for each (i, j):
    //   sum_k Q[i][k] M_a[k][j] - sum_k M_b[i][k] Q[k][j] = 0.
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(2 * n * n);
    for (ma, mb) in [(&a.x, &b.x), (&a.y, &b.y)] {
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![field.zero(); n * n];
                for k in 0..n {
                    row[i * n + k] = row[i * n + k].add(ma.at(k, j))?;
                    row[k * n + j] = row[k * n + j].sub(mb.at(i, k))?;
                }
                rows.push(row);
            }
        }
    }
    let system = Mat::from_rows(rows)?;
    let basis = system.nullspace()?;
    basis
        .into_iter()
        .map(|v| Mat::new(n, n, v))
        .collect()
}

/// Equivalence of two irreducible representations by simultaneous
/// conjugation. Errors on reducible input; for irreducible pairs the
/// intertwiner space has dimension 0 or 1 and a dimension-1 generator is
/// necessarily invertible, which is asserted.
pub fn rep_equivalent(a: &Rep, b: &Rep) -> Result<bool> {
    if !a.is_irreducible()? || !b.is_irreducible()? {
        return Err(Error::ReducibleInput);
    }
    let basis = intertwiner_space(a, b)?;
    match basis.len() {
        0 => Ok(false),
        1 => {
            let q = &basis[0];
            assert!(
                q.inverse().is_ok(),
                "Schur: a nonzero intertwiner of irreducibles must be invertible"
            );
            Ok(true)
        }
        d => panic!("intertwiner space of irreducibles has dimension {d} > 1"),
    }
}

// ---------------------------------------------------------------------------
// Rep file format:
// {"field": {"char": int, "extension": [coeff...]?}, "n": int,
//  "X": [[scalar-string]], "Y": [[scalar-string]]}
// ---------------------------------------------------------------------------

fn rat_to_json(r: &Rat) -> Value {
    if r.is_integer() {
        if let Ok(i) = i64::try_from(r.to_integer()) {
            return json!(i);
        }
    }
    json!(r.to_string())
}

fn rat_from_json(v: &Value) -> Result<Rat> {
    match v {
        Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| Error::Parse(format!("non-integer coefficient {n}")))?;
            Ok(Rat::from_integer(i.into()))
        }
        Value::String(s) => crate::exactalg::field::parse_rat(s),
        other => Err(Error::Parse(format!("bad coefficient {other}"))),
    }
}

pub fn field_spec_to_json(spec: &FieldSpec) -> Value {
    let mut obj = json!({ "char": spec.characteristic });
    if let Some(ext) = &spec.extension {
        obj["extension"] = Value::Array(ext.iter().map(rat_to_json).collect());
    }
    obj
}

pub fn field_spec_from_json(v: &Value) -> Result<FieldSpec> {
    let ch = v
        .get("char")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("field.char missing or not an integer".into()))?;
    let extension = match v.get("extension") {
        None | Some(Value::Null) => None,
        Some(Value::Array(arr)) => {
            Some(arr.iter().map(rat_from_json).collect::<Result<Vec<_>>>()?)
        }
        Some(other) => return Err(Error::Parse(format!("bad field.extension {other}"))),
    };
    let label = match (&extension, ch) {
        (None, 0) => "Q".to_string(),
        (None, p) => format!("GF({p})"),
        (Some(_), 0) => "Q(ext)".to_string(),
        (Some(_), p) => format!("GF({p})(ext)"),
    };
    Ok(FieldSpec { characteristic: ch, extension, label })
}

fn mat_to_json(m: &Mat<Scalar>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    (0..m.cols()).map(|j| json!(m.at(i, j).to_string())).collect(),
                )
            })
            .collect(),
    )
}

fn mat_from_json(field: &Field, v: &Value, what: &str) -> Result<Mat<Scalar>> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{what} is not an array of rows")))?;
    let mut out = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Parse(format!("{what} row {i} is not an array")))?;
        let mut r = Vec::new();
        for (j, cell) in row.iter().enumerate() {
            let text = match cell {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                other => {
                    return Err(Error::Parse(format!("{what}[{i}][{j}] is {other}, want a scalar string")))
                }
            };
            r.push(field.parse_scalar(&text).map_err(|e| {
                Error::Parse(format!("{what}[{i}][{j}]: {e}"))
            })?);
        }
        out.push(r);
    }
    Mat::from_rows(out)
}

impl Rep {
    pub fn to_json(&self) -> Value {
        json!({
            "field": field_spec_to_json(self.field.spec()),
            "n": self.n,
            "X": mat_to_json(&self.x),
            "Y": mat_to_json(&self.y),
        })
    }

    pub fn from_json(v: &Value) -> Result<Rep> {
        let spec = field_spec_from_json(
            v.get("field").ok_or_else(|| Error::Parse("missing \"field\"".into()))?,
        )?;
        let field = Field::new(spec)?;
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing \"n\"".into()))? as usize;
        let x = mat_from_json(&field, v.get("X").ok_or_else(|| Error::Parse("missing \"X\"".into()))?, "X")?;
        let y = mat_from_json(&field, v.get("Y").ok_or_else(|| Error::Parse("missing \"Y\"".into()))?, "Y")?;
        if x.rows() != n || y.rows() != n {
            return Err(Error::Parse(format!(
                "n = {n} but X is {}x{} and Y is {}x{}",
                x.rows(),
                x.cols(),
                y.rows(),
                y.cols()
            )));
        }
        Rep::new(field, x, y)
    }

    pub fn from_json_str(s: &str) -> Result<Rep> {
        let v: Value =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
        Rep::from_json(&v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap2(field: &Field) -> Mat<Scalar> {
        Mat::from_rows(vec![
            vec![field.zero(), field.one()],
            vec![field.one(), field.zero()],
        ])
        .unwrap()
    }

    fn dim2_rep(field: &Field, a: &Scalar, b: &Scalar) -> Rep {
        let y = Mat::from_rows(vec![
            vec![a.clone(), field.zero()],
            vec![field.zero(), b.clone()],
        ])
        .unwrap();
        Rep::new(field.clone(), swap2(field), y).unwrap()
    }

    #[test]
    fn y_diag_zeta_cubes_to_identity() {
        let f = Field::with_zeta(0).unwrap();
        let z = f.zeta().unwrap();
        let r = dim2_rep(&f, &f.one(), &z);
        let v = r.validate().unwrap();
        assert!(v.relations_hold());
        assert!(v.satisfies_hypothesis());
    }

    #[test]
    fn dim2_commutator_images_match_hand_computation() {
        // X = swap, Y = diag(1, zeta): Lambda = diag(zeta, zeta^2),
        // Gamma = diag(zeta^2, zeta), multiplied out by hand.
        let f = Field::with_zeta(0).unwrap();
        let z = f.zeta().unwrap();
        let zsq = z.mul(&z).unwrap();
        let r = dim2_rep(&f, &f.one(), &z);
        let c = r.commutators().unwrap();
        assert!(c.both_diagonal);
        assert_eq!(c.lambda.diagonal(), vec![z.clone(), zsq.clone()]);
        assert_eq!(c.gamma.diagonal(), vec![zsq, z]);
    }

    #[test]
    fn commuting_pair_has_trivial_commutators() {
        let f = Field::with_zeta(0).unwrap();
        let z = f.zeta().unwrap();
        let x = Mat::from_rows(vec![
            vec![f.one(), f.zero()],
            vec![f.zero(), f.neg_one()],
        ])
        .unwrap();
        let y = Mat::from_rows(vec![
            vec![z.clone(), f.zero()],
            vec![f.zero(), f.one()],
        ])
        .unwrap();
        let r = Rep::new(f.clone(), x, y).unwrap();
        let c = r.commutators().unwrap();
        assert!(c.lambda.is_identity());
        assert!(c.gamma.is_identity());
        // Lambda = Gamma forces reducibility for n > 1.
        assert!(r.burnside_span_dim().unwrap() < 4);
    }

    #[test]
    fn burnside_identity_pair_spans_one_dimension() {
        let f = Field::rationals();
        let i = Mat::identity_like(2, &f.one());
        let r = Rep::new(f, i.clone(), i).unwrap();
        assert_eq!(r.burnside_span_dim().unwrap(), 1);
    }

    #[test]
    fn burnside_dim2_catalog_rep_is_irreducible() {
        let f = Field::with_zeta(0).unwrap();
        let r = dim2_rep(&f, &f.one(), &f.zeta().unwrap());
        assert_eq!(r.burnside_span_dim().unwrap(), 4);
    }

    #[test]
    fn intertwiner_of_rep_with_itself_contains_identity() {
        let f = Field::with_zeta(0).unwrap();
        let r = dim2_rep(&f, &f.one(), &f.zeta().unwrap());
        let basis = intertwiner_space(&r, &r).unwrap();
        assert_eq!(basis.len(), 1);
        // The generator is a scalar multiple of I.
        let q = &basis[0];
        assert!(q.is_diagonal());
        assert_eq!(q.at(0, 0), q.at(1, 1));
    }

    #[test]
    fn trace_separated_dim2_reps_are_inequivalent() {
        let f = Field::with_zeta(0).unwrap();
        let z = f.zeta().unwrap();
        let zsq = z.mul(&z).unwrap();
        let a = dim2_rep(&f, &f.one(), &z);
        let b = dim2_rep(&f, &f.one(), &zsq);
        assert!(intertwiner_space(&a, &b).unwrap().is_empty());
        assert!(!rep_equivalent(&a, &b).unwrap());
        assert!(rep_equivalent(&a, &a).unwrap());
    }

    #[test]
    fn equivalence_refuses_reducible_input() {
        let f = Field::rationals();
        let i = Mat::identity_like(2, &f.one());
        let r = Rep::new(f, i.clone(), i).unwrap();
        assert!(matches!(rep_equivalent(&r, &r), Err(Error::ReducibleInput)));
    }

    #[test]
    fn rep_json_roundtrip() {
        let f = Field::with_zeta(2).unwrap();
        let r = dim2_rep(&f, &f.one(), &f.zeta().unwrap());
        let s = serde_json::to_string(&r.to_json()).unwrap();
        let back = Rep::from_json_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
