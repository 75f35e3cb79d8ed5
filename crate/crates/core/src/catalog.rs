//! The classification catalog as executable data: constructors for every
//! family, characteristic-dependent exclusion sets, the order-6 parameter
//! orbit with its explicit intertwiners Q1..Q6, and a classifier that maps an
//! arbitrary valid representation onto the catalog.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::{Field, Mat, Scalar};
use crate::rep::{intertwiner_space, Rep};

/// Sign of the one-dimensional X (and the dim-3 X).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

/// Symbolic cube root of unity used by one- and two-dimensional labels.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CubeRoot {
    One,
    Zeta,
    ZetaSq,
}

impl CubeRoot {
    pub fn in_field(self, field: &Field) -> Result<Scalar> {
        match self {
            CubeRoot::One => Ok(field.one()),
            CubeRoot::Zeta | CubeRoot::ZetaSq => {
                let z = field.zeta().ok_or_else(|| {
                    Error::InadmissibleLabel(format!(
                        "label needs a primitive cube root of unity, which {} lacks (extend by x^2+x+1)",
                        field.label()
                    ))
                })?;
                match self {
                    CubeRoot::Zeta => Ok(z),
                    _ => z.mul(&z),
                }
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CubeRoot::One => "1",
            CubeRoot::Zeta => "zeta",
            CubeRoot::ZetaSq => "zeta^2",
        }
    }
}

/// The three inequivalent two-dimensional diagonal pairs (a, b) for Y.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Dim2Variant {
    OneZeta,
    OneZetaSq,
    ZetaZetaSq,
}

impl Dim2Variant {
    pub fn pair(self) -> (CubeRoot, CubeRoot) {
        match self {
            Dim2Variant::OneZeta => (CubeRoot::One, CubeRoot::Zeta),
            Dim2Variant::OneZetaSq => (CubeRoot::One, CubeRoot::ZetaSq),
            Dim2Variant::ZetaZetaSq => (CubeRoot::Zeta, CubeRoot::ZetaSq),
        }
    }

    pub fn all() -> [Dim2Variant; 3] {
        [Dim2Variant::OneZeta, Dim2Variant::OneZetaSq, Dim2Variant::ZetaZetaSq]
    }
}

/// A nonzero parameter pair (c1, c2) of the six-dimensional family.
#[derive(Clone, PartialEq, Debug)]
pub struct ParamPair {
    c1: Scalar,
    c2: Scalar,
}

impl ParamPair {
    pub fn new(c1: Scalar, c2: Scalar) -> Result<ParamPair> {
        if c1.field() != c2.field() {
            return Err(Error::FieldMismatch(
                c1.field().label().to_string(),
                c2.field().label().to_string(),
            ));
        }
        if c1.is_zero() || c2.is_zero() {
            return Err(Error::ZeroParameter);
        }
        Ok(ParamPair { c1, c2 })
    }

    pub fn c1(&self) -> &Scalar {
        &self.c1
    }

    pub fn c2(&self) -> &Scalar {
        &self.c2
    }

    pub fn field(&self) -> &Field {
        self.c1.field()
    }

    /// Deterministic text encoding used for canonical representative choice.
    pub fn key(&self) -> (String, String) {
        (self.c1.to_string(), self.c2.to_string())
    }
}

/// A label of the catalog: the finite families plus the parametric one.
#[derive(Clone, PartialEq, Debug)]
pub enum CatalogLabel {
    Dim1 { x: Sign, y: CubeRoot },
    Dim2(Dim2Variant),
    Dim3 { x: Sign },
    Dim6(ParamPair),
}

impl CatalogLabel {
    pub fn dim(&self) -> usize {
        match self {
            CatalogLabel::Dim1 { .. } => 1,
            CatalogLabel::Dim2(_) => 2,
            CatalogLabel::Dim3 { .. } => 3,
            CatalogLabel::Dim6(_) => 6,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CatalogLabel::Dim1 { x, y } => json!({
                "dim": 1,
                "x": if *x == Sign::Plus { "1" } else { "-1" },
                "y": y.name(),
            }),
            CatalogLabel::Dim2(v) => {
                let (a, b) = v.pair();
                json!({ "dim": 2, "y_diag": [a.name(), b.name()] })
            }
            CatalogLabel::Dim3 { x } => json!({
                "dim": 3,
                "sign": if *x == Sign::Plus { "+" } else { "-" },
            }),
            CatalogLabel::Dim6(p) => json!({
                "dim": 6,
                "c1": p.c1.to_string(),
                "c2": p.c2.to_string(),
            }),
        }
    }
}

fn sign_scalar(field: &Field, s: Sign) -> Scalar {
    match s {
        Sign::Plus => field.one(),
        Sign::Minus => field.neg_one(),
    }
}

/// Builds the exact matrices of the catalog entry `label` over `field`.
///
/// Admissibility in the field's characteristic is enforced, except that the
/// dim-6 constructor deliberately allows excluded parameter pairs so that
/// their reducibility can be confirmed; see [`param_excluded`].
pub fn make_catalog_rep(label: &CatalogLabel, field: &Field) -> Result<Rep> {
    let p = field.characteristic();
    match label {
        CatalogLabel::Dim1 { x, y } => {
            if p == 2 && *x == Sign::Minus {
                return Err(Error::InadmissibleLabel(
                    "x = -1 coincides with x = 1 in characteristic 2".into(),
                ));
            }
            if p == 3 && *y != CubeRoot::One {
                return Err(Error::InadmissibleLabel(
                    "characteristic 3 has no primitive cube root of unity".into(),
                ));
            }
            let xm = Mat::new(1, 1, vec![sign_scalar(field, *x)])?;
            let ym = Mat::new(1, 1, vec![y.in_field(field)?])?;
            Rep::new(field.clone(), xm, ym)
        }
        CatalogLabel::Dim2(variant) => {
            if p == 3 {
                return Err(Error::InadmissibleLabel(
                    "no irreducible 2-dimensional representations in characteristic 3".into(),
                ));
            }
            let (a, b) = variant.pair();
            let x = Mat::from_rows(vec![
                vec![field.zero(), field.one()],
                vec![field.one(), field.zero()],
            ])?;
            let y = Mat::from_rows(vec![
                vec![a.in_field(field)?, field.zero()],
                vec![field.zero(), b.in_field(field)?],
            ])?;
            Rep::new(field.clone(), x, y)
        }
        CatalogLabel::Dim3 { x } => {
            if p == 2 {
                return Err(Error::InadmissibleLabel(
                    "no irreducible 3-dimensional representations in characteristic 2".into(),
                ));
            }
            let s = sign_scalar(field, *x);
            let neg = s.neg();
            let zero = field.zero();
            let xm = Mat::from_rows(vec![
                vec![s.clone(), zero.clone(), zero.clone()],
                vec![zero.clone(), neg.clone(), zero.clone()],
                vec![zero.clone(), zero.clone(), neg],
            ])?;
            let ym = Mat::from_rows(vec![
                vec![zero.clone(), field.one(), zero.clone()],
                vec![zero.clone(), zero.clone(), field.one()],
                vec![field.one(), zero.clone(), zero.clone()],
            ])?;
            Rep::new(field.clone(), xm, ym)
        }
        CatalogLabel::Dim6(pair) => {
            if pair.field() != field {
                return Err(Error::FieldMismatch(
                    pair.field().label().to_string(),
                    field.label().to_string(),
                ));
            }
            make_dim6_rep(pair)
        }
    }
}

/// The canonical six-dimensional pair at (c1, c2).
pub fn make_dim6_rep(p: &ParamPair) -> Result<Rep> {
    let field = p.field().clone();
    let zero = field.zero();
    let one = field.one();
    let mut x = Mat::zero_like(6, 6, &zero);
    for (i, j) in [(0, 1), (1, 0), (2, 3), (3, 2), (4, 5), (5, 4)] {
        x.set(i, j, one.clone());
    }
    let inv_c1c2 = p.c1.mul(&p.c2)?.inv()?;
    let mut y = Mat::zero_like(6, 6, &zero);
    y.set(0, 4, p.c1.clone());
    y.set(1, 5, one.clone());
    y.set(2, 0, p.c2.clone());
    y.set(3, 1, one.clone());
    y.set(4, 2, inv_c1c2);
    y.set(5, 3, one);
    Rep::new(field, x, y)
}

/// Symbolic members of the reducibility exclusion list.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExclusionPoint {
    OneOne,
    MinusMinus,
    MinusOne,
    OneMinus,
    ZetaZeta,
    ZetaSqZetaSq,
}

impl ExclusionPoint {
    pub fn name(self) -> &'static str {
        match self {
            ExclusionPoint::OneOne => "(1,1)",
            ExclusionPoint::MinusMinus => "(-1,-1)",
            ExclusionPoint::MinusOne => "(-1,1)",
            ExclusionPoint::OneMinus => "(1,-1)",
            ExclusionPoint::ZetaZeta => "(zeta,zeta)",
            ExclusionPoint::ZetaSqZetaSq => "(zeta^2,zeta^2)",
        }
    }

    /// The exclusion list for a characteristic, in the order the families
    /// list them.
    pub fn list_for_characteristic(p: u64) -> Vec<ExclusionPoint> {
        use ExclusionPoint::*;
        match p {
            2 => vec![OneOne, ZetaZeta, ZetaSqZetaSq],
            3 => vec![OneOne, MinusMinus, MinusOne, OneMinus],
            _ => vec![OneOne, MinusMinus, MinusOne, OneMinus, ZetaZeta, ZetaSqZetaSq],
        }
    }

    /// The concrete pair in `field`, when its entries exist there.
    pub fn materialize(self, field: &Field) -> Option<ParamPair> {
        let one = field.one();
        let m = field.neg_one();
        let z = field.zeta();
        let (a, b) = match self {
            ExclusionPoint::OneOne => (one.clone(), one),
            ExclusionPoint::MinusMinus => (m.clone(), m),
            ExclusionPoint::MinusOne => (m, one),
            ExclusionPoint::OneMinus => (one, m),
            ExclusionPoint::ZetaZeta => {
                let z = z?;
                (z.clone(), z)
            }
            ExclusionPoint::ZetaSqZetaSq => {
                let z = z?;
                let zz = z.mul(&z).ok()?;
                (zz.clone(), zz)
            }
        };
        ParamPair::new(a, b).ok()
    }
}

/// Whether (c1, c2) falls in the characteristic's exclusion list, membership
/// tested in the pair's own field.
pub fn param_excluded(p: &ParamPair) -> bool {
    let field = p.field();
    ExclusionPoint::list_for_characteristic(field.characteristic())
        .into_iter()
        .filter_map(|e| e.materialize(field))
        .any(|q| q == *p)
}

/// The six parameter transforms under which the family is equivalent, in the
/// order matched by [`intertwiner_qi`]: sigma_1 is the identity.
pub fn orbit_map(i: usize, p: &ParamPair) -> Result<ParamPair> {
    let c1 = &p.c1;
    let c2 = &p.c2;
    let c1c2 = c1.mul(c2)?;
    let (a, b) = match i {
        1 => (c1.clone(), c2.clone()),
        2 => (c1.inv()?, c2.inv()?),
        3 => (c2.clone(), c1c2.inv()?),
        4 => (c2.inv()?, c1c2),
        5 => (c1c2.inv()?, c1.clone()),
        6 => (c1c2, c1.inv()?),
        _ => return Err(Error::Invalid(format!("orbit map index {i} out of 1..=6"))),
    };
    ParamPair::new(a, b)
}

/// The orbit of a pair: the six images with duplicates collapsed, in first-
/// appearance order. Its size divides 6.
pub fn orbit(p: &ParamPair) -> Result<Vec<ParamPair>> {
    let mut out: Vec<ParamPair> = Vec::with_capacity(6);
    for i in 1..=6 {
        let q = orbit_map(i, p)?;
        if !out.contains(&q) {
            out.push(q);
        }
    }
    Ok(out)
}

/// The orbit member minimal under the lexicographic order on canonical
/// coordinate text; idempotent and constant on orbits.
pub fn canonical_param(p: &ParamPair) -> Result<ParamPair> {
    let orb = orbit(p)?;
    Ok(orb
        .into_iter()
        .min_by(|a, b| a.key().cmp(&b.key()))
        .expect("orbit is nonempty"))
}

/// The explicit intertwiner Q_i at parameters `p`: it satisfies
/// `Q_i X' = X' Q_i` and `Q_i Y'(p) = Y'(sigma_i(p)) Q_i`.
pub fn intertwiner_qi(i: usize, p: &ParamPair) -> Result<Mat<Scalar>> {
    let field = p.field().clone();
    let zero = field.zero();
    let one = field.one();
    let c1 = p.c1.clone();
    let c2 = p.c2.clone();
    let c1c2 = c1.mul(&c2)?;
    let mut q = Mat::zero_like(6, 6, &zero);
    match i {
        1 => q = Mat::identity_like(6, &one),
        2 => {
            let ic2 = c2.inv()?;
            for (r, c, v) in [
                (0, 1, one.clone()),
                (1, 0, one.clone()),
                (2, 3, ic2.clone()),
                (3, 2, ic2),
                (4, 5, c1.clone()),
                (5, 4, c1),
            ] {
                q.set(r, c, v);
            }
        }
        3 => {
            for (r, c) in [(0, 2), (1, 3), (2, 4), (3, 5), (4, 0), (5, 1)] {
                q.set(r, c, one.clone());
            }
        }
        4 => {
            for (r, c, v) in [
                (0, 3, one.clone()),
                (1, 2, one.clone()),
                (2, 5, c1c2.clone()),
                (3, 4, c1c2),
                (4, 1, c2.clone()),
                (5, 0, c2),
            ] {
                q.set(r, c, v);
            }
        }
        5 => {
            for (r, c) in [(0, 4), (1, 5), (2, 0), (3, 1), (4, 2), (5, 3)] {
                q.set(r, c, one.clone());
            }
        }
        6 => {
            for (r, c, v) in [
                (0, 5, c1c2.clone()),
                (1, 4, c1c2),
                (2, 1, c2.clone()),
                (3, 0, c2),
                (4, 3, one.clone()),
                (5, 2, one),
            ] {
                q.set(r, c, v);
            }
        }
        _ => return Err(Error::Invalid(format!("intertwiner index {i} out of 1..=6"))),
    }
    Ok(q)
}

/// One finite catalog entry together with whether realizing it needs a field
/// extension (a cube root of unity missing from the base field).
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub label: CatalogLabel,
    pub requires_extension: bool,
}

/// The full catalog for one field: the finite labels plus a descriptor of
/// the six-dimensional family.
#[derive(Clone, Debug)]
pub struct CatalogListing {
    pub finite: Vec<CatalogEntry>,
    pub dim6_exclusions: Vec<ExclusionPoint>,
}

/// Enumerates the finite catalog labels admissible in the field's
/// characteristic. Labels needing a cube root of unity the base field lacks
/// are reported as requiring extension rather than omitted.
pub fn enumerate_catalog(field: &Field) -> CatalogListing {
    let p = field.characteristic();
    let has_zeta = field.zeta().is_some();
    let mut finite = Vec::new();
    let signs: &[Sign] = if p == 2 { &[Sign::Plus] } else { &[Sign::Plus, Sign::Minus] };
    let roots: &[CubeRoot] = if p == 3 {
        &[CubeRoot::One]
    } else {
        &[CubeRoot::One, CubeRoot::Zeta, CubeRoot::ZetaSq]
    };
    for &x in signs {
        for &y in roots {
            finite.push(CatalogEntry {
                label: CatalogLabel::Dim1 { x, y },
                requires_extension: y != CubeRoot::One && !has_zeta,
            });
        }
    }
    if p != 3 {
        for v in Dim2Variant::all() {
            finite.push(CatalogEntry {
                label: CatalogLabel::Dim2(v),
                requires_extension: !has_zeta,
            });
        }
    }
    if p != 2 {
        for x in [Sign::Plus, Sign::Minus] {
            finite.push(CatalogEntry { label: CatalogLabel::Dim3 { x }, requires_extension: false });
        }
    }
    CatalogListing { finite, dim6_exclusions: ExclusionPoint::list_for_characteristic(p) }
}

/// Outcome of classification.
#[derive(Clone, Debug)]
pub enum Classification {
    Classified { label: CatalogLabel, witness: Mat<Scalar> },
    Reducible,
    OutsideHypothesis { reason: String },
}

impl Classification {
    pub fn to_json(&self, dim: usize) -> Value {
        match self {
            Classification::Classified { label, witness } => {
                let mut v = json!({
                    "status": "classified",
                    "dim": dim,
                    "label": label.to_json(),
                    "witness_Q": witness_json(witness),
                });
                if let CatalogLabel::Dim6(p) = label {
                    v["canonical_params"] = json!([p.c1().to_string(), p.c2().to_string()]);
                }
                v
            }
            Classification::Reducible => json!({ "status": "reducible", "dim": dim }),
            Classification::OutsideHypothesis { reason } => json!({
                "status": "outside-hypothesis",
                "dim": dim,
                "reason": reason,
            }),
        }
    }
}

fn witness_json(m: &Mat<Scalar>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array((0..m.cols()).map(|j| json!(m.at(i, j).to_string())).collect())
            })
            .collect(),
    )
}

fn trace(m: &Mat<Scalar>) -> Result<Scalar> {
    let mut acc = m.sample().field().zero();
    for d in m.diagonal() {
        acc = acc.add(&d)?;
    }
    Ok(acc)
}

/// Maps a representation onto the catalog.
///
/// Validation failures are errors. Commutator images that are diagonalizable
/// but not diagonal are normalized first by an exact change of basis (the
/// hypothesis is about diagonalizability, and equivalence classes are closed
/// under conjugation); images that cannot be simultaneously diagonalized
/// over the field report "outside hypothesis". A span deficit reports
/// "reducible". Dimensions 1-3 match by trace comparison confirmed by an
/// intertwiner; dimension 6 recovers parameters by searching ordered pairs
/// drawn from the diagonal of Lambda and its inverses.
pub fn classify(r: &Rep) -> Result<Classification> {
    let report = r.validate()?;
    if !report.relations_hold() {
        return Err(Error::InvalidRep(format!(
            "X^2 = I: {}, Y^3 = I: {}",
            report.x_squared_identity, report.y_cubed_identity
        )));
    }
    if !report.lambda_diagonal || !report.gamma_diagonal {
        let lambda = r.lambda()?;
        let gamma = r.gamma()?;
        if lambda.mul(&gamma)? != gamma.mul(&lambda)? {
            return Ok(Classification::OutsideHypothesis {
                reason: "commutator images do not commute".into(),
            });
        }
        match crate::diagonalize::simultaneous_eigenbasis(&[&lambda, &gamma]) {
            Ok(Some(p)) => {
                let pinv = p.inverse()?;
                let normalized = r.conjugate(&pinv)?;
                return Ok(match classify(&normalized)? {
                    Classification::Classified { label, witness } => {
                        Classification::Classified { label, witness: witness.mul(&pinv)? }
                    }
                    other => other,
                });
            }
            Ok(None) => {
                return Ok(Classification::OutsideHypothesis {
                    reason: "commutator images are not simultaneously diagonalizable over the field"
                        .into(),
                })
            }
            Err(Error::Invalid(msg)) => {
                return Ok(Classification::OutsideHypothesis { reason: msg })
            }
            Err(e) => return Err(e),
        }
    }
    let n = r.dim();
    if r.burnside_span_dim()? < n * n {
        return Ok(Classification::Reducible);
    }
    let field = r.field().clone();
    match n {
        1 => {
            let x = r.x().at(0, 0).clone();
            let y = r.y().at(0, 0).clone();
            let sign = if x.is_one() {
                Sign::Plus
            } else if x == field.neg_one() {
                Sign::Minus
            } else {
                return Err(Error::NoCandidateMatch);
            };
            let root = [CubeRoot::One, CubeRoot::Zeta, CubeRoot::ZetaSq]
                .into_iter()
                .find(|c| c.in_field(&field).map_or(false, |v| v == y))
                .ok_or(Error::NoCandidateMatch)?;
            Ok(Classification::Classified {
                label: CatalogLabel::Dim1 { x: sign, y: root },
                witness: Mat::identity_like(1, &field.one()),
            })
        }
        2 | 3 => {
            let tx = trace(r.x())?;
            let ty = trace(r.y())?;
            for entry in enumerate_catalog(&field).finite {
                if entry.label.dim() != n || entry.requires_extension {
                    continue;
                }
                let cand = make_catalog_rep(&entry.label, &field)?;
                if trace(cand.x())? != tx || trace(cand.y())? != ty {
                    continue;
                }
                let basis = intertwiner_space(r, &cand)?;
                if basis.len() == 1 {
                    let witness = basis.into_iter().next().expect("length checked");
                    witness.inverse()?;
                    return Ok(Classification::Classified { label: entry.label, witness });
                }
            }
            Err(Error::NoCandidateMatch)
        }
        6 => {
            let lambda = r.lambda()?;
            let mut values: Vec<Scalar> = Vec::new();
            for d in lambda.diagonal() {
                for v in [d.clone(), d.inv()?] {
                    if !values.contains(&v) {
                        values.push(v);
                    }
                }
            }
            let mut seen: Vec<ParamPair> = Vec::new();
            for a in &values {
                for b in &values {
                    let Ok(pair) = ParamPair::new(a.clone(), b.clone()) else { continue };
                    let canon = canonical_param(&pair)?;
                    if seen.contains(&canon) {
                        continue;
                    }
                    seen.push(canon.clone());
                    let cand = make_dim6_rep(&canon)?;
                    let basis = intertwiner_space(r, &cand)?;
                    if basis.len() == 1 {
                        let witness = basis.into_iter().next().expect("length checked");
                        witness.inverse()?;
                        return Ok(Classification::Classified {
                            label: CatalogLabel::Dim6(canon),
                            witness,
                        });
                    }
                }
            }
            Err(Error::NoCandidateMatch)
        }
        _ => Ok(Classification::OutsideHypothesis {
            reason: format!("dimension {n} is outside the catalog (1, 2, 3, 6)"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_pair(c1: i64, c2: i64) -> ParamPair {
        let f = Field::rationals();
        ParamPair::new(f.from_i64(c1), f.from_i64(c2)).unwrap()
    }

    #[test]
    fn dim1_constructor() {
        let f = Field::with_zeta(0).unwrap();
        let r = make_catalog_rep(
            &CatalogLabel::Dim1 { x: Sign::Minus, y: CubeRoot::Zeta },
            &f,
        )
        .unwrap();
        assert_eq!(*r.x().at(0, 0), f.neg_one());
        assert_eq!(*r.y().at(0, 0), f.zeta().unwrap());
        assert!(r.validate().unwrap().satisfies_hypothesis());
    }

    #[test]
    fn dim3_constructor() {
        let f = Field::rationals();
        let r = make_catalog_rep(&CatalogLabel::Dim3 { x: Sign::Plus }, &f).unwrap();
        assert_eq!(*r.x().at(0, 0), f.one());
        assert_eq!(*r.x().at(1, 1), f.neg_one());
        assert_eq!(*r.y().at(0, 1), f.one());
        assert_eq!(*r.y().at(2, 0), f.one());
        let v = r.validate().unwrap();
        assert!(v.satisfies_hypothesis());
        assert_eq!(r.burnside_span_dim().unwrap(), 9);
    }

    #[test]
    fn dim6_constructor_entries() {
        let f = Field::rationals();
        let r = make_dim6_rep(&q_pair(2, 3)).unwrap();
        assert_eq!(*r.y().at(0, 4), f.from_i64(2));
        assert_eq!(*r.y().at(2, 0), f.from_i64(3));
        assert_eq!(*r.y().at(4, 2), f.parse_scalar("1/6").unwrap());
        assert_eq!(*r.y().at(1, 5), f.one());
        assert!(r.validate().unwrap().satisfies_hypothesis());
    }

    #[test]
    fn dim6_lambda_diagonal_matches_hand_computation() {
        // Lambda = diag(1/c1, c1, 1/c2, c2, c1c2, 1/(c1c2)), worked out by
        // composing the weighted-permutation products by hand.
        let f = Field::rationals();
        let r = make_dim6_rep(&q_pair(2, 3)).unwrap();
        let lam = r.lambda().unwrap();
        let want: Vec<Scalar> = ["1/2", "2", "1/3", "3", "6", "1/6"]
            .iter()
            .map(|s| f.parse_scalar(s).unwrap())
            .collect();
        assert_eq!(lam.diagonal(), want);
    }

    #[test]
    fn inadmissible_labels() {
        let gf3 = Field::prime(3).unwrap();
        assert!(matches!(
            make_catalog_rep(&CatalogLabel::Dim2(Dim2Variant::OneZeta), &gf3),
            Err(Error::InadmissibleLabel(_))
        ));
        let gf2 = Field::prime(2).unwrap();
        assert!(matches!(
            make_catalog_rep(&CatalogLabel::Dim3 { x: Sign::Plus }, &gf2),
            Err(Error::InadmissibleLabel(_))
        ));
        assert!(matches!(
            make_catalog_rep(&CatalogLabel::Dim1 { x: Sign::Minus, y: CubeRoot::One }, &gf2),
            Err(Error::InadmissibleLabel(_))
        ));
    }

    #[test]
    fn dim6_zero_parameter_is_rejected() {
        let f = Field::rationals();
        assert!(matches!(
            ParamPair::new(f.zero(), f.one()),
            Err(Error::ZeroParameter)
        ));
    }

    #[test]
    fn excluded_pairs() {
        assert!(param_excluded(&q_pair(1, 1)));
        assert!(param_excluded(&q_pair(-1, 1)));
        assert!(!param_excluded(&q_pair(2, 3)));
        // In characteristic 2, (-1, 1) = (1, 1).
        let gf2 = Field::prime(2).unwrap();
        let p = ParamPair::new(gf2.neg_one(), gf2.one()).unwrap();
        assert!(param_excluded(&p));
        // (zeta, zeta) is excluded wherever zeta exists.
        let fz = Field::with_zeta(0).unwrap();
        let z = fz.zeta().unwrap();
        assert!(param_excluded(&ParamPair::new(z.clone(), z).unwrap()));
        let gf7 = Field::prime(7).unwrap();
        let m = ParamPair::new(gf7.neg_one(), gf7.neg_one()).unwrap();
        assert!(param_excluded(&m));
    }

    #[test]
    fn orbit_of_generic_pair_has_six_members() {
        let f = Field::rationals();
        let orb = orbit(&q_pair(2, 3)).unwrap();
        assert_eq!(orb.len(), 6);
        let expect = [
            ("2", "3"),
            ("1/2", "1/3"),
            ("3", "1/6"),
            ("1/3", "6"),
            ("1/6", "2"),
            ("6", "1/2"),
        ];
        for (c1, c2) in expect {
            let pair = ParamPair::new(
                f.parse_scalar(c1).unwrap(),
                f.parse_scalar(c2).unwrap(),
            )
            .unwrap();
            assert!(orb.contains(&pair), "missing ({c1},{c2})");
        }
    }

    #[test]
    fn orbit_degenerate_sizes() {
        assert_eq!(orbit(&q_pair(1, 1)).unwrap().len(), 1);
        let fz = Field::with_zeta(0).unwrap();
        let z = fz.zeta().unwrap();
        let orb = orbit(&ParamPair::new(z.clone(), z).unwrap()).unwrap();
        assert_eq!(orb.len(), 2);
    }

    #[test]
    fn canonical_is_constant_on_orbits_and_idempotent() {
        let a = canonical_param(&q_pair(2, 3)).unwrap();
        let f = Field::rationals();
        let b = canonical_param(
            &ParamPair::new(f.from_i64(6), f.parse_scalar("1/2").unwrap()).unwrap(),
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(canonical_param(&a).unwrap(), a);
    }

    #[test]
    fn qi_intertwines_x_and_shifts_parameters() {
        let p = q_pair(2, 3);
        let rep = make_dim6_rep(&p).unwrap();
        for i in 1..=6 {
            let q = intertwiner_qi(i, &p).unwrap();
            let qinv = q.inverse().unwrap();
            let x_conj = q.mul(rep.x()).unwrap().mul(&qinv).unwrap();
            assert_eq!(&x_conj, rep.x(), "Q{i} must commute with X");
            let y_conj = q.mul(rep.y()).unwrap().mul(&qinv).unwrap();
            let target = make_dim6_rep(&orbit_map(i, &p).unwrap()).unwrap();
            assert_eq!(&y_conj, target.y(), "Q{i} must carry Y(p) to Y(sigma_{i}(p))");
        }
    }

    #[test]
    fn catalog_counts_by_characteristic() {
        let q = Field::rationals();
        assert_eq!(enumerate_catalog(&q).finite.len(), 11);
        let gf2 = Field::prime(2).unwrap();
        assert_eq!(enumerate_catalog(&gf2).finite.len(), 6);
        let gf3 = Field::prime(3).unwrap();
        assert_eq!(enumerate_catalog(&gf3).finite.len(), 4);
        // Over Q the zeta labels require an extension; over Q(zeta) none do.
        assert_eq!(
            enumerate_catalog(&q).finite.iter().filter(|e| e.requires_extension).count(),
            7
        );
        let qz = Field::with_zeta(0).unwrap();
        assert!(enumerate_catalog(&qz).finite.iter().all(|e| !e.requires_extension));
    }

    #[test]
    fn classify_dim3_label() {
        let f = Field::rationals();
        let r = make_catalog_rep(&CatalogLabel::Dim3 { x: Sign::Minus }, &f).unwrap();
        match classify(&r).unwrap() {
            Classification::Classified { label: CatalogLabel::Dim3 { x }, .. } => {
                assert_eq!(x, Sign::Minus)
            }
            other => panic!("expected dim-3 label, got {other:?}"),
        }
    }

    #[test]
    fn classify_excluded_pair_reports_reducible() {
        let r = make_dim6_rep(&q_pair(1, 1)).unwrap();
        assert!(matches!(classify(&r).unwrap(), Classification::Reducible));
    }

    #[test]
    fn classify_commuting_pair_reducible() {
        let f = Field::rationals();
        let x = Mat::identity_like(2, &f.one());
        let y = Mat::identity_like(2, &f.one());
        let r = Rep::new(f, x, y).unwrap();
        assert!(matches!(classify(&r).unwrap(), Classification::Reducible));
    }

    #[test]
    fn classify_dim6_roundtrip_under_conjugation() {
        let f = Field::rationals();
        let p = q_pair(2, 3);
        let rep = make_dim6_rep(&p).unwrap();
        // A haphazard invertible conjugator.
        let mut q = Mat::identity_like(6, &f.one());
        q.set(0, 3, f.from_i64(2));
        q.set(1, 4, f.from_i64(-1));
        q.set(2, 5, f.from_i64(3));
        q.set(4, 0, f.from_i64(1));
        let conj = rep.conjugate(&q).unwrap();
        match classify(&conj).unwrap() {
            Classification::Classified { label: CatalogLabel::Dim6(found), witness } => {
                assert_eq!(found, canonical_param(&p).unwrap());
                let canon = make_dim6_rep(&found).unwrap();
                let wi = witness.inverse().unwrap();
                assert_eq!(witness.mul(conj.x()).unwrap().mul(&wi).unwrap(), *canon.x());
            }
            other => panic!("expected dim-6 classification, got {other:?}"),
        }
    }
}
