//! Eigenvalue-pattern machinery: symbolic eigenpattern feasibility, the
//! census of diagonal arrangements for the commutator image, zero-pattern
//! derivation, nonsingularity via bipartite matching, and reducibility
//! screens.
//!
//! Positions are 0-based internally; reports print 1-based class names.

pub mod rewrite;

use serde_json::{json, Value};

use crate::error::{Error, Result};
pub use rewrite::{monoid_span_bound, MonoidBound, RewritePreset};

/// Partition of the six diagonal positions into equality classes, plus the
/// inverse-pairing involution on classes (partner index per class; a class
/// paired with itself is self-inverse).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenPattern {
    classes: Vec<Vec<usize>>,
    involution: Option<Vec<usize>>,
}

impl EigenPattern {
    pub fn new(classes: Vec<Vec<usize>>, involution: Option<Vec<usize>>) -> Result<EigenPattern> {
        let mut seen = [false; 6];
        for class in &classes {
            if class.is_empty() {
                return Err(Error::BadPattern("empty class".into()));
            }
            for &p in class {
                if p >= 6 || seen[p] {
                    return Err(Error::BadPattern(format!("position {p} repeated or out of range")));
                }
                seen[p] = true;
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err(Error::BadPattern("classes must cover positions 0..6".into()));
        }
        if let Some(inv) = &involution {
            if inv.len() != classes.len() {
                return Err(Error::BadPattern("involution length mismatch".into()));
            }
            for (c, &p) in inv.iter().enumerate() {
                if p >= classes.len() || inv[p] != c {
                    return Err(Error::BadPattern("involution is not an involution".into()));
                }
                if classes[c].len() != classes[p].len() {
                    return Err(Error::BadPattern(
                        "inverse-paired classes must have equal sizes".into(),
                    ));
                }
            }
        }
        Ok(EigenPattern { classes, involution })
    }

    pub fn from_shape(sizes: &[usize]) -> Result<EigenPattern> {
        let mut classes = Vec::new();
        let mut next = 0usize;
        for &s in sizes {
            classes.push((next..next + s).collect());
            next += s;
        }
        EigenPattern::new(classes, None)
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn involution(&self) -> Option<&[usize]> {
        self.involution.as_deref()
    }

    /// Class of each diagonal position of Lambda.
    pub fn position_classes(&self) -> [usize; 6] {
        let mut out = [0usize; 6];
        for (c, class) in self.classes.iter().enumerate() {
            for &p in class {
                out[p] = c;
            }
        }
        out
    }
}

/// Verdict of the eigenpattern screen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Feasibility {
    /// Lambda would be scalar: contradicts irreducibility.
    InfeasibleScalar,
    /// Any size-preserving involution forces too many self-inverse classes.
    InfeasibleInverse,
    /// All classes singletons: X and Y are monomial matrices.
    Monomial,
    /// Two-class shapes bounded by monoid normal-form counting.
    NeedsMonoidBound,
    /// Shapes handled by the diagonal-arrangement census.
    NeedsCensus,
}

fn involutions_with_min_fixed(sizes: &[usize]) -> Option<usize> {
    // Minimal number of self-paired classes over all size-preserving
    // involutions, or None when no involution exists (cannot happen: the
    // identity always works).
    fn rec(sizes: &[usize], used: &mut Vec<bool>, idx: usize, fixed: usize, best: &mut usize) {
        if idx == sizes.len() {
            *best = (*best).min(fixed);
            return;
        }
        if used[idx] {
            rec(sizes, used, idx + 1, fixed, best);
            return;
        }
        used[idx] = true;
        // Fix idx.
        rec(sizes, used, idx + 1, fixed + 1, best);
        // Pair idx with a later unused class of the same size.
        for j in idx + 1..sizes.len() {
            if !used[j] && sizes[j] == sizes[idx] {
                used[j] = true;
                rec(sizes, used, idx + 1, fixed, best);
                used[j] = false;
            }
        }
        used[idx] = false;
    }
    let mut best = usize::MAX;
    let mut used = vec![false; sizes.len()];
    rec(sizes, &mut used, 0, 0, &mut best);
    (best != usize::MAX).then_some(best)
}

/// Screens an eigenpattern. At most two classes may be self-inverse (one in
/// characteristic 2), since x = 1/x has at most that many solutions.
pub fn eigenpattern_feasible(p: &EigenPattern, char_two: bool) -> Result<Feasibility> {
    let limit = if char_two { 1 } else { 2 };
    if p.num_classes() == 1 {
        return Ok(Feasibility::InfeasibleScalar);
    }
    let self_paired_min = match p.involution() {
        Some(inv) => inv.iter().enumerate().filter(|&(c, &q)| c == q).count(),
        None => involutions_with_min_fixed(&p.class_sizes())
            .ok_or_else(|| Error::BadPattern("no size-preserving involution".into()))?,
    };
    if self_paired_min > limit {
        return Ok(Feasibility::InfeasibleInverse);
    }
    if p.classes.iter().all(|c| c.len() == 1) {
        return Ok(Feasibility::Monomial);
    }
    if p.num_classes() == 2 {
        return Ok(Feasibility::NeedsMonoidBound);
    }
    Ok(Feasibility::NeedsCensus)
}

/// Boolean support mask: true marks a position that may hold a nonzero
/// entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroPattern {
    n: usize,
    mask: Vec<bool>,
}

impl ZeroPattern {
    pub fn empty(n: usize) -> ZeroPattern {
        ZeroPattern { n, mask: vec![false; n * n] }
    }

    pub fn identity(n: usize) -> ZeroPattern {
        let mut z = ZeroPattern::empty(n);
        for i in 0..n {
            z.set(i, i, true);
        }
        z
    }

    pub fn full(n: usize) -> ZeroPattern {
        ZeroPattern { n, mask: vec![true; n * n] }
    }

    pub fn from_positions(n: usize, positions: &[(usize, usize)]) -> ZeroPattern {
        let mut z = ZeroPattern::empty(n);
        for &(i, j) in positions {
            z.set(i, j, true);
        }
        z
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> bool {
        self.mask[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.mask[i * self.n + j] = v;
    }

    pub fn count(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    pub fn union(&self, other: &ZeroPattern) -> ZeroPattern {
        ZeroPattern {
            n: self.n,
            mask: self.mask.iter().zip(&other.mask).map(|(a, b)| a | b).collect(),
        }
    }

    /// Boolean matrix product.
    pub fn product(&self, other: &ZeroPattern) -> ZeroPattern {
        let n = self.n;
        let mut out = ZeroPattern::empty(n);
        for i in 0..n {
            for k in 0..n {
                if self.at(i, k) {
                    for j in 0..n {
                        if other.at(k, j) {
                            out.set(i, j, true);
                        }
                    }
                }
            }
        }
        out
    }

    /// Row strings of '0'/'1' for reports.
    pub fn row_strings(&self) -> Vec<String> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| if self.at(i, j) { '1' } else { '0' }).collect())
            .collect()
    }

    /// Whether the allowed positions admit a transversal (perfect matching
    /// in the rows-by-columns bipartite graph), by augmenting-path search.
    pub fn has_perfect_matching(&self) -> bool {
        let n = self.n;
        let mut match_col: Vec<Option<usize>> = vec![None; n];
        fn try_row(
            z: &ZeroPattern,
            row: usize,
            visited: &mut [bool],
            match_col: &mut [Option<usize>],
        ) -> bool {
            for col in 0..z.n {
                if z.at(row, col) && !visited[col] {
                    visited[col] = true;
                    if match_col[col].map_or(true, |r| try_row(z, r, visited, match_col)) {
                        match_col[col] = Some(row);
                        return true;
                    }
                }
            }
            false
        }
        for row in 0..n {
            let mut visited = vec![false; n];
            if !try_row(self, row, &mut visited, &mut match_col) {
                return false;
            }
        }
        true
    }
}

/// Derives the allowed supports of X and Y for one diagonal arrangement of
/// Gamma (`gamma[i]` = class occupying position i).
///
/// X may be nonzero at (i,j) only when both unit conditions are forced:
/// the Lambda classes of i and j are inverse-paired and so are the Gamma
/// classes. Y may be nonzero at (i,j) only when the Lambda class of i is
/// inverse-paired with the Gamma class of j. Under generic-eigenvalue
/// semantics a unit condition holds exactly when the involution forces it.
pub fn derive_zero_patterns(
    p: &EigenPattern,
    gamma: &[usize],
) -> Result<(ZeroPattern, ZeroPattern)> {
    let inv = p
        .involution()
        .ok_or_else(|| Error::BadPattern("zero patterns need the inverse pairing".into()))?
        .to_vec();
    if gamma.len() != 6 {
        return Err(Error::BadPattern("gamma arrangement must cover 6 positions".into()));
    }
    let sizes = p.class_sizes();
    let mut counts = vec![0usize; sizes.len()];
    for &c in gamma {
        if c >= sizes.len() {
            return Err(Error::BadPattern(format!("class {c} out of range")));
        }
        counts[c] += 1;
    }
    if counts != sizes {
        return Err(Error::BadPattern("arrangement does not match the class multiset".into()));
    }
    let lambda = p.position_classes();
    let mut xmask = ZeroPattern::empty(6);
    let mut ymask = ZeroPattern::empty(6);
    for i in 0..6 {
        for j in 0..6 {
            let lam_ok = inv[lambda[i]] == lambda[j];
            let gam_ok = inv[gamma[i]] == gamma[j];
            xmask.set(i, j, lam_ok && gam_ok);
            ymask.set(i, j, inv[lambda[i]] == gamma[j]);
        }
    }
    Ok((xmask, ymask))
}

/// All distinct arrangements of the pattern's class multiset over the six
/// diagonal positions, in lexicographic order of class sequences.
pub fn enumerate_gamma_arrangements(p: &EigenPattern) -> Vec<Vec<usize>> {
    let sizes = p.class_sizes();
    let mut remaining = sizes;
    let mut current = Vec::with_capacity(6);
    let mut out = Vec::new();
    fn rec(
        remaining: &mut Vec<usize>,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == 6 {
            out.push(current.clone());
            return;
        }
        for c in 0..remaining.len() {
            if remaining[c] > 0 {
                remaining[c] -= 1;
                current.push(c);
                rec(remaining, current, out);
                current.pop();
                remaining[c] += 1;
            }
        }
    }
    rec(&mut remaining, &mut current, &mut out);
    out
}

/// Union of the supports of all boolean words in {I, X, Y}: closing
/// {I, X, Y} under product and union until stable and counting the true
/// positions. The count bounds the span dimension of any matrix pair
/// supported on the masks, so a value below n^2 certifies reducibility.
pub fn closure_span_bound(xmask: &ZeroPattern, ymask: &ZeroPattern) -> usize {
    let n = xmask.n();
    let mut u = ZeroPattern::identity(n).union(xmask).union(ymask);
    loop {
        let next = u.union(&u.product(&u));
        if next == u {
            return u.count();
        }
        u = next;
    }
}

/// The six census-shaped cases of the eigenvalue analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CensusCase {
    Five,
    Seven,
    Eight,
    NineA,
    NineB,
    Ten,
}

impl CensusCase {
    pub fn all() -> [CensusCase; 6] {
        [
            CensusCase::Five,
            CensusCase::Seven,
            CensusCase::Eight,
            CensusCase::NineA,
            CensusCase::NineB,
            CensusCase::Ten,
        ]
    }

    pub fn id(self) -> &'static str {
        match self {
            CensusCase::Five => "5",
            CensusCase::Seven => "7",
            CensusCase::Eight => "8",
            CensusCase::NineA => "9a",
            CensusCase::NineB => "9b",
            CensusCase::Ten => "10",
        }
    }

    pub fn parse(s: &str) -> Result<CensusCase> {
        match s {
            "5" => Ok(CensusCase::Five),
            "7" => Ok(CensusCase::Seven),
            "8" => Ok(CensusCase::Eight),
            "9a" => Ok(CensusCase::NineA),
            "9b" => Ok(CensusCase::NineB),
            "10" => Ok(CensusCase::Ten),
            other => Err(Error::UnknownCase(other.to_string())),
        }
    }

    /// The eigenpattern of the case: the partition of Lambda's diagonal and
    /// the forced inverse pairing.
    pub fn pattern(self) -> EigenPattern {
        let (classes, inv): (Vec<Vec<usize>>, Vec<usize>) = match self {
            CensusCase::Five => (vec![vec![0, 1, 2, 3], vec![4], vec![5]], vec![0, 2, 1]),
            CensusCase::Seven => (vec![vec![0, 1], vec![2, 3], vec![4, 5]], vec![0, 2, 1]),
            CensusCase::Eight => {
                (vec![vec![0, 1, 2], vec![3], vec![4], vec![5]], vec![0, 1, 3, 2])
            }
            CensusCase::NineA => {
                (vec![vec![0, 1], vec![2, 3], vec![4], vec![5]], vec![0, 1, 3, 2])
            }
            CensusCase::NineB => {
                (vec![vec![0, 1], vec![2, 3], vec![4], vec![5]], vec![1, 0, 3, 2])
            }
            CensusCase::Ten => {
                (vec![vec![0, 1], vec![2], vec![3], vec![4], vec![5]], vec![0, 2, 1, 4, 3])
            }
        };
        EigenPattern::new(classes, Some(inv)).expect("case patterns are well-formed")
    }

    /// Survivor counts reported by the reference analysis, for comparison.
    pub fn reference_survivors(self) -> usize {
        match self {
            CensusCase::Five => 12,
            CensusCase::Seven => 16,
            CensusCase::Eight => 6,
            CensusCase::NineA => 4,
            CensusCase::NineB => 32,
            CensusCase::Ten => 8,
        }
    }

    /// Golden (arrangement, nonsingular) counts.
    pub fn golden_counts(self) -> (usize, usize) {
        match self {
            CensusCase::Five => (30, 14),
            CensusCase::Seven => (90, 22),
            CensusCase::Eight => (120, 20),
            CensusCase::NineA => (180, 20),
            CensusCase::NineB => (180, 44),
            CensusCase::Ten => (360, 24),
        }
    }
}

/// Why an arrangement is ruled out, or that it survives the screens.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArrangementVerdict {
    /// No transversal: X or Y forced singular.
    Singular,
    /// Lambda = Gamma or Lambda*Gamma = I forces reducibility.
    DegenerateCommutators,
    /// Boolean closure bound below 36 certifies reducibility.
    ClosureReducible,
    /// Passes every uniform screen.
    Survivor,
}

impl ArrangementVerdict {
    pub fn name(self) -> &'static str {
        match self {
            ArrangementVerdict::Singular => "singular",
            ArrangementVerdict::DegenerateCommutators => "degenerate-commutators",
            ArrangementVerdict::ClosureReducible => "closure-reducible",
            ArrangementVerdict::Survivor => "survivor",
        }
    }
}

/// Full record for one Gamma arrangement.
#[derive(Clone, Debug)]
pub struct ArrangementDetail {
    pub index: usize,
    pub gamma: Vec<usize>,
    pub x_mask: ZeroPattern,
    pub y_mask: ZeroPattern,
    pub x_matching: bool,
    pub y_matching: bool,
    pub lambda_eq_gamma: bool,
    pub lambda_gamma_identity: bool,
    pub closure_bound: usize,
    pub verdict: ArrangementVerdict,
}

/// One census run: every arrangement with its verdict plus the three counts.
#[derive(Clone, Debug)]
pub struct CaseReport {
    pub case: CensusCase,
    pub feasibility: Feasibility,
    pub arrangement_count: usize,
    pub nonsingular_count: usize,
    pub survivor_count: usize,
    pub arrangements: Vec<ArrangementDetail>,
}

impl CaseReport {
    pub fn to_json(&self) -> Value {
        json!({
            "case": self.case.id(),
            "arrangement_count": self.arrangement_count,
            "nonsingular_count": self.nonsingular_count,
            "survivor_count": self.survivor_count,
            "reference_survivors": self.case.reference_survivors(),
            "arrangements": self.arrangements.iter().map(|a| json!({
                "index": a.index,
                "gamma": a.gamma,
                "x_mask": a.x_mask.row_strings(),
                "y_mask": a.y_mask.row_strings(),
                "x_matching": a.x_matching,
                "y_matching": a.y_matching,
                "lambda_eq_gamma": a.lambda_eq_gamma,
                "lambda_gamma_identity": a.lambda_gamma_identity,
                "closure_bound": a.closure_bound,
                "verdict": a.verdict.name(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Runs the census for one case: enumerate arrangements, filter by
/// matching, then apply the degenerate-commutator and closure screens.
///
/// `char_two` restricts self-inverse classes to one, which empties the cases
/// that need two.
pub fn run_case_census(case: CensusCase, char_two: bool) -> Result<CaseReport> {
    let pattern = case.pattern();
    let feasibility = eigenpattern_feasible(&pattern, char_two)?;
    if feasibility != Feasibility::NeedsCensus {
        return Ok(CaseReport {
            case,
            feasibility,
            arrangement_count: 0,
            nonsingular_count: 0,
            survivor_count: 0,
            arrangements: Vec::new(),
        });
    }
    let lambda = pattern.position_classes();
    let inv = pattern.involution().expect("census patterns carry involutions").to_vec();
    let arrangements = enumerate_gamma_arrangements(&pattern);
    let mut details = Vec::with_capacity(arrangements.len());
    let mut nonsingular = 0usize;
    let mut survivors = 0usize;
    for (index, gamma) in arrangements.iter().enumerate() {
        let (x_mask, y_mask) = derive_zero_patterns(&pattern, gamma)?;
        let x_matching = x_mask.has_perfect_matching();
        let y_matching = y_mask.has_perfect_matching();
        let lambda_eq_gamma = (0..6).all(|i| gamma[i] == lambda[i]);
        let lambda_gamma_identity = (0..6).all(|i| gamma[i] == inv[lambda[i]]);
        let closure_bound = closure_span_bound(&x_mask, &y_mask);
        let verdict = if !(x_matching && y_matching) {
            ArrangementVerdict::Singular
        } else if lambda_eq_gamma || lambda_gamma_identity {
            nonsingular += 1;
            ArrangementVerdict::DegenerateCommutators
        } else if closure_bound < 36 {
            nonsingular += 1;
            ArrangementVerdict::ClosureReducible
        } else {
            nonsingular += 1;
            survivors += 1;
            ArrangementVerdict::Survivor
        };
        details.push(ArrangementDetail {
            index,
            gamma: gamma.clone(),
            x_mask,
            y_mask,
            x_matching,
            y_matching,
            lambda_eq_gamma,
            lambda_gamma_identity,
            closure_bound,
            verdict,
        });
    }
    Ok(CaseReport {
        case,
        feasibility,
        arrangement_count: details.len(),
        nonsingular_count: nonsingular,
        survivor_count: survivors,
        arrangements: details,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn feasibility_examples() {
        let scalar = EigenPattern::from_shape(&[6]).unwrap();
        assert_eq!(eigenpattern_feasible(&scalar, false).unwrap(), Feasibility::InfeasibleScalar);
        let three_two_one = EigenPattern::from_shape(&[3, 2, 1]).unwrap();
        assert_eq!(
            eigenpattern_feasible(&three_two_one, false).unwrap(),
            Feasibility::InfeasibleInverse
        );
        let singletons = EigenPattern::from_shape(&[1, 1, 1, 1, 1, 1]).unwrap();
        assert_eq!(eigenpattern_feasible(&singletons, false).unwrap(), Feasibility::Monomial);
        for shape in [[5usize, 1].as_slice(), &[4, 2], &[3, 3]] {
            let p = EigenPattern::from_shape(shape).unwrap();
            assert_eq!(eigenpattern_feasible(&p, false).unwrap(), Feasibility::NeedsMonoidBound);
        }
        for case in CensusCase::all() {
            assert_eq!(
                eigenpattern_feasible(&case.pattern(), false).unwrap(),
                Feasibility::NeedsCensus
            );
        }
        // Characteristic 2 permits a single self-inverse class.
        assert_eq!(
            eigenpattern_feasible(&CensusCase::Eight.pattern(), true).unwrap(),
            Feasibility::InfeasibleInverse
        );
        assert_eq!(
            eigenpattern_feasible(&CensusCase::Seven.pattern(), true).unwrap(),
            Feasibility::NeedsCensus
        );
    }

    #[test]
    fn arrangement_counts_match_multinomials() {
        fn multinomial(sizes: &[usize]) -> usize {
            let fact = |n: usize| (1..=n).product::<usize>();
            sizes.iter().fold(fact(6), |acc, &s| acc / fact(s))
        }
        // Every partition shape of 6 with at most 5 parts.
        let shapes: Vec<Vec<usize>> = vec![
            vec![6],
            vec![5, 1],
            vec![4, 2],
            vec![3, 3],
            vec![4, 1, 1],
            vec![3, 2, 1],
            vec![2, 2, 2],
            vec![3, 1, 1, 1],
            vec![2, 2, 1, 1],
            vec![2, 1, 1, 1, 1],
        ];
        for shape in shapes {
            let p = EigenPattern::from_shape(&shape).unwrap();
            let got = enumerate_gamma_arrangements(&p).len();
            assert_eq!(got, multinomial(&shape), "shape {shape:?}");
        }
    }

    #[test]
    fn matching_basics() {
        assert!(ZeroPattern::identity(6).has_perfect_matching());
        let mut no_row = ZeroPattern::full(6);
        for j in 0..6 {
            no_row.set(3, j, false);
        }
        assert!(!no_row.has_perfect_matching());
    }

    #[test]
    fn matching_agrees_with_permutation_bruteforce_on_census_masks() {
        fn brute(z: &ZeroPattern) -> bool {
            let mut perm: Vec<usize> = (0..6).collect();
            // Heap's algorithm over all 720 permutations.
            fn heap(k: usize, perm: &mut Vec<usize>, z: &ZeroPattern, found: &mut bool) {
                if *found {
                    return;
                }
                if k == 1 {
                    if (0..6).all(|i| z.at(i, perm[i])) {
                        *found = true;
                    }
                    return;
                }
                for i in 0..k {
                    heap(k - 1, perm, z, found);
                    if k % 2 == 0 {
                        perm.swap(i, k - 1);
                    } else {
                        perm.swap(0, k - 1);
                    }
                }
            }
            let mut found = false;
            heap(6, &mut perm, z, &mut found);
            found
        }
        for case in CensusCase::all() {
            let pattern = case.pattern();
            for gamma in enumerate_gamma_arrangements(&pattern) {
                let (x, y) = derive_zero_patterns(&pattern, &gamma).unwrap();
                assert_eq!(x.has_perfect_matching(), brute(&x));
                assert_eq!(y.has_perfect_matching(), brute(&y));
            }
        }
    }

    #[test]
    fn monomial_pattern_gives_permutation_supports() {
        let p = EigenPattern::new(
            vec![vec![0], vec![1], vec![2], vec![3], vec![4], vec![5]],
            Some(vec![1, 0, 3, 2, 5, 4]),
        )
        .unwrap();
        // Y masks are always permutation supports; X masks allow at most one
        // position per row and column, exactly one whenever nonsingularity
        // is possible at all.
        for gamma in enumerate_gamma_arrangements(&p) {
            let (x, y) = derive_zero_patterns(&p, &gamma).unwrap();
            for i in 0..6 {
                assert_eq!((0..6).filter(|&j| y.at(i, j)).count(), 1);
                assert_eq!((0..6).filter(|&j| y.at(j, i)).count(), 1);
                assert!((0..6).filter(|&j| x.at(i, j)).count() <= 1);
                assert!((0..6).filter(|&j| x.at(j, i)).count() <= 1);
            }
            if x.has_perfect_matching() {
                for i in 0..6 {
                    assert_eq!((0..6).filter(|&j| x.at(i, j)).count(), 1);
                }
            }
        }
    }

    #[test]
    fn case7_first_arrangement_x_mask_matches_reference_support() {
        // Arrangement (a,a,b,b,c,c): the X support listed for that case is
        // rows 1,2 full on columns 1,2 and anti-blocks on {3,4}x{5,6}.
        let pattern = CensusCase::Seven.pattern();
        let gamma = vec![0, 0, 1, 1, 2, 2];
        let (x, _) = derive_zero_patterns(&pattern, &gamma).unwrap();
        let want = ZeroPattern::from_positions(
            6,
            &[
                (0, 0),
                (0, 1),
                (1, 0),
                (1, 1),
                (2, 4),
                (2, 5),
                (3, 4),
                (3, 5),
                (4, 2),
                (4, 3),
                (5, 2),
                (5, 3),
            ],
        );
        assert_eq!(x, want);
    }

    #[test]
    fn derive_patterns_commute_with_relabeling() {
        // Simultaneously permuting positions in the pattern and the
        // arrangement permutes both masks by the same row/column relabeling.
        let case = CensusCase::NineB;
        let pattern = case.pattern();
        let perm = [3usize, 0, 4, 1, 5, 2];
        let permuted_classes: Vec<Vec<usize>> = pattern
            .classes
            .iter()
            .map(|class| {
                let mut c: Vec<usize> = class.iter().map(|&p| perm[p]).collect();
                c.sort();
                c
            })
            .collect();
        let permuted =
            EigenPattern::new(permuted_classes, pattern.involution.clone()).unwrap();
        let gamma = vec![0, 1, 2, 3, 0, 1];
        let mut gamma_perm = vec![0usize; 6];
        for i in 0..6 {
            gamma_perm[perm[i]] = gamma[i];
        }
        let (x1, y1) = derive_zero_patterns(&pattern, &gamma).unwrap();
        let (x2, y2) = derive_zero_patterns(&permuted, &gamma_perm).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(x1.at(i, j), x2.at(perm[i], perm[j]));
                assert_eq!(y1.at(i, j), y2.at(perm[i], perm[j]));
            }
        }
    }

    #[test]
    fn closure_bound_basics() {
        let id = ZeroPattern::identity(6);
        assert_eq!(closure_span_bound(&id, &id), 6);
        let full = ZeroPattern::full(6);
        assert_eq!(closure_span_bound(&full, &full), 36);
    }

    #[test]
    fn closure_bound_agrees_with_word_enumeration_oracle() {
        // Oracle: enumerate the monoid of boolean matrices generated by
        // {I, X, Y} and union the supports of all its elements.
        fn oracle(x: &ZeroPattern, y: &ZeroPattern) -> usize {
            let n = x.n();
            let mut seen: Vec<ZeroPattern> =
                vec![ZeroPattern::identity(n), x.clone(), y.clone()];
            let mut queue = seen.clone();
            while let Some(m) = queue.pop() {
                for g in [x, y] {
                    let prod = m.product(g);
                    if !seen.contains(&prod) {
                        seen.push(prod.clone());
                        queue.push(prod);
                    }
                }
            }
            let mut union = ZeroPattern::empty(n);
            for m in &seen {
                union = union.union(m);
            }
            union.count()
        }
        let pattern = CensusCase::Five.pattern();
        for gamma in enumerate_gamma_arrangements(&pattern).into_iter().take(12) {
            let (x, y) = derive_zero_patterns(&pattern, &gamma).unwrap();
            assert_eq!(closure_span_bound(&x, &y), oracle(&x, &y));
        }
        let p7 = CensusCase::Seven.pattern();
        for gamma in [vec![0, 0, 1, 2, 2, 1], vec![0, 0, 1, 2, 1, 2]] {
            let (x, y) = derive_zero_patterns(&p7, &gamma).unwrap();
            assert_eq!(closure_span_bound(&x, &y), oracle(&x, &y));
        }
    }

    #[test]
    fn census_golden_counts() {
        let expected = [
            (CensusCase::Five, 30, 14),
            (CensusCase::Seven, 90, 22),
            (CensusCase::Eight, 120, 20),
            (CensusCase::NineA, 180, 20),
            (CensusCase::NineB, 180, 44),
            (CensusCase::Ten, 360, 24),
        ];
        for (case, arrangements, nonsingular) in expected {
            let report = run_case_census(case, false).unwrap();
            assert_eq!(report.arrangement_count, arrangements, "case {}", case.id());
            assert_eq!(report.nonsingular_count, nonsingular, "case {}", case.id());
            assert!(report.survivor_count <= report.nonsingular_count);
            assert!(report.nonsingular_count <= report.arrangement_count);
        }
    }

    #[test]
    fn census_char2_mode_empties_two_self_inverse_cases() {
        for case in [CensusCase::Eight, CensusCase::NineA] {
            let report = run_case_census(case, true).unwrap();
            assert_eq!(report.feasibility, Feasibility::InfeasibleInverse);
            assert_eq!(report.arrangement_count, 0);
        }
        let report = run_case_census(CensusCase::Seven, true).unwrap();
        assert_eq!(report.feasibility, Feasibility::NeedsCensus);
        assert_eq!(report.arrangement_count, 90);
    }
}
