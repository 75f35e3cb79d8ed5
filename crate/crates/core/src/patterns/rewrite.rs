//! Shortlex string rewriting with Knuth-Bendix completion, used to bound the
//! span dimension of matrix pairs through monoid normal-form counting.
//!
//! Soundness of the count does not depend on confluence: rewriting preserves
//! the represented element, and termination (shortlex decrease) means every
//! word reduces to some irreducible word. When no irreducible words of some
//! length exist, none longer exist either (prefixes of irreducible words are
//! irreducible), so the count is a true upper bound once saturated.

use crate::error::{Error, Result};

/// Letters: 0 = A, 1 = B.
pub type Word = Vec<u8>;

/// A rule lhs -> rhs with lhs shortlex-greater than rhs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

fn shortlex_less(a: &Word, b: &Word) -> bool {
    (a.len(), a.as_slice()) < (b.len(), b.as_slice())
}

fn orient(a: Word, b: Word) -> Option<Rule> {
    if a == b {
        None
    } else if shortlex_less(&a, &b) {
        Some(Rule { lhs: b, rhs: a })
    } else {
        Some(Rule { lhs: a, rhs: b })
    }
}

/// Fully reduces a word, replacing the leftmost redex each pass.
pub fn reduce(word: &Word, rules: &[Rule]) -> Word {
    let mut w = word.clone();
    'outer: loop {
        for start in 0..=w.len() {
            for rule in rules {
                let end = start + rule.lhs.len();
                if end <= w.len() && w[start..end] == rule.lhs[..] {
                    let mut next = Vec::with_capacity(w.len());
                    next.extend_from_slice(&w[..start]);
                    next.extend_from_slice(&rule.rhs);
                    next.extend_from_slice(&w[end..]);
                    w = next;
                    continue 'outer;
                }
            }
        }
        return w;
    }
}

fn is_irreducible(w: &Word, rules: &[Rule]) -> bool {
    for start in 0..w.len() {
        for rule in rules {
            let end = start + rule.lhs.len();
            if end <= w.len() && w[start..end] == rule.lhs[..] {
                return false;
            }
        }
    }
    true
}

/// Critical pairs of two rules: overlaps of a proper suffix of `lhs1` with a
/// prefix of `lhs2`, plus full containment of `lhs2` inside `lhs1`.
fn critical_pairs(r1: &Rule, r2: &Rule) -> Vec<(Word, Word)> {
    let mut pairs = Vec::new();
    let l1 = &r1.lhs;
    let l2 = &r2.lhs;
    // Suffix of l1 meets prefix of l2 (overlap length 1..min-1 of each).
    for k in 1..l1.len().min(l2.len()) {
        if l1[l1.len() - k..] == l2[..k] {
            // Superposed word: l1 + tail of l2.
            let mut sup = l1.clone();
            sup.extend_from_slice(&l2[k..]);
            // Reduce via r1 at position 0:
            let mut via1 = r1.rhs.clone();
            via1.extend_from_slice(&l2[k..]);
            // Reduce via r2 at position len(l1) - k:
            let mut via2 = sup[..l1.len() - k].to_vec();
            via2.extend_from_slice(&r2.rhs);
            pairs.push((via1, via2));
        }
    }
    // l2 occurs inside l1.
    if l2.len() < l1.len() {
        for start in 0..=l1.len() - l2.len() {
            if l1[start..start + l2.len()] == l2[..] {
                let via1 = r1.rhs.clone();
                let mut via2 = l1[..start].to_vec();
                via2.extend_from_slice(&r2.rhs);
                via2.extend_from_slice(&l1[start + l2.len()..]);
                pairs.push((via1, via2));
            }
        }
    }
    pairs
}

/// Knuth-Bendix completion under shortlex; returns the rules and whether all
/// critical pairs resolved within the rule cap.
pub fn knuth_bendix(initial: Vec<Rule>, max_rules: usize) -> (Vec<Rule>, bool) {
    let mut rules = initial;
    loop {
        let mut added = false;
        let snapshot = rules.clone();
        for i in 0..snapshot.len() {
            for j in 0..snapshot.len() {
                for (p, q) in critical_pairs(&snapshot[i], &snapshot[j]) {
                    let p = reduce(&p, &rules);
                    let q = reduce(&q, &rules);
                    if let Some(rule) = orient(p, q) {
                        if !rules.contains(&rule) {
                            rules.push(rule);
                            added = true;
                            if rules.len() > max_rules {
                                return (rules, false);
                            }
                        }
                    }
                }
            }
        }
        if !added {
            break;
        }
        // Inter-reduce: drop rules whose lhs is reducible by the others and
        // normalize right-hand sides.
        let mut k = 0;
        while k < rules.len() {
            let rule = rules[k].clone();
            let others: Vec<Rule> =
                rules.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, r)| r.clone()).collect();
            if !is_irreducible(&rule.lhs, &others) {
                rules.remove(k);
                continue;
            }
            let new_rhs = reduce(&rule.rhs, &others);
            rules[k].rhs = new_rhs;
            k += 1;
        }
    }
    (rules, true)
}

/// Counts irreducible words by breadth-first extension; stops when a length
/// level comes up empty (saturated) or at `max_len`.
pub fn count_irreducible(rules: &[Rule], max_len: usize) -> (usize, bool) {
    let mut count = 1usize; // the empty word
    let mut level: Vec<Word> = vec![Vec::new()];
    for _ in 1..=max_len {
        let mut next = Vec::new();
        for w in &level {
            for letter in [0u8, 1u8] {
                let mut ext = w.clone();
                ext.push(letter);
                // A prefix-irreducible word extended by one letter is
                // reducible only at a suffix redex.
                let reducible = rules.iter().any(|r| {
                    r.lhs.len() <= ext.len()
                        && ext[ext.len() - r.lhs.len()..] == r.lhs[..]
                });
                if !reducible {
                    next.push(ext);
                }
            }
        }
        if next.is_empty() {
            return (count, true);
        }
        count += next.len();
        level = next;
    }
    (count, false)
}

/// The relation presets the analysis needs.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RewritePreset {
    /// A^3 = B^3, ABA = BAB, A^6 = B^6 = 1.
    Case234Cube,
    /// A^2 = B^2, ABA = BAB, A^6 = B^6 = 1.
    Case4Square,
    /// A = B = 1 (test hook).
    Trivial,
}

impl RewritePreset {
    pub fn parse(s: &str) -> Result<RewritePreset> {
        match s {
            "case234_cube" => Ok(RewritePreset::Case234Cube),
            "case4_square" => Ok(RewritePreset::Case4Square),
            "trivial" => Ok(RewritePreset::Trivial),
            other => Err(Error::UnknownPreset(other.to_string())),
        }
    }

    fn rules(self) -> Vec<Rule> {
        let a = |n: usize| vec![0u8; n];
        let b = |n: usize| vec![1u8; n];
        match self {
            RewritePreset::Trivial => vec![
                Rule { lhs: a(1), rhs: Vec::new() },
                Rule { lhs: b(1), rhs: Vec::new() },
            ],
            RewritePreset::Case234Cube => vec![
                Rule { lhs: a(6), rhs: Vec::new() },
                Rule { lhs: b(6), rhs: Vec::new() },
                Rule { lhs: b(3), rhs: a(3) },
                Rule { lhs: vec![1, 0, 1], rhs: vec![0, 1, 0] },
            ],
            RewritePreset::Case4Square => vec![
                Rule { lhs: a(6), rhs: Vec::new() },
                Rule { lhs: b(6), rhs: Vec::new() },
                Rule { lhs: b(2), rhs: a(2) },
                Rule { lhs: vec![1, 0, 1], rhs: vec![0, 1, 0] },
            ],
        }
    }
}

/// Result of a normal-form count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonoidBound {
    /// Number of irreducible words found.
    pub normal_forms: usize,
    /// True when some length level was empty, making the count a genuine
    /// upper bound on the span dimension.
    pub saturated: bool,
    /// True when completion resolved every critical pair.
    pub confluent: bool,
}

/// Upper bound on the span dimension of any matrix pair satisfying the
/// preset's relations, by counting rewrite normal forms.
pub fn monoid_span_bound(preset: RewritePreset, max_len: usize) -> Result<MonoidBound> {
    if max_len < 12 {
        return Err(Error::Invalid(format!("max_len {max_len} < 12")));
    }
    let (rules, confluent) = knuth_bendix(preset.rules(), 256);
    let (normal_forms, saturated) = count_irreducible(&rules, max_len);
    Ok(MonoidBound { normal_forms, saturated, confluent })
}
