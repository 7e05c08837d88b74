//! Skew-symmetric sequences and balanced run length encodings.
//!
//! A run length encoding is balanced when its prefix sums `S` and suffix
//! sums `T` partition `{1, …, n-1}`. Balanced encodings are exactly those of
//! skew-symmetric sequences, and they form a binary tree rooted at `(1)`:
//! the parent of a node is obtained by trimming the one end run equal to 1
//! (see [`reduce`]).

use std::collections::BTreeSet;

use crate::autocorr::{aperiodic_direct, is_barker};
use crate::error::{Error, Result};
use crate::runvector::{run_vector, PrefixSumTables};
use crate::seqcore::{BinarySequence, Parity, RunLengthEncoding};

/// Odd length `n = 2m-1` with `a_{m-i} = (-1)^i a_{m+i}` for `i = 1..m-1`.
pub fn is_skew_symmetric(a: &BinarySequence) -> bool {
    let x = a.as_slice();
    let n = x.len();
    if n.is_multiple_of(2) {
        return false;
    }
    let mid = n / 2;
    (1..=mid).all(|i| {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        x[mid - i] == sign * x[mid + i]
    })
}

pub fn is_balanced(rle: &RunLengthEncoding) -> bool {
    let n = rle.len();
    let tables = PrefixSumTables::new(rle);
    if tables.s().len() + tables.t().len() != n - 1 {
        return false;
    }
    let mut seen = vec![false; n];
    for &x in tables.s().iter().chain(tables.t()) {
        if std::mem::replace(&mut seen[x], true) {
            return false;
        }
    }
    true
}

/// Exactly one end run equal to 1.
pub fn is_reducible(rle: &RunLengthEncoding) -> bool {
    let r = rle.runs();
    let (first, last) = (r[0], r[r.len() - 1]);
    (first == 1 && last > 1) || (first > 1 && last == 1)
}

/// Parent in the reduction tree: `(r_2, …, r_γ - 1)` when `r_1 = 1`,
/// `(r_1 - 1, r_2, …, r_{γ-1})` when `r_γ = 1`.
pub fn reduce(rle: &RunLengthEncoding) -> Option<RunLengthEncoding> {
    if !is_reducible(rle) {
        return None;
    }
    let r = rle.runs();
    let runs = if r[0] == 1 {
        let mut v = r[1..].to_vec();
        *v.last_mut()? -= 1;
        v
    } else {
        let mut v = r[..r.len() - 1].to_vec();
        v[0] -= 1;
        v
    };
    RunLengthEncoding::new(rle.first_sign(), runs).ok()
}

/// The two children of a node: prepend 1 and grow the last run, or grow
/// the first run and append 1.
pub fn children(rle: &RunLengthEncoding) -> [RunLengthEncoding; 2] {
    let r = rle.runs();
    let mut left = Vec::with_capacity(r.len() + 1);
    left.push(1);
    left.extend_from_slice(r);
    *left.last_mut().expect("non-empty") += 1;

    let mut right = r.to_vec();
    right[0] += 1;
    right.push(1);

    let sign = rle.first_sign();
    [
        RunLengthEncoding::new(sign, left).expect("valid runs"),
        RunLengthEncoding::new(sign, right).expect("valid runs"),
    ]
}

/// The `index`-th node (breadth-first order) at depth `gamma - 1`.
fn tree_node(gamma: usize, index: u64) -> RunLengthEncoding {
    let depth = gamma - 1;
    let mut node = RunLengthEncoding::positive(vec![1]).expect("root");
    for level in (0..depth).rev() {
        let [left, right] = children(&node);
        node = if (index >> level) & 1 == 0 {
            left
        } else {
            right
        };
    }
    node
}

/// Lazily walks all `2^{γ-1}` balanced run length encodings with `γ` runs
/// (length `2γ - 1`), in breadth-first tree order with the prepend move
/// first.
pub fn skew_symmetric_rles(gamma: usize) -> Result<impl Iterator<Item = RunLengthEncoding>> {
    if gamma == 0 {
        return Err(Error::InvalidRle("gamma must be at least 1".into()));
    }
    if gamma > 63 {
        return Err(Error::TooLong(2 * gamma - 1));
    }
    Ok((0..1u64 << (gamma - 1)).map(move |i| tree_node(gamma, i)))
}

pub fn enumerate_skew_symmetric(gamma: usize) -> Result<Vec<RunLengthEncoding>> {
    Ok(skew_symmetric_rles(gamma)?.collect())
}

/// Builds a skew-symmetric sequence of length `2m - 1` from its first `m`
/// elements.
pub fn skew_from_half(half: &[i8]) -> Result<BinarySequence> {
    if half.is_empty() {
        return Err(Error::EmptyInput);
    }
    let m = half.len();
    let mut x = half.to_vec();
    for i in 1..m {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        x.push(sign * half[m - 1 - i]);
    }
    BinarySequence::new(x)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewClassification {
    pub is_skew: bool,
    pub is_balanced: bool,
    pub is_reducible: bool,
    pub reduction: Option<RunLengthEncoding>,
}

pub fn classify(a: &BinarySequence) -> SkewClassification {
    let rle = a.to_rle();
    SkewClassification {
        is_skew: is_skew_symmetric(a),
        is_balanced: is_balanced(&rle),
        is_reducible: is_reducible(&rle),
        reduction: reduce(&rle),
    }
}

/// Checked correlation facts of a skew-symmetric sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewFacts {
    pub n: usize,
    pub gamma: usize,
    /// `C_k = 0` for every odd lag.
    pub odd_lags_vanish: bool,
    /// `R_k = C_k` for every even lag `k > 0`.
    pub even_lags_match: bool,
    /// `R_k = -(C_{k-1} + C_{k+1}) / 2` for every odd lag.
    pub odd_lags_match: bool,
    /// `γ = (n + 1) / 2`.
    pub gamma_is_half: bool,
    /// For Barker sequences: `R_k = (-1)^{k+γ+1}` for `k ≥ 2` and
    /// `R_1 = -γ` (odd `γ`) or `1 - γ` (even `γ`). `None` otherwise.
    pub barker_run_vector: Option<bool>,
}

impl SkewFacts {
    pub fn all_hold(&self) -> bool {
        self.odd_lags_vanish
            && self.even_lags_match
            && self.odd_lags_match
            && self.gamma_is_half
            && self.barker_run_vector.unwrap_or(true)
    }
}

pub fn skew_autocorr_facts(a: &BinarySequence) -> Result<SkewFacts> {
    if !is_skew_symmetric(a) {
        return Err(Error::NotSkewSymmetric);
    }
    let n = a.len();
    let c = aperiodic_direct(a);
    let rle = a.to_rle();
    let gamma = rle.gamma();
    let r = run_vector(&rle);
    let lags = 1..n;

    let odd_lags_vanish = lags.clone().filter(|k| k % 2 == 1).all(|k| c.get(k) == 0);
    let even_lags_match = lags
        .clone()
        .filter(|k| k % 2 == 0)
        .all(|k| r.get(k) == c.get(k));
    let odd_lags_match = lags
        .clone()
        .filter(|k| k % 2 == 1)
        .all(|k| 2 * r.get(k) == -(c.get(k - 1) + c.get(k + 1)));
    let barker_run_vector = is_barker(a).then(|| {
        let g = gamma as i64;
        let first = match Parity::of(gamma) {
            Parity::Odd => -g,
            Parity::Even => 1 - g,
        };
        (n < 2 || r.get(1) == first)
            && lags
                .clone()
                .skip(1)
                .all(|k| r.get(k) == Parity::of(k + gamma + 1).sign())
    });
    Ok(SkewFacts {
        n,
        gamma,
        odd_lags_vanish,
        even_lags_match,
        odd_lags_match,
        gamma_is_half: 2 * gamma == n + 1,
        barker_run_vector,
    })
}

/// Run lengths of every skew-symmetric sequence of odd length `n`, found by
/// testing all `2^n` sequences.
pub fn skew_rles_by_scan(n: usize) -> BTreeSet<Vec<usize>> {
    assert!(n % 2 == 1 && n <= 31, "odd n up to 31");
    (0..1u64 << n)
        .map(|i| BinarySequence::from_index(n, i))
        .filter(is_skew_symmetric)
        .map(|a| a.to_rle().runs().to_vec())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rle(runs: &[usize]) -> RunLengthEncoding {
        RunLengthEncoding::positive(runs.to_vec()).unwrap()
    }

    #[test]
    fn skew_predicate() {
        assert!(is_skew_symmetric(&"+".parse().unwrap()));
        assert!(is_skew_symmetric(&"+-+++".parse().unwrap()));
        assert_eq!(rle(&[1, 1, 3]).to_sequence().to_string(), "+-+++");
        assert!(!is_skew_symmetric(&"+-".parse().unwrap()));
        assert!(!is_skew_symmetric(&"++++".parse().unwrap()));
        assert!(is_skew_symmetric(&"+++++--++-+-+".parse().unwrap()));
        assert!(!is_skew_symmetric(&"+++++++---+++".parse().unwrap()));
    }

    #[test]
    fn balanced_predicate() {
        assert!(is_balanced(&rle(&[1, 1, 3])));
        assert!(!is_balanced(&rle(&[6, 7])));
        assert!(is_balanced(&rle(&[1])));
        assert!(!is_balanced(&rle(&[2])));
    }

    #[test]
    fn reductions() {
        assert_eq!(reduce(&rle(&[1, 1, 3])), Some(rle(&[1, 2])));
        assert_eq!(reduce(&rle(&[2, 2, 1])), Some(rle(&[1, 2])));
        assert_eq!(reduce(&rle(&[1, 2, 1])), None);
        assert_eq!(reduce(&rle(&[3])), None);
        assert_eq!(reduce(&rle(&[1, 2])), Some(rle(&[1])));
    }

    #[test]
    fn tree_levels() {
        assert_eq!(enumerate_skew_symmetric(1).unwrap(), vec![rle(&[1])]);
        assert_eq!(
            enumerate_skew_symmetric(2).unwrap(),
            vec![rle(&[1, 2]), rle(&[2, 1])]
        );
        assert_eq!(
            enumerate_skew_symmetric(3).unwrap(),
            vec![
                rle(&[1, 1, 3]),
                rle(&[2, 2, 1]),
                rle(&[1, 2, 2]),
                rle(&[3, 1, 1])
            ]
        );
        assert!(enumerate_skew_symmetric(0).is_err());
    }

    #[test]
    fn children_reduce_to_parent() {
        for gamma in 1..8 {
            for node in enumerate_skew_symmetric(gamma).unwrap() {
                for child in children(&node) {
                    assert!(is_reducible(&child));
                    assert_eq!(reduce(&child), Some(node.clone()));
                }
            }
        }
    }

    #[test]
    fn half_expansion() {
        let a = skew_from_half(&[1, -1, 1]).unwrap();
        assert_eq!(a.to_string(), "+-+++");
        assert!(is_skew_symmetric(&a));
    }

    #[test]
    fn facts_of_small_skew_sequence() {
        let a: BinarySequence = "+-+++".parse().unwrap();
        let c = aperiodic_direct(&a);
        assert_eq!(c.values(), &[5, 0, 1, 0, 1, 0]);
        let facts = skew_autocorr_facts(&a).unwrap();
        assert!(facts.all_hold(), "{facts:?}");
        assert_eq!(facts.barker_run_vector, Some(true));
    }

    #[test]
    fn facts_of_barker_13() {
        let a: BinarySequence = "+++++--++-+-+".parse().unwrap();
        let facts = skew_autocorr_facts(&a).unwrap();
        assert_eq!(facts.gamma, 7);
        assert!(facts.all_hold());
        let r = run_vector(&a.to_rle());
        assert_eq!(r.get(1), -7);
        assert!((2..13).all(|k| r.get(k) == if k % 2 == 0 { 1 } else { -1 }));
    }

    #[test]
    fn facts_of_single_element() {
        let facts = skew_autocorr_facts(&"-".parse().unwrap()).unwrap();
        assert_eq!((facts.n, facts.gamma), (1, 1));
        assert!(facts.all_hold());
        assert_eq!(
            skew_autocorr_facts(&"++".parse().unwrap()),
            Err(Error::NotSkewSymmetric)
        );
    }

    #[test]
    fn classification() {
        let c = classify(&"+-+++".parse().unwrap());
        assert!(c.is_skew && c.is_balanced && c.is_reducible);
        assert_eq!(c.reduction, Some(rle(&[1, 2])));
        let c = classify(&"++++++-------".parse().unwrap());
        assert!(!c.is_skew && !c.is_balanced && !c.is_reducible);
    }
}
