//! Desk-scale search for binary sequences with low autocorrelation.
//!
//! [`exhaustive_search`] scores every candidate. [`pruned_search`] grows the
//! sequence from both ends at once: once the first and last `w` elements are
//! fixed, the high lags `C_{n-1}, …, C_{n-w}` no longer depend on the middle.
//! They are obtained from the border's run structure (tail run values plus
//! the backward second-difference recurrence) and a branch is dropped as soon
//! as one of them already rules out the bound or the incumbent.
//!
//! Negation is quotiented out by fixing `a_1 = +`; reversal optionally as
//! well. Optima are reported as their lexicographically smallest sign string
//! (`+` before `-`) over the quotiented symmetries.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::autocorr::MeritFactor;
use crate::error::{Error, Result};
use crate::par::{fold_range, map_slice, Parallelism};
use crate::runvector::{tail_formula, tail_run_values, PartialRunInfo};
use crate::seqcore::{BinarySequence, Parity};
use crate::skew::skew_from_half;

/// Default largest `n` searched without an explicit override.
pub const DEFAULT_LIMIT: usize = 24;
/// Default largest `n` for skew-restricted searches (`2^{(n+1)/2}` candidates).
pub const DEFAULT_SKEW_LIMIT: usize = 33;

/// Frontier size at which the pruned search hands subtrees to workers.
const SPLIT_TARGET: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    /// Minimise the peak sidelobe level.
    MinPsl,
    /// Maximise the merit factor, i.e. minimise `Σ_{k≥1} C_k²`.
    MaxMerit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpec {
    pub n: usize,
    pub objective: Objective,
    /// Only skew-symmetric candidates (odd `n`).
    pub restrict_skew: bool,
    /// Largest border width at which branches are tested; defaults to
    /// `⌊n/2⌋`, the widest border whose ends do not overlap.
    pub prune_depth: Option<usize>,
    /// Admissible sequences must have a peak sidelobe level within this cap.
    pub bound: Option<u64>,
    /// Also identify a sequence with its reversal.
    pub quotient_reversal: bool,
    /// Overrides [`DEFAULT_LIMIT`] / [`DEFAULT_SKEW_LIMIT`].
    pub limit: Option<usize>,
    /// Keep the borders of pruned branches (for soundness replay).
    pub record_pruned: bool,
    pub parallelism: Parallelism,
}

impl SearchSpec {
    pub fn new(n: usize, objective: Objective) -> Self {
        Self {
            n,
            objective,
            restrict_skew: false,
            prune_depth: None,
            bound: None,
            quotient_reversal: false,
            limit: None,
            record_pruned: false,
            parallelism: Parallelism::default(),
        }
    }

    pub fn restrict_skew(mut self, on: bool) -> Self {
        self.restrict_skew = on;
        self
    }

    pub fn bound(mut self, bound: Option<u64>) -> Self {
        self.bound = bound;
        self
    }

    pub fn prune_depth(mut self, depth: Option<usize>) -> Self {
        self.prune_depth = depth;
        self
    }

    pub fn quotient_reversal(mut self, on: bool) -> Self {
        self.quotient_reversal = on;
        self
    }

    pub fn limit(mut self, limit: Option<usize>) -> Self {
        self.limit = limit;
        self
    }

    pub fn record_pruned(mut self, on: bool) -> Self {
        self.record_pruned = on;
        self
    }

    pub fn parallelism(mut self, mode: Parallelism) -> Self {
        self.parallelism = mode;
        self
    }

    fn validate(&self) -> Result<usize> {
        if self.n < 2 {
            return Err(Error::InvalidSearch(format!(
                "n = {} (need n >= 2)",
                self.n
            )));
        }
        if self.restrict_skew && self.n.is_multiple_of(2) {
            return Err(Error::InvalidSearch(format!(
                "skew-symmetric sequences have odd length, got n = {}",
                self.n
            )));
        }
        let limit = self.limit.unwrap_or(if self.restrict_skew {
            DEFAULT_SKEW_LIMIT
        } else {
            DEFAULT_LIMIT
        });
        if self.n > limit {
            return Err(Error::InvalidSearch(format!(
                "n = {} exceeds the search limit {limit}; raise it explicitly",
                self.n
            )));
        }
        if self.n > 63 {
            return Err(Error::InvalidSearch("n above 63 is not supported".into()));
        }
        let depth = self.prune_depth.unwrap_or(self.n / 2);
        if depth == 0 || depth > self.n.div_ceil(2) {
            return Err(Error::InvalidSearch(format!(
                "prune depth {depth} outside 1..={}",
                self.n.div_ceil(2)
            )));
        }
        Ok(depth.min(self.n / 2))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectiveValue {
    Psl(u64),
    Merit(MeritFactor),
}

impl std::fmt::Display for ObjectiveValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ObjectiveValue::Psl(p) => write!(f, "{p}"),
            ObjectiveValue::Merit(m) => write!(f, "{m}"),
        }
    }
}

/// Border of a pruned branch: first and last `w` elements.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PrunedBranch {
    pub prefix: Vec<i8>,
    pub suffix: Vec<i8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub n: usize,
    pub objective: Objective,
    /// `None` when no admissible sequence exists.
    pub best: Option<ObjectiveValue>,
    /// Canonical optimal sequences, sorted by sign string.
    pub optima: Vec<BinarySequence>,
    pub nodes_visited: u64,
    pub nodes_pruned: u64,
    pub pruned_branches: Vec<PrunedBranch>,
}

/// Peak sidelobe level and sidelobe energy without allocating.
fn score(x: &[i8]) -> (u64, u64) {
    let n = x.len();
    let mut psl = 0u64;
    let mut energy = 0u64;
    for k in 1..n {
        let c: i64 = x[..n - k]
            .iter()
            .zip(&x[k..])
            .map(|(&a, &b)| i64::from(a * b))
            .sum();
        psl = psl.max(c.unsigned_abs());
        energy += (c * c) as u64;
    }
    (psl, energy)
}

fn sign_key(x: impl Iterator<Item = i8>) -> Vec<u8> {
    x.map(|e| if e > 0 { b'+' } else { b'-' }).collect()
}

/// Lexicographically smallest sign string among `±x` (and `±reverse(x)`).
fn canonical(x: &[i8], reversal: bool) -> Vec<u8> {
    let flip = |first: i8| if first > 0 { 1 } else { -1 };
    let forward = {
        let f = flip(x[0]);
        sign_key(x.iter().map(|&e| e * f))
    };
    if !reversal {
        return forward;
    }
    let backward = {
        let f = flip(x[x.len() - 1]);
        sign_key(x.iter().rev().map(|&e| e * f))
    };
    forward.min(backward)
}

#[derive(Debug, Default)]
struct Tally {
    best: Option<u64>,
    optima: BTreeSet<Vec<u8>>,
    visited: u64,
    pruned: u64,
    pruned_branches: Vec<PrunedBranch>,
}

impl Tally {
    fn offer(&mut self, key: u64, x: &[i8], reversal: bool) {
        match self.best {
            Some(b) if key > b => return,
            Some(b) if key == b => {}
            _ => {
                self.best = Some(key);
                self.optima.clear();
            }
        }
        self.optima.insert(canonical(x, reversal));
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.visited += other.visited;
        self.pruned += other.pruned;
        self.pruned_branches.extend(other.pruned_branches);
        match (self.best, other.best) {
            (_, None) => {}
            (None, Some(_)) => {
                self.best = other.best;
                self.optima = other.optima;
            }
            (Some(a), Some(b)) if b < a => {
                self.best = other.best;
                self.optima = other.optima;
            }
            (Some(a), Some(b)) if a == b => self.optima.extend(other.optima),
            _ => {}
        }
        self
    }

    fn finish(self, spec: &SearchSpec) -> SearchResult {
        let optima = self
            .optima
            .into_iter()
            .map(|key| {
                BinarySequence::new(
                    key.iter()
                        .map(|&c| if c == b'+' { 1 } else { -1 })
                        .collect(),
                )
                .expect("non-empty")
            })
            .collect();
        let mut pruned_branches = self.pruned_branches;
        pruned_branches.sort();
        SearchResult {
            n: spec.n,
            objective: spec.objective,
            best: self.best.map(|key| match spec.objective {
                Objective::MinPsl => ObjectiveValue::Psl(key),
                Objective::MaxMerit => ObjectiveValue::Merit(MeritFactor::from_energy(spec.n, key)),
            }),
            optima,
            nodes_visited: self.visited,
            nodes_pruned: self.pruned,
            pruned_branches,
        }
    }
}

fn objective_key(objective: Objective, psl: u64, energy: u64) -> u64 {
    match objective {
        Objective::MinPsl => psl,
        Objective::MaxMerit => energy,
    }
}

fn admissible(spec: &SearchSpec, psl: u64) -> bool {
    spec.bound.is_none_or(|b| psl <= b)
}

/// Scores every candidate with `a_1 = +` (every skew-symmetric candidate
/// when restricted).
pub fn exhaustive_search(spec: &SearchSpec) -> Result<SearchResult> {
    spec.validate()?;
    let n = spec.n;
    let candidates = if spec.restrict_skew {
        1u64 << (n.div_ceil(2) - 1)
    } else {
        1u64 << (n - 1)
    };
    let tally = fold_range(
        0..candidates,
        spec.parallelism,
        Tally::default,
        |mut tally, index| {
            let a = if spec.restrict_skew {
                let half = BinarySequence::from_index(n.div_ceil(2), index);
                skew_from_half(half.as_slice()).expect("valid half")
            } else {
                BinarySequence::from_index(n, index)
            };
            tally.visited += 1;
            let (psl, energy) = score(a.as_slice());
            if admissible(spec, psl) {
                tally.offer(
                    objective_key(spec.objective, psl, energy),
                    a.as_slice(),
                    spec.quotient_reversal,
                );
            }
            tally
        },
        Tally::merge,
    );
    Ok(tally.finish(spec))
}

/// Search state after fixing the outer `w` elements on both ends.
#[derive(Debug, Clone)]
struct Border {
    x: Vec<i8>,
    w: usize,
    /// prefix sums `s_j < w` and suffix sums `t_j < w`
    s: Vec<usize>,
    t: Vec<usize>,
    /// lag-indexed `f_S`, `f_T`
    f_s: Vec<i8>,
    f_t: Vec<i8>,
    /// `high[k] = C_{n-k}` for `k ≤ w`
    high: Vec<i64>,
    energy: u64,
}

impl Border {
    fn empty(n: usize) -> Self {
        Self {
            x: vec![0; n],
            w: 0,
            s: Vec::new(),
            t: Vec::new(),
            f_s: vec![0; n + 1],
            f_t: vec![0; n + 1],
            high: vec![0],
            energy: 0,
        }
    }

    fn n(&self) -> usize {
        self.x.len()
    }

    /// Places `left` at position `w + 1` and `right` at `n - w`, then derives
    /// `C_{n-w}` for the widened border.
    fn extend(&self, left: i8, right: i8) -> Border {
        let n = self.n();
        let (p, q) = (self.w, n - 1 - self.w);
        debug_assert!(p < q);
        let mut b = self.clone();
        b.x[p] = left;
        b.x[q] = right;
        if p > 0 {
            if b.x[p - 1] != b.x[p] {
                b.s.push(p);
                b.f_s[p] = if b.s.len() % 2 == 1 { -1 } else { 1 };
            }
            if b.x[q + 1] != b.x[q] {
                b.t.push(p);
                b.f_t[p] = if b.t.len() % 2 == 1 { -1 } else { 1 };
            }
        }
        b.w += 1;
        let c = if b.w == 1 {
            i64::from(b.x[0] * b.x[n - 1])
        } else {
            // (-1)^γ: γ is odd exactly when the end elements agree
            let parity_sign = if b.x[0] == b.x[n - 1] { -1 } else { 1 };
            let r = tail_formula(b.w - 1, &b.s, &b.f_s, &b.f_t, parity_sign);
            2 * b.high[b.w - 1] - b.high[b.w - 2] - 2 * r
        };
        debug_assert_eq!(
            c,
            (0..b.w)
                .map(|i| i64::from(b.x[i] * b.x[n - b.w + i]))
                .sum::<i64>()
        );
        b.high.push(c);
        b.energy += (c * c) as u64;
        b
    }

    fn branch(&self) -> PrunedBranch {
        let n = self.n();
        PrunedBranch {
            prefix: self.x[..self.w].to_vec(),
            suffix: self.x[n - self.w..].to_vec(),
        }
    }
}

struct Pruner<'a> {
    spec: &'a SearchSpec,
    depth: usize,
    incumbent: AtomicU64,
}

impl Pruner<'_> {
    /// Candidate `(left, right)` pairs for the next border position.
    fn moves(&self, b: &Border) -> Vec<(i8, i8)> {
        let n = self.spec.n;
        let p = b.w;
        let lefts: &[i8] = if p == 0 { &[1] } else { &[1, -1] };
        let mut out = Vec::with_capacity(4);
        for &l in lefts {
            if self.spec.restrict_skew {
                // a_{n+1-i} = (-1)^{m-i} a_i with m = (n+1)/2
                let m = n.div_ceil(2);
                let sign = if (m - (p + 1)).is_multiple_of(2) {
                    1
                } else {
                    -1
                };
                out.push((l, sign * l));
            } else {
                out.push((l, 1));
                out.push((l, -1));
            }
        }
        out
    }

    fn rejects(&self, b: &Border) -> bool {
        if b.w > self.depth {
            return false;
        }
        let c = b.high[b.w].unsigned_abs();
        if self.spec.bound.is_some_and(|bound| c > bound) {
            return true;
        }
        let incumbent = self.incumbent.load(Ordering::Relaxed);
        match self.spec.objective {
            Objective::MinPsl => c > incumbent,
            Objective::MaxMerit => b.energy > incumbent,
        }
    }

    fn visit(&self, b: Border, tally: &mut Tally) {
        tally.visited += 1;
        if b.w > 0 && self.rejects(&b) {
            tally.pruned += 1;
            if self.spec.record_pruned {
                tally.pruned_branches.push(b.branch());
            }
            return;
        }
        let n = self.spec.n;
        if 2 * b.w >= n {
            self.leaf(&b.x, tally);
        } else if 2 * b.w + 1 == n {
            for mid in [1i8, -1] {
                let mut x = b.x.clone();
                x[b.w] = mid;
                tally.visited += 1;
                self.leaf(&x, tally);
            }
        } else {
            for (l, r) in self.moves(&b) {
                self.visit(b.extend(l, r), tally);
            }
        }
    }

    fn leaf(&self, x: &[i8], tally: &mut Tally) {
        let (psl, energy) = score(x);
        if !admissible(self.spec, psl) {
            return;
        }
        let key = objective_key(self.spec.objective, psl, energy);
        self.incumbent.fetch_min(key, Ordering::Relaxed);
        tally.offer(key, x, self.spec.quotient_reversal);
    }

    /// Breadth-first expansion until the frontier is wide enough to share.
    /// Surviving frontier nodes are counted when they are visited.
    fn frontier(&self, tally: &mut Tally) -> Vec<Border> {
        let n = self.spec.n;
        let mut level = vec![Border::empty(n)];
        tally.visited += 1;
        while level.len() < SPLIT_TARGET && 2 * (level[0].w + 1) <= n {
            let mut next = Vec::new();
            for b in &level {
                for (l, r) in self.moves(b) {
                    let child = b.extend(l, r);
                    if self.rejects(&child) {
                        tally.visited += 1;
                        tally.pruned += 1;
                        if self.spec.record_pruned {
                            tally.pruned_branches.push(child.branch());
                        }
                    } else {
                        next.push(child);
                    }
                }
            }
            if next.is_empty() {
                return next;
            }
            level = next;
        }
        if level[0].w == 0 {
            tally.visited -= 1;
        }
        level
    }
}

/// Outside-in branch and bound over borders, pruning on the high lags the
/// border already determines. Returns the same optimum as
/// [`exhaustive_search`] plus node statistics.
pub fn pruned_search(spec: &SearchSpec) -> Result<SearchResult> {
    let depth = spec.validate()?;
    let initial = match spec.objective {
        Objective::MinPsl => spec.bound.unwrap_or(u64::MAX),
        Objective::MaxMerit => u64::MAX,
    };
    let pruner = Pruner {
        spec,
        depth,
        incumbent: AtomicU64::new(initial),
    };
    let mut top = Tally::default();
    let frontier = pruner.frontier(&mut top);
    let parts = map_slice(&frontier, spec.parallelism, |b| {
        let mut tally = Tally::default();
        pruner.visit(b.clone(), &mut tally);
        tally
    });
    let tally = parts.into_iter().fold(top, Tally::merge);
    Ok(tally.finish(spec))
}

/// Determined tail values for one run-count parity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCase {
    pub parity: Parity,
    /// `R_{n-k}` for `k = 1..m-1`.
    pub tail_run_values: Vec<i64>,
    /// `C_{n-k}` for `k = 1..m`.
    pub high_lags: Vec<i64>,
    pub feasible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialEvaluation {
    pub cases: Vec<ParityCase>,
}

impl PartialEvaluation {
    /// Infeasible only when every parity choice violates the bound.
    pub fn feasible(&self) -> bool {
        self.cases.iter().any(|c| c.feasible)
    }
}

/// Evaluates the high lags a border of a length-`n` sequence determines,
/// for the known run-count parity or for both when it is unknown. Only
/// off-peak lags are tested against `bound`.
pub fn evaluate_partial(p: &PartialRunInfo, n: usize, bound: u64) -> Result<PartialEvaluation> {
    let m = p.m();
    if m > n {
        return Err(Error::InvalidPartial(format!(
            "border width {m} exceeds n = {n}"
        )));
    }
    let parities = match p.gamma_parity() {
        Some(parity) => vec![parity],
        None => vec![Parity::Even, Parity::Odd],
    };
    let cases = parities
        .into_iter()
        .map(|parity| {
            let tail = tail_run_values(&p.with_parity(Some(parity)))?;
            // high[k] = C_{n-k}; C_n = 0 and C_{n-1} = (-1)^{γ+1}
            let mut high = vec![0i64, -parity.sign()];
            for k in 1..m {
                high.push(2 * high[k] - high[k - 1] - 2 * tail[k - 1]);
            }
            high.remove(0);
            let feasible = high
                .iter()
                .enumerate()
                .all(|(i, &c)| i + 1 == n || c.unsigned_abs() <= bound);
            Ok(ParityCase {
                parity,
                tail_run_values: tail,
                high_lags: high,
                feasible,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PartialEvaluation { cases })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autocorr::{aperiodic_direct, peak_sidelobe_level};
    use crate::seqcore::RunLengthEncoding;

    const BARKER13: &str = "+++++--++-+-+";

    fn psl_spec(n: usize) -> SearchSpec {
        SearchSpec::new(n, Objective::MinPsl)
    }

    #[test]
    fn exhaustive_finds_barker_13() {
        let res = exhaustive_search(&psl_spec(13)).unwrap();
        assert_eq!(res.best, Some(ObjectiveValue::Psl(1)));
        let barker: BinarySequence = BARKER13.parse().unwrap();
        assert!(res.optima.contains(&barker));
        assert_eq!(res.nodes_visited, 1 << 12);
    }

    #[test]
    fn exhaustive_length_two() {
        let res = exhaustive_search(&psl_spec(2)).unwrap();
        assert_eq!(res.best, Some(ObjectiveValue::Psl(1)));
        assert_eq!(res.optima.len(), 2);
        assert!(res.optima.contains(&"+-".parse().unwrap()));
    }

    #[test]
    fn skew_restricted_matches_subset_scan() {
        let spec = SearchSpec::new(13, Objective::MaxMerit).restrict_skew(true);
        let res = exhaustive_search(&spec).unwrap();
        assert_eq!(res.nodes_visited, 1 << 6);
        // oracle: scan all 2^13 sequences, keep the skew ones
        let mut best = u64::MAX;
        let mut set = BTreeSet::new();
        for i in 0..1u64 << 12 {
            let a = BinarySequence::from_index(13, i);
            if !crate::skew::is_skew_symmetric(&a) {
                continue;
            }
            let e = aperiodic_direct(&a).sidelobe_energy();
            if e < best {
                best = e;
                set.clear();
            }
            if e == best {
                set.insert(a.to_sign_string());
            }
        }
        assert_eq!(
            res.best,
            Some(ObjectiveValue::Merit(MeritFactor::from_energy(13, best)))
        );
        let found: Vec<String> = res.optima.iter().map(|a| a.to_sign_string()).collect();
        assert_eq!(found, set.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn pruned_equals_exhaustive_with_fewer_nodes() {
        let spec = psl_spec(13).bound(Some(1));
        let pruned = pruned_search(&spec).unwrap();
        let full = exhaustive_search(&spec).unwrap();
        assert_eq!(pruned.best, full.best);
        assert_eq!(pruned.optima, full.optima);
        assert!(pruned.nodes_visited < full.nodes_visited);
        assert!(pruned.nodes_pruned > 0);
    }

    #[test]
    fn bound_zero_is_empty() {
        for n in 2..10 {
            for objective in [Objective::MinPsl, Objective::MaxMerit] {
                let spec = SearchSpec::new(n, objective).bound(Some(0));
                let res = pruned_search(&spec).unwrap();
                assert_eq!(res.best, None);
                assert!(res.optima.is_empty());
                assert_eq!(exhaustive_search(&spec).unwrap().best, None);
            }
        }
    }

    #[test]
    fn reversal_quotient_shrinks_optimum_set() {
        let plain = exhaustive_search(&psl_spec(7)).unwrap();
        let quotient = exhaustive_search(&psl_spec(7).quotient_reversal(true)).unwrap();
        assert_eq!(plain.best, quotient.best);
        assert!(quotient.optima.len() < plain.optima.len());
        assert_eq!(quotient.optima, vec!["+++--+-".parse().unwrap()]);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        for objective in [Objective::MinPsl, Objective::MaxMerit] {
            let seq = SearchSpec::new(16, objective).parallelism(Parallelism::Sequential);
            let par = seq.clone().parallelism(Parallelism::Parallel);
            assert_eq!(
                pruned_search(&seq).unwrap().optima,
                pruned_search(&par).unwrap().optima
            );
            assert_eq!(
                exhaustive_search(&seq).unwrap(),
                exhaustive_search(&par).unwrap()
            );
        }
    }

    #[test]
    fn spec_validation() {
        assert!(exhaustive_search(&psl_spec(1)).is_err());
        assert!(exhaustive_search(&psl_spec(25)).is_err());
        assert!(exhaustive_search(&psl_spec(12).restrict_skew(true)).is_err());
        assert!(pruned_search(&psl_spec(12).prune_depth(Some(0))).is_err());
        assert!(pruned_search(&psl_spec(12).prune_depth(Some(7))).is_err());
        assert!(pruned_search(&psl_spec(13).prune_depth(Some(7))).is_ok());
    }

    #[test]
    fn partial_evaluation_of_worked_border() {
        let p =
            PartialRunInfo::new(12, vec![5, 2, 2, 1], vec![4, 1, 3], Some(Parity::Even)).unwrap();
        let eval = evaluate_partial(&p, 40, 100).unwrap();
        assert_eq!(eval.cases.len(), 1);
        assert_eq!(
            eval.cases[0].tail_run_values,
            vec![0, 0, 0, -1, 0, 0, 1, -1, 1, -1, -2]
        );
        assert_eq!(eval.cases[0].high_lags.len(), 12);
        assert!(eval.feasible());

        let both = evaluate_partial(&p.with_parity(None), 40, 100).unwrap();
        assert_eq!(both.cases.len(), 2);
        assert_eq!(
            both.cases[1].tail_run_values,
            vec![0, 0, 0, 1, 0, 0, -1, 1, -1, 1, 2]
        );
    }

    #[test]
    fn partial_evaluation_of_narrow_border() {
        let p = PartialRunInfo::new(1, vec![], vec![], None).unwrap();
        let eval = evaluate_partial(&p, 5, 1).unwrap();
        assert!(eval.feasible());
        assert!(eval.cases.iter().all(|c| c.tail_run_values.is_empty()));
        assert!(!evaluate_partial(&p, 5, 0).unwrap().feasible());
    }

    #[test]
    fn partial_evaluation_of_full_sequence() {
        let a = RunLengthEncoding::positive(vec![7, 3, 3])
            .unwrap()
            .to_sequence();
        let p = PartialRunInfo::from_sequence(&a, 13).unwrap();
        let eval = evaluate_partial(&p, 13, 8).unwrap();
        let c = [13i64, 8, 3, -2, -1, 0, 1, 0, 1, 2, 3, 2, 1, 0];
        let expected: Vec<i64> = (1..=13).map(|k| c[13 - k]).collect();
        assert_eq!(eval.cases[0].high_lags, expected);
        assert!(eval.feasible());
        assert_eq!(peak_sidelobe_level(&aperiodic_direct(&a)), Ok(8));
        assert!(!evaluate_partial(&p, 13, 7).unwrap().feasible());
    }
}
