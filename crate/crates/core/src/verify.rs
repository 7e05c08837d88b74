//! Identity suites: every run-structure route checked against the direct
//! sums, exhaustively for small lengths and on seeded random samples.
//!
//! The run vector under test is injectable so that a deliberately broken
//! implementation can be shown to be caught. Reports keep the first
//! violation in a fixed order (shortest length, then sequence index or
//! sample number), independent of how the work was scheduled.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::autocorr::{aperiodic_direct, periodic_direct, AutocorrVector};
use crate::par::{fold_range, map_slice, Parallelism};
use crate::runvector::{
    autocorr_fast, autocorr_from_runvector, autocorr_from_runvector_backward,
    canonicalize_periodic, periodic_autocorr_fast, periodic_autocorr_from_runvector,
    periodic_autocorr_from_runvector_backward, periodic_run_vector, periodic_run_vector_bruteforce,
    run_vector, run_vector_additions, run_vector_bruteforce, run_vector_counted,
    run_vector_prefix_formula, second_difference, tail_run_values, PartialRunInfo, RunVector,
};
use crate::seqcore::{BinarySequence, Parity, RunLengthEncoding};
use crate::skew::{enumerate_skew_symmetric, is_balanced, skew_rles_by_scan};

/// Run vector implementation under test.
pub type RunVectorFn = fn(&RunLengthEncoding) -> RunVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    /// `Δ²C = -2R`
    SecondDifference,
    /// `Δ²C̃ = -4R̃` on the canonical rotation
    PeriodicSecondDifference,
    /// `C̃_k = C_k + C_{n-k}`
    PeriodicFold,
    /// `2R̃_k = R_k + R_{n-k}`
    PeriodicRunVector,
    /// `Σ R_k = -γ` (even `γ`) or `1 - γ` (odd `γ`)
    RunVectorSum,
    /// `C_1 = n + 1 - 2γ`, and `C̃_1 = n - 2γ` when `a_1 ≠ a_n`
    FirstLag,
    /// `C_{n-1} = (-1)^{γ+1}`
    LastLag,
    /// forward and backward rebuilds of `C` from `R`
    Reconstruction,
    /// forward and backward rebuilds of `C̃` from `R̃`
    PeriodicReconstruction,
    /// two-step algorithm = run-block enumeration = prefix-sum formula
    ThreePath,
    /// periodic run vector = p-substring enumeration
    PeriodicOracle,
    /// `(γ-1)(γ+2)` additions, no multiplications
    AdditionCount,
    /// `R_{n-k}` from the border (every width up to `n = 64`, a fixed
    /// spread of widths beyond)
    TailValues,
    /// `C_k(ā) = (-1)^k C_k(a)`, `γ + γ̄ = n + 1`
    Alternation,
    /// `C_{km+s}(b) = (m-s)C_k + sC_{k+1}` for element-wise repetition
    Repetition,
}

impl Identity {
    pub fn name(self) -> &'static str {
        match self {
            Identity::SecondDifference => "second-difference",
            Identity::PeriodicSecondDifference => "periodic-second-difference",
            Identity::PeriodicFold => "periodic-fold",
            Identity::PeriodicRunVector => "periodic-run-vector",
            Identity::RunVectorSum => "run-vector-sum",
            Identity::FirstLag => "first-lag",
            Identity::LastLag => "last-lag",
            Identity::Reconstruction => "reconstruction",
            Identity::PeriodicReconstruction => "periodic-reconstruction",
            Identity::ThreePath => "three-path",
            Identity::PeriodicOracle => "periodic-oracle",
            Identity::AdditionCount => "addition-count",
            Identity::TailValues => "tail-values",
            Identity::Alternation => "alternation",
            Identity::Repetition => "repetition",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub identity: Identity,
    pub sequence: BinarySequence,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails for {} (n = {}, rle {}): {}",
            self.identity,
            self.sequence,
            self.sequence.len(),
            self.sequence.to_rle(),
            self.detail
        )
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub checked: u64,
    pub failed: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuiteReport {
    /// Number of sequences (or samples) examined.
    pub cases: u64,
    pub tallies: BTreeMap<Identity, Tally>,
    /// Earliest violation in case order.
    pub first_violation: Option<Violation>,
    rank: Option<(usize, u64)>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.first_violation.is_none()
    }

    pub fn failures(&self) -> u64 {
        self.tallies.values().map(|t| t.failed).sum()
    }

    pub fn tally(&self, identity: Identity) -> Tally {
        self.tallies.get(&identity).copied().unwrap_or_default()
    }

    /// Combines two reports; the violation with the smaller case rank wins.
    pub fn merge(mut self, other: SuiteReport) -> SuiteReport {
        self.cases += other.cases;
        for (id, t) in other.tallies {
            let entry = self.tallies.entry(id).or_default();
            entry.checked += t.checked;
            entry.failed += t.failed;
        }
        let take_other = match (self.rank, other.rank) {
            (_, None) => false,
            (None, Some(_)) => true,
            (Some(a), Some(b)) => b < a,
        };
        if take_other {
            self.rank = other.rank;
            self.first_violation = other.first_violation;
        }
        self
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cases: {}", self.cases)?;
        for (id, t) in &self.tallies {
            writeln!(
                f,
                "  {:<28} checked {:>9}  failed {}",
                id.name(),
                t.checked,
                t.failed
            )?;
        }
        match &self.first_violation {
            Some(v) => write!(f, "first violation: {v}"),
            None => write!(f, "no violations"),
        }
    }
}

/// Collects the checks of one case.
struct CaseCheck<'a> {
    report: &'a mut SuiteReport,
    rank: (usize, u64),
    sequence: &'a BinarySequence,
}

impl CaseCheck<'_> {
    fn check(&mut self, identity: Identity, ok: bool, detail: impl FnOnce() -> String) {
        let t = self.report.tallies.entry(identity).or_default();
        t.checked += 1;
        if ok {
            return;
        }
        t.failed += 1;
        if self.report.rank.is_none_or(|r| self.rank < r) {
            self.report.rank = Some(self.rank);
            self.report.first_violation = Some(Violation {
                identity,
                sequence: self.sequence.clone(),
                detail: detail(),
            });
        }
    }

    fn equal<T: PartialEq + fmt::Debug>(&mut self, identity: Identity, got: T, expected: T) {
        let ok = got == expected;
        self.check(identity, ok, || {
            format!("expected {expected:?}, got {got:?}")
        });
    }
}

fn scaled(v: &[i64], factor: i64) -> Vec<i64> {
    v.iter().map(|x| x * factor).collect()
}

fn rebuilt(result: crate::Result<AutocorrVector>) -> Result<Vec<i64>, String> {
    result.map(|c| c.into_values()).map_err(|e| e.to_string())
}

/// Runs every per-sequence identity on `a`.
fn check_sequence(
    a: &BinarySequence,
    rv_fn: RunVectorFn,
    rank: (usize, u64),
    report: &mut SuiteReport,
) {
    report.cases += 1;
    let mut cc = CaseCheck {
        report,
        rank,
        sequence: a,
    };
    let n = a.len();
    let x = a.as_slice();
    let rle = a.to_rle();
    let gamma = rle.gamma();
    let c = aperiodic_direct(a);
    let cv = c.values();
    let r = rv_fn(&rle);

    if r.values().len() + 1 != n {
        cc.check(Identity::SecondDifference, false, || {
            format!(
                "run vector has {} values, expected {}",
                r.values().len(),
                n - 1
            )
        });
        return;
    }

    if n >= 3 {
        let d = second_difference(cv).expect("n >= 3");
        cc.equal(Identity::SecondDifference, d, scaled(r.values(), -2));
    }
    if n >= 2 {
        let g = gamma as i64;
        let expected = if gamma.is_multiple_of(2) { -g } else { 1 - g };
        cc.equal(Identity::RunVectorSum, r.sum(), expected);
        cc.equal(Identity::FirstLag, cv[1], n as i64 + 1 - 2 * g);
        cc.equal(Identity::LastLag, cv[n - 1], -Parity::of(gamma).sign());
        cc.equal(
            Identity::Reconstruction,
            rebuilt(autocorr_from_runvector(n, gamma, &r)),
            Ok(cv.to_vec()),
        );
        cc.equal(
            Identity::Reconstruction,
            rebuilt(autocorr_from_runvector_backward(n, gamma, &r)),
            Ok(cv.to_vec()),
        );
    }
    cc.equal(
        Identity::Reconstruction,
        rebuilt(autocorr_fast(a, true)),
        Ok(cv.to_vec()),
    );

    cc.equal(Identity::ThreePath, run_vector_bruteforce(&rle), r.clone());
    cc.equal(
        Identity::ThreePath,
        run_vector_prefix_formula(&rle),
        r.clone(),
    );
    let (_, ops) = run_vector_counted(&rle);
    cc.equal(
        Identity::AdditionCount,
        (ops.additions, ops.multiplications),
        (run_vector_additions(gamma), 0),
    );

    let alt = a.alternate();
    let ca = aperiodic_direct(&alt);
    let flipped: Vec<i64> = cv
        .iter()
        .enumerate()
        .map(|(k, &v)| if k % 2 == 1 { -v } else { v })
        .collect();
    cc.equal(
        Identity::Alternation,
        (ca.into_values(), alt.gamma() + gamma),
        (flipped, n + 1),
    );

    if n >= 2 {
        let tail_expected: Vec<i64> = (1..n).map(|k| r.get(n - k)).collect();
        let widths: Vec<usize> = if n <= 64 {
            (1..=n).collect()
        } else {
            vec![1, 2, 3, n / 4, n / 2, n / 2 + 1, n - 1, n]
        };
        for m in widths {
            let got = PartialRunInfo::from_sequence(a, m)
                .and_then(|p| tail_run_values(&p))
                .map_err(|e| e.to_string());
            cc.equal(
                Identity::TailValues,
                got,
                Ok(tail_expected[..m - 1].to_vec()),
            );
        }
    }

    let p = periodic_direct(a);
    let pv = p.values();
    let folded: Vec<i64> = (0..=n)
        .map(|k| {
            if k == 0 || k == n {
                n as i64
            } else {
                cv[k] + cv[n - k]
            }
        })
        .collect();
    cc.equal(Identity::PeriodicFold, pv.to_vec(), folded);
    cc.equal(
        Identity::PeriodicReconstruction,
        rebuilt(periodic_autocorr_fast(a)),
        Ok(pv.to_vec()),
    );

    if n >= 2 && x[0] != x[n - 1] {
        cc.equal(Identity::FirstLag, pv[1], n as i64 - 2 * gamma as i64);
    }
    if a.is_constant() || n < 3 {
        return;
    }
    let (rot, _) = canonicalize_periodic(a).expect("non-constant");
    let rot_rle = rot.to_rle();
    let g = rot_rle.gamma();
    let (rt, oracle) = match (
        periodic_run_vector(&rot_rle),
        periodic_run_vector_bruteforce(&rot_rle),
    ) {
        (Ok(rt), Ok(oracle)) => (rt, oracle),
        (e1, e2) => {
            cc.check(Identity::PeriodicOracle, false, || {
                format!("{e1:?} / {e2:?}")
            });
            return;
        }
    };
    cc.equal(Identity::PeriodicOracle, rt.clone(), oracle);
    let rr = rv_fn(&rot_rle);
    if rr.values().len() + 1 == n {
        let sums: Vec<i64> = (1..n).map(|k| rr.get(k) + rr.get(n - k)).collect();
        cc.equal(Identity::PeriodicRunVector, scaled(rt.values(), 2), sums);
    } else {
        cc.check(Identity::PeriodicRunVector, false, || {
            "run vector length".into()
        });
    }
    let d = second_difference(pv).expect("n >= 3");
    cc.equal(
        Identity::PeriodicSecondDifference,
        d,
        scaled(rt.values(), -4),
    );
    cc.equal(
        Identity::PeriodicReconstruction,
        rebuilt(periodic_autocorr_from_runvector(n, g, &rt)),
        Ok(pv.to_vec()),
    );
    cc.equal(
        Identity::PeriodicReconstruction,
        rebuilt(periodic_autocorr_from_runvector_backward(n, g, &rt)),
        Ok(pv.to_vec()),
    );
}

/// Every identity that applies to the single sequence `a`.
pub fn sequence_identities(a: &BinarySequence, rv_fn: RunVectorFn) -> SuiteReport {
    let mut report = SuiteReport::default();
    check_sequence(a, rv_fn, (a.len(), 0), &mut report);
    report
}

/// Every sequence of every length in `min_n..=max_n` (at most 24).
pub fn exhaustive_identities(
    min_n: usize,
    max_n: usize,
    rv_fn: RunVectorFn,
    mode: Parallelism,
) -> SuiteReport {
    assert!(min_n >= 1 && max_n <= 24, "lengths 1..=24");
    (min_n..=max_n)
        .map(|n| {
            fold_range(
                0..1u64 << n,
                mode,
                SuiteReport::default,
                |mut report, index| {
                    let a = BinarySequence::from_index(n, index);
                    check_sequence(&a, rv_fn, (n, index), &mut report);
                    report
                },
                SuiteReport::merge,
            )
        })
        .fold(SuiteReport::default(), SuiteReport::merge)
}

/// Random sequence with length uniform in `min_n..=max_n` and a random
/// switching rate, so that run counts from 1 to `n` all occur.
pub fn random_sequence(rng: &mut ChaCha8Rng, min_n: usize, max_n: usize) -> BinarySequence {
    let n = rng.gen_range(min_n..=max_n);
    let switch: f64 = rng.gen();
    let mut x = Vec::with_capacity(n);
    let mut current: i8 = if rng.gen_bool(0.5) { 1 } else { -1 };
    for _ in 0..n {
        x.push(current);
        if rng.gen_bool(switch) {
            current = -current;
        }
    }
    BinarySequence::new(x).expect("n >= 1")
}

/// Length-`n` sequence with independent fair signs.
pub fn uniform_sequence(rng: &mut ChaCha8Rng, n: usize) -> BinarySequence {
    BinarySequence::new(
        (0..n)
            .map(|_| if rng.gen_bool(0.5) { 1 } else { -1 })
            .collect(),
    )
    .expect("n >= 1")
}

/// `samples` seeded random sequences of length `1..=max_n`.
pub fn random_identities(
    samples: usize,
    max_n: usize,
    seed: u64,
    rv_fn: RunVectorFn,
    mode: Parallelism,
) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<BinarySequence> = (0..samples)
        .map(|_| random_sequence(&mut rng, 1, max_n))
        .collect();
    let indexed: Vec<(usize, &BinarySequence)> = cases.iter().enumerate().collect();
    map_slice(&indexed, mode, |&(i, a)| {
        let mut report = SuiteReport::default();
        check_sequence(a, rv_fn, (0, i as u64), &mut report);
        report
    })
    .into_iter()
    .fold(SuiteReport::default(), SuiteReport::merge)
}

/// Checks `C_{km+s}(b) = (m-s)C_k(a) + sC_{k+1}(a)` where `b` repeats every
/// element of `a` `m` times, for seeded random `a` (`n ≤ max_n`) and
/// `m ≤ max_m`.
pub fn repetition_law(samples: usize, max_n: usize, max_m: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport::default();
    for i in 0..samples {
        let a = random_sequence(&mut rng, 1, max_n);
        let m = rng.gen_range(1..=max_m);
        let b = a.repeat_elements(m).expect("small");
        let ca = aperiodic_direct(&a);
        let cb = aperiodic_direct(&b);
        let n = a.len();
        let predicted: Vec<i64> = (0..=n * m)
            .map(|lag| {
                let (k, s) = (lag / m, lag % m);
                let next = if k < n { ca.get(k + 1) } else { 0 };
                (m - s) as i64 * ca.get(k) + s as i64 * next
            })
            .collect();
        report.cases += 1;
        let mut cc = CaseCheck {
            report: &mut report,
            rank: (0, i as u64),
            sequence: &a,
        };
        let detail_m = m;
        let ok = cb.values() == predicted.as_slice();
        cc.check(Identity::Repetition, ok, || {
            format!(
                "m = {detail_m}: expected {predicted:?}, got {:?}",
                cb.values()
            )
        });
    }
    report
}

/// The three descriptions of the skew-symmetric run length encodings of one
/// odd length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewEquivalence {
    pub n: usize,
    /// Run lengths of all skew-symmetric sequences, by scanning `2^n`.
    pub by_scan: BTreeSet<Vec<usize>>,
    /// All balanced compositions of `n`.
    pub balanced: BTreeSet<Vec<usize>>,
    /// Tree nodes at depth `(n - 1) / 2`, in tree order.
    pub tree: Vec<Vec<usize>>,
}

impl SkewEquivalence {
    pub fn holds(&self) -> bool {
        let gamma = self.n.div_ceil(2);
        let tree: BTreeSet<Vec<usize>> = self.tree.iter().cloned().collect();
        self.by_scan == self.balanced
            && self.balanced == tree
            && tree.len() == self.tree.len()
            && self.tree.len() == 1 << (gamma - 1)
    }
}

/// Compositions of `n` into positive parts.
fn compositions(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..1u64 << (n - 1)).map(move |cuts| {
        let mut parts = Vec::new();
        let mut len = 1;
        for i in 0..n - 1 {
            if cuts >> i & 1 == 1 {
                parts.push(len);
                len = 1;
            } else {
                len += 1;
            }
        }
        parts.push(len);
        parts
    })
}

pub fn skew_equivalence(n: usize) -> SkewEquivalence {
    assert!(n % 2 == 1 && n <= 25, "odd n up to 25");
    let balanced = compositions(n)
        .filter(|runs| {
            let rle = RunLengthEncoding::positive(runs.clone()).expect("positive runs");
            is_balanced(&rle)
        })
        .collect();
    let tree = enumerate_skew_symmetric(n.div_ceil(2))
        .expect("gamma >= 1")
        .into_iter()
        .map(|r| r.runs().to_vec())
        .collect();
    SkewEquivalence {
        n,
        by_scan: skew_rles_by_scan(n),
        balanced,
        tree,
    }
}

/// The run vector as computed by this crate; the default for the suites.
pub fn reference_run_vector(rle: &RunLengthEncoding) -> RunVector {
    run_vector(rle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autocorr::CorrelationKind;

    fn flipped_lag_two(rle: &RunLengthEncoding) -> RunVector {
        let r = run_vector(rle);
        let mut v = r.values().to_vec();
        if v.len() >= 2 {
            v[1] = -v[1];
        }
        RunVector::from_values(CorrelationKind::Aperiodic, r.gamma(), v)
    }

    #[test]
    fn small_exhaustive_suite_passes() {
        let report = exhaustive_identities(1, 10, run_vector, Parallelism::Sequential);
        assert!(report.passed(), "{report}");
        assert_eq!(report.cases, (1..=10).map(|n| 1u64 << n).sum::<u64>());
        assert!(report.tally(Identity::PeriodicSecondDifference).checked > 0);
    }

    #[test]
    fn injected_bug_gives_minimal_counterexample() {
        for mode in [Parallelism::Sequential, Parallelism::Parallel] {
            let report = exhaustive_identities(1, 8, flipped_lag_two, mode);
            assert!(!report.passed());
            let v = report.first_violation.unwrap();
            // shortest sequence with R_2 != 0 in index order
            assert_eq!(v.sequence.to_string(), "++-");
            assert_eq!(v.identity, Identity::SecondDifference);
        }
    }

    #[test]
    fn random_suite_is_seed_stable() {
        let a = random_identities(300, 64, 7, run_vector, Parallelism::Parallel);
        let b = random_identities(300, 64, 7, run_vector, Parallelism::Sequential);
        assert!(a.passed(), "{a}");
        assert_eq!(a, b);
        let bad = random_identities(300, 64, 7, flipped_lag_two, Parallelism::Parallel);
        let bad2 = random_identities(300, 64, 7, flipped_lag_two, Parallelism::Sequential);
        assert!(!bad.passed());
        assert_eq!(bad, bad2);
    }

    #[test]
    fn repetition_law_holds() {
        let report = repetition_law(100, 32, 4, 1);
        assert!(report.passed(), "{report}");
        assert_eq!(report.tally(Identity::Repetition).checked, 100);
    }

    #[test]
    fn skew_sets_agree() {
        for n in (1..=11).step_by(2) {
            let eq = skew_equivalence(n);
            assert!(eq.holds(), "n = {n}: {eq:?}");
        }
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(5).count(), 16);
        assert!(compositions(3).any(|c| c == vec![1, 2]));
    }
}
