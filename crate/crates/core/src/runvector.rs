//! Run vectors and everything computed from them.
//!
//! For a sequence with run length encoding `r = (r_1, …, r_γ)` the run vector
//! `R_1..R_{n-1}` sums `α(u)·(-1)^{|u|}` over all contiguous substrings `u`
//! of `r` whose runs add up to the lag, where `α(u)` is 2 for substrings
//! that touch neither end of `r` and 1 otherwise. Its second difference
//! relation with the aperiodic correlations, `C_{k+1} - 2C_k + C_{k-1} =
//! -2R_k`, turns the run vector into a cheap way to get all of `C`.
//!
//! Lags are always the mathematical indices: `R.get(k)` is `R_k` for
//! `1 ≤ k ≤ n-1` even though storage is 0-based.

use std::fmt;

use crate::autocorr::{write_ints, AutocorrVector, CorrelationKind};
use crate::error::{Error, Result};
use crate::ops::{NoCount, OpCounts, Tally};
use crate::seqcore::{BinarySequence, Parity, RunLengthEncoding};

/// `R_1..R_{n-1}` (aperiodic) or `R̃_1..R̃_{n-1}` (periodic).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RunVector {
    kind: CorrelationKind,
    n: usize,
    gamma: usize,
    values: Vec<i64>,
}

impl RunVector {
    /// Wraps raw values `R_1..R_{n-1}`.
    pub fn from_values(kind: CorrelationKind, gamma: usize, values: Vec<i64>) -> Self {
        Self {
            kind,
            n: values.len() + 1,
            gamma,
            values,
        }
    }

    pub fn kind(&self) -> CorrelationKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    /// Values for lags `1..=n-1`.
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// `R_k` for `1 ≤ k ≤ n-1`.
    pub fn get(&self, k: usize) -> i64 {
        assert!(k >= 1 && k < self.n, "lag {k} outside 1..{}", self.n);
        self.values[k - 1]
    }

    pub fn sum(&self) -> i64 {
        self.values.iter().sum()
    }

    /// Expected value of [`RunVector::sum`]: `-γ` for even `γ`, `1-γ` for odd
    /// `γ` (aperiodic); always `-γ` in the periodic case.
    pub fn expected_sum(&self) -> i64 {
        let g = self.gamma as i64;
        match (self.kind, Parity::of(self.gamma)) {
            (CorrelationKind::Aperiodic, Parity::Odd) => 1 - g,
            _ => -g,
        }
    }
}

impl fmt::Display for RunVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_ints(f, &self.values)
    }
}

/// Forward second difference: `out_j = v_{j+2} - 2v_{j+1} + v_j`.
pub fn second_difference(v: &[i64]) -> Result<Vec<i64>> {
    if v.len() < 3 {
        return Err(Error::TooShort {
            n: v.len(),
            required: 3,
        });
    }
    Ok(v.windows(3).map(|w| w[2] - 2 * w[1] + w[0]).collect())
}

fn run_vector_impl<T: Tally>(rle: &RunLengthEncoding, tally: &mut T) -> RunVector {
    let n = rle.len();
    let r = rle.runs();
    let gamma = r.len();
    // indexed by lag; slots 0 and n stay untouched
    let mut acc = vec![0i64; n + 1];

    // Outer substrings: prefixes r(1, j+1) and the complementary suffixes
    // r(j+1, γ+1), whose run count is γ - j.
    let mut alpha = -1i64;
    let mut mirrored = if gamma.is_multiple_of(2) { -1i64 } else { 1 };
    let mut s = 0usize;
    for &run in &r[..gamma.saturating_sub(1)] {
        s += run;
        acc[s] += alpha;
        acc[n - s] += mirrored;
        alpha = -alpha;
        mirrored = -mirrored;
        tally.add(4);
    }

    // Inner substrings r(i, j+1), 2 ≤ i ≤ j ≤ γ-1; the weight alternates
    // -2, +2, … so the inner loop is unrolled in pairs.
    for i in 1..gamma.saturating_sub(1) {
        let inner = &r[i..gamma - 1];
        let mut s = 0usize;
        let mut pairs = inner.chunks_exact(2);
        for pair in &mut pairs {
            s += pair[0];
            acc[s] -= 2;
            s += pair[1];
            acc[s] += 2;
        }
        if let [last] = pairs.remainder() {
            s += last;
            acc[s] -= 2;
        }
        tally.add(2 * inner.len() as u64);
    }

    acc.truncate(n);
    if !acc.is_empty() {
        acc.remove(0);
    }
    RunVector {
        kind: CorrelationKind::Aperiodic,
        n,
        gamma,
        values: acc,
    }
}

/// Two-step run vector algorithm: outer substrings first, then the inner
/// ones. Uses `(γ-1)(γ+2)` additions and no multiplications.
pub fn run_vector(rle: &RunLengthEncoding) -> RunVector {
    run_vector_impl(rle, &mut NoCount)
}

/// [`run_vector`] with its additions counted.
pub fn run_vector_counted(rle: &RunLengthEncoding) -> (RunVector, OpCounts) {
    let mut counts = OpCounts::default();
    let rv = run_vector_impl(rle, &mut counts);
    (rv, counts)
}

/// Addition count of [`run_vector`] for `γ` runs.
pub fn run_vector_additions(gamma: usize) -> u64 {
    let g = gamma as u64;
    if g == 0 {
        0
    } else {
        (g - 1) * (g + 2)
    }
}

/// Reference run vector: enumerates every substring `r(p, q)` of the run
/// length encoding and adds `α(u)·(-1)^{|u|}` at its sum.
pub fn run_vector_bruteforce(rle: &RunLengthEncoding) -> RunVector {
    let n = rle.len();
    let r = rle.runs();
    let gamma = r.len();
    let mut values = vec![0i64; n.saturating_sub(1)];
    for p in 1..=gamma {
        let mut sum = 0usize;
        for q in p + 1..=gamma + 1 {
            sum += r[q - 2];
            if sum >= n {
                // only r(1, γ+1), the whole sequence
                continue;
            }
            let inner = p > 1 && q < gamma + 1;
            let alpha = if inner { 2 } else { 1 };
            let sign = if (q - p) % 2 == 0 { 1 } else { -1 };
            values[sum - 1] += alpha * sign;
        }
    }
    RunVector {
        kind: CorrelationKind::Aperiodic,
        n,
        gamma,
        values,
    }
}

fn check_reconstruction_input(n: usize, gamma: usize, rv: &RunVector) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if rv.values.len() + 1 != n {
        return Err(Error::LengthMismatch {
            expected: n - 1,
            got: rv.values.len(),
        });
    }
    if gamma == 0 || gamma > n {
        return Err(Error::Inconsistent(format!(
            "gamma = {gamma} impossible for n = {n}"
        )));
    }
    Ok(())
}

fn last_lag_value(gamma: usize) -> i64 {
    // C_{n-1} = a_1 a_n = (-1)^{γ+1}
    -Parity::of(gamma).sign()
}

/// Rebuilds `C` from `C_0 = n`, `C_1 = n + 1 - 2γ` and
/// `C_{k+1} = 2C_k - C_{k-1} - 2R_k`. Fails unless the result ends in
/// `C_{n-1} = (-1)^{γ+1}`, `C_n = 0`.
pub fn autocorr_from_runvector(n: usize, gamma: usize, rv: &RunVector) -> Result<AutocorrVector> {
    check_reconstruction_input(n, gamma, rv)?;
    let mut c = vec![0i64; n + 1];
    c[0] = n as i64;
    c[1] = n as i64 + 1 - 2 * gamma as i64;
    for k in 1..n {
        c[k + 1] = 2 * c[k] - c[k - 1] - 2 * rv.values[k - 1];
    }
    if c[n] != 0 {
        return Err(Error::Inconsistent(format!("C_n = {} instead of 0", c[n])));
    }
    if c[n - 1] != last_lag_value(gamma) {
        return Err(Error::Inconsistent(format!(
            "C_(n-1) = {} instead of {}",
            c[n - 1],
            last_lag_value(gamma)
        )));
    }
    AutocorrVector::new(CorrelationKind::Aperiodic, c)
}

/// Closed form anchored at the far end:
/// `C_k = (-1)^{γ+1}(n-k) - 2 Σ_{j=k+1}^{n-1} (j-k) R_j`.
/// Fails unless it lands on `C_0 = n` and `C_1 = n + 1 - 2γ`.
pub fn autocorr_from_runvector_backward(
    n: usize,
    gamma: usize,
    rv: &RunVector,
) -> Result<AutocorrVector> {
    check_reconstruction_input(n, gamma, rv)?;
    let tail = last_lag_value(gamma);
    let mut c = vec![0i64; n + 1];
    // running Σ_{j>k} R_j and Σ_{j>k} j·R_j
    let mut plain = 0i64;
    let mut weighted = 0i64;
    for k in (0..=n).rev() {
        if k + 1 < n {
            let j = k + 1;
            plain += rv.values[j - 1];
            weighted += j as i64 * rv.values[j - 1];
        }
        let k_i = k as i64;
        c[k] = tail * (n as i64 - k_i) - 2 * (weighted - k_i * plain);
    }
    if c[0] != n as i64 {
        return Err(Error::Inconsistent(format!(
            "C_0 = {} instead of {n}",
            c[0]
        )));
    }
    if n >= 1 && c[1] != n as i64 + 1 - 2 * gamma as i64 {
        return Err(Error::Inconsistent(format!(
            "C_1 = {} does not match gamma",
            c[1]
        )));
    }
    AutocorrVector::new(CorrelationKind::Aperiodic, c)
}

/// Aperiodic autocorrelations via the run vector. With `alternation` set and
/// more than `(n+1)/2` runs, the sequence with every second element flipped
/// (which then has at most `n/2` runs) is used and odd lags are negated
/// back.
pub fn autocorr_fast(a: &BinarySequence, alternation: bool) -> Result<AutocorrVector> {
    autocorr_fast_counted(a, alternation).map(|(c, _)| c)
}

/// [`autocorr_fast`] with the additions of the run-vector step and of the
/// reconstruction counted (run length encoding extraction excluded).
pub fn autocorr_fast_counted(
    a: &BinarySequence,
    alternation: bool,
) -> Result<(AutocorrVector, OpCounts)> {
    let n = a.len();
    let flip = alternation && 2 * a.gamma() > n + 1;
    let source = if flip { a.alternate() } else { a.clone() };
    let rle = source.to_rle();
    let (rv, mut counts) = run_vector_counted(&rle);
    let c = autocorr_from_runvector(n, rle.gamma(), &rv)?;
    // 2C_k - C_{k-1} - 2R_k: three additions per lag
    counts.additions += 3 * n.saturating_sub(1) as u64;
    if !flip {
        return Ok((c, counts));
    }
    let values = c
        .into_values()
        .into_iter()
        .enumerate()
        .map(|(k, v)| if k % 2 == 1 { -v } else { v })
        .collect();
    Ok((
        AutocorrVector::new(CorrelationKind::Aperiodic, values)?,
        counts,
    ))
}

/// Prefix sums `s_j = r_1 + … + r_j`, suffix sums `t_j = r_γ + … + r_{γ-j+1}`
/// (both for `j < γ`) and their signed indicators `f_S`, `f_T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixSumTables {
    n: usize,
    gamma: usize,
    s: Vec<usize>,
    t: Vec<usize>,
    f_s: Vec<i8>,
    f_t: Vec<i8>,
}

impl PrefixSumTables {
    pub fn new(rle: &RunLengthEncoding) -> Self {
        let n = rle.len();
        let r = rle.runs();
        let gamma = r.len();
        let s: Vec<usize> = r[..gamma - 1]
            .iter()
            .scan(0usize, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect();
        let t: Vec<usize> = r[1..]
            .iter()
            .rev()
            .scan(0usize, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect();
        Self {
            n,
            gamma,
            f_s: indicator(n, &s),
            f_t: indicator(n, &t),
            s,
            t,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    /// `s_1..s_{γ-1}`.
    pub fn s(&self) -> &[usize] {
        &self.s
    }

    /// `t_1..t_{γ-1}`.
    pub fn t(&self) -> &[usize] {
        &self.t
    }

    /// `f_S(k)`: `(-1)^j` if `k = s_j`, else 0 (for every integer `k`).
    pub fn f_s(&self, k: i64) -> i64 {
        lookup(&self.f_s, k)
    }

    pub fn f_t(&self, k: i64) -> i64 {
        lookup(&self.f_t, k)
    }
}

fn indicator(n: usize, points: &[usize]) -> Vec<i8> {
    let mut f = vec![0i8; n + 1];
    for (j, &p) in points.iter().enumerate() {
        f[p] = if j % 2 == 0 { -1 } else { 1 };
    }
    f
}

fn lookup(table: &[i8], k: i64) -> i64 {
    usize::try_from(k)
        .ok()
        .and_then(|k| table.get(k))
        .map_or(0, |&v| i64::from(v))
}

pub fn prefix_sum_tables(rle: &RunLengthEncoding) -> PrefixSumTables {
    PrefixSumTables::new(rle)
}

/// `R_k = f_S(k) + (-1)^γ f_S(n-k) + 2 Σ_{j=1}^{γ-1} (-1)^j f_S(s_j - k)`.
pub fn run_vector_prefix_formula(rle: &RunLengthEncoding) -> RunVector {
    let tables = PrefixSumTables::new(rle);
    let n = tables.n as i64;
    let parity = Parity::of(tables.gamma).sign();
    let values = (1..n)
        .map(|k| {
            let inner: i64 = tables
                .s
                .iter()
                .enumerate()
                .filter(|&(_, &s)| s as i64 > k)
                .map(|(j, &s)| {
                    let sign = if j % 2 == 0 { -1 } else { 1 };
                    sign * tables.f_s(s as i64 - k)
                })
                .sum();
            tables.f_s(k) + parity * tables.f_s(n - k) + 2 * inner
        })
        .collect();
    RunVector {
        kind: CorrelationKind::Aperiodic,
        n: tables.n,
        gamma: tables.gamma,
        values,
    }
}

/// What is known about a sequence when only its first and last `m`
/// elements are fixed: the complete runs inside each border, the length of
/// the run still open at the inner edge, and optionally the parity of `γ`.
///
/// Only the prefix sums `s_j < m` and suffix sums `t_j < m` are determined,
/// which is exactly what the tail run values `R_{n-k}`, `k < m`, need.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialRunInfo {
    m: usize,
    prefix_runs: Vec<usize>,
    prefix_remainder: usize,
    suffix_runs: Vec<usize>,
    suffix_remainder: usize,
    gamma_parity: Option<Parity>,
}

impl PartialRunInfo {
    /// `prefix_runs` are the complete runs at the start, `suffix_runs` the
    /// complete runs at the end listed from the last one inwards. Each list
    /// must leave a non-empty open run inside the border.
    pub fn new(
        m: usize,
        prefix_runs: Vec<usize>,
        suffix_runs: Vec<usize>,
        gamma_parity: Option<Parity>,
    ) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidPartial(
                "border width must be at least 1".into(),
            ));
        }
        let remainder = |runs: &[usize], side: &str| -> Result<usize> {
            if runs.contains(&0) {
                return Err(Error::InvalidPartial(format!("{side} run of length zero")));
            }
            let total: usize = runs.iter().sum();
            if total >= m {
                return Err(Error::InvalidPartial(format!(
                    "{side} runs cover {total} >= m = {m} elements"
                )));
            }
            Ok(m - total)
        };
        Ok(Self {
            prefix_remainder: remainder(&prefix_runs, "prefix")?,
            suffix_remainder: remainder(&suffix_runs, "suffix")?,
            m,
            prefix_runs,
            suffix_runs,
            gamma_parity,
        })
    }

    /// Reads the runs off the first `m` (`prefix`) and last `m` (`suffix`)
    /// elements, in sequence order.
    pub fn from_border(prefix: &[i8], suffix: &[i8], gamma_parity: Option<Parity>) -> Result<Self> {
        if prefix.len() != suffix.len() {
            return Err(Error::InvalidPartial(format!(
                "prefix has {} elements, suffix {}",
                prefix.len(),
                suffix.len()
            )));
        }
        let m = prefix.len();
        let closed_runs = |border: &mut dyn Iterator<Item = i8>| {
            let mut runs = Vec::new();
            let mut prev = None;
            let mut current = 0;
            for x in border {
                if prev.is_some_and(|p| p != x) {
                    runs.push(current);
                    current = 0;
                }
                current += 1;
                prev = Some(x);
            }
            runs
        };
        let prefix_runs = closed_runs(&mut prefix.iter().copied());
        let suffix_runs = closed_runs(&mut suffix.iter().rev().copied());
        Self::new(m, prefix_runs, suffix_runs, gamma_parity)
    }

    /// The border of width `m` of a fully known sequence, with its parity.
    pub fn from_sequence(a: &BinarySequence, m: usize) -> Result<Self> {
        let x = a.as_slice();
        if m == 0 || m > x.len() {
            return Err(Error::InvalidPartial(format!(
                "border width {m} for n = {}",
                x.len()
            )));
        }
        Self::from_border(&x[..m], &x[x.len() - m..], Some(Parity::of(a.gamma())))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn prefix_runs(&self) -> &[usize] {
        &self.prefix_runs
    }

    pub fn suffix_runs(&self) -> &[usize] {
        &self.suffix_runs
    }

    pub fn prefix_remainder(&self) -> usize {
        self.prefix_remainder
    }

    pub fn suffix_remainder(&self) -> usize {
        self.suffix_remainder
    }

    pub fn gamma_parity(&self) -> Option<Parity> {
        self.gamma_parity
    }

    pub fn with_parity(&self, parity: Option<Parity>) -> Self {
        Self {
            gamma_parity: parity,
            ..self.clone()
        }
    }

    /// Known prefix sums `s_j < m`.
    pub fn s(&self) -> Vec<usize> {
        cumulative(&self.prefix_runs)
    }

    /// Known suffix sums `t_j < m`.
    pub fn t(&self) -> Vec<usize> {
        cumulative(&self.suffix_runs)
    }

    /// `f_S(1..m-1)`.
    pub fn border_f_s(&self) -> Vec<i64> {
        let f = indicator(self.m, &self.s());
        f[1..self.m].iter().map(|&v| i64::from(v)).collect()
    }

    /// `f_T(1..m-1)`.
    pub fn border_f_t(&self) -> Vec<i64> {
        let f = indicator(self.m, &self.t());
        f[1..self.m].iter().map(|&v| i64::from(v)).collect()
    }

    fn check_lag(&self, k: usize) -> Result<()> {
        if k == 0 || k >= self.m {
            return Err(Error::BeyondBorder { k, m: self.m });
        }
        Ok(())
    }

    /// Inner-substring part `2 Σ_j (-1)^j f_T(k - s_j)` of the tail formula.
    pub fn inner_term(&self, k: usize) -> Result<i64> {
        self.check_lag(k)?;
        let f_t = indicator(self.m, &self.t());
        Ok(tail_inner(k, &self.s(), &f_t))
    }

    /// `R_{n-k}` from `(-1)^γ R_{n-k} = f_S(k) + f_T(k) + 2 Σ_j (-1)^j f_T(k - s_j)`.
    pub fn tail_run_value(&self, k: usize) -> Result<i64> {
        self.check_lag(k)?;
        let parity = self.gamma_parity.ok_or(Error::UnknownParity)?;
        let f_s = indicator(self.m, &self.s());
        let f_t = indicator(self.m, &self.t());
        Ok(tail_formula(k, &self.s(), &f_s, &f_t, parity.sign()))
    }
}

/// `2 Σ_{s_j < k} (-1)^j f_T(k - s_j)`; `s` increasing, `f_t` lag-indexed.
pub(crate) fn tail_inner(k: usize, s: &[usize], f_t: &[i8]) -> i64 {
    let ki = k as i64;
    let mut sum = 0i64;
    for (j, &sj) in s.iter().enumerate() {
        if sj >= k {
            break;
        }
        let sign = if j % 2 == 0 { -1 } else { 1 };
        sum += sign * lookup(f_t, ki - sj as i64);
    }
    2 * sum
}

/// `R_{n-k}` given `(-1)^γ`, the known prefix sums and lag-indexed `f_S`,
/// `f_T` tables covering every lag below `k + 1`.
pub(crate) fn tail_formula(k: usize, s: &[usize], f_s: &[i8], f_t: &[i8], parity_sign: i64) -> i64 {
    let ki = k as i64;
    parity_sign * (lookup(f_s, ki) + lookup(f_t, ki) + tail_inner(k, s, f_t))
}

fn cumulative(runs: &[usize]) -> Vec<usize> {
    runs.iter()
        .scan(0usize, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

/// `R_{n-1}, R_{n-2}, …, R_{n-m+1}` from border knowledge alone.
pub fn tail_run_values(p: &PartialRunInfo) -> Result<Vec<i64>> {
    (1..p.m).map(|k| p.tail_run_value(k)).collect()
}

/// Periodic run vector `R̃_k = (R_k + R_{n-k}) / 2`. Requires a rotation
/// with differing first and last element, i.e. an even number of runs.
pub fn periodic_run_vector(rle: &RunLengthEncoding) -> Result<RunVector> {
    let gamma = rle.gamma();
    if gamma % 2 == 1 {
        return Err(Error::OddGamma(gamma));
    }
    let r = run_vector(rle);
    let n = rle.len();
    let values = (1..n)
        .map(|k| {
            let sum = r.get(k) + r.get(n - k);
            if sum % 2 != 0 {
                return Err(Error::Internal(format!(
                    "R_{k} + R_{} = {sum} is odd",
                    n - k
                )));
            }
            Ok(sum / 2)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RunVector {
        kind: CorrelationKind::Periodic,
        n,
        gamma,
        values,
    })
}

/// Reference periodic run vector: sums `(-1)^{|u|}` over every p-substring
/// `r(i, j)`, `i ≠ j`, of the cyclically extended run length encoding.
pub fn periodic_run_vector_bruteforce(rle: &RunLengthEncoding) -> Result<RunVector> {
    let gamma = rle.gamma();
    if gamma % 2 == 1 {
        return Err(Error::OddGamma(gamma));
    }
    let n = rle.len();
    let r = rle.runs();
    let mut values = vec![0i64; n - 1];
    for i in 0..gamma {
        // p-substrings starting at run i, of 1..γ-1 runs
        let mut sum = 0usize;
        for len in 1..gamma {
            sum += r[(i + len - 1) % gamma];
            values[sum - 1] += if len % 2 == 0 { 1 } else { -1 };
        }
    }
    Ok(RunVector {
        kind: CorrelationKind::Periodic,
        n,
        gamma,
        values,
    })
}

/// Rebuilds `C̃` from `C̃_0 = n`, `C̃_1 = n - 2γ` and
/// `C̃_{k+1} = 2C̃_k - C̃_{k-1} - 4R̃_k`. A constant sequence is passed as
/// `γ = 0` with an all-zero `R̃`.
pub fn periodic_autocorr_from_runvector(
    n: usize,
    gamma: usize,
    rv: &RunVector,
) -> Result<AutocorrVector> {
    check_periodic_input(n, gamma, rv)?;
    let mut c = vec![0i64; n + 1];
    c[0] = n as i64;
    c[1] = n as i64 - 2 * gamma as i64;
    for k in 1..n {
        c[k + 1] = 2 * c[k] - c[k - 1] - 4 * rv.values[k - 1];
    }
    finish_periodic(n, c)
}

/// `C̃_k = n - 2γ(n-k) - 4 Σ_{j=k+1}^{n-1} (j-k) R̃_j`.
pub fn periodic_autocorr_from_runvector_backward(
    n: usize,
    gamma: usize,
    rv: &RunVector,
) -> Result<AutocorrVector> {
    check_periodic_input(n, gamma, rv)?;
    let (ni, g) = (n as i64, gamma as i64);
    let mut c = vec![0i64; n + 1];
    let mut plain = 0i64;
    let mut weighted = 0i64;
    for k in (0..=n).rev() {
        if k + 1 < n {
            let j = k + 1;
            plain += rv.values[j - 1];
            weighted += j as i64 * rv.values[j - 1];
        }
        let ki = k as i64;
        c[k] = ni - 2 * g * (ni - ki) - 4 * (weighted - ki * plain);
    }
    if c[0] != ni {
        return Err(Error::Inconsistent(format!(
            "periodic value at lag 0 is {} instead of {n}",
            c[0]
        )));
    }
    finish_periodic(n, c)
}

fn check_periodic_input(n: usize, gamma: usize, rv: &RunVector) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if rv.values.len() + 1 != n {
        return Err(Error::LengthMismatch {
            expected: n - 1,
            got: rv.values.len(),
        });
    }
    if gamma % 2 == 1 || gamma > n {
        return Err(Error::Inconsistent(format!(
            "gamma = {gamma} invalid for a periodic run vector"
        )));
    }
    Ok(())
}

fn finish_periodic(n: usize, c: Vec<i64>) -> Result<AutocorrVector> {
    if c[n] != n as i64 {
        return Err(Error::Inconsistent(format!(
            "periodic value at lag n is {} instead of {n}",
            c[n]
        )));
    }
    if let Some(k) = (1..n).find(|&k| c[k] != c[n - k]) {
        return Err(Error::Inconsistent(format!(
            "periodic vector not symmetric at lag {k}"
        )));
    }
    AutocorrVector::new(CorrelationKind::Periodic, c)
}

/// Smallest left rotation after which the first and last elements differ.
pub fn canonicalize_periodic(a: &BinarySequence) -> Result<(BinarySequence, usize)> {
    let x = a.as_slice();
    let n = x.len();
    let s = (0..n)
        .find(|&s| x[s] != x[(s + n - 1) % n])
        .ok_or(Error::ConstantSequence)?;
    Ok((a.rotate_left(s), s))
}

/// Periodic autocorrelations through the periodic run vector of the
/// canonical rotation; constant sequences short-circuit to `C̃_k = n`.
pub fn periodic_autocorr_fast(a: &BinarySequence) -> Result<AutocorrVector> {
    let n = a.len();
    if a.is_constant() {
        return AutocorrVector::new(CorrelationKind::Periodic, vec![n as i64; n + 1]);
    }
    let (rotated, _) = canonicalize_periodic(a)?;
    let rle = rotated.to_rle();
    let rv = periodic_run_vector(&rle)?;
    periodic_autocorr_from_runvector(n, rle.gamma(), &rv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autocorr::{aperiodic_direct, periodic_direct};

    fn rle(runs: &[usize]) -> RunLengthEncoding {
        RunLengthEncoding::positive(runs.to_vec()).unwrap()
    }

    const R_6_7: [i64; 12] = [0, 0, 0, 0, 0, -1, -1, 0, 0, 0, 0, 0];
    const R_7_3_3: [i64; 12] = [0, 0, -3, 0, 0, 1, -1, 0, 0, 1, 0, 0];
    const R_3_6_3_3: [i64; 14] = [0, 0, -4, 0, 0, -1, 0, 0, 3, 0, 0, -2, 0, 0];
    const C_6_7: [i64; 14] = [13, 10, 7, 4, 1, -2, -5, -6, -5, -4, -3, -2, -1, 0];
    const C_3_6_3_3: [i64; 16] = [15, 8, 1, -6, -5, -4, -3, 0, 3, 6, 3, 0, -3, -2, -1, 0];

    #[test]
    fn second_difference_examples() {
        let d = second_difference(&C_6_7).unwrap();
        assert_eq!(d, vec![0, 0, 0, 0, 0, 2, 2, 0, 0, 0, 0, 0]);
        assert_eq!(d, R_6_7.iter().map(|r| -2 * r).collect::<Vec<_>>());
        assert_eq!(second_difference(&[1, 2, 3, 4]).unwrap(), vec![0, 0]);
        assert!(second_difference(&[1, 2]).is_err());
    }

    #[test]
    fn second_difference_of_periodic_example() {
        let p = periodic_direct(&rle(&[3, 6, 3, 3]).to_sequence());
        let rt = [0i64, 0, -3, 0, 0, 1, 0, 0, 1, 0, 0, -3, 0, 0];
        let d = second_difference(p.values()).unwrap();
        assert_eq!(d, rt.iter().map(|r| -4 * r).collect::<Vec<_>>());
    }

    #[test]
    fn run_vector_worked_examples() {
        assert_eq!(run_vector(&rle(&[6, 7])).values(), &R_6_7);
        assert_eq!(run_vector(&rle(&[7, 3, 3])).values(), &R_7_3_3);
        assert_eq!(run_vector(&rle(&[3, 6, 3, 3])).values(), &R_3_6_3_3);
    }

    #[test]
    fn bruteforce_worked_examples() {
        let r = run_vector_bruteforce(&rle(&[3, 6, 3, 3]));
        assert_eq!(r.get(6), -1);
        assert_eq!(r.values(), &R_3_6_3_3);
        let r = run_vector_bruteforce(&rle(&[6, 7]));
        assert!((1..13).filter(|&k| k != 6 && k != 7).all(|k| r.get(k) == 0));
        assert!(run_vector_bruteforce(&rle(&[9]))
            .values()
            .iter()
            .all(|&v| v == 0));
    }

    #[test]
    fn additions_follow_gamma_formula() {
        for runs in [
            &[6, 7][..],
            &[7, 3, 3],
            &[3, 6, 3, 3],
            &[5],
            &[1, 1, 1, 1, 1, 1, 1],
        ] {
            let (_, counts) = run_vector_counted(&rle(runs));
            let g = runs.len() as u64;
            assert_eq!(counts.additions, (g - 1) * (g + 2));
            assert_eq!(counts.multiplications, 0);
        }
        assert_eq!(run_vector_additions(3), 10);
    }

    #[test]
    fn forward_reconstruction() {
        let c = autocorr_from_runvector(13, 2, &run_vector(&rle(&[6, 7]))).unwrap();
        assert_eq!(c.values(), &C_6_7);
        let c = autocorr_from_runvector(15, 4, &run_vector(&rle(&[3, 6, 3, 3]))).unwrap();
        assert_eq!(c.values(), &C_3_6_3_3);
        let zeros = RunVector::from_values(CorrelationKind::Aperiodic, 1, vec![0; 4]);
        assert_eq!(
            autocorr_from_runvector(5, 1, &zeros).unwrap().values(),
            &[5, 4, 3, 2, 1, 0]
        );
    }

    #[test]
    fn backward_reconstruction_matches_forward() {
        for runs in [&[6, 7][..], &[7, 3, 3], &[3, 6, 3, 3], &[5], &[1]] {
            let r = rle(runs);
            let rv = run_vector(&r);
            let fwd = autocorr_from_runvector(r.len(), r.gamma(), &rv).unwrap();
            let bwd = autocorr_from_runvector_backward(r.len(), r.gamma(), &rv).unwrap();
            assert_eq!(fwd, bwd);
            assert_eq!(bwd.get(r.len()), 0);
            assert_eq!(
                bwd.get(r.len() - 1),
                if r.gamma() % 2 == 1 { 1 } else { -1 }
            );
        }
    }

    #[test]
    fn reconstruction_rejects_inconsistent_input() {
        let mut values = R_6_7.to_vec();
        values[3] += 1;
        let bad = RunVector::from_values(CorrelationKind::Aperiodic, 2, values);
        assert!(matches!(
            autocorr_from_runvector(13, 2, &bad),
            Err(Error::Inconsistent(_))
        ));
        assert!(matches!(
            autocorr_from_runvector_backward(13, 2, &bad),
            Err(Error::Inconsistent(_))
        ));
        let short = RunVector::from_values(CorrelationKind::Aperiodic, 2, vec![0; 3]);
        assert!(matches!(
            autocorr_from_runvector(13, 2, &short),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn fast_path_with_and_without_alternation() {
        for s in ["+-+-+--+-+-+-", "+++++--++-+-+", "+", "+-", "++++++-------"] {
            let a: BinarySequence = s.parse().unwrap();
            let direct = aperiodic_direct(&a);
            assert_eq!(autocorr_fast(&a, false).unwrap(), direct);
            assert_eq!(autocorr_fast(&a, true).unwrap(), direct);
        }
    }

    #[test]
    fn prefix_tables_of_two_runs() {
        let t = prefix_sum_tables(&rle(&[6, 7]));
        assert_eq!(t.s(), &[6]);
        assert_eq!(t.t(), &[7]);
        let f_s: Vec<i64> = (1..13).map(|k| t.f_s(k)).collect();
        let f_t: Vec<i64> = (1..13).map(|k| t.f_t(k)).collect();
        assert_eq!(f_s, [0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(f_t, [0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0]);
        assert_eq!(t.f_s(-3), 0);
        assert_eq!(t.f_s(100), 0);
    }

    #[test]
    fn prefix_tables_of_worked_border() {
        // any run length encoding starting 5,2,2,1 has s_1..s_4 = 5,7,9,10
        let t = prefix_sum_tables(&rle(&[5, 2, 2, 1, 2, 6, 5, 3, 1, 4]));
        assert_eq!(&t.s()[..4], &[5, 7, 9, 10]);
        let f_s: Vec<i64> = (1..12).map(|k| t.f_s(k)).collect();
        assert_eq!(f_s, [0, 0, 0, 0, -1, 0, 1, 0, -1, 1, 0]);
        let f_t: Vec<i64> = (1..12).map(|k| t.f_t(k)).collect();
        assert_eq!(f_t, [0, 0, 0, -1, 1, 0, 0, -1, 0, 0, 0]);
    }

    #[test]
    fn prefix_formula_examples() {
        assert_eq!(
            run_vector_prefix_formula(&rle(&[7, 3, 3])).values(),
            &R_7_3_3
        );
        assert_eq!(run_vector_prefix_formula(&rle(&[6, 7])).values(), &R_6_7);
        assert_eq!(
            run_vector_prefix_formula(&rle(&[3, 6, 3, 3])).values(),
            &R_3_6_3_3
        );
    }

    #[test]
    fn tail_values_of_worked_border() {
        let p =
            PartialRunInfo::new(12, vec![5, 2, 2, 1], vec![4, 1, 3], Some(Parity::Even)).unwrap();
        assert_eq!(p.s(), vec![5, 7, 9, 10]);
        assert_eq!(p.t(), vec![4, 5, 8]);
        assert_eq!(p.prefix_remainder(), 2);
        assert_eq!(p.suffix_remainder(), 4);
        assert_eq!(p.border_f_s(), vec![0, 0, 0, 0, -1, 0, 1, 0, -1, 1, 0]);
        assert_eq!(p.border_f_t(), vec![0, 0, 0, -1, 1, 0, 0, -1, 0, 0, 0]);
        assert_eq!(p.inner_term(9), Ok(2));
        assert_eq!(p.inner_term(10), Ok(-2));
        assert_eq!(p.inner_term(11), Ok(-2));
        assert!((1..9).all(|k| p.inner_term(k) == Ok(0)));
        assert_eq!(
            tail_run_values(&p).unwrap(),
            vec![0, 0, 0, -1, 0, 0, 1, -1, 1, -1, -2]
        );
        assert_eq!(
            p.tail_run_value(12),
            Err(Error::BeyondBorder { k: 12, m: 12 })
        );
        assert_eq!(
            p.with_parity(None).tail_run_value(3),
            Err(Error::UnknownParity)
        );
    }

    #[test]
    fn tail_values_from_border_signs() {
        // runs 5,2,2,1,2,… and …,5,3,1,4 with a `+` start
        let prefix: Vec<i8> = "+++++--++-++"
            .chars()
            .map(|c| if c == '+' { 1 } else { -1 })
            .collect();
        let suffix: Vec<i8> = "++++---+----"
            .chars()
            .map(|c| if c == '+' { 1 } else { -1 })
            .collect();
        let p = PartialRunInfo::from_border(&prefix, &suffix, Some(Parity::Even)).unwrap();
        assert_eq!(p.prefix_runs(), &[5, 2, 2, 1]);
        assert_eq!(p.suffix_runs(), &[4, 1, 3]);
        assert_eq!(
            tail_run_values(&p).unwrap(),
            vec![0, 0, 0, -1, 0, 0, 1, -1, 1, -1, -2]
        );
    }

    #[test]
    fn tail_values_of_complete_sequence() {
        let r = rle(&[7, 3, 3]);
        let p = PartialRunInfo::from_sequence(&r.to_sequence(), 13).unwrap();
        assert_eq!(p.gamma_parity(), Some(Parity::Odd));
        let tail = tail_run_values(&p).unwrap();
        let mut full = R_7_3_3.to_vec();
        full.reverse();
        assert_eq!(tail, full);
    }

    #[test]
    fn partial_info_validation() {
        assert!(PartialRunInfo::new(0, vec![], vec![], None).is_err());
        assert!(PartialRunInfo::new(5, vec![5], vec![], None).is_err());
        assert!(PartialRunInfo::new(5, vec![2, 0], vec![], None).is_err());
        assert!(PartialRunInfo::from_border(&[1, 1], &[1], None).is_err());
        let p = PartialRunInfo::new(1, vec![], vec![], Some(Parity::Odd)).unwrap();
        assert_eq!(tail_run_values(&p).unwrap(), Vec::<i64>::new());
    }

    #[test]
    fn periodic_run_vector_examples() {
        assert_eq!(periodic_run_vector(&rle(&[6, 7])).unwrap().values(), &R_6_7);
        let rt = periodic_run_vector(&rle(&[3, 6, 3, 3])).unwrap();
        assert_eq!(rt.values(), &[0, 0, -3, 0, 0, 1, 0, 0, 1, 0, 0, -3, 0, 0]);
        // -R~_1 counts unit runs
        assert_eq!(rt.get(1), 0);
        let with_units = periodic_run_vector(&rle(&[1, 3, 1, 2])).unwrap();
        assert_eq!(with_units.get(1), -2);
        assert_eq!(
            periodic_run_vector(&rle(&[7, 3, 3])),
            Err(Error::OddGamma(3))
        );
    }

    #[test]
    fn periodic_bruteforce_examples() {
        let rt = periodic_run_vector_bruteforce(&rle(&[3, 6, 3, 3])).unwrap();
        assert_eq!(rt.get(6), 1);
        assert_eq!(rt.values(), &[0, 0, -3, 0, 0, 1, 0, 0, 1, 0, 0, -3, 0, 0]);
        let rt = periodic_run_vector_bruteforce(&rle(&[6, 7])).unwrap();
        assert_eq!(rt.get(7), -1);
        assert_eq!(
            periodic_run_vector_bruteforce(&rle(&[1, 1, 1])),
            Err(Error::OddGamma(3))
        );
    }

    #[test]
    fn periodic_reconstruction() {
        let r = rle(&[3, 6, 3, 3]);
        let rt = periodic_run_vector(&r).unwrap();
        let c = periodic_autocorr_from_runvector(15, 4, &rt).unwrap();
        assert_eq!(c.get(1), 7);
        assert_eq!(c, periodic_direct(&r.to_sequence()));
        assert_eq!(
            periodic_autocorr_from_runvector_backward(15, 4, &rt).unwrap(),
            c
        );

        let zeros = RunVector::from_values(CorrelationKind::Periodic, 0, vec![0; 5]);
        assert_eq!(
            periodic_autocorr_from_runvector(6, 0, &zeros)
                .unwrap()
                .values(),
            &[6; 7]
        );
        assert_eq!(
            periodic_autocorr_from_runvector_backward(6, 0, &zeros)
                .unwrap()
                .values(),
            &[6; 7]
        );
    }

    #[test]
    fn canonical_rotation() {
        let a: BinarySequence = "-++--".parse().unwrap();
        let (b, s) = canonicalize_periodic(&a).unwrap();
        assert_eq!((b.to_string().as_str(), s), ("++---", 1));
        let a: BinarySequence = "+--+-".parse().unwrap();
        assert_eq!(canonicalize_periodic(&a).unwrap().1, 0);
        assert_eq!(
            canonicalize_periodic(&"+++".parse().unwrap()),
            Err(Error::ConstantSequence)
        );
    }

    #[test]
    fn periodic_fast_path() {
        for s in ["-++--", "+++", "+-", "+", "+++------+++---", "--+-+++-"] {
            let a: BinarySequence = s.parse().unwrap();
            assert_eq!(
                periodic_autocorr_fast(&a).unwrap(),
                periodic_direct(&a),
                "{s}"
            );
        }
    }
}
