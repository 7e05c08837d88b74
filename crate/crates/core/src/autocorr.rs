//! Direct-definition autocorrelations. These O(n²) sums are the reference
//! every run-structure route is checked against.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::ops::{NoCount, OpCounts, Tally};
use crate::seqcore::BinarySequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CorrelationKind {
    Aperiodic,
    Periodic,
}

/// `C_0..C_n` (aperiodic, `C_n = 0`) or `C̃_0..C̃_n` (periodic, `C̃_n = n`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AutocorrVector {
    kind: CorrelationKind,
    values: Vec<i64>,
}

impl AutocorrVector {
    pub fn new(kind: CorrelationKind, values: Vec<i64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::LengthMismatch {
                expected: 2,
                got: values.len(),
            });
        }
        Ok(Self { kind, values })
    }

    pub fn kind(&self) -> CorrelationKind {
        self.kind
    }

    /// Sequence length `n`; the vector holds `n + 1` values.
    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, k: usize) -> i64 {
        self.values[k]
    }

    pub fn into_values(self) -> Vec<i64> {
        self.values
    }

    /// Off-peak lags `1..=n-1`.
    pub fn sidelobes(&self) -> &[i64] {
        &self.values[1..self.values.len() - 1]
    }

    /// `Σ_{k=1}^{n-1} C_k²`.
    pub fn sidelobe_energy(&self) -> u64 {
        self.sidelobes().iter().map(|&c| (c * c) as u64).sum()
    }

    /// Returns a description of the first violated structural invariant.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let n = self.n() as i64;
        let v = &self.values;
        if v[0] != n {
            return Err(format!("value at lag 0 is {} instead of {n}", v[0]));
        }
        match self.kind {
            CorrelationKind::Aperiodic => {
                if v[n as usize] != 0 {
                    return Err(format!("C_n = {} instead of 0", v[n as usize]));
                }
                for (k, &c) in v.iter().enumerate() {
                    if c.abs() > n - k as i64 {
                        return Err(format!("|C_{k}| = {} exceeds n - k", c.abs()));
                    }
                }
            }
            CorrelationKind::Periodic => {
                if v[n as usize] != n {
                    return Err(format!(
                        "periodic value at lag n is {} instead of {n}",
                        v[n as usize]
                    ));
                }
                for k in 1..n as usize {
                    if v[k] != v[n as usize - k] {
                        return Err(format!("periodic vector not symmetric at lag {k}"));
                    }
                    if v[k].abs() > n {
                        return Err(format!("|C~_{k}| exceeds n"));
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for AutocorrVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_ints(f, &self.values)
    }
}

pub(crate) fn write_ints(f: &mut fmt::Formatter<'_>, values: &[i64]) -> fmt::Result {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

pub(crate) fn aperiodic_values<T: Tally>(a: &[i8], tally: &mut T) -> Vec<i64> {
    let n = a.len();
    let mut c = vec![0i64; n + 1];
    c[0] = n as i64;
    for k in 1..n {
        let overlap = n - k;
        let mut sum = 0i64;
        for i in 0..overlap {
            sum += i64::from(a[i] * a[i + k]);
        }
        tally.mul(overlap as u64);
        tally.add(overlap as u64 - 1);
        c[k] = sum;
    }
    c
}

/// `C_k = Σ_{i=1}^{n-k} a_i a_{i+k}` with `C_n = 0`.
pub fn aperiodic_direct(a: &BinarySequence) -> AutocorrVector {
    AutocorrVector {
        kind: CorrelationKind::Aperiodic,
        values: aperiodic_values(a.as_slice(), &mut NoCount),
    }
}

/// [`aperiodic_direct`] together with the number of multiplications and
/// additions spent on the off-peak lags: `n(n-1)/2` and `(n-1)(n-2)/2`.
pub fn aperiodic_direct_counted(a: &BinarySequence) -> (AutocorrVector, OpCounts) {
    let mut counts = OpCounts::default();
    let values = aperiodic_values(a.as_slice(), &mut counts);
    (
        AutocorrVector {
            kind: CorrelationKind::Aperiodic,
            values,
        },
        counts,
    )
}

/// `C̃_k = Σ_{i=1}^{n} a_i a_{i+k}` with cyclic indices; `C̃_n = n`.
pub fn periodic_direct(a: &BinarySequence) -> AutocorrVector {
    let a = a.as_slice();
    let n = a.len();
    let mut values = vec![0i64; n + 1];
    for (k, slot) in values.iter_mut().enumerate() {
        *slot = (0..n).map(|i| i64::from(a[i] * a[(i + k) % n])).sum();
    }
    AutocorrVector {
        kind: CorrelationKind::Periodic,
        values,
    }
}

/// Exact merit factor `n² / (2 Σ_{k≥1} C_k²)`, kept as an unreduced ratio.
/// A zero denominator (n = 1, or a hypothetical vector with no sidelobes)
/// is the distinguished undefined value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MeritFactor {
    pub numerator: u64,
    pub denominator: u64,
}

impl MeritFactor {
    pub fn from_energy(n: usize, energy: u64) -> Self {
        Self {
            numerator: (n as u64) * (n as u64),
            denominator: 2 * energy,
        }
    }

    pub fn is_undefined(&self) -> bool {
        self.denominator == 0
    }

    pub fn value(&self) -> Option<f64> {
        (!self.is_undefined()).then(|| self.numerator as f64 / self.denominator as f64)
    }

    /// Compares by value; undefined sorts above every finite value.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match (self.is_undefined(), other.is_undefined()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => {
                let lhs = u128::from(self.numerator) * u128::from(other.denominator);
                let rhs = u128::from(other.numerator) * u128::from(self.denominator);
                lhs.cmp(&rhs)
            }
        }
    }
}

impl fmt::Display for MeritFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{}/{} ({v:.6})", self.numerator, self.denominator),
            None => f.write_str("undefined"),
        }
    }
}

pub fn merit_factor(c: &AutocorrVector) -> MeritFactor {
    MeritFactor::from_energy(c.n(), c.sidelobe_energy())
}

/// `max_{1≤k≤n-1} |C_k|`.
pub fn peak_sidelobe_level(c: &AutocorrVector) -> Result<u64> {
    c.sidelobes()
        .iter()
        .map(|v| v.unsigned_abs())
        .max()
        .ok_or(Error::TooShort {
            n: c.n(),
            required: 2,
        })
}

/// `|C_k| ≤ 1` for every off-peak lag.
pub fn is_barker(a: &BinarySequence) -> bool {
    peak_sidelobe_level(&aperiodic_direct(a)).map_or(true, |psl| psl <= 1)
}
