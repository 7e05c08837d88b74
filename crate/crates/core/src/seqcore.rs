//! Binary sequences, their run length encodings and the elementary
//! constructions built from them (negation, rotation, alternation, element
//! repetition).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported sequence length. All correlation arithmetic is done in
/// `i64`; at this size every reconstruction intermediate stays below `n²`.
pub const MAX_LEN: usize = 1 << 20;

/// Text format of a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceFormat {
    /// `+` for +1, `-` (or U+2212) for -1.
    Signs,
    /// `1` for +1, `0` for -1.
    Bits,
}

/// A finite sequence over {-1, +1}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinarySequence {
    elements: Vec<i8>,
}

impl BinarySequence {
    pub fn new(elements: Vec<i8>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptyInput);
        }
        if elements.len() > MAX_LEN {
            return Err(Error::TooLong(elements.len()));
        }
        if let Some(pos) = elements.iter().position(|&e| e != 1 && e != -1) {
            return Err(Error::InvalidRle(format!(
                "element {} at position {} is not a sign",
                elements[pos],
                pos + 1
            )));
        }
        Ok(Self { elements })
    }

    pub(crate) fn from_signs_unchecked(elements: Vec<i8>) -> Self {
        debug_assert!(!elements.is_empty() && elements.iter().all(|&e| e == 1 || e == -1));
        Self { elements }
    }

    /// The `index`-th sequence of length `n` in lexicographic order of sign
    /// strings (`+` sorts before `-`): bit `n-1-i` of `index` set means
    /// element `i` is -1.
    pub fn from_index(n: usize, index: u64) -> Self {
        assert!((1..=64).contains(&n), "from_index supports 1 <= n <= 64");
        let elements = (0..n)
            .map(|i| {
                if (index >> (n - 1 - i)) & 1 == 1 {
                    -1
                } else {
                    1
                }
            })
            .collect();
        Self { elements }
    }

    /// Parses `text` in the given format. Positions in errors are 1-based
    /// character offsets.
    pub fn parse(text: &str, format: SequenceFormat) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut elements = Vec::with_capacity(text.len());
        for (i, ch) in text.chars().enumerate() {
            let sign = match (format, ch) {
                (SequenceFormat::Signs, '+') => 1,
                (SequenceFormat::Signs, '-' | '\u{2212}') => -1,
                (SequenceFormat::Bits, '1') => 1,
                (SequenceFormat::Bits, '0') => -1,
                _ => {
                    return Err(Error::IllegalCharacter {
                        position: i + 1,
                        found: ch,
                    })
                }
            };
            elements.push(sign);
        }
        Self::new(elements)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.elements
    }

    pub fn into_vec(self) -> Vec<i8> {
        self.elements
    }

    pub fn is_constant(&self) -> bool {
        self.elements.windows(2).all(|w| w[0] == w[1])
    }

    /// Number of runs.
    pub fn gamma(&self) -> usize {
        1 + self.elements.windows(2).filter(|w| w[0] != w[1]).count()
    }

    pub fn to_rle(&self) -> RunLengthEncoding {
        let mut runs = Vec::new();
        let mut current = 1usize;
        for w in self.elements.windows(2) {
            if w[0] == w[1] {
                current += 1;
            } else {
                runs.push(current);
                current = 1;
            }
        }
        runs.push(current);
        RunLengthEncoding {
            first_sign: self.elements[0],
            n: self.elements.len(),
            runs,
        }
    }

    pub fn negate(&self) -> Self {
        Self::from_signs_unchecked(self.elements.iter().map(|&e| -e).collect())
    }

    pub fn reverse(&self) -> Self {
        Self::from_signs_unchecked(self.elements.iter().rev().copied().collect())
    }

    /// Cyclic left shift: `b_i = a_{1 + ((i - 1 + s) mod n)}`.
    pub fn rotate_left(&self, s: usize) -> Self {
        let mut elements = self.elements.clone();
        let n = elements.len();
        elements.rotate_left(s % n);
        Self::from_signs_unchecked(elements)
    }

    /// Flips every element at an even (1-based) position.
    pub fn alternate(&self) -> Self {
        Self::from_signs_unchecked(
            self.elements
                .iter()
                .enumerate()
                .map(|(i, &e)| if i % 2 == 1 { -e } else { e })
                .collect(),
        )
    }

    /// Repeats each element `m` times.
    pub fn repeat_elements(&self, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroRepetition);
        }
        let n = self.elements.len();
        if n.checked_mul(m).is_none_or(|len| len > MAX_LEN) {
            return Err(Error::TooLong(n.saturating_mul(m)));
        }
        Ok(Self::from_signs_unchecked(
            self.elements
                .iter()
                .flat_map(|&e| std::iter::repeat_n(e, m))
                .collect(),
        ))
    }

    pub fn to_sign_string(&self) -> String {
        self.elements
            .iter()
            .map(|&e| if e > 0 { '+' } else { '-' })
            .collect()
    }

    pub fn to_bit_string(&self) -> String {
        self.elements
            .iter()
            .map(|&e| if e > 0 { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Display for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sign_string())
    }
}

impl FromStr for BinarySequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, SequenceFormat::Signs)
    }
}

/// Run lengths of a binary sequence together with the sign of its first
/// run. Without the sign a run length encoding is shared by `a` and `-a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RunLengthEncoding {
    first_sign: i8,
    n: usize,
    runs: Vec<usize>,
}

impl RunLengthEncoding {
    pub fn new(first_sign: i8, runs: Vec<usize>) -> Result<Self> {
        if first_sign != 1 && first_sign != -1 {
            return Err(Error::InvalidRle(format!(
                "first sign must be +1 or -1, got {first_sign}"
            )));
        }
        if runs.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(pos) = runs.iter().position(|&r| r == 0) {
            return Err(Error::InvalidRle(format!(
                "run {} has length zero",
                pos + 1
            )));
        }
        let n = runs
            .iter()
            .try_fold(0usize, |acc, &r| acc.checked_add(r))
            .filter(|&n| n <= MAX_LEN)
            .ok_or_else(|| Error::TooLong(runs.iter().fold(0usize, |a, &r| a.saturating_add(r))))?;
        Ok(Self {
            first_sign,
            n,
            runs,
        })
    }

    /// A run length encoding starting with a `+` run.
    pub fn positive(runs: Vec<usize>) -> Result<Self> {
        Self::new(1, runs)
    }

    pub fn first_sign(&self) -> i8 {
        self.first_sign
    }

    pub fn runs(&self) -> &[usize] {
        &self.runs
    }

    /// Number of runs.
    pub fn gamma(&self) -> usize {
        self.runs.len()
    }

    /// Sequence length (sum of the runs).
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn to_sequence(&self) -> BinarySequence {
        let mut elements = Vec::with_capacity(self.n);
        let mut sign = self.first_sign;
        for &r in &self.runs {
            elements.extend(std::iter::repeat_n(sign, r));
            sign = -sign;
        }
        BinarySequence::from_signs_unchecked(elements)
    }

    /// Same runs, opposite first sign.
    pub fn negate(&self) -> Self {
        Self {
            first_sign: -self.first_sign,
            ..self.clone()
        }
    }
}

impl From<&RunLengthEncoding> for BinarySequence {
    fn from(r: &RunLengthEncoding) -> Self {
        r.to_sequence()
    }
}

impl From<&BinarySequence> for RunLengthEncoding {
    fn from(a: &BinarySequence) -> Self {
        a.to_rle()
    }
}

impl fmt::Display for RunLengthEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.first_sign > 0 { "+:" } else { "-:" })?;
        for (i, r) in self.runs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

/// `"+:7,3,3"`, `"-:6,7"` or `"7,3,3"` (sign defaults to `+`).
impl FromStr for RunLengthEncoding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::EmptyInput);
        }
        let (sign, body) = if let Some(rest) = s.strip_prefix("+:") {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix("-:").or_else(|| s.strip_prefix("\u{2212}:")) {
            (-1, rest)
        } else {
            (1, s)
        };
        if body.trim().is_empty() {
            return Err(Error::EmptyInput);
        }
        let runs = body
            .split(',')
            .enumerate()
            .map(|(i, field)| {
                let field = field.trim();
                field.parse::<usize>().map_err(|_| {
                    Error::InvalidRle(format!(
                        "field {} ({field:?}) is not a positive integer",
                        i + 1
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(sign, runs)
    }
}

/// Parity of the number of runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(x: usize) -> Self {
        if x.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `(-1)^x` for `x` of this parity.
    pub fn sign(self) -> i64 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }
}
