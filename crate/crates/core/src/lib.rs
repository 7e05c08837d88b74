//! Autocorrelations of binary (±1) sequences computed through their run
//! structure.
//!
//! The aperiodic autocorrelation vector `C` of a sequence and its run vector
//! `R` are tied together by `Δ²C = -2R`; the periodic counterparts satisfy
//! `Δ²C̃ = -4R̃`. This crate computes both sides independently: the direct
//! O(n²) sums live in [`autocorr`], the run-structure routes (fast two-step
//! algorithm, run-block enumeration, prefix-sum formula, partial-border
//! evaluation) in [`runvector`]. [`skew`] covers skew-symmetric sequences and
//! their balanced run length encodings, and [`search`] uses the border
//! formulas to prune a low-autocorrelation sequence search.
//!
//! ```
//! use runcorr::{autocorr, runvector, seqcore::RunLengthEncoding};
//!
//! let rle: RunLengthEncoding = "+:7,3,3".parse().unwrap();
//! let r = runvector::run_vector(&rle);
//! assert_eq!(r.values(), &[0, 0, -3, 0, 0, 1, -1, 0, 0, 1, 0, 0]);
//!
//! let c = runvector::autocorr_from_runvector(rle.len(), rle.gamma(), &r).unwrap();
//! assert_eq!(c, autocorr::aperiodic_direct(&rle.to_sequence()));
//! ```

pub mod autocorr;
pub mod error;
pub mod ops;
pub mod par;
pub mod runvector;
pub mod search;
pub mod seqcore;
pub mod skew;
pub mod verify;

pub use error::{Error, Result};
pub use seqcore::{BinarySequence, RunLengthEncoding};
