//! Arithmetic operation counters for the instrumented code paths.

use std::ops::AddAssign;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounts {
    pub additions: u64,
    pub multiplications: u64,
}

impl OpCounts {
    pub fn total(&self) -> u64 {
        self.additions + self.multiplications
    }
}

impl AddAssign for OpCounts {
    fn add_assign(&mut self, rhs: Self) {
        self.additions += rhs.additions;
        self.multiplications += rhs.multiplications;
    }
}

/// Sink for operation counts. [`NoCount`] compiles away on the hot paths.
pub(crate) trait Tally {
    fn add(&mut self, k: u64);
    fn mul(&mut self, k: u64);
}

pub(crate) struct NoCount;

impl Tally for NoCount {
    #[inline(always)]
    fn add(&mut self, _: u64) {}
    #[inline(always)]
    fn mul(&mut self, _: u64) {}
}

impl Tally for OpCounts {
    #[inline(always)]
    fn add(&mut self, k: u64) {
        self.additions += k;
    }
    #[inline(always)]
    fn mul(&mut self, k: u64) {
        self.multiplications += k;
    }
}
