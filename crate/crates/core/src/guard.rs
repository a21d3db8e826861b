//! Size guard for exhaustive enumerations.

use thiserror::Error;

/// Default ceiling on candidate assignments an enumeration may visit.
pub const DEFAULT_MAX_CANDIDATES: u128 = 1_000_000;

/// Refusal raised before an enumeration starts, never after a partial result.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("size guard exceeded: {candidates} candidate assignments (limit {limit})")]
pub struct GuardExceeded {
    pub candidates: u128,
    pub limit: u128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeGuard {
    pub max_candidates: u128,
}

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard {
            max_candidates: DEFAULT_MAX_CANDIDATES,
        }
    }
}

impl SizeGuard {
    pub fn new(max_candidates: u128) -> Self {
        SizeGuard { max_candidates }
    }

    pub fn check(&self, candidates: u128) -> Result<(), GuardExceeded> {
        if candidates > self.max_candidates {
            Err(GuardExceeded {
                candidates,
                limit: self.max_candidates,
            })
        } else {
            Ok(())
        }
    }
}

/// Saturating product used when sizing search spaces.
pub(crate) fn sat_mul(a: u128, b: u128) -> u128 {
    a.saturating_mul(b)
}

pub(crate) fn sat_pow(base: u128, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}
