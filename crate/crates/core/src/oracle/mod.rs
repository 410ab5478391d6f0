//! Ground truth for small volumes.
//!
//! [`exact_min`] exhausts every valid configuration; [`family_min`] searches a
//! fixed grammar of rectangle layouts and only gives an upper bound.

mod exact;
mod family;

pub use exact::{exact_min, ExactError, DEFAULT_NODE_BUDGET};
pub use family::family_min;

use crate::constructors::construct;
use crate::continuous::ceil_rho_cont;
use crate::polyomino::LatticeConfig;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub n: u64,
    pub m: u64,
    /// Least double-bubble perimeter found.
    pub value: u64,
    pub config: LatticeConfig,
    /// `true` when the search was exhaustive.
    pub exact: bool,
    pub nodes_explored: u64,
}

/// Best known value for a volume pair measured against `⌈ρ_cont⌉`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapReport {
    pub ceil: u64,
    pub best: OracleResult,
    /// `best.value − ceil`.
    pub gap: u64,
    /// Either the search was exhaustive or the upper bound meets the ceiling.
    pub certified: bool,
}

/// Orders the arguments so that the first volume is the larger.
pub(crate) fn normalize(n: u64, m: u64) -> (u64, u64, bool) {
    if m > n {
        (m, n, true)
    } else {
        (n, m, false)
    }
}

/// Exact search when `n + m <= exact_limit` and it finishes within
/// `node_budget`; otherwise the smaller of the family search and the
/// constructor.
pub fn gap(n: u64, m: u64, exact_limit: u64, node_budget: u64) -> Result<GapReport> {
    let (big, small, _) = normalize(n, m);
    let ceil = ceil_rho_cont(big, small)?;
    let best = if n + m <= exact_limit {
        match exact_min(n, m, node_budget) {
            Ok(r) => Some(r),
            Err(ExactError::BudgetExceeded(_)) => None,
            Err(ExactError::Invalid(e)) => return Err(e),
        }
    } else {
        None
    };
    let best = match best {
        Some(r) => r,
        None => upper_bound(n, m)?,
    };
    let gap = best.value - ceil;
    Ok(GapReport { ceil, certified: best.exact || gap == 0, gap, best })
}

/// The smaller of [`family_min`] and the constructor output.
pub fn upper_bound(n: u64, m: u64) -> Result<OracleResult> {
    let family = family_min(n, m)?;
    let (big, small, swapped) = normalize(n, m);
    let c = construct(big, small)?;
    if c.rho_db < family.value {
        let config = if swapped { c.config.swapped() } else { c.config };
        Ok(OracleResult { value: c.rho_db, config, ..family })
    } else {
        Ok(family)
    }
}
