//! Shared fixtures for the criterion benchmarks of the coefficient engine.

use tbinom::{FTable, GenBinomTable, TruncSeries};

/// Coefficient table sized like the heaviest documented sweeps.
pub fn warm_table(max_k: usize) -> GenBinomTable {
    GenBinomTable::up_to(max_k)
}

/// Ladder table large enough for `expansion_method2` up to column `k`.
pub fn warm_ftable(max_k: usize) -> FTable {
    FTable::up_to(max_k.saturating_sub(1).max(1))
}

/// The mutually inverse series pair at the given truncation order.
pub fn series_pair(order: usize) -> (TruncSeries, TruncSeries) {
    (tbinom::series_g(order), tbinom::series_h(order))
}
