//! Benchmark-only crate; see `benches/pipeline.rs`. Shared setup helpers
//! live here so the bench target stays declarative.

use lat34_core::{builtin_amalgams, Amalgam};

/// The amalgam with the largest vertex groups (orders 36 and 48), which
/// dominates validation and pair-search cost.
pub fn largest_amalgam() -> Amalgam {
    builtin_amalgams().remove(17)
}
