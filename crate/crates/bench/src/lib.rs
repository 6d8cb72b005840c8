//! Workloads shared by the criterion benches.

use permcensus::oracle::{class_size, partitions, stat_holds};
use permcensus::{Census, Count, StatBase, StatKind};

/// Fills the full `(n, k)` table for one statistic from a cold engine and
/// returns the `S_n` count.
pub fn recurrence_table(base: StatBase, q: u64, n: u64) -> Count {
    let mut census = Census::new();
    census.count(StatKind::plain(base), q, n, 1).expect("valid query")
}

/// `S_n` count by summing class sizes over all partitions of `n`.
pub fn partition_sum(base: StatBase, q: u64, n: u64) -> Count {
    partitions(n)
        .filter(|p| stat_holds(p.parts(), base, q))
        .map(|p| class_size(&p, n))
        .sum()
}
