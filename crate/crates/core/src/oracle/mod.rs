//! Brute-force ground truth for the census engine.
//!
//! Two independent routes: summing conjugacy-class sizes over the partitions
//! of `n` (for `S_n`), and enumerating every element of a coset `C(n, k)`
//! explicitly. Neither touches the recurrences.
//!
//! Coset elements are formed as `a · (1, 2, ..., k)` for every `a` fixing
//! `1, ..., k-1`, under [`Composition::LeftToRight`] unless a convention is
//! passed explicitly: `a` is applied first, then the `k`-cycle. The
//! resulting elements differ pointwise between conventions, but the two
//! products are mutually inverse and share a cycle type, so every count is
//! convention-independent.

mod partition;
mod permutation;

use std::collections::BTreeMap;

pub use partition::{class_size, partitions, stat_holds, Partition, Partitions};
pub use permutation::{Composition, Permutation};

use crate::census::StatKind;
use crate::error::{Error, Result};
use crate::numeric::{factorial, Count};

/// Largest problem sizes the oracles will attempt.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    /// Maximum degree `n` for partition summation.
    pub partition_degree: u64,
    /// Maximum number of moved points `n - k + 1` for coset enumeration.
    pub coset_points: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { partition_degree: 14, coset_points: 9 }
    }
}

/// Cycle-type histogram of one coset.
pub type CycleTypeCounts = BTreeMap<Partition, u64>;

/// Brute-force counter with a cache of enumerated coset histograms.
#[derive(Debug, Default)]
pub struct Oracle {
    limits: OracleLimits,
    cosets: BTreeMap<(u64, u64, Composition), CycleTypeCounts>,
}

impl Oracle {
    pub fn new(limits: OracleLimits) -> Self {
        Oracle { limits, cosets: BTreeMap::new() }
    }

    pub fn limits(&self) -> OracleLimits {
        self.limits
    }

    /// Count in `S_n` by summing class sizes over matching partitions.
    pub fn sym(&self, kind: StatKind, q: u64, n: u64) -> Result<Count> {
        if q == 0 {
            return Err(Error::ZeroModulus);
        }
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        if n > self.limits.partition_degree {
            return Err(Error::LimitExceeded {
                what: "n",
                got: n,
                limit: self.limits.partition_degree,
            });
        }
        let hits: Count = partitions(n)
            .filter(|p| stat_holds(p.parts(), kind.base, q))
            .map(|p| class_size(&p, n))
            .sum();
        Ok(if kind.complemented { factorial(n) - hits } else { hits })
    }

    /// Count in `C(n, k)` by explicit enumeration, left-to-right products.
    pub fn coset(&mut self, kind: StatKind, q: u64, n: u64, k: u64) -> Result<Count> {
        self.coset_with(kind, q, n, k, Composition::LeftToRight)
    }

    pub fn coset_with(
        &mut self,
        kind: StatKind,
        q: u64,
        n: u64,
        k: u64,
        convention: Composition,
    ) -> Result<Count> {
        if q == 0 {
            return Err(Error::ZeroModulus);
        }
        let limit = self.limits.coset_points;
        let types = match self.cosets.entry((n, k, convention)) {
            std::collections::btree_map::Entry::Occupied(e) => e.into_mut(),
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(enumerate_coset(n, k, convention, limit)?)
            }
        };
        let hits: u64 = types
            .iter()
            .filter(|(p, _)| stat_holds(p.parts(), kind.base, q))
            .map(|(_, &c)| c)
            .sum();
        let total: u64 = types.values().sum();
        Ok(Count::from(if kind.complemented { total - hits } else { hits }))
    }
}

/// Count in `S_n` with default limits.
pub fn oracle_sym(kind: StatKind, q: u64, n: u64) -> Result<Count> {
    Oracle::default().sym(kind, q, n)
}

/// Count in `C(n, k)` with default limits.
pub fn oracle_coset(kind: StatKind, q: u64, n: u64, k: u64) -> Result<Count> {
    Oracle::default().coset(kind, q, n, k)
}

/// Calls `visit` with every element of `C(n, k)`, i.e. `a · (1, ..., k)`
/// for each `a` in the pointwise stabilizer of `{1, ..., k-1}`, together
/// with that `a`.
pub fn for_each_coset_element<F>(
    n: u64,
    k: u64,
    convention: Composition,
    limit: u64,
    mut visit: F,
) -> Result<()>
where
    F: FnMut(&Permutation, &Permutation),
{
    if k == 0 || k > n {
        return Err(Error::InvalidCoset { n, k });
    }
    let moved = n - k + 1;
    if moved > limit {
        return Err(Error::LimitExceeded { what: "n - k + 1", got: moved, limit });
    }
    let (n, k) = (n as usize, k as usize);
    let cycle = Permutation::standard_cycle(n, k);
    // images of the points k..=n (0-based k-1..n) under a, permuted by Heap's algorithm
    let mut tail: Vec<u32> = (k as u32 - 1..n as u32).collect();
    let m = tail.len();
    let mut counters = vec![0usize; m];
    let build = |tail: &[u32]| {
        let mut images: Vec<u32> = (0..k as u32 - 1).collect();
        images.extend_from_slice(tail);
        Permutation::from_zero_based(images)
    };
    let a = build(&tail);
    visit(&a.compose(&cycle, convention), &a);
    let mut i = 1;
    while i < m {
        if counters[i] < i {
            if i % 2 == 0 {
                tail.swap(0, i);
            } else {
                tail.swap(counters[i], i);
            }
            let a = build(&tail);
            visit(&a.compose(&cycle, convention), &a);
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    Ok(())
}

/// Cycle-type histogram of `C(n, k)`.
pub fn enumerate_coset(
    n: u64,
    k: u64,
    convention: Composition,
    limit: u64,
) -> Result<CycleTypeCounts> {
    let mut types = CycleTypeCounts::new();
    for_each_coset_element(n, k, convention, limit, |product, a| {
        let ty = product.cycle_type();
        if a.image(k as u32) == k as u32 {
            // a has support inside {k+1, ..., n}, disjoint from (1..k)
            let mut expected: Vec<u64> = a.cycle_lengths().into_iter().skip(k as usize).collect();
            expected.push(k);
            expected.sort_unstable_by(|x, y| y.cmp(x));
            debug_assert_eq!(ty, expected);
        }
        *types.entry(Partition::new(ty).expect("cycle lengths are positive")).or_insert(0) += 1;
    })?;
    Ok(types)
}
