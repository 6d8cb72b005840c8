use num_bigint::BigUint;

use crate::census::StatBase;
use crate::numeric::{factorial, lcm_all, Count};

/// A cycle type: parts in descending order, summing to the degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    /// Sorts `parts` descending. Zero parts are rejected.
    pub fn new(mut parts: Vec<u64>) -> Option<Self> {
        if parts.contains(&0) {
            return None;
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Some(Partition { parts })
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn total(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// `(part, multiplicity)` for each distinct part, descending by part.
    pub fn multiplicities(&self) -> Vec<(u64, u64)> {
        let mut out: Vec<(u64, u64)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Order of any permutation with this cycle type.
    pub fn order(&self) -> BigUint {
        lcm_all(self.parts.iter().copied())
    }
}

/// Iterator over the partitions of `n` in reverse lexicographic order,
/// starting from `[n]` and ending at `[1, 1, ..., 1]`.
pub struct Partitions {
    next: Option<Vec<u64>>,
}

pub fn partitions(n: u64) -> Partitions {
    Partitions { next: Some(if n == 0 { Vec::new() } else { vec![n] }) }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        let mut a = current.clone();
        let mut spare = 0u64;
        while a.last() == Some(&1) {
            a.pop();
            spare += 1;
        }
        if let Some(last) = a.pop() {
            let x = last - 1;
            spare += 1;
            a.push(x);
            while spare > x {
                a.push(x);
                spare -= x;
            }
            if spare > 0 {
                a.push(spare);
            }
            self.next = Some(a);
        }
        Some(Partition { parts: current })
    }
}

/// Number of permutations of cycle type `p` in `S_n`:
/// `n! / Π_j (j^{m_j} · m_j!)`.
pub fn class_size(p: &Partition, n: u64) -> Count {
    assert_eq!(p.total(), n, "partition does not sum to n");
    let centralizer = p
        .multiplicities()
        .into_iter()
        .fold(Count::from(1u32), |acc, (j, m)| acc * Count::from(j).pow(m as u32) * factorial(m));
    factorial(n) / centralizer
}

/// Whether a permutation of cycle type `parts` satisfies the (uncomplemented)
/// statistic with modulus `q`.
pub fn stat_holds(parts: &[u64], base: StatBase, q: u64) -> bool {
    let q_big = || BigUint::from(q);
    match base {
        StatBase::OrderMultiple => (lcm_all(parts.iter().copied()) % q_big()) == BigUint::from(0u32),
        StatBase::OrderDivides => (q_big() % lcm_all(parts.iter().copied())) == BigUint::from(0u32),
        StatBase::OrderEquals => lcm_all(parts.iter().copied()) == q_big(),
        StatBase::CycleMultiple => parts.iter().any(|&j| j % q == 0),
        StatBase::CycleDivides => parts.iter().any(|&j| q % j == 0),
        StatBase::CycleEquals => parts.contains(&q),
    }
}
