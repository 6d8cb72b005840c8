//! Memoized evaluation of the coset recurrences for the twelve order and
//! cycle statistics, plus the closed form for elements avoiding cycles of
//! length divisible by `q`.
//!
//! `C(n, k)` is the coset `G(n, k-1) · (1, 2, ..., k)` of the pointwise
//! stabilizer of `{1, ..., k-1}` in `S_n`. It has `(n-k+1)!` elements,
//! `C(n, 1) = S_n` and `C(n, n)` is the single `n`-cycle. `C(n, k)` splits
//! into `G(n, k) · (1..k)`, whose elements have cycle type `{k} ∪ type(a)`
//! for `a ∈ S_{n-k}`, and `n-k` cosets each conjugate to `C(n, k+1)`. This
//! yields, for `k < n`,
//!
//! ```text
//! N(n, k) = first(k, S_{n-k}) + (n-k) · N(n, k+1)
//! ```
//!
//! where `first` depends on the statistic. Tables are filled row by row
//! (`n` ascending, `k` descending within a row), so no recursion depth
//! grows with `n`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{
    divisors, factor_prime_powers, factorials_upto, iverson, residue, Count,
    PrimePowerFactorization,
};

/// The six underlying statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StatBase {
    /// Order is a multiple of `q`.
    OrderMultiple,
    /// Order divides `q`.
    OrderDivides,
    /// Order equals `q`.
    OrderEquals,
    /// Some cycle has length a multiple of `q`.
    CycleMultiple,
    /// Some cycle has length dividing `q`.
    CycleDivides,
    /// Some cycle has length exactly `q`.
    CycleEquals,
}

impl StatBase {
    pub const ALL: [StatBase; 6] = [
        StatBase::OrderMultiple,
        StatBase::OrderDivides,
        StatBase::OrderEquals,
        StatBase::CycleMultiple,
        StatBase::CycleDivides,
        StatBase::CycleEquals,
    ];

    pub fn code(self) -> &'static str {
        match self {
            StatBase::OrderMultiple => "om",
            StatBase::OrderDivides => "od",
            StatBase::OrderEquals => "oe",
            StatBase::CycleMultiple => "cm",
            StatBase::CycleDivides => "cd",
            StatBase::CycleEquals => "ce",
        }
    }

    /// Orientation the recurrences are stated in: the complement for every
    /// statistic except "order divides".
    fn tabulated_complemented(self) -> bool {
        self != StatBase::OrderDivides
    }
}

/// One of the twelve statistics: a base statistic or its complement within
/// the ambient coset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StatKind {
    pub base: StatBase,
    pub complemented: bool,
}

impl StatKind {
    pub const fn new(base: StatBase, complemented: bool) -> Self {
        StatKind { base, complemented }
    }

    pub const fn plain(base: StatBase) -> Self {
        StatKind { base, complemented: false }
    }

    pub const fn barred(base: StatBase) -> Self {
        StatKind { base, complemented: true }
    }

    pub fn all() -> [StatKind; 12] {
        let mut out = [StatKind::plain(StatBase::OrderMultiple); 12];
        for (i, base) in StatBase::ALL.into_iter().enumerate() {
            out[2 * i] = StatKind::plain(base);
            out[2 * i + 1] = StatKind::barred(base);
        }
        out
    }

    pub fn complement(self) -> Self {
        StatKind { complemented: !self.complemented, ..self }
    }

    /// Short name: `om`, `nom`, `od`, `nod`, ...
    pub fn name(self) -> String {
        if self.complemented {
            format!("n{}", self.base.code())
        } else {
            self.base.code().to_string()
        }
    }
}

impl fmt::Display for StatKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for StatKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let (complemented, code) = match lower.strip_prefix('n') {
            Some(rest) => (true, rest),
            None => (false, lower.as_str()),
        };
        StatBase::ALL
            .into_iter()
            .find(|b| b.code() == code)
            .map(|base| StatKind { base, complemented })
            .ok_or_else(|| Error::UnknownStat(s.to_string()))
    }
}

/// A statistic evaluated on the coset `C(n, k)` with modulus `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CosetQuery {
    pub kind: StatKind,
    pub q: u64,
    pub n: u64,
    pub k: u64,
}

impl CosetQuery {
    pub fn new(kind: StatKind, q: u64, n: u64, k: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::ZeroModulus);
        }
        check_coset(n, k)?;
        Ok(CosetQuery { kind, q, n, k })
    }

    /// The query on the full symmetric group `S_n = C(n, 1)`.
    pub fn symmetric(kind: StatKind, q: u64, n: u64) -> Result<Self> {
        Self::new(kind, q, n, 1)
    }
}

fn check_coset(n: u64, k: u64) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::InvalidCoset { n, k });
    }
    Ok(())
}

/// `|C(n, k)| = (n - k + 1)!`.
pub fn coset_size(n: u64, k: u64) -> Result<Count> {
    check_coset(n, k)?;
    Ok(crate::numeric::factorial(n - k + 1))
}

struct Table {
    factorization: PrimePowerFactorization,
    /// `rows[n][k - 1]`; `rows[0]` is empty.
    rows: Vec<Vec<Count>>,
}

/// Memo engine for the coset recurrences.
///
/// Entries are written once and never modified. One engine is meant to be
/// driven by one task; independent engines give identical results.
pub struct Census {
    tables: HashMap<(StatBase, u64), Table>,
    factorials: Vec<Count>,
    ops: u64,
}

impl Default for Census {
    fn default() -> Self {
        Self::new()
    }
}

impl Census {
    pub fn new() -> Self {
        Census { tables: HashMap::new(), factorials: vec![Count::one()], ops: 0 }
    }

    /// Number of big-integer additions, subtractions and multiplications
    /// performed while filling tables so far.
    pub fn arithmetic_ops(&self) -> u64 {
        self.ops
    }

    pub fn reset_ops(&mut self) {
        self.ops = 0;
    }

    /// Number of stored `(statistic, modulus)` tables.
    pub fn table_count(&self) -> usize {
        self.tables.len()
    }

    pub fn stat_count(&mut self, query: &CosetQuery) -> Count {
        let CosetQuery { kind, q, n, k } = *query;
        let value = self.tabulated(kind.base, q, n, k).clone();
        if kind.complemented == kind.base.tabulated_complemented() {
            value
        } else {
            &self.factorials[(n - k + 1) as usize] - value
        }
    }

    /// Validating wrapper around [`Census::stat_count`].
    pub fn count(&mut self, kind: StatKind, q: u64, n: u64, k: u64) -> Result<Count> {
        let query = CosetQuery::new(kind, q, n, k)?;
        Ok(self.stat_count(&query))
    }

    /// `|C(n, k)|` minus the count of the complementary statistic.
    pub fn complement(&mut self, query: &CosetQuery) -> Count {
        let flipped = CosetQuery { kind: query.kind.complement(), ..*query };
        let other = self.stat_count(&flipped);
        &self.factorials[(query.n - query.k + 1) as usize] - other
    }

    /// Stored value in the tabulated orientation of `base`.
    fn tabulated(&mut self, base: StatBase, q: u64, n: u64, k: u64) -> &Count {
        self.ensure(base, q, n);
        &self.tables[&(base, q)].rows[n as usize][(k - 1) as usize]
    }

    /// Fills the `(base, q)` table, and every table it depends on, through
    /// row `n`.
    pub fn ensure(&mut self, base: StatBase, q: u64, n: u64) {
        assert!(q > 0, "modulus must be positive");
        self.grow_factorials(n);
        let have = match self.tables.get(&(base, q)) {
            Some(t) => t.rows.len() as u64 - 1,
            None => {
                let factorization = factor_prime_powers(q).expect("q > 0");
                self.tables
                    .insert((base, q), Table { factorization, rows: vec![Vec::new()] });
                0
            }
        };
        if have >= n {
            return;
        }
        if n >= 2 {
            for m in self.dependencies(base, q) {
                self.ensure(base, m, n - 1);
            }
        }
        for row in have + 1..=n {
            let (values, ops) = self.compute_row(base, q, row);
            self.ops += ops;
            self.tables.get_mut(&(base, q)).expect("inserted above").rows.push(values);
        }
    }

    /// Moduli other than `q` whose `S_j` values feed the `(base, q)` rows.
    fn dependencies(&self, base: StatBase, q: u64) -> Vec<u64> {
        let f = &self.tables[&(base, q)].factorization;
        match base {
            // Δ(q, k) ranges over products of subsets of the components.
            StatBase::OrderMultiple => f.unitary_divisors(),
            // d·Δ(q, k) with d | ∇(q, k) can be any divisor of q.
            StatBase::OrderEquals => divisors(q),
            _ => Vec::new(),
        }
        .into_iter()
        .filter(|&m| m != q)
        .collect()
    }

    fn grow_factorials(&mut self, n: u64) {
        if (self.factorials.len() as u64) <= n {
            self.factorials = factorials_upto(n);
        }
    }

    /// `S_j` entry of an already-filled table.
    fn symmetric_value(&self, base: StatBase, m: u64, j: u64) -> &Count {
        &self.tables[&(base, m)].rows[j as usize][0]
    }

    fn compute_row(&self, base: StatBase, q: u64, n: u64) -> (Vec<Count>, u64) {
        let f = &self.tables[&(base, q)].factorization;
        let mut ops = 0u64;
        let mut row = vec![Count::zero(); n as usize];
        row[(n - 1) as usize] = Count::from(match base {
            StatBase::OrderMultiple | StatBase::CycleMultiple => iverson(n % q != 0),
            StatBase::OrderDivides => iverson(q % n == 0),
            StatBase::OrderEquals | StatBase::CycleEquals => iverson(q != n),
            StatBase::CycleDivides => iverson(q % n != 0),
        });
        for k in (1..n).rev() {
            let j = n - k;
            let first: Count = match base {
                StatBase::OrderMultiple => self.symmetric_value(base, f.delta(k), j).clone(),
                StatBase::OrderDivides => self.bracketed(q % k == 0, base, q, j),
                StatBase::OrderEquals => {
                    let size = &self.factorials[j as usize];
                    if q % k == 0 {
                        let delta = f.delta(k);
                        let mut hits = Count::zero();
                        for d in divisors(f.nabla(k)) {
                            hits += size - self.symmetric_value(base, d * delta, j);
                            ops += 2;
                        }
                        ops += 1;
                        size - hits
                    } else {
                        size.clone()
                    }
                }
                StatBase::CycleMultiple => self.bracketed(k % q != 0, base, q, j),
                StatBase::CycleDivides => self.bracketed(q % k != 0, base, q, j),
                StatBase::CycleEquals => self.bracketed(q != k, base, q, j),
            };
            let mut value = &row[k as usize] * j;
            value += first;
            ops += 2;
            row[(k - 1) as usize] = value;
        }
        (row, ops)
    }

    fn bracketed(&self, holds: bool, base: StatBase, q: u64, j: u64) -> Count {
        if holds {
            self.symmetric_value(base, q, j).clone()
        } else {
            Count::zero()
        }
    }
}

/// `f_q(n) = Π_{j=1}^{n} (j - [q | j])`, the number of elements of `S_n`
/// with no cycle of length divisible by `q`.
pub fn f_closed(q: u64, n: u64) -> Count {
    assert!(q > 0, "modulus must be positive");
    (1..=n).fold(Count::one(), |acc, j| acc * (j - iverson(j % q == 0)))
}

/// Closed form for the number of elements of `C(n, k)` with no cycle of
/// length divisible by `q`:
/// `f_q(n-k+1) - [(-k) mod q <= s] · f_q(n-k)` with `s = q - 2 - (n mod q)`.
pub fn ncm_closed(q: u64, n: u64, k: u64) -> Result<Count> {
    ClosedForm::new(q, n)?.ncm(n, k)
}

/// Cached `f_q(0..=n_max)` for bulk evaluation of [`ncm_closed`].
#[derive(Debug, Clone)]
pub struct ClosedForm {
    q: u64,
    f: Vec<Count>,
}

impl ClosedForm {
    pub fn new(q: u64, n_max: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::ZeroModulus);
        }
        let mut f = Vec::with_capacity(n_max as usize + 1);
        f.push(Count::one());
        for j in 1..=n_max {
            let next = &f[j as usize - 1] * (j - iverson(j % q == 0));
            f.push(next);
        }
        Ok(ClosedForm { q, f })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn f(&self, n: u64) -> &Count {
        &self.f[n as usize]
    }

    pub fn ncm(&self, n: u64, k: u64) -> Result<Count> {
        check_coset(n, k)?;
        if n as usize >= self.f.len() {
            return Err(Error::LimitExceeded {
                what: "n",
                got: n,
                limit: self.f.len() as u64 - 1,
            });
        }
        let q = self.q;
        let s = q as i64 - 2 - residue(n as i64, q) as i64;
        let bracket = (residue(-(k as i64), q) as i64) <= s;
        let head = self.f[(n - k + 1) as usize].clone();
        Ok(if bracket { head - &self.f[(n - k) as usize] } else { head })
    }
}
