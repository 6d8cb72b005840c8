//! Exact counts of elements of symmetric groups, and of cosets of point
//! stabilizers, by order and cycle statistics.
//!
//! The [`census`] engine evaluates a family of coset recurrences with
//! memoized big-integer dynamic programming (quadratic in the degree). The
//! [`oracle`] module supplies independent brute-force counts, [`stats`]
//! turns counts into exact probabilities and analytic bounds, and
//! [`identify`] uses those probabilities to recover the degree of a
//! black-box symmetric group from sampled element orders.

pub mod census;
pub mod error;
pub mod identify;
pub mod numeric;
pub mod oracle;
pub mod stats;

pub use census::{coset_size, f_closed, ncm_closed, Census, ClosedForm, CosetQuery, StatBase, StatKind};
pub use error::{Error, Result};
pub use identify::{
    disambiguate, identify, infer_block, order_of, random_permutation, BlackBox, DegreeEstimate,
    Hypothesis, OrderSample,
};
pub use numeric::{
    delta, divisors, factor_prime_powers, factorial, nabla, residue, Count, ExactRatio,
    PrimePowerFactorization,
};
pub use oracle::{oracle_coset, oracle_sym, Composition, Oracle, OracleLimits, Partition, Permutation};
pub use stats::{erdos_turan_bound, probability, sandwich_bounds, BoundReport, ErdosTuranBound};
