//! Exact probabilities and the analytic bounds on the proportion of
//! permutations with no cycle of length divisible by `q`.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::census::{Census, CosetQuery, StatKind};
use crate::error::{Error, Result};
use crate::numeric::{factorial, ExactRatio};

/// Outward step, in units in the last place, applied to each float bound.
/// Covers the accumulated error of one `ln`, one `exp` and a handful of
/// roundings for arguments of moderate size.
const OUTWARD_ULPS: u32 = 64;

/// Proportion of `S_n` satisfying `kind`.
pub fn probability(census: &mut Census, kind: StatKind, q: u64, n: u64) -> Result<ExactRatio> {
    let query = CosetQuery::symmetric(kind, q, n)?;
    let count = census.stat_count(&query);
    Ok(ExactRatio::new(count, factorial(n)))
}

/// `Π_{d=1}^{⌊n/q⌋} (1 - 1/(dq))`, computed directly from the product.
pub fn avoidance_product(q: u64, n: u64) -> Result<ExactRatio> {
    if q == 0 {
        return Err(Error::ZeroModulus);
    }
    let mut acc = Ratio::<BigUint>::one();
    for d in 1..=n / q {
        let dq = BigUint::from(d) * q;
        acc *= Ratio::new(&dq - 1u32, dq);
    }
    Ok(ExactRatio::from_ratio(acc))
}

/// Upper and lower bounds on `p_{q, mq}` alongside its exact value.
///
/// `lower = c_q⁻¹ (e m)^{-1/q}` and `upper = c_q m^{-1/q}` with
/// `c_q = exp(π² / (6 q²))`. Both are IEEE doubles (53-bit significands);
/// `lower` is rounded toward zero and `upper` away from it by stepping
/// [`OUTWARD_ULPS`] ulps past the library result.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub q: u64,
    pub m: u64,
    pub c_q: f64,
    pub lower: f64,
    pub upper: f64,
    pub exact: ExactRatio,
}

impl BoundReport {
    /// `lower <= exact <= upper`, compared exactly.
    pub fn brackets(&self) -> bool {
        let lower = ExactRatio::from_f64(self.lower).expect("finite nonnegative bound");
        let upper = ExactRatio::from_f64(self.upper).expect("finite nonnegative bound");
        lower <= self.exact && self.exact <= upper
    }
}

fn step_down(mut x: f64, ulps: u32) -> f64 {
    for _ in 0..ulps {
        x = x.next_down();
    }
    x.max(0.0)
}

fn step_up(mut x: f64, ulps: u32) -> f64 {
    for _ in 0..ulps {
        x = x.next_up();
    }
    x
}

/// `c_q = exp(π² / (6 q²))`, rounded to nearest.
pub fn c_q(q: u64) -> f64 {
    let q = q as f64;
    (std::f64::consts::PI.powi(2) / (6.0 * q * q)).exp()
}

pub fn sandwich_bounds(q: u64, m: u64) -> Result<BoundReport> {
    if q < 2 {
        return Err(Error::ModulusTooSmall(q));
    }
    if m == 0 {
        return Err(Error::ZeroDegree);
    }
    let c = std::f64::consts::PI.powi(2) / (6.0 * (q as f64).powi(2));
    let log_m = (m as f64).ln();
    let lower = (-(c + (1.0 + log_m) / q as f64)).exp();
    let upper = (c - log_m / q as f64).exp();
    Ok(BoundReport {
        q,
        m,
        c_q: c_q(q),
        lower: step_down(lower, OUTWARD_ULPS),
        upper: step_up(upper, OUTWARD_ULPS),
        exact: avoidance_product(q, m * q)?,
    })
}

/// Upper bound `(Σ 1/a_k)⁻¹` on the proportion of permutations with no
/// cycle of any of the given lengths.
#[derive(Debug, Clone, Serialize)]
pub struct ErdosTuranBound {
    pub lengths: Vec<u64>,
    pub value: ExactRatio,
    /// The bound is at least 1 and says nothing about a probability.
    pub vacuous: bool,
}

impl ErdosTuranBound {
    /// `min(1, value)`.
    pub fn capped(&self) -> ExactRatio {
        if self.vacuous {
            ExactRatio::one()
        } else {
            self.value.clone()
        }
    }
}

pub fn erdos_turan_bound(lengths: &[u64]) -> Result<ErdosTuranBound> {
    if lengths.is_empty() {
        return Err(Error::EmptyLengths);
    }
    let mut sorted = lengths.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != lengths.len() || sorted[0] == 0 {
        return Err(Error::InvalidLengths);
    }
    let harmonic = lengths
        .iter()
        .fold(Ratio::<BigUint>::zero(), |acc, &a| acc + Ratio::new(BigUint::one(), BigUint::from(a)));
    let value = ExactRatio::from_ratio(harmonic.recip());
    let vacuous = value >= ExactRatio::one();
    Ok(ErdosTuranBound { lengths: lengths.to_vec(), value, vacuous })
}

/// The bound for lengths `q, 2q, ..., ⌊n/q⌋ q`.
pub fn erdos_turan_for_modulus(q: u64, n: u64) -> Result<ErdosTuranBound> {
    if q == 0 {
        return Err(Error::ZeroModulus);
    }
    let lengths: Vec<u64> = (1..=n / q).map(|k| k * q).collect();
    erdos_turan_bound(&lengths)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::StatBase;

    const NCM: StatKind = StatKind::barred(StatBase::CycleMultiple);

    fn ratio(n: u64, d: u64) -> ExactRatio {
        ExactRatio::new(n.into(), d.into())
    }

    #[test]
    fn probability_examples() {
        let mut census = Census::new();
        assert_eq!(probability(&mut census, NCM, 2, 4).unwrap(), ratio(3, 8));
        assert_eq!(probability(&mut census, NCM, 2, 5).unwrap(), ratio(3, 8));
        for n in 1..20 {
            assert_eq!(probability(&mut census, NCM, 1, n).unwrap(), ExactRatio::zero());
        }
        assert!(probability(&mut census, NCM, 2, 0).is_err());
    }

    #[test]
    fn c2_constant() {
        // e^{π²/24}
        assert!((c_q(2) - 1.508678).abs() < 5e-7);
    }

    #[test]
    fn sandwich_examples() {
        let r = sandwich_bounds(2, 5).unwrap();
        assert_eq!(r.exact, ratio(893025, 3628800));
        assert!((r.exact.to_f64() - 0.246094).abs() < 5e-7);
        assert!((r.lower - 0.1798).abs() < 5e-5);
        assert!((r.upper - 0.6747).abs() < 5e-5);
        assert!(r.brackets());
        for q in 2..30 {
            let r = sandwich_bounds(q, 1).unwrap();
            assert_eq!(r.exact, ratio(q - 1, q));
            assert!(r.brackets());
        }
        assert_eq!(sandwich_bounds(1, 3).unwrap_err(), Error::ModulusTooSmall(1));
    }

    #[test]
    fn directed_rounding_moves_outward() {
        let r = sandwich_bounds(3, 7).unwrap();
        let c = std::f64::consts::PI.powi(2) / 54.0;
        let nearest_lower = (-(c + (1.0 + 7f64.ln()) / 3.0)).exp();
        let nearest_upper = (c - 7f64.ln() / 3.0).exp();
        assert!(r.lower < nearest_lower);
        assert!(r.upper > nearest_upper);
    }

    #[test]
    fn erdos_turan_examples() {
        let b = erdos_turan_bound(&[2, 4, 6, 8, 10]).unwrap();
        assert_eq!(b.value, ratio(120, 137));
        assert!((b.value.to_f64() - 0.8759).abs() < 5e-5);
        assert!(!b.vacuous);
        let one = erdos_turan_bound(&[1]).unwrap();
        assert_eq!(one.value, ExactRatio::one());
        assert!(one.vacuous);
        let big = erdos_turan_bound(&[9]).unwrap();
        assert_eq!(big.value, ratio(9, 1));
        assert!(big.vacuous);
        assert_eq!(big.capped(), ExactRatio::one());
        assert_eq!(erdos_turan_bound(&[]).unwrap_err(), Error::EmptyLengths);
        assert_eq!(erdos_turan_bound(&[2, 2]).unwrap_err(), Error::InvalidLengths);
        assert_eq!(erdos_turan_bound(&[0, 2]).unwrap_err(), Error::InvalidLengths);
        assert_eq!(erdos_turan_for_modulus(2, 10).unwrap().value, ratio(120, 137));
    }

    #[test]
    fn probability_is_non_increasing() {
        let mut census = Census::new();
        for q in 2..=8 {
            let mut prev = ExactRatio::one();
            for n in 1..=80 {
                let p = probability(&mut census, NCM, q, n).unwrap();
                assert!(p <= prev, "q = {q}, n = {n}");
                prev = p;
            }
        }
    }
}
