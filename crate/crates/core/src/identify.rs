//! Degree identification for a black-box group known to be `S_n` for some
//! unknown `n`, using only the orders of uniformly random elements.
//!
//! The fraction of odd-order elements, `f_2(n)/n!`, is constant on blocks
//! `{2t, 2t+1}` and strictly decreasing across blocks, so it pins down the
//! block. Within a block `{m, m+1}`, the fraction of orders coprime to a
//! prime `p | m+1` drops by the factor `m/(m+1)` from `S_m` to `S_{m+1}`,
//! which separates the two candidates.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::census::{Census, StatBase, StatKind};
use crate::error::{Error, Result};
use crate::numeric::{smallest_prime_divisor, ExactRatio};
use crate::oracle::Permutation;
use crate::stats::probability;

/// A uniformly random element of `S_n`, by a Fisher-Yates shuffle of the
/// identity's image list.
pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
    let mut images: Vec<u32> = (0..n as u32).collect();
    images.shuffle(rng);
    Permutation::from_zero_based(images)
}

/// Exact order of a permutation.
pub fn order_of(p: &Permutation) -> BigUint {
    p.order()
}

/// Simulated black-box `S_n` handing out element orders.
///
/// Seeded with ChaCha8, so a given `(n, seed)` always yields the same stream.
#[derive(Debug, Clone)]
pub struct BlackBox {
    degree: usize,
    seed: u64,
    rng: ChaCha8Rng,
}

impl BlackBox {
    pub fn new(degree: usize, seed: u64) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        Ok(BlackBox { degree, seed, rng: ChaCha8Rng::seed_from_u64(seed) })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn random_element(&mut self) -> Permutation {
        random_permutation(self.degree, &mut self.rng)
    }

    pub fn sample_orders(&mut self, count: usize) -> Result<OrderSample> {
        let orders = (0..count).map(|_| self.random_element().order()).collect();
        OrderSample::new(orders, Some(self.seed))
    }
}

/// Exact orders of sampled group elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderSample {
    orders: Vec<BigUint>,
    source_seed: Option<u64>,
}

impl OrderSample {
    pub fn new(orders: Vec<BigUint>, source_seed: Option<u64>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::EmptySample);
        }
        if orders.iter().any(Zero::is_zero) {
            return Err(Error::ZeroOrder);
        }
        Ok(OrderSample { orders, source_seed })
    }

    /// One decimal order per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut orders = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let order = line
                .parse::<BigUint>()
                .map_err(|_| Error::InvalidOrderLine { line: i + 1, text: line.to_string() })?;
            orders.push(order);
        }
        Self::new(orders, None)
    }

    pub fn orders(&self) -> &[BigUint] {
        &self.orders
    }

    pub fn sample_count(&self) -> usize {
        self.orders.len()
    }

    pub fn source_seed(&self) -> Option<u64> {
        self.source_seed
    }

    /// Number of orders coprime to `m`.
    pub fn coprime_count(&self, m: u64) -> u64 {
        let m = BigUint::from(m);
        self.orders.iter().filter(|o| o.gcd(&m).is_one()).count() as u64
    }

    pub fn odd_fraction(&self) -> ExactRatio {
        ExactRatio::new(self.coprime_count(2).into(), self.sample_count().into())
    }
}

/// Observed and expected proportions for one degree hypothesis.
#[derive(Debug, Clone, Serialize)]
pub struct Hypothesis {
    pub n: u64,
    /// Expected fraction of orders coprime to the discriminating prime.
    pub expected: ExactRatio,
    pub log_likelihood: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeEstimate {
    pub block: (u64, u64),
    pub chosen_n: u64,
    pub discriminating_prime: u64,
    pub sample_count: u64,
    pub source_seed: Option<u64>,
    pub odd_fraction: ExactRatio,
    /// Observed fraction of orders coprime to the discriminating prime.
    pub coprime_fraction: ExactRatio,
    pub hypotheses: [Hypothesis; 2],
    /// Posterior weight of the chosen degree under equal priors.
    pub confidence: f64,
}

/// The block `{m, m+1}` (`m` even, `2 <= m <= n_max`) whose common odd-order
/// proportion `f_2(m)/m!` is nearest to `fraction`. Ties go to the smaller `m`.
pub fn infer_block(fraction: &ExactRatio, n_max: u64) -> Result<(u64, u64)> {
    if !fraction.is_probability() {
        return Err(Error::FractionOutOfRange);
    }
    if n_max < 2 {
        return Err(Error::NoCandidateBlock(n_max));
    }
    let mut previous: Option<(u64, ExactRatio)> = None;
    let mut p = Ratio::<BigUint>::one();
    let mut m = 2;
    while m <= n_max {
        p *= Ratio::new(BigUint::from(m - 1), BigUint::from(m));
        let current = ExactRatio::from_ratio(p.clone());
        if &current <= fraction {
            // p decreases with m, so the nearest block is this one or the last one
            return Ok(match previous {
                Some((pm, pp)) if pp.abs_diff(fraction) <= current.abs_diff(fraction) => (pm, pm + 1),
                _ => (m, m + 1),
            });
        }
        previous = Some((m, current));
        m += 2;
    }
    let (last, _) = previous.expect("n_max >= 2 yields at least one block");
    Ok((last, last + 1))
}

fn binomial_log_likelihood(successes: u64, trials: u64, p: f64) -> f64 {
    let term = |count: u64, prob: f64| if count == 0 { 0.0 } else { count as f64 * prob.ln() };
    term(successes, p) + term(trials - successes, 1.0 - p)
}

/// Chooses between `m` and `m+1` by the binomial likelihood of the observed
/// count of orders coprime to the smallest prime divisor of `m+1`.
pub fn disambiguate(census: &mut Census, sample: &OrderSample, block: (u64, u64)) -> Result<DegreeEstimate> {
    let (m, m1) = block;
    if m < 2 || m % 2 != 0 || m1 != m + 1 {
        return Err(Error::InvalidBlock(m, m1));
    }
    let p = smallest_prime_divisor(m1).expect("m + 1 >= 3");
    let kind = StatKind::barred(StatBase::OrderMultiple);
    let trials = sample.sample_count() as u64;
    let coprime = sample.coprime_count(p);
    let hypothesis = |census: &mut Census, n: u64| -> Result<Hypothesis> {
        let expected = probability(census, kind, p, n)?;
        let log_likelihood = binomial_log_likelihood(coprime, trials, expected.to_f64());
        Ok(Hypothesis { n, expected, log_likelihood })
    };
    let low = hypothesis(census, m)?;
    let high = hypothesis(census, m1)?;
    let chosen_n = if high.log_likelihood > low.log_likelihood { m1 } else { m };
    let (best, other) = if chosen_n == m {
        (low.log_likelihood, high.log_likelihood)
    } else {
        (high.log_likelihood, low.log_likelihood)
    };
    // best is finite: the S_{m+1} expectation lies strictly inside (0, 1)
    let confidence = 1.0 / (1.0 + (other - best).exp());
    Ok(DegreeEstimate {
        block,
        chosen_n,
        discriminating_prime: p,
        sample_count: trials,
        source_seed: sample.source_seed(),
        odd_fraction: sample.odd_fraction(),
        coprime_fraction: ExactRatio::new(coprime.into(), trials.into()),
        hypotheses: [low, high],
        confidence,
    })
}

/// Block inference followed by disambiguation.
pub fn identify(census: &mut Census, sample: &OrderSample, n_max: u64) -> Result<DegreeEstimate> {
    let block = infer_block(&sample.odd_fraction(), n_max)?;
    disambiguate(census, sample, block)
}
