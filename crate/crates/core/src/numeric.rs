//! Exact integer utilities: factorials, prime-power factorization, the
//! unitary split of a modulus against a cycle length, divisors, residues
//! and exact rationals.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact, nonnegative count of group elements.
pub type Count = BigUint;

/// Iverson bracket: 1 if the proposition holds, 0 otherwise.
#[inline]
pub fn iverson(p: bool) -> u64 {
    p as u64
}

pub fn factorial(n: u64) -> Count {
    (2..=n).fold(Count::one(), |acc, j| acc * j)
}

/// `[0!, 1!, ..., n!]`.
pub fn factorials_upto(n: u64) -> Vec<Count> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(Count::one());
    for j in 1..=n {
        let next = &out[j as usize - 1] * j;
        out.push(next);
    }
    out
}

/// One component `p^e` of a prime-power factorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
    pub value: u64,
}

/// `q = q_1 ... q_r` with each `q_j` a power of a distinct prime, primes
/// strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimePowerFactorization {
    modulus: u64,
    factors: Vec<PrimePower>,
}

impl PrimePowerFactorization {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn factors(&self) -> &[PrimePower] {
        &self.factors
    }

    /// Product of the components `q_j` that do not divide `k`.
    pub fn delta(&self, k: u64) -> u64 {
        self.factors
            .iter()
            .filter(|f| k % f.value != 0)
            .map(|f| f.value)
            .product()
    }

    /// Product of the components `q_j` that divide `k`.
    pub fn nabla(&self, k: u64) -> u64 {
        self.factors
            .iter()
            .filter(|f| k % f.value == 0)
            .map(|f| f.value)
            .product()
    }

    /// All products of subsets of the components, ascending.
    pub fn unitary_divisors(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for f in &self.factors {
            let extra: Vec<u64> = out.iter().map(|d| d * f.value).collect();
            out.extend(extra);
        }
        out.sort_unstable();
        out
    }
}

/// Trial-division factorization into prime powers. `q = 1` yields no factors.
pub fn factor_prime_powers(q: u64) -> Result<PrimePowerFactorization> {
    if q == 0 {
        return Err(Error::ZeroModulus);
    }
    let mut factors = Vec::new();
    let mut rest = q;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest % p == 0 {
            let mut exponent = 0;
            let mut value = 1;
            while rest % p == 0 {
                rest /= p;
                value *= p;
                exponent += 1;
            }
            factors.push(PrimePower { prime: p, exponent, value });
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push(PrimePower { prime: rest, exponent: 1, value: rest });
    }
    Ok(PrimePowerFactorization { modulus: q, factors })
}

/// Δ(q, k): product of the prime-power components of `q` not dividing `k`.
pub fn delta(q: u64, k: u64) -> u64 {
    match factor_prime_powers(q) {
        Ok(f) => f.delta(k),
        Err(_) => 1,
    }
}

/// ∇(q, k): product of the prime-power components of `q` dividing `k`.
/// Always `delta(q, k) * nabla(q, k) == q`.
pub fn nabla(q: u64, k: u64) -> u64 {
    match factor_prime_powers(q) {
        Ok(f) => f.nabla(k),
        Err(_) => 1,
    }
}

/// Divisors of `m`, ascending. `divisors(0)` is empty.
pub fn divisors(m: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= m {
        if m % d == 0 {
            small.push(d);
            if d != m / d {
                large.push(m / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn smallest_prime_divisor(m: u64) -> Option<u64> {
    factor_prime_powers(m)
        .ok()
        .and_then(|f| f.factors().first().map(|f| f.prime))
}

/// `n mod q` in the range `[0, q)`, also for negative `n`.
pub fn residue(n: i64, q: u64) -> u64 {
    assert!(q > 0, "residue modulus must be positive");
    (n as i128).rem_euclid(q as i128) as u64
}

/// An exact nonnegative rational in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactRatio(Ratio<BigUint>);

impl ExactRatio {
    /// Panics if `denominator` is zero.
    pub fn new(numerator: BigUint, denominator: BigUint) -> Self {
        ExactRatio(Ratio::new(numerator, denominator))
    }

    pub fn from_ratio(r: Ratio<BigUint>) -> Self {
        ExactRatio(r)
    }

    pub fn zero() -> Self {
        ExactRatio(Ratio::zero())
    }

    pub fn one() -> Self {
        ExactRatio(Ratio::one())
    }

    /// Exact value of a finite, nonnegative float.
    pub fn from_f64(x: f64) -> Option<Self> {
        if !x.is_finite() || x < 0.0 {
            return None;
        }
        let r = Ratio::<num_bigint::BigInt>::from_float(x)?;
        let (n, d) = r.into();
        Some(ExactRatio::new(n.to_biguint()?, d.to_biguint()?))
    }

    pub fn numer(&self) -> &BigUint {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigUint {
        self.0.denom()
    }

    pub fn as_ratio(&self) -> &Ratio<BigUint> {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        // Ratio::to_f64 handles numerators and denominators beyond f64 range.
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn is_probability(&self) -> bool {
        self.0.numer() <= self.0.denom()
    }

    /// |self - other|.
    pub fn abs_diff(&self, other: &Self) -> Self {
        match self.cmp(other) {
            Ordering::Less => ExactRatio(&other.0 - &self.0),
            _ => ExactRatio(&self.0 - &other.0),
        }
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        format_significant(self.to_f64(), digits)
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl serde::Serialize for ExactRatio {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl std::ops::Mul for &ExactRatio {
    type Output = ExactRatio;
    fn mul(self, rhs: Self) -> ExactRatio {
        ExactRatio(&self.0 * &rhs.0)
    }
}

/// `x` with `digits` significant digits, trailing zeros trimmed.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let digits = digits.max(1);
    let magnitude = x.abs().log10().floor() as i64;
    if magnitude < -4 || magnitude >= digits as i64 {
        return format!("{:.*e}", digits - 1, x);
    }
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Exact least common multiple accumulated over `values`.
pub fn lcm_all<I: IntoIterator<Item = u64>>(values: I) -> BigUint {
    let mut acc: u128 = 1;
    let mut big: Option<BigUint> = None;
    for v in values {
        match &mut big {
            Some(b) => *b = b.lcm(&BigUint::from(v)),
            None => {
                let v = v as u128;
                let l = (acc / acc.gcd(&v)).checked_mul(v);
                match l {
                    Some(l) => acc = l,
                    None => big = Some(BigUint::from(acc).lcm(&BigUint::from(v))),
                }
            }
        }
    }
    big.unwrap_or_else(|| BigUint::from(acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn values(q: u64) -> Vec<(u64, u32, u64)> {
        factor_prime_powers(q)
            .unwrap()
            .factors()
            .iter()
            .map(|f| (f.prime, f.exponent, f.value))
            .collect()
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), Count::from(1u32));
        assert_eq!(factorial(4), Count::from(24u32));
        assert_eq!(factorial(20), Count::from(2432902008176640000u64));
        // u128 product as an independent check
        let f30: u128 = (1..=30u128).product();
        assert_eq!(factorial(30), Count::from(f30));
        let table = factorials_upto(300);
        assert_eq!(table[300], factorial(300));
        assert_eq!(factorial(300).to_string().len(), 615);
    }

    #[test]
    fn factorization_examples() {
        assert_eq!(values(12), vec![(2, 2, 4), (3, 1, 3)]);
        assert!(values(1).is_empty());
        assert_eq!(values(360), vec![(2, 3, 8), (3, 2, 9), (5, 1, 5)]);
        assert_eq!(values(97), vec![(97, 1, 97)]);
        assert_eq!(factor_prime_powers(0), Err(Error::ZeroModulus));
    }

    #[test]
    fn delta_nabla_examples() {
        assert_eq!(delta(12, 2), 12);
        assert_eq!(delta(12, 4), 3);
        assert_eq!(nabla(12, 6), 3);
        assert_eq!(nabla(12, 12), 12);
        for q in 2..50 {
            assert_eq!(delta(q, 1), q);
            assert_eq!(nabla(q, 1), 1);
        }
        assert_eq!(delta(1, 7), 1);
        assert_eq!(nabla(1, 7), 1);
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(9), vec![1, 3, 9]);
        assert_eq!(factor_prime_powers(12).unwrap().unitary_divisors(), vec![1, 3, 4, 12]);
    }

    #[test]
    fn residue_examples() {
        assert_eq!(residue(-2, 2), 0);
        assert_eq!(residue(5, 3), 2);
        assert_eq!(residue(-7, 5), 3);
        assert_eq!(residue(i64::MIN, 7), (i64::MIN as i128).rem_euclid(7) as u64);
    }

    #[test]
    fn delta_times_nabla_is_q_exhaustive() {
        for q in 1..=1000u64 {
            let f = factor_prime_powers(q).unwrap();
            for k in 1..=1000u64 {
                let (d, n) = (f.delta(k), f.nabla(k));
                assert_eq!(d * n, q, "q = {q}, k = {k}");
                assert_eq!(q % d, 0);
                assert_eq!(q % n, 0);
            }
        }
    }

    #[test]
    fn ratio_basics() {
        let r = ExactRatio::new(9u32.into(), 24u32.into());
        assert_eq!(r.to_string(), "3/8");
        assert_eq!(r.to_decimal(6), "0.375");
        assert!(r.is_probability());
        assert_eq!(ExactRatio::from_f64(0.375).unwrap(), r);
        assert_eq!(format_significant(0.24609375, 6), "0.246094");
        assert_eq!(format_significant(1.0, 6), "1");
    }

    #[test]
    fn lcm_small_and_large() {
        assert_eq!(lcm_all([3, 2]), BigUint::from(6u32));
        assert_eq!(lcm_all(std::iter::empty()), BigUint::from(1u32));
        let primes = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109];
        let expected = primes.iter().fold(BigUint::from(1u32), |a, &p| a * p);
        assert_eq!(lcm_all(primes), expected);
    }

    proptest! {
        #[test]
        fn factorization_product_is_q(q in 1u64..5_000_000) {
            let f = factor_prime_powers(q).unwrap();
            let product: u64 = f.factors().iter().map(|p| p.value).product();
            prop_assert_eq!(product, q);
            for w in f.factors().windows(2) {
                prop_assert!(w[0].prime < w[1].prime);
            }
            for p in f.factors() {
                prop_assert!(p.exponent >= 1);
                prop_assert_eq!(p.prime.pow(p.exponent), p.value);
            }
        }

        #[test]
        fn residue_is_canonical(n in any::<i64>(), q in 1u64..1_000_000) {
            let r = residue(n, q);
            prop_assert!(r < q);
            prop_assert_eq!((r as i128 - n as i128).rem_euclid(q as i128), 0);
            prop_assert_eq!(residue(r as i64, q), r);
        }

        #[test]
        fn divisors_are_exact(m in 1u64..20_000) {
            let ds = divisors(m);
            let brute: Vec<u64> = (1..=m).filter(|d| m % d == 0).collect();
            prop_assert_eq!(ds, brute);
        }
    }
}
