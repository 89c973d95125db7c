//! Small exact-arithmetic helpers shared by the rank and exclusion code.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Binomial coefficient with the combinatorial convention that it vanishes
/// whenever `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn uint_to_rational(v: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(v.clone()))
}

/// Returns the integer value of `q`, or `None` when `q` has a denominator.
pub fn as_integer(q: &BigRational) -> Option<BigInt> {
    q.is_integer().then(|| q.to_integer())
}

/// `p/q` in lowest terms with `q > 0`; integers keep the `/1`.
pub fn format_ratio(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Like [`format_ratio`] but integers are printed bare.
pub fn format_ratio_compact(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format_ratio(q)
    }
}

/// Parses `p`, `p/q` or `-p/q` into a reduced rational.
pub fn parse_ratio(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim().parse::<BigInt>().ok()?, b.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

pub fn is_nonnegative(q: &BigRational) -> bool {
    !q.is_negative()
}
