//! Exact rational evaluation of the pmf and its moments, used as the oracle
//! for the floating-point routines. Denominators grow like n^n, so these
//! routines are capped at n = 500.
//!
//! Internally everything runs on the integer numerators
//! c(k) = k (n-1)! / (n-k)! over the common denominator n^k; reduced
//! rationals are only formed at the boundary. This keeps the moment sweeps
//! over all n <= 500 to big-integer multiplications instead of a gcd per
//! step.

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};

/// Largest face count admitted by the exact routines.
pub const MAX_EXACT_FACES: u64 = 500;

fn check(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidFaceCount { n });
    }
    if n > MAX_EXACT_FACES {
        return Err(Error::TooLargeForExact {
            n,
            limit: MAX_EXACT_FACES,
        });
    }
    Ok(())
}

/// Integer pmf numerators over denominators n^k:
/// c(1) = 1 and c(k) = c(k-1) * k * (n-k+1) / (k-1), an exact division.
fn numerators(n: u64) -> Vec<BigInt> {
    let mut c = Vec::with_capacity(n as usize);
    c.push(BigInt::one());
    for k in 2..=n {
        let next = c.last().unwrap() * (k * (n - k + 1)) / (k - 1);
        c.push(next);
    }
    c
}

/// Exact pmf as reduced rationals; entry k-1 holds
/// p(k) = k (n-1)! / (n^k (n-k)!). The entries sum to exactly 1.
pub fn pmf(n: u64) -> Result<Vec<BigRational>> {
    check(n)?;
    let nb = BigInt::from(n);
    let mut den = BigInt::one();
    Ok(numerators(n)
        .into_iter()
        .map(|c| {
            den *= &nb;
            BigRational::new(c, den.clone())
        })
        .collect())
}

/// Weighted numerator sum over the common denominator n^n:
/// sum of w(k) c(k) n^(n-k), accumulated from k = n downward so the power
/// of n only ever multiplies.
fn weighted_sum(n: u64, weight: impl Fn(u64) -> BigInt) -> BigInt {
    let c = numerators(n);
    let nb = BigInt::from(n);
    let mut pow = BigInt::one();
    let mut acc = BigInt::zero();
    for k in (1..=n).rev() {
        acc += weight(k) * &c[k as usize - 1] * &pow;
        pow *= &nb;
    }
    acc
}

fn n_to_the(n: u64, e: u64) -> BigInt {
    num::pow::pow(BigInt::from(n), e as usize)
}

/// Exact expected gain: sum of k p(k).
pub fn mean(n: u64) -> Result<BigRational> {
    check(n)?;
    let num = weighted_sum(n, BigInt::from);
    Ok(BigRational::new(num, n_to_the(n, n)))
}

/// Exact expected gain evaluated through the rearranged double sum:
/// sum over k of the survival sums P(G >= k). Must always agree with
/// [`mean`]; both routes are kept as independent checks on each other.
pub fn mean_via_survival(n: u64) -> Result<BigRational> {
    check(n)?;
    // P(G >= k) = s(k) / n^(k-1) with s(k) = (n-1) (n-2) ... (n-k+1)
    let nb = BigInt::from(n);
    let mut s = vec![BigInt::one()];
    for k in 1..n {
        let next = s.last().unwrap() * (n - k);
        s.push(next);
    }
    let mut pow = BigInt::one();
    let mut acc = BigInt::zero();
    for k in (1..=n).rev() {
        acc += &s[k as usize - 1] * &pow;
        pow *= &nb;
    }
    Ok(BigRational::new(acc, n_to_the(n, n - 1)))
}

/// Exact second moment: sum of k^2 p(k).
pub fn second_moment(n: u64) -> Result<BigRational> {
    check(n)?;
    let num = weighted_sum(n, |k| BigInt::from(k) * k);
    Ok(BigRational::new(num, n_to_the(n, n)))
}

/// Exact variance from the raw moments.
pub fn variance(n: u64) -> Result<BigRational> {
    check(n)?;
    let m1 = weighted_sum(n, BigInt::from);
    let m2 = weighted_sum(n, |k| BigInt::from(k) * k);
    let den = n_to_the(n, n);
    // (m2 n^n - m1^2) / n^(2n)
    Ok(BigRational::new(m2 * &den - &m1 * &m1, &den * &den))
}

/// Round a rational to f64.
pub fn to_f64(r: &BigRational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
