//! Arbitrary-precision rationals.
//!
//! `BigRational` keeps its values in lowest terms with a positive denominator,
//! so `numer()`/`denom()` are exactly the numerator and denominator maps.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_bigint(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Numerator of `q` in lowest terms.
pub fn num(q: &Rational) -> &BigInt {
    q.numer()
}

/// Denominator of `q` in lowest terms (always positive).
pub fn den(q: &Rational) -> &BigInt {
    q.denom()
}

/// Parses `"7"`, `"-2/3"`, `" 5 / 10 "` (reduced on construction).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::parse(0, "empty rational"));
    }
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n
        .parse()
        .map_err(|_| Error::parse(0, format!("bad integer `{n}`")))?;
    let d: BigInt = d
        .parse()
        .map_err(|_| Error::parse(t.find('/').unwrap_or(0) + 1, format!("bad integer `{d}`")))?;
    if d.is_zero() {
        return Err(Error::parse(0, "zero denominator"));
    }
    Ok(Rational::new(n, d))
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Largest `k` with `base^k <= value`; `base > 1`, `value >= 1`.
pub fn floor_log(value: &Rational, base: &Rational) -> u32 {
    debug_assert!(base > &Rational::one());
    let mut k = 0u32;
    let mut p = base.clone();
    while &p <= value {
        k += 1;
        p = &p * base;
    }
    k
}

/// Integer part of `log2(n)` for `n >= 1`.
pub fn log2_floor(n: &BigInt) -> u32 {
    if n.sign() != Sign::Plus {
        return 0;
    }
    (n.bits() as u32).saturating_sub(1)
}

pub fn pow(q: &Rational, e: u32) -> Rational {
    num_traits::pow(q.clone(), e as usize)
}

pub fn to_f64(q: &Rational) -> f64 {
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

/// Splits a positive integer `n` into `(part supported on primes of d, coprime part)`.
pub fn split_coprime(n: &BigUint, d: &BigUint) -> (BigUint, BigUint) {
    let mut coprime = n.clone();
    let mut supported = BigUint::one();
    loop {
        let g = coprime.gcd(d);
        if g.is_one() || coprime.is_zero() {
            break;
        }
        coprime /= &g;
        supported *= &g;
    }
    (supported, coprime)
}

/// Smallest `k >= 0` with `m | d^k`, if any.
pub fn power_exponent_dividing(m: &BigUint, d: &BigUint) -> Option<u32> {
    let (_, rest) = split_coprime(m, d);
    if !rest.is_one() {
        return None;
    }
    let mut k = 0u32;
    let mut p = BigUint::one();
    while !(&p % m).is_zero() {
        p *= d;
        k += 1;
    }
    Some(k)
}

pub fn abs_uint(n: &BigInt) -> BigUint {
    n.abs().to_biguint().expect("absolute value is nonnegative")
}
