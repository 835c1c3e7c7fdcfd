//! Exact rational scalars.
//!
//! Every coefficient in the crate is a `Ratio<BigInt>`: always in lowest
//! terms with a positive denominator, so equality and sign tests are exact.
//! Rationals serialize as `"p/q"` (or `"p"` when the denominator is 1),
//! which is what `Display`/`FromStr` already produce.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use std::str::FromStr;

pub type Rational = num_rational::BigRational;

/// Shorthand constructor from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = |msg: &str| Error::Parse(format!("bad rational {s:?}: {msg}"));
    match s.split_once('/') {
        None => {
            let n = BigInt::from_str(s).map_err(|e| bad(&e.to_string()))?;
            Ok(Rational::from_integer(n))
        }
        Some((num, den)) => {
            let n = BigInt::from_str(num).map_err(|e| bad(&e.to_string()))?;
            let d = BigInt::from_str(den).map_err(|e| bad(&e.to_string()))?;
            if d.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(Rational::new(n, d))
        }
    }
}

pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

/// Uniform positive rational with numerator in `1..=max_num` and denominator
/// in `1..=max_den`. Used for polynomial identity testing at random points.
pub fn random_positive_rational<R: Rng>(rng: &mut R, max_num: u64, max_den: u64) -> Rational {
    let n = rng.gen_range(1..=max_num);
    let d = rng.gen_range(1..=max_den);
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Approximate a rational as `f64` (used only for human-readable reporting).
pub fn to_f64(x: &Rational) -> f64 {
    let digits = 18u32;
    let scale = BigInt::from(10u64).pow(digits);
    let scaled = (x.numer() * &scale) / x.denom();
    let mut out = 0.0f64;
    let (sign, mag) = (scaled.is_negative(), scaled.abs());
    for c in mag.to_string().bytes() {
        out = out * 10.0 + f64::from(c - b'0');
    }
    out /= 10f64.powi(digits as i32);
    if sign {
        -out
    } else {
        out
    }
}
