//! Exact rational helpers.

use alloc::format;
use alloc::string::{String, ToString};
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Pow, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `"p/q"`, an integer, or a decimal literal such as `"0.432"`.
///
/// Decimals are read exactly as a fraction over a power of ten.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(s.to_string());
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (neg, body) = match t.as_bytes()[0] {
        b'-' => (true, &t[1..]),
        b'+' => (false, &t[1..]),
        _ => (false, t),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    let digits_ok = |d: &str| d.bytes().all(|b| b.is_ascii_digit());
    if !digits_ok(whole) || !digits_ok(frac) {
        return Err(bad());
    }
    let mut all = String::with_capacity(whole.len() + frac.len());
    all.push_str(whole);
    all.push_str(frac);
    let num = BigInt::from_str(&all).map_err(|_| bad())?;
    let den = BigInt::from(10u32).pow(frac.len() as u32);
    let q = Rational::new(num, den);
    Ok(if neg { -q } else { q })
}

/// Always renders as `p/q`, including integers (`3/1`).
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Largest integer `u` with `u <= q * 2^64`, clamped below at zero.
pub fn floor_scaled_u64(q: &Rational) -> BigUint {
    let scaled = q.numer() << 64usize;
    let f = scaled.div_floor(q.denom());
    if f.is_negative() {
        BigUint::zero()
    } else {
        f.to_biguint().unwrap()
    }
}

/// Smallest integer `u` with `u >= q * 2^64`, clamped below at zero.
pub fn ceil_scaled_u64(q: &Rational) -> BigUint {
    let scaled = q.numer() << 64usize;
    let c = scaled.div_ceil(q.denom());
    if c.is_negative() {
        BigUint::zero()
    } else {
        c.to_biguint().unwrap()
    }
}

pub(crate) fn to_u128_saturating(v: &BigUint) -> u128 {
    v.to_u128().unwrap_or(u128::MAX)
}

/// Nearest `f64`, only for reporting.
pub fn to_f64(q: &Rational) -> f64 {
    let n = q.numer().to_f64().unwrap_or(f64::NAN);
    let d = q.denom().to_f64().unwrap_or(f64::NAN);
    if n.is_finite() && d.is_finite() {
        n / d
    } else {
        // Very large parts: shift both down to keep the ratio.
        let shift = q.denom().bits().max(q.numer().bits()).saturating_sub(1000);
        let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("1/4").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational(" 2/8 ").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("0.432").unwrap(), ratio(54, 125));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-0.25").unwrap(), ratio(-1, 4));
        for bad in ["", "1/0", "a", "0.4.3", "1/2/3", ".", "1e3"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn formats_with_explicit_denominator() {
        assert_eq!(format_rational(&int(0)), "0/1");
        assert_eq!(format_rational(&ratio(2, 6)), "1/3");
    }

    #[test]
    fn scaled_bounds() {
        let half = ratio(1, 2);
        assert_eq!(floor_scaled_u64(&half), BigUint::from(1u128 << 63));
        assert_eq!(ceil_scaled_u64(&half), BigUint::from(1u128 << 63));
        let third = ratio(1, 3);
        let f = floor_scaled_u64(&third);
        assert_eq!(ceil_scaled_u64(&third), f + 1u32);
    }
}
