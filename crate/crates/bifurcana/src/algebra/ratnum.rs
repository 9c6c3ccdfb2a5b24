//! Big-rational helpers.
//!
//! `RatNum` is `num::BigRational`, which already maintains the invariants
//! we need (always reduced, positive denominator, zero as 0/1). This module
//! adds the small constructors and conversions the rest of the crate leans
//! on: literals, integer powers, and exact parsing of decimal strings.

use num::bigint::{BigInt, Sign};
use num::{BigRational, One, Zero};

use crate::error::{Error, Result};

pub type RatNum = BigRational;

/// `rat(n, d)` is the exact rational n/d.
pub fn rat(n: i64, d: i64) -> RatNum {
    assert!(d != 0, "rational with zero denominator");
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer power with negative exponents allowed (errors on 0^-k).
pub fn rat_pow(base: &RatNum, exp: i32) -> Result<RatNum> {
    if exp >= 0 {
        Ok(pow_nonneg(base, exp as u32))
    } else if base.is_zero() {
        Err(Error::InvalidArgument(
            "zero base with negative exponent".into(),
        ))
    } else {
        Ok(pow_nonneg(base, (-exp) as u32).recip())
    }
}

fn pow_nonneg(base: &RatNum, mut exp: u32) -> RatNum {
    let mut acc = RatNum::one();
    let mut sq = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= &sq;
        }
        exp >>= 1;
        if exp > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}

/// Parses "123", "-4/3", "0.25223318", "1.2e-3" into an exact rational.
///
/// Decimal strings convert exactly (digits over a power of ten); fraction
/// strings must have a nonzero denominator.
pub fn rat_from_decimal_str(s: &str) -> Result<RatNum> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::InvalidArgument("empty numeric string".into()));
    }
    if let Some((n, d)) = s.split_once('/') {
        let num: BigInt = n
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad numerator in {s:?}")))?;
        let den: BigInt = d
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad denominator in {s:?}")))?;
        if den.is_zero() {
            return Err(Error::InvalidArgument(format!(
                "zero denominator in {s:?}"
            )));
        }
        return Ok(BigRational::new(num, den));
    }

    // Decimal form: [sign] digits [. digits] [e exp]
    let (mantissa_str, exp10) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i64 = e
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad exponent in {s:?}")))?;
            (m, exp)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa_str.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa_str, ""),
    };
    let negative = int_part.starts_with('-');
    let digits: String = int_part
        .trim_start_matches(['-', '+'])
        .chars()
        .chain(frac_part.chars())
        .collect();
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(Error::InvalidArgument(format!("bad numeric string {s:?}")));
    }
    let mut num: BigInt = digits
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad numeric string {s:?}")))?;
    if negative {
        num = -num;
    }
    let shift = exp10 - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let scale = ten.pow(shift.unsigned_abs() as u32);
    Ok(if shift >= 0 {
        BigRational::from_integer(num * scale)
    } else {
        BigRational::new(num, scale)
    })
}

/// Sign as -1 / 0 / +1.
pub(crate) fn rat_sign(r: &RatNum) -> i32 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Exact conversion to f64 rounding through a 64-bit float division; good
/// enough for seeding numeric routines (never used in certificates).
pub(crate) fn rat_to_f64(r: &RatNum) -> f64 {
    // num's ToPrimitive on BigRational handles magnitude splitting.
    use num::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_and_decimal_forms() {
        assert_eq!(rat_from_decimal_str("4/3").unwrap(), rat(4, 3));
        assert_eq!(rat_from_decimal_str("-4/3").unwrap(), rat(-4, 3));
        assert_eq!(rat_from_decimal_str("0.25").unwrap(), rat(1, 4));
        assert_eq!(
            rat_from_decimal_str("0.25223318").unwrap(),
            rat(25223318, 100000000)
        );
        assert_eq!(rat_from_decimal_str("12").unwrap(), rat(12, 1));
        assert_eq!(rat_from_decimal_str("1.5e-3").unwrap(), rat(3, 2000));
        assert_eq!(rat_from_decimal_str("-2E2").unwrap(), rat(-200, 1));
    }

    #[test]
    fn rejects_malformed_strings() {
        assert!(rat_from_decimal_str("").is_err());
        assert!(rat_from_decimal_str("1/0").is_err());
        assert!(rat_from_decimal_str("abc").is_err());
        assert!(rat_from_decimal_str("1.2.3").is_err());
    }

    #[test]
    fn integer_powers() {
        assert_eq!(rat_pow(&rat(2, 3), 3).unwrap(), rat(8, 27));
        assert_eq!(rat_pow(&rat(2, 3), -2).unwrap(), rat(9, 4));
        assert_eq!(rat_pow(&rat(5, 7), 0).unwrap(), rat(1, 1));
        assert!(rat_pow(&rat(0, 1), -1).is_err());
    }
}
