//! Dyadic floating point at configurable binary precision.
//!
//! A value is sign * mantissa * 2^exp with the mantissa normalized to
//! exactly `prec` bits (top bit set). Addition, subtraction,
//! multiplication, division, and square root round to nearest with ties to
//! even at the result precision, which is the maximum of the operand
//! precisions. Nothing transcendental lives here: the closed forms in the
//! bifurcation pipelines only ever need field operations and square roots.
//!
//! Rounding correctness rests on two mechanisms: exact big-integer
//! arithmetic wherever the result fits (add, mul), and quotient + sticky
//! remainder with at least prec+2 computed bits wherever it does not
//! (div, sqrt, rational conversion). The far-apart-addend shortcut is the
//! only place a term is discarded, and it only fires when the discarded
//! term is strictly below a quarter ulp of the kept one.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::{BigUint, Integer, One, Signed, Zero};

use crate::algebra::ratnum::RatNum;
use crate::error::{Error, Result};

/// Default working precision for certificates: ~77 decimal digits, leaving
/// headroom over every 10^-50 residual bound in the acceptance gates.
pub const DEFAULT_PREC: u32 = 256;
/// Floor on precision; requests below it are clamped up.
pub const MIN_PREC: u32 = 64;

#[derive(Clone)]
pub struct BigFloat {
    sign: i8, // -1, 0, +1; zero iff sign == 0
    mant: BigUint,
    exp: i64,
    prec: u32,
}

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        BigFloat {
            sign: 0,
            mant: BigUint::zero(),
            exp: 0,
            prec: clamp_prec(prec),
        }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        let prec = clamp_prec(prec);
        if v == 0 {
            return Self::zero(prec);
        }
        let sign = if v < 0 { -1 } else { 1 };
        let mant = BigUint::from(v.unsigned_abs());
        normalize(sign, mant, 0, prec, false)
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        let prec = clamp_prec(prec);
        if v.is_zero() {
            return Self::zero(prec);
        }
        let sign = if v.is_negative() { -1 } else { 1 };
        normalize(sign, v.magnitude().clone(), 0, prec, false)
    }

    /// Correctly rounded conversion of an exact rational.
    pub fn from_rat(r: &RatNum, prec: u32) -> Self {
        let prec = clamp_prec(prec);
        if r.is_zero() {
            return Self::zero(prec);
        }
        let sign = if r.is_negative() { -1 } else { 1 };
        let num = r.numer().magnitude();
        let den = r.denom().magnitude();
        let shift = ((prec as i64) + 3 + den.bits() as i64 - num.bits() as i64).max(0);
        let (q, rem) = (num << shift as u64).div_rem(den);
        normalize(sign, q, -shift, prec, !rem.is_zero())
    }

    /// Exact conversion from f64 (every finite f64 is dyadic).
    pub fn from_f64(v: f64, prec: u32) -> Self {
        let prec = clamp_prec(prec);
        assert!(v.is_finite(), "cannot convert non-finite f64");
        if v == 0.0 {
            return Self::zero(prec);
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exp_bits = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if exp_bits == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp_bits - 1075)
        };
        normalize(sign, BigUint::from(mant), exp, prec, false)
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign < 0
    }

    pub fn is_positive(&self) -> bool {
        self.sign > 0
    }

    /// Sign as -1 / 0 / +1.
    pub fn signum(&self) -> i32 {
        self.sign as i32
    }

    pub fn abs(&self) -> Self {
        let mut r = self.clone();
        if r.sign != 0 {
            r.sign = 1;
        }
        r
    }

    /// Re-rounds to a different precision (nearest-even when narrowing).
    pub fn round_to(&self, prec: u32) -> Self {
        let prec = clamp_prec(prec);
        if self.sign == 0 {
            return Self::zero(prec);
        }
        normalize(self.sign, self.mant.clone(), self.exp, prec, false)
    }

    /// Exact value as a big rational. Exponentially large exponents would
    /// make this huge, but pipeline values stay desk-scale.
    pub fn to_rat(&self) -> RatNum {
        if self.sign == 0 {
            return RatNum::zero();
        }
        let m = BigInt::from(self.mant.clone()) * BigInt::from(self.sign);
        if self.exp >= 0 {
            RatNum::from_integer(m << self.exp as u64)
        } else {
            RatNum::new(m, BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.sign == 0 {
            return 0.0;
        }
        let narrowed = self.round_to(MIN_PREC);
        // Take the top 53 bits of the 64-bit mantissa with round-half-even.
        let r53 = normalize_raw(narrowed.mant.clone(), narrowed.exp, 53, false);
        let m: u64 = r53.0.iter_u64_digits().next().unwrap_or(0);
        let mut out = m as f64;
        let mut e = r53.1;
        while e > 0 {
            let step = e.min(512);
            out *= 2f64.powi(step as i32);
            e -= step;
        }
        while e < 0 {
            let step = (-e).min(512);
            out *= 2f64.powi(-(step as i32));
            e += step;
        }
        if self.sign < 0 {
            -out
        } else {
            out
        }
    }

    pub fn neg_ref(&self) -> Self {
        let mut r = self.clone();
        r.sign = -r.sign;
        r
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        if self.sign == 0 {
            return other.round_to(prec);
        }
        if other.sign == 0 {
            return self.round_to(prec);
        }
        // Far-apart shortcut: when the smaller addend sits entirely below a
        // quarter ulp of the larger at the result precision, the rounded sum
        // is the larger addend itself (no tie is possible because the larger
        // addend is exactly representable at prec >= its own precision).
        let top_a = self.exp + self.prec as i64;
        let top_b = other.exp + other.prec as i64;
        if self.exp > top_b + prec as i64 + 4 {
            return self.round_to(prec);
        }
        if other.exp > top_a + prec as i64 + 4 {
            return other.round_to(prec);
        }
        let e0 = self.exp.min(other.exp);
        let a = BigInt::from(self.mant.clone()) * BigInt::from(self.sign) << (self.exp - e0) as u64;
        let b =
            BigInt::from(other.mant.clone()) * BigInt::from(other.sign) << (other.exp - e0) as u64;
        let s = a + b;
        if s.is_zero() {
            return Self::zero(prec);
        }
        let sign = if s.is_negative() { -1 } else { 1 };
        normalize(sign, s.magnitude().clone(), e0, prec, false)
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        if self.sign == 0 || other.sign == 0 {
            return Self::zero(prec);
        }
        normalize(
            self.sign * other.sign,
            &self.mant * &other.mant,
            self.exp + other.exp,
            prec,
            false,
        )
    }

    pub fn div_ref(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        assert!(other.sign != 0, "BigFloat division by zero");
        if self.sign == 0 {
            return Self::zero(prec);
        }
        let qbits = prec as u64 + 3;
        let n = &self.mant << (other.prec as u64 + qbits);
        let (q, r) = n.div_rem(&other.mant);
        normalize(
            self.sign * other.sign,
            q,
            self.exp - other.exp - (other.prec as i64 + qbits as i64),
            prec,
            !r.is_zero(),
        )
    }

    /// Correctly rounded square root; errors on negative input.
    pub fn sqrt(&self) -> Result<Self> {
        if self.sign < 0 {
            return Err(Error::InvalidArgument(
                "square root of negative value".into(),
            ));
        }
        if self.sign == 0 {
            return Ok(self.clone());
        }
        let k = self.prec as u64 + 4;
        let (mant, exp) = if self.exp % 2 != 0 {
            (&self.mant << 1u32, self.exp - 1)
        } else {
            (self.mant.clone(), self.exp)
        };
        let t = mant << (2 * k);
        let s = t.sqrt();
        let rem = &t - &s * &s;
        Ok(normalize(
            1,
            s,
            exp / 2 - k as i64,
            self.prec,
            !rem.is_zero(),
        ))
    }

    /// Integer power by repeated squaring. Each step rounds, so the overall
    /// error is a few ulps rather than half an ulp; callers that need
    /// certificates use exact rationals instead.
    pub fn powi(&self, n: u32) -> Self {
        let mut acc = Self::one(self.prec);
        let mut sq = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_ref(&sq);
            }
            n >>= 1;
            if n > 0 {
                sq = sq.mul_ref(&sq);
            }
        }
        acc
    }

    /// 10^k at this value's precision.
    pub fn pow10(k: i64, prec: u32) -> Self {
        let ten = BigInt::from(10);
        let p = ten.pow(k.unsigned_abs() as u32);
        if k >= 0 {
            Self::from_rat(&RatNum::from_integer(p), prec)
        } else {
            Self::from_rat(&RatNum::new(BigInt::one(), p), prec)
        }
    }

    /// Exact magnitude test |self| < 10^k (k is usually negative here).
    pub fn abs_below_pow10(&self, k: i64) -> bool {
        if self.sign == 0 {
            return true;
        }
        self.abs().cmp_ref(&Self::pow10(k, self.prec)) == Ordering::Less
    }

    pub fn cmp_ref(&self, other: &Self) -> Ordering {
        match (self.sign, other.sign) {
            (0, 0) => Ordering::Equal,
            (a, b) if a != b => a.cmp(&b),
            (s, _) => {
                let mag = self.cmp_magnitude(other);
                if s > 0 {
                    mag
                } else {
                    mag.reverse()
                }
            }
        }
    }

    fn cmp_magnitude(&self, other: &Self) -> Ordering {
        let top_a = self.exp + self.mant.bits() as i64;
        let top_b = other.exp + other.mant.bits() as i64;
        if top_a != top_b {
            return top_a.cmp(&top_b);
        }
        let e0 = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e0) as u64;
        let b = &other.mant << (other.exp - e0) as u64;
        a.cmp(&b)
    }

    /// Decimal rendering with `sig` significant digits. Plain notation for
    /// moderate magnitudes, scientific otherwise; trailing zeros trimmed.
    pub fn to_decimal_string(&self, sig: usize) -> String {
        let sig = sig.max(1);
        if self.sign == 0 {
            return "0".to_string();
        }
        // First decimal-exponent estimate from the binary magnitude, then
        // correct by recomputation if the digit count comes out wrong.
        let top = self.exp + self.mant.bits() as i64; // value in [2^(top-1), 2^top)
        let mut d10 = ((top - 1) as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let (digits, d10) = loop {
            let t = sig as i64 - 1 - d10;
            let d = self.scaled_decimal_digits(t);
            let ndig = d.to_string().len() as i64;
            if ndig == sig as i64 {
                break (d, d10);
            }
            // off by one in either direction; adjust the exponent estimate
            d10 += ndig - sig as i64;
        };
        let digit_str = digits.to_string();
        let neg = if self.sign < 0 { "-" } else { "" };
        if -4 <= d10 && d10 < sig as i64 + 6 {
            // plain notation
            let s = if d10 >= 0 {
                let ip_len = (d10 + 1) as usize;
                if ip_len >= digit_str.len() {
                    let zeros = "0".repeat(ip_len - digit_str.len());
                    format!("{digit_str}{zeros}")
                } else {
                    let (ip, fp) = digit_str.split_at(ip_len);
                    let fp = fp.trim_end_matches('0');
                    if fp.is_empty() {
                        ip.to_string()
                    } else {
                        format!("{ip}.{fp}")
                    }
                }
            } else {
                let zeros = "0".repeat((-d10 - 1) as usize);
                let fp = format!("{zeros}{digit_str}");
                let fp = fp.trim_end_matches('0');
                format!("0.{fp}")
            };
            format!("{neg}{s}")
        } else {
            let (lead, rest) = digit_str.split_at(1);
            let rest = rest.trim_end_matches('0');
            if rest.is_empty() {
                format!("{neg}{lead}e{d10}")
            } else {
                format!("{neg}{lead}.{rest}e{d10}")
            }
        }
    }

    /// round(|self| * 10^t) as a big integer, half away from zero.
    fn scaled_decimal_digits(&self, t: i64) -> BigUint {
        let ten = BigUint::from(10u32);
        let p10 = ten.pow(t.unsigned_abs() as u32);
        // |self| * 10^t = mant * 10^t * 2^exp (t >= 0) as num/den
        let mut num = self.mant.clone();
        let mut den = BigUint::one();
        if t >= 0 {
            num *= &p10;
        } else {
            den *= &p10;
        }
        if self.exp >= 0 {
            num <<= self.exp as u64;
        } else {
            den <<= (-self.exp) as u64;
        }
        let (q, r) = num.div_rem(&den);
        if &r * 2u32 >= den {
            q + 1u32
        } else {
            q
        }
    }
}

fn clamp_prec(p: u32) -> u32 {
    p.max(MIN_PREC)
}

/// Rounds a raw magnitude to `prec` bits, nearest-even. `ext_sticky` marks
/// a nonzero discarded tail strictly below the lowest bit of `mant`; when
/// set, `mant` must carry at least prec+2 bits so the round bit is real.
fn normalize_raw(mut mant: BigUint, mut exp: i64, prec: u32, ext_sticky: bool) -> (BigUint, i64) {
    let bits = mant.bits();
    let precu = prec as u64;
    debug_assert!(
        !ext_sticky || bits >= precu + 2,
        "sticky rounding requires prec+2 computed bits"
    );
    if bits > precu {
        let drop = bits - precu;
        let round_bit = mant.bit(drop - 1);
        let sticky = ext_sticky
            || (drop >= 2 && {
                let mask: BigUint = (BigUint::one() << (drop - 1)) - 1u32;
                !(&mant & &mask).is_zero()
            });
        mant >>= drop;
        exp += drop as i64;
        if round_bit && (sticky || mant.bit(0)) {
            mant += 1u32;
            if mant.bits() > precu {
                mant >>= 1u32;
                exp += 1;
            }
        }
    } else if bits < precu {
        let up = precu - bits;
        mant <<= up;
        exp -= up as i64;
    }
    (mant, exp)
}

fn normalize(sign: i8, mant: BigUint, exp: i64, prec: u32, ext_sticky: bool) -> BigFloat {
    debug_assert!(sign == 1 || sign == -1);
    debug_assert!(!mant.is_zero());
    let (mant, exp) = normalize_raw(mant, exp, prec, ext_sticky);
    BigFloat {
        sign,
        mant,
        exp,
        prec,
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_ref(other) == Ordering::Equal
    }
}
impl Eq for BigFloat {}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_ref(other))
    }
}
impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_ref(other)
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigFloat({} @{}b)", self.to_decimal_string(30), self.prec)
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(30);
        write!(f, "{}", self.to_decimal_string(digits))
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait for &BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: &BigFloat) -> BigFloat {
                self.$inner(rhs)
            }
        }
        impl $trait for BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: BigFloat) -> BigFloat {
                self.$inner(&rhs)
            }
        }
        impl $trait<&BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: &BigFloat) -> BigFloat {
                self.$inner(rhs)
            }
        }
        impl $trait<BigFloat> for &BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: BigFloat) -> BigFloat {
                self.$inner(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, add_ref);
impl_binop!(Sub, sub, sub_ref);
impl_binop!(Mul, mul, mul_ref);
impl_binop!(Div, div, div_ref);

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        self.neg_ref()
    }
}
impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratnum::rat;

    fn bf(n: i64, d: i64) -> BigFloat {
        BigFloat::from_rat(&rat(n, d), 128)
    }

    #[test]
    fn exact_dyadic_roundtrips() {
        for (n, d) in [(1, 2), (3, 4), (-7, 8), (5, 1), (-1, 1024)] {
            assert_eq!(bf(n, d).to_rat(), rat(n, d));
        }
    }

    #[test]
    fn conversion_rounds_to_nearest() {
        // 1/3 at precision p: the error must be below half an ulp,
        // i.e. |x - 1/3| <= 2^-(p+1) relative-ish; check against the exact
        // rational difference.
        for p in [64u32, 128, 256] {
            let x = BigFloat::from_rat(&rat(1, 3), p);
            let err = (x.to_rat() - rat(1, 3)).abs();
            // 1/3 in [1/4, 1/2): ulp = 2^-(p+1), half-ulp = 2^-(p+2)
            let half_ulp = RatNum::new(1.into(), num::BigInt::from(1) << (p + 2) as usize);
            assert!(err <= half_ulp, "p={p}: err={err}");
        }
    }

    #[test]
    fn add_and_mul_match_exact_rationals() {
        let cases = [
            (rat(1, 3), rat(1, 7)),
            (rat(-22, 7), rat(355, 113)),
            (rat(1, 1000000), rat(999999, 1000000)),
        ];
        for (a, b) in cases {
            let fa = BigFloat::from_rat(&a, 192);
            let fb = BigFloat::from_rat(&b, 192);
            // compare against the rational op rounded the same way; since
            // the float inputs are rounded themselves, compare to the float
            // ops' exact rational value within 4 ulps at 192 bits.
            let sum_err = ((&fa + &fb).to_rat() - (&a + &b)).abs();
            let prod_err = ((&fa * &fb).to_rat() - (&a * &b)).abs();
            let bound = RatNum::new(1.into(), num::BigInt::from(1) << 180usize);
            assert!(sum_err < bound, "sum err {sum_err}");
            assert!(prod_err < bound, "prod err {prod_err}");
        }
    }

    #[test]
    fn far_apart_addend_is_absorbed() {
        let big = BigFloat::from_i64(1, 64);
        let tiny = BigFloat::from_rat(
            &RatNum::new(1.into(), num::BigInt::from(1) << 200usize),
            64,
        );
        assert_eq!(&big + &tiny, big);
        assert_eq!(&big - &tiny, big);
        // but not at a precision wide enough to see it
        let wide_big = big.round_to(256);
        let wide_tiny = tiny.round_to(256);
        assert!((&wide_big + &wide_tiny) != wide_big);
    }

    #[test]
    fn division_is_correctly_rounded() {
        let a = BigFloat::from_i64(1, 128);
        let b = BigFloat::from_i64(3, 128);
        let q = &a / &b;
        let err = (q.to_rat() - rat(1, 3)).abs();
        // result in [1/4, 1/2): half-ulp at 128 bits is 2^-130
        let half_ulp = RatNum::new(1.into(), num::BigInt::from(1) << 130usize);
        assert!(err <= half_ulp);
    }

    #[test]
    fn sqrt_of_perfect_squares_is_exact() {
        for v in [4i64, 9, 144, 1 << 40] {
            let s = BigFloat::from_i64(v, 128).sqrt().unwrap();
            let expected = (v as f64).sqrt() as i64;
            assert_eq!(s.to_rat(), rat(expected, 1));
        }
        assert_eq!(bf(9, 16).sqrt().unwrap().to_rat(), rat(3, 4));
    }

    #[test]
    fn sqrt_error_below_half_ulp() {
        let two = BigFloat::from_i64(2, 256);
        let s = two.sqrt().unwrap();
        // (s - sqrt(2)) small <=> |s^2 - 2| <= ~2*s*halfulp
        let resid = (s.to_rat().pow(2) - rat(2, 1)).abs();
        let bound = RatNum::new(num::BigInt::from(4), num::BigInt::from(1) << 256usize);
        assert!(resid < bound, "residual {resid}");
        assert!(BigFloat::from_i64(-1, 64).sqrt().is_err());
    }

    #[test]
    fn comparisons_are_exact() {
        assert!(bf(1, 3) < bf(1, 2));
        assert!(bf(-1, 2) < bf(-1, 3));
        assert_eq!(bf(2, 4), bf(1, 2));
        assert!(BigFloat::zero(64) < bf(1, 1000000));
        // mixed precision, same value
        let narrow = BigFloat::from_rat(&rat(3, 8), 64);
        let wide = BigFloat::from_rat(&rat(3, 8), 512);
        assert_eq!(narrow, wide);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(bf(1, 4).to_decimal_string(10), "0.25");
        assert_eq!(bf(-3, 2).to_decimal_string(10), "-1.5");
        assert_eq!(BigFloat::from_i64(1000, 64).to_decimal_string(8), "1000");
        let third = BigFloat::from_rat(&rat(4, 3), 128);
        assert_eq!(third.to_decimal_string(10), "1.333333333");
        let tiny = BigFloat::from_rat(&rat(1, 1_000_000_000), 64);
        assert_eq!(tiny.to_decimal_string(3), "1e-9");
        assert_eq!(BigFloat::zero(64).to_decimal_string(5), "0");
    }

    #[test]
    fn f64_roundtrip() {
        for v in [0.0, 1.5, -0.1, 3.141592653589793, 1e-30, -2.5e17] {
            let x = BigFloat::from_f64(v, 64);
            assert_eq!(x.to_f64(), v, "roundtrip of {v}");
        }
    }

    #[test]
    fn powi_matches_rationals_loosely() {
        let x = BigFloat::from_rat(&rat(7, 5), 128);
        let got = x.powi(11).to_rat();
        let want = rat(7, 5).pow(11);
        let rel = ((got - &want) / &want).abs();
        assert!(rel < RatNum::new(1.into(), num::BigInt::from(1) << 120usize));
    }
}
