//! Exact arithmetic in a real quadratic extension Q(sqrt(r)).
//!
//! Values are pairs a + b*sqrt(r) with rational a, b and a fixed nonnegative
//! rational radicand r. Two values combine when they share the radicand or
//! when either is purely rational (b = 0). A perfect square radicand is
//! folded away on construction, so b != 0 implies sqrt(r) is irrational and
//! zero testing and sign computation are exact.

use num::{BigInt, One, Signed, Zero};

use super::ratnum::RatNum;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct QuadExt {
    a: RatNum,
    b: RatNum,
    r: RatNum,
}

/// Exact rational square root, when one exists.
fn rational_sqrt(r: &RatNum) -> Option<RatNum> {
    if r.is_negative() {
        return None;
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(RatNum::new(ns, ds))
    } else {
        None
    }
}

impl QuadExt {
    pub fn new(a: RatNum, b: RatNum, r: RatNum) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::InvalidArgument(
                "negative radicand in quadratic extension".into(),
            ));
        }
        if let Some(s) = rational_sqrt(&r) {
            // fold the rational root into the a part; b = 0 marks a plain
            // rational so mixed-radicand arithmetic stays legal
            return Ok(Self {
                a: a + b * s,
                b: RatNum::zero(),
                r,
            });
        }
        if b.is_zero() {
            return Ok(Self {
                a,
                b: RatNum::zero(),
                r,
            });
        }
        Ok(Self { a, b, r })
    }

    pub fn rational(a: RatNum) -> Self {
        Self {
            a,
            b: RatNum::zero(),
            r: RatNum::zero(),
        }
    }

    /// The generator sqrt(r) itself.
    pub fn sqrt_of(r: RatNum) -> Result<Self> {
        Self::new(RatNum::zero(), RatNum::one(), r)
    }

    pub fn rat_part(&self) -> &RatNum {
        &self.a
    }

    pub fn surd_part(&self) -> &RatNum {
        &self.b
    }

    pub fn radicand(&self) -> &RatNum {
        &self.r
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&RatNum> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        // b != 0 never cancels a rational a because sqrt(r) is irrational
        self.a.is_zero() && self.b.is_zero()
    }

    /// Shared radicand for a binary operation, or an error when both sides
    /// carry genuinely different surds.
    fn join_radicand(&self, other: &Self) -> Result<RatNum> {
        if self.b.is_zero() {
            return Ok(other.r.clone());
        }
        if other.b.is_zero() || self.r == other.r {
            return Ok(self.r.clone());
        }
        Err(Error::InvalidArgument(format!(
            "mixed radicands {} and {}",
            self.r, other.r
        )))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let r = self.join_radicand(other)?;
        Self::new(&self.a + &other.a, &self.b + &other.b, r)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            a: -self.a.clone(),
            b: -self.b.clone(),
            r: self.r.clone(),
        }
    }

    pub fn scale(&self, k: &RatNum) -> Self {
        Self {
            a: &self.a * k,
            b: &self.b * k,
            r: self.r.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let r = self.join_radicand(other)?;
        let a = &self.a * &other.a + &self.b * &other.b * &r;
        let b = &self.a * &other.b + &self.b * &other.a;
        Self::new(a, b, r)
    }

    pub fn conj(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: -self.b.clone(),
            r: self.r.clone(),
        }
    }

    /// Field norm a^2 - b^2 r; zero exactly for the zero element because a
    /// perfect square radicand never survives construction.
    pub fn norm(&self) -> RatNum {
        &self.a * &self.a - &self.b * &self.b * &self.r
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidArgument(
                "division by zero in quadratic extension".into(),
            ));
        }
        let n = self.norm();
        Ok(Self {
            a: &self.a / &n,
            b: -&self.b / &n,
            r: self.r.clone(),
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, mut n: u32) -> Result<Self> {
        let mut base = self.clone();
        let mut acc = Self::rational(RatNum::one());
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Exact square root within the same extension, when one exists.
    ///
    /// A rational input yields either its rational root or the generator of
    /// a fresh extension. A genuinely quadratic input a + b sqrt(r) denests
    /// to u + v sqrt(r) exactly when the norm a² − b²r is a rational square
    /// m² and (a ± m)/2 is one too; otherwise the root lives in a degree-4
    /// field and `NotApplicable` is returned so callers can fall back to
    /// float arithmetic.
    pub fn sqrt(&self) -> Result<Self> {
        if self.signum() < 0 {
            return Err(Error::InvalidArgument(format!(
                "square root of the negative value {self}"
            )));
        }
        if self.b.is_zero() {
            return match rational_sqrt(&self.a) {
                Some(s) => Ok(Self::rational(s)),
                None => Self::sqrt_of(self.a.clone()),
            };
        }
        // (u + v sqrt r)^2 = u^2 + v^2 r + 2uv sqrt r, so u^2 and v^2 r are
        // the roots of z^2 - a z + b^2 r / 4, with discriminant the norm
        let m = match rational_sqrt(&self.norm()) {
            Some(m) => m,
            None => {
                return Err(Error::NotApplicable(format!(
                    "square root of {self} does not denest into Q(sqrt({}))",
                    self.r
                )))
            }
        };
        let half = RatNum::new(BigInt::one(), BigInt::from(2));
        for cand in [(&self.a + &m) * &half, (&self.a - &m) * &half] {
            if let Some(u) = rational_sqrt(&cand) {
                if u.is_zero() {
                    continue;
                }
                let v = &self.b / (RatNum::from(BigInt::from(2)) * &u);
                let root = Self::new(u, v, self.r.clone())?;
                if root.mul(&root)? == *self {
                    return Ok(if root.is_negative() { root.neg() } else { root });
                }
            }
        }
        Err(Error::NotApplicable(format!(
            "square root of {self} does not denest into Q(sqrt({}))",
            self.r
        )))
    }

    /// Exact sign: the surd never ties with the rational part because the
    /// radicand is not a perfect square.
    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        match (sa, sb) {
            (0, 0) => 0,
            (s, 0) | (0, s) => s,
            (s, t) if s == t => s,
            _ => {
                // opposite signs: compare |a| against |b| sqrt(r)
                let a2 = &self.a * &self.a;
                let b2r = &self.b * &self.b * &self.r;
                match a2.cmp(&b2r) {
                    std::cmp::Ordering::Greater => sa,
                    std::cmp::Ordering::Less => sb,
                    std::cmp::Ordering::Equal => 0,
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn to_bigfloat(&self, prec: u32) -> Result<super::BigFloat> {
        use super::BigFloat;
        let a = BigFloat::from_rat(&self.a, prec);
        if self.b.is_zero() {
            return Ok(a);
        }
        let root = BigFloat::from_rat(&self.r, prec).sqrt()?;
        Ok(a.add_ref(&BigFloat::from_rat(&self.b, prec).mul_ref(&root)))
    }
}

fn sign(r: &RatNum) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl std::fmt::Display for QuadExt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.r)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.r)
        }
    }
}

/// Convenience for integer-coefficient elements a + b sqrt(r).
pub fn quad(a: i64, b: i64, r: i64) -> QuadExt {
    QuadExt::new(
        RatNum::from(BigInt::from(a)),
        RatNum::from(BigInt::from(b)),
        RatNum::from(BigInt::from(r)),
    )
    .expect("nonnegative radicand")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratnum::rat;

    #[test]
    fn perfect_square_radicand_folds_to_rational() {
        // 1 + 2 sqrt(64/9) = 1 + 16/3
        let v = QuadExt::new(rat(1, 1), rat(2, 1), rat(64, 9)).unwrap();
        assert_eq!(v.as_rational(), Some(&rat(19, 3)));
    }

    #[test]
    fn golden_ratio_identity() {
        // phi = (1 + sqrt 5)/2 satisfies phi^2 = phi + 1
        let phi = quad(1, 1, 5).scale(&rat(1, 2));
        let lhs = phi.mul(&phi).unwrap();
        let rhs = phi.add(&QuadExt::rational(rat(1, 1))).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn division_and_norm() {
        // 1/(3/2 + sqrt 2) = (3/2 - sqrt 2)/((3/2)^2 - 2) = 6 - 4 sqrt 2
        let x = QuadExt::new(rat(3, 2), rat(1, 1), rat(2, 1)).unwrap();
        let inv = x.inv().unwrap();
        assert_eq!(inv, QuadExt::new(rat(6, 1), rat(-4, 1), rat(2, 1)).unwrap());
        assert!(x.mul(&inv).unwrap().sub(&QuadExt::rational(rat(1, 1))).unwrap().is_zero());
    }

    #[test]
    fn exact_sign_with_opposite_parts() {
        // 7/5 - sqrt 2 < 0 < 3/2 - sqrt 2
        assert!(QuadExt::new(rat(7, 5), rat(-1, 1), rat(2, 1)).unwrap().is_negative());
        assert!(QuadExt::new(rat(3, 2), rat(-1, 1), rat(2, 1)).unwrap().is_positive());
        assert_eq!(quad(0, 0, 7).signum(), 0);
    }

    #[test]
    fn mixed_radicands_rejected_unless_rational() {
        let a = quad(1, 1, 2);
        let b = quad(1, 1, 5);
        assert!(a.add(&b).is_err());
        let c = QuadExt::rational(rat(4, 1));
        assert_eq!(a.add(&c).unwrap(), quad(5, 1, 2));
    }

    #[test]
    fn sqrt_denests_when_the_norm_is_a_square() {
        // sqrt(17 - 12 sqrt 2) = 3 - 2 sqrt 2
        let t = quad(17, -12, 2);
        assert_eq!(t.sqrt().unwrap(), quad(3, -2, 2));
        // sqrt(3 + 2 sqrt 2) = 1 + sqrt 2
        assert_eq!(quad(3, 2, 2).sqrt().unwrap(), quad(1, 1, 2));
        // rational square
        assert_eq!(
            QuadExt::rational(rat(9, 4)).sqrt().unwrap(),
            QuadExt::rational(rat(3, 2))
        );
        // rational non-square opens a fresh extension
        let s = QuadExt::rational(rat(5, 1)).sqrt().unwrap();
        assert_eq!(s, quad(0, 1, 5));
    }

    #[test]
    fn sqrt_rejects_negatives_and_non_denesting_surds() {
        assert!(QuadExt::rational(rat(-1, 1)).sqrt().is_err());
        // norm(1 + sqrt 2) = -1: the root needs a degree-4 field
        match quad(1, 1, 2).sqrt() {
            Err(crate::error::Error::NotApplicable(_)) => {}
            other => panic!("expected NotApplicable, got {other:?}"),
        }
    }

    #[test]
    fn bigfloat_conversion_matches_surd() {
        let v = quad(3, -1, 2); // 3 - sqrt 2
        let bf = v.to_bigfloat(128).unwrap();
        let direct = crate::algebra::BigFloat::from_i64(3, 128)
            .sub_ref(&crate::algebra::BigFloat::from_i64(2, 128).sqrt().unwrap());
        assert_eq!(bf.cmp_ref(&direct), std::cmp::Ordering::Equal);
    }
}
