//! Sparse multivariate polynomials over big rationals.
//!
//! Terms live in a BTreeMap keyed by exponent vector, so iteration order
//! (and therefore serialization and Display) is deterministic. No zero
//! coefficient is ever stored; exponent vectors always have the same length
//! as the variable list. Arithmetic between polynomials with different
//! variable lists unifies the lists first (left operand's order wins, new
//! names appended).

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, Integer, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::ratnum::{rat_sign, RatNum};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, RatNum>,
}

impl MPoly {
    pub fn zero(vars: &[&str]) -> Self {
        MPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: RatNum) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; p.vars.len()], c);
        }
        p
    }

    pub fn one(vars: &[&str]) -> Self {
        Self::constant(vars, RatNum::one())
    }

    /// The variable `name` as a degree-1 monomial.
    pub fn var(vars: &[&str], name: &str) -> Result<Self> {
        let mut p = Self::zero(vars);
        let idx = p.var_index(name)?;
        let mut exps = vec![0; p.vars.len()];
        exps[idx] = 1;
        p.terms.insert(exps, RatNum::one());
        Ok(p)
    }

    /// Monomial c * prod(vars[i]^exps[i]).
    pub fn monomial(vars: &[&str], exps: &[u32], c: RatNum) -> Self {
        let mut p = Self::zero(vars);
        assert_eq!(exps.len(), p.vars.len(), "exponent vector length mismatch");
        if !c.is_zero() {
            p.terms.insert(exps.to_vec(), c);
        }
        p
    }

    pub fn from_terms(vars: &[&str], terms: impl IntoIterator<Item = (Vec<u32>, RatNum)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.vars.len(), "exponent vector length mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &RatNum)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    pub fn constant_value(&self) -> Option<&RatNum> {
        if self.is_zero() {
            return None;
        }
        self.terms
            .get(&vec![0; self.vars.len()])
            .filter(|_| self.terms.len() == 1)
    }

    /// Coefficient of the given exponent vector (zero when absent).
    pub fn coeff(&self, exps: &[u32]) -> RatNum {
        self.terms.get(exps).cloned().unwrap_or_else(RatNum::zero)
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown variable {name:?}")))
    }

    fn add_term(&mut self, exps: Vec<u32>, c: RatNum) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Rewrites the polynomial over another variable list. Variables may be
    /// added freely; one of the current variables may be dropped only if it
    /// appears with exponent zero in every term.
    pub fn with_vars(&self, vars: &[&str]) -> Result<Self> {
        let mut out = Self::zero(vars);
        // None marks a dropped variable, legal only at exponent zero
        let mapping: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| out.var_index(v).ok())
            .collect();
        for (e, c) in &self.terms {
            let mut ne = vec![0; out.vars.len()];
            for (i, &ei) in e.iter().enumerate() {
                match mapping[i] {
                    Some(k) => ne[k] = ei,
                    None if ei == 0 => {}
                    None => {
                        return Err(Error::InvalidArgument(format!(
                            "variable {:?} is used but absent from the target list",
                            self.vars[i]
                        )))
                    }
                }
            }
            out.terms.insert(ne, c.clone());
        }
        Ok(out)
    }

    fn unify(a: &MPoly, b: &MPoly) -> (MPoly, MPoly) {
        if a.vars == b.vars {
            return (a.clone(), b.clone());
        }
        let mut names: Vec<String> = a.vars.clone();
        for v in &b.vars {
            if !names.contains(v) {
                names.push(v.clone());
            }
        }
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        (
            a.with_vars(&refs).expect("superset by construction"),
            b.with_vars(&refs).expect("superset by construction"),
        )
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let (mut a, b) = Self::unify(self, other);
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MPoly {
        let mut p = self.clone();
        for c in p.terms.values_mut() {
            *c = -c.clone();
        }
        p
    }

    pub fn scale(&self, k: &RatNum) -> MPoly {
        if k.is_zero() {
            return MPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        let mut p = self.clone();
        for c in p.terms.values_mut() {
            *c = &*c * k;
        }
        p
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let (a, b) = Self::unify(self, other);
        let mut out = MPoly {
            vars: a.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, mut n: u32) -> MPoly {
        let refs: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        let mut acc = MPoly::one(&refs);
        let mut sq = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&sq);
            }
            n >>= 1;
            if n > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    pub fn derivative(&self, var: &str) -> Result<MPoly> {
        let idx = self.var_index(var)?;
        let mut out = MPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            if e[idx] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[idx] -= 1;
            out.add_term(ne, c * RatNum::from_integer(BigInt::from(e[idx])));
        }
        Ok(out)
    }

    pub fn degree_in(&self, var: &str) -> Result<u32> {
        let idx = self.var_index(var)?;
        Ok(self.terms.keys().map(|e| e[idx]).max().unwrap_or(0))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Drops every term of total degree above `k`.
    pub fn truncate_total_degree(&self, k: u32) -> MPoly {
        let mut p = self.clone();
        p.terms.retain(|e, _| e.iter().sum::<u32>() <= k);
        p
    }

    /// Coefficients with respect to `var`: index i holds the coefficient of
    /// var^i as a polynomial over the same variable list (var-degree zero).
    pub fn coeffs_in(&self, var: &str) -> Result<Vec<MPoly>> {
        let idx = self.var_index(var)?;
        let deg = self.degree_in(var)? as usize;
        let mut out = vec![
            MPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
            deg + 1
        ];
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let d = ne[idx] as usize;
            ne[idx] = 0;
            out[d].add_term(ne, c.clone());
        }
        Ok(out)
    }

    pub fn from_coeffs_in(vars: &[&str], var: &str, coeffs: &[MPoly]) -> Result<MPoly> {
        let mut out = MPoly::zero(vars);
        let idx = out.var_index(var)?;
        for (d, c) in coeffs.iter().enumerate() {
            let c = c.with_vars(vars)?;
            for (e, k) in &c.terms {
                let mut ne = e.clone();
                ne[idx] += d as u32;
                out.add_term(ne, k.clone());
            }
        }
        Ok(out)
    }

    /// Substitutes an exact rational for `var` (the variable stays in the
    /// list with degree zero afterwards).
    pub fn subst_rat(&self, var: &str, value: &RatNum) -> Result<MPoly> {
        let idx = self.var_index(var)?;
        let max_deg = self.degree_in(var)?;
        let mut powers = Vec::with_capacity(max_deg as usize + 1);
        powers.push(RatNum::one());
        for _ in 0..max_deg {
            powers.push(powers.last().unwrap() * value);
        }
        let mut out = MPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let d = ne[idx] as usize;
            ne[idx] = 0;
            out.add_term(ne, c * &powers[d]);
        }
        Ok(out)
    }

    /// Substitutes a polynomial for `var`. The variable stays in the list
    /// (at degree zero) so downstream var-order bookkeeping is unchanged.
    pub fn subst_poly(&self, var: &str, value: &MPoly) -> Result<MPoly> {
        let coeffs = self.coeffs_in(var)?;
        // Horner in var
        let mut acc = MPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for c in coeffs.iter().rev() {
            acc = acc.mul(value).add(c);
        }
        Ok(acc)
    }

    /// Positional evaluation; `values` follows the variable order.
    pub fn eval_rat(&self, values: &[RatNum]) -> RatNum {
        assert_eq!(values.len(), self.vars.len(), "value count mismatch");
        let powers = self.power_table(values, RatNum::one(), |a, b| a * b);
        let mut acc = RatNum::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    t *= &powers[i][ei as usize];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, values: &[f64]) -> f64 {
        assert_eq!(values.len(), self.vars.len(), "value count mismatch");
        let powers = self.power_table(values, 1.0, |a, b| a * b);
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut t = crate::algebra::ratnum::rat_to_f64(c);
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    t *= powers[i][ei as usize];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_bf(&self, values: &[crate::algebra::BigFloat], prec: u32) -> crate::algebra::BigFloat {
        use crate::algebra::BigFloat;
        assert_eq!(values.len(), self.vars.len(), "value count mismatch");
        let powers = self.power_table(values, BigFloat::one(prec), |a, b| a.mul_ref(b));
        let mut acc = BigFloat::zero(prec);
        for (e, c) in &self.terms {
            let mut t = BigFloat::from_rat(c, prec);
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    t = t.mul_ref(&powers[i][ei as usize]);
                }
            }
            acc = acc.add_ref(&t);
        }
        acc
    }

    /// Exact evaluation in a quadratic extension. All values must share a
    /// radicand (purely rational entries mix freely).
    pub fn eval_quad(&self, values: &[crate::algebra::QuadExt]) -> crate::error::Result<crate::algebra::QuadExt> {
        use crate::algebra::QuadExt;
        assert_eq!(values.len(), self.vars.len(), "value count mismatch");
        let mut acc = QuadExt::rational(RatNum::zero());
        for (e, c) in &self.terms {
            let mut t = QuadExt::rational(c.clone());
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    t = t.mul(&values[i].pow(ei)?)?;
                }
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    fn power_table<T: Clone>(&self, values: &[T], one: T, mul: impl Fn(&T, &T) -> T) -> Vec<Vec<T>> {
        let mut max_deg = vec![0u32; self.vars.len()];
        for e in self.terms.keys() {
            for (m, &ei) in max_deg.iter_mut().zip(e) {
                *m = (*m).max(ei);
            }
        }
        values
            .iter()
            .zip(&max_deg)
            .map(|(v, &d)| {
                let mut row = Vec::with_capacity(d as usize + 1);
                row.push(one.clone());
                for _ in 0..d {
                    row.push(mul(row.last().unwrap(), v));
                }
                row
            })
            .collect()
    }

    /// Content: positive rational c such that p/c has coprime integer
    /// coefficients. Zero polynomial has content 0.
    pub fn content(&self) -> RatNum {
        if self.is_zero() {
            return RatNum::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        RatNum::new(num_gcd, den_lcm)
    }

    /// Primitive part: p / content, sign-normalized so the lex-leading
    /// coefficient is positive.
    pub fn primitive_part(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if rat_sign(self.lex_leading_coeff()) < 0 {
            c = -c;
        }
        self.scale(&c.recip())
    }

    fn lex_leading_coeff(&self) -> &RatNum {
        // BTreeMap iterates exponent vectors in lex order; last is leading.
        self.terms.values().next_back().expect("nonzero polynomial")
    }

    /// Leading coefficient with respect to one variable, as a polynomial in
    /// the remaining ones.
    pub fn leading_coeff_in(&self, var: &str) -> Result<MPoly> {
        let cs = self.coeffs_in(var)?;
        Ok(cs.into_iter().next_back().unwrap_or_else(|| MPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        }))
    }

    /// Exact division; returns None when `self` is not a multiple of `d`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (mut r, d) = Self::unify(self, d);
        let mut q = MPoly {
            vars: r.vars.clone(),
            terms: BTreeMap::new(),
        };
        let (de, dc) = {
            let (e, c) = d.terms.iter().next_back()?;
            (e.clone(), c.clone())
        };
        while !r.is_zero() {
            let (re, rc) = {
                let (e, c) = r.terms.iter().next_back().unwrap();
                (e.clone(), c.clone())
            };
            if re.iter().zip(&de).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Vec<u32> = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            let qc = &rc / &dc;
            let qt = MPoly {
                vars: r.vars.clone(),
                terms: BTreeMap::from([(qe.clone(), qc.clone())]),
            };
            r = r.sub(&qt.mul(&d));
            q.add_term(qe, qc);
        }
        Some(q)
    }

    /// The polynomial restricted to one used variable as a dense coefficient
    /// vector (constant first). Errors when more than one variable actually
    /// appears or when the polynomial is constant.
    pub fn as_univariate(&self) -> Result<(String, Vec<RatNum>)> {
        let mut used: Option<usize> = None;
        for e in self.terms.keys() {
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    match used {
                        None => used = Some(i),
                        Some(j) if j == i => {}
                        Some(j) => {
                            return Err(Error::InvalidArgument(format!(
                                "polynomial uses both {:?} and {:?}",
                                self.vars[j], self.vars[i]
                            )))
                        }
                    }
                }
            }
        }
        let idx = used.ok_or_else(|| {
            Error::InvalidArgument("constant polynomial has no univariate structure".into())
        })?;
        let deg = self.terms.keys().map(|e| e[idx]).max().unwrap() as usize;
        let mut coeffs = vec![RatNum::zero(); deg + 1];
        for (e, c) in &self.terms {
            coeffs[e[idx] as usize] = c.clone();
        }
        Ok((self.vars[idx].clone(), coeffs))
    }

    pub fn from_univariate(var: &str, coeffs: &[RatNum]) -> MPoly {
        let mut p = MPoly::zero(&[var]);
        for (d, c) in coeffs.iter().enumerate() {
            p.add_term(vec![d as u32], c.clone());
        }
        p
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // highest lex term first reads most naturally
        for (e, c) in self.terms.iter().rev() {
            let neg = rat_sign(c) < 0;
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const_term = e.iter().all(|&x| x == 0);
            if !mag.is_one() || is_const_term {
                write!(f, "{mag}")?;
                if !is_const_term {
                    write!(f, "*")?;
                }
            }
            let mut first_var = true;
            for (i, &ei) in e.iter().enumerate() {
                if ei == 0 {
                    continue;
                }
                if !first_var {
                    write!(f, "*")?;
                }
                first_var = false;
                if ei == 1 {
                    write!(f, "{}", self.vars[i])?;
                } else {
                    write!(f, "{}^{}", self.vars[i], ei)?;
                }
            }
        }
        Ok(())
    }
}

/// Serialization mirror: explicit exponent/coefficient rows, numerator and
/// denominator as decimal strings so arbitrarily large values survive.
#[derive(Serialize, Deserialize)]
struct MPolyRepr {
    vars: Vec<String>,
    terms: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exps: Vec<u32>,
    num: String,
    den: String,
}

impl Serialize for MPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MPolyRepr {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermRepr {
                    exps: e.clone(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let repr = MPolyRepr::deserialize(d)?;
        let vars: Vec<&str> = repr.vars.iter().map(|s| s.as_str()).collect();
        let mut p = MPoly::zero(&vars);
        for t in repr.terms {
            if t.exps.len() != vars.len() {
                return Err(D::Error::custom("exponent vector length mismatch"));
            }
            let num: BigInt = t.num.parse().map_err(D::Error::custom)?;
            let den: BigInt = t.den.parse().map_err(D::Error::custom)?;
            if den.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            p.add_term(t.exps, RatNum::new(num, den));
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratnum::rat;

    fn xy() -> (MPoly, MPoly) {
        (
            MPoly::var(&["x", "y"], "x").unwrap(),
            MPoly::var(&["x", "y"], "y").unwrap(),
        )
    }

    #[test]
    fn ring_arithmetic() {
        let (x, y) = xy();
        // (x + y)^2 = x^2 + 2xy + y^2
        let lhs = x.add(&y).pow(2);
        let rhs = x.pow(2).add(&x.mul(&y).scale(&rat(2, 1))).add(&y.pow(2));
        assert_eq!(lhs, rhs);
        // subtraction cancels to zero
        assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn unification_across_var_lists() {
        let x = MPoly::var(&["x"], "x").unwrap();
        let y = MPoly::var(&["y"], "y").unwrap();
        let s = x.add(&y);
        assert_eq!(s.vars(), &["x".to_string(), "y".to_string()]);
        assert_eq!(s.eval_rat(&[rat(2, 1), rat(3, 1)]), rat(5, 1));
    }

    #[test]
    fn derivative_and_eval() {
        let (x, y) = xy();
        // p = 3x^2y - y + 1/2 ; dp/dx = 6xy
        let p = x
            .pow(2)
            .mul(&y)
            .scale(&rat(3, 1))
            .sub(&y)
            .add(&MPoly::constant(&["x", "y"], rat(1, 2)));
        let dx = p.derivative("x").unwrap();
        assert_eq!(dx, x.mul(&y).scale(&rat(6, 1)));
        assert_eq!(p.eval_rat(&[rat(1, 1), rat(2, 1)]), rat(9, 2));
        assert_eq!(p.eval_f64(&[1.0, 2.0]), 4.5);
    }

    #[test]
    fn substitution() {
        let (x, y) = xy();
        let p = x.pow(2).add(&y);
        let q = p.subst_rat("x", &rat(3, 1)).unwrap();
        assert_eq!(q.eval_rat(&[rat(0, 1), rat(1, 1)]), rat(10, 1));
        // subst x -> y+1 gives (y+1)^2 + y = y^2 + 3y + 1
        let r = p
            .subst_poly("x", &y.add(&MPoly::one(&["x", "y"])))
            .unwrap();
        let want = y
            .pow(2)
            .add(&y.scale(&rat(3, 1)))
            .add(&MPoly::one(&["x", "y"]));
        assert_eq!(r, want);
    }

    #[test]
    fn content_and_primitive_part() {
        let (x, _) = xy();
        let p = x.pow(2).scale(&rat(4, 6)).add(&x.scale(&rat(-2, 3)));
        // content of (2/3)x^2 - (2/3)x is 2/3
        assert_eq!(p.content(), rat(2, 3));
        let pp = p.primitive_part();
        assert_eq!(pp, x.pow(2).sub(&x));
        // sign normalization: leading coefficient positive
        assert_eq!(p.neg().primitive_part(), pp);
    }

    #[test]
    fn exact_division() {
        let (x, y) = xy();
        let a = x.add(&y);
        let b = x.sub(&y);
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert!(prod.add(&MPoly::one(&["x", "y"])).div_exact(&a).is_none());
    }

    #[test]
    fn univariate_extraction() {
        let p = MPoly::from_univariate("g", &[rat(11, 1), rat(-94, 1), rat(19, 1)]);
        let (v, cs) = p.as_univariate().unwrap();
        assert_eq!(v, "g");
        assert_eq!(cs, vec![rat(11, 1), rat(-94, 1), rat(19, 1)]);
        // multivariate input is rejected
        let (x, y) = xy();
        assert!(x.mul(&y).as_univariate().is_err());
        // but a multivariate var list with only one used variable is fine
        assert!(x.pow(3).as_univariate().is_ok());
    }

    #[test]
    fn truncation_by_total_degree() {
        let (x, y) = xy();
        let p = x.pow(3).add(&x.mul(&y)).add(&MPoly::one(&["x", "y"]));
        let t = p.truncate_total_degree(2);
        assert_eq!(t, x.mul(&y).add(&MPoly::one(&["x", "y"])));
    }

    #[test]
    fn serde_roundtrip() {
        let (x, y) = xy();
        let p = x.pow(2).mul(&y).scale(&rat(-7, 3)).add(&y);
        let json = serde_json::to_string(&p).unwrap();
        let back: MPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn display_reads_naturally() {
        let (x, y) = xy();
        let p = x.pow(2).scale(&rat(3, 2)).sub(&y).add(&MPoly::one(&["x", "y"]));
        assert_eq!(format!("{p}"), "3/2*x^2 - y + 1");
    }
}
