//! Real-root isolation for univariate rational polynomials.
//!
//! The pipeline is: Yun squarefree factorization (multiplicities), a Sturm
//! chain per squarefree factor, recursive bisection until each interval
//! holds one distinct root, then pairwise refinement until all intervals
//! across factors are disjoint. Everything is exact rational arithmetic;
//! "numeric" refinement is just bisection to a rational width bound.

use num::{One, Signed, Zero};

use crate::algebra::mpoly::MPoly;
use crate::algebra::ratnum::{rat, rat_sign, RatNum};
use crate::error::{Error, Result};

/// Default width for final refinement elsewhere in the crate: 10^-30
/// comfortably exceeds every printed constant's precision.
pub(crate) fn default_tol() -> RatNum {
    RatNum::new(1.into(), num::BigInt::from(10).pow(30))
}

/// An interval isolating exactly one distinct real root of `polynomial`.
#[derive(Clone, Debug)]
pub struct RootInterval {
    pub low: RatNum,
    pub high: RatNum,
    pub polynomial: MPoly,
    pub multiplicity: u32,
}

impl RootInterval {
    pub fn width(&self) -> RatNum {
        &self.high - &self.low
    }

    pub fn midpoint(&self) -> RatNum {
        (&self.low + &self.high) / rat(2, 1)
    }

    /// True when the exact rational `v` lies in [low, high].
    pub fn contains(&self, v: &RatNum) -> bool {
        &self.low <= v && v <= &self.high
    }
}

/// Isolating intervals for every distinct real root of `p` in (lo, hi],
/// with multiplicities from squarefree factorization. `p` must actually be
/// univariate (a wider variable list is fine if only one variable appears).
pub fn sturm_real_roots(p: &MPoly, lo: &RatNum, hi: &RatNum) -> Result<Vec<RootInterval>> {
    if p.is_zero() {
        return Err(Error::InvalidArgument("zero polynomial".into()));
    }
    if lo >= hi {
        return Err(Error::InvalidArgument("need lo < hi".into()));
    }
    let (_, coeffs) = p
        .as_univariate()
        .map_err(|_| Error::InvalidArgument("constant or multivariate polynomial".into()))?;
    let u = UPoly::new(coeffs);

    // (low, high, mult, squarefree factor owning the root)
    let mut found: Vec<(RatNum, RatNum, u32, UPoly)> = Vec::new();
    for (factor, mult) in yun_squarefree(&u) {
        if factor.degree() == 0 {
            continue;
        }
        let mut f = factor;
        // Roots exactly at the endpoints: lo is excluded by the half-open
        // interval, hi is included. Deflating keeps the Sturm counting
        // clean (endpoint values nonzero).
        if f.eval(lo).is_zero() {
            f = f.deflate(lo);
        }
        if f.eval(hi).is_zero() {
            found.push((hi.clone(), hi.clone(), mult, f.clone()));
            f = f.deflate(hi);
        }
        if f.degree() == 0 {
            continue;
        }
        let chain = sturm_chain(&f);
        let mut stack = vec![(lo.clone(), hi.clone())];
        while let Some((a, b)) = stack.pop() {
            let count = variations(&chain, &a) as i64 - variations(&chain, &b) as i64;
            match count {
                0 => {}
                1 => found.push((a, b, mult, f.clone())),
                _ => {
                    let m = split_point(&f, &a, &b);
                    stack.push((a, m.clone()));
                    stack.push((m, b));
                }
            }
        }
    }

    // Intervals from distinct factors may overlap (each isolates a root of
    // its own factor only). Roots of distinct squarefree factors are
    // themselves distinct, so bisecting every offender on its own factor
    // separates the closed intervals in finitely many steps.
    let by_position = |x: &(RatNum, RatNum, u32, UPoly), y: &(RatNum, RatNum, u32, UPoly)| {
        (&x.0 + &x.1).cmp(&(&y.0 + &y.1))
    };
    found.sort_by(by_position);
    loop {
        let mut overlapping = None;
        for i in 0..found.len().saturating_sub(1) {
            if found[i].1 >= found[i + 1].0 {
                overlapping = Some(i);
                break;
            }
        }
        let Some(i) = overlapping else { break };
        for k in [i, i + 1] {
            if found[k].0 < found[k].1 {
                let (na, nb) = bisect_once(&found[k].3, &found[k].0, &found[k].1);
                found[k].0 = na;
                found[k].1 = nb;
            }
        }
        found.sort_by(by_position);
    }

    Ok(found
        .into_iter()
        .map(|(low, high, multiplicity, _)| RootInterval {
            low,
            high,
            polynomial: p.clone(),
            multiplicity,
        })
        .collect())
}

/// Shrinks the interval to width <= tol by rational bisection, never losing
/// the root.
pub fn refine_root(r: &RootInterval, tol: &RatNum) -> Result<RootInterval> {
    if tol <= &RatNum::zero() {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let mut out = r.clone();
    if out.low > out.high {
        return Err(Error::InvalidArgument("inverted interval".into()));
    }
    let (_, coeffs) = r
        .polynomial
        .as_univariate()
        .map_err(|_| Error::InvalidArgument("interval polynomial not univariate".into()))?;
    let sf = squarefree_upoly(&UPoly::new(coeffs));
    // Exact root on a closed endpoint collapses the interval.
    if sf.eval(&out.low).is_zero() {
        out.high = out.low.clone();
        return Ok(out);
    }
    if sf.eval(&out.high).is_zero() {
        out.low = out.high.clone();
        return Ok(out);
    }
    if rat_sign(&sf.eval(&out.low)) == rat_sign(&sf.eval(&out.high)) {
        return Err(Error::InvalidArgument(
            "interval does not isolate a sign change of the squarefree part".into(),
        ));
    }
    while out.width() > *tol {
        let (a, b) = bisect_once(&sf, &out.low, &out.high);
        if a == b {
            out.low = a;
            out.high = b;
            break;
        }
        out.low = a;
        out.high = b;
    }
    Ok(out)
}

/// Every real root of a univariate polynomial, as (point, multiplicity)
/// pairs in ascending order, each point within `tol` of the exact root.
/// A nonzero constant has no roots; the zero polynomial is an error.
pub fn real_roots(p: &MPoly, tol: &RatNum) -> Result<Vec<(RatNum, u32)>> {
    if p.is_zero() {
        return Err(Error::InvalidArgument("zero polynomial".into()));
    }
    if p.is_constant() {
        return Ok(Vec::new());
    }
    let (_, coeffs) = p
        .as_univariate()
        .map_err(|_| Error::InvalidArgument("multivariate polynomial".into()))?;
    // Cauchy bound: every root satisfies |r| < 1 + max |a_i| / |a_n|.
    let lead = coeffs.last().expect("nonconstant polynomial");
    let mut worst = RatNum::zero();
    for c in &coeffs[..coeffs.len() - 1] {
        let q = (c / lead).abs();
        if q > worst {
            worst = q;
        }
    }
    let bound = worst + RatNum::one();
    let mut out = Vec::new();
    for iv in sturm_real_roots(p, &-bound.clone(), &bound)? {
        let refined = refine_root(&iv, tol)?;
        out.push((refined.midpoint(), refined.multiplicity));
    }
    Ok(out)
}

/// p / gcd(p, p'), content-normalized to a primitive polynomial with
/// positive leading coefficient.
pub fn squarefree_part(p: &MPoly) -> Result<MPoly> {
    if p.is_zero() {
        return Err(Error::InvalidArgument("zero polynomial".into()));
    }
    let (var, coeffs) = p.as_univariate()?;
    let sf = squarefree_upoly(&UPoly::new(coeffs));
    Ok(MPoly::from_univariate(&var, &sf.0))
}

// ---------------------------------------------------------------------
// dense univariate helpers

#[derive(Clone, Debug, PartialEq)]
struct UPoly(Vec<RatNum>); // coeffs[i] * x^i, trailing zeros trimmed

impl UPoly {
    fn new(mut coeffs: Vec<RatNum>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    fn zero() -> Self {
        UPoly(vec![])
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lc(&self) -> &RatNum {
        self.0.last().expect("nonzero polynomial")
    }

    fn eval(&self, x: &RatNum) -> RatNum {
        let mut acc = RatNum::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    fn derivative(&self) -> UPoly {
        if self.0.len() <= 1 {
            return UPoly::zero();
        }
        UPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * RatNum::from_integer(i.into()))
                .collect(),
        )
    }

    /// Remainder of self / d over the rationals.
    fn rem(&self, d: &UPoly) -> UPoly {
        assert!(!d.is_zero());
        let mut r = self.0.clone();
        let dd = d.degree();
        let dlc = d.lc();
        while r.len() > dd && !r.is_empty() {
            let rl = r.len();
            let q = r.last().unwrap() / dlc;
            if !q.is_zero() {
                for (k, c) in d.0.iter().enumerate() {
                    let idx = rl - 1 - dd + k;
                    let delta = &q * c;
                    r[idx] -= delta;
                }
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        UPoly::new(r)
    }

    /// Exact quotient; panics when the division is not exact (internal use
    /// on gcd multiples only).
    fn div_exact(&self, d: &UPoly) -> UPoly {
        assert!(!d.is_zero());
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut r = self.0.clone();
        let dd = d.degree();
        let dlc = d.lc();
        let mut q = vec![RatNum::zero(); self.0.len().saturating_sub(dd)];
        while r.len() > dd {
            let rl = r.len();
            let qc = r.last().unwrap() / dlc;
            q[rl - 1 - dd] = qc.clone();
            for (k, c) in d.0.iter().enumerate() {
                let idx = rl - 1 - dd + k;
                let delta = &qc * c;
                r[idx] -= delta;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        assert!(r.is_empty(), "inexact polynomial division");
        UPoly::new(q)
    }

    /// Divides out the exact linear factor (x - root).
    fn deflate(&self, root: &RatNum) -> UPoly {
        let d = UPoly::new(vec![-root.clone(), RatNum::one()]);
        self.div_exact(&d)
    }

    /// Scales by a positive rational so coefficients are coprime integers;
    /// the sign of the polynomial is preserved.
    fn primitive_scaled(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let p = MPoly::from_univariate("_t", &self.0);
        let c = p.content();
        UPoly::new(self.0.iter().map(|x| x / &c).collect())
    }

    /// Monic normalization (divides by the leading coefficient).
    fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let lc = self.lc().clone();
        UPoly::new(self.0.iter().map(|x| x / &lc).collect())
    }
}

/// gcd over the rationals, returned monic. Coefficient growth is tamed by
/// primitive rescaling after each remainder step.
fn upoly_gcd(a: &UPoly, b: &UPoly) -> UPoly {
    let mut u = a.primitive_scaled();
    let mut v = b.primitive_scaled();
    while !v.is_zero() {
        let r = u.rem(&v).primitive_scaled();
        u = v;
        v = r;
    }
    u.monic()
}

/// Yun's algorithm: returns (squarefree factor, multiplicity) pairs whose
/// product with multiplicities reconstructs p up to a constant.
fn yun_squarefree(p: &UPoly) -> Vec<(UPoly, u32)> {
    if p.degree() == 0 {
        return vec![];
    }
    let dp = p.derivative();
    let g = upoly_gcd(p, &dp);
    if g.degree() == 0 {
        return vec![(p.primitive_scaled(), 1)];
    }
    let mut out = Vec::new();
    let mut c = p.div_exact(&g);
    let mut d = dp.div_exact(&g).rem_sub(&c.derivative());
    let mut i = 1u32;
    loop {
        let a = upoly_gcd(&c, &d);
        if a.degree() > 0 {
            out.push((a.primitive_scaled(), i));
        }
        let c_next = c.div_exact(&a);
        if c_next.degree() == 0 {
            break;
        }
        let d_next = d.div_exact(&a).rem_sub(&c_next.derivative());
        c = c_next;
        d = d_next;
        i += 1;
    }
    out
}

impl UPoly {
    /// self - other (named to avoid clashing with a future Sub impl).
    fn rem_sub(&self, other: &UPoly) -> UPoly {
        let n = self.0.len().max(other.0.len());
        let mut out = vec![RatNum::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            out[i] -= c;
        }
        UPoly::new(out)
    }
}

/// Signed remainder sequence for a squarefree polynomial, each member
/// rescaled by a positive rational to keep coefficients small.
fn sturm_chain(p: &UPoly) -> Vec<UPoly> {
    let mut chain = vec![p.primitive_scaled(), p.derivative().primitive_scaled()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        if chain[n - 1].degree() == 0 {
            break;
        }
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        let neg: UPoly = UPoly::new(r.0.iter().map(|c| -c.clone()).collect()).primitive_scaled();
        chain.push(neg);
    }
    chain
}

fn variations(chain: &[UPoly], x: &RatNum) -> usize {
    let mut count = 0;
    let mut last = 0i32;
    for p in chain {
        let s = rat_sign(&p.eval(x));
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// A split point in (a, b) that is not a root of f. The midpoint nearly
/// always works; when it is an exact root, walk a sequence of other
/// fractions (f has finitely many roots, so this terminates).
fn split_point(f: &UPoly, a: &RatNum, b: &RatNum) -> RatNum {
    let w = b - a;
    let half = a + &w / rat(2, 1);
    if !f.eval(&half).is_zero() {
        return half;
    }
    let mut den = 3u32;
    loop {
        for num in 1..den {
            if num::Integer::gcd(&num, &den) != 1 {
                continue;
            }
            let cand = a + &w * rat(num as i64, den as i64);
            if !f.eval(&cand).is_zero() {
                return cand;
            }
        }
        den += 2;
    }
}

/// One bisection step on an interval with a sign change of `sf`; returns
/// the half that keeps the sign change, or a collapsed exact root.
fn bisect_once(sf: &UPoly, a: &RatNum, b: &RatNum) -> (RatNum, RatNum) {
    let m = (a + b) / rat(2, 1);
    let fm = sf.eval(&m);
    if fm.is_zero() {
        return (m.clone(), m);
    }
    let fa = sf.eval(a);
    if rat_sign(&fa) * rat_sign(&fm) < 0 {
        (a.clone(), m)
    } else {
        (m, b.clone())
    }
}

fn squarefree_upoly(p: &UPoly) -> UPoly {
    let dp = p.derivative();
    if dp.is_zero() {
        return UPoly::new(vec![RatNum::one()]);
    }
    let g = upoly_gcd(p, &dp);
    let sf = p.div_exact(&g);
    let prim = sf.primitive_scaled();
    // positive leading coefficient
    if rat_sign(prim.lc()) < 0 {
        UPoly::new(prim.0.iter().map(|c| -c.clone()).collect())
    } else {
        prim
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Signed;

    fn upoly(coeffs: &[(i64, i64)]) -> UPoly {
        UPoly::new(coeffs.iter().map(|(n, d)| rat(*n, *d)).collect())
    }

    fn mp(coeffs: &[(i64, i64)]) -> MPoly {
        MPoly::from_univariate("x", &coeffs.iter().map(|(n, d)| rat(*n, *d)).collect::<Vec<_>>())
    }

    #[test]
    fn squarefree_part_examples() {
        // (x-1)^2 (x+2) -> (x-1)(x+2) = x^2 + x - 2
        let p = mp(&[(2, 1), (-3, 1), (0, 1), (1, 1)]);
        assert_eq!(squarefree_part(&p).unwrap(), mp(&[(-2, 1), (1, 1), (1, 1)]));
        // x^3 -> x
        let c = mp(&[(0, 1), (0, 1), (0, 1), (1, 1)]);
        assert_eq!(squarefree_part(&c).unwrap(), mp(&[(0, 1), (1, 1)]));
        // already squarefree stays itself (primitive, positive lc)
        let q = mp(&[(11, 1), (-94, 1), (19, 1)]);
        assert_eq!(squarefree_part(&q).unwrap(), q);
    }

    #[test]
    fn yun_multiplicity_structure() {
        // (x-1)^3: single factor of multiplicity 3
        let p = upoly(&[(-1, 1), (3, 1), (-3, 1), (1, 1)]);
        let f = yun_squarefree(&p);
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].1, 3);
        assert_eq!(f[0].0.monic(), upoly(&[(-1, 1), (1, 1)]));
    }

    #[test]
    fn isolates_quadratic_roots() {
        // 19 g^2 - 94 g + 11 on (0, 10): two roots near 0.1199 and 4.8271
        let p = mp(&[(11, 1), (-94, 1), (19, 1)]);
        let roots = sturm_real_roots(&p, &rat(0, 1), &rat(10, 1)).unwrap();
        assert_eq!(roots.len(), 2);
        let r0 = refine_root(&roots[0], &rat(1, 100_000)).unwrap();
        let r1 = refine_root(&roots[1], &rat(1, 100_000)).unwrap();
        // exact roots are (47 -+ 20*sqrt(5))/19
        let lo_expect = rat_from_parts(0.11994);
        let hi_expect = rat_from_parts(4.82742);
        assert!(r0.contains(&lo_expect) || (r0.midpoint() - lo_expect).abs() < rat(1, 1000));
        assert!(r1.contains(&hi_expect) || (r1.midpoint() - hi_expect).abs() < rat(1, 1000));
    }

    fn rat_from_parts(x: f64) -> RatNum {
        crate::algebra::ratnum::rat_from_decimal_str(&format!("{x}")).unwrap()
    }

    #[test]
    fn no_real_roots_gives_empty() {
        let p = mp(&[(1, 1), (0, 1), (1, 1)]); // x^2 + 1
        assert!(sturm_real_roots(&p, &rat(-10, 1), &rat(10, 1))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn repeated_root_reports_multiplicity() {
        // (x-1)^3 on (0, 2)
        let p = mp(&[(-1, 1), (3, 1), (-3, 1), (1, 1)]);
        let roots = sturm_real_roots(&p, &rat(0, 1), &rat(2, 1)).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].multiplicity, 3);
        let refined = refine_root(&roots[0], &rat(1, 1_000_000)).unwrap();
        assert!(refined.contains(&rat(1, 1)));
    }

    #[test]
    fn endpoint_semantics_half_open() {
        // roots at 1 and 2; (1, 2] must report only 2
        let p = mp(&[(2, 1), (-3, 1), (1, 1)]); // (x-1)(x-2)
        let roots = sturm_real_roots(&p, &rat(1, 1), &rat(2, 1)).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(roots[0].contains(&rat(2, 1)));
        // (0, 3] reports both
        let both = sturm_real_roots(&p, &rat(0, 1), &rat(3, 1)).unwrap();
        assert_eq!(both.len(), 2);
    }

    #[test]
    fn close_roots_end_up_disjoint() {
        // roots at 1/1000 and 1/999 are close; intervals must not overlap
        let a = mp(&[(-1, 1000), (1, 1)]);
        let b = mp(&[(-1, 999), (1, 1)]);
        let p = a.mul(&b);
        let roots = sturm_real_roots(&p, &rat(0, 1), &rat(1, 1)).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].high < roots[1].low);
    }

    #[test]
    fn cross_factor_overlaps_resolved() {
        // (x - 1) * (x - 1001/1000)^2: two Yun factors with nearby roots,
        // isolated independently, then separated
        let f1 = mp(&[(-1, 1), (1, 1)]);
        let f2 = mp(&[(1001, 1000), (-1, 1)]);
        let p = f1.mul(&f2).mul(&f2);
        let roots = sturm_real_roots(&p, &rat(0, 1), &rat(2, 1)).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].high < roots[1].low);
        assert_eq!(roots[0].multiplicity, 1);
        assert_eq!(roots[1].multiplicity, 2);
        assert!(roots[0].contains(&rat(1, 1)));
        assert!(roots[1].contains(&rat(1001, 1000)));
    }

    #[test]
    fn refinement_tightens_and_keeps_root() {
        let p = mp(&[(-4, 3), (1, 1)]); // x - 4/3
        let roots = sturm_real_roots(&p, &rat(0, 1), &rat(2, 1)).unwrap();
        assert_eq!(roots.len(), 1);
        let tol = RatNum::new(1.into(), num::BigInt::from(10).pow(30));
        let r = refine_root(&roots[0], &tol).unwrap();
        assert!(r.width() <= tol);
        assert!(r.contains(&rat(4, 3)));
    }

    #[test]
    fn rejects_constant_and_bad_interval() {
        let c = MPoly::constant(&["x"], rat(5, 1));
        assert!(sturm_real_roots(&c, &rat(0, 1), &rat(1, 1)).is_err());
        let p = mp(&[(0, 1), (1, 1)]);
        assert!(sturm_real_roots(&p, &rat(1, 1), &rat(0, 1)).is_err());
        let z = MPoly::zero(&["x"]);
        assert!(sturm_real_roots(&z, &rat(0, 1), &rat(1, 1)).is_err());
    }

    #[test]
    fn sign_change_counts_match_dense_sampling() {
        // property-style check at fixed seeds kept cheap here; the heavier
        // randomized version lives in the integration suite
        let polys = [
            vec![(-6, 1), (11, 1), (-6, 1), (1, 1)], // (x-1)(x-2)(x-3)
            vec![(0, 1), (-1, 1), (0, 1), (1, 1)],   // x(x^2 - 1)
            vec![(1, 1), (5, 1), (1, 1)],
        ];
        for cs in polys {
            let p = mp(&cs);
            let roots = sturm_real_roots(&p, &rat(-10, 1), &rat(10, 1)).unwrap();
            let mut sign_changes = 0;
            let (_, coeffs) = p.as_univariate().unwrap();
            let u = UPoly::new(coeffs);
            let mut last = 0;
            for k in 0..=2000 {
                let x = rat(-10, 1) + rat(k, 100);
                let s = rat_sign(&u.eval(&x));
                if s != 0 {
                    if last != 0 && s != last {
                        sign_changes += 1;
                    }
                    last = s;
                }
            }
            // distinct odd-multiplicity roots = sign changes; all our test
            // roots are simple
            assert_eq!(roots.len(), sign_changes);
        }
    }
}
