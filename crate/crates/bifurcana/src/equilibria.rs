//! Equilibrium location, linear classification, and the closed-form
//! stability regions of the two predator-prey models.
//!
//! Locating equilibria is exact elimination: clear denominators, take a
//! Sylvester resultant of the two nullcline numerators, isolate real roots
//! with Sturm sequences, and certify every candidate pair against both
//! right-hand sides before it is classified. Floats never enter until the
//! final eigenvalue report.

use num::{BigInt, One, Signed, Zero};

use crate::algebra::{
    real_roots, rat, sylvester_resultant, BigFloat, MPoly, QuadExt, RatNum, DEFAULT_PREC,
};
use crate::dynsys::{BuiltinSystem, ParamPoint, PlanarSystem, Scalar};
use crate::error::{Error, Result};

/// Residual gate for accepting a point as an equilibrium: |rhs| < 10^-20.
const RESIDUAL_DIGITS: u32 = 20;

/// Classification ties: |trace| or |det| below 10^-20 cannot be resolved
/// and are reported as the degenerate kinds instead of guessing a sign.
const TIE_DIGITS: u32 = 20;

/// Internal refinement width for located roots. The public contract is
/// 10^-30; the extra margin keeps residuals far below the acceptance gate.
const LOCATION_DIGITS: u32 = 40;

fn neg_pow10(digits: u32) -> RatNum {
    RatNum::new(BigInt::one(), BigInt::from(10).pow(digits))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EquilibriumKind {
    Saddle,
    StableNode,
    UnstableNode,
    StableFocus,
    UnstableFocus,
    CenterCandidate,
    Degenerate,
}

impl EquilibriumKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            EquilibriumKind::Saddle => "saddle",
            EquilibriumKind::StableNode => "stable_node",
            EquilibriumKind::UnstableNode => "unstable_node",
            EquilibriumKind::StableFocus => "stable_focus",
            EquilibriumKind::UnstableFocus => "unstable_focus",
            EquilibriumKind::CenterCandidate => "center_candidate",
            EquilibriumKind::Degenerate => "degenerate",
        }
    }

    /// Both eigenvalues have negative real part.
    pub fn is_attracting(&self) -> bool {
        matches!(self, EquilibriumKind::StableNode | EquilibriumKind::StableFocus)
    }
}

impl std::fmt::Display for EquilibriumKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One eigenvalue as a rectangular pair of dyadic floats.
#[derive(Clone, Debug)]
pub struct ComplexBig {
    pub re: BigFloat,
    pub im: BigFloat,
}

#[derive(Clone, Debug)]
pub struct Equilibrium {
    pub location: [Scalar; 2],
    pub jacobian: [[BigFloat; 2]; 2],
    pub trace: BigFloat,
    pub det: BigFloat,
    /// Ascending real part for a real pair; conjugates with the positive
    /// imaginary part second otherwise.
    pub eigenvalues: [ComplexBig; 2],
    pub kind: EquilibriumKind,
}

/// Everything solve_equilibria learned besides the equilibria themselves.
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub equilibria: Vec<Equilibrium>,
    /// Degree of the univariate eliminant whose roots located the first
    /// coordinate (zero when elimination was not needed).
    pub eliminant_degree: u32,
    /// Degree drops, multiple eliminant roots, discarded pole candidates.
    pub notes: Vec<String>,
}

/// Outcome of the closed-form stability test at the interior equilibrium.
#[derive(Clone, Debug)]
pub struct StabilityReport {
    pub stable: bool,
    pub case_label: &'static str,
    /// The inequality that decided the verdict, with its exact value.
    pub witness: String,
    pub trace: RatNum,
    pub det: RatNum,
    /// The cubic g^3 - 3 X2 g^2 + 2 X2^2 g - X2^2 whose sign separates the
    /// stabilizable band of g from the rest (first model only).
    pub f3: Option<RatNum>,
}

// ---------------------------------------------------------------------------
// classification

fn scalar_abs_below(s: &Scalar, digits: u32) -> bool {
    match s {
        Scalar::Rat(r) => r.abs() < neg_pow10(digits),
        Scalar::Big(b) => b.abs_below_pow10(-(digits as i64)),
    }
}

fn working_prec(state: &[Scalar; 2], params: &ParamPoint) -> u32 {
    let mut prec = DEFAULT_PREC;
    for s in state {
        if let Some(p) = s.float_precision() {
            prec = prec.max(p);
        }
    }
    for (_, s) in params.iter() {
        if let Some(p) = s.float_precision() {
            prec = prec.max(p);
        }
    }
    prec
}

/// Sign chart on (trace, det, discriminant). `zero_tie` marks values whose
/// magnitude fell below the tie threshold.
fn kind_from_signs(det_sign: i32, det_tie: bool, tr_sign: i32, tr_tie: bool, disc_nonneg: bool) -> EquilibriumKind {
    if det_tie {
        return EquilibriumKind::Degenerate;
    }
    if det_sign < 0 {
        return EquilibriumKind::Saddle;
    }
    if tr_tie {
        return EquilibriumKind::CenterCandidate;
    }
    match (tr_sign < 0, disc_nonneg) {
        (true, true) => EquilibriumKind::StableNode,
        (true, false) => EquilibriumKind::StableFocus,
        (false, true) => EquilibriumKind::UnstableNode,
        (false, false) => EquilibriumKind::UnstableFocus,
    }
}

fn eigenvalues_from(trace: &BigFloat, disc: &BigFloat, prec: u32) -> Result<[ComplexBig; 2]> {
    let two = BigFloat::from_i64(2, prec);
    let half_tr = trace.div_ref(&two);
    let zero = BigFloat::zero(prec);
    if disc.is_negative() {
        let w = disc.neg_ref().sqrt()?.div_ref(&two);
        Ok([
            ComplexBig { re: half_tr.clone(), im: w.neg_ref() },
            ComplexBig { re: half_tr, im: w },
        ])
    } else {
        let s = disc.sqrt()?.div_ref(&two);
        Ok([
            ComplexBig { re: half_tr.sub_ref(&s), im: zero.clone() },
            ComplexBig { re: half_tr.add_ref(&s), im: zero },
        ])
    }
}

/// Classifies a verified equilibrium of `sys`. The point must satisfy
/// |rhs| < 10^-20 in every component or the call is rejected with the
/// offending residual, so stale coordinates cannot silently misclassify.
pub fn classify_equilibrium(
    sys: &PlanarSystem,
    params: &ParamPoint,
    point: &[Scalar; 2],
) -> Result<Equilibrium> {
    let rhs = sys.rhs_eval(point, params)?;
    let prec = working_prec(point, params);
    for (i, v) in rhs.iter().enumerate() {
        if !scalar_abs_below(v, RESIDUAL_DIGITS) {
            return Err(Error::InvalidArgument(format!(
                "point is not an equilibrium: component {} has residual {}",
                i,
                v.to_bigfloat(prec).to_decimal_string(6)
            )));
        }
    }

    let j = sys.jacobian_eval(point, params)?;
    let all_rational = j.iter().flatten().all(Scalar::is_rational);

    let jacobian = [
        [j[0][0].to_bigfloat(prec), j[0][1].to_bigfloat(prec)],
        [j[1][0].to_bigfloat(prec), j[1][1].to_bigfloat(prec)],
    ];

    let (trace, det, disc, kind);
    if all_rational {
        let r = |a: usize, b: usize| j[a][b].as_rat().expect("checked rational");
        let tr_r = r(0, 0) + r(1, 1);
        let det_r = r(0, 0) * r(1, 1) - r(0, 1) * r(1, 0);
        let disc_r = &tr_r * &tr_r - rat(4, 1) * &det_r;
        let tie = neg_pow10(TIE_DIGITS);
        kind = kind_from_signs(
            rat_signum(&det_r),
            det_r.abs() < tie,
            rat_signum(&tr_r),
            tr_r.abs() < tie,
            !disc_r.is_negative(),
        );
        trace = BigFloat::from_rat(&tr_r, prec);
        det = BigFloat::from_rat(&det_r, prec);
        disc = BigFloat::from_rat(&disc_r, prec);
    } else {
        trace = jacobian[0][0].add_ref(&jacobian[1][1]);
        det = jacobian[0][0]
            .mul_ref(&jacobian[1][1])
            .sub_ref(&jacobian[0][1].mul_ref(&jacobian[1][0]));
        disc = trace.mul_ref(&trace).sub_ref(&BigFloat::from_i64(4, prec).mul_ref(&det));
        kind = kind_from_signs(
            det.signum(),
            det.abs_below_pow10(-(TIE_DIGITS as i64)),
            trace.signum(),
            trace.abs_below_pow10(-(TIE_DIGITS as i64)),
            !disc.is_negative(),
        );
    }

    let eigenvalues = eigenvalues_from(&trace, &disc, prec)?;
    Ok(Equilibrium {
        location: point.clone(),
        jacobian,
        trace,
        det,
        eigenvalues,
        kind,
    })
}

fn rat_signum(r: &RatNum) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

// ---------------------------------------------------------------------------
// location by elimination

/// All equilibria of `sys` at an exact parameter point, each coordinate
/// within 10^-30 of the true value (exact when the root is rational and the
/// bisection lands on it). By default only the closed nonnegative quadrant
/// is reported, matching the population models; `restrict_nonneg = false`
/// lifts that for systems whose phase variables are signed.
///
/// Float parameters are honored at their exact dyadic value. Points where a
/// denominator of the original vector field vanishes are candidates of the
/// cleared polynomial system only; they are discarded with a note.
pub fn solve_equilibria(
    sys: &PlanarSystem,
    params: &ParamPoint,
    restrict_nonneg: bool,
) -> Result<SolveReport> {
    params.covers(sys)?;
    let mut exact = ParamPoint::new();
    for (name, v) in params.iter() {
        let r = match v {
            Scalar::Rat(r) => r.clone(),
            Scalar::Big(b) => b.to_rat(),
        };
        exact.set_rat(name, r);
    }

    let local = sys.specialized(&exact)?;
    let cleared = local.polynomialized()?;
    let nx = cleared.rhs_x.num.clone();
    let ny = cleared.rhs_y.num.clone();
    if nx.is_zero() || ny.is_zero() {
        return Err(Error::DegenerateInput(
            "a right-hand side vanishes identically at these parameters; equilibria are not isolated"
                .into(),
        ));
    }

    let xv = sys.state_vars[0].clone();
    let yv = sys.state_vars[1].clone();
    let mut notes = Vec::new();

    // Degree drops against the generic parameter values signal that the
    // elimination below runs on a reduced case.
    let generic = sys.polynomialized()?;
    for (label, gnum, snum) in [
        ("prey nullcline", &generic.rhs_x.num, &nx),
        ("predator nullcline", &generic.rhs_y.num, &ny),
    ] {
        for v in [&xv, &yv] {
            let gd = gnum.degree_in(v)?;
            let sd = snum.degree_in(v)?;
            if sd < gd {
                notes.push(format!(
                    "{label}: degree in {v} dropped from {gd} to {sd} at these parameters"
                ));
            }
        }
    }

    let tol = neg_pow10(LOCATION_DIGITS);
    let dx_y = nx.degree_in(&yv)?;
    let dy_y = ny.degree_in(&yv)?;

    let mut pairs: Vec<(RatNum, RatNum)> = Vec::new();
    let eliminant_degree;

    if dx_y >= 1 && dy_y >= 1 {
        let r = sylvester_resultant(&nx, &ny, &yv)?;
        if r.is_zero() {
            return Err(Error::DegenerateInput(
                "the nullclines share a component; equilibria are not isolated".into(),
            ));
        }
        eliminant_degree = r.degree_in(&xv)?;
        if !r.is_constant() {
            for (x0, mult) in real_roots(&r, &tol)? {
                if mult > 1 {
                    notes.push(format!(
                        "eliminant root near {} has multiplicity {mult}",
                        approx(&x0)
                    ));
                }
                collect_second_coordinate(&nx, &ny, &xv, &yv, &x0, &tol, &mut pairs, &mut notes)?;
            }
        }
    } else if dx_y == 0 && dy_y == 0 {
        // Neither numerator constrains the second coordinate. A common root
        // of the first coordinate would be a whole line of equilibria.
        eliminant_degree = 0;
        if !nx.is_constant() && !ny.is_constant() {
            let r = sylvester_resultant(&nx, &ny, &xv)?;
            if r.is_zero() {
                return Err(Error::DegenerateInput(
                    "the nullclines share a component; equilibria are not isolated".into(),
                ));
            }
        }
        // Otherwise a nonzero constant numerator admits no solutions at all.
    } else {
        // Exactly one numerator is free of the second coordinate: it pins
        // the first coordinate directly and the other one pins the second.
        let free = if dx_y == 0 { &nx } else { &ny };
        if free.is_constant() {
            eliminant_degree = 0;
        } else {
            eliminant_degree = free.degree_in(&xv)?;
            for (x0, mult) in real_roots(free, &tol)? {
                if mult > 1 {
                    notes.push(format!(
                        "eliminant root near {} has multiplicity {mult}",
                        approx(&x0)
                    ));
                }
                collect_second_coordinate(&nx, &ny, &xv, &yv, &x0, &tol, &mut pairs, &mut notes)?;
            }
        }
    }

    if restrict_nonneg {
        // Slack one hundred thousand times wider than the location error so
        // roots that are exactly zero survive their bisection noise.
        let slack = -neg_pow10(LOCATION_DIGITS - 5);
        pairs.retain(|(x0, y0)| x0 >= &slack && y0 >= &slack);
    }
    pairs.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));

    let empty = ParamPoint::new();
    let mut equilibria = Vec::new();
    for (x0, y0) in pairs {
        let point = [Scalar::Rat(x0.clone()), Scalar::Rat(y0.clone())];
        match classify_equilibrium(&local, &empty, &point) {
            Ok(eq) => equilibria.push(eq),
            // The pair solves the cleared polynomial system but not the
            // original vector field: a denominator vanishes there.
            Err(Error::SingularEvaluation(_)) | Err(Error::InvalidArgument(_)) => {
                notes.push(format!(
                    "discarded candidate ({}, {}): not an equilibrium of the original system",
                    approx(&x0),
                    approx(&y0)
                ));
            }
            Err(e) => return Err(e),
        }
    }

    Ok(SolveReport {
        equilibria,
        eliminant_degree,
        notes,
    })
}

fn approx(r: &RatNum) -> String {
    BigFloat::from_rat(r, 64).to_decimal_string(6)
}

/// Given an isolated first coordinate, finds every second coordinate that
/// satisfies both numerators to the residual gate and appends the pairs.
#[allow(clippy::too_many_arguments)]
fn collect_second_coordinate(
    nx: &MPoly,
    ny: &MPoly,
    xv: &str,
    yv: &str,
    x0: &RatNum,
    tol: &RatNum,
    out: &mut Vec<(RatNum, RatNum)>,
    notes: &mut Vec<String>,
) -> Result<()> {
    let px = nx.subst_rat(xv, x0)?;
    let py = ny.subst_rat(xv, x0)?;
    let deg = |p: &MPoly| -> Result<Option<u32>> {
        if p.is_zero() {
            Ok(None)
        } else {
            Ok(Some(p.degree_in(yv)?))
        }
    };
    let src = match (deg(&px)?, deg(&py)?) {
        (None, None) => {
            return Err(Error::DegenerateInput(format!(
                "both nullclines vanish identically on {xv} = {}; equilibria are not isolated",
                approx(x0)
            )))
        }
        // A nonzero constant section admits no root, so this eliminant root
        // came from a vanishing leading coefficient; nothing to collect.
        (Some(0), _) | (_, Some(0)) => return Ok(()),
        (Some(_), _) => &px,
        (None, Some(_)) => &py,
    };

    let gate = neg_pow10(RESIDUAL_DIGITS);
    for (y0, _) in real_roots(src, tol)? {
        let vals = ordered_pair_values(nx, xv, yv, x0, &y0);
        let r1 = nx.eval_rat(&vals);
        let vals2 = ordered_pair_values(ny, xv, yv, x0, &y0);
        let r2 = ny.eval_rat(&vals2);
        if r1.abs() < gate && r2.abs() < gate {
            out.push((x0.clone(), y0.clone()));
        } else {
            notes.push(format!(
                "rejected pairing ({}, {}): residual {} on the complementary nullcline",
                approx(x0),
                approx(&y0),
                approx(&if r1.abs() > r2.abs() { r1 } else { r2 })
            ));
        }
    }
    Ok(())
}

/// Positional values for a two-variable polynomial whose list may carry
/// degree-zero leftovers in either order.
fn ordered_pair_values(p: &MPoly, xv: &str, yv: &str, x0: &RatNum, y0: &RatNum) -> Vec<RatNum> {
    p.vars()
        .iter()
        .map(|v| {
            if v == xv {
                x0.clone()
            } else if v == yv {
                y0.clone()
            } else {
                RatNum::zero()
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// parameter hierarchy

fn lookup<'a>(params: &'a [(&str, QuadExt)], name: &str) -> Result<&'a QuadExt> {
    params
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, v)| v)
        .ok_or_else(|| Error::InvalidArgument(format!("missing parameter {name}")))
}

/// The parameter value that places the interior equilibrium exactly at the
/// prescribed prey level X2, evaluated in a quadratic extension so radical
/// loci stay exact. Returns n for the first model and g for the second.
pub fn hierarchical_param_exact(
    model: BuiltinSystem,
    x2: &QuadExt,
    params: &[(&str, QuadExt)],
) -> Result<QuadExt> {
    let one = QuadExt::rational(RatNum::one());
    match model {
        BuiltinSystem::Bazykin1 => {
            let g = lookup(params, "g")?;
            let e = lookup(params, "e")?;
            if g.is_zero() {
                return Err(Error::InvalidArgument(
                    "the hierarchy for bazykin1 divides by g, which is zero".into(),
                ));
            }
            // n = (1 - e X2)(X2 - g) / g
            let a = one.sub(&e.mul(x2)?)?;
            let b = x2.sub(g)?;
            a.mul(&b)?.div(g)
        }
        BuiltinSystem::Bazykin2 => {
            let a = lookup(params, "a")?;
            let d = lookup(params, "d")?;
            let e = lookup(params, "e")?;
            let u = one.add(&a.mul(x2)?)?;
            if u.is_zero() {
                return Err(Error::InvalidArgument(
                    "the hierarchy for bazykin2 divides by 1 + a X2, which is zero".into(),
                ));
            }
            // g = (X2 - d (1 - e X2)(1 + a X2)^2) / (1 + a X2)
            let w = one.sub(&e.mul(x2)?)?;
            let numer = x2.sub(&d.mul(&w)?.mul(&u.mul(&u)?)?)?;
            numer.div(&u)
        }
        other => Err(Error::InvalidArgument(format!(
            "no parameter hierarchy is defined for {other}"
        ))),
    }
}

/// Rational-input wrapper around [`hierarchical_param_exact`].
pub fn hierarchical_param(
    model: BuiltinSystem,
    x2: &RatNum,
    params: &ParamPoint,
) -> Result<RatNum> {
    let names: &[&str] = match model {
        BuiltinSystem::Bazykin1 => &["g", "e"],
        BuiltinSystem::Bazykin2 => &["a", "d", "e"],
        other => {
            return Err(Error::InvalidArgument(format!(
                "no parameter hierarchy is defined for {other}"
            )))
        }
    };
    let mut vals = Vec::new();
    for n in names {
        vals.push((*n, QuadExt::rational(params.require_rat(n)?.clone())));
    }
    let out = hierarchical_param_exact(model, &QuadExt::rational(x2.clone()), &vals)?;
    Ok(out
        .as_rational()
        .expect("rational inputs produce a rational hierarchy value")
        .clone())
}

/// Interior equilibrium (X2, Y2) of a model under its parameter hierarchy.
pub fn interior_point_exact(
    model: BuiltinSystem,
    x2: &QuadExt,
    params: &[(&str, QuadExt)],
) -> Result<[QuadExt; 2]> {
    let one = QuadExt::rational(RatNum::one());
    match model {
        BuiltinSystem::Bazykin1 => {
            let e = lookup(params, "e")?;
            let y2 = one.sub(&e.mul(x2)?)?;
            Ok([x2.clone(), y2])
        }
        BuiltinSystem::Bazykin2 => {
            let a = lookup(params, "a")?;
            let e = lookup(params, "e")?;
            let y2 = one.sub(&e.mul(x2)?)?.mul(&one.add(&a.mul(x2)?)?)?;
            Ok([x2.clone(), y2])
        }
        other => Err(Error::InvalidArgument(format!(
            "no interior equilibrium formula is defined for {other}"
        ))),
    }
}

/// Rational-input wrapper around [`interior_point_exact`].
pub fn interior_point(
    model: BuiltinSystem,
    x2: &RatNum,
    params: &ParamPoint,
) -> Result<[RatNum; 2]> {
    let names: &[&str] = match model {
        BuiltinSystem::Bazykin1 => &["e"],
        BuiltinSystem::Bazykin2 => &["a", "e"],
        other => {
            return Err(Error::InvalidArgument(format!(
                "no interior equilibrium formula is defined for {other}"
            )))
        }
    };
    let mut vals = Vec::new();
    for n in names {
        vals.push((*n, QuadExt::rational(params.require_rat(n)?.clone())));
    }
    let pt = interior_point_exact(model, &QuadExt::rational(x2.clone()), &vals)?;
    Ok([
        pt[0].as_rational().expect("rational input").clone(),
        pt[1].as_rational().expect("rational input").clone(),
    ])
}

// ---------------------------------------------------------------------------
// closed-form stability regions

/// Exact local stability of the interior equilibrium under the parameter
/// hierarchy, decided by the sign of the closed-form trace and determinant.
/// Existence failures are reported as `NotApplicable` naming the violated
/// condition; the witness string names the inequality that settled the
/// verdict.
pub fn stability_region_check(
    model: BuiltinSystem,
    x2: &RatNum,
    params: &ParamPoint,
) -> Result<StabilityReport> {
    match model {
        BuiltinSystem::Bazykin1 => stability_model1(x2, params),
        BuiltinSystem::Bazykin2 => stability_model2(x2, params),
        other => Err(Error::InvalidArgument(format!(
            "no stability region analysis is defined for {other}"
        ))),
    }
}

fn require_positive(name: &str, v: &RatNum) -> Result<()> {
    if v.is_positive() {
        Ok(())
    } else {
        Err(Error::NotApplicable(format!(
            "existence requires {name} > 0 (got {v})"
        )))
    }
}

fn stability_model1(x2: &RatNum, params: &ParamPoint) -> Result<StabilityReport> {
    let g = params.require_rat("g")?.clone();
    let e = params.require_rat("e")?.clone();
    require_positive("X2", x2)?;
    require_positive("g", &g)?;
    require_positive("e", &e)?;
    if &g >= x2 {
        return Err(Error::NotApplicable(format!(
            "existence requires g < X2 (got g = {g}, X2 = {x2})"
        )));
    }
    if &e * x2 >= RatNum::one() {
        return Err(Error::NotApplicable(format!(
            "existence requires e < 1/X2 (got e = {e}, 1/X2 = {})",
            RatNum::one() / x2
        )));
    }

    let trace = -((&e * x2 * x2 - &g * x2 + &g * &g) / x2);
    let det = &g * (RatNum::one() + &e * &g - rat(2, 1) * &e * x2);
    let f3 = &g * &g * &g - rat(3, 1) * x2 * &g * &g + rat(2, 1) * x2 * x2 * &g - x2 * x2;

    // Trace and determinant signs translate into a window on e.
    let lo = &g * (x2 - &g) / (x2 * x2);
    let hi = RatNum::one() / (rat(2, 1) * x2 - &g);

    let case_label = if rat(4, 1) * x2 * x2 <= rat(27, 1) {
        "every g in (0, X2) admits a stabilizing window of e"
    } else if f3.is_negative() {
        "g lies inside a stabilizing window"
    } else {
        "g lies in the band where no e stabilizes the equilibrium"
    };

    let stable = trace.is_negative() && det.is_positive();
    let witness = if stable {
        format!("g(X2-g)/X2^2 = {lo} < e < {hi} = 1/(2 X2 - g)")
    } else if !trace.is_negative() {
        if trace.is_zero() {
            format!("trace = 0: e equals g(X2-g)/X2^2 = {lo} (loss of hyperbolicity)")
        } else {
            format!("trace > 0: e = {e} < g(X2-g)/X2^2 = {lo}")
        }
    } else if det.is_zero() {
        format!("det = 0: e equals 1/(2 X2 - g) = {hi} (fold boundary)")
    } else {
        format!("det < 0: e = {e} > 1/(2 X2 - g) = {hi}")
    };

    Ok(StabilityReport {
        stable,
        case_label,
        witness,
        trace,
        det,
        f3: Some(f3),
    })
}

fn stability_model2(x2: &RatNum, params: &ParamPoint) -> Result<StabilityReport> {
    let a = params.require_rat("a")?.clone();
    let d = params.require_rat("d")?.clone();
    let e = params.require_rat("e")?.clone();
    require_positive("X2", x2)?;
    require_positive("a", &a)?;
    require_positive("d", &d)?;
    require_positive("e", &e)?;
    if &e * x2 >= RatNum::one() {
        return Err(Error::NotApplicable(format!(
            "existence requires X2 < 1/e (got X2 = {x2}, 1/e = {})",
            RatNum::one() / &e
        )));
    }
    let u = RatNum::one() + &a * x2; // 1 + a X2 > 0 here
    let w = RatNum::one() - &e * x2; // 1 - e X2 > 0 here
    let d_exist = x2 / (&w * &u * &u);
    if &d >= &d_exist {
        return Err(Error::NotApplicable(format!(
            "existence requires d < X2/((1 - e X2)(1 + a X2)^2) = {d_exist} (got d = {d})"
        )));
    }

    // s > 0 is the only regime where stability can be lost.
    let s = &a * (RatNum::one() - rat(2, 1) * &e * x2) - &e;
    let trace = (x2 * &s - &d * &w * &u * &u) / &u;
    let det = x2 * &w / (&u * &u) * (RatNum::one() - &d * &s * &u * &u);

    let two_e_x2 = rat(2, 1) * &e * x2;
    let (case_label, witness);
    if two_e_x2 >= RatNum::one() {
        case_label = "(a): X2 >= 1/(2e), stability is automatic";
        witness = format!("a(1 - 2 e X2) - e = {s} <= 0 forces trace < 0 and det > 0");
    } else if !s.is_positive() {
        case_label = "(b): a <= e/(1 - 2 e X2), stability is automatic";
        witness = format!("a(1 - 2 e X2) - e = {s} <= 0 forces trace < 0 and det > 0");
    } else {
        case_label = "(c): a > e/(1 - 2 e X2), stability depends on d";
        let d_lo = x2 * &s / (&w * &u * &u);
        let d_hi = RatNum::one() / (&s * &u * &u);
        witness = if &d <= &d_lo {
            if &d == &d_lo {
                format!("trace = 0: d equals X2 s/((1-e X2)(1+a X2)^2) = {d_lo} (loss of hyperbolicity)")
            } else {
                format!("trace > 0: d = {d} < X2 s/((1-e X2)(1+a X2)^2) = {d_lo}")
            }
        } else if &d >= &d_hi {
            if &d == &d_hi {
                format!("det = 0: d equals 1/(s (1+a X2)^2) = {d_hi} (fold boundary)")
            } else {
                format!("det < 0: d = {d} > 1/(s (1+a X2)^2) = {d_hi}")
            }
        } else {
            format!("{d_lo} = X2 s/((1-e X2)(1+a X2)^2) < d < 1/(s (1+a X2)^2) = {d_hi}")
        };
    }

    let stable = trace.is_negative() && det.is_positive();
    Ok(StabilityReport {
        stable,
        case_label,
        witness,
        trace,
        det,
        f3: None,
    })
}
