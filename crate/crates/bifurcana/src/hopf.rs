//! Hopf-point location, transformation to unit-frequency Hopf coordinates,
//! focus values, transversality, and amplitude prediction.
//!
//! Two conventions coexist here and the [`FvConvention`] tag keeps them
//! apart. The recursion engine works on a system already in Hopf
//! coordinates x1' = x2 + P, x2' = -x1 + Q and produces the coefficients
//! eta_k of r^(2k+1) in the radial normal form of *that* frame. The
//! closed-form evaluators reproduce the source analysis, whose focus values
//! carry one extra factor of omega from the time rescaling that builds the
//! frame: v_k = omega * eta_k. Both conventions share zero sets and signs
//! because omega > 0, so certificates may mix them; printed magnitudes are
//! matched by the closed forms and by omega-scaled engine values only.
//!
//! A Hopf frame is stored symbolically: a [`PlanarSystem`] in state
//! variables (x1, x2) whose parameters are the chart of the hierarchy
//! ((g, X2) for the first model, (e, a, X2) for the second) plus the
//! frequency w. Every even power of w is eliminated against w² = det(J)
//! during construction, so the linear part is exactly (x2, -x1) as a
//! rational-function identity, independent of the numeric value bound to w.
//! Coefficients are degree <= 1 in w with w-free denominators, which is
//! what lets the engine run exactly in Q(sqrt(det)) at rational chart
//! points.

use num::{One, Signed, Zero};

use crate::algebra::{rat, BigFloat, MPoly, QuadExt, RatNum, DEFAULT_PREC};
use crate::dynsys::{
    builtin_system, BuiltinSystem, ParamPoint, PlanarSystem, RatFunc, Scalar,
};
use crate::error::{Error, Result};

// ---------------------------------------------------------------------------
// domain types

/// Which normalization a set of focus values carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FvConvention {
    /// Printed closed forms; v_k includes the omega factor of the frame's
    /// time rescaling.
    ClosedForm,
    /// Raw recursion output of the unit-frequency frame (coefficient of
    /// r^(2k+1)); same zero sets and signs, magnitudes differ by omega.
    NumericEngine,
}

/// Focus values at a Hopf point, reported at working precision.
///
/// `v0` is the transversality coefficient (derivative of the eigenvalue
/// real part in the unfolding direction); `v1..v3` grade the cyclicity.
/// Entries beyond the computed order are zero.
#[derive(Clone, Debug)]
pub struct FocusValues {
    pub omega: BigFloat,
    pub v0: BigFloat,
    pub v1: BigFloat,
    pub v2: BigFloat,
    pub v3: BigFloat,
    pub convention: FvConvention,
}

/// One admissibility inequality with its margin: positive margin means
/// satisfied, and the magnitude says by how much.
#[derive(Clone, Debug)]
pub struct ConditionCheck {
    pub condition: String,
    pub margin: BigFloat,
    pub satisfied: bool,
}

impl ConditionCheck {
    fn new(condition: &str, margin: BigFloat) -> Self {
        let satisfied = margin.is_positive();
        ConditionCheck {
            condition: condition.to_string(),
            margin,
            satisfied,
        }
    }
}

/// An admissible Hopf point of a built-in model.
///
/// `params` is the full parameter assignment of the original model with the
/// companion (n or d) filled in from the hierarchy, so the point can be fed
/// back to any operation on the untransformed system.
#[derive(Clone, Debug)]
pub struct HopfPoint {
    pub model: BuiltinSystem,
    pub x2: BigFloat,
    pub companion_name: &'static str,
    pub companion: BigFloat,
    /// Linearization frequency of the polynomialized field: omega² = det of
    /// its Jacobian at the equilibrium.
    pub omega: BigFloat,
    pub params: ParamPoint,
    pub admissibility: Vec<ConditionCheck>,
}

/// A candidate that failed admissibility, with the full witness vector.
#[derive(Clone, Debug)]
pub struct RejectedCandidate {
    pub label: String,
    pub checks: Vec<ConditionCheck>,
}

/// Result of a Hopf-point search: admissible points plus every rejected
/// candidate with its violated inequalities.
#[derive(Clone, Debug)]
pub struct HopfCandidates {
    pub points: Vec<HopfPoint>,
    pub rejected: Vec<RejectedCandidate>,
}

impl HopfCandidates {
    /// The violated inequality closest to holding, across all rejected
    /// candidates. `None` when nothing was rejected.
    pub fn nearest_violation(&self) -> Option<&ConditionCheck> {
        self.rejected
            .iter()
            .flat_map(|r| r.checks.iter())
            .filter(|c| !c.satisfied)
            .min_by(|a, b| a.margin.abs().cmp_ref(&b.margin.abs()))
    }
}

/// Closed-form family selector for [`focus_values_closed_form`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FocusChart {
    /// First model over its native (g, e) plane; focus values evaluate on
    /// the smaller trace root X2 = (g/2e)(1 - sqrt(1-4e)).
    Model1ParamPlane,
    /// First model over the hierarchy chart (g, X2), e and n eliminated.
    Model1Hierarchy,
    /// Second model over its hierarchy chart (e, a, X2).
    Model2Hierarchy,
}

/// Transversality derivative with a degeneracy marker for the exact-zero
/// case.
#[derive(Clone, Debug)]
pub struct Transversality {
    pub value: BigFloat,
    pub degenerate: bool,
}

// ---------------------------------------------------------------------------
// small rational-function helpers

fn rf_pow(rf: &RatFunc, n: u32) -> RatFunc {
    RatFunc::new(rf.num.pow(n), rf.den.pow(n)).expect("nonzero denominator power")
}

fn rf_div(a: &RatFunc, b: &RatFunc) -> Result<RatFunc> {
    if b.num.is_zero() {
        return Err(Error::InvalidArgument(
            "division by the zero rational function".into(),
        ));
    }
    Ok(a.mul(&RatFunc::new(b.den.clone(), b.num.clone())?))
}

/// Coefficient of x1^dx x2^dy as a rational function of the remaining
/// variables. Requires a state-free denominator.
fn coeff_of_state_monomial(rf: &RatFunc, states: [&str; 2], dx: u32, dy: u32) -> Result<RatFunc> {
    if rf.den.degree_in(states[0])? != 0 || rf.den.degree_in(states[1])? != 0 {
        return Err(Error::Internal(
            "state-dependent denominator in a Hopf frame".into(),
        ));
    }
    let ix = rf.num.var_index(states[0])?;
    let iy = rf.num.var_index(states[1])?;
    let vars: Vec<&str> = rf.num.vars().iter().map(|s| s.as_str()).collect();
    let mut terms = Vec::new();
    for (exps, c) in rf.num.terms() {
        if exps[ix] == dx && exps[iy] == dy {
            let mut e = exps.to_vec();
            e[ix] = 0;
            e[iy] = 0;
            terms.push((e, c.clone()));
        }
    }
    RatFunc::new(MPoly::from_terms(&vars, terms), rf.den.clone())
}

/// Splits a polynomial in w as p = even(w²) + w·odd(w²) and substitutes
/// w² -> wsq, returning the two w-free rational functions.
fn split_even_odd_w(p: &MPoly, wsq: &RatFunc) -> Result<(RatFunc, RatFunc)> {
    let coeffs = p.coeffs_in("w")?;
    let vars: Vec<&str> = p.vars().iter().map(|s| s.as_str()).collect();
    let mut even = RatFunc::poly(MPoly::zero(&vars));
    let mut odd = even.clone();
    for (m, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let t = RatFunc::poly(c.clone()).mul(&rf_pow(wsq, (m / 2) as u32));
        if m % 2 == 0 {
            even = even.add(&t);
        } else {
            odd = odd.add(&t);
        }
    }
    Ok((even, odd))
}

/// Eliminates every even power of w against w² = wsq and rationalizes the
/// denominator, leaving w of degree <= 1 in the numerator and absent from
/// the denominator.
fn reduce_w(rf: &RatFunc, wsq: &RatFunc, w: &RatFunc) -> Result<RatFunc> {
    let (n0, n1) = split_even_odd_w(&rf.num, wsq)?;
    let (d0, d1) = split_even_odd_w(&rf.den, wsq)?;
    // (n0 + n1 w)/(d0 + d1 w) times the conjugate (d0 - d1 w)
    let denom = d0.mul(&d0).sub(&d1.mul(&d1).mul(wsq));
    let a = n0.mul(&d0).sub(&n1.mul(&d1).mul(wsq));
    let b = n1.mul(&d0).sub(&n0.mul(&d1));
    rf_div(&a.add(&b.mul(w)), &denom)
}

// ---------------------------------------------------------------------------
// symbolic Hopf frames

fn validate_unit_rotation(sys: &PlanarSystem) -> Result<()> {
    let states = [sys.state_vars[0].as_str(), sys.state_vars[1].as_str()];
    let expect = |rf: &RatFunc, dx: u32, dy: u32, want: i64| -> Result<()> {
        let c = coeff_of_state_monomial(rf, states, dx, dy)?;
        let vars: Vec<&str> = c.num.vars().iter().map(|s| s.as_str()).collect();
        let target = RatFunc::poly(MPoly::constant(&vars, rat(want, 1)));
        if c.equivalent(&target) {
            Ok(())
        } else {
            Err(Error::Internal(format!(
                "Hopf frame linear part: coefficient of {}^{dx} {}^{dy} is {c}, expected {want}",
                states[0], states[1]
            )))
        }
    };
    expect(&sys.rhs_x, 0, 0, 0)?;
    expect(&sys.rhs_x, 1, 0, 0)?;
    expect(&sys.rhs_x, 0, 1, 1)?;
    expect(&sys.rhs_y, 0, 0, 0)?;
    expect(&sys.rhs_y, 1, 0, -1)?;
    expect(&sys.rhs_y, 0, 1, 0)?;
    Ok(())
}

/// Frame plus the closed form of w² over the chart parameters.
struct FrameParts {
    sys: PlanarSystem,
    omega_sq: RatFunc,
    chart: &'static [&'static str],
}

fn model1_frame_parts() -> Result<FrameParts> {
    let vars = ["x1", "x2", "g", "X2", "w"];
    let v = |name: &str| MPoly::var(&vars, name).expect("var in list");
    let one = MPoly::one(&vars);
    let (x1, x2, g, xx, w) = (v("x1"), v("x2"), v("g"), v("X2"), v("w"));

    // hierarchy: e and n are pinned by placing the equilibrium at X2
    let e = RatFunc::new(g.mul(&xx.sub(&g)), xx.pow(2))?;
    let y2 = RatFunc::poly(one.clone()).sub(&e.mul(&RatFunc::poly(xx.clone())));
    let n = y2.mul(&RatFunc::new(xx.sub(&g), g.clone())?);

    // shear onto the eigenbasis of the (n+Y)-multiplied Jacobian
    let m21 = RatFunc::new(g.mul(&g.sub(&xx)), xx.pow(2))?;
    let m22 = RatFunc::new(
        g.mul(&w).neg(),
        xx.mul(&one.sub(&g).mul(&xx).add(&g.pow(2))),
    )?;

    let xs = RatFunc::poly(xx.add(&x1));
    let ys = y2
        .add(&m21.mul(&RatFunc::poly(x1.clone())))
        .add(&m22.mul(&RatFunc::poly(x2.clone())));

    // field multiplied by (n+Y): X(1-Y-eX)(n+Y), Y(XY - g(n+Y))
    let n_plus_y = n.add(&ys);
    let f1 = xs
        .mul(&RatFunc::poly(one.clone()).sub(&ys).sub(&e.mul(&xs)))
        .mul(&n_plus_y);
    let f2 = ys.mul(&xs.mul(&ys).sub(&RatFunc::poly(g.clone()).mul(&n_plus_y)));

    // w² = det of the multiplied Jacobian: (n+Y2)² g F4 / X2²
    let f4 = one
        .sub(&g.scale(&rat(2, 1)))
        .mul(&xx.pow(2))
        .add(&g.pow(2).mul(&xx).scale(&rat(3, 1)))
        .sub(&g.pow(3));
    let s = n.add(&y2);
    let omega_sq = s.mul(&s).mul(&RatFunc::new(g.mul(&f4), xx.pow(2))?);

    let w_rf = RatFunc::poly(w.clone());
    let u1 = reduce_w(&rf_div(&f1, &w_rf)?, &omega_sq, &w_rf)?;
    let u2 = reduce_w(
        &rf_div(&f2.sub(&m21.mul(&f1)), &m22.mul(&w_rf))?,
        &omega_sq,
        &w_rf,
    )?;

    let sys = PlanarSystem::new(
        "bazykin1_hopf_frame",
        ["x1", "x2"],
        &["g", "X2", "w"],
        u1,
        u2,
    )?;
    validate_unit_rotation(&sys)?;
    Ok(FrameParts {
        sys,
        omega_sq,
        chart: &["g", "X2"],
    })
}

fn model2_frame_parts() -> Result<FrameParts> {
    let vars = ["x1", "x2", "e", "a", "X2", "w"];
    let v = |name: &str| MPoly::var(&vars, name).expect("var in list");
    let one = MPoly::one(&vars);
    let (x1, x2, e, a, xx, w) = (v("x1"), v("x2"), v("e"), v("a"), v("X2"), v("w"));

    let sat2 = one.add(&a.mul(&xx));
    let y2p = one.sub(&e.mul(&xx)).mul(&sat2);
    // trace root in d and the matching g from the predator nullcline
    let m21p = a.mul(&one.sub(&e.mul(&xx).scale(&rat(2, 1)))).sub(&e);
    let d_h = RatFunc::new(
        xx.mul(&m21p),
        one.sub(&e.mul(&xx)).mul(&sat2.pow(2)),
    )?;
    let g_h = RatFunc::new(xx.mul(&one.add(&e).sub(&m21p)), sat2.clone())?;

    let m21 = RatFunc::poly(m21p.clone());
    let m22 = RatFunc::new(w.neg(), xx.clone())?;

    let xs = RatFunc::poly(xx.add(&x1));
    let ys = RatFunc::poly(y2p.clone())
        .add(&m21.mul(&RatFunc::poly(x1.clone())))
        .add(&m22.mul(&RatFunc::poly(x2.clone())));

    // field multiplied by (1+aX): X((1-eX)(1+aX) - Y), Y(X - (g+dY)(1+aX))
    let sat = RatFunc::poly(one.add(&a.mul(&xx.add(&x1))));
    let f1 = xs.mul(
        &RatFunc::poly(one.clone())
            .sub(&RatFunc::poly(e.clone()).mul(&xs))
            .mul(&sat)
            .sub(&ys),
    );
    let f2 = ys.mul(&xs.sub(&g_h.add(&d_h.mul(&ys)).mul(&sat)));

    // w² = X2 (1 - e X2 - X2 (a(1-2eX2) - e)²)
    let omega_sq = RatFunc::poly(
        xx.mul(&one.sub(&e.mul(&xx)).sub(&xx.mul(&m21p.pow(2)))),
    );

    let w_rf = RatFunc::poly(w.clone());
    let u1 = reduce_w(&rf_div(&f1, &w_rf)?, &omega_sq, &w_rf)?;
    let u2 = reduce_w(
        &rf_div(&f2.sub(&m21.mul(&f1)), &m22.mul(&w_rf))?,
        &omega_sq,
        &w_rf,
    )?;

    let sys = PlanarSystem::new(
        "bazykin2_hopf_frame",
        ["x1", "x2"],
        &["e", "a", "X2", "w"],
        u1,
        u2,
    )?;
    validate_unit_rotation(&sys)?;
    Ok(FrameParts {
        sys,
        omega_sq,
        chart: &["e", "a", "X2"],
    })
}

fn frame_parts(model: BuiltinSystem) -> Result<FrameParts> {
    match model {
        BuiltinSystem::Bazykin1 => model1_frame_parts(),
        BuiltinSystem::Bazykin2 => model2_frame_parts(),
        other => Err(Error::InvalidArgument(format!(
            "no Hopf frame is defined for {other}"
        ))),
    }
}

/// Symbolic Hopf frame of a model: states (x1, x2), parameters the
/// hierarchy chart plus the frequency w, linear part exactly (x2, -x1).
pub fn hopf_frame(model: BuiltinSystem) -> Result<PlanarSystem> {
    Ok(frame_parts(model)?.sys)
}

/// The closed form bound to w²: determinant of the polynomialized Jacobian
/// at the interior equilibrium, as a rational function of the chart.
pub fn hopf_frame_omega_sq(model: BuiltinSystem) -> Result<RatFunc> {
    Ok(frame_parts(model)?.omega_sq)
}

// ---------------------------------------------------------------------------
// Hopf candidates

fn require_as_bf(point: &ParamPoint, name: &str, prec: u32) -> Result<BigFloat> {
    Ok(point.require(name)?.to_bigfloat(prec))
}

fn bf(v: i64, prec: u32) -> BigFloat {
    BigFloat::from_i64(v, prec)
}

/// Locates the admissible Hopf points of a model.
///
/// The first model takes (g, e) and tests both trace roots
/// X2 = (g/2e)(1 ± sqrt(1-4e)); the second takes (e, a, X2) and pins d at
/// the trace root. Every admissibility inequality is evaluated and
/// reported, satisfied or not; candidates failing any check land in
/// `rejected` with the full witness vector.
pub fn hopf_candidates(model: BuiltinSystem, params: &ParamPoint) -> Result<HopfCandidates> {
    let prec = params
        .iter()
        .filter_map(|(_, s)| s.float_precision())
        .max()
        .unwrap_or(DEFAULT_PREC)
        .max(DEFAULT_PREC);
    match model {
        BuiltinSystem::Bazykin1 => model1_candidates(params, prec),
        BuiltinSystem::Bazykin2 => model2_candidates(params, prec),
        other => Err(Error::InvalidArgument(format!(
            "no Hopf-point search is defined for {other}"
        ))),
    }
}

fn model1_candidates(params: &ParamPoint, prec: u32) -> Result<HopfCandidates> {
    let g = require_as_bf(params, "g", prec)?;
    let e = require_as_bf(params, "e", prec)?;

    let window = vec![
        ConditionCheck::new("e > 0", e.clone()),
        ConditionCheck::new(
            "e < 1/4",
            BigFloat::from_rat(&rat(1, 4), prec).sub_ref(&e),
        ),
        ConditionCheck::new("g > 0", g.clone()),
    ];
    if window.iter().any(|c| !c.satisfied) {
        return Ok(HopfCandidates {
            points: Vec::new(),
            rejected: vec![RejectedCandidate {
                label: "trace roots".into(),
                checks: window,
            }],
        });
    }

    let one = BigFloat::one(prec);
    let q = one.sub_ref(&bf(4, prec).mul_ref(&e)).sqrt()?;
    let half_g_over_e = g.div_ref(&bf(2, prec).mul_ref(&e));

    let mut out = HopfCandidates {
        points: Vec::new(),
        rejected: Vec::new(),
    };
    for (label, root_sign) in [("smaller trace root", -1i64), ("larger trace root", 1)] {
        let x2 = if root_sign < 0 {
            half_g_over_e.mul_ref(&one.sub_ref(&q))
        } else {
            half_g_over_e.mul_ref(&one.add_ref(&q))
        };
        // s = n + Y2 is the multiplier at the equilibrium; w² = s² det(J)
        let y2 = one.sub_ref(&e.mul_ref(&x2));
        let n = y2.mul_ref(&x2.sub_ref(&g)).div_ref(&g);
        let det = g.mul_ref(
            &one.add_ref(&e.mul_ref(&g))
                .sub_ref(&bf(2, prec).mul_ref(&e).mul_ref(&x2)),
        );
        let s = n.add_ref(&y2);
        let omega_sq = s.mul_ref(&s).mul_ref(&det);

        let mut checks = window.clone();
        checks.push(ConditionCheck::new("X2 > g", x2.sub_ref(&g)));
        checks.push(ConditionCheck::new(
            "X2 < 1/e",
            one.div_ref(&e).sub_ref(&x2),
        ));
        checks.push(ConditionCheck::new("det(J) > 0", det.clone()));

        if checks.iter().all(|c| c.satisfied) {
            let mut full = ParamPoint::new();
            full.set("g", params.require("g")?.clone());
            full.set("e", params.require("e")?.clone());
            full.set_big("n", n.clone());
            out.points.push(HopfPoint {
                model: BuiltinSystem::Bazykin1,
                x2,
                companion_name: "n",
                companion: n,
                omega: omega_sq.sqrt()?,
                params: full,
                admissibility: checks,
            });
        } else {
            out.rejected.push(RejectedCandidate {
                label: label.into(),
                checks,
            });
        }
    }
    Ok(out)
}

fn model2_candidates(params: &ParamPoint, prec: u32) -> Result<HopfCandidates> {
    let e = require_as_bf(params, "e", prec)?;
    let a = require_as_bf(params, "a", prec)?;
    let x2 = require_as_bf(params, "X2", prec)?;
    let one = BigFloat::one(prec);

    let one_m_ex2 = one.sub_ref(&e.mul_ref(&x2));
    let one_m_2ex2 = one.sub_ref(&bf(2, prec).mul_ref(&e).mul_ref(&x2));
    let sat = one.add_ref(&a.mul_ref(&x2));
    // trace root of the multiplied Jacobian in d
    let m21 = a.mul_ref(&one_m_2ex2).sub_ref(&e);
    let d_h = x2
        .mul_ref(&m21)
        .div_ref(&one_m_ex2.mul_ref(&sat).mul_ref(&sat));
    let g = x2.mul_ref(&one.add_ref(&e).sub_ref(&m21)).div_ref(&sat);
    let omega_sq = x2.mul_ref(&one_m_ex2.sub_ref(&x2.mul_ref(&m21).mul_ref(&m21)));

    let checks = vec![
        ConditionCheck::new("e > 0", e.clone()),
        ConditionCheck::new("a > 0", a.clone()),
        ConditionCheck::new("X2 > 0", x2.clone()),
        ConditionCheck::new("1 - e X2 > 0", one_m_ex2.clone()),
        ConditionCheck::new("1 - 2 e X2 > 0", one_m_2ex2.clone()),
        ConditionCheck::new("d > 0, i.e. a > e/(1 - 2 e X2)", d_h.clone()),
        ConditionCheck::new("g > 0, i.e. a < (1 + e)/(1 - 2 e X2)", g.clone()),
        ConditionCheck::new("omega² = det(J) > 0", omega_sq.clone()),
    ];

    let mut out = HopfCandidates {
        points: Vec::new(),
        rejected: Vec::new(),
    };
    if checks.iter().all(|c| c.satisfied) {
        let mut full = ParamPoint::new();
        full.set("e", params.require("e")?.clone());
        full.set("a", params.require("a")?.clone());
        full.set_big("g", g);
        full.set_big("d", d_h.clone());
        out.points.push(HopfPoint {
            model: BuiltinSystem::Bazykin2,
            x2,
            companion_name: "d",
            companion: d_h,
            omega: omega_sq.sqrt()?,
            params: full,
            admissibility: checks,
        });
    } else {
        out.rejected.push(RejectedCandidate {
            label: "trace root in d".into(),
            checks,
        });
    }
    Ok(out)
}

/// Exact trace roots of the first model in Q(sqrt(1-4e)), smaller branch
/// first, with the companion n. Denests automatically when e itself lives
/// in a quadratic extension whose trace-root radical collapses into it.
pub fn model1_hopf_abscissas_exact(g: &QuadExt, e: &QuadExt) -> Result<[(QuadExt, QuadExt); 2]> {
    let one = QuadExt::rational(RatNum::one());
    let four = QuadExt::rational(rat(4, 1));
    let two = QuadExt::rational(rat(2, 1));
    let q = one.sub(&four.mul(e)?)?.sqrt()?;
    let scale = g.div(&two.mul(e)?)?;
    let mut out = Vec::new();
    for branch in [one.sub(&q)?, one.add(&q)?] {
        let x2 = scale.mul(&branch)?;
        let y2 = one.sub(&e.mul(&x2)?)?;
        let n = y2.mul(&x2.sub(g)?)?.div(g)?;
        out.push((x2, n));
    }
    Ok([out.remove(0), out.remove(0)])
}

// ---------------------------------------------------------------------------
// transformation to Hopf coordinates

/// Specializes the symbolic frame at a located Hopf point.
///
/// Numeric inputs are bound exactly (a float is a dyadic rational), so the
/// returned system has exact coefficients and its linear part is exactly
/// (x2, -x1) regardless of rounding in omega: the frame eliminated every
/// even power of w symbolically before specialization.
pub fn to_hopf_coordinates(model: BuiltinSystem, hp: &HopfPoint) -> Result<PlanarSystem> {
    if !hp.omega.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "omega must be positive at a Hopf point, got {}",
            hp.omega
        )));
    }
    let parts = frame_parts(model)?;
    let mut bind = ParamPoint::new();
    for name in parts.chart {
        let value = if *name == "X2" {
            Scalar::Big(hp.x2.clone())
        } else {
            hp.params.require(name)?.clone()
        };
        let as_rat = match value {
            Scalar::Rat(r) => r,
            Scalar::Big(b) => b.to_rat(),
        };
        bind.set_rat(name, as_rat);
    }
    bind.set_rat("w", hp.omega.to_rat());
    parts.sys.specialized(&bind)
}

// ---------------------------------------------------------------------------
// focus-value engine

/// Field interface for the recursion: the structure matrices are integer,
/// so only addition, multiplication, and rational scaling are needed.
trait EngineField: Sized + Clone {
    fn like_from_rat(&self, r: &RatNum) -> Self;
    fn add(&self, o: &Self) -> Result<Self>;
    fn mul(&self, o: &Self) -> Result<Self>;
    fn scale_rat(&self, k: &RatNum) -> Self;
    fn is_zero(&self) -> bool;
}

impl EngineField for RatNum {
    fn like_from_rat(&self, r: &RatNum) -> Self {
        r.clone()
    }
    fn add(&self, o: &Self) -> Result<Self> {
        Ok(self + o)
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        Ok(self * o)
    }
    fn scale_rat(&self, k: &RatNum) -> Self {
        self * k
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl EngineField for QuadExt {
    fn like_from_rat(&self, r: &RatNum) -> Self {
        QuadExt::rational(r.clone())
    }
    fn add(&self, o: &Self) -> Result<Self> {
        QuadExt::add(self, o)
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        QuadExt::mul(self, o)
    }
    fn scale_rat(&self, k: &RatNum) -> Self {
        self.scale(k)
    }
    fn is_zero(&self) -> bool {
        QuadExt::is_zero(self)
    }
}

impl EngineField for BigFloat {
    fn like_from_rat(&self, r: &RatNum) -> Self {
        BigFloat::from_rat(r, self.precision())
    }
    fn add(&self, o: &Self) -> Result<Self> {
        Ok(self.add_ref(o))
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        Ok(self.mul_ref(o))
    }
    fn scale_rat(&self, k: &RatNum) -> Self {
        self.mul_ref(&BigFloat::from_rat(k, self.precision()))
    }
    fn is_zero(&self) -> bool {
        BigFloat::is_zero(self)
    }
}

/// Dense coefficient triangles by total degree: grid[d][i] is the
/// coefficient of x^(d-i) y^i.
type Grid<F> = Vec<Vec<F>>;

fn zero_grid<F: EngineField>(proto: &F, max_degree: usize) -> Grid<F> {
    let z = proto.like_from_rat(&RatNum::zero());
    (0..=max_degree).map(|d| vec![z.clone(); d + 1]).collect()
}

/// Solves A x = b by Gaussian elimination where A is rational and b lives
/// in the engine field; only rational pivots are ever inverted.
fn solve_rat_matrix<F: EngineField>(mut a: Vec<Vec<RatNum>>, mut b: Vec<F>) -> Result<Vec<F>> {
    let n = a.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !Zero::is_zero(&a[r][col]))
            .ok_or_else(|| Error::Internal("singular focus-value structure matrix".into()))?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in col + 1..n {
            if Zero::is_zero(&a[r][col]) {
                continue;
            }
            let factor = &a[r][col] / &a[col][col];
            for j in col..n {
                let t = &factor * &a[col][j];
                a[r][j] = &a[r][j] - &t;
            }
            let delta = b[col].scale_rat(&-factor);
            b[r] = b[r].add(&delta)?;
        }
    }
    let mut x: Vec<F> = b.clone();
    for i in (0..n).rev() {
        let mut acc = b[i].clone();
        for j in i + 1..n {
            let delta = x[j].scale_rat(&-a[i][j].clone());
            acc = acc.add(&delta)?;
        }
        x[i] = acc.scale_rat(&a[i][i].recip());
    }
    Ok(x)
}

fn binomial(n: u32, k: u32) -> RatNum {
    let mut v = RatNum::one();
    for i in 0..k {
        v = v * rat((n - i) as i64, (i + 1) as i64);
    }
    v
}

/// Poincaré-Lyapunov recursion for x' = y + P, y' = -x + Q.
///
/// Builds the formal first integral V = (x²+y²)/2 + Σ V_k degree by degree;
/// at each even degree 2k+2 the obstruction eta_k is the coefficient making
/// V' = Σ eta_k (x²+y²)^(k+1) solvable, normalized by pinning the pure
/// x-power coefficient of V_{2k+2} to zero. eta_k is the coefficient of
/// r^(2k+1) in the radial normal form.
fn lyapunov_coefficients<F: EngineField>(
    p: &Grid<F>,
    q: &Grid<F>,
    order: usize,
    proto: &F,
) -> Result<Vec<F>> {
    let zero = proto.like_from_rat(&RatNum::zero());
    let kmax = 2 * order + 2;
    let mut v: Vec<Option<Vec<F>>> = vec![None; kmax + 1];
    v[2] = Some(vec![
        proto.like_from_rat(&rat(1, 2)),
        zero.clone(),
        proto.like_from_rat(&rat(1, 2)),
    ]);
    let mut etas = Vec::new();

    for k in 3..=kmax {
        // N_k = degree-k part of Vx P + Vy Q over the known V_j
        let mut nk = vec![zero.clone(); k + 1];
        for j in 2..k {
            let Some(vj) = v[j].as_ref() else { continue };
            let dp = k + 1 - j;
            if dp < 2 || dp >= p.len() {
                continue;
            }
            // Vx[t] = (j-t) V_j[t], Vy[t-1] = t V_j[t], both of degree j-1
            for t in 0..=j {
                if vj[t].is_zero() {
                    continue;
                }
                if t < j {
                    let vx = vj[t].scale_rat(&rat((j - t) as i64, 1));
                    for (s, ps) in p[dp].iter().enumerate() {
                        if !ps.is_zero() {
                            let prod = vx.mul(ps)?;
                            nk[t + s] = nk[t + s].add(&prod)?;
                        }
                    }
                }
                if t > 0 {
                    let vy = vj[t].scale_rat(&rat(t as i64, 1));
                    for (s, qs) in q[dp].iter().enumerate() {
                        if !qs.is_zero() {
                            let prod = vy.mul(qs)?;
                            nk[t - 1 + s] = nk[t - 1 + s].add(&prod)?;
                        }
                    }
                }
            }
        }

        // L[x^(k-i) y^i] = (k-i) x^(k-i-1) y^(i+1) - i x^(k-i+1) y^(i-1)
        let even = k % 2 == 0;
        let n = if even { k + 2 } else { k + 1 };
        let mut a = vec![vec![RatNum::zero(); n]; n];
        for i in 0..=k {
            if i + 1 <= k {
                a[i + 1][i] = &a[i + 1][i] + rat((k - i) as i64, 1);
            }
            if i >= 1 {
                a[i - 1][i] = &a[i - 1][i] - rat(i as i64, 1);
            }
        }
        let mut b: Vec<F> = (0..=k).map(|r| nk[r].scale_rat(&rat(-1, 1))).collect();
        if even {
            let m = (k / 2) as u32;
            for t in 0..=m {
                a[(2 * t) as usize][k + 1] = -binomial(m, t);
            }
            // pinning the pure x^k coefficient fixes the non-uniqueness of
            // the even-degree solve
            a[k + 1][0] = RatNum::one();
            b.push(zero.clone());
        }
        let sol = solve_rat_matrix(a, b)?;
        v[k] = Some(sol[..=k].to_vec());
        if even {
            etas.push(sol[k + 1].clone());
        }
    }
    Ok(etas)
}

fn system_grids(sys: &PlanarSystem, point: &ParamPoint) -> Result<(Grid<RatNum>, Grid<RatNum>)> {
    let mut rationalized = ParamPoint::new();
    for (name, value) in point.iter() {
        let as_rat = match value {
            Scalar::Rat(r) => r.clone(),
            Scalar::Big(b) => b.to_rat(),
        };
        rationalized.set_rat(name, as_rat);
    }
    let fixed = sys.specialized(&rationalized)?;
    let mut grids = Vec::new();
    for rf in [&fixed.rhs_x, &fixed.rhs_y] {
        if !rf.is_polynomial() {
            return Err(Error::InvalidArgument(
                "Hopf-coordinate system must be polynomial".into(),
            ));
        }
        let den = rf
            .den
            .constant_value()
            .expect("constant denominator")
            .clone();
        let deg = rf.num.total_degree() as usize;
        if deg > 5 {
            return Err(Error::InvalidArgument(format!(
                "nonlinearity degree {deg} exceeds the supported 5"
            )));
        }
        let mut grid: Grid<RatNum> = (0..=deg.max(1)).map(|d| vec![RatNum::zero(); d + 1]).collect();
        for (exps, c) in rf.num.terms() {
            let (dx, dy) = (exps[0] as usize, exps[1] as usize);
            grid[dx + dy][dy] = c / &den;
        }
        grids.push(grid);
    }
    let q = grids.pop().expect("two grids");
    let p = grids.pop().expect("two grids");

    // the linear part must be exactly the unit rotation
    let lin_ok = Zero::is_zero(&p[0][0])
        && Zero::is_zero(&q[0][0])
        && (p.len() < 2 || (Zero::is_zero(&(&p[1][1] - rat(1, 1))) && Zero::is_zero(&p[1][0])))
        && (q.len() < 2 || (Zero::is_zero(&(&q[1][0] + rat(1, 1))) && Zero::is_zero(&q[1][1])));
    if !lin_ok || p.len() < 2 || q.len() < 2 {
        return Err(Error::InvalidArgument(
            "linear part must be exactly (x2, -x1) in Hopf coordinates".into(),
        ));
    }
    Ok((p, q))
}

/// Focus values of a system already in Hopf coordinates, by the recursion
/// engine. `order` caps how many are computed (1..=3); later entries are
/// reported as zero. The system is specialized at `point` (floats bind as
/// exact dyadic rationals) and the whole recursion runs in exact rational
/// arithmetic, so the reported values are exact images of the bound
/// coefficients. omega is 1 and v0 is 0 by construction: the frame already
/// carries unit frequency, and transversality is a statement about the
/// unfolding, not the frame.
pub fn focus_values_numeric(
    sys: &PlanarSystem,
    point: &ParamPoint,
    order: usize,
) -> Result<FocusValues> {
    if !(1..=3).contains(&order) {
        return Err(Error::InvalidArgument(format!(
            "focus-value order must be 1..=3, got {order}"
        )));
    }
    let (p, q) = system_grids(sys, point)?;
    let proto = RatNum::one();
    let mut nonlinear_p = p;
    let mut nonlinear_q = q;
    // degrees 0 and 1 were validated; zero them so only nonlinear terms feed
    // the recursion
    for g in [&mut nonlinear_p, &mut nonlinear_q] {
        g[0][0] = RatNum::zero();
        g[1][0] = RatNum::zero();
        g[1][1] = RatNum::zero();
    }
    let etas = lyapunov_coefficients(&nonlinear_p, &nonlinear_q, order, &proto)?;
    let as_bf = |i: usize| -> BigFloat {
        etas.get(i)
            .map(|r| BigFloat::from_rat(r, DEFAULT_PREC))
            .unwrap_or_else(|| BigFloat::zero(DEFAULT_PREC))
    };
    Ok(FocusValues {
        omega: BigFloat::one(DEFAULT_PREC),
        v0: BigFloat::zero(DEFAULT_PREC),
        v1: as_bf(0),
        v2: as_bf(1),
        v3: as_bf(2),
        convention: FvConvention::NumericEngine,
    })
}

fn chart_values_rat(parts: &FrameParts, point: &ParamPoint) -> Result<Vec<RatNum>> {
    let mut vals = vec![RatNum::zero(), RatNum::zero()];
    for name in parts.chart {
        vals.push(point.require_rat(name)?.clone());
    }
    vals.push(RatNum::zero()); // placeholder for w, never read below
    Ok(vals)
}

/// Unit-frame focus values at an exact rational chart point, computed in
/// Q(sqrt(det)). The frame stores w to degree <= 1 over w-free
/// denominators, so binding w = sqrt(det) keeps every coefficient inside
/// one quadratic extension and the recursion stays exact end to end.
pub fn unit_frame_focus_values_exact(
    model: BuiltinSystem,
    point: &ParamPoint,
    order: usize,
) -> Result<Vec<QuadExt>> {
    if !(1..=3).contains(&order) {
        return Err(Error::InvalidArgument(format!(
            "focus-value order must be 1..=3, got {order}"
        )));
    }
    let parts = frame_parts(model)?;
    let vals = chart_values_rat(&parts, point)?;
    let det = parts.omega_sq.eval_rat(&vals)?;
    if !det.is_positive() {
        return Err(Error::NotApplicable(format!(
            "omega² = det(J) must be positive, got {det}"
        )));
    }

    let states = [
        parts.sys.state_vars[0].as_str(),
        parts.sys.state_vars[1].as_str(),
    ];
    let proto = QuadExt::sqrt_of(det.clone())?;
    let mut grids: Vec<Grid<QuadExt>> = Vec::new();
    for rf in [&parts.sys.rhs_x, &parts.sys.rhs_y] {
        let mut grid = zero_grid(&proto, 3);
        for d in 2..=3u32 {
            for i in 0..=d {
                let c = coeff_of_state_monomial(rf, states, d - i, i)?;
                if c.num.is_zero() {
                    continue;
                }
                if c.den.degree_in("w")? != 0 {
                    return Err(Error::Internal("w-dependent frame denominator".into()));
                }
                let den_v = c.den.eval_rat(&vals);
                if Zero::is_zero(&den_v) {
                    return Err(Error::SingularEvaluation(c.den.to_string()));
                }
                let parts_w = c.num.coeffs_in("w")?;
                if parts_w.len() > 2 {
                    return Err(Error::Internal("frame coefficient of degree > 1 in w".into()));
                }
                let a = parts_w[0].eval_rat(&vals) / &den_v;
                let b = if parts_w.len() == 2 {
                    parts_w[1].eval_rat(&vals) / &den_v
                } else {
                    RatNum::zero()
                };
                grid[d as usize][i as usize] = QuadExt::new(a, b, det.clone())?;
            }
        }
        grids.push(grid);
    }
    let q = grids.pop().expect("two grids");
    let p = grids.pop().expect("two grids");
    lyapunov_coefficients(&p, &q, order, &proto)
}

/// Unit-frame focus values at a numeric chart point, at the given binary
/// precision.
pub fn unit_frame_focus_values(
    model: BuiltinSystem,
    point: &ParamPoint,
    order: usize,
    prec: u32,
) -> Result<Vec<BigFloat>> {
    if !(1..=3).contains(&order) {
        return Err(Error::InvalidArgument(format!(
            "focus-value order must be 1..=3, got {order}"
        )));
    }
    let parts = frame_parts(model)?;
    let mut vals = vec![BigFloat::zero(prec), BigFloat::zero(prec)];
    for name in parts.chart {
        vals.push(require_as_bf(point, name, prec)?);
    }
    let mut det_vals = vals.clone();
    det_vals.push(BigFloat::zero(prec));
    let det = parts.omega_sq.eval_bf(&det_vals, prec)?;
    if !det.is_positive() {
        return Err(Error::NotApplicable(format!(
            "omega² = det(J) must be positive, got {det}"
        )));
    }
    vals.push(det.sqrt()?);

    let states = [
        parts.sys.state_vars[0].as_str(),
        parts.sys.state_vars[1].as_str(),
    ];
    let proto = BigFloat::zero(prec);
    let mut grids: Vec<Grid<BigFloat>> = Vec::new();
    for rf in [&parts.sys.rhs_x, &parts.sys.rhs_y] {
        let mut grid = zero_grid(&proto, 3);
        for d in 2..=3u32 {
            for i in 0..=d {
                let c = coeff_of_state_monomial(rf, states, d - i, i)?;
                if !c.num.is_zero() {
                    grid[d as usize][i as usize] = c.eval_bf(&vals, prec)?;
                }
            }
        }
        grids.push(grid);
    }
    let q = grids.pop().expect("two grids");
    let p = grids.pop().expect("two grids");
    lyapunov_coefficients(&p, &q, order, &proto)
}

// ---------------------------------------------------------------------------
// closed forms, first model, hierarchy chart (g, X2)

fn m1_vars() -> [&'static str; 2] {
    ["g", "X2"]
}

/// F4(g, X2) = (1-2g) X2² + 3g² X2 - g³; omega² = (g/X2²) F4 (n+Y2)² after
/// the multiplier, and F4 > 0 is the admissibility boundary.
pub fn model1_f4_poly() -> MPoly {
    let vars = m1_vars();
    let v = |n: &str| MPoly::var(&vars, n).expect("var in list");
    let one = MPoly::one(&vars);
    let (g, x2) = (v("g"), v("X2"));
    one.sub(&g.scale(&rat(2, 1)))
        .mul(&x2.pow(2))
        .add(&g.pow(2).mul(&x2).scale(&rat(3, 1)))
        .sub(&g.pow(3))
}

/// Sign-carrying factor of the first focus value over the hierarchy chart.
pub fn model1_v1a_poly() -> MPoly {
    let vars = m1_vars();
    let v = |n: &str| MPoly::var(&vars, n).expect("var in list");
    let (g, x2) = (v("g"), v("X2"));
    g.mul(&x2.sub(&g))
        .mul(&x2.pow(3).sub(&g.pow(2).mul(&x2).scale(&rat(3, 1))).add(&g.pow(3)))
        .sub(&x2.pow(2).mul(&x2.pow(2).sub(&g.mul(&x2)).sub(&g.pow(2))))
}

/// Sign-carrying factor of the second focus value over the hierarchy chart.
pub fn model1_v2a_poly() -> MPoly {
    let vars = m1_vars();
    let v = |n: &str| MPoly::var(&vars, n).expect("var in list");
    let one = MPoly::one(&vars);
    let (g, x2) = (v("g"), v("X2"));
    let c = |k: i64| MPoly::constant(&vars, rat(k, 1));
    let mut acc = g.pow(9).mul(&g.sub(&one)).scale(&rat(3, 1));
    acc = acc.sub(
        &g.pow(7)
            .mul(&g.pow(2).scale(&rat(2, 1)).add(&g.scale(&rat(9, 1))).sub(&c(12)))
            .mul(&x2),
    );
    acc = acc.sub(
        &g.pow(5)
            .mul(
                &g.pow(3)
                    .sub(&g.pow(2).scale(&rat(31, 1)))
                    .add(&g.scale(&rat(29, 1)))
                    .add(&c(12)),
            )
            .mul(&x2.pow(2)),
    );
    acc = acc.sub(
        &g.pow(4)
            .mul(
                &g.pow(2)
                    .scale(&rat(45, 1))
                    .sub(&g.scale(&rat(61, 1)))
                    .add(&c(22)),
            )
            .mul(&x2.pow(3)),
    );
    acc = acc.add(
        &g.pow(3)
            .mul(
                &g.pow(2)
                    .scale(&rat(29, 1))
                    .sub(&g.scale(&rat(84, 1)))
                    .add(&c(37)),
            )
            .mul(&x2.pow(4)),
    );
    acc = acc.add(
        &g.pow(2)
            .mul(
                &g.pow(2)
                    .scale(&rat(23, 1))
                    .add(&g.scale(&rat(18, 1)))
                    .sub(&c(27)),
            )
            .mul(&x2.pow(5)),
    );
    acc = acc.sub(
        &g.mul(
            &g.pow(3)
                .scale(&rat(3, 1))
                .add(&g.pow(2).scale(&rat(28, 1)))
                .sub(&g.scale(&rat(9, 1)))
                .sub(&c(5)),
        )
        .mul(&x2.pow(6)),
    );
    acc = acc.add(
        &g.mul(
            &g.pow(2)
                .scale(&rat(15, 1))
                .sub(&g.scale(&rat(12, 1)))
                .add(&one),
        )
        .mul(&x2.pow(7)),
    );
    acc = acc.sub(
        &g.scale(&rat(3, 1))
            .sub(&one)
            .mul(&g.scale(&rat(2, 1)).sub(&one))
            .mul(&x2.pow(8)),
    );
    acc.add(&g.sub(&one).mul(&x2.pow(9)))
}

/// Exact first-model closed forms at a hierarchy-chart point in a shared
/// quadratic extension: (v0, v1, v2, v1a, v2a, omega²).
pub fn model1_hierarchy_closed_exact(
    g: &QuadExt,
    x2: &QuadExt,
) -> Result<(QuadExt, QuadExt, QuadExt, QuadExt, QuadExt, QuadExt)> {
    let vals = [g.clone(), x2.clone()];
    let one = QuadExt::rational(RatNum::one());
    let v1a = model1_v1a_poly().eval_quad(&vals)?;
    let v2a = model1_v2a_poly().eval_quad(&vals)?;
    let f4 = model1_f4_poly().eval_quad(&vals)?;
    let x2sq = x2.mul(x2)?;

    // v0 = -((1-g) X2² + 2g² X2 - g³) / (2 g X2)
    let v0_num = one
        .sub(g)?
        .mul(&x2sq)?
        .add(&g.mul(g)?.mul(x2)?.scale(&rat(2, 1)))?
        .sub(&g.pow(3)?)?;
    let v0 = v0_num.neg().div(&g.mul(x2)?.scale(&rat(2, 1)))?;

    let gxg = g.mul(&x2.sub(g)?)?;
    let v1 = gxg.mul(&v1a)?.div(&x2.pow(4)?.mul(&f4)?.scale(&rat(8, 1)))?;
    let v2_den = x2
        .pow(7)?
        .mul(&g.mul(g)?.sub(&g.sub(&one)?.mul(x2)?)?)?
        .mul(&f4.pow(3)?)?
        .scale(&rat(288, 1));
    let v2 = gxg.mul(&v2a)?.div(&v2_den)?;

    // omega² of the multiplied field: (n + Y2)² g F4 / X2²
    let e = g.mul(&x2.sub(g)?)?.div(&x2sq)?;
    let y2 = one.sub(&e.mul(x2)?)?;
    let n = y2.mul(&x2.sub(g)?)?.div(g)?;
    let s = n.add(&y2)?;
    let omega_sq = s.mul(&s)?.mul(&g.mul(&f4)?)?.div(&x2sq)?;
    Ok((v0, v1, v2, v1a, v2a, omega_sq))
}

// ---------------------------------------------------------------------------
// closed forms, first model, (g, e) plane

fn m1ge_vars() -> [&'static str; 3] {
    ["g", "e", "q"]
}

fn m1ge_poly<F>(build: F) -> MPoly
where
    F: FnOnce(&MPoly, &MPoly, &MPoly, &MPoly) -> MPoly,
{
    let vars = m1ge_vars();
    let v = |n: &str| MPoly::var(&vars, n).expect("var in list");
    let one = MPoly::one(&vars);
    build(&v("g"), &v("e"), &v("q"), &one)
}

fn e_cubic(e: &MPoly, one: &MPoly) -> MPoly {
    // e³ + 6e² + 3e - 1, the factor whose root bounds the g_c > 0 window
    e.pow(3)
        .add(&e.pow(2).scale(&rat(6, 1)))
        .add(&e.scale(&rat(3, 1)))
        .sub(one)
}

/// v1a over the (g, e) plane, with q standing for sqrt(1-4e).
pub fn model1_plane_v1a_poly() -> MPoly {
    m1ge_poly(|g, e, q, one| {
        let tail = e
            .pow(3)
            .scale(&rat(2, 1))
            .sub(&e.pow(2).scale(&rat(6, 1)))
            .sub(&e.scale(&rat(3, 1)))
            .add(one)
            .add(
                &one.add(e)
                    .mul(&one.sub(&e.scale(&rat(4, 1))))
                    .mul(q),
            );
        g.mul(e).scale(&rat(2, 1)).mul(&e_cubic(e, one)).add(&tail)
    })
}

/// v2a over the (g, e) plane, with q standing for sqrt(1-4e).
pub fn model1_plane_v2a_poly() -> MPoly {
    m1ge_poly(|g, e, q, _one| {
        let c = |k: i64| MPoly::constant(&m1ge_vars(), rat(k, 1));
        let ep = |coeffs: &[i64]| -> MPoly {
            // coeffs high degree first
            let mut acc = MPoly::zero(&m1ge_vars());
            for &k in coeffs {
                acc = acc.mul(e).add(&c(k));
            }
            acc
        };
        let radical = g
            .pow(3)
            .mul(&e.pow(2))
            .mul(&ep(&[1017, 14094, 46033, 17379, -11998, -1602, 702]))
            .add(
                &g.pow(2)
                    .mul(e)
                    .mul(&ep(&[915, 8449, -13250, -29988, 9796, 2349, -702])),
            )
            .sub(&g.mul(&ep(&[141, 3892, 16554, -15611, 1501, 1251, -234])))
            .sub(&ep(&[39, 455, -999, 184, 81, -18]));
        let plain = ep(&[81, 1800, 11428, 23370, 3657, -4768, -369, 234])
            .mul(&g.pow(4))
            .mul(&e.pow(3))
            .scale(&rat(-2, 1))
            .sub(
                &g.pow(3)
                    .mul(&e.pow(2))
                    .mul(&ep(&[108, 3543, 5830, -36567, -24783, 12056, 1836, -702])),
            )
            .add(
                &g.pow(2)
                    .mul(e)
                    .mul(&ep(&[288, 6517, 58993, 36804, -50110, 5384, 3753, -702])),
            )
            .add(&g.mul(&ep(&[252, 3647, 6146, -42326, 20621, 533, -1719, 234])))
            .add(&ep(&[18, 67, -1965, 1431, -58, -117, 18]));
        radical.mul(q).add(&plain)
    })
}

fn model1_plane_ratio<F>(e_val: &QuadExt, build: F) -> Result<QuadExt>
where
    F: FnOnce(&MPoly, &MPoly, &MPoly) -> (MPoly, MPoly),
{
    let vars = ["e", "q"];
    let v = |n: &str| MPoly::var(&vars, n).expect("var in list");
    let one = MPoly::one(&vars);
    let (num, den) = build(&v("e"), &v("q"), &one);
    let q = QuadExt::rational(RatNum::one())
        .sub(&e_val.scale(&rat(4, 1)))?
        .sqrt()?;
    let vals = [e_val.clone(), q];
    let d = den.eval_quad(&vals)?;
    if d.is_zero() {
        return Err(Error::SingularEvaluation(den.to_string()));
    }
    num.eval_quad(&vals)?.div(&d)
}

/// Critical g where the first focus value vanishes on the smaller trace
/// root, exact in the extension generated by e and sqrt(1-4e).
pub fn model1_plane_gc_exact(e: &QuadExt) -> Result<QuadExt> {
    model1_plane_ratio(e, |ev, q, one| {
        let tail = ev
            .pow(3)
            .scale(&rat(2, 1))
            .sub(&ev.pow(2).scale(&rat(6, 1)))
            .sub(&ev.scale(&rat(3, 1)))
            .add(one)
            .add(
                &one.add(ev)
                    .mul(&one.sub(&ev.scale(&rat(4, 1))))
                    .mul(q),
            );
        (
            tail.neg(),
            ev.mul(&e_cubic(ev, one)).scale(&rat(2, 1)),
        )
    })
}

/// v2a restricted to the v1 = 0 locus g = g_c(e): the printed reduction
/// -6e³(1-4e)/(e³+6e²+3e-1)⁴ (A(e) sqrt(1-4e) + B(e)).
pub fn model1_plane_v2a_on_locus_exact(e: &QuadExt) -> Result<QuadExt> {
    model1_plane_ratio(e, |ev, q, one| {
        let ep = |coeffs: &[i64]| -> MPoly {
            let c = |k: i64| MPoly::constant(&["e", "q"], rat(k, 1));
            let mut acc = MPoly::zero(&["e", "q"]);
            for &k in coeffs {
                acc = acc.mul(ev).add(&c(k));
            }
            acc
        };
        let a = ep(&[
            9, 221, -711, -32860, -78923, -53364, 12185, 23854, -384, -3643, 335, 135, -18,
        ]);
        let b = ep(&[
            87, 3267, 28731, 4512, -102873, -101184, 9723, 28032, 462, -3099, -3, 171, -18,
        ]);
        let num = a
            .mul(q)
            .add(&b)
            .mul(&ev.pow(3))
            .mul(&one.sub(&ev.scale(&rat(4, 1))))
            .scale(&rat(-6, 1));
        (num, e_cubic(ev, one).pow(4))
    })
}

/// Exact (g, e)-plane closed forms on the smaller trace root: (v1, v2).
pub fn model1_plane_closed_exact(g: &QuadExt, e: &QuadExt) -> Result<(QuadExt, QuadExt)> {
    let one = QuadExt::rational(RatNum::one());
    let q = one.sub(&e.scale(&rat(4, 1)))?.sqrt()?;
    let vals = [g.clone(), e.clone(), q.clone()];
    let v1a = model1_plane_v1a_poly().eval_quad(&vals)?;
    let v2a = model1_plane_v2a_poly().eval_quad(&vals)?;

    // shared factor 1 - e + q - g e (e+2)
    let e2 = e.add(&QuadExt::rational(rat(2, 1)))?;
    let shared = one
        .sub(e)?
        .add(&q)?
        .sub(&g.mul(e)?.mul(&e2)?)?;
    let d1 = one
        .sub(&e.scale(&rat(8, 1)))?
        .sub(&e.mul(e)?.scale(&rat(2, 1)))?
        .sub(&q.scale(&rat(3, 1)))?;
    let v1 = e
        .mul(&e2)?
        .neg()
        .mul(&v1a)?
        .div(&d1.mul(&shared)?.scale(&rat(8, 1)))?;

    let k7 = {
        let vars = ["e"];
        let v = MPoly::var(&vars, "e").expect("var in list");
        let c = |k: i64| MPoly::constant(&vars, rat(k, 1));
        let mut acc = MPoly::zero(&vars);
        for &k in &[81i64, 1800, 11428, 23370, 3657, -4768, -369, 234] {
            acc = acc.mul(&v).add(&c(k));
        }
        acc.eval_quad(&[e.clone()])?
    };
    let pref = {
        let vars = ["e", "q"];
        let v = |n: &str| MPoly::var(&vars, n).expect("var in list");
        let (ev, qv) = (v("e"), v("q"));
        let c = |k: i64| MPoly::constant(&vars, rat(k, 1));
        let ep = |coeffs: &[i64]| -> MPoly {
            let mut acc = MPoly::zero(&vars);
            for &k in coeffs {
                acc = acc.mul(&ev).add(&c(k));
            }
            acc
        };
        ep(&[-93, -676, -617, 2551, 94, -580, 104])
            .add(&ep(&[-9, -8, 459, 1303, -442, -372, 104]).mul(&qv))
            .eval_quad(&[e.clone(), q.clone()])?
    };
    let d2 = one
        .add(&q)?
        .sub(&g.mul(e)?.scale(&rat(2, 1)))?;
    let v2 = e
        .neg()
        .mul(&pref)?
        .mul(&v2a)?
        .div(
            &g.mul(g)?
                .mul(&d2)?
                .mul(&shared.pow(3)?)?
                .mul(&k7)?
                .scale(&rat(576, 1)),
        )?;
    Ok((v1, v2))
}

// ---------------------------------------------------------------------------
// closed forms, second model

// coefficient table of v1a * X2, term order (deg_e, deg_a, deg_X2, coeff)
const MODEL2_V1A_X2_TERMS: &[(u32, u32, u32, i64)] = &[
    (0, 2, 2, 1),
    (0, 3, 2, -1),
    (1, 0, 1, 2),
    (1, 1, 2, 1),
    (1, 2, 2, 2),
    (1, 2, 3, -3),
    (1, 3, 3, 5),
    (2, 1, 2, -1),
    (2, 1, 3, 3),
    (2, 2, 3, -8),
    (2, 2, 4, 4),
    (2, 3, 4, -12),
    (2, 4, 5, -2),
    (3, 1, 3, 3),
    (3, 2, 4, 12),
    (3, 3, 5, 14),
    (3, 4, 6, 4),
];

/// Sign-carrying factor of the second model's first focus value over its
/// hierarchy chart (e, a, X2).
///
/// This is the frame derivation's own numerator, equal to
/// (1/X2)[2(1+aX2)²(1+a+a²X2) - (1-eX2)(...)] in grouped form; the grouped
/// transcription circulating with the model carries two exponent slips
/// (both a²X2 -> a²X2² fixes), which the unit tests pin down against this
/// table and against the derivation.
pub fn model2_v1a_poly() -> MPoly {
    let vars = ["e", "a", "X2"];
    MPoly::from_terms(
        &vars,
        MODEL2_V1A_X2_TERMS
            .iter()
            .map(|&(de, da, dx, c)| (vec![de, da, dx - 1], rat(c, 1))),
    )
}

/// Rescaled sign representative of the second model's second focus value
/// over (e, a, X2): a reduced form whose zero set and sign pattern match
/// v2a on the admissible region, but whose magnitude carries an extra
/// positive parameter-dependent factor. Use it for sign scans only.
pub fn model2_v2a_sign_poly() -> MPoly {
    let vars = ["e", "a", "X2"];
    MPoly::from_terms(
        &vars,
        MODEL2_V2A_SIGN_TERMS
            .iter()
            .map(|&(de, da, dx, c)| (vec![de, da, dx], rat(c, 1))),
    )
}

/// Exact second-model closed forms at a rational chart point:
/// (v0, v1, v1a, omega²). All four are rational; only v2 and v3 need the
/// extension by omega and those come from the engine.
pub fn model2_closed_exact(
    e: &RatNum,
    a: &RatNum,
    x2: &RatNum,
) -> Result<(RatNum, RatNum, RatNum, RatNum)> {
    let one = RatNum::one();
    let sat = &one + a * x2;
    let m21 = a * (&one - rat(2, 1) * e * x2) - e;
    let omega_sq = x2 * (&one - e * x2 - x2 * &m21 * &m21);
    if !omega_sq.is_positive() {
        return Err(Error::NotApplicable(format!(
            "omega² = det(J) must be positive, got {omega_sq}"
        )));
    }
    let v1a = model2_v1a_poly().eval_rat(&[e.clone(), a.clone(), x2.clone()]);
    // v1 = -a X2 v1a / (8 omega² (1+aX2)²)
    let v1 = -(a * x2 * &v1a) / (rat(8, 1) * &omega_sq * &sat * &sat);
    // v0: response of the multiplied trace to d at the pinned equilibrium
    let v0 = -(&one - e * x2) * &sat * &sat;
    Ok((v0, v1, v1a, omega_sq))
}

// ---------------------------------------------------------------------------
// closed-form focus values, numeric front end

fn not_applicable_if(cond: bool, name: &str, value: &BigFloat) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::NotApplicable(format!(
            "{name} fails (value {value})"
        )))
    }
}

/// Evaluates the printed closed-form focus values of a chart at 256-bit
/// precision.
///
/// v1 and v2 of the first model come from the printed prefactor-times-
/// factor forms in both charts; the second model's v1 comes from its
/// printed prefactor and v1a. Values the source leaves unprinted (v3 in
/// every chart, v2/v3 of the second model) are filled by the recursion
/// engine scaled by omega, which carries the same normalization: the v_k
/// here equal omega times the unit-frame coefficients.
pub fn focus_values_closed_form(chart: FocusChart, point: &ParamPoint) -> Result<FocusValues> {
    let prec = DEFAULT_PREC;
    match chart {
        FocusChart::Model1Hierarchy => {
            let g = require_as_bf(point, "g", prec)?;
            let x2 = require_as_bf(point, "X2", prec)?;
            let one = BigFloat::one(prec);
            let vals = [g.clone(), x2.clone()];
            let f4 = model1_f4_poly().eval_bf(&vals, prec);
            not_applicable_if(g.is_positive(), "g > 0", &g)?;
            not_applicable_if(x2.sub_ref(&g).is_positive(), "X2 > g", &x2.sub_ref(&g))?;
            let y2 = one.sub_ref(
                &g.mul_ref(&x2.sub_ref(&g)).div_ref(&x2), // e X2 with e = g(X2-g)/X2²
            );
            not_applicable_if(y2.is_positive(), "Y2 > 0", &y2)?;
            not_applicable_if(f4.is_positive(), "omega² = det(J) > 0", &f4)?;

            let v1a = model1_v1a_poly().eval_bf(&vals, prec);
            let v2a = model1_v2a_poly().eval_bf(&vals, prec);
            let x2sq = x2.mul_ref(&x2);
            let gxg = g.mul_ref(&x2.sub_ref(&g));
            let v1 = gxg
                .mul_ref(&v1a)
                .div_ref(&bf(8, prec).mul_ref(&x2sq.mul_ref(&x2sq)).mul_ref(&f4));
            let v2_den = bf(288, prec)
                .mul_ref(&x2.powi(7))
                .mul_ref(
                    &g.mul_ref(&g)
                        .sub_ref(&g.sub_ref(&one).mul_ref(&x2)),
                )
                .mul_ref(&f4.powi(3));
            let v2 = gxg.mul_ref(&v2a).div_ref(&v2_den);
            let v0 = one
                .sub_ref(&g)
                .mul_ref(&x2sq)
                .add_ref(&bf(2, prec).mul_ref(&g).mul_ref(&g).mul_ref(&x2))
                .sub_ref(&g.powi(3))
                .div_ref(&bf(2, prec).mul_ref(&g).mul_ref(&x2))
                .neg_ref();
            let n = y2.mul_ref(&x2.sub_ref(&g)).div_ref(&g);
            let s = n.add_ref(&y2);
            let omega = s
                .mul_ref(&s)
                .mul_ref(&g.mul_ref(&f4))
                .div_ref(&x2sq)
                .sqrt()?;
            let etas = unit_frame_focus_values(BuiltinSystem::Bazykin1, point, 3, prec)?;
            Ok(FocusValues {
                v3: omega.mul_ref(&etas[2]),
                omega,
                v0,
                v1,
                v2,
                convention: FvConvention::ClosedForm,
            })
        }
        FocusChart::Model1ParamPlane => {
            let g = require_as_bf(point, "g", prec)?;
            let e = require_as_bf(point, "e", prec)?;
            let one = BigFloat::one(prec);
            not_applicable_if(e.is_positive(), "e > 0", &e)?;
            let quarter_gap = BigFloat::from_rat(&rat(1, 4), prec).sub_ref(&e);
            not_applicable_if(quarter_gap.is_positive(), "e < 1/4", &quarter_gap)?;
            not_applicable_if(g.is_positive(), "g > 0", &g)?;
            let q = one.sub_ref(&bf(4, prec).mul_ref(&e)).sqrt()?;
            let x2 = g.mul_ref(&one.sub_ref(&q)).div_ref(&bf(2, prec).mul_ref(&e));
            let room = one.div_ref(&e).sub_ref(&x2);
            not_applicable_if(room.is_positive(), "X2 < 1/e", &room)?;
            let det = g.mul_ref(
                &one.add_ref(&e.mul_ref(&g))
                    .sub_ref(&bf(2, prec).mul_ref(&e).mul_ref(&x2)),
            );
            not_applicable_if(det.is_positive(), "omega² = det(J) > 0", &det)?;

            let vals = [g.clone(), e.clone(), q.clone()];
            let v1a = model1_plane_v1a_poly().eval_bf(&vals, prec);
            let v2a = model1_plane_v2a_poly().eval_bf(&vals, prec);
            let e2 = e.add_ref(&bf(2, prec));
            let shared = one
                .sub_ref(&e)
                .add_ref(&q)
                .sub_ref(&g.mul_ref(&e).mul_ref(&e2));
            let d1 = one
                .sub_ref(&bf(8, prec).mul_ref(&e))
                .sub_ref(&bf(2, prec).mul_ref(&e).mul_ref(&e))
                .sub_ref(&bf(3, prec).mul_ref(&q));
            let v1 = e
                .mul_ref(&e2)
                .mul_ref(&v1a)
                .div_ref(&bf(8, prec).mul_ref(&d1).mul_ref(&shared))
                .neg_ref();

            let horner = |coeffs: &[i64]| -> BigFloat {
                let mut acc = BigFloat::zero(prec);
                for &k in coeffs {
                    acc = acc.mul_ref(&e).add_ref(&bf(k, prec));
                }
                acc
            };
            let k7 = horner(&[81, 1800, 11428, 23370, 3657, -4768, -369, 234]);
            let pref = horner(&[-93, -676, -617, 2551, 94, -580, 104]).add_ref(
                &horner(&[-9, -8, 459, 1303, -442, -372, 104]).mul_ref(&q),
            );
            let d2 = one
                .add_ref(&q)
                .sub_ref(&bf(2, prec).mul_ref(&g).mul_ref(&e));
            let v2 = e
                .mul_ref(&pref)
                .mul_ref(&v2a)
                .div_ref(
                    &bf(576, prec)
                        .mul_ref(&g)
                        .mul_ref(&g)
                        .mul_ref(&d2)
                        .mul_ref(&shared.powi(3))
                        .mul_ref(&k7),
                )
                .neg_ref();

            let y2 = one.sub_ref(&e.mul_ref(&x2));
            let n = y2.mul_ref(&x2.sub_ref(&g)).div_ref(&g);
            let v0 = one.add_ref(&n).div_ref(&bf(2, prec)).neg_ref();
            let s = n.add_ref(&y2);
            let omega = s.mul_ref(&s).mul_ref(&det).sqrt()?;
            let mut hier = ParamPoint::new();
            hier.set_big("g", g.clone());
            hier.set_big("X2", x2.clone());
            let etas = unit_frame_focus_values(BuiltinSystem::Bazykin1, &hier, 3, prec)?;
            Ok(FocusValues {
                v3: omega.mul_ref(&etas[2]),
                omega,
                v0,
                v1,
                v2,
                convention: FvConvention::ClosedForm,
            })
        }
        FocusChart::Model2Hierarchy => {
            let e = require_as_bf(point, "e", prec)?;
            let a = require_as_bf(point, "a", prec)?;
            let x2 = require_as_bf(point, "X2", prec)?;
            let one = BigFloat::one(prec);
            not_applicable_if(e.is_positive(), "e > 0", &e)?;
            not_applicable_if(a.is_positive(), "a > 0", &a)?;
            not_applicable_if(x2.is_positive(), "X2 > 0", &x2)?;
            let y_ex = one.sub_ref(&e.mul_ref(&x2));
            not_applicable_if(y_ex.is_positive(), "1 - e X2 > 0", &y_ex)?;
            let m21 = a
                .mul_ref(&one.sub_ref(&bf(2, prec).mul_ref(&e).mul_ref(&x2)))
                .sub_ref(&e);
            not_applicable_if(m21.is_positive(), "d > 0", &m21)?;
            let sat = one.add_ref(&a.mul_ref(&x2));
            let g = x2
                .mul_ref(&one.add_ref(&e).sub_ref(&m21))
                .div_ref(&sat);
            not_applicable_if(g.is_positive(), "g > 0", &g)?;
            let omega_sq = x2.mul_ref(&y_ex.sub_ref(&x2.mul_ref(&m21).mul_ref(&m21)));
            not_applicable_if(omega_sq.is_positive(), "omega² = det(J) > 0", &omega_sq)?;

            let v1a = model2_v1a_poly().eval_bf(&[e.clone(), a.clone(), x2.clone()], prec);
            let v1 = a
                .mul_ref(&x2)
                .mul_ref(&v1a)
                .div_ref(
                    &bf(8, prec)
                        .mul_ref(&omega_sq)
                        .mul_ref(&sat)
                        .mul_ref(&sat),
                )
                .neg_ref();
            let v0 = y_ex.mul_ref(&sat).mul_ref(&sat).neg_ref();
            let omega = omega_sq.sqrt()?;
            let etas = unit_frame_focus_values(BuiltinSystem::Bazykin2, point, 3, prec)?;
            Ok(FocusValues {
                v2: omega.mul_ref(&etas[1]),
                v3: omega.mul_ref(&etas[2]),
                omega,
                v0,
                v1,
                convention: FvConvention::ClosedForm,
            })
        }
    }
}

// ---------------------------------------------------------------------------
// transversality

/// Derivative of the eigenvalue real part in one original parameter,
/// following the equilibrium: d(tr/2)/dp with the equilibrium tracked
/// through the implicit function theorem on the untransformed field.
/// Reported at 256-bit precision; a vanishing derivative is flagged rather
/// than silently returned.
pub fn transversality_v0(
    model: BuiltinSystem,
    hp: &HopfPoint,
    direction: &str,
) -> Result<Transversality> {
    let prec = DEFAULT_PREC;
    let sys = builtin_system(model);
    if !sys.parameter_names.iter().any(|p| p == direction) {
        return Err(Error::InvalidArgument(format!(
            "direction {direction} is not a parameter of {}",
            sys.name
        )));
    }

    // state values at the Hopf point
    let e = require_as_bf(&hp.params, "e", prec)?;
    let one = BigFloat::one(prec);
    let y2 = match model {
        BuiltinSystem::Bazykin1 => one.sub_ref(&e.mul_ref(&hp.x2)),
        BuiltinSystem::Bazykin2 => {
            let a = require_as_bf(&hp.params, "a", prec)?;
            one.sub_ref(&e.mul_ref(&hp.x2))
                .mul_ref(&one.add_ref(&a.mul_ref(&hp.x2)))
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "no transversality analysis is defined for {other}"
            )))
        }
    };
    let mut vals = vec![hp.x2.clone(), y2];
    for name in &sys.parameter_names {
        vals.push(require_as_bf(&hp.params, name, prec)?);
    }

    let j = sys.symbolic_jacobian()?;
    let ev = |rf: &RatFunc| -> Result<BigFloat> { rf.eval_bf(&vals, prec) };
    let j00 = ev(&j[0][0])?;
    let j01 = ev(&j[0][1])?;
    let j10 = ev(&j[1][0])?;
    let j11 = ev(&j[1][1])?;
    let det = j00.mul_ref(&j11).sub_ref(&j01.mul_ref(&j10));
    if det.is_zero() {
        return Err(Error::DegenerateInput(
            "singular Jacobian: the equilibrium does not track this direction".into(),
        ));
    }

    // equilibrium response: J dz = -f_p
    let f1p = ev(&sys.rhs_x.derivative(direction)?)?;
    let f2p = ev(&sys.rhs_y.derivative(direction)?)?;
    let dz0 = j01.mul_ref(&f2p).sub_ref(&j11.mul_ref(&f1p)).div_ref(&det);
    let dz1 = j10.mul_ref(&f1p).sub_ref(&j00.mul_ref(&f2p)).div_ref(&det);

    let x = sys.state_vars[0].clone();
    let y = sys.state_vars[1].clone();
    let tr = j[0][0].add(&j[1][1]);
    let dtr = ev(&tr.derivative(&x)?)?
        .mul_ref(&dz0)
        .add_ref(&ev(&tr.derivative(&y)?)?.mul_ref(&dz1))
        .add_ref(&ev(&tr.derivative(direction)?)?);
    let value = dtr.div_ref(&bf(2, prec));
    let degenerate = value.abs_below_pow10(-50);
    Ok(Transversality {
        value: if degenerate {
            BigFloat::zero(prec)
        } else {
            value
        },
        degenerate,
    })
}

// ---------------------------------------------------------------------------
// amplitude prediction

/// Positive roots r of v0mu + v1 r² + v2 r⁴ = 0 in ascending order: the
/// leading-order amplitudes of the bifurcating cycles.
pub fn normal_form_amplitudes(
    v0mu: &BigFloat,
    v1: &BigFloat,
    v2: &BigFloat,
) -> Result<Vec<BigFloat>> {
    if v1.is_zero() && v2.is_zero() {
        return Err(Error::DegenerateInput(
            "both r² and r⁴ coefficients vanish; the truncation predicts nothing".into(),
        ));
    }
    let prec = [v0mu, v1, v2]
        .iter()
        .map(|b| b.precision())
        .max()
        .unwrap_or(DEFAULT_PREC);
    let mut squares: Vec<BigFloat> = Vec::new();
    if v2.is_zero() {
        squares.push(v0mu.div_ref(v1).neg_ref());
    } else {
        let disc = v1
            .mul_ref(v1)
            .sub_ref(&bf(4, prec).mul_ref(v2).mul_ref(v0mu));
        if disc.is_negative() {
            return Ok(Vec::new());
        }
        let root = disc.sqrt()?;
        let two_v2 = bf(2, prec).mul_ref(v2);
        let u1 = v1.neg_ref().add_ref(&root).div_ref(&two_v2);
        let u2 = v1.neg_ref().sub_ref(&root).div_ref(&two_v2);
        squares.push(u1.clone());
        if !root.is_zero() {
            squares.push(u2);
        }
    }
    let mut out: Vec<BigFloat> = Vec::new();
    for u in squares {
        if u.is_positive() {
            out.push(u.sqrt()?);
        }
    }
    out.sort_by(|a, b| a.cmp_ref(b));
    Ok(out)
}

// expansion of the reduced second-focus-value representative, scaled by 4
// to clear denominators (sign preserving); 146 terms, degrees (8, 9, 7) in
// (e, a, X2)
const MODEL2_V2A_SIGN_TERMS: &[(u32, u32, u32, i64)] = &[
    (0, 2, 1, 207462),
    (0, 2, 2, 3099),
    (0, 3, 1, -601944),
    (0, 3, 2, -32439),
    (0, 4, 1, 634596),
    (0, 4, 2, 100320),
    (0, 4, 3, 2424),
    (0, 5, 1, -240114),
    (0, 5, 2, -120192),
    (0, 5, 3, -12132),
    (0, 6, 2, 49212),
    (0, 6, 3, 18096),
    (0, 6, 4, 708),
    (0, 7, 3, -8388),
    (0, 7, 4, -1656),
    (0, 8, 4, 948),
    (0, 8, 5, 24),
    (0, 9, 5, -24),
    (1, 0, 0, 414924),
    (1, 0, 1, 6198),
    (1, 1, 0, -788964),
    (1, 1, 1, 148782),
    (1, 1, 2, 3099),
    (1, 2, 0, 480228),
    (1, 2, 1, -1100994),
    (1, 2, 2, -769302),
    (1, 2, 3, -11043),
    (1, 3, 1, 1473546),
    (1, 3, 2, 2657502),
    (1, 3, 3, 131037),
    (1, 4, 1, -377196),
    (1, 4, 2, -3130974),
    (1, 4, 3, -457404),
    (1, 4, 4, -9888),
    (1, 5, 2, 1334652),
    (1, 5, 3, 619344),
    (1, 5, 4, 57912),
    (1, 6, 3, -288048),
    (1, 6, 4, -99960),
    (1, 6, 5, -3876),
    (1, 7, 4, 40104),
    (1, 7, 5, 8100),
    (1, 8, 5, -7332),
    (1, 8, 6, -336),
    (1, 9, 6, 384),
    (2, 0, 0, -2526792),
    (2, 0, 1, -257148),
    (2, 0, 2, -3492),
    (2, 1, 0, 1714848),
    (2, 1, 1, -840378),
    (2, 1, 2, 537753),
    (2, 1, 3, 7551),
    (2, 2, 1, -169548),
    (2, 2, 2, 1464306),
    (2, 2, 3, 1164726),
    (2, 2, 4, 18066),
    (2, 3, 1, -95616),
    (2, 3, 2, -5645772),
    (2, 3, 3, -5421054),
    (2, 3, 4, -239178),
    (2, 4, 2, 2455596),
    (2, 4, 3, 7474890),
    (2, 4, 4, 561036),
    (2, 4, 5, 13050),
    (2, 5, 3, -3698622),
    (2, 5, 4, -761844),
    (2, 5, 5, -75036),
    (2, 6, 4, 358380),
    (2, 6, 5, 129648),
    (2, 6, 6, 5400),
    (2, 7, 5, -69828),
    (2, 7, 6, -15312),
    (2, 8, 6, 10584),
    (2, 8, 7, 576),
    (2, 9, 7, -672),
    (3, 0, 0, 3140700),
    (3, 0, 1, 1144104),
    (3, 0, 2, 93144),
    (3, 0, 3, 864),
    (3, 1, 1, 1823370),
    (3, 1, 2, -2796888),
    (3, 1, 3, -349587),
    (3, 1, 4, -4806),
    (3, 2, 1, 2283276),
    (3, 2, 2, 6859350),
    (3, 2, 3, -2552664),
    (3, 2, 4, -547800),
    (3, 2, 5, -8280),
    (3, 3, 2, 1499220),
    (3, 3, 3, 15386670),
    (3, 3, 4, 5760612),
    (3, 3, 5, 186366),
    (3, 4, 3, -8166348),
    (3, 4, 4, -7507812),
    (3, 5, 4, 4178724),
    (4, 0, 1, -1128780),
    (4, 0, 2, -311664),
    (4, 0, 3, -14856),
    (4, 1, 1, -1570350),
    (4, 1, 2, 187332),
    (4, 1, 3, 1227582),
    (4, 1, 4, 130986),
    (4, 1, 5, 1296),
    (4, 2, 2, -10614120),
    (4, 2, 3, -12293814),
    (4, 2, 4, 441432),
    (4, 2, 5, 154776),
    (4, 2, 6, 1728),
    (4, 3, 3, -7912080),
    (4, 3, 4, -22622664),
    (4, 3, 5, -2740176),
    (4, 3, 6, -72492),
    (4, 4, 4, 12012972),
    (5, 0, 2, 248712),
    (5, 0, 3, 38472),
    (5, 1, 2, 5275440),
    (5, 1, 3, 205566),
    (5, 1, 4, -313692),
    (5, 1, 5, -21084),
    (5, 2, 3, 21891012),
    (5, 2, 4, 5550780),
    (5, 2, 5, 58176),
    (5, 2, 6, -18768),
    (5, 3, 4, 22164348),
    (5, 3, 5, 8466024),
    (5, 3, 6, 786888),
    (5, 3, 7, 12600),
    (6, 0, 3, -25224),
    (6, 1, 3, -1817526),
    (6, 1, 4, -114612),
    (6, 1, 5, 35136),
    (6, 2, 4, -7139916),
    (6, 2, 5, -1470216),
    (6, 2, 6, -27864),
    (6, 3, 5, -6871272),
    (6, 3, 6, -1946232),
    (6, 3, 7, -102672),
    (7, 1, 4, 385728),
    (7, 1, 5, 19584),
    (7, 2, 5, 1442388),
    (7, 2, 6, 174600),
    (7, 3, 6, 1325832),
    (7, 3, 7, 206736),
    (8, 1, 5, -37932),
    (8, 2, 6, -135696),
    (8, 3, 7, -119664),
];
