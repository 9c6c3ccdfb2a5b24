//! Planar parameterized vector fields with rational right-hand sides.
//!
//! A [`PlanarSystem`] stores each component of the field as a rational
//! function (numerator/denominator pair of [`MPoly`]) over the combined
//! variable list: the two state variables first, then the parameters in
//! declared order. The built-in catalog covers the two predator-prey models,
//! the two codimension-three parametric simplest normal forms, and the
//! fifth-order classical normal form family.
//!
//! Evaluation is exact whenever every input is rational; otherwise it runs
//! in [`BigFloat`] arithmetic at the largest precision appearing among the
//! inputs.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{rat, rat_from_decimal_str, BigFloat, MPoly, RatNum, DEFAULT_PREC, MIN_PREC};
use crate::error::{Error, Result};

/// A number that is either exact or a correctly rounded dyadic float.
///
/// Exactness is sticky: operations that receive only `Rat` inputs stay in
/// rational arithmetic, and the float path is entered only when at least one
/// input is already a float.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Rat(RatNum),
    Big(BigFloat),
}

impl Scalar {
    pub fn from_i64(v: i64) -> Self {
        Scalar::Rat(rat(v, 1))
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rat(_))
    }

    pub fn as_rat(&self) -> Option<&RatNum> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Big(_) => None,
        }
    }

    /// Precision carried by a float value; exact values report `None`.
    pub fn float_precision(&self) -> Option<u32> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Big(b) => Some(b.precision()),
        }
    }

    pub fn to_bigfloat(&self, prec: u32) -> BigFloat {
        match self {
            Scalar::Rat(r) => BigFloat::from_rat(r, prec),
            Scalar::Big(b) => b.round_to(prec),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            // round through a 64-bit BigFloat so the double is correctly
            // rounded even for huge numerator/denominator pairs
            Scalar::Rat(r) => BigFloat::from_rat(r, MIN_PREC).to_f64(),
            Scalar::Big(b) => b.to_f64(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Big(b) => b.is_zero(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Big(b) => write!(f, "{b}"),
        }
    }
}

/// Rational function as a numerator/denominator pair over a shared variable
/// list. Construction normalizes both parts by content (the denominator's
/// leading sign is folded into the numerator) but does not cancel common
/// polynomial factors; callers that need cancellation do it explicitly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatFunc {
    pub num: MPoly,
    pub den: MPoly,
}

impl RatFunc {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidArgument(
                "rational function with identically zero denominator".into(),
            ));
        }
        Ok(Self::normalized(num, den))
    }

    /// Polynomial viewed as a rational function with unit denominator.
    pub fn poly(num: MPoly) -> Self {
        let vars: Vec<&str> = num.vars().iter().map(|s| s.as_str()).collect();
        let den = MPoly::one(&vars);
        Self { num, den }
    }

    fn normalized(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            let vars: Vec<&str> = den.vars().iter().map(|s| s.as_str()).collect();
            return Self {
                num,
                den: MPoly::one(&vars),
            };
        }
        // Divide out the positive content of each part, then move the
        // denominator's sign to the numerator so the denominator's
        // lexicographically leading coefficient is positive.
        let cn = num.content();
        let cd = den.content();
        let mut num = num.scale(&(cn.recip()));
        let den_scaled = den.scale(&cd.recip());
        let ratio = cn / cd;
        num = num.scale(&ratio);
        let den_prim = den_scaled.primitive_part();
        if den_prim != den_scaled {
            // primitive_part flipped the sign; mirror it on the numerator
            num = num.neg();
        }
        Self { num, den: den_prim }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::normalized(num, den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::normalized(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    /// Partial derivative by the quotient rule; the result keeps den² even
    /// when the denominator is constant in `var`.
    pub fn derivative(&self, var: &str) -> Result<Self> {
        let dn = self.num.derivative(var)?;
        if self.den.is_constant() {
            return RatFunc::new(dn, self.den.clone());
        }
        let dd = self.den.derivative(var)?;
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        let den = self.den.mul(&self.den);
        RatFunc::new(num, den)
    }

    /// Substitutes a rational function for one variable.
    ///
    /// For a part P of degree d in `var`, P(p/q) is assembled as
    /// sum c_k p^k q^(d-k) over q^d, which keeps everything polynomial.
    pub fn subst(&self, var: &str, value: &RatFunc) -> Result<Self> {
        let (nn, nd) = subst_rat_in_poly(&self.num, var, value)?;
        let (dn, dd) = subst_rat_in_poly(&self.den, var, value)?;
        if dn.is_zero() {
            return Err(Error::SingularEvaluation(self.den.to_string()));
        }
        RatFunc::new(nn.mul(&dd), nd.mul(&dn))
    }

    pub fn eval_rat(&self, values: &[RatNum]) -> Result<RatNum> {
        let d = self.den.eval_rat(values);
        if d.is_zero() {
            return Err(Error::SingularEvaluation(self.den.to_string()));
        }
        Ok(self.num.eval_rat(values) / d)
    }

    pub fn eval_bf(&self, values: &[BigFloat], prec: u32) -> Result<BigFloat> {
        let d = self.den.eval_bf(values, prec);
        if d.is_zero() {
            return Err(Error::SingularEvaluation(self.den.to_string()));
        }
        Ok(self.num.eval_bf(values, prec).div_ref(&d))
    }

    /// Exact evaluation in a quadratic extension; all values must share a
    /// radicand or be rational.
    pub fn eval_quad(&self, values: &[crate::algebra::QuadExt]) -> Result<crate::algebra::QuadExt> {
        let d = self.den.eval_quad(values)?;
        if d.is_zero() {
            return Err(Error::SingularEvaluation(self.den.to_string()));
        }
        self.num.eval_quad(values)?.div(&d)
    }

    /// Exact equality as rational functions, checked by cross-multiplication
    /// so representatives need not be reduced.
    pub fn equivalent(&self, other: &Self) -> bool {
        self.num.mul(&other.den).sub(&other.num.mul(&self.den)).is_zero()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.constant_value().map(|c| c.is_one()) == Some(true) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

fn subst_rat_in_poly(p: &MPoly, var: &str, value: &RatFunc) -> Result<(MPoly, MPoly)> {
    let coeffs = p.coeffs_in(var)?;
    let d = coeffs.len().saturating_sub(1) as u32;
    let mut num = MPoly::zero(&[]);
    for (k, c) in coeffs.iter().enumerate() {
        let term = c
            .mul(&value.num.pow(k as u32))
            .mul(&value.den.pow(d - k as u32));
        num = num.add(&term);
    }
    Ok((num, value.den.pow(d)))
}

/// Assignment of concrete values to parameter names. Exact rationals are
/// preserved as such; float entries carry their own precision.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParamPoint {
    values: BTreeMap<String, Scalar>,
}

impl ParamPoint {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, name: &str, value: Scalar) -> &mut Self {
        self.values.insert(name.to_string(), value);
        self
    }

    pub fn set_rat(&mut self, name: &str, value: RatNum) -> &mut Self {
        self.set(name, Scalar::Rat(value))
    }

    pub fn set_big(&mut self, name: &str, value: BigFloat) -> &mut Self {
        self.set(name, Scalar::Big(value))
    }

    /// Builds a point from `(name, value)` pairs of exact rationals.
    pub fn from_rats(pairs: &[(&str, RatNum)]) -> Self {
        let mut p = Self::new();
        for (n, v) in pairs {
            p.set_rat(n, v.clone());
        }
        p
    }

    pub fn get(&self, name: &str) -> Option<&Scalar> {
        self.values.get(name)
    }

    pub fn require(&self, name: &str) -> Result<&Scalar> {
        self.get(name)
            .ok_or_else(|| Error::InvalidArgument(format!("missing parameter {name}")))
    }

    /// The exact rational value of a parameter, or an error if it was
    /// supplied as a float.
    pub fn require_rat(&self, name: &str) -> Result<&RatNum> {
        match self.require(name)? {
            Scalar::Rat(r) => Ok(r),
            Scalar::Big(_) => Err(Error::InvalidArgument(format!(
                "parameter {name} must be an exact rational here"
            ))),
        }
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.values.keys().map(|s| s.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Scalar)> {
        self.values.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn covers(&self, sys: &PlanarSystem) -> Result<()> {
        for p in &sys.parameter_names {
            if !self.values.contains_key(p) {
                return Err(Error::InvalidArgument(format!(
                    "parameter point does not assign {p}"
                )));
            }
        }
        Ok(())
    }

    /// Parses `k=v` assignments separated by commas. Values written as
    /// `p/q` become exact rationals; plain integers and decimal strings are
    /// also read exactly (a decimal literal is a rational with a power of
    /// ten denominator).
    pub fn parse_assignments(s: &str) -> Result<Self> {
        let mut point = Self::new();
        for piece in s.split(',') {
            let piece = piece.trim();
            if piece.is_empty() {
                continue;
            }
            let (name, value) = piece.split_once('=').ok_or_else(|| {
                Error::InvalidArgument(format!("expected name=value, got {piece:?}"))
            })?;
            let name = name.trim();
            let value = value.trim();
            let rat_value = if let Some((n, d)) = value.split_once('/') {
                let n: num::BigInt = n
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad numerator in {piece:?}")))?;
                let d: num::BigInt = d
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad denominator in {piece:?}")))?;
                if d.is_zero() {
                    return Err(Error::InvalidArgument(format!(
                        "zero denominator in {piece:?}"
                    )));
                }
                RatNum::new(n, d)
            } else {
                rat_from_decimal_str(value)?
            };
            point.set_rat(name, rat_value);
        }
        Ok(point)
    }
}

/// Planar vector field with rational right-hand sides.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanarSystem {
    pub name: String,
    pub state_vars: [String; 2],
    pub parameter_names: Vec<String>,
    pub rhs_x: RatFunc,
    pub rhs_y: RatFunc,
}

impl PlanarSystem {
    pub fn new(
        name: &str,
        state_vars: [&str; 2],
        parameter_names: &[&str],
        rhs_x: RatFunc,
        rhs_y: RatFunc,
    ) -> Result<Self> {
        if state_vars[0] == state_vars[1] {
            return Err(Error::InvalidArgument(
                "state variables must be distinct".into(),
            ));
        }
        let mut all: Vec<&str> = vec![state_vars[0], state_vars[1]];
        for p in parameter_names {
            if all.contains(p) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate variable name {p}"
                )));
            }
            all.push(p);
        }
        // with_vars rejects any polynomial mentioning a variable outside the
        // declared list, which is exactly the wanted validation, and aligns
        // every part on one ordering for evaluation.
        let align = |rf: RatFunc| -> Result<RatFunc> {
            Ok(RatFunc {
                num: rf.num.with_vars(&all)?,
                den: rf.den.with_vars(&all)?,
            })
        };
        Ok(Self {
            name: name.to_string(),
            state_vars: [state_vars[0].to_string(), state_vars[1].to_string()],
            parameter_names: parameter_names.iter().map(|s| s.to_string()).collect(),
            rhs_x: align(rhs_x)?,
            rhs_y: align(rhs_y)?,
        })
    }

    /// State variables followed by parameters, the evaluation order of every
    /// stored polynomial.
    pub fn all_vars(&self) -> Vec<String> {
        let mut v = vec![self.state_vars[0].clone(), self.state_vars[1].clone()];
        v.extend(self.parameter_names.iter().cloned());
        v
    }

    fn ordered_scalars(&self, state: &[Scalar; 2], params: &ParamPoint) -> Result<Vec<Scalar>> {
        params.covers(self)?;
        let mut vals = vec![state[0].clone(), state[1].clone()];
        for p in &self.parameter_names {
            vals.push(params.require(p)?.clone());
        }
        Ok(vals)
    }

    /// Evaluates the right-hand side. Exact when every input is rational;
    /// otherwise computed in BigFloat at the largest input precision.
    pub fn rhs_eval(&self, state: &[Scalar; 2], params: &ParamPoint) -> Result<[Scalar; 2]> {
        let vals = self.ordered_scalars(state, params)?;
        eval_pair(&self.rhs_x, &self.rhs_y, &vals)
    }

    /// Exact partial derivatives of the right-hand side by the two state
    /// variables: row i is the gradient of component i.
    pub fn symbolic_jacobian(&self) -> Result<[[RatFunc; 2]; 2]> {
        let x = self.state_vars[0].as_str();
        let y = self.state_vars[1].as_str();
        Ok([
            [self.rhs_x.derivative(x)?, self.rhs_x.derivative(y)?],
            [self.rhs_y.derivative(x)?, self.rhs_y.derivative(y)?],
        ])
    }

    /// Jacobian evaluated at a point, with the same exactness contract as
    /// [`rhs_eval`](Self::rhs_eval).
    pub fn jacobian_eval(
        &self,
        state: &[Scalar; 2],
        params: &ParamPoint,
    ) -> Result<[[Scalar; 2]; 2]> {
        let vals = self.ordered_scalars(state, params)?;
        let j = self.symbolic_jacobian()?;
        let row0 = eval_pair(&j[0][0], &j[0][1], &vals)?;
        let row1 = eval_pair(&j[1][0], &j[1][1], &vals)?;
        Ok([row0, row1])
    }

    /// Clears denominators by the shared factor, realizing the state
    /// dependent time rescaling used throughout the normal form analysis
    /// (n+Y for the first model, 1+aX for the second).
    ///
    /// When the two components carry distinct denominators the product is
    /// used, so each component stays polynomial either way.
    pub fn polynomialized(&self) -> Result<PlanarSystem> {
        let common = if self.rhs_x.den == self.rhs_y.den {
            self.rhs_x.den.clone()
        } else {
            self.rhs_x.den.mul(&self.rhs_y.den)
        };
        let clear = |rf: &RatFunc| -> Result<MPoly> {
            common
                .div_exact(&rf.den)
                .map(|q| rf.num.mul(&q))
                .ok_or_else(|| {
                    Error::Internal("denominator does not divide the common factor".into())
                })
        };
        let fx = clear(&self.rhs_x)?;
        let fy = clear(&self.rhs_y)?;
        PlanarSystem::new(
            &self.name,
            [self.state_vars[0].as_str(), self.state_vars[1].as_str()],
            &self
                .parameter_names
                .iter()
                .map(|s| s.as_str())
                .collect::<Vec<_>>(),
            RatFunc::poly(fx),
            RatFunc::poly(fy),
        )
    }

    /// Substitutes exact rational values for every parameter, leaving a
    /// system over the state variables alone.
    pub fn specialized(&self, params: &ParamPoint) -> Result<PlanarSystem> {
        params.covers(self)?;
        let state: [&str; 2] = [self.state_vars[0].as_str(), self.state_vars[1].as_str()];
        let subst_all = |p: &MPoly| -> Result<MPoly> {
            let mut q = p.clone();
            for name in &self.parameter_names {
                let v = params.require_rat(name)?;
                q = q.subst_rat(name, v)?;
            }
            q.with_vars(&state)
        };
        let sx = RatFunc::new(subst_all(&self.rhs_x.num)?, subst_all(&self.rhs_x.den)?)?;
        let sy = RatFunc::new(subst_all(&self.rhs_y.num)?, subst_all(&self.rhs_y.den)?)?;
        PlanarSystem::new(&self.name, state, &[], sx, sy)
    }
}

fn eval_pair(fx: &RatFunc, fy: &RatFunc, vals: &[Scalar]) -> Result<[Scalar; 2]> {
    let all_rat = vals.iter().all(Scalar::is_rational);
    if all_rat {
        let rats: Vec<RatNum> = vals
            .iter()
            .map(|s| s.as_rat().expect("checked rational").clone())
            .collect();
        Ok([
            Scalar::Rat(fx.eval_rat(&rats)?),
            Scalar::Rat(fy.eval_rat(&rats)?),
        ])
    } else {
        let prec = vals
            .iter()
            .filter_map(Scalar::float_precision)
            .max()
            .unwrap_or(DEFAULT_PREC);
        let bfs: Vec<BigFloat> = vals.iter().map(|s| s.to_bigfloat(prec)).collect();
        Ok([
            Scalar::Big(fx.eval_bf(&bfs, prec)?),
            Scalar::Big(fy.eval_bf(&bfs, prec)?),
        ])
    }
}

/// Catalog of the systems analyzed in this crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BuiltinSystem {
    /// First predator-prey model: X' = X(1-Y-eX), Y' = Y(-g + XY/(n+Y)).
    Bazykin1,
    /// Second predator-prey model with saturation and predator competition:
    /// X' = X(1-eX-Y/(1+aX)), Y' = Y(-g + X/(1+aX) - dY).
    Bazykin2,
    /// Codimension-three cusp PSNF: y2' = b1 + b2 y2 + b3 y1 y2 + y1^2 - c y1^3 y2.
    PsnfCusp3,
    /// Codimension-three parabolic PSNF: y2' = b1 + b2 y1 + b3 y2 + (9/4) y1 y2 - y1^3.
    PsnfParabolic3,
    /// Fifth-order classical normal form family with coefficients a2..a5, b2..b5.
    Cnf5,
}

impl BuiltinSystem {
    pub const ALL: [BuiltinSystem; 5] = [
        BuiltinSystem::Bazykin1,
        BuiltinSystem::Bazykin2,
        BuiltinSystem::PsnfCusp3,
        BuiltinSystem::PsnfParabolic3,
        BuiltinSystem::Cnf5,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BuiltinSystem::Bazykin1 => "bazykin1",
            BuiltinSystem::Bazykin2 => "bazykin2",
            BuiltinSystem::PsnfCusp3 => "psnf_cusp3",
            BuiltinSystem::PsnfParabolic3 => "psnf_parabolic3",
            BuiltinSystem::Cnf5 => "cnf5",
        }
    }
}

impl FromStr for BuiltinSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bazykin1" => Ok(BuiltinSystem::Bazykin1),
            "bazykin2" => Ok(BuiltinSystem::Bazykin2),
            "psnf_cusp3" => Ok(BuiltinSystem::PsnfCusp3),
            "psnf_parabolic3" => Ok(BuiltinSystem::PsnfParabolic3),
            "cnf5" => Ok(BuiltinSystem::Cnf5),
            other => Err(Error::InvalidArgument(format!(
                "unknown system {other:?}; expected one of bazykin1, bazykin2, psnf_cusp3, psnf_parabolic3, cnf5"
            ))),
        }
    }
}

impl fmt::Display for BuiltinSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Choice between the raw cusp PSNF (coefficient 243/256 on y1^3 y2) and
/// the rescaled variant where that coefficient is 1. Only `psnf_cusp3`
/// distinguishes them; the other builtins have a single printed form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PsnfScaling {
    #[default]
    Normalized,
    Raw,
}

/// Builds a catalog system in its normalized form.
pub fn builtin_system(which: BuiltinSystem) -> PlanarSystem {
    builtin_system_scaled(which, PsnfScaling::Normalized)
}

/// Builds a catalog system, selecting the cusp PSNF scaling explicitly.
pub fn builtin_system_scaled(which: BuiltinSystem, scaling: PsnfScaling) -> PlanarSystem {
    match which {
        BuiltinSystem::Bazykin1 => bazykin1(),
        BuiltinSystem::Bazykin2 => bazykin2(),
        BuiltinSystem::PsnfCusp3 => psnf_cusp3(scaling),
        BuiltinSystem::PsnfParabolic3 => psnf_parabolic3(),
        BuiltinSystem::Cnf5 => cnf5(),
    }
}

fn bazykin1() -> PlanarSystem {
    let vars = ["X", "Y", "g", "e", "n"];
    let v = |name: &str| MPoly::var(&vars, name).expect("var in list");
    let one = MPoly::one(&vars);
    let (x, y, g, e, n) = (v("X"), v("Y"), v("g"), v("e"), v("n"));

    // X' = X (1 - Y - e X)
    let fx = x.mul(&one.sub(&y).sub(&e.mul(&x)));
    // Y' = Y (-g + X Y / (n + Y)) = Y (X Y - g (n + Y)) / (n + Y)
    let den = n.add(&y);
    let fy_num = y.mul(&x.mul(&y).sub(&g.mul(&den)));

    PlanarSystem::new(
        "bazykin1",
        ["X", "Y"],
        &["g", "e", "n"],
        RatFunc::poly(fx),
        RatFunc::new(fy_num, den).expect("nonzero denominator"),
    )
    .expect("well formed builtin")
}

fn bazykin2() -> PlanarSystem {
    let vars = ["X", "Y", "g", "a", "e", "d"];
    let v = |name: &str| MPoly::var(&vars, name).expect("var in list");
    let one = MPoly::one(&vars);
    let (x, y, g, a, e, d) = (v("X"), v("Y"), v("g"), v("a"), v("e"), v("d"));

    let sat = one.add(&a.mul(&x));
    // X' = X (1 - e X - Y / (1 + a X)) = X ((1 - e X)(1 + a X) - Y) / (1 + a X)
    let fx_num = x.mul(&one.sub(&e.mul(&x)).mul(&sat).sub(&y));
    // Y' = Y (-g + X / (1 + a X) - d Y) = Y (X - (g + d Y)(1 + a X)) / (1 + a X)
    let fy_num = y.mul(&x.sub(&g.add(&d.mul(&y)).mul(&sat)));

    PlanarSystem::new(
        "bazykin2",
        ["X", "Y"],
        &["g", "a", "e", "d"],
        RatFunc::new(fx_num, sat.clone()).expect("nonzero denominator"),
        RatFunc::new(fy_num, sat).expect("nonzero denominator"),
    )
    .expect("well formed builtin")
}

fn psnf_cusp3(scaling: PsnfScaling) -> PlanarSystem {
    let vars = ["y1", "y2", "beta1", "beta2", "beta3"];
    let v = |name: &str| MPoly::var(&vars, name).expect("var in list");
    let (y1, y2, b1, b2, b3) = (v("y1"), v("y2"), v("beta1"), v("beta2"), v("beta3"));

    let cubic_coeff = match scaling {
        PsnfScaling::Normalized => rat(1, 1),
        PsnfScaling::Raw => rat(243, 256),
    };
    // y2' = b1 + b2 y2 + b3 y1 y2 + y1^2 - c y1^3 y2
    let fy = b1
        .add(&b2.mul(&y2))
        .add(&b3.mul(&y1).mul(&y2))
        .add(&y1.pow(2))
        .sub(&y1.pow(3).mul(&y2).scale(&cubic_coeff));

    PlanarSystem::new(
        "psnf_cusp3",
        ["y1", "y2"],
        &["beta1", "beta2", "beta3"],
        RatFunc::poly(y2),
        RatFunc::poly(fy),
    )
    .expect("well formed builtin")
}

fn psnf_parabolic3() -> PlanarSystem {
    let vars = ["y1", "y2", "beta1", "beta2", "beta3"];
    let v = |name: &str| MPoly::var(&vars, name).expect("var in list");
    let (y1, y2, b1, b2, b3) = (v("y1"), v("y2"), v("beta1"), v("beta2"), v("beta3"));

    // y2' = b1 + b2 y1 + b3 y2 + (9/4) y1 y2 - y1^3
    let fy = b1
        .add(&b2.mul(&y1))
        .add(&b3.mul(&y2))
        .add(&y1.mul(&y2).scale(&rat(9, 4)))
        .sub(&y1.pow(3));

    PlanarSystem::new(
        "psnf_parabolic3",
        ["y1", "y2"],
        &["beta1", "beta2", "beta3"],
        RatFunc::poly(y2),
        RatFunc::poly(fy),
    )
    .expect("well formed builtin")
}

fn cnf5() -> PlanarSystem {
    let vars = ["x1", "x2", "a2", "a3", "a4", "a5", "b2", "b3", "b4", "b5"];
    let v = |name: &str| MPoly::var(&vars, name).expect("var in list");
    let (x1, x2) = (v("x1"), v("x2"));

    // x2' = sum over j of a_j x1^j + b_j x1^(j-1) x2, j = 2..5
    let mut fy = MPoly::zero(&vars);
    for (j, (aj, bj)) in [("a2", "b2"), ("a3", "b3"), ("a4", "b4"), ("a5", "b5")]
        .iter()
        .enumerate()
    {
        let j = (j + 2) as u32;
        fy = fy.add(&v(aj).mul(&x1.pow(j)));
        fy = fy.add(&v(bj).mul(&x1.pow(j - 1)).mul(&x2));
    }

    PlanarSystem::new(
        "cnf5",
        ["x1", "x2"],
        &["a2", "a3", "a4", "a5", "b2", "b3", "b4", "b5"],
        RatFunc::poly(x2),
        RatFunc::poly(fy),
    )
    .expect("well formed builtin")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use num::Signed;
    use proptest::prelude::*;

    fn sc(n: i64, d: i64) -> Scalar {
        Scalar::Rat(rat(n, d))
    }

    #[test]
    fn builtin_lookup_and_names() {
        for which in BuiltinSystem::ALL {
            let sys = builtin_system(which);
            assert_eq!(sys.name, which.name());
            assert_eq!(which.name().parse::<BuiltinSystem>().unwrap(), which);
        }
        assert!("lorenz".parse::<BuiltinSystem>().is_err());
    }

    #[test]
    fn bazykin1_boundary_equilibria_vanish_exactly() {
        let sys = builtin_system(BuiltinSystem::Bazykin1);
        let params = ParamPoint::from_rats(&[("g", rat(4, 3)), ("e", rat(1, 4)), ("n", rat(1, 3))]);

        let at_origin = sys.rhs_eval(&[sc(0, 1), sc(0, 1)], &params).unwrap();
        assert!(at_origin[0].is_zero() && at_origin[1].is_zero());

        // E1 = (1/e, 0)
        let at_e1 = sys.rhs_eval(&[sc(4, 1), sc(0, 1)], &params).unwrap();
        assert!(at_e1[0].is_zero() && at_e1[1].is_zero());
    }

    #[test]
    fn bazykin1_interior_equilibrium_from_hierarchy() {
        // n = (1 - e X2)(X2 - g)/g makes X2 the interior abscissa, with
        // Y2 = 1 - e X2.
        let sys = builtin_system(BuiltinSystem::Bazykin1);
        let (g, e, x2) = (rat(7, 5), rat(1, 6), rat(2, 1));
        let y2 = rat(1, 1) - &e * &x2;
        let n = (rat(1, 1) - &e * &x2) * (&x2 - &g) / &g;
        let params =
            ParamPoint::from_rats(&[("g", g), ("e", e), ("n", n)]);
        let rhs = sys
            .rhs_eval(&[Scalar::Rat(x2), Scalar::Rat(y2)], &params)
            .unwrap();
        assert!(rhs[0].is_zero() && rhs[1].is_zero());
    }

    #[test]
    fn psnf_builtins_vanish_at_origin_for_zero_unfolding() {
        for which in [BuiltinSystem::PsnfCusp3, BuiltinSystem::PsnfParabolic3] {
            let sys = builtin_system(which);
            let params = ParamPoint::from_rats(&[
                ("beta1", rat(0, 1)),
                ("beta2", rat(0, 1)),
                ("beta3", rat(0, 1)),
            ]);
            let rhs = sys.rhs_eval(&[sc(0, 1), sc(0, 1)], &params).unwrap();
            assert!(rhs[0].is_zero() && rhs[1].is_zero());
        }
    }

    #[test]
    fn cnf5_direct_read_off() {
        let sys = builtin_system(BuiltinSystem::Cnf5);
        let params = ParamPoint::from_rats(&[
            ("a2", rat(0, 1)),
            ("a3", rat(1, 1)),
            ("a4", rat(1, 1)),
            ("a5", rat(1, 1)),
            ("b2", rat(1, 1)),
            ("b3", rat(1, 1)),
            ("b4", rat(1, 1)),
            ("b5", rat(1, 1)),
        ]);
        let rhs = sys.rhs_eval(&[sc(1, 1), sc(0, 1)], &params).unwrap();
        assert_eq!(rhs[0], sc(0, 1));
        // a3 + a4 + a5 with a2 = 0
        assert_eq!(rhs[1], sc(3, 1));
    }

    #[test]
    fn bazykin2_pole_reports_denominator() {
        let sys = builtin_system(BuiltinSystem::Bazykin2);
        let params = ParamPoint::from_rats(&[
            ("g", rat(2, 7)),
            ("a", rat(7, 5)),
            ("e", rat(1, 10)),
            ("d", rat(2, 25)),
        ]);
        // X = -1/a kills 1 + a X
        let err = sys
            .rhs_eval(&[sc(-5, 7), sc(1, 1)], &params)
            .unwrap_err();
        match err {
            Error::SingularEvaluation(den) => assert!(den.contains('a')),
            other => panic!("expected singular evaluation, got {other:?}"),
        }
    }

    #[test]
    fn mixed_inputs_use_max_float_precision() {
        let sys = builtin_system(BuiltinSystem::Bazykin1);
        let mut params = ParamPoint::new();
        params.set_rat("g", rat(1, 1));
        params.set_big("e", BigFloat::from_rat(&rat(1, 5), 128));
        params.set_rat("n", rat(1, 3));
        let rhs = sys
            .rhs_eval(&[sc(1, 2), sc(1, 2)], &params)
            .unwrap();
        assert_eq!(rhs[0].float_precision(), Some(128));
    }

    #[test]
    fn jacobian_at_bazykin1_origin_is_diagonal() {
        let sys = builtin_system(BuiltinSystem::Bazykin1);
        let params = ParamPoint::from_rats(&[("g", rat(4, 3)), ("e", rat(1, 4)), ("n", rat(1, 3))]);
        let j = sys.jacobian_eval(&[sc(0, 1), sc(0, 1)], &params).unwrap();
        // eigenvalues 1 and -g read off the diagonal
        assert_eq!(j[0][0], sc(1, 1));
        assert_eq!(j[0][1], sc(0, 1));
        assert_eq!(j[1][0], sc(0, 1));
        assert_eq!(j[1][1], sc(-4, 3));
    }

    #[test]
    fn jacobian_at_bazykin2_e1_is_triangular() {
        let sys = builtin_system(BuiltinSystem::Bazykin2);
        let (g, a, e, d) = (rat(2, 7), rat(7, 5), rat(1, 10), rat(2, 25));
        let params = ParamPoint::from_rats(&[
            ("g", g.clone()),
            ("a", a.clone()),
            ("e", e.clone()),
            ("d", d),
        ]);
        let x1 = rat(10, 1); // 1/e
        let j = sys
            .jacobian_eval(&[Scalar::Rat(x1), sc(0, 1)], &params)
            .unwrap();
        // eigenvalues -1 and 1/(a+e) - g on the diagonal, lower-left zero
        assert_eq!(j[0][0], sc(-1, 1));
        assert_eq!(j[1][0], sc(0, 1));
        let expected = rat(1, 1) / (&a + &e) - &g;
        assert_eq!(j[1][1], Scalar::Rat(expected));
    }

    #[test]
    fn model1_interior_trace_det_match_printed_closed_forms() {
        // Substitute X -> X2, Y -> 1 - e X2, n -> (1 - e X2)(X2 - g)/g into
        // the symbolic Jacobian and compare with the printed closed forms.
        let sys = builtin_system(BuiltinSystem::Bazykin1);
        let j = sys.symbolic_jacobian().unwrap();

        let vars = ["g", "e", "X2"];
        let v = |name: &str| MPoly::var(&vars, name).expect("var in list");
        let one = MPoly::one(&vars);
        let (g, e, x2) = (v("g"), v("e"), v("X2"));
        let y2 = one.sub(&e.mul(&x2));
        let n_sub = RatFunc::new(y2.mul(&x2.sub(&g)), g.clone()).unwrap();
        let subst = |rf: &RatFunc| -> RatFunc {
            rf.subst("X", &RatFunc::poly(x2.clone()))
                .and_then(|r| r.subst("Y", &RatFunc::poly(y2.clone())))
                .and_then(|r| r.subst("n", &n_sub))
                .unwrap()
        };

        let tr = subst(&j[0][0]).add(&subst(&j[1][1]));
        let det = subst(&j[0][0])
            .mul(&subst(&j[1][1]))
            .sub(&subst(&j[0][1]).mul(&subst(&j[1][0])));

        // tr(J(E2)) = -(e X2^2 - g X2 + g^2)/X2, exact as a rational function
        let tr_closed = RatFunc::new(
            e.mul(&x2.pow(2)).sub(&g.mul(&x2)).add(&g.pow(2)).neg(),
            x2.clone(),
        )
        .unwrap();
        assert!(tr.equivalent(&tr_closed));

        // The printed determinant -2g(2eX2 - ge - 1) carries a spurious
        // constant factor; it agrees with the computed determinant up to a
        // positive rational, which is what content normalization absorbs.
        let two_e_x2 = e.mul(&x2).scale(&rat(2, 1));
        let det_printed = g
            .mul(&two_e_x2.sub(&g.mul(&e)).sub(&one))
            .scale(&rat(-2, 1));
        let cross = det.num.mul(&MPoly::one(&vars));
        let against = det.den.mul(&det_printed);
        let ratio = cross.div_exact(&against).expect("proportional");
        assert!(ratio.is_constant());
        assert!(ratio.constant_value().unwrap().is_positive());
    }

    #[test]
    fn polynomialized_bazykin1_clears_the_single_denominator() {
        let sys = builtin_system(BuiltinSystem::Bazykin1).polynomialized().unwrap();
        assert!(sys.rhs_x.is_polynomial() && sys.rhs_y.is_polynomial());

        let vars = ["X", "Y", "g", "e", "n"];
        let v = |name: &str| MPoly::var(&vars, name).expect("var in list");
        let one = MPoly::one(&vars);
        let (x, y, g, e, n) = (v("X"), v("Y"), v("g"), v("e"), v("n"));
        let fx = x.mul(&one.sub(&y).sub(&e.mul(&x))).mul(&n.add(&y));
        let fy = y.mul(&x.mul(&y).sub(&g.mul(&n.add(&y))));
        assert!(sys.rhs_x.num.sub(&fx).is_zero());
        assert!(sys.rhs_y.num.sub(&fy).is_zero());
    }

    #[test]
    fn psnf_scaling_flag_selects_printed_cubic_coefficient() {
        let raw = builtin_system_scaled(BuiltinSystem::PsnfCusp3, PsnfScaling::Raw);
        let norm = builtin_system(BuiltinSystem::PsnfCusp3);
        assert_eq!(raw.rhs_y.num.coeff(&[3, 1, 0, 0, 0]), rat(-243, 256));
        assert_eq!(norm.rhs_y.num.coeff(&[3, 1, 0, 0, 0]), rat(-1, 1));
    }

    #[test]
    fn json_round_trip_preserves_systems() {
        for which in BuiltinSystem::ALL {
            let sys = builtin_system(which);
            let json = serde_json::to_string(&sys).unwrap();
            let back: PlanarSystem = serde_json::from_str(&json).unwrap();
            assert_eq!(back, sys);
        }
    }

    #[test]
    fn parse_assignments_reads_fractions_and_decimals_exactly() {
        let p = ParamPoint::parse_assignments("g=4/3, e=0.25,n=2").unwrap();
        assert_eq!(p.require_rat("g").unwrap(), &rat(4, 3));
        assert_eq!(p.require_rat("e").unwrap(), &rat(1, 4));
        assert_eq!(p.require_rat("n").unwrap(), &rat(2, 1));
        assert!(ParamPoint::parse_assignments("g").is_err());
        assert!(ParamPoint::parse_assignments("g=1/0").is_err());
    }

    #[test]
    fn specialized_substitutes_parameters() {
        let sys = builtin_system(BuiltinSystem::Bazykin1);
        let params = ParamPoint::from_rats(&[("g", rat(1, 1)), ("e", rat(1, 5)), ("n", rat(1, 3))]);
        let fixed = sys.specialized(&params).unwrap();
        assert!(fixed.parameter_names.is_empty());
        let rhs = fixed.rhs_eval(&[sc(0, 1), sc(0, 1)], &ParamPoint::new()).unwrap();
        assert!(rhs[0].is_zero() && rhs[1].is_zero());
        // same value as the unspecialized system at a generic state
        let a = fixed.rhs_eval(&[sc(1, 2), sc(1, 3)], &ParamPoint::new()).unwrap();
        let b = sys.rhs_eval(&[sc(1, 2), sc(1, 3)], &params).unwrap();
        assert_eq!(a, b);
    }

    // Random polynomial systems for the differentiation properties.
    fn arb_poly() -> impl Strategy<Value = MPoly> {
        proptest::collection::vec(
            ((0u32..4, 0u32..4), -6i64..7),
            1..6,
        )
        .prop_map(|terms| {
            let vars = ["X", "Y"];
            let mut p = MPoly::zero(&vars);
            for ((i, j), c) in terms {
                p = p.add(&MPoly::monomial(&vars, &[i, j], rat(c, 1)));
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn jacobian_matches_central_differences(fx in arb_poly(), fy in arb_poly(),
                                                px in -3i64..4, py in -3i64..4) {
            let sys = PlanarSystem::new(
                "random",
                ["X", "Y"],
                &[],
                RatFunc::poly(fx),
                RatFunc::poly(fy),
            ).unwrap();
            let p = ParamPoint::new();
            let h = rat(1, 1 << 40);
            let x0 = rat(px, 2);
            let y0 = rat(py, 2);
            let j = sys.jacobian_eval(
                &[Scalar::Rat(x0.clone()), Scalar::Rat(y0.clone())], &p).unwrap();

            let eval = |x: RatNum, y: RatNum| -> [RatNum; 2] {
                let r = sys.rhs_eval(&[Scalar::Rat(x), Scalar::Rat(y)], &p).unwrap();
                [r[0].as_rat().unwrap().clone(), r[1].as_rat().unwrap().clone()]
            };
            let fxp = eval(&x0 + &h, y0.clone());
            let fxm = eval(&x0 - &h, y0.clone());
            let fyp = eval(x0.clone(), &y0 + &h);
            let fym = eval(x0.clone(), &y0 - &h);

            let fd = |plus: &RatNum, minus: &RatNum| (plus - minus) / (rat(2, 1) * &h);
            let checks = [
                (j[0][0].as_rat().unwrap(), fd(&fxp[0], &fxm[0])),
                (j[1][0].as_rat().unwrap(), fd(&fxp[1], &fxm[1])),
                (j[0][1].as_rat().unwrap(), fd(&fyp[0], &fym[0])),
                (j[1][1].as_rat().unwrap(), fd(&fyp[1], &fym[1])),
            ];
            for (exact, approx) in checks {
                let scale = rat(1, 1) + exact.abs();
                let err = (exact - &approx).abs();
                // central differences on cubics: O(h^2) truncation, far
                // below the 1e-6 relative contract here
                prop_assert!(err <= rat(1, 1_000_000) * scale,
                    "exact {exact} vs fd {approx}");
            }
        }

        #[test]
        fn jacobian_is_linear_in_the_field(f1 in arb_poly(), f2 in arb_poly(),
                                           g1 in arb_poly(), g2 in arb_poly()) {
            let mk = |a: &MPoly, b: &MPoly| PlanarSystem::new(
                "sum", ["X", "Y"], &[], RatFunc::poly(a.clone()), RatFunc::poly(b.clone()),
            ).unwrap();
            let sf = mk(&f1, &f2);
            let sg = mk(&g1, &g2);
            let ssum = mk(&f1.add(&g1), &f2.add(&g2));
            let jf = sf.symbolic_jacobian().unwrap();
            let jg = sg.symbolic_jacobian().unwrap();
            let js = ssum.symbolic_jacobian().unwrap();
            for r in 0..2 {
                for c in 0..2 {
                    prop_assert!(js[r][c].equivalent(&jf[r][c].add(&jg[r][c])));
                }
            }
        }
    }
}
