//! The quartic model `C: h^2 = a4 w^4 + a3 w^3 + a2 w^2 + a1 w + a0` obtained
//! by feeding the three-parameter solution into `t_x + t_y + t_z = t_s`, the
//! Weierstrass model `E: Y^2 = X^3 - 27f X - 27g`, the maps between them,
//! and the generator of rational solutions of the four-equation system.
//!
//! With `x = X/D` etc. from [`crate::param3`], clearing `D^2` from
//! `8(t_x + t_y + t_z) + 1 = (2s + 1)^2` gives
//! `h^2 = 4(X^2 + Y^2 + Z^2) + 4D(X + Y + Z) + D^2` with `h = D(2s + 1)`.
//!
//! Three of the transcribed coefficient formulas disagree with that
//! derivation. [`printed_curve_data`] keeps them as written so the
//! discrepancies can be reported; [`symbolic_curve_data`] holds the
//! corrected forms and is what everything else uses.

use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{fraction_string, is_integral, weierstrass_scaling, Integer, Rational};
use crate::multipoly::{Binding, MPoly, Vars};
use crate::param3::{self, Solution6Rational};
use crate::triangular::{solve_index, tri_rational};

const A0: &str = "(u-1)^2*(-1+u+2*v+2*u*v-v^2+u*v^2)^2";
// (u^4-1)/(u-1) written out as u^3+u^2+u+1
const A1_PRINTED: &str = "4*(u-1)*(v^2-1)*((u^3+u^2+u+1)*(v^2+1)+2*(u-1)*(u^2+4*u+1)*v)";
const A1: &str = "4*(u-1)*(v^2-1)*((u-1)*(u^2+1)*(v^2+1)+2*(u+1)*(u^2-4*u+1)*v)";
const A2: &str = "4*(1-10*u^2+u^4)*v^2+8*(u^4-1)*v*(1+v^2)+2*(3+2*u^2+3*u^4)*(1+v^4)";
const S4: &str = "(u+1)*(1+u-2*v+2*u*v+v^2+u*v^2)";

const F_PRINTED: &str = "u^4*(v^8+1)+4*u^2*(u^4-1)*v*(v^6+1)+(1+8*u^2-22*u^4+8*u^6+u^8)*v^2*(1+v^4)\
    +4*(u^4-1)*(u^4-3*u^2-1)*v^3*(1+v^2)+2*(3-16*u^2+29*u^4-16*u^6+3*u^8)*v^4";
const F: &str = "u^4*(v^8+1)+4*u^2*(u^4-1)*v*(v^6+1)+(1+8*u^2-22*u^4+8*u^6+u^8)*v^2*(1+v^4)\
    +4*(u^4-1)*(u^4-3*u^2+1)*v^3*(1+v^2)+2*(3-16*u^2+29*u^4-16*u^6+3*u^8)*v^4";
// g = G_LEFT * (-2f + G_RIGHT)
const G_LEFT: &str = "u^2*(v^4+1)+2*(u^4-1)*v*(v^2+1)+2*(2-5*u^2+2*u^4)*v^2";
const G_RIGHT: &str = "3*(u^2-1)^2*v^2*(1+u^2-2*v+2*u^2*v+v^2+u^2*v^2)^2";

const C_PRINTED: &str = "-4*(u+1)^2*(-u^2*(u+1)^2*(v^8+1)+(u^2-1)*(1-10*u-2*u^2-10*u^3+u^4)*v*(v^6+1)\
    +2*(u-1)^2*(3-4*u-6*u^2-4*u^3+3*u^4)*v^2*(v^4+1)+(u-1)^2*(15+10*u+2*u^2+10*u^3+15*u^4)*v^3*(v^2+1)\
    +2*(10+20*u-5*u^2-46*u^3-5*u^4+20*u^5+10*u^6)*v^4)/3";
const C: &str = "-4*(u+1)^2*(-u^2*(u+1)^2*(v^8+1)+(u^2-1)*(1-10*u-2*u^2-10*u^3+u^4)*v*(v^6+1)\
    +2*(u-1)^2*(3-4*u-16*u^2-4*u^3+3*u^4)*v^2*(v^4+1)+(u^2-1)*(15+10*u+2*u^2+10*u^3+15*u^4)*v^3*(v^2+1)\
    +2*(10+20*u-5*u^2-46*u^3-5*u^4+20*u^5+10*u^6)*v^4)/3";
const D: &str = "16*(u-1)*u*(u+1)^4*v*(v^2-1)*(-1+u+2*v+2*u*v-v^2+u*v^2)*(1+u^2-2*v+2*u^2*v+v^2+u^2*v^2)\
    *(-1+u^2-4*v-4*u^2*v+10*v^2-10*u^2*v^2-4*v^3-4*u^2*v^3-v^4+u^2*v^4)";

const X_T: &str = "3*u^2*(v^4+1)+6*(u^4-1)*v*(v^2+1)+6*(u^2-2)*(2*u^2-1)*v^2";
const P_X: &str = "3/4*((3-2*u^2+3*u^4)*(v^4+1)+8*(u^4-1)*v*(v^2+1)+2*(5-14*u^2+5*u^4)*v^2)";
const P_Y: &str = "27/8*(u^2-1)^2*(v^2-1)*((u^2+1)*(v^4+1)+4*(u^2-1)*v*(v^2+1)+6*(u^2+1)*v^2)";

pub fn uv() -> Vars {
    Vars::new(&["u", "v"])
}

/// Polynomials in `u, v` describing both models and the two known points.
#[derive(Clone, Debug)]
pub struct CurveData {
    /// `a[i]` is the coefficient of `w^i`.
    pub a: [MPoly; 5],
    /// Square root of `a4`.
    pub s4: MPoly,
    pub f: MPoly,
    pub g: MPoly,
    pub c: MPoly,
    pub d: MPoly,
    pub x_t: MPoly,
    pub p_x: MPoly,
    pub p_y: MPoly,
}

impl CurveData {
    fn build(a1: &str, f: &str, c: &str) -> CurveData {
        let vars = uv();
        let parse = |s: &str| MPoly::parse(&vars, s).expect("curve formulas parse");
        let a0 = parse(A0);
        let a1 = parse(a1);
        let f = parse(f);
        let g = &parse(G_LEFT) * &(&parse(G_RIGHT) - &f.scale(&Rational::from_integer(Integer::from(2))));
        CurveData {
            a: [a0.clone(), a1.clone(), parse(A2), negate_u(&a1), negate_u(&a0)],
            s4: parse(S4),
            f,
            g,
            c: parse(c),
            d: parse(D),
            x_t: parse(X_T),
            p_x: parse(P_X),
            p_y: parse(P_Y),
        }
    }

    fn fields(&self) -> Vec<(&'static str, &MPoly)> {
        let [a0, a1, a2, a3, a4] = &self.a;
        vec![
            ("a0", a0),
            ("a1", a1),
            ("a2", a2),
            ("a3", a3),
            ("a4", a4),
            ("s4", &self.s4),
            ("f", &self.f),
            ("g", &self.g),
            ("c", &self.c),
            ("d", &self.d),
            ("X_T", &self.x_t),
            ("P_X", &self.p_x),
            ("P_Y", &self.p_y),
        ]
    }
}

/// `p(-u, v)`.
pub fn negate_u(p: &MPoly) -> MPoly {
    let minus_u = -MPoly::var(p.vars(), "u").expect("u is a variable");
    p.substitute(&[("u", Binding::Poly(minus_u))]).expect("u is a variable")
}

/// The formulas as transcribed, typos included.
pub fn printed_curve_data() -> &'static CurveData {
    static CELL: OnceLock<CurveData> = OnceLock::new();
    CELL.get_or_init(|| CurveData::build(A1_PRINTED, F_PRINTED, C_PRINTED))
}

/// The formulas with the three coefficient typos corrected.
pub fn symbolic_curve_data() -> &'static CurveData {
    static CELL: OnceLock<CurveData> = OnceLock::new();
    CELL.get_or_init(|| CurveData::build(A1, F, C))
}

/// Coefficients of `4(X^2+Y^2+Z^2) + 4D(X+Y+Z) + D^2` in `w`, computed from
/// the three-parameter closed forms.
pub fn derived_quartic() -> [MPoly; 5] {
    let cf = param3::closed_form();
    let (x, y, z, den) = (&cf.x_num, &cf.y_num, &cf.z_num, &cf.denom);
    let four = Rational::from_integer(Integer::from(4));
    let squares = &(&(x * x) + &(y * y)) + &(z * z);
    let h = &(&squares.scale(&four) + &(den * &(&(x + y) + z)).scale(&four)) + &(den * den);
    let coeffs = h.coefficients_in("w").expect("w is a variable");
    assert_eq!(coeffs.len(), 5, "quartic in w");
    let vars = uv();
    let mut it = coeffs.into_iter().map(|c| c.with_vars(&vars).expect("coefficients free of w"));
    std::array::from_fn(|_| it.next().expect("five coefficients"))
}

/// `I = 12 a4 a0 - 3 a3 a1 + a2^2` and
/// `J = 72 a4 a2 a0 + 9 a3 a2 a1 - 27 a4 a1^2 - 27 a0 a3^2 - 2 a2^3`.
pub fn quartic_invariants(a: &[MPoly; 5]) -> (MPoly, MPoly) {
    let k = |n: i64| Rational::from_integer(Integer::from(n));
    let [a0, a1, a2, a3, a4] = a;
    let i = &(&(a4 * a0).scale(&k(12)) - &(a3 * a1).scale(&k(3))) + &(a2 * a2);
    let j = &(&(&(&(a4 * &(a2 * a0)).scale(&k(72)) + &(a3 * &(a2 * a1)).scale(&k(9)))
        - &(a4 * &(a1 * a1)).scale(&k(27)))
        - &(a0 * &(a3 * a3)).scale(&k(27)))
        - &(a2 * &(a2 * a2)).scale(&k(2));
    (i, j)
}

/// `f = I/256`, `g = J/4096`.
pub fn weierstrass_coefficients(a: &[MPoly; 5]) -> (MPoly, MPoly) {
    let (i, j) = quartic_invariants(a);
    (i.scale(&Rational::new(1.into(), 256.into())), j.scale(&Rational::new(1.into(), 4096.into())))
}

/// The pair `(c, d)` with `c = (3a3^2 - 8a4 a2)/48`, `d = (a3^3 - 4a4 a3 a2 + 8a4^2 a1)/32`.
pub fn depressed_coefficients(a: &[MPoly; 5]) -> (MPoly, MPoly) {
    let k = |n: i64| Rational::from_integer(Integer::from(n));
    let [_, a1, a2, a3, a4] = a;
    let c = (&(a3 * a3).scale(&k(3)) - &(a4 * a2).scale(&k(8))).scale(&Rational::new(1.into(), 48.into()));
    let d = (&(&(a3 * &(a3 * a3)) - &(a4 * &(a3 * a2)).scale(&k(4))) + &(a4 * &(a4 * a1)).scale(&k(8)))
        .scale(&Rational::new(1.into(), 32.into()));
    (c, d)
}

/// A transcribed formula that differs from its corrected form.
#[derive(Clone, Debug)]
pub struct Erratum {
    pub name: &'static str,
    /// printed minus corrected
    pub residual: MPoly,
}

pub fn errata() -> Vec<Erratum> {
    let printed = printed_curve_data().fields();
    let fixed = symbolic_curve_data().fields();
    printed
        .into_iter()
        .zip(fixed)
        .filter_map(|((name, p), (_, q))| {
            let residual = p - q;
            (!residual.is_zero()).then_some(Erratum { name, residual })
        })
        .collect()
}

/// An elliptic curve `Y^2 = X^3 + A X + B` over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassCurve {
    pub a: Rational,
    pub b: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ECPoint {
    Infinity,
    Affine { x: Rational, y: Rational },
}

impl ECPoint {
    pub fn affine(x: Rational, y: Rational) -> Self {
        ECPoint::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ECPoint::Infinity)
    }

    pub fn coords(&self) -> Option<(&Rational, &Rational)> {
        match self {
            ECPoint::Infinity => None,
            ECPoint::Affine { x, y } => Some((x, y)),
        }
    }
}

impl fmt::Display for ECPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ECPoint::Infinity => write!(f, "O"),
            ECPoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

impl Serialize for ECPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ECPoint::Infinity => s.serialize_str("infinity"),
            ECPoint::Affine { x, y } => [fraction_string(x), fraction_string(y)].serialize(s),
        }
    }
}

impl WeierstrassCurve {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        let curve = WeierstrassCurve { a, b };
        if curve.discriminant().is_zero() {
            return Err(Error::DegenerateSpecialization(format!(
                "Y^2 = X^3 + ({})X + ({}) is singular",
                curve.a, curve.b
            )));
        }
        Ok(curve)
    }

    /// `4A^3 + 27B^2`.
    pub fn discriminant(&self) -> Rational {
        let four = Rational::from_integer(4.into());
        let t27 = Rational::from_integer(27.into());
        four * &self.a * &self.a * &self.a + t27 * &self.b * &self.b
    }

    pub fn contains(&self, pt: &ECPoint) -> bool {
        match pt {
            ECPoint::Infinity => true,
            ECPoint::Affine { x, y } => y * y == x * x * x + &self.a * x + &self.b,
        }
    }

    fn check(&self, pt: &ECPoint) -> Result<()> {
        if self.contains(pt) {
            Ok(())
        } else {
            Err(Error::OffCurve(format!("{pt} is not on Y^2 = X^3 + ({})X + ({})", self.a, self.b)))
        }
    }

    pub fn is_integral(&self) -> bool {
        is_integral(&self.a) && is_integral(&self.b)
    }

    /// The model `Y^2 = X^3 + l^4 A X + l^6 B` with the smallest positive
    /// integer `l` making both coefficients integral, and `l`.
    pub fn integral_model(&self) -> (WeierstrassCurve, Integer) {
        let l = weierstrass_scaling(self.a.denom(), self.b.denom());
        let l2 = Rational::from_integer(&l * &l);
        let l4 = &l2 * &l2;
        let l6 = &l4 * &l2;
        (WeierstrassCurve { a: &self.a * l4, b: &self.b * l6 }, l)
    }
}

/// `(X, Y) -> (l^2 X, l^3 Y)`.
pub fn scale_point(pt: &ECPoint, l: &Integer) -> ECPoint {
    match pt {
        ECPoint::Infinity => ECPoint::Infinity,
        ECPoint::Affine { x, y } => {
            let l2 = Rational::from_integer(l * l);
            let l3 = &l2 * Rational::from_integer(l.clone());
            ECPoint::affine(x * l2, y * l3)
        }
    }
}

fn add_unchecked(curve: &WeierstrassCurve, p: &ECPoint, q: &ECPoint) -> ECPoint {
    let (ECPoint::Affine { x: x1, y: y1 }, ECPoint::Affine { x: x2, y: y2 }) = (p, q) else {
        return if p.is_infinity() { q.clone() } else { p.clone() };
    };
    let lambda = if x1 == x2 {
        if (y1 + y2).is_zero() {
            return ECPoint::Infinity;
        }
        let three = Rational::from_integer(3.into());
        (three * x1 * x1 + &curve.a) / (y1 + y1)
    } else {
        (y2 - y1) / (x2 - x1)
    };
    let x3 = &lambda * &lambda - x1 - x2;
    let y3 = lambda * (x1 - &x3) - y1;
    ECPoint::affine(x3, y3)
}

pub fn ec_add(curve: &WeierstrassCurve, p: &ECPoint, q: &ECPoint) -> Result<ECPoint> {
    curve.check(p)?;
    curve.check(q)?;
    Ok(add_unchecked(curve, p, q))
}

pub fn ec_neg(curve: &WeierstrassCurve, p: &ECPoint) -> Result<ECPoint> {
    curve.check(p)?;
    Ok(match p {
        ECPoint::Infinity => ECPoint::Infinity,
        ECPoint::Affine { x, y } => ECPoint::affine(x.clone(), -y),
    })
}

pub fn ec_double(curve: &WeierstrassCurve, p: &ECPoint) -> Result<ECPoint> {
    ec_add(curve, p, p)
}

pub fn ec_mul(curve: &WeierstrassCurve, n: &Integer, p: &ECPoint) -> Result<ECPoint> {
    curve.check(p)?;
    let base = if n.is_negative() { ec_neg(curve, p)? } else { p.clone() };
    let mut acc = ECPoint::Infinity;
    let mut k = n.magnitude().clone();
    let mut run = base;
    while !k.is_zero() {
        if k.bit(0) {
            acc = add_unchecked(curve, &acc, &run);
        }
        run = add_unchecked(curve, &run, &run);
        k >>= 1;
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome")]
pub enum Certificate {
    /// `k R` has a non-integral coordinate.
    Certified { k: u32 },
    Inconclusive,
}

/// Largest multiple inspected by [`certify_infinite_order`].
pub const CERTIFY_MAX_MULTIPLE: u32 = 12;

/// Nagell-Lutz test on an integral model: a point of finite order has
/// integral coordinates, and so do all its multiples.
pub fn certify_infinite_order(curve: &WeierstrassCurve, r: &ECPoint) -> Result<Certificate> {
    if !curve.is_integral() {
        return Err(Error::Domain(format!(
            "curve coefficients ({}, {}) are not integral; use the integral model",
            curve.a, curve.b
        )));
    }
    curve.check(r)?;
    let mut multiple = ECPoint::Infinity;
    for k in 1..=CERTIFY_MAX_MULTIPLE {
        multiple = add_unchecked(curve, &multiple, r);
        match &multiple {
            ECPoint::Infinity => return Ok(Certificate::Inconclusive),
            ECPoint::Affine { x, y } => {
                if !is_integral(x) || !is_integral(y) {
                    return Ok(Certificate::Certified { k });
                }
            }
        }
    }
    Ok(Certificate::Inconclusive)
}

/// Certifies on the integral model of any rational curve.
pub fn certify_point(curve: &WeierstrassCurve, r: &ECPoint) -> Result<Certificate> {
    let (model, l) = curve.integral_model();
    certify_infinite_order(&model, &scale_point(r, &l))
}

/// The quartic model at a fixed `(u, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticModel {
    pub u: Rational,
    pub v: Rational,
    /// `a[i]` is the coefficient of `w^i`.
    pub a: [Rational; 5],
    pub s4: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl QuarticModel {
    pub fn eval(&self, w: &Rational) -> Rational {
        self.a.iter().rev().fold(Rational::zero(), |acc, c| acc * w + c)
    }

    pub fn contains(&self, w: &Rational, h: &Rational) -> bool {
        h * h == self.eval(w)
    }
}

#[derive(Clone, Debug)]
pub struct Specialization {
    pub quartic: QuarticModel,
    pub curve: WeierstrassCurve,
    pub t: ECPoint,
    pub p: ECPoint,
}

pub fn specialize_curve(u: &Rational, v: &Rational) -> Result<Specialization> {
    let data = symbolic_curve_data();
    let at = [u.clone(), v.clone()];
    let ev = |p: &MPoly| p.eval_positional(&at);
    let a: [Rational; 5] = std::array::from_fn(|i| ev(&data.a[i]));
    if a[4].is_zero() {
        return Err(Error::QuarticDegenerate(format!("a4 vanishes at (u, v) = ({u}, {v})")));
    }
    let s4 = ev(&data.s4);
    let quartic = QuarticModel { u: u.clone(), v: v.clone(), a, s4, c: ev(&data.c), d: ev(&data.d) };
    let t27 = Rational::from_integer(27.into());
    let curve = WeierstrassCurve::new(-&t27 * ev(&data.f), -t27 * ev(&data.g)).map_err(|_| {
        Error::DegenerateSpecialization(format!("the curve is singular at (u, v) = ({u}, {v})"))
    })?;
    let t = ECPoint::affine(ev(&data.x_t), Rational::zero());
    let p = ECPoint::affine(ev(&data.p_x), ev(&data.p_y));
    for (name, pt) in [("T", &t), ("P", &p)] {
        if !curve.contains(pt) {
            return Err(Error::Verification(format!("{name} = {pt} is not on the curve at ({u}, {v})")));
        }
    }
    Ok(Specialization { quartic, curve, t, p })
}

fn phi_inverse(model: &QuarticModel, s4: &Rational, x: &Rational, y: &Rational) -> Result<(Rational, Rational)> {
    let k = |n: i64| Rational::from_integer(n.into());
    let a4 = &model.a[4];
    let den = k(24) * a4 * x - k(54) * &model.c;
    if den.is_zero() {
        return Err(Error::UnmappablePoint(format!("24 a4 X - 54 c vanishes at X = {x}")));
    }
    let s3 = s4 * s4 * s4;
    let t = (k(16) * &s3 * y - k(27) * &model.d) / den;
    let w = (&t - &model.a[3] / k(4)) / a4;
    let h = (-(&t * &t) + k(8) * a4 * x / k(9) + &model.c) / s3;
    Ok((w, h))
}

/// Image on the quartic of an affine point of `E`, and whether the
/// negative square root of `a4` had to be used.
pub fn map_to_quartic_signed(
    model: &QuarticModel,
    curve: &WeierstrassCurve,
    r: &ECPoint,
) -> Result<(Rational, Rational, bool)> {
    curve.check(r)?;
    let ECPoint::Affine { x, y } = r else {
        return Err(Error::UnmappablePoint("the point at infinity has no affine image".into()));
    };
    for (negated, s4) in [(false, model.s4.clone()), (true, -&model.s4)] {
        let (w, h) = phi_inverse(model, &s4, x, y)?;
        if model.contains(&w, &h) {
            return Ok((w, h, negated));
        }
    }
    Err(Error::Verification(format!("image of {r} is off the quartic for both signs of s4")))
}

pub fn map_to_quartic(model: &QuarticModel, curve: &WeierstrassCurve, r: &ECPoint) -> Result<(Rational, Rational)> {
    map_to_quartic_signed(model, curve, r).map(|(w, h, _)| (w, h))
}

/// With `t = a4 w + a3/4`: `X = 9(h s4^3 + t^2 - c)/(8 a4)`,
/// `Y = (t(24 a4 X - 54 c) + 27 d)/(16 s4^3)`.
pub fn map_to_weierstrass(model: &QuarticModel, curve: &WeierstrassCurve, w: &Rational, h: &Rational) -> Result<ECPoint> {
    if !model.contains(w, h) {
        return Err(Error::OffCurve(format!("({w}, {h}) is not on the quartic")));
    }
    let k = |n: i64| Rational::from_integer(n.into());
    let a4 = &model.a[4];
    let s3 = &model.s4 * &model.s4 * &model.s4;
    let t = a4 * w + &model.a[3] / k(4);
    let x = k(9) * (h * &s3 + &t * &t - &model.c) / (k(8) * a4);
    let y = (&t * (k(24) * a4 * &x - k(54) * &model.c) + k(27) * &model.d) / (k(16) * s3);
    let pt = ECPoint::affine(x, y);
    if !curve.contains(&pt) {
        return Err(Error::Verification(format!("image {pt} of ({w}, {h}) is off the curve")));
    }
    Ok(pt)
}

/// A rational solution of all four equations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Solution7Rational {
    pub six: Solution6Rational,
    pub s: Rational,
}

impl Solution7Rational {
    pub fn new(six: Solution6Rational, s: Rational) -> Result<Self> {
        let sum = tri_rational(&six.x) + tri_rational(&six.y) + tri_rational(&six.z);
        if sum != tri_rational(&s) {
            return Err(Error::Verification(format!("t_x + t_y + t_z != t_s for s = {s}")));
        }
        Ok(Solution7Rational { six, s })
    }

    pub fn values(&self) -> [&Rational; 7] {
        let [x, y, z, p, q, r] = self.six.values();
        [x, y, z, p, q, r, &self.s]
    }

    /// Re-checks all four equations from scratch.
    pub fn verify(&self) -> bool {
        let t: Vec<Rational> = self.values().iter().map(|v| tri_rational(v)).collect();
        &t[0] + &t[1] == t[3] && &t[1] + &t[2] == t[4] && &t[2] + &t[0] == t[5] && &t[0] + &t[1] + &t[2] == t[6]
    }
}

#[derive(Clone, Debug)]
pub struct GeneratedSolution {
    pub k: u32,
    pub torsion: bool,
    pub point: ECPoint,
    pub w: Rational,
    pub h: Rational,
    pub s4_negated: bool,
    pub solution: Solution7Rational,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skipped {
    pub k: u32,
    pub torsion: bool,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct Generation {
    pub specialization: Specialization,
    pub certificate: Certificate,
    pub warning: Option<String>,
    pub solutions: Vec<GeneratedSolution>,
    pub skipped: Vec<Skipped>,
}

#[derive(Clone, Copy, Debug)]
pub struct GenerateOptions {
    /// Also use `kP + T`.
    pub with_torsion: bool,
}

impl Default for GenerateOptions {
    fn default() -> Self {
        GenerateOptions { with_torsion: true }
    }
}

pub fn generate_solutions(u: &Rational, v: &Rational, k_max: u32) -> Result<Generation> {
    generate_solutions_with(u, v, k_max, GenerateOptions::default())
}

pub fn generate_solutions_with(u: &Rational, v: &Rational, k_max: u32, opts: GenerateOptions) -> Result<Generation> {
    let spec = specialize_curve(u, v)?;
    let certificate = certify_point(&spec.curve, &spec.p)?;
    let warning = match certificate {
        Certificate::Certified { .. } => None,
        Certificate::Inconclusive => Some(format!(
            "P could not be certified of infinite order at (u, v) = ({u}, {v}); solutions may repeat"
        )),
    };
    let eps: &[bool] = if opts.with_torsion { &[false, true] } else { &[false] };
    let mut solutions: Vec<GeneratedSolution> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut skipped = Vec::new();
    let mut kp = ECPoint::Infinity;
    for k in 1..=k_max {
        kp = add_unchecked(&spec.curve, &kp, &spec.p);
        for &torsion in eps {
            let point = if torsion { add_unchecked(&spec.curve, &kp, &spec.t) } else { kp.clone() };
            let skip = |reason: String| Skipped { k, torsion, reason };
            let (w, h, s4_negated) = match map_to_quartic_signed(&spec.quartic, &spec.curve, &point) {
                Ok(v) => v,
                Err(e) => {
                    skipped.push(skip(e.to_string()));
                    continue;
                }
            };
            let six = match param3::closed_form_eval(u, v, &w) {
                Ok(s) => s,
                Err(e) => {
                    skipped.push(skip(e.to_string()));
                    continue;
                }
            };
            let sum = tri_rational(&six.x) + tri_rational(&six.y) + tri_rational(&six.z);
            let s = solve_index(&sum)
                .ok_or_else(|| Error::Verification(format!("t_x + t_y + t_z = {sum} is not triangular")))?;
            // 2s + 1 = |h / D|
            let den = param3::denominator_at(u, v, &w);
            let two_s1 = Rational::from_integer(2.into()) * &s + Rational::one();
            if two_s1 != (&h / &den).abs() {
                return Err(Error::Verification(format!("2s + 1 = {two_s1} disagrees with h/D = {}", &h / &den)));
            }
            let solution = Solution7Rational::new(six, s)?;
            let mut key = [solution.six.x.clone(), solution.six.y.clone(), solution.six.z.clone()];
            key.sort();
            if !seen.insert(key) {
                skipped.push(skip("duplicate of an earlier solution".into()));
                continue;
            }
            let verified = solution.verify();
            solutions.push(GeneratedSolution { k, torsion, point, w, h, s4_negated, solution, verified });
        }
    }
    Ok(Generation { specialization: spec, certificate, warning, solutions, skipped })
}

/// Data for the `v = 2` specialization, as functions of `u`.
pub mod v2 {
    use std::sync::OnceLock;

    use crate::multipoly::{MPoly, RatFunc, Vars};

    const SUM_X: &str = "1404*u^4+219*u^2+4";
    const SUM_Y: &str = "8*(9*u^2+1)^2*(81*u^2+1)";
    const K: &str = "6561*u^4+1134*u^3+306*u-1";
    const F: &str = "43046721*u^8+11573604*u^7+6388956*u^5+1285956*u^6+680886*u^4+919836*u^3+93636*u^2+10404*u+1";
    const G: &str = "-23914845*u^9+110008287*u^8-18528264*u^7+15956352*u^6-473850*u^5-940410*u^4-91008*u^3\
        -96264*u^2-33*u+35";
    const X_NUM: &str = "2*(u-1)*(9*u-1)^2*(9*u+1)^2*(63*u^2+17)*(81*u^2+1)";
    const Y_NUM: &str = "3*u*(11+42*u^2+2187*u^4)*(1+2754*u^2+3645*u^4)";
    const Z_NUM: &str = "2*(27*u^2-18*u-5)*(81*u^2-48*u-1)*(135*u^2+18*u+7)*(243*u^3-99*u^2+57*u-1)";

    pub struct Example {
        /// The printed value of `P + T`.
        pub sum_x: MPoly,
        pub sum_y: MPoly,
        pub w: RatFunc,
        /// `h` as printed.
        pub h_printed: RatFunc,
        /// `h` with the two factor typos corrected.
        pub h: RatFunc,
        pub x: RatFunc,
        pub y: RatFunc,
        pub z: RatFunc,
    }

    pub fn example() -> &'static Example {
        static CELL: OnceLock<Example> = OnceLock::new();
        CELL.get_or_init(|| {
            let vars = Vars::new(&["u"]);
            let p = |s: &str| MPoly::parse(&vars, s).expect("example formulas parse");
            let frac = |n: MPoly, d: MPoly| RatFunc::new(n, d).expect("nonzero denominator");
            let (k, f, g) = (p(K), p(F), p(G));
            let k2 = &k * &k;
            Example {
                sum_x: p(SUM_X),
                sum_y: p(SUM_Y),
                w: frac(p("(9*u-1)^2*(9*u+1)*(63*u^2+17)"), &p("3*(u+1)") * &k),
                h_printed: frac(&p("8*(9*u-1)*(9*u+1)") * &f, &p("9*(u+1)^2") * &k2),
                h: frac(&p("8*(9*u-1)*(9*u^2+1)") * &f, &p("9*(u+1)") * &k2),
                x: frac(p(X_NUM), g.clone()),
                y: frac(p(Y_NUM), g.clone()),
                z: frac(p(Z_NUM), g.scale(&crate::exact::rat_int(3))),
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat, rat_int};
    use crate::triangular::solve_index;
    use rand::{Rng, SeedableRng};

    fn e23() -> Specialization {
        specialize_curve(&rat_int(2), &rat_int(3)).unwrap()
    }

    #[test]
    fn printed_a0_a2_a4_match_the_derivation() {
        let derived = derived_quartic();
        let data = symbolic_curve_data();
        for i in 0..5 {
            assert!((&derived[i] - &data.a[i]).is_zero(), "a{i}");
        }
        let printed = printed_curve_data();
        for i in [0, 2, 4] {
            assert!((&derived[i] - &printed.a[i]).is_zero(), "a{i}");
        }
        assert!(!(&derived[1] - &printed.a[1]).is_zero());
    }

    #[test]
    fn symmetries_of_the_derived_quartic() {
        let a = derived_quartic();
        assert!((&a[0] - &negate_u(&a[4])).is_zero());
        assert!((&a[1] - &negate_u(&a[3])).is_zero());
    }

    #[test]
    fn a4_is_a_square() {
        let data = symbolic_curve_data();
        assert!((&data.a[4] - &(&data.s4 * &data.s4)).is_zero());
    }

    #[test]
    fn f_g_c_d_come_from_the_quartic() {
        let data = symbolic_curve_data();
        let (f, g) = weierstrass_coefficients(&data.a);
        assert!((&f - &data.f).is_zero());
        assert!((&g - &data.g).is_zero());
        let (c, d) = depressed_coefficients(&data.a);
        assert!((&c - &data.c).is_zero());
        assert!((&d - &data.d).is_zero());
    }

    #[test]
    fn t_and_p_lie_on_e_symbolically() {
        let data = symbolic_curve_data();
        let t27 = rat_int(27);
        let rhs = |x: &MPoly| &(&(&(x * x) * x) - &(&data.f * x).scale(&t27)) - &data.g.scale(&t27);
        assert!(rhs(&data.x_t).is_zero());
        assert!((&(&data.p_y * &data.p_y) - &rhs(&data.p_x)).is_zero());
    }

    #[test]
    fn errata_are_exactly_a1_a3_f_g_c() {
        let names: Vec<&str> = errata().iter().map(|e| e.name).collect();
        assert_eq!(names, vec!["a1", "a3", "f", "g", "c"]);
        let printed = printed_curve_data();
        assert_eq!(printed.f.eval_positional(&[rat_int(2), rat_int(3)]) * rat_int(-27), rat_int(-27927936));
        assert_eq!(symbolic_curve_data().f.eval_positional(&[rat_int(2), rat_int(3)]), rat_int(1066768));
    }

    #[test]
    fn e23_reproduces() {
        let s = e23();
        assert_eq!(s.curve.a, rat_int(-28802736));
        assert_eq!(s.curve.b, rat_int(40355763840));
        assert_eq!(s.p, ECPoint::affine(rat_int(5736), rat_int(252720)));
        let two_p = ec_double(&s.curve, &s.p).unwrap();
        assert_eq!(two_p, ECPoint::affine(rat(765489, 100), rat(-518102487, 1000)));
        assert_eq!(certify_infinite_order(&s.curve, &s.p).unwrap(), Certificate::Certified { k: 2 });
    }

    #[test]
    fn torsion_does_not_certify() {
        let s = e23();
        assert_eq!(ec_add(&s.curve, &s.t, &s.t).unwrap(), ECPoint::Infinity);
        assert_eq!(certify_infinite_order(&s.curve, &s.t).unwrap(), Certificate::Inconclusive);
        assert_eq!(certify_infinite_order(&s.curve, &ECPoint::Infinity).unwrap(), Certificate::Inconclusive);
        assert_eq!(ec_add(&s.curve, &s.p, &ECPoint::Infinity).unwrap(), s.p);
    }

    #[test]
    fn non_integral_curve_needs_scaling() {
        let s = specialize_curve(&rat(1, 3), &rat_int(3)).unwrap();
        assert!(!s.curve.is_integral());
        assert!(matches!(certify_infinite_order(&s.curve, &s.p), Err(Error::Domain(_))));
        let (model, l) = s.curve.integral_model();
        assert!(model.is_integral());
        assert!(model.contains(&scale_point(&s.p, &l)));
        // the smallest scale: l/p is not enough for any prime p dividing l
        for p in [2i64, 3, 5, 7] {
            if (&l % int(p)).is_zero() {
                let smaller = WeierstrassCurve {
                    a: &s.curve.a * Rational::from_integer((&l / int(p)).pow(4)),
                    b: &s.curve.b * Rational::from_integer((&l / int(p)).pow(6)),
                };
                assert!(!smaller.is_integral());
            }
        }
        assert!(certify_point(&s.curve, &s.p).is_ok());
    }

    #[test]
    fn degenerate_specializations() {
        for v in [0, 2, 5] {
            assert!(matches!(specialize_curve(&rat_int(-1), &rat_int(v)), Err(Error::QuarticDegenerate(_))));
        }
        // u = 1 collapses the curve: a0 = a1 = 0 so h(w) has a double root.
        assert!(matches!(specialize_curve(&rat_int(1), &rat_int(3)), Err(Error::DegenerateSpecialization(_))));
    }

    #[test]
    fn off_curve_points_are_rejected() {
        let s = e23();
        let bad = ECPoint::affine(rat_int(1), rat_int(1));
        assert!(matches!(ec_add(&s.curve, &s.p, &bad), Err(Error::OffCurve(_))));
        assert!(map_to_weierstrass(&s.quartic, &s.curve, &rat_int(1), &rat_int(1)).is_err());
    }

    #[test]
    fn base_point_q_maps_onto_e() {
        for (u, v) in [(2, 3), (3, 5), (-2, 7)] {
            let s = specialize_curve(&rat_int(u), &rat_int(v)).unwrap();
            let root = crate::exact::rational_sqrt(&s.quartic.a[0]).unwrap();
            let q = map_to_weierstrass(&s.quartic, &s.curve, &rat_int(0), &root).unwrap();
            assert!(s.curve.contains(&q));
        }
    }

    #[test]
    fn maps_round_trip() {
        let s = e23();
        let mut r = ECPoint::Infinity;
        for _ in 1..=4 {
            r = ec_add(&s.curve, &r, &s.p).unwrap();
            for pt in [r.clone(), ec_add(&s.curve, &r, &s.t).unwrap()] {
                let (w, h, negated) = map_to_quartic_signed(&s.quartic, &s.curve, &pt).unwrap();
                assert!(!negated);
                assert_eq!(map_to_weierstrass(&s.quartic, &s.curve, &w, &h).unwrap(), pt);
                // h -> -h gives a different point with a different X in general
                let other = map_to_weierstrass(&s.quartic, &s.curve, &w, &-&h).unwrap();
                assert!(s.curve.contains(&other));
            }
        }
    }

    #[test]
    fn group_law_axioms() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let mut done = 0;
        while done < 5 {
            let u = rat(rng.gen_range(-9..=9), rng.gen_range(1..=4));
            let v = rat(rng.gen_range(-9..=9), rng.gen_range(1..=4));
            let Ok(s) = specialize_curve(&u, &v) else { continue };
            let c = &s.curve;
            let pts: Vec<ECPoint> = (0..3)
                .map(|_| {
                    let k = int(rng.gen_range(-3..=3));
                    let base = ec_mul(c, &k, &s.p).unwrap();
                    if rng.gen_bool(0.5) { ec_add(c, &base, &s.t).unwrap() } else { base }
                })
                .collect();
            let (a, b, d) = (&pts[0], &pts[1], &pts[2]);
            assert_eq!(ec_add(c, a, b).unwrap(), ec_add(c, b, a).unwrap());
            assert_eq!(ec_add(c, a, &ECPoint::Infinity).unwrap(), *a);
            assert_eq!(ec_add(c, a, &ec_neg(c, a).unwrap()).unwrap(), ECPoint::Infinity);
            let left = ec_add(c, &ec_add(c, a, b).unwrap(), d).unwrap();
            let right = ec_add(c, a, &ec_add(c, b, d).unwrap()).unwrap();
            assert_eq!(left, right);
            assert_eq!(ec_mul(c, &int(3), &s.p).unwrap(), ec_add(c, &s.p, &ec_double(c, &s.p).unwrap()).unwrap());
            done += 1;
        }
    }

    #[test]
    fn v2_sum_point_x_matches_and_y_is_negated() {
        let ex = v2::example();
        for k in 1..=9 {
            let u = rat(k, 3) + rat(1, 5);
            let s = specialize_curve(&u, &rat_int(2)).unwrap();
            let sum = ec_add(&s.curve, &s.p, &s.t).unwrap();
            let (x, y) = sum.coords().unwrap();
            assert_eq!(*x, ex.sum_x.eval_positional(std::slice::from_ref(&u)));
            assert_eq!(*y, -ex.sum_y.eval_positional(std::slice::from_ref(&u)));
        }
    }

    #[test]
    fn v2_printed_point_maps_to_printed_w_and_corrected_h() {
        let ex = v2::example();
        for u in [rat_int(2), rat_int(3), rat(5, 7), rat(-11, 4)] {
            let s = specialize_curve(&u, &rat_int(2)).unwrap();
            let at = [u.clone()];
            let printed = ECPoint::affine(ex.sum_x.eval_positional(&at), ex.sum_y.eval_positional(&at));
            let (w, h) = map_to_quartic(&s.quartic, &s.curve, &printed).unwrap();
            assert_eq!(w, ex.w.eval_positional(&at).unwrap());
            assert_eq!(h, ex.h.eval_positional(&at).unwrap());
            assert_ne!(h, ex.h_printed.eval_positional(&at).unwrap());
            let six = param3::closed_form_eval(&u, &rat_int(2), &w).unwrap();
            assert_eq!(six.x, ex.x.eval_positional(&at).unwrap());
            assert_eq!(six.y, ex.y.eval_positional(&at).unwrap());
            assert_eq!(six.z, ex.z.eval_positional(&at).unwrap());
        }
    }

    #[test]
    fn v2_printed_xyz_solve_system3() {
        let ex = v2::example();
        for u in [rat_int(2), rat_int(3)] {
            let at = [u];
            let (x, y, z) = (
                ex.x.eval_positional(&at).unwrap(),
                ex.y.eval_positional(&at).unwrap(),
                ex.z.eval_positional(&at).unwrap(),
            );
            let (tx, ty, tz) = (tri_rational(&x), tri_rational(&y), tri_rational(&z));
            for sum in [&tx + &ty, &ty + &tz, &tz + &tx, &tx + &ty + &tz] {
                assert!(solve_index(&sum).is_some());
            }
        }
    }

    #[test]
    fn generator_at_two_three() {
        let gen = generate_solutions(&rat_int(2), &rat_int(3), 3).unwrap();
        assert_eq!(gen.certificate, Certificate::Certified { k: 2 });
        assert!(gen.warning.is_none());
        assert!(!gen.solutions.is_empty());
        for sol in &gen.solutions {
            assert!(sol.verified && sol.solution.verify());
        }
        assert!(generate_solutions(&rat_int(2), &rat_int(3), 0).unwrap().solutions.is_empty());
    }

    #[test]
    fn solution7_rejects_bad_s() {
        let six = param3::closed_form_eval(&rat_int(2), &rat_int(3), &rat_int(5)).unwrap();
        assert!(Solution7Rational::new(six, rat_int(1)).is_err());
    }
}
