//! Three-parameter rational solution of the three-equation system.
//!
//! Writing `y = u(p - x)` turns `t_x + t_y = t_p` into the pair of linear
//! equations
//!
//! ```text
//! y = u(p - x),   u(y + 1) = p + x + 1
//! z = v(q - y),   v(z + 1) = q + y + 1
//! x = w(r - z),   w(x + 1) = r + z + 1
//! ```
//!
//! in the unknowns `x, y, z, p, q, r`. Its solution has the common
//! denominator `D = (1 - u^2)(v^2 - 1)(w^2 - 1) + 8uvw`.
//!
//! Two independent routes are provided: the closed forms
//! ([`closed_form_symbolic`], [`closed_form_eval`]) and a generic exact
//! solve of the linear system ([`eq2_linear_solve`]).

use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{Integer, Rational};
use crate::linalg;
use crate::multipoly::{MPoly, RatFunc, Vars};
use crate::triangular::tri_rational;

const X_NUM: &str = "(u-1)*w*(1+u-2*v+2*u*v+v^2+u*v^2+(-1-u+v^2+u*v^2)*w)";
const Y_NUM: &str = "u*(v-1)*(1-u+v-u*v+(-2+2*v)*w+(1+u+v+u*v)*w^2)";
const Z_NUM: &str = "v*(w-1)*(1-2*u+u^2-v+u^2*v+(1+2*u+u^2-v+u^2*v)*w)";
const DENOM: &str = "(1-u^2)*(v^2-1)*(w^2-1)+8*u*v*w";

pub fn uvw() -> Vars {
    Vars::new(&["u", "v", "w"])
}

/// Numerators of `x, y, z` and their common denominator, as polynomials in
/// `u, v, w`.
#[derive(Clone, Debug)]
pub struct ClosedForm {
    pub x_num: MPoly,
    pub y_num: MPoly,
    pub z_num: MPoly,
    pub denom: MPoly,
}

pub fn closed_form() -> &'static ClosedForm {
    static CELL: OnceLock<ClosedForm> = OnceLock::new();
    CELL.get_or_init(|| {
        let vars = uvw();
        let parse = |s| MPoly::parse(&vars, s).expect("closed forms parse");
        ClosedForm { x_num: parse(X_NUM), y_num: parse(Y_NUM), z_num: parse(Z_NUM), denom: parse(DENOM) }
    })
}

/// The six coordinates as rational functions of `u, v, w`.
#[derive(Clone, Debug)]
pub struct ParamSolution {
    pub x: RatFunc,
    pub y: RatFunc,
    pub z: RatFunc,
    pub p: RatFunc,
    pub q: RatFunc,
    pub r: RatFunc,
}

fn tri_ratfunc(f: &RatFunc) -> RatFunc {
    let one = RatFunc::from_poly(MPoly::one(f.vars()));
    (f * &(f + &one)).scale(&Rational::new(Integer::one(), Integer::from(2)))
}

pub fn closed_form_symbolic() -> ParamSolution {
    let cf = closed_form();
    let vars = uvw();
    let frac = |n: &MPoly| RatFunc::new(n.clone(), cf.denom.clone()).expect("D is not the zero polynomial");
    let var = |name| RatFunc::from_poly(MPoly::var(&vars, name).expect("known variable"));
    let (x, y, z) = (frac(&cf.x_num), frac(&cf.y_num), frac(&cf.z_num));
    let (u, v, w) = (var("u"), var("v"), var("w"));
    // p = (u x + y)/u, q = (v y + z)/v, r = (w z + x)/w
    let p = (&(&u * &x) + &y).div(&u).expect("u is nonzero");
    let q = (&(&v * &y) + &z).div(&v).expect("v is nonzero");
    let r = (&(&w * &z) + &x).div(&w).expect("w is nonzero");
    ParamSolution { x, y, z, p, q, r }
}

impl ParamSolution {
    /// `t_x + t_y - t_p`, `t_y + t_z - t_q`, `t_z + t_x - t_r`.
    pub fn residuals(&self) -> [RatFunc; 3] {
        let (tx, ty, tz) = (tri_ratfunc(&self.x), tri_ratfunc(&self.y), tri_ratfunc(&self.z));
        [
            &(&tx + &ty) - &tri_ratfunc(&self.p),
            &(&ty + &tz) - &tri_ratfunc(&self.q),
            &(&tz + &tx) - &tri_ratfunc(&self.r),
        ]
    }

    /// The six linear equations, each as `lhs - rhs`.
    pub fn linear_residuals(&self) -> [RatFunc; 6] {
        let vars = self.x.vars().clone();
        let var = |name| RatFunc::from_poly(MPoly::var(&vars, name).expect("known variable"));
        let one = RatFunc::from_poly(MPoly::one(&vars));
        let (u, v, w) = (var("u"), var("v"), var("w"));
        let (x, y, z, p, q, r) = (&self.x, &self.y, &self.z, &self.p, &self.q, &self.r);
        [
            y - &(&u * &(p - x)),
            &(&u * &(y + &one)) - &(&(p + x) + &one),
            z - &(&v * &(q - y)),
            &(&v * &(z + &one)) - &(&(q + y) + &one),
            x - &(&w * &(r - z)),
            &(&w * &(x + &one)) - &(&(r + z) + &one),
        ]
    }
}

/// An exact rational sextuple satisfying the three-equation system.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Solution6Rational {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
    pub p: Rational,
    pub q: Rational,
    pub r: Rational,
}

impl Solution6Rational {
    pub fn new(x: Rational, y: Rational, z: Rational, p: Rational, q: Rational, r: Rational) -> Result<Self> {
        let (tx, ty, tz) = (tri_rational(&x), tri_rational(&y), tri_rational(&z));
        if &tx + &ty != tri_rational(&p) || &ty + &tz != tri_rational(&q) || &tz + &tx != tri_rational(&r) {
            return Err(Error::Verification(format!(
                "({x}, {y}, {z}, {p}, {q}, {r}) does not satisfy the three-equation system"
            )));
        }
        Ok(Solution6Rational { x, y, z, p, q, r })
    }

    pub fn values(&self) -> [&Rational; 6] {
        [&self.x, &self.y, &self.z, &self.p, &self.q, &self.r]
    }
}

/// Solves the six linear equations at `(u, v, w)` by Gaussian elimination.
pub fn eq2_linear_solve(u: &Rational, v: &Rational, w: &Rational) -> Result<Solution6Rational> {
    let (zero, one) = (Rational::zero(), Rational::one());
    let m = |x: &Rational| -x;
    // unknown order: x, y, z, p, q, r
    let rows = vec![
        vec![u.clone(), one.clone(), zero.clone(), m(u), zero.clone(), zero.clone()],
        vec![m(&one), u.clone(), zero.clone(), m(&one), zero.clone(), zero.clone()],
        vec![zero.clone(), v.clone(), one.clone(), zero.clone(), m(v), zero.clone()],
        vec![zero.clone(), m(&one), v.clone(), zero.clone(), m(&one), zero.clone()],
        vec![one.clone(), zero.clone(), w.clone(), zero.clone(), zero.clone(), m(w)],
        vec![w.clone(), zero.clone(), m(&one), zero.clone(), zero.clone(), m(&one)],
    ];
    let rhs = vec![zero.clone(), &one - u, zero.clone(), &one - v, zero, &one - w];
    let sol = linalg::solve(rows, rhs).map_err(|_| {
        Error::DegenerateParameters(format!("linear system is singular at (u, v, w) = ({u}, {v}, {w})"))
    })?;
    let [x, y, z, p, q, r]: [Rational; 6] = sol.try_into().expect("six unknowns");
    Solution6Rational::new(x, y, z, p, q, r)
}

/// Evaluates the closed forms at `(u, v, w)`.
pub fn closed_form_eval(u: &Rational, v: &Rational, w: &Rational) -> Result<Solution6Rational> {
    for (name, value) in [("u", u), ("v", v), ("w", w)] {
        if value.is_zero() {
            return Err(Error::DegenerateParameters(format!("{name} must be nonzero")));
        }
    }
    let cf = closed_form();
    let at = [u.clone(), v.clone(), w.clone()];
    let d = cf.denom.eval_positional(&at);
    if d.is_zero() {
        return Err(Error::DegenerateParameters(format!(
            "denominator vanishes at (u, v, w) = ({u}, {v}, {w})"
        )));
    }
    let x = cf.x_num.eval_positional(&at) / &d;
    let y = cf.y_num.eval_positional(&at) / &d;
    let z = cf.z_num.eval_positional(&at) / &d;
    let p = (u * &x + &y) / u;
    let q = (v * &y + &z) / v;
    let r = (w * &z + &x) / w;
    Solution6Rational::new(x, y, z, p, q, r)
}

pub fn denominator_at(u: &Rational, v: &Rational, w: &Rational) -> Rational {
    closed_form().denom.eval_positional(&[u.clone(), v.clone(), w.clone()])
}
