//! Two one-parameter polynomial families of integer solutions of the
//! three-equation system, and the transfer of any solution to the
//! quadratic `f(X) = X(X + a)` by scaling.
//!
//! Factored forms, for reference:
//!
//! ```text
//! family 1: x = (u+1)(2u+5)             p = 2u^3 + 12u^2 + 24u + 15
//!           y = (u+2)(2u^2+8u+7)        q = (4u^4 + 28u^3 + 73u^2 + 87u + 40)/2
//!           z = (2u^2+7u+4)(2u^2+7u+7)/2 r = (4u^4 + 28u^3 + 71u^2 + 77u + 30)/2
//!
//! family 2: x = (u+3)(2u+3)             p = 2u^3 + 12u^2 + 24u + 16
//!           y = (u+1)(2u^2+10u+13)      q = (4u^4 + 36u^3 + 121u^2 + 177u + 92)/2
//!           z = (2u^2+9u+8)(2u^2+9u+11)/2 r = (u+2)(u+3)(2u+3)(2u+5)/2
//! ```

use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{Integer, Rational};
use crate::multipoly::{MPoly, Vars};
use crate::search::{Solution6, Solution7};

const FAMILY_1: [&str; 6] = [
    "(u+1)*(2*u+5)",
    "(u+2)*(2*u^2+8*u+7)",
    "(2*u^2+7*u+4)*(2*u^2+7*u+7)/2",
    "2*u^3+12*u^2+24*u+15",
    "(4*u^4+28*u^3+73*u^2+87*u+40)/2",
    "(4*u^4+28*u^3+71*u^2+77*u+30)/2",
];

const FAMILY_2: [&str; 6] = [
    "(u+3)*(2*u+3)",
    "(u+1)*(2*u^2+10*u+13)",
    "(2*u^2+9*u+8)*(2*u^2+9*u+11)/2",
    "2*u^3+12*u^2+24*u+16",
    "(4*u^4+36*u^3+121*u^2+177*u+92)/2",
    "(u+2)*(u+3)*(2*u+3)*(2*u+5)/2",
];

pub fn univariate() -> Vars {
    Vars::new(&["u"])
}

/// Six polynomials in `u`, stored expanded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFamily {
    pub id: u8,
    pub x: MPoly,
    pub y: MPoly,
    pub z: MPoly,
    pub p: MPoly,
    pub q: MPoly,
    pub r: MPoly,
}

pub fn family(id: u8) -> Result<PolyFamily> {
    let src = match id {
        1 => FAMILY_1,
        2 => FAMILY_2,
        _ => return Err(Error::Domain(format!("unknown family {id} (expected 1 or 2)"))),
    };
    let vars = univariate();
    let [x, y, z, p, q, r] = src.map(|s| MPoly::parse(&vars, s).expect("family polynomials parse"));
    Ok(PolyFamily { id, x, y, z, p, q, r })
}

/// `t(P) = P(P+1)/2` as a polynomial.
fn tri_poly(p: &MPoly) -> MPoly {
    let one = MPoly::one(p.vars());
    (p * &(p + &one)).scale(&Rational::new(Integer::one(), Integer::from(2)))
}

impl PolyFamily {
    pub fn polys(&self) -> [&MPoly; 6] {
        [&self.x, &self.y, &self.z, &self.p, &self.q, &self.r]
    }

    /// `t_x + t_y - t_p`, `t_y + t_z - t_q`, `t_z + t_x - t_r`; all zero for a
    /// valid family.
    pub fn residuals(&self) -> [MPoly; 3] {
        let (tx, ty, tz) = (tri_poly(&self.x), tri_poly(&self.y), tri_poly(&self.z));
        [
            &(&tx + &ty) - &tri_poly(&self.p),
            &(&ty + &tz) - &tri_poly(&self.q),
            &(&tz + &tx) - &tri_poly(&self.r),
        ]
    }

    /// `8(t_a + t_b) + 1 - (2c + 1)^2` for the three pairs.
    pub fn square_residuals(&self) -> [MPoly; 3] {
        let vars = self.x.vars();
        let one = MPoly::one(vars);
        let eight = Rational::from_integer(Integer::from(8));
        let two = Rational::from_integer(Integer::from(2));
        let lhs = |a: &MPoly, b: &MPoly| &(&tri_poly(a) + &tri_poly(b)).scale(&eight) + &one;
        let rhs = |c: &MPoly| (&c.scale(&two) + &one).pow(2);
        [
            &lhs(&self.x, &self.y) - &rhs(&self.p),
            &lhs(&self.y, &self.z) - &rhs(&self.q),
            &lhs(&self.z, &self.x) - &rhs(&self.r),
        ]
    }

    pub fn is_identity(&self) -> bool {
        self.residuals().iter().all(MPoly::is_zero)
    }

    pub fn is_integer_valued(&self) -> bool {
        self.polys().into_iter().all(is_integer_valued)
    }
}

/// Whether a univariate polynomial takes integer values at every integer.
///
/// With `d` the lcm of the coefficient denominators, `d*P` has integer
/// coefficients and `d*P(u) mod d` depends only on `u mod d`.
pub fn is_integer_valued(p: &MPoly) -> bool {
    assert_eq!(p.vars().len(), 1, "univariate polynomial expected");
    let d = p.terms().fold(Integer::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let scaled = p.scale(&Rational::from_integer(d.clone()));
    let mut u = Integer::zero();
    while u < d {
        let value = scaled.eval_positional(&[Rational::from_integer(u.clone())]);
        if !value.is_integer() || !value.to_integer().is_multiple_of(&d) {
            return false;
        }
        u += 1;
    }
    true
}

/// The family's integer solution at `u >= 0`.
pub fn family_eval(id: u8, u: &Integer) -> Result<Solution6> {
    if u < &Integer::zero() {
        return Err(Error::Domain(format!("family parameter must be nonnegative, got {u}")));
    }
    let fam = family(id)?;
    let at = [Rational::from_integer(u.clone())];
    let values: Vec<Integer> = fam
        .polys()
        .iter()
        .map(|poly| {
            let v = poly.eval_positional(&at);
            if v.is_integer() {
                Ok(v.to_integer())
            } else {
                Err(Error::Verification(format!("family {id} is not integral at u = {u}")))
            }
        })
        .collect::<Result<_>>()?;
    let [x, y, z, p, q, r]: [Integer; 6] = values.try_into().expect("six values");
    Solution6::new(x, y, z, p, q, r)
}

/// A solution tuple multiplied by `a`, valid for `f(X) = X(X + a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledSolution {
    pub a: Integer,
    pub values: Vec<Integer>,
}

impl ScaledSolution {
    pub fn f(&self, x: &Integer) -> Integer {
        x * (x + &self.a)
    }

    /// Checks `f(x)+f(y)=f(p)`, `f(y)+f(z)=f(q)`, `f(z)+f(x)=f(r)` and, for
    /// seven-value tuples, `f(x)+f(y)+f(z)=f(s)`.
    pub fn verify(&self) -> bool {
        let v: Vec<Integer> = self.values.iter().map(|x| self.f(x)).collect();
        let three = &v[0] + &v[1] == v[3] && &v[1] + &v[2] == v[4] && &v[2] + &v[0] == v[5];
        match v.len() {
            6 => three,
            7 => three && &v[0] + &v[1] + &v[2] == v[6],
            _ => false,
        }
    }
}

fn scale_values(values: Vec<&Integer>, a: &Integer) -> Result<ScaledSolution> {
    if a.is_zero() {
        return Err(Error::Domain("scale factor must be nonzero".into()));
    }
    let scaled = ScaledSolution { a: a.clone(), values: values.into_iter().map(|v| v * a).collect() };
    if !scaled.verify() {
        return Err(Error::Verification(format!("scaled tuple fails f(X) = X(X + {a})")));
    }
    Ok(scaled)
}

pub fn scale_solution6(sol: &Solution6, a: &Integer) -> Result<ScaledSolution> {
    scale_values(sol.values().to_vec(), a)
}

pub fn scale_solution7(sol: &Solution7, a: &Integer) -> Result<ScaledSolution> {
    scale_values(sol.values().to_vec(), a)
}

pub fn family_csv(rows: &[(Integer, Solution6)]) -> String {
    let mut out = String::from("u,x,y,z,p,q,r\n");
    for (u, sol) in rows {
        let fields: Vec<String> = std::iter::once(u).chain(sol.values()).map(|v| v.to_string()).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}
