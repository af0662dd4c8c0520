//! Sparse multivariate polynomials over the rationals, and rational functions
//! kept as unreduced numerator/denominator pairs.
//!
//! A polynomial carries its variable list; exponent vectors are dense over
//! that list. Binary operations require both operands to use the same list
//! and panic otherwise, since mixing contexts is always a programming error.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{Integer, Rational};

/// An ordered list of variable names shared by the polynomials of one
/// computation context.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new(names: &[&str]) -> Self {
        Vars(names.iter().map(|s| s.to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }
}

type Exponents = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    vars: Vars,
    // Invariant: no zero coefficients are stored.
    terms: BTreeMap<Exponents, Rational>,
}

/// What a variable is replaced with by [`MPoly::substitute`].
#[derive(Clone, Debug)]
pub enum Binding {
    Value(Rational),
    Poly(MPoly),
}

impl From<Rational> for Binding {
    fn from(q: Rational) -> Self {
        Binding::Value(q)
    }
}

impl From<MPoly> for Binding {
    fn from(p: MPoly) -> Self {
        Binding::Poly(p)
    }
}

impl MPoly {
    pub fn zero(vars: &Vars) -> Self {
        MPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn var(vars: &Vars, name: &str) -> Result<Self> {
        let i = vars
            .index_of(name)
            .ok_or_else(|| Error::Domain(format!("unknown variable {name:?}")))?;
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Ok(Self::monomial(vars, Rational::one(), e))
    }

    pub fn monomial(vars: &Vars, coeff: Rational, exponents: Vec<u32>) -> Self {
        assert_eq!(exponents.len(), vars.len(), "exponent vector length mismatch");
        let mut p = Self::zero(vars);
        if !coeff.is_zero() {
            p.terms.insert(exponents, coeff);
        }
        p
    }

    /// Parses an expression such as `(u-1)^2*(3/4*v + 2) - u*v`.
    ///
    /// Supports `+ - * ^`, parentheses, integer literals, and division by
    /// constant subexpressions. Multiplication must be explicit.
    pub fn parse(vars: &Vars, src: &str) -> Result<Self> {
        let mut parser = Parser { vars, src: src.as_bytes(), pos: 0 };
        let p = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(p)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&vec![0; self.vars.len()]).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        self.terms.get(exponents).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree_in(&self, name: &str) -> Option<u32> {
        let i = self.vars.index_of(name)?;
        Some(self.terms.keys().map(|e| e[i]).max().unwrap_or(0))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Signed-exponent power; negative exponents are a domain error.
    pub fn powi(&self, exp: i64) -> Result<Self> {
        if exp < 0 {
            return Err(Error::Domain(format!("negative polynomial exponent {exp}")));
        }
        let exp = u32::try_from(exp).map_err(|_| Error::Domain(format!("exponent {exp} too large")))?;
        Ok(self.pow(exp))
    }

    /// Evaluates at a full assignment given by name. Every variable that
    /// occurs in the polynomial must be assigned.
    pub fn evaluate(&self, point: &[(&str, Rational)]) -> Result<Rational> {
        let mut values: Vec<Option<&Rational>> = vec![None; self.vars.len()];
        for (name, value) in point {
            let i = self
                .vars
                .index_of(name)
                .ok_or_else(|| Error::Domain(format!("unknown variable {name:?}")))?;
            values[i] = Some(value);
        }
        for (i, v) in values.iter().enumerate() {
            if v.is_none() && self.terms.keys().any(|e| e[i] > 0) {
                return Err(Error::Domain(format!(
                    "variable {:?} is not assigned",
                    self.vars.names()[i]
                )));
            }
        }
        let zero = Rational::zero();
        let values: Vec<Rational> = values.into_iter().map(|v| v.unwrap_or(&zero).clone()).collect();
        Ok(self.eval_positional(&values))
    }

    /// Evaluates with one value per variable, in variable-list order.
    pub fn eval_positional(&self, values: &[Rational]) -> Rational {
        assert_eq!(values.len(), self.vars.len(), "wrong number of values");
        let mut powers = PowerCache::new(values);
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term *= powers.get(i, k);
                }
            }
            acc += term;
        }
        acc
    }

    /// Replaces some variables by values or polynomials over the same
    /// variable list. Unbound variables survive; the variable list is kept.
    pub fn substitute(&self, bindings: &[(&str, Binding)]) -> Result<Self> {
        if bindings.is_empty() {
            return Ok(self.clone());
        }
        let mut slots: Vec<Option<MPoly>> = vec![None; self.vars.len()];
        for (name, b) in bindings {
            let i = self
                .vars
                .index_of(name)
                .ok_or_else(|| Error::Domain(format!("unknown variable {name:?}")))?;
            let p = match b {
                Binding::Value(q) => MPoly::constant(&self.vars, q.clone()),
                Binding::Poly(p) => {
                    if p.vars != self.vars {
                        return Err(Error::Domain("substituted polynomial uses another variable list".into()));
                    }
                    p.clone()
                }
            };
            slots[i] = Some(p);
        }
        let mut cache: HashMap<(usize, u32), MPoly> = HashMap::new();
        let mut out = MPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut kept = e.clone();
            let mut factor = MPoly::one(&self.vars);
            for (i, slot) in slots.iter().enumerate() {
                if let Some(p) = slot {
                    let k = e[i];
                    kept[i] = 0;
                    if k > 0 {
                        let pk = cache.entry((i, k)).or_insert_with(|| p.pow(k));
                        factor = &factor * &*pk;
                    }
                }
            }
            let mono = MPoly::monomial(&self.vars, c.clone(), kept);
            out = &out + &(&factor * &mono);
        }
        Ok(out)
    }

    /// Coefficients with respect to one variable: element `k` is the
    /// coefficient of `var^k`, as a polynomial over the same variable list.
    pub fn coefficients_in(&self, name: &str) -> Result<Vec<MPoly>> {
        let i = self
            .vars
            .index_of(name)
            .ok_or_else(|| Error::Domain(format!("unknown variable {name:?}")))?;
        let deg = self.degree_in(name).unwrap_or(0) as usize;
        let mut out = vec![MPoly::zero(&self.vars); deg + 1];
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            rest[i] = 0;
            out[e[i] as usize].terms.insert(rest, c.clone());
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over another variable list. Every
    /// variable that occurs must exist in the target list.
    pub fn with_vars(&self, target: &Vars) -> Result<Self> {
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, name) in self.vars.names().iter().enumerate() {
            let j = target.index_of(name);
            if j.is_none() && self.terms.keys().any(|e| e[i] > 0) {
                return Err(Error::Domain(format!("variable {name:?} missing from target list")));
            }
            map.push(j);
        }
        let mut out = MPoly::zero(target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (i, &k) in e.iter().enumerate() {
                if let Some(j) = map[i] {
                    ne[j] += k;
                }
            }
            out.terms.insert(ne, c.clone());
        }
        Ok(out)
    }

    fn check_vars(&self, other: &MPoly) {
        assert!(self.vars == other.vars, "polynomials use different variable lists");
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                if !c.is_zero() {
                    slot.insert(c);
                }
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }
}

struct PowerCache<'a> {
    base: &'a [Rational],
    table: Vec<Vec<Rational>>,
}

impl<'a> PowerCache<'a> {
    fn new(base: &'a [Rational]) -> Self {
        PowerCache { base, table: base.iter().map(|_| vec![Rational::one()]).collect() }
    }

    fn get(&mut self, var: usize, k: u32) -> &Rational {
        let row = &mut self.table[var];
        while row.len() <= k as usize {
            let next = row.last().unwrap() * &self.base[var];
            row.push(next);
        }
        &row[k as usize]
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.check_vars(rhs);
        let mut acc: HashMap<Exponents, Rational> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let c = ca * cb;
                acc.entry(e).and_modify(|x| *x += &c).or_insert(c);
            }
        }
        MPoly {
            vars: self.vars.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($imp:ident, $method:ident, $t:ty) => {
        impl $imp<$t> for $t {
            type Output = $t;
            fn $method(self, rhs: $t) -> $t {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $imp<&'a $t> for $t {
            type Output = $t;
            fn $method(self, rhs: &$t) -> $t {
                (&self).$method(rhs)
            }
        }
        impl<'a> $imp<$t> for &'a $t {
            type Output = $t;
            fn $method(self, rhs: $t) -> $t {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add, MPoly);
forward_owned!(Sub, sub, MPoly);
forward_owned!(Mul, mul, MPoly);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

/// Graded-lex rendering, highest total degree first, e.g.
/// `4*u^4*v^2 - 10*v^2 + 3`.
impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Exponents, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (n, (e, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            let monomial: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    let name = &self.vars.names()[i];
                    if k == 1 { name.clone() } else { format!("{name}^{k}") }
                })
                .collect();
            if !mag.is_one() || monomial.is_empty() {
                factors.push(mag.to_string());
            }
            factors.extend(monomial);
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    vars: &'a Vars,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in polynomial expression", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            if op == b'*' {
                acc = &acc * &rhs;
            } else {
                if !rhs.is_constant() || rhs.is_zero() {
                    return Err(self.error("division by a non-constant or zero expression"));
                }
                acc = acc.scale(&rhs.constant_term().recip());
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MPoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let k: u32 = digits.parse().map_err(|_| self.error("expected exponent"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let n: Integer = digits.parse().map_err(|_| self.error("bad integer"))?;
                Ok(MPoly::constant(self.vars, Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                MPoly::var(self.vars, name)
            }
            _ => Err(self.error("expected a number, variable or '('")),
        }
    }
}

/// A rational function `num/den`, never reduced to lowest terms.
/// Two pairs are equal when their cross products agree.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

impl RatFunc {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        num.check_vars(&den);
        if den.is_zero() {
            return Err(Error::Domain("rational function with zero denominator".into()));
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: MPoly) -> Self {
        let den = MPoly::one(p.vars());
        RatFunc { num: p, den }
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn equals(&self, other: &RatFunc) -> bool {
        ratfunc_equal(self, other)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn recip(&self) -> Result<Self> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFunc) -> Result<Self> {
        if other.num.is_zero() {
            return Err(Error::Domain("division by the zero rational function".into()));
        }
        Ok(RatFunc { num: &self.num * &other.den, den: &self.den * &other.num })
    }

    pub fn evaluate(&self, point: &[(&str, Rational)]) -> Result<Rational> {
        let d = self.den.evaluate(point)?;
        if d.is_zero() {
            return Err(Error::DegenerateSpecialization("denominator vanishes at this point".into()));
        }
        Ok(self.num.evaluate(point)? / d)
    }

    pub fn eval_positional(&self, values: &[Rational]) -> Result<Rational> {
        let d = self.den.eval_positional(values);
        if d.is_zero() {
            return Err(Error::DegenerateSpecialization("denominator vanishes at this point".into()));
        }
        Ok(self.num.eval_positional(values) / d)
    }

    pub fn substitute(&self, bindings: &[(&str, Binding)]) -> Result<Self> {
        let den = self.den.substitute(bindings)?;
        if den.is_zero() {
            return Err(Error::DegenerateSpecialization(
                "substitution makes the denominator identically zero".into(),
            ));
        }
        Ok(RatFunc { num: self.num.substitute(bindings)?, den })
    }
}

/// True iff `a.num * b.den - b.num * a.den` is the zero polynomial.
pub fn ratfunc_equal(a: &RatFunc, b: &RatFunc) -> bool {
    if a.den == b.den {
        return a.num == b.num;
    }
    &a.num * &b.den == &b.num * &a.den
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        ratfunc_equal(self, other)
    }
}

impl Eq for RatFunc {}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc { num: &self.num + &rhs.num, den: self.den.clone() };
        }
        RatFunc {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc { num: &self.num * &rhs.num, den: &self.den * &rhs.den }
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

forward_owned!(Add, add, RatFunc);
forward_owned!(Sub, sub, RatFunc);
forward_owned!(Mul, mul, RatFunc);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use proptest::prelude::*;

    fn uv() -> Vars {
        Vars::new(&["u", "v"])
    }

    fn p(src: &str) -> MPoly {
        MPoly::parse(&uv(), src).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(p("(u-1)*(u+1)"), p("u^2-1"));
    }

    #[test]
    fn a4_from_square_of_factor() {
        let square = p("((u+1)*(1+u-2*v+2*u*v+v^2+u*v^2))^2");
        let mirrored = p("(u-1)^2*(-1+u+2*v+2*u*v-v^2+u*v^2)^2")
            .substitute(&[("u", Binding::Poly(p("-u")))])
            .unwrap();
        assert_eq!(square, mirrored);
        assert_eq!(square.coefficient(&[0, 0]), rat_int(1));
        assert_eq!(square.total_degree(), 8);
    }

    #[test]
    fn zero_absorbs() {
        assert!((&p("u^3*v - 7") * &MPoly::zero(&uv())).is_zero());
    }

    #[test]
    fn negative_power_is_domain_error() {
        assert!(matches!(p("u").powi(-1), Err(Error::Domain(_))));
        assert_eq!(p("u+v").powi(0).unwrap(), MPoly::one(&uv()));
    }

    #[test]
    fn evaluate_requires_assignment() {
        let q = p("u*v + 2");
        assert!(matches!(q.evaluate(&[("u", rat_int(1))]), Err(Error::Domain(_))));
        assert!(matches!(q.evaluate(&[("w", rat_int(1))]), Err(Error::Domain(_))));
        assert_eq!(q.evaluate(&[("u", rat_int(0)), ("v", rat_int(0))]).unwrap(), rat_int(2));
        // v unused by this polynomial, so may be omitted
        assert_eq!(p("u^2").evaluate(&[("u", rat(1, 2))]).unwrap(), rat(1, 4));
    }

    #[test]
    fn rendering_is_graded_lex() {
        assert_eq!(p("3 - 10*v^2 + 4*u^4*v^2").to_string(), "4*u^4*v^2 - 10*v^2 + 3");
        assert_eq!(p("-u + 3/4*v^2").to_string(), "3/4*v^2 - u");
        assert_eq!(MPoly::zero(&uv()).to_string(), "0");
        assert_eq!(p("-1").to_string(), "-1");
    }

    #[test]
    fn parser_rejects_garbage() {
        for bad in ["u+", "2u", "u/v", "(u", "x", "u^", "u/0"] {
            assert!(MPoly::parse(&uv(), bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn partial_substitution_keeps_other_variables() {
        let f = p("u^2*v + v^3 + u");
        let g = f.substitute(&[("v", Binding::Value(rat_int(2)))]).unwrap();
        assert_eq!(g, p("2*u^2 + 8 + u"));
        assert_eq!(f.substitute(&[]).unwrap(), f);
        for k in [-3i64, 1, 5, 7, 11] {
            let u = rat(k, 3);
            let lhs = g.evaluate(&[("u", u.clone())]).unwrap();
            let rhs = f.evaluate(&[("u", u), ("v", rat_int(2))]).unwrap();
            assert_eq!(lhs, rhs);
        }
        let a4 = p("((u+1)*(1+u-2*v+2*u*v+v^2+u*v^2))^2");
        assert!(a4.substitute(&[("u", Binding::Value(rat_int(-1)))]).unwrap().is_zero());
    }

    #[test]
    fn coefficients_and_reembedding() {
        let q = p("u^2*v + 3*v + u - 1");
        let cs = q.coefficients_in("v").unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[0], p("u - 1"));
        assert_eq!(cs[1], p("u^2 + 3"));
        let w = Vars::new(&["u", "v", "w"]);
        let lifted = q.with_vars(&w).unwrap();
        assert_eq!(lifted.with_vars(&uv()).unwrap(), q);
        assert!(MPoly::var(&w, "w").unwrap().with_vars(&uv()).is_err());
    }

    #[test]
    fn ratfunc_examples() {
        let a = RatFunc::new(p("u^2-1"), p("u-1")).unwrap();
        let b = RatFunc::from_poly(p("u+1"));
        assert!(ratfunc_equal(&a, &b));
        let uv_ = RatFunc::new(p("u"), p("v")).unwrap();
        let vu = RatFunc::new(p("v"), p("u")).unwrap();
        assert!(!ratfunc_equal(&uv_, &vu));
        assert!(RatFunc::new(p("u"), MPoly::zero(&uv())).is_err());
        let bad = RatFunc::new(p("1"), p("u-2")).unwrap();
        assert!(matches!(
            bad.substitute(&[("u", Binding::Value(rat_int(2)))]),
            Err(Error::DegenerateSpecialization(_))
        ));
        assert!(matches!(
            bad.evaluate(&[("u", rat_int(2))]),
            Err(Error::DegenerateSpecialization(_))
        ));
    }

    fn small_poly() -> impl Strategy<Value = MPoly> {
        proptest::collection::vec(((0u32..3, 0u32..3), -5i64..=5, 1i64..=3), 0..5).prop_map(|terms| {
            let vars = uv();
            terms.into_iter().fold(MPoly::zero(&vars), |acc, ((a, b), n, d)| {
                &acc + &MPoly::monomial(&vars, rat(n, d), vec![a, b])
            })
        })
    }

    fn small_point() -> impl Strategy<Value = (Rational, Rational)> {
        ((-7i64..=7, 1i64..=5), (-7i64..=7, 1i64..=5)).prop_map(|((a, b), (c, d))| (rat(a, b), rat(c, d)))
    }

    fn small_ratfunc() -> impl Strategy<Value = RatFunc> {
        (small_poly(), small_poly()).prop_map(|(n, d)| {
            let d = if d.is_zero() { MPoly::one(&uv()) } else { d };
            RatFunc::new(n, d).unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in small_poly(), b in small_poly(), pt in small_point()) {
            let point = [("u", pt.0.clone()), ("v", pt.1.clone())];
            let prod = (&a * &b).evaluate(&point).unwrap();
            prop_assert_eq!(prod, a.evaluate(&point).unwrap() * b.evaluate(&point).unwrap());
            let sum = (&a + &b).evaluate(&point).unwrap();
            prop_assert_eq!(sum, a.evaluate(&point).unwrap() + b.evaluate(&point).unwrap());
        }

        #[test]
        fn ratfunc_equality_is_an_equivalence(a in small_ratfunc(), k in small_poly(), m in small_poly()) {
            prop_assume!(!k.is_zero() && !m.is_zero());
            // b and c are a rescaled by nonzero polynomials, hence equal to a.
            let b = RatFunc::new(a.num() * &k, a.den() * &k).unwrap();
            let c = RatFunc::new(b.num() * &m, b.den() * &m).unwrap();
            prop_assert!(ratfunc_equal(&a, &a));
            prop_assert_eq!(ratfunc_equal(&a, &b), ratfunc_equal(&b, &a));
            prop_assert!(ratfunc_equal(&a, &b) && ratfunc_equal(&b, &c) && ratfunc_equal(&a, &c));
        }

        #[test]
        fn schwartz_zippel_cross_check(a in small_ratfunc(), b in small_ratfunc(), seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let equal = ratfunc_equal(&a, &b);
            let mut disagreements = 0;
            let mut samples = 0;
            while samples < 10 {
                let pt = [rat(rng.gen_range(-40..=40), rng.gen_range(1..=9)), rat(rng.gen_range(-40..=40), rng.gen_range(1..=9))];
                let (Ok(x), Ok(y)) = (a.eval_positional(&pt), b.eval_positional(&pt)) else { continue };
                samples += 1;
                if x != y {
                    disagreements += 1;
                }
            }
            if equal {
                prop_assert_eq!(disagreements, 0);
            } else {
                prop_assert!(disagreements > 0);
            }
        }
    }
}
