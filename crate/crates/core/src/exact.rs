//! Exact integer and rational scalars.
//!
//! Everything in the crate is computed over [`Integer`] and [`Rational`];
//! there is no floating point anywhere. Rationals are kept in canonical form
//! (positive denominator, coprime parts) after every operation, so equality
//! and hashing are structural.

use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Integer {
    Integer::from(n)
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(Integer::from(num), Integer::from(den))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(Integer::from(n))
}

/// Floor of the square root, by Newton iteration from an upper bound.
pub fn isqrt(n: &Integer) -> Result<Integer> {
    if n.is_negative() {
        return Err(Error::Domain(format!("isqrt of negative integer {n}")));
    }
    if n < &int(2) {
        return Ok(n.clone());
    }
    // 2^ceil(bits/2) > sqrt(n), so the iteration decreases monotonically.
    let mut x = Integer::one() << n.bits().div_ceil(2);
    loop {
        let y = (&x + n / &x) >> 1;
        if y >= x {
            break;
        }
        x = y;
    }
    while &x * &x > *n {
        x -= 1;
    }
    while (&x + 1u32) * (&x + 1u32) <= *n {
        x += 1;
    }
    Ok(x)
}

pub fn perfect_square_root(n: &Integer) -> Option<Integer> {
    if n.is_negative() {
        return None;
    }
    // Squares are 0 or 1 mod 4 and one of {0,1,4,9} mod 16.
    let low = n.iter_u32_digits().next().unwrap_or(0) & 15;
    if !matches!(low, 0 | 1 | 4 | 9) {
        return None;
    }
    let r = isqrt(n).ok()?;
    (&r * &r == *n).then_some(r)
}

/// Nonnegative square root of a rational, if it has one.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    let num = perfect_square_root(q.numer())?;
    let den = perfect_square_root(q.denom())?;
    Some(Rational::new(num, den))
}

pub fn is_integral(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Parses `a/b` or `a`. The sign may only appear on the numerator and the
/// denominator must be positive.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational literal {s:?} (expected \"a/b\" or \"a\")"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num = parse_signed(num).ok_or_else(bad)?;
    let den = match den {
        None => Integer::one(),
        Some(d) => {
            if !d.bytes().all(|b| b.is_ascii_digit()) || d.is_empty() {
                return Err(bad());
            }
            let d: Integer = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            d
        }
    };
    Ok(Rational::new(num, den))
}

fn parse_signed(s: &str) -> Option<Integer> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Always `num/den`, even for integers. Used by the machine-readable outputs.
pub fn fraction_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Smallest positive `lambda` with `den_a | lambda^4` and `den_b | lambda^6`.
///
/// Factors the denominators by trial division, which is fine for the
/// denominators produced by small rational parameters.
pub fn weierstrass_scaling(den_a: &Integer, den_b: &Integer) -> Integer {
    let mut lambda = Integer::one();
    let fa = factor_trial(den_a);
    let fb = factor_trial(den_b);
    let mut primes: Vec<&Integer> = fa.iter().chain(fb.iter()).map(|(p, _)| p).collect();
    primes.sort();
    primes.dedup();
    for p in primes {
        let ea = fa.iter().find(|(q, _)| q == p).map_or(0, |(_, e)| *e);
        let eb = fb.iter().find(|(q, _)| q == p).map_or(0, |(_, e)| *e);
        let k = ea.div_ceil(4).max(eb.div_ceil(6));
        lambda *= num_traits::pow(p.clone(), k as usize);
    }
    lambda
}

fn factor_trial(n: &Integer) -> Vec<(Integer, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = int(2);
    while &p * &p <= n {
        let mut e = 0;
        while n.is_multiple_of(&p) {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += if p == int(2) { 1 } else { 2 };
    }
    if n > Integer::one() {
        out.push((n, 1));
    }
    out
}

pub fn sign_of(q: &Rational) -> Sign {
    q.numer().sign()
}
