//! Triangular numbers `t_n = n(n+1)/2` and their inverse through
//! `8 t_s + 1 = (2s + 1)^2`.

use num_traits::{One, Signed};

use crate::exact::{perfect_square_root, rational_sqrt, Integer, Rational};

pub fn tri(n: &Integer) -> Integer {
    n * (n + 1u32) / 2u32
}

pub fn tri_rational(x: &Rational) -> Rational {
    x * (x + Rational::one()) / Integer::from(2)
}

/// The index `n >= 0` with `t_n = t`, if `t` is triangular.
pub fn inv_tri(t: &Integer) -> Option<Integer> {
    if t.is_negative() {
        return None;
    }
    let r = perfect_square_root(&(t * 8u32 + 1u32))?;
    Some((r - 1u32) / 2u32)
}

/// Solves `t_s = value` over the rationals, returning the root with
/// `2s + 1 >= 0`. The other root is `-1 - s` (see [`conjugate_index`]).
pub fn solve_index(value: &Rational) -> Option<Rational> {
    let disc = value * Integer::from(8) + Rational::one();
    let r = rational_sqrt(&disc)?;
    Some((r - Rational::one()) / Integer::from(2))
}

pub fn conjugate_index(s: &Rational) -> Rational {
    -Rational::one() - s
}

pub fn is_triangular(t: &Integer) -> bool {
    inv_tri(t).is_some()
}
