//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::exact::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Singular;

/// Solves `a * x = b` for square `a` by Gauss-Jordan elimination.
pub fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Result<Vec<Rational>, Singular> {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n) && b.len() == n, "square system expected");
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Singular)?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for k in col..n {
            a[col][k] *= &inv;
        }
        b[col] *= &inv;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for k in col..n {
                let delta = &factor * &a[col][k];
                a[r][k] -= delta;
            }
            let delta = &factor * &b[col];
            b[r] -= delta;
        }
    }
    Ok(b)
}

pub fn determinant(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        det *= &a[col][col];
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &a[col][col];
            for k in col..n {
                let delta = &factor * &a[col][k];
                a[r][k] -= delta;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    #[test]
    fn solves_small_system() {
        let a = vec![
            vec![rat_int(2), rat_int(1), rat_int(-1)],
            vec![rat_int(-3), rat_int(-1), rat_int(2)],
            vec![rat_int(-2), rat_int(1), rat_int(2)],
        ];
        let b = vec![rat_int(8), rat_int(-11), rat_int(-3)];
        assert_eq!(determinant(a.clone()), rat_int(-1));
        assert_eq!(solve(a, b).unwrap(), vec![rat_int(2), rat_int(3), rat_int(-1)]);
    }

    #[test]
    fn needs_pivoting() {
        let a = vec![vec![rat_int(0), rat(1, 2)], vec![rat_int(3), rat_int(0)]];
        assert_eq!(solve(a.clone(), vec![rat_int(1), rat_int(1)]).unwrap(), vec![rat(1, 3), rat_int(2)]);
        assert_eq!(determinant(a), rat(-3, 2));
    }

    #[test]
    fn singular_is_reported() {
        let a = vec![vec![rat_int(1), rat_int(2)], vec![rat_int(2), rat_int(4)]];
        assert_eq!(solve(a.clone(), vec![rat_int(1), rat_int(2)]), Err(Singular));
        assert_eq!(determinant(a), rat_int(0));
    }
}
