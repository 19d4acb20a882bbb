//! Exact linear algebra: fraction-free (Bareiss) determinants and solves.
//!
//! Rational inputs are cleared to integers row by row, eliminated with the
//! Bareiss recurrence (every intermediate division is exact), and mapped
//! back. Singularity is decided exactly: a column with no nonzero pivot.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev; // exact by Bareiss
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Leading principal minors `det(M[..k][..k])` for `k = 1..=n`.
///
/// Computed in one pivot-free Bareiss pass: the running pivots are exactly
/// the minors. Stops early when a minor vanishes (the remaining ones are
/// not defined by this pass); the zero minor is included, so callers
/// checking positivity see the failure.
pub fn leading_principal_minors(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let n = m.len();
    let mut minors = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            minors.push(BigInt::zero());
            return minors;
        }
        minors.push(m[k][k].clone());
        if k + 1 == n {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    minors
}

/// Determinant of a square rational matrix.
pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    let mut scale = Rational::one();
    let mut im = Vec::with_capacity(n);
    for row in m {
        let (irow, l) = clear_row(row);
        scale *= Rational::from_integer(l);
        im.push(irow);
    }
    Rational::from_integer(bareiss_determinant(im)) / scale
}

/// Solves the square system `A x = b` exactly.
///
/// Returns `None` when the matrix is singular — even if the singular
/// system happens to be consistent, no solution is reported.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    assert_eq!(b.len(), n);
    if n == 0 {
        return Some(Vec::new());
    }
    // augmented integer matrix, row-cleared
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for (row, rhs) in a.iter().zip(b) {
        assert_eq!(row.len(), n);
        let mut full: Vec<Rational> = row.to_vec();
        full.push(rhs.clone());
        let (irow, _) = clear_row(&full);
        m.push(irow);
    }

    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => m.swap(k, r),
                None => return None,
            }
        }
        for i in k + 1..n {
            for j in k + 1..=n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }

    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(m[i][n].clone());
        for j in i + 1..n {
            acc -= Rational::from_integer(m[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rational::from_integer(m[i][i].clone());
    }
    Some(x)
}

/// Scales a rational row to integers; returns the row and the (positive)
/// common denominator used.
fn clear_row(row: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let mut l = BigInt::one();
    for c in row {
        l = l.lcm(c.denom());
    }
    l = l.abs();
    let out = row
        .iter()
        .map(|c| c.numer() * (&l / c.denom()))
        .collect();
    (out, l)
}
