//! Resultants and discriminants via the Sylvester matrix.
//!
//! `resultant(F, G)` vanishes exactly when `F` and `G` share a root over
//! the complex numbers; `discriminant(P)` vanishes exactly when `P` has a
//! repeated root. Both certify node configurations without computing any
//! root. Determinants are evaluated fraction-free on denominator-cleared
//! matrices and rescaled, so the returned scalars are the exact classical
//! values, not just sign-equivalent ones.

use num_traits::{One, Zero};

use crate::error::Error;
use crate::linalg::determinant;
use crate::poly::Polynomial;
use crate::rational::Rational;

/// Sylvester matrix of `f` (degree n) and `g` (degree m): `(n+m) × (n+m)`.
fn sylvester_matrix(f: &Polynomial, g: &Polynomial) -> Vec<Vec<Rational>> {
    let n = f.degree().expect("nonzero");
    let m = g.degree().expect("nonzero");
    let size = n + m;
    let mut rows = Vec::with_capacity(size);
    // m rows of f's coefficients, descending, shifted
    for shift in 0..m {
        let mut row = vec![Rational::zero(); size];
        for k in 0..=n {
            row[shift + k] = f.coeff(n - k);
        }
        rows.push(row);
    }
    // n rows of g's coefficients
    for shift in 0..n {
        let mut row = vec![Rational::zero(); size];
        for k in 0..=m {
            row[shift + k] = g.coeff(m - k);
        }
        rows.push(row);
    }
    rows
}

/// Resultant of two nonzero polynomials.
///
/// Zero iff `f` and `g` have a common (complex) root. For constant
/// operands the usual conventions apply: `res(c, g) = c^deg(g)`.
pub fn resultant(f: &Polynomial, g: &Polynomial) -> Result<Rational, Error> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    let m = g.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Ok(pow_rational(f.coeff(0), m as u32));
    }
    if m == 0 {
        return Ok(pow_rational(g.coeff(0), n as u32));
    }
    Ok(determinant(&sylvester_matrix(f, g)))
}

/// Discriminant of a polynomial of degree at least one.
///
/// `disc(P) = (-1)^(d(d-1)/2) · res(P, P') / lc(P)`; zero iff `P` has a
/// repeated root. For degree two `at² + bt + c` this is `b² - 4ac`; for
/// degree one it is 1.
pub fn discriminant(p: &Polynomial) -> Result<Rational, Error> {
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    if d == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if d == 1 {
        return Ok(Rational::one());
    }
    let res = resultant(p, &p.derivative())?;
    let lc = p.leading_coefficient().expect("nonzero").clone();
    let sign_flip = (d * (d - 1) / 2) % 2 == 1;
    let value = res / lc;
    Ok(if sign_flip { -value } else { value })
}

fn pow_rational(base: Rational, exp: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= &base;
    }
    acc
}
