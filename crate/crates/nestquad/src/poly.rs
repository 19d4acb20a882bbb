//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored in ascending degree order and kept canonical:
//! the leading (last) coefficient is nonzero, and the zero polynomial has
//! an empty coefficient vector. All arithmetic is exact.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::rational::{format_rational, Rational};

/// Univariate polynomial with exact rational coefficients, ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients, trimming leading zeros.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    /// The monomial `c · t^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Polynomial { coeffs }
    }

    /// The monic linear polynomial `t − root`.
    pub fn linear_from_root(root: &Rational) -> Self {
        Polynomial::new(vec![-root.clone(), Rational::one()])
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Polynomial::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coefficient().is_some_and(|c| c.is_one())
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Same polynomial with leading coefficient one.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => Polynomial::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Euclidean division: `self = q · divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial), Error> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = &rem[rem.len() - 1] / &lead;
            if !factor.is_zero() {
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    let v = &rem[k + i] - &factor * c;
                    rem[k + i] = v;
                }
                quot[k] = factor;
            }
            // the leading term cancels exactly
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        Ok((Polynomial::new(quot), Polynomial { coeffs: rem }))
    }

    /// Exact quotient if `divisor` divides `self` with zero remainder.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Option<Polynomial>, Error> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(if r.is_zero() { Some(q) } else { None })
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self / gcd(self, self')`: same distinct roots, all simple.
    pub fn squarefree_part(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        if self.degree() == Some(0) {
            return Polynomial::one();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g)
            .expect("gcd is nonzero")
            .expect("gcd divides")
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Multiplies by the monomial `t^k`.
    pub fn shift_up(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    /// Cauchy bound: every real root has absolute value below the result.
    pub fn root_bound(&self) -> Option<Rational> {
        let lc = self.leading_coefficient()?;
        let max_ratio = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| (c / lc).abs())
            .max()
            .unwrap_or_else(Rational::zero);
        Some(Rational::one() + max_ratio)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        Polynomial::new(out)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - rhs.coeff(k));
        }
        Polynomial::new(out)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let v = &out[i + j] + a * b;
                out[i + j] = v;
            }
        }
        Polynomial { coeffs: out }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    /// Human-readable form in descending powers of `t`, e.g. `t^2 - t + 1/16`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !mag.is_one() || k == 0;
            if show_coeff {
                write!(f, "{}", format_rational(&mag))?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}t", if show_coeff { " " } else { "" })?,
                _ => write!(f, "{}t^{}", if show_coeff { " " } else { "" }, k)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn p(coeffs: &[(i64, i64)]) -> Polynomial {
        Polynomial::new(coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn canonical_form() {
        let q = Polynomial::new(vec![rat_int(1), rat_int(0), rat_int(0)]);
        assert_eq!(q.degree(), Some(0));
        assert!(Polynomial::new(vec![rat_int(0)]).is_zero());
        assert!(Polynomial::zero().degree().is_none());
    }

    #[test]
    fn multiply_matches_hand_expansion() {
        // (t - 1/2)(t^2 - t + 1/16) = t^3 - 3/2 t^2 + 9/16 t - 1/32
        let a = p(&[(-1, 2), (1, 1)]);
        let b = p(&[(1, 16), (-1, 1), (1, 1)]);
        let prod = &a * &b;
        assert_eq!(prod, p(&[(-1, 32), (9, 16), (-3, 2), (1, 1)]));
    }

    #[test]
    fn product_degree_adds() {
        let a = p(&[(3, 1), (2, 1)]);
        let b = p(&[(0, 1), (0, 1), (5, 7)]);
        assert_eq!(
            (&a * &b).degree().unwrap(),
            a.degree().unwrap() + b.degree().unwrap()
        );
    }

    #[test]
    fn coprime_gcd_is_one() {
        // gcd(t^2 - t + 1/16, t - 1/2) = 1 since the quadratic is -3/16 at 1/2
        let a = p(&[(1, 16), (-1, 1), (1, 1)]);
        let b = p(&[(-1, 2), (1, 1)]);
        assert_eq!(a.eval(&rat(1, 2)), rat(-3, 16));
        assert_eq!(a.gcd(&b), Polynomial::one());
    }

    #[test]
    fn gcd_finds_common_factor_monic() {
        let common = p(&[(-1, 3), (1, 1)]);
        let a = &common * &p(&[(2, 1), (4, 1)]);
        let b = &common * &p(&[(1, 1), (0, 1), (3, 1)]);
        assert_eq!(a.gcd(&b), common);
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        assert!(Polynomial::one().derivative().is_zero());
        let q = p(&[(1, 16), (-1, 1), (1, 1)]);
        assert_eq!(q.derivative(), p(&[(-1, 1), (2, 1)]));
    }

    #[test]
    fn division_by_zero_polynomial_errors() {
        let a = p(&[(1, 1), (1, 1)]);
        assert!(matches!(
            a.div_rem(&Polynomial::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = p(&[(1, 32), (0, 1), (-7, 3), (0, 1), (1, 1)]);
        let b = p(&[(-1, 2), (1, 1), (2, 1)]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap() < b.degree().unwrap());
    }

    #[test]
    fn exact_division_detects_divisibility() {
        let a = p(&[(-1, 2), (1, 1)]);
        let b = p(&[(1, 16), (-1, 1), (1, 1)]);
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&a).unwrap(), Some(b.clone()));
        assert_eq!(b.exact_div(&a).unwrap(), None);
    }

    #[test]
    fn squarefree_part_strips_multiplicity() {
        let lin = p(&[(-1, 2), (1, 1)]);
        let square = &lin * &lin;
        assert_eq!(square.squarefree_part(), lin);
        assert!(!square.is_squarefree());
        assert!(lin.is_squarefree());
    }

    #[test]
    fn eval_horner() {
        let q = p(&[(1, 1), (-2, 1), (1, 1)]); // (t-1)^2
        assert_eq!(q.eval(&rat_int(1)), rat_int(0));
        assert_eq!(q.eval(&rat_int(3)), rat_int(4));
    }

    #[test]
    fn root_bound_contains_roots() {
        let q = p(&[(-3, 5), (0, 1), (1, 1)]); // roots ±sqrt(3/5)
        let bound = q.root_bound().unwrap();
        assert!(bound > rat(7746, 10000));
    }

    #[test]
    fn display_descending() {
        let q = p(&[(1, 16), (-1, 1), (1, 1)]);
        assert_eq!(q.to_string(), "t^2 - t + 1/16");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(p(&[(0, 1), (-3, 16), (19, 16)]).to_string(), "19/16 t^2 - 3/16 t");
    }
}
