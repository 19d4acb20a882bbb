//! Root counting with Sturm chains, in exact arithmetic.
//!
//! The number of distinct real roots of a polynomial in an interval is
//! decided without ever computing a root: the signed-remainder chain of
//! the squarefree part is evaluated at the endpoints and the difference
//! in sign variations is the count.
//!
//! Internally the chain is kept as primitive integer polynomials built by
//! a sign-preserving pseudo-remainder sequence: every element is a
//! positive rational multiple of the classical Sturm chain element, which
//! leaves all sign variations untouched while keeping coefficients small
//! and making each sign evaluation a gcd-free integer Horner pass.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::interval::{Endpoint, Interval};
use crate::poly::Polynomial;
use crate::rational::Rational;

/// Signed-remainder (Sturm) chain of a squarefree polynomial.
pub struct SturmChain {
    /// Primitive integer polynomials, ascending coefficients.
    chain: Vec<Vec<BigInt>>,
}

impl SturmChain {
    /// Chain `P, P', -rem(P, P'), ...` of the squarefree polynomial `p`,
    /// up to positive scaling of each element.
    ///
    /// The caller is responsible for passing a squarefree `p`; use
    /// [`Polynomial::squarefree_part`] first when in doubt.
    pub fn new(p: &Polynomial) -> Result<Self, Error> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let first = primitive_integer(p);
        let mut chain = vec![first];
        if chain[0].len() == 1 {
            return Ok(SturmChain { chain });
        }
        chain.push(make_primitive(int_derivative(&chain[0])));
        loop {
            let n = chain.len();
            let rem = pseudo_rem_abs(&chain[n - 2], &chain[n - 1]);
            if rem.is_empty() {
                break;
            }
            let negated = rem.into_iter().map(|c| -c).collect();
            chain.push(make_primitive(negated));
        }
        Ok(SturmChain { chain })
    }

    /// Sign variations of the chain at an endpoint (zeros skipped).
    pub fn variations_at(&self, at: &Endpoint) -> usize {
        let mut last: i8 = 0;
        let mut variations = 0;
        for c in &self.chain {
            let s = match at {
                Endpoint::Finite(x) => sign_at_rational(c, x),
                Endpoint::PosInf => int_sign(c.last()),
                Endpoint::NegInf => {
                    let s = int_sign(c.last());
                    if (c.len() - 1) % 2 == 0 {
                        s
                    } else {
                        -s
                    }
                }
            };
            if s != 0 {
                if last != 0 && s != last {
                    variations += 1;
                }
                last = s;
            }
        }
        variations
    }

    /// Distinct roots in the open interval `(a, b)`, endpoints excluded.
    ///
    /// `a` and `b` may themselves be roots; they are never counted.
    pub fn count_open(&self, a: &Endpoint, b: &Endpoint) -> usize {
        let va = self.variations_at(a);
        let vb = self.variations_at(b);
        // V(a) - V(b) counts roots in the half-open (a, b]
        let mut count = va.saturating_sub(vb);
        if let Endpoint::Finite(ub) = b {
            if sign_at_rational(&self.chain[0], ub) == 0 {
                count = count.saturating_sub(1);
            }
        }
        count
    }
}

fn int_sign(v: Option<&BigInt>) -> i8 {
    match v {
        None => 0,
        Some(x) => {
            if x.is_zero() {
                0
            } else if x.is_positive() {
                1
            } else {
                -1
            }
        }
    }
}

/// Sign of `P(n/d)`, where `P` has integer coefficients, via the
/// homogenized integer Horner form `Σ c_i n^i d^(deg-i)`.
fn sign_at_rational(coeffs: &[BigInt], x: &Rational) -> i8 {
    let n = x.numer();
    let d = x.denom();
    let mut acc = coeffs.last().cloned().unwrap_or_else(BigInt::zero);
    let mut dpow = BigInt::from(1u8);
    for c in coeffs.iter().rev().skip(1) {
        dpow *= d;
        acc = acc * n + c * &dpow;
    }
    int_sign(Some(&acc))
}

/// Clears denominators and content; the result is a positive rational
/// multiple of `p` with coprime integer coefficients.
fn primitive_integer(p: &Polynomial) -> Vec<BigInt> {
    let mut lcm = BigInt::from(1u8);
    for c in p.coeffs() {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    make_primitive(ints)
}

/// Divides by the (positive) content.
fn make_primitive(coeffs: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for c in &coeffs {
        g = g.gcd(c);
    }
    if g.is_zero() || g == BigInt::from(1u8) {
        return coeffs;
    }
    coeffs.into_iter().map(|c| c / &g).collect()
}

fn int_derivative(coeffs: &[BigInt]) -> Vec<BigInt> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k))
        .collect()
}

/// Remainder of `|lc(b)|^(deg a - deg b + 1) · a` divided by `b`, all in
/// integer arithmetic. The scaling factor is positive, so the result is a
/// positive multiple of `rem(a, b)`. Empty when the remainder is zero.
fn pseudo_rem_abs(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lead = b[db].abs();
    let mut rem: Vec<BigInt> = a.to_vec();
    if rem.len() <= db {
        return trim(rem);
    }
    let steps = rem.len() - db; // deg a - deg b + 1
    for c in rem.iter_mut() {
        *c = &*c * pow_big(&lead, steps as u32);
    }
    while rem.len() > db {
        let k = rem.len() - 1 - db;
        let factor = &rem[rem.len() - 1] / &b[db]; // exact by construction
        if !factor.is_zero() {
            for (i, bc) in b.iter().enumerate() {
                let v = &rem[k + i] - &factor * bc;
                rem[k + i] = v;
            }
        }
        rem.pop();
        while rem.last().is_some_and(|c| c.is_zero()) {
            rem.pop();
        }
    }
    trim(rem)
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn pow_big(base: &BigInt, exp: u32) -> BigInt {
    let mut acc = BigInt::from(1u8);
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Number of distinct real roots of `p` in the closed interval.
///
/// Finite endpoints are inclusive: `p(a) = 0` counts `a` as a root.
/// Errors on the zero polynomial.
pub fn count_real_roots(p: &Polynomial, interval: &Interval) -> Result<usize, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(0);
    }
    let mut q = p.squarefree_part();
    let mut count = 0usize;

    // Peel off roots sitting exactly on a finite endpoint, then count the
    // open interior with the Sturm chain of what is left.
    for e in [interval.lower(), interval.upper()] {
        if let Endpoint::Finite(x) = e {
            if !q.is_zero() && q.degree() > Some(0) && q.eval(x).is_zero() {
                count += 1;
                q = q
                    .exact_div(&Polynomial::linear_from_root(x))
                    .expect("nonzero linear divisor")
                    .expect("root divides");
            }
        }
    }
    if q.degree() == Some(0) {
        return Ok(count);
    }
    let chain = SturmChain::new(&q)?;
    Ok(count + chain.count_open(interval.lower(), interval.upper()))
}

/// Real roots of `p` in the closed interval, counted with multiplicity.
///
/// A root of multiplicity `m` of `p` has multiplicity `m - 1` in
/// `gcd(p, p')`, so the total follows by recursion on that gcd.
pub fn count_real_roots_with_multiplicity(
    p: &Polynomial,
    interval: &Interval,
) -> Result<usize, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut total = 0usize;
    let mut q = p.clone();
    while q.degree() > Some(0) {
        total += count_real_roots(&q.squarefree_part(), interval)?;
        q = q.gcd(&q.derivative());
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn p(coeffs: &[(i64, i64)]) -> Polynomial {
        Polynomial::new(coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    fn closed(a: i64, b: i64) -> Interval {
        Interval::closed(rat_int(a), rat_int(b)).unwrap()
    }

    #[test]
    fn quadratic_with_two_roots_in_unit_interval() {
        // t^2 - t + 1/16: roots 0.0669..., 0.9330...
        let q = p(&[(1, 16), (-1, 1), (1, 1)]);
        assert_eq!(count_real_roots(&q, &closed(0, 1)).unwrap(), 2);
    }

    #[test]
    fn no_real_roots() {
        let q = p(&[(1, 1), (0, 1), (1, 1)]); // t^2 + 1
        assert_eq!(count_real_roots(&q, &closed(-10, 10)).unwrap(), 0);
        assert_eq!(count_real_roots(&q, &Interval::real_line()).unwrap(), 0);
    }

    #[test]
    fn symmetric_quadratic() {
        let q = p(&[(-3, 5), (0, 1), (1, 1)]); // roots ±sqrt(3/5) ≈ ±0.7746
        assert_eq!(count_real_roots(&q, &closed(-1, 1)).unwrap(), 2);
        assert_eq!(count_real_roots(&q, &closed(0, 1)).unwrap(), 1);
        assert_eq!(
            count_real_roots(&q, &Interval::closed(rat_int(-1), rat(-4, 5)).unwrap()).unwrap(),
            0
        );
    }

    #[test]
    fn endpoint_roots_count() {
        // t(t-1): both roots are interval endpoints of [0,1]
        let q = p(&[(0, 1), (-1, 1), (1, 1)]);
        assert_eq!(count_real_roots(&q, &closed(0, 1)).unwrap(), 2);
        assert_eq!(count_real_roots(&q, &closed(0, 2)).unwrap(), 2);
        assert_eq!(
            count_real_roots(&q, &Interval::closed(rat(1, 4), rat(1, 2)).unwrap()).unwrap(),
            0
        );
    }

    #[test]
    fn repeated_roots_counted_once_distinct() {
        let lin = p(&[(-1, 2), (1, 1)]);
        let square = &lin * &lin;
        assert_eq!(count_real_roots(&square, &closed(0, 1)).unwrap(), 1);
        assert_eq!(
            count_real_roots_with_multiplicity(&square, &closed(0, 1)).unwrap(),
            2
        );
    }

    #[test]
    fn multiplicity_mixed() {
        // (t-1/2)^2 (t+2) (t-3)^3 on the whole line: 2 + 1 + 3 = 6
        let a = p(&[(-1, 2), (1, 1)]);
        let b = p(&[(2, 1), (1, 1)]);
        let c = p(&[(-3, 1), (1, 1)]);
        let q = &(&(&a * &a) * &b) * &(&(&c * &c) * &c);
        assert_eq!(
            count_real_roots_with_multiplicity(&q, &Interval::real_line()).unwrap(),
            6
        );
        assert_eq!(count_real_roots(&q, &Interval::real_line()).unwrap(), 3);
        // restrict to [0, 1]: only the double root at 1/2
        assert_eq!(
            count_real_roots_with_multiplicity(&q, &closed(0, 1)).unwrap(),
            2
        );
    }

    #[test]
    fn half_lines() {
        let q = p(&[(0, 1), (-1, 1), (0, 1), (1, 1)]); // t(t^2-1): roots -1, 0, 1
        let nonneg = Interval::new(Endpoint::Finite(rat_int(0)), Endpoint::PosInf).unwrap();
        assert_eq!(count_real_roots(&q, &nonneg).unwrap(), 2);
        let below = Interval::new(Endpoint::NegInf, Endpoint::Finite(rat(-1, 2))).unwrap();
        assert_eq!(count_real_roots(&q, &below).unwrap(), 1);
    }

    #[test]
    fn zero_polynomial_is_an_error() {
        assert!(count_real_roots(&Polynomial::zero(), &closed(0, 1)).is_err());
    }

    #[test]
    fn degree_nine_product() {
        let mut q = Polynomial::one();
        for k in 0..9 {
            q = &q * &Polynomial::linear_from_root(&rat(k, 9));
        }
        assert_eq!(count_real_roots(&q, &closed(0, 1)).unwrap(), 9);
        assert_eq!(count_real_roots(&q, &Interval::real_line()).unwrap(), 9);
    }

    #[test]
    fn chain_counts_match_eval_signs() {
        // chain elements are positive multiples of the rational Sturm
        // chain: spot-check variation counts against brute interval walks
        let q = p(&[(3, 7), (-9, 2), (1, 1), (5, 3), (1, 1)]);
        let sf = q.squarefree_part();
        let chain = SturmChain::new(&sf).unwrap();
        let total = chain.count_open(&Endpoint::NegInf, &Endpoint::PosInf);
        // count sign changes of q on a fine grid as a sanity floor
        let mut grid_changes = 0;
        let mut last = 0i8;
        for i in -4000..=4000 {
            let v = q.eval(&rat(i, 100));
            let s = crate::rational::sign(&v);
            if s != 0 {
                if last != 0 && s != last {
                    grid_changes += 1;
                }
                last = s;
            }
        }
        assert_eq!(total, grid_changes);
    }
}
