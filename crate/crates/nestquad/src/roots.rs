//! Real-root isolation and refinement for certified node polynomials.
//!
//! Isolation bisects on Sturm counts until every subinterval holds one
//! root, then each bracket is tightened by bisection-safeguarded Newton
//! steps. All bracketing decisions are exact sign evaluations of the
//! polynomial at rational points, so the output is deterministic and
//! every returned bracket provably contains its root. Rational roots hit
//! exactly along the way (interval endpoints, bisection midpoints, Newton
//! landing on the root) are reported exactly.

use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::interval::{Endpoint, Interval};
use crate::poly::Polynomial;
use crate::rational::{pow10, rat_int, sign, Rational};
use crate::real::{round_dyadic, round_sig, Real};
use crate::sturm::{count_real_roots, SturmChain};

/// All real roots of `p`, sorted ascending, to `digits` significant
/// decimal digits.
///
/// Expects what the extension certificates guarantee: `p` squarefree with
/// every root real, simple and inside the closed domain. Violations are
/// detected and reported as [`Error::CertificateViolation`].
pub fn real_roots(p: &Polynomial, omega: &Interval, digits: u32) -> Result<Vec<Real>, Error> {
    let degree = p.degree().ok_or(Error::ZeroPolynomial)?;
    if degree == 0 {
        return Ok(Vec::new());
    }
    if !p.is_squarefree() {
        return Err(Error::CertificateViolation(
            "node polynomial has a repeated root".to_string(),
        ));
    }
    if count_real_roots(p, omega)? != degree {
        return Err(Error::CertificateViolation(format!(
            "node polynomial has roots outside {omega} or complex roots"
        )));
    }

    // clamp the search window to the Cauchy bound
    let bound = p.root_bound().expect("nonzero");
    let lo = match omega.lower() {
        Endpoint::Finite(a) if a > &-&bound => a.clone(),
        _ => -bound.clone(),
    };
    let hi = match omega.upper() {
        Endpoint::Finite(b) if b < &bound => b.clone(),
        _ => bound.clone(),
    };

    let mut exact: Vec<Rational> = Vec::new();
    let mut q = p.clone();
    // roots sitting exactly on the window edge
    for e in [&lo, &hi] {
        if q.degree() > Some(0) && q.eval(e).is_zero() {
            exact.push(e.clone());
            q = deflate(&q, e);
        }
    }

    let mut brackets: Vec<(Rational, Rational)> = Vec::new();
    isolate(&mut q, &lo, &hi, &mut exact, &mut brackets)?;

    let mut roots: Vec<Real> = exact
        .into_iter()
        .map(|r| Real::exact(r, digits))
        .collect();
    // refine against the fully deflated polynomial: brackets may share an
    // endpoint with an exact root of the original, but never with one of q
    for (a, b) in brackets {
        roots.push(refine(&q, a, b, digits));
    }
    roots.sort_by(|x, y| x.value().cmp(y.value()));

    if roots.len() != degree
        || roots.windows(2).any(|w| w[0].value() >= w[1].value())
    {
        return Err(Error::CertificateViolation(
            "isolation did not separate the expected number of roots".to_string(),
        ));
    }
    Ok(roots)
}

fn deflate(q: &Polynomial, root: &Rational) -> Polynomial {
    q.exact_div(&Polynomial::linear_from_root(root))
        .expect("nonzero linear divisor")
        .expect("root divides exactly")
}

/// Splits `(lo, hi)` into subintervals holding one root each. Rational
/// roots discovered at bisection points are deflated out and recorded.
fn isolate(
    q: &mut Polynomial,
    lo: &Rational,
    hi: &Rational,
    exact: &mut Vec<Rational>,
    brackets: &mut Vec<(Rational, Rational)>,
) -> Result<(), Error> {
    if q.degree() == Some(1) {
        // linear factor: the root is rational
        let root = -(q.coeff(0) / q.coeff(1));
        if &root > lo && &root < hi {
            exact.push(root);
            *q = Polynomial::one();
            return Ok(());
        }
    }
    let chain = SturmChain::new(q)?;
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        let count = chain.count_open(
            &Endpoint::Finite(a.clone()),
            &Endpoint::Finite(b.clone()),
        );
        match count {
            0 => {}
            1 => brackets.push((a, b)),
            _ => {
                let mid = (&a + &b) / rat_int(2);
                if q.eval(&mid).is_zero() {
                    exact.push(mid.clone());
                    *q = deflate(q, &mid);
                    // the chain no longer matches q; start over on both halves
                    isolate(q, &a, &mid, exact, brackets)?;
                    isolate(q, &mid, &b, exact, brackets)?;
                    return finish_stack(q, stack, exact, brackets);
                }
                stack.push((a, mid.clone()));
                stack.push((mid, b));
            }
        }
    }
    Ok(())
}

fn finish_stack(
    q: &mut Polynomial,
    stack: Vec<(Rational, Rational)>,
    exact: &mut Vec<Rational>,
    brackets: &mut Vec<(Rational, Rational)>,
) -> Result<(), Error> {
    for (a, b) in stack {
        isolate(q, &a, &b, exact, brackets)?;
    }
    Ok(())
}

/// Bisection-safeguarded Newton refinement of a bracket known to contain
/// exactly one simple root.
///
/// Newton iterates on dyadic points with growing grid precision and
/// terminates when the correction is below the target, at which point the
/// result is certified by an exact sign change across `x ± 4|correction|`.
/// Whenever Newton stalls or wanders, a burst of bisection steps shrinks
/// the bracket and Newton restarts.
fn refine(p: &Polynomial, mut a: Rational, mut b: Rational, digits: u32) -> Real {
    let dp = p.derivative();
    let mut sa = sign(&p.eval(&a));
    debug_assert_ne!(sa, 0);
    debug_assert_ne!(sign(&p.eval(&b)), 0);
    debug_assert_ne!(sa, sign(&p.eval(&b)));
    let rel_tol = pow10(-(digits as i64 + 5));
    // ~3.33 bits per decimal digit, plus guard bits
    let bits_cap = ((digits as u64 + 8) * 10 / 3 + 64) as u32;

    loop {
        // absolute while the bracket straddles zero, relative once clear
        let scale = if a.is_positive() || b.is_negative() {
            a.abs().max(b.abs())
        } else {
            Rational::from_integer(1.into())
        };
        let tol = &rel_tol * &scale;
        if &b - &a <= tol {
            break;
        }

        match newton_run(p, &dp, &a, &b, sa, &tol, bits_cap) {
            NewtonResult::Exact(r) => return Real::exact(r, digits),
            NewtonResult::Certified(x) => {
                return Real::approx(round_sig(&x, digits), digits);
            }
            NewtonResult::Stalled => {}
        }

        // bisection burst, then give Newton another go
        for _ in 0..8 {
            let m = (&a + &b) / rat_int(2);
            let sm = sign(&p.eval(&m));
            if sm == 0 {
                return Real::exact(m, digits);
            }
            if sm == sa {
                a = m;
                sa = sm;
            } else {
                b = m;
            }
        }
    }
    Real::approx(round_sig(&((&a + &b) / rat_int(2)), digits), digits)
}

enum NewtonResult {
    /// Landed exactly on a rational root.
    Exact(Rational),
    /// Converged; the value carries a verified sign-change bracket.
    Certified(Rational),
    /// No convergence from this bracket; caller should bisect.
    Stalled,
}

fn newton_run(
    p: &Polynomial,
    dp: &Polynomial,
    a: &Rational,
    b: &Rational,
    sa: i8,
    tol: &Rational,
    bits_cap: u32,
) -> NewtonResult {
    let mut x = (a + b) / rat_int(2);
    let mut last_correction: Option<Rational> = None;
    for _ in 0..64 {
        let d = dp.eval(&x);
        if d.is_zero() {
            return NewtonResult::Stalled;
        }
        let value = p.eval(&x);
        if value.is_zero() {
            return NewtonResult::Exact(x);
        }
        let correction = value / d;
        let mag = correction.abs();
        if let Some(prev) = &last_correction {
            if mag >= *prev {
                return NewtonResult::Stalled;
            }
        }
        if &mag * &rat_int(4) <= *tol {
            // verify: the polynomial must change sign across next ± δ.
            // Probe points are snapped to the dyadic grid so the exact
            // evaluations stay cheap; δ absorbs both the Newton error and
            // the snapping error.
            let ulp = Rational::new(1.into(), num_bigint::BigInt::from(1u8) << bits_cap);
            let next = round_dyadic(&(&x - &correction), bits_cap);
            if p.eval(&next).is_zero() {
                return NewtonResult::Exact(next);
            }
            let delta = round_dyadic(&(&mag * &rat_int(8)), bits_cap) + &ulp + &ulp;
            let lo = &next - &delta;
            let hi = &next + &delta;
            if &lo <= a || &hi >= b {
                return NewtonResult::Stalled;
            }
            let sl = sign(&p.eval(&lo));
            let sh = sign(&p.eval(&hi));
            if sl == 0 {
                return NewtonResult::Exact(lo);
            }
            if sh == 0 {
                return NewtonResult::Exact(hi);
            }
            if sl != sh {
                return NewtonResult::Certified(next);
            }
            return NewtonResult::Stalled;
        }
        let grid = (2 * width_bits(&mag).max(8) + 32).min(bits_cap as u64) as u32;
        let x1 = round_dyadic(&(&x - &correction), grid);
        if &x1 <= a || &x1 >= b {
            return NewtonResult::Stalled;
        }
        x = x1;
        last_correction = Some(mag);
    }
    let _ = sa;
    NewtonResult::Stalled
}

/// Bits of precision implied by a width: roughly -log2(width).
fn width_bits(width: &Rational) -> u64 {
    let nb = width.numer().bits();
    let db = width.denom().bits();
    db.saturating_sub(nb).max(1)
}
