//! Exact rational scalars.
//!
//! All exact values in this crate are [`Rational`]s: arbitrary-precision
//! fractions kept in canonical form (positive denominator, fully reduced).
//! The wire representation everywhere is the string `"p/q"`, shortened to
//! `"p"` when the denominator is one, which is exactly what
//! `BigRational`'s `Display`/`FromStr` produce and accept.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision exact rational number.
pub type Rational = num_rational::BigRational;

/// Shorthand for a rational from an integer pair. Panics on zero denominator.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses the `"p/q"` (or plain `"p"`) form.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let r: Rational = s.parse().ok()?;
    Some(r)
}

/// Formats in the `"p/q"` (or plain `"p"`) form.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// 10^k as a positive rational, for any integer k.
pub fn pow10(k: i64) -> Rational {
    let p = BigInt::from(10u32).pow(k.unsigned_abs() as u32);
    if k >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}
