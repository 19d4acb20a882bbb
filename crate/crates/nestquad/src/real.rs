//! Precision-tagged real scalars.
//!
//! A [`Real`] is a rational value carrying a decimal significance tag.
//! Exact values pass through arithmetic unrounded; approximate values are
//! rounded (half-even) to their stated number of significant decimal
//! digits after every operation, which gives deterministic fixed-precision
//! behaviour without any floating-point types. Combining an exact and an
//! approximate operand yields an approximate result at the approximate
//! operand's precision.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{pow10, Rational};

/// Decimal exponent `e` with `10^e <= |q| < 10^(e+1)`. Panics on zero.
pub fn decimal_exponent(q: &Rational) -> i64 {
    assert!(!q.is_zero(), "decimal exponent of zero");
    let n = q.numer().abs();
    let d = q.denom().clone();
    // first guess from bit lengths, then correct by direct comparison
    let mut e = ((n.bits() as i64 - d.bits() as i64) as f64 * std::f64::consts::LOG10_2)
        .floor() as i64;
    loop {
        // 10^e <= n/d  <=>  10^e * d <= n (for e >= 0), d <= n * 10^-e otherwise
        let lower_ok = cmp_pow10(&n, &d, e) != Ordering::Less;
        if !lower_ok {
            e -= 1;
            continue;
        }
        let upper_ok = cmp_pow10(&n, &d, e + 1) == Ordering::Less;
        if !upper_ok {
            e += 1;
            continue;
        }
        return e;
    }
}

/// Compares `n/d` against `10^e` (all positive).
fn cmp_pow10(n: &BigInt, d: &BigInt, e: i64) -> Ordering {
    if e >= 0 {
        n.cmp(&(d * BigInt::from(10u8).pow(e as u32)))
    } else {
        (n * BigInt::from(10u8).pow((-e) as u32)).cmp(d)
    }
}

/// Rounds to the nearest integer, ties to even.
pub fn round_half_even(q: &Rational) -> BigInt {
    let (floor, rem) = q.numer().div_mod_floor(q.denom());
    let twice = &rem * BigInt::from(2u8);
    match twice.cmp(q.denom()) {
        Ordering::Less => floor,
        Ordering::Greater => floor + 1,
        Ordering::Equal => {
            if floor.is_even() {
                floor
            } else {
                floor + 1
            }
        }
    }
}

/// Rounds `q` to `digits` significant decimal digits (half-even).
pub fn round_sig(q: &Rational, digits: u32) -> Rational {
    if q.is_zero() {
        return Rational::zero();
    }
    let e = decimal_exponent(q);
    let shift = digits as i64 - 1 - e;
    let scaled = q * pow10(shift);
    Rational::from_integer(round_half_even(&scaled)) * pow10(-shift)
}

/// Rounds `q` to the dyadic grid `k / 2^frac_bits` (half-even).
pub fn round_dyadic(q: &Rational, frac_bits: u32) -> Rational {
    let scale = BigInt::one() << frac_bits;
    let scaled = q * Rational::from_integer(scale.clone());
    Rational::new(round_half_even(&scaled), scale)
}

/// Parses a plain decimal string (optional sign, optional fraction,
/// optional `e`-exponent) into the exact rational it denotes.
pub fn parse_decimal(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0i64),
    };
    let (sign, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match body.find('.') {
        Some(i) => (&body[..i], &body[i + 1..]),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().ok()?
    };
    let value = Rational::from_integer(n * BigInt::from(sign))
        * pow10(exp - frac_part.len() as i64);
    Some(value)
}

/// Formats `q` rounded to `digits` significant figures as a plain decimal
/// string (scientific form only for extreme magnitudes).
pub fn format_decimal(q: &Rational, digits: u32) -> String {
    assert!(digits >= 1);
    if q.is_zero() {
        return "0".to_string();
    }
    let neg = q.is_negative();
    let a = q.abs();
    let mut e = decimal_exponent(&a);
    let mut mantissa = round_half_even(&(&a * pow10(digits as i64 - 1 - e)));
    // rounding may carry into an extra digit (e.g. 9.99 -> 10.0)
    let limit = BigInt::from(10u8).pow(digits);
    if mantissa >= limit {
        mantissa /= BigInt::from(10u8);
        e += 1;
    }
    let m = mantissa.to_string();
    let body = if e < -30 || e > 30 + digits as i64 {
        // scientific fallback, far outside the tabular range
        let (first, rest) = m.split_at(1);
        if rest.is_empty() {
            format!("{first}e{e}")
        } else {
            format!("{first}.{rest}e{e}")
        }
    } else if e >= digits as i64 - 1 {
        format!("{}{}", m, "0".repeat((e - digits as i64 + 1) as usize))
    } else if e >= 0 {
        let (int_part, frac_part) = m.split_at((e + 1) as usize);
        format!("{int_part}.{frac_part}")
    } else {
        format!("0.{}{}", "0".repeat((-e - 1) as usize), m)
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Minimal terminating decimal form of `q`, if the denominator is of the
/// shape `2^a 5^b` and the result needs at most `max_digits` digits.
pub fn terminating_decimal(q: &Rational, max_digits: u32) -> Option<String> {
    if q.is_zero() {
        return Some("0".to_string());
    }
    let mut d = q.denom().clone();
    let mut twos = 0u32;
    let two = BigInt::from(2u8);
    let five = BigInt::from(5u8);
    while (&d % &two).is_zero() {
        d /= &two;
        twos += 1;
    }
    let mut fives = 0u32;
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if !d.is_one() {
        return None;
    }
    let places = twos.max(fives);
    // significant digits needed = digits of |numer * 10^places / denom|
    let scaled = (q * pow10(places as i64)).to_integer();
    let s = scaled.abs().to_string();
    if s.trim_start_matches('0').len() as u32 > max_digits {
        return None;
    }
    if places == 0 {
        return Some(scaled.to_string());
    }
    let neg = q.is_negative();
    let mag = s;
    let padded = if (mag.len() as u32) <= places {
        format!("0.{}{}", "0".repeat(places as usize - mag.len()), mag)
    } else {
        let split = mag.len() - places as usize;
        format!("{}.{}", &mag[..split], &mag[split..])
    };
    let trimmed = padded.trim_end_matches('0');
    let trimmed = trimmed.strip_suffix('.').unwrap_or(trimmed);
    Some(if neg {
        format!("-{trimmed}")
    } else {
        trimmed.to_string()
    })
}

/// A real scalar tagged with its decimal precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Real {
    value: Rational,
    digits: u32,
    exact: bool,
}

impl Real {
    /// An exact value; `digits` only affects how it is displayed.
    pub fn exact(value: Rational, digits: u32) -> Self {
        Real {
            value,
            digits,
            exact: true,
        }
    }

    /// An approximate value, rounded to `digits` significant digits.
    pub fn approx(value: Rational, digits: u32) -> Self {
        Real {
            value: round_sig(&value, digits),
            digits,
            exact: false,
        }
    }

    pub fn zero(digits: u32) -> Self {
        Real::exact(Rational::zero(), digits)
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn abs(&self) -> Real {
        Real {
            value: self.value.abs(),
            digits: self.digits,
            exact: self.exact,
        }
    }

    /// `self^k` with intermediate rounding.
    pub fn pow(&self, k: usize) -> Real {
        let mut acc = Real::exact(Rational::one(), self.digits);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Reinterprets the value at a new display/rounding precision.
    pub fn with_digits(&self, digits: u32) -> Real {
        if self.exact {
            Real::exact(self.value.clone(), digits)
        } else {
            Real::approx(self.value.clone(), digits)
        }
    }

    fn combine(lhs: &Real, rhs: &Real, value: Rational) -> Real {
        let digits = lhs.digits.min(rhs.digits);
        if lhs.exact && rhs.exact {
            Real {
                value,
                digits,
                exact: true,
            }
        } else {
            // round at the weaker operand's precision
            let d = match (lhs.exact, rhs.exact) {
                (false, true) => lhs.digits,
                (true, false) => rhs.digits,
                _ => digits,
            };
            Real {
                value: round_sig(&value, d),
                digits: d,
                exact: false,
            }
        }
    }

    /// Decimal rendering: exact values print their minimal terminating
    /// form when one exists, everything else prints at the stated digits.
    pub fn to_decimal_string(&self) -> String {
        if self.exact {
            if let Some(s) = terminating_decimal(&self.value, self.digits) {
                return s;
            }
        }
        format_decimal(&self.value, self.digits)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.value.cmp(&other.value))
    }
}

impl Add for &Real {
    type Output = Real;
    fn add(self, rhs: &Real) -> Real {
        Real::combine(self, rhs, &self.value + &rhs.value)
    }
}

impl Sub for &Real {
    type Output = Real;
    fn sub(self, rhs: &Real) -> Real {
        Real::combine(self, rhs, &self.value - &rhs.value)
    }
}

impl Mul for &Real {
    type Output = Real;
    fn mul(self, rhs: &Real) -> Real {
        Real::combine(self, rhs, &self.value * &rhs.value)
    }
}

impl Div for &Real {
    type Output = Real;
    fn div(self, rhs: &Real) -> Real {
        assert!(!rhs.value.is_zero(), "division by zero Real");
        Real::combine(self, rhs, &self.value / &rhs.value)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real {
            value: -&self.value,
            digits: self.digits,
            exact: self.exact,
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{parse_rational, rat, rat_int};

    #[test]
    fn exponent_brackets_value() {
        assert_eq!(decimal_exponent(&rat(1, 2)), -1);
        assert_eq!(decimal_exponent(&rat_int(1)), 0);
        assert_eq!(decimal_exponent(&rat_int(999)), 2);
        assert_eq!(decimal_exponent(&rat_int(1000)), 3);
        assert_eq!(decimal_exponent(&rat(1, 1000)), -3);
        assert_eq!(decimal_exponent(&rat(-27, 4)), 0);
    }

    #[test]
    fn half_even_rounding() {
        assert_eq!(round_half_even(&rat(5, 2)), BigInt::from(2));
        assert_eq!(round_half_even(&rat(7, 2)), BigInt::from(4));
        assert_eq!(round_half_even(&rat(-5, 2)), BigInt::from(-2));
        assert_eq!(round_half_even(&rat(49, 10)), BigInt::from(5));
    }

    #[test]
    fn sig_rounding() {
        assert_eq!(round_sig(&rat(2, 3), 3), rat(667, 1000));
        assert_eq!(round_sig(&rat(999_9, 10_000), 3), rat_int(1));
        assert_eq!(round_sig(&Rational::zero(), 5), Rational::zero());
    }

    #[test]
    fn decimal_parse_format_round_trip() {
        let cases = [
            "0.0042775693130947944277212365357185643611308627759489",
            "0.5",
            "123.456",
            "-0.25",
            "42",
        ];
        for s in cases {
            let v = parse_decimal(s).unwrap();
            let back = parse_decimal(&format_decimal(&v, 52)).unwrap();
            assert_eq!(v, back, "{s}");
        }
        assert_eq!(parse_decimal("2.5e-3").unwrap(), rat(1, 400));
        assert!(parse_decimal("abc").is_none());
        assert!(parse_decimal(".").is_none());
    }

    #[test]
    fn formatting_shapes() {
        assert_eq!(format_decimal(&rat(1, 2), 3), "0.500");
        assert_eq!(format_decimal(&rat_int(12345), 3), "12300");
        assert_eq!(format_decimal(&rat(-1, 3), 5), "-0.33333");
        assert_eq!(format_decimal(&rat(999, 1000), 2), "1.0");
        assert_eq!(format_decimal(&rat(1, 30000), 3), "0.0000333");
    }

    #[test]
    fn terminating_forms() {
        assert_eq!(terminating_decimal(&rat(1, 2), 50).unwrap(), "0.5");
        assert_eq!(terminating_decimal(&rat(1, 4), 50).unwrap(), "0.25");
        assert_eq!(terminating_decimal(&rat_int(1), 50).unwrap(), "1");
        assert_eq!(terminating_decimal(&rat_int(0), 50).unwrap(), "0");
        assert_eq!(terminating_decimal(&rat(-3, 8), 50).unwrap(), "-0.375");
        assert!(terminating_decimal(&rat(1, 3), 50).is_none());
        assert!(terminating_decimal(&rat(1, 1 << 30), 5).is_none());
    }

    #[test]
    fn exact_propagation() {
        let a = Real::exact(rat(1, 3), 10);
        let b = Real::exact(rat(1, 6), 10);
        let c = &a + &b;
        assert!(c.is_exact());
        assert_eq!(c.value(), &rat(1, 2));
    }

    #[test]
    fn approx_rounds_each_operation() {
        let a = Real::approx(rat(1, 3), 5);
        let b = Real::exact(rat_int(3), 50);
        let c = &a * &b;
        assert!(!c.is_exact());
        assert_eq!(c.digits(), 5);
        // 0.33333 * 3 = 0.99999, kept at 5 digits
        assert_eq!(c.value(), &rat(99999, 100000));
    }

    #[test]
    fn display_choices() {
        assert_eq!(Real::exact(rat(1, 2), 50).to_decimal_string(), "0.5");
        assert_eq!(Real::exact(rat_int(1), 50).to_decimal_string(), "1");
        let third = Real::exact(rat(1, 3), 6);
        assert_eq!(third.to_decimal_string(), "0.333333");
        let w = Real::approx(parse_rational("19305/65536").unwrap(), 8);
        assert_eq!(w.to_decimal_string(), "0.29457092");
    }

    #[test]
    fn pow_and_zero() {
        let x = Real::exact(rat(1, 2), 20);
        assert_eq!(x.pow(3).value(), &rat(1, 8));
        assert_eq!(x.pow(0).value(), &rat_int(1));
        let zero = Real::zero(20);
        assert_eq!(zero.pow(0).value(), &rat_int(1)); // 0^0 = 1 convention
    }
}
