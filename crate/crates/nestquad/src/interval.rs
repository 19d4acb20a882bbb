//! Intervals of the real line, possibly unbounded.

use std::fmt;

use crate::error::Error;
use crate::rational::{format_rational, parse_rational, Rational};

/// One end of an [`Interval`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Endpoint {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Endpoint {
    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            Endpoint::Finite(r) => Some(r),
            _ => None,
        }
    }
}

/// An interval `Ω ⊆ ℝ`, closed at any finite endpoint.
///
/// This is the support of the integration measure; quadrature nodes must
/// lie inside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lower: Endpoint,
    upper: Endpoint,
}

impl Interval {
    /// Builds an interval, rejecting empty or reversed bounds.
    pub fn new(lower: Endpoint, upper: Endpoint) -> Result<Self, Error> {
        let ok = match (&lower, &upper) {
            (Endpoint::NegInf, Endpoint::NegInf) | (Endpoint::PosInf, Endpoint::PosInf) => false,
            (Endpoint::PosInf, _) | (_, Endpoint::NegInf) => false,
            (Endpoint::Finite(a), Endpoint::Finite(b)) => a < b,
            _ => true,
        };
        if ok {
            Ok(Interval { lower, upper })
        } else {
            Err(Error::InvalidInterval)
        }
    }

    /// Finite interval `[a, b]`.
    pub fn closed(a: Rational, b: Rational) -> Result<Self, Error> {
        Interval::new(Endpoint::Finite(a), Endpoint::Finite(b))
    }

    /// The whole real line.
    pub fn real_line() -> Self {
        Interval {
            lower: Endpoint::NegInf,
            upper: Endpoint::PosInf,
        }
    }

    pub fn lower(&self) -> &Endpoint {
        &self.lower
    }

    pub fn upper(&self) -> &Endpoint {
        &self.upper
    }

    pub fn is_finite(&self) -> bool {
        matches!(
            (&self.lower, &self.upper),
            (Endpoint::Finite(_), Endpoint::Finite(_))
        )
    }

    /// Midpoint of a finite interval, or 0 for the whole real line.
    pub fn midpoint(&self) -> Option<Rational> {
        match (&self.lower, &self.upper) {
            (Endpoint::Finite(a), Endpoint::Finite(b)) => {
                Some((a + b) / Rational::from_integer(2.into()))
            }
            (Endpoint::NegInf, Endpoint::PosInf) => Some(Rational::from_integer(0.into())),
            _ => None,
        }
    }

    /// Membership in the closed interval.
    pub fn contains(&self, x: &Rational) -> bool {
        let lo_ok = match &self.lower {
            Endpoint::NegInf => true,
            Endpoint::Finite(a) => a <= x,
            Endpoint::PosInf => false,
        };
        let hi_ok = match &self.upper {
            Endpoint::PosInf => true,
            Endpoint::Finite(b) => x <= b,
            Endpoint::NegInf => false,
        };
        lo_ok && hi_ok
    }

    /// Widens each finite endpoint outward by `slack >= 0`.
    ///
    /// Used by the fixed-precision certificate path, where a node sitting
    /// exactly on the boundary may be computed a hair outside it.
    pub fn widened(&self, slack: &Rational) -> Interval {
        let lower = match &self.lower {
            Endpoint::Finite(a) => Endpoint::Finite(a - slack),
            e => e.clone(),
        };
        let upper = match &self.upper {
            Endpoint::Finite(b) => Endpoint::Finite(b + slack),
            e => e.clone(),
        };
        Interval { lower, upper }
    }

    /// Parses an endpoint string: `"p/q"`, `"-inf"` or `"inf"`.
    pub fn parse_endpoint(s: &str) -> Option<Endpoint> {
        match s.trim() {
            "-inf" => Some(Endpoint::NegInf),
            "inf" | "+inf" => Some(Endpoint::PosInf),
            other => parse_rational(other).map(Endpoint::Finite),
        }
    }

    /// Endpoint in the `"p/q"`/`"-inf"`/`"inf"` form.
    pub fn format_endpoint(e: &Endpoint) -> String {
        match e {
            Endpoint::NegInf => "-inf".to_string(),
            Endpoint::PosInf => "inf".to_string(),
            Endpoint::Finite(r) => format_rational(r),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            Interval::format_endpoint(&self.lower),
            Interval::format_endpoint(&self.upper)
        )
    }
}
