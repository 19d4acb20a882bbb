//! Moment sequences: the only representation of the weight function.
//!
//! Every distribution enters the pipeline as its raw moments
//! `μ_k = ∫ t^k ρ(t) dt` over a stated domain. The density itself is
//! never evaluated anywhere in this crate. Built-in families have exact
//! rational moments in closed form; arbitrary distributions are supplied
//! as a moments file.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::interval::Interval;
use crate::linalg::leading_principal_minors;
use crate::rational::{format_rational, parse_rational, rat_int, Rational};
use crate::real::{parse_decimal, round_sig};

/// A built-in distribution family with rational raw moments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistributionSpec {
    /// Uniform on `[a, b]` with density `1/(b-a)`.
    Uniform { a: Rational, b: Rational },
    /// Beta(α, β) on `[0, 1]`, rational α, β > 0.
    Beta { alpha: Rational, beta: Rational },
    /// Standard normal on `(-∞, ∞)`.
    Gaussian,
}

impl DistributionSpec {
    pub fn uniform(a: Rational, b: Rational) -> Result<Self, Error> {
        if a >= b {
            return Err(Error::InvalidDistribution(
                "uniform requires a < b".to_string(),
            ));
        }
        Ok(DistributionSpec::Uniform { a, b })
    }

    pub fn beta(alpha: Rational, beta: Rational) -> Result<Self, Error> {
        if !alpha.is_positive() || !beta.is_positive() {
            return Err(Error::InvalidDistribution(
                "beta requires alpha > 0 and beta > 0".to_string(),
            ));
        }
        Ok(DistributionSpec::Beta { alpha, beta })
    }

    /// Support of the distribution.
    pub fn domain(&self) -> Interval {
        match self {
            DistributionSpec::Uniform { a, b } => {
                Interval::closed(a.clone(), b.clone()).expect("a < b")
            }
            DistributionSpec::Beta { .. } => {
                Interval::closed(Rational::zero(), Rational::one()).expect("unit interval")
            }
            DistributionSpec::Gaussian => Interval::real_line(),
        }
    }

    /// Exact `k`-th raw moment.
    ///
    /// Uniform: `(b^(k+1) - a^(k+1)) / ((k+1)(b-a))`.
    /// Beta: `∏_{i=0}^{k-1} (α+i)/(α+β+i)`.
    /// Gaussian: 0 for odd `k`, `(k-1)!!` for even `k`.
    pub fn raw_moment(&self, k: usize) -> Rational {
        match self {
            DistributionSpec::Uniform { a, b } => {
                let kk = k as u32;
                let num = pow_rat(b, kk + 1) - pow_rat(a, kk + 1);
                num / (rat_int(k as i64 + 1) * (b - a))
            }
            DistributionSpec::Beta { alpha, beta } => {
                let mut acc = Rational::one();
                for i in 0..k {
                    let ii = rat_int(i as i64);
                    acc *= (alpha + &ii) / (alpha + beta + &ii);
                }
                acc
            }
            DistributionSpec::Gaussian => {
                if k % 2 == 1 {
                    Rational::zero()
                } else {
                    let mut acc = BigInt::one();
                    let mut i = k as i64 - 1;
                    while i > 1 {
                        acc *= BigInt::from(i);
                        i -= 2;
                    }
                    Rational::from_integer(acc)
                }
            }
        }
    }
}

fn pow_rat(base: &Rational, exp: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

impl FromStr for DistributionSpec {
    type Err = Error;

    /// Parses `uniform:a,b`, `beta:α,β` (rational parameters) or `gauss`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = |msg: &str| Error::InvalidDistribution(format!("{msg}: {s:?}"));
        let (family, params) = match s.split_once(':') {
            Some((f, p)) => (f.trim(), Some(p)),
            None => (s.trim(), None),
        };
        match family {
            "gauss" | "gaussian" | "normal" => match params {
                None | Some("0,1") => Ok(DistributionSpec::Gaussian),
                Some(_) => Err(bad("only the standard normal gaussian(0,1) is built in")),
            },
            "uniform" => {
                let p = params.ok_or_else(|| bad("uniform needs a,b"))?;
                let (a, b) = split_pair(p).ok_or_else(|| bad("uniform needs a,b"))?;
                DistributionSpec::uniform(a, b)
            }
            "beta" => {
                let p = params.ok_or_else(|| bad("beta needs alpha,beta"))?;
                let (a, b) = split_pair(p).ok_or_else(|| bad("beta needs alpha,beta"))?;
                DistributionSpec::beta(a, b)
            }
            _ => Err(bad("unknown family")),
        }
    }
}

fn split_pair(s: &str) -> Option<(Rational, Rational)> {
    let (x, y) = s.split_once(',')?;
    Some((parse_rational(x)?, parse_rational(y)?))
}

impl fmt::Display for DistributionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistributionSpec::Uniform { a, b } => {
                write!(f, "uniform:{},{}", format_rational(a), format_rational(b))
            }
            DistributionSpec::Beta { alpha, beta } => write!(
                f,
                "beta:{},{}",
                format_rational(alpha),
                format_rational(beta)
            ),
            DistributionSpec::Gaussian => write!(f, "gauss"),
        }
    }
}

/// Whether a sequence's values are exact or carry a stated precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentKind {
    Exact,
    /// Fixed-precision values with this many significant decimal digits.
    Approximate(u32),
}

#[derive(Debug, Clone)]
enum Source {
    Distribution(DistributionSpec),
    Table {
        values: Vec<Rational>,
        kind: MomentKind,
    },
}

/// Provider of the moments `μ_k` of a distribution on a domain `Ω`.
#[derive(Debug, Clone)]
pub struct MomentSequence {
    domain: Interval,
    source: Source,
}

impl MomentSequence {
    /// Exact, unbounded sequence computed from a built-in family.
    pub fn from_distribution(spec: DistributionSpec) -> Self {
        MomentSequence {
            domain: spec.domain(),
            source: Source::Distribution(spec),
        }
    }

    /// Finite sequence from explicit values, index 0 first.
    ///
    /// Requires at least one entry and `μ_0 = 1` (the weight function is a
    /// probability density).
    pub fn from_table(
        domain: Interval,
        values: Vec<Rational>,
        kind: MomentKind,
    ) -> Result<Self, Error> {
        if values.is_empty() {
            return Err(Error::MalformedMomentsFile(
                "at least one moment (index 0) is required".to_string(),
            ));
        }
        if !values[0].is_one() {
            return Err(Error::MalformedMomentsFile(format!(
                "moment 0 must equal 1, got {}",
                format_rational(&values[0])
            )));
        }
        Ok(MomentSequence {
            domain,
            source: Source::Table { values, kind },
        })
    }

    pub fn domain(&self) -> &Interval {
        &self.domain
    }

    /// Same moments viewed over a different domain.
    ///
    /// The domain only enters root-location certificates, so overriding it
    /// restricts (or widens) where extension nodes are allowed to lie.
    pub fn with_domain(mut self, domain: Interval) -> Self {
        self.domain = domain;
        self
    }

    pub fn kind(&self) -> MomentKind {
        match &self.source {
            Source::Distribution(_) => MomentKind::Exact,
            Source::Table { kind, .. } => *kind,
        }
    }

    /// Distribution behind this sequence, when it is a built-in one.
    pub fn distribution(&self) -> Option<&DistributionSpec> {
        match &self.source {
            Source::Distribution(spec) => Some(spec),
            Source::Table { .. } => None,
        }
    }

    /// Largest available moment index; `None` means unbounded.
    pub fn max_index(&self) -> Option<usize> {
        match &self.source {
            Source::Distribution(_) => None,
            Source::Table { values, .. } => Some(values.len() - 1),
        }
    }

    /// Errors with [`Error::InsufficientMoments`] unless `μ_0..μ_needed`
    /// are all available.
    pub fn ensure_index(&self, needed: usize) -> Result<(), Error> {
        match self.max_index() {
            Some(available) if available < needed => {
                Err(Error::InsufficientMoments { needed, available })
            }
            _ => Ok(()),
        }
    }

    /// The moment `μ_k`.
    pub fn moment(&self, k: usize) -> Result<Rational, Error> {
        self.ensure_index(k)?;
        Ok(match &self.source {
            Source::Distribution(spec) => spec.raw_moment(k),
            Source::Table { values, .. } => values[k].clone(),
        })
    }

    /// Fixed-precision copy of this sequence (moments rounded to `digits`
    /// significant decimal digits), materialized up to index `upto`.
    pub fn to_approximate(&self, digits: u32, upto: usize) -> Result<MomentSequence, Error> {
        self.ensure_index(upto)?;
        let values = (0..=upto)
            .map(|k| Ok(round_sig(&self.moment(k)?, digits)))
            .collect::<Result<Vec<_>, Error>>()?;
        MomentSequence::from_table(self.domain.clone(), values, MomentKind::Approximate(digits))
    }

    /// Exactly checks positivity of the leading principal minors of the
    /// Hankel moment matrix `[μ_(i+j)]` for orders `1..=m+1`.
    ///
    /// This is the implementable necessary condition for the sequence to
    /// come from a continuous distribution with positive density.
    pub fn hankel_positive_definite(&self, m: usize) -> Result<bool, Error> {
        self.ensure_index(2 * m)?;
        let rows: Vec<Vec<Rational>> = (0..=m)
            .map(|i| (0..=m).map(|j| self.moment(i + j)).collect::<Result<_, _>>())
            .collect::<Result<_, _>>()?;
        // positive global scaling preserves the signs of all minors
        let mut lcm = BigInt::one();
        for row in &rows {
            for c in row {
                lcm = num_integer::lcm(lcm.clone(), c.denom().clone());
            }
        }
        let scaled: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| c.numer() * (&lcm / c.denom()))
                    .collect()
            })
            .collect();
        let minors = leading_principal_minors(scaled);
        Ok(minors.len() == m + 1 && minors.iter().all(|d| d.is_positive()))
    }
}

/// On-disk form of a moments file.
#[derive(Debug, Serialize, Deserialize)]
struct MomentsFile {
    /// `[lower, upper]`, each `"p/q"`, `"-inf"` or `"inf"`.
    domain: [String; 2],
    /// Significant decimal digits of decimal entries.
    #[serde(skip_serializing_if = "Option::is_none")]
    precision: Option<u32>,
    /// `μ_0, μ_1, ...` as `"p/q"` or decimal strings.
    moments: Vec<String>,
}

/// Default precision assumed for decimal moment entries when the file
/// does not declare one.
pub const DEFAULT_FILE_PRECISION: u32 = 50;

/// Parses the JSON moments file format.
pub fn parse_moments_json(text: &str) -> Result<MomentSequence, Error> {
    let file: MomentsFile = serde_json::from_str(text)
        .map_err(|e| Error::MalformedMomentsFile(e.to_string()))?;
    let lower = Interval::parse_endpoint(&file.domain[0])
        .ok_or_else(|| Error::MalformedMomentsFile(format!("bad lower bound {:?}", file.domain[0])))?;
    let upper = Interval::parse_endpoint(&file.domain[1])
        .ok_or_else(|| Error::MalformedMomentsFile(format!("bad upper bound {:?}", file.domain[1])))?;
    let domain = Interval::new(lower, upper).map_err(|e| Error::MalformedMomentsFile(e.to_string()))?;

    let mut all_exact = true;
    let mut values = Vec::with_capacity(file.moments.len());
    for (k, entry) in file.moments.iter().enumerate() {
        let trimmed = entry.trim();
        let value = if trimmed.contains('/') || !trimmed.contains(['.', 'e', 'E']) {
            parse_rational(trimmed)
        } else {
            all_exact = false;
            parse_decimal(trimmed)
        };
        let value = value.ok_or_else(|| {
            Error::MalformedMomentsFile(format!("moment {k} is not a number: {entry:?}"))
        })?;
        values.push(value);
    }
    let kind = if all_exact {
        MomentKind::Exact
    } else {
        MomentKind::Approximate(file.precision.unwrap_or(DEFAULT_FILE_PRECISION))
    };
    MomentSequence::from_table(domain, values, kind)
}

/// Loads a moments file from disk.
pub fn load_moments(path: &Path) -> Result<MomentSequence, Error> {
    let text = std::fs::read_to_string(path)?;
    parse_moments_json(&text)
}

/// Renders `μ_0..=μ_count` of a sequence in the moments file format.
pub fn moments_to_json(mu: &MomentSequence, count: usize) -> Result<String, Error> {
    mu.ensure_index(count)?;
    let precision = match mu.kind() {
        MomentKind::Exact => None,
        MomentKind::Approximate(d) => Some(d),
    };
    let render = |v: &Rational| match mu.kind() {
        MomentKind::Exact => format_rational(v),
        // decimal entries, so the file reloads as approximate
        MomentKind::Approximate(d) => crate::real::format_decimal(v, d),
    };
    let file = MomentsFile {
        domain: [
            Interval::format_endpoint(mu.domain().lower()),
            Interval::format_endpoint(mu.domain().upper()),
        ],
        precision,
        moments: (0..=count)
            .map(|k| Ok(render(&mu.moment(k)?)))
            .collect::<Result<_, Error>>()?,
    };
    Ok(serde_json::to_string_pretty(&file)?)
}
