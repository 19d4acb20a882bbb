//! The formula-extension engine.
//!
//! Given the node polynomial `F` of an existing quadrature formula and a
//! target count `p`, the engine looks for a monic polynomial `G` of degree
//! `p` with `∫ F(t) G(t) t^i ρ(t) dt = 0` for `i = 0..p-1`. Writing
//! `ν_m = ∫ F(t) t^m ρ(t) dt` for the modified moments, those conditions
//! are the p×p Hankel system
//!
//! ```text
//!     Σ_j g_j ν_(i+j) = -ν_(i+p),    i = 0..p-1,   g_p = 1.
//! ```
//!
//! A solution alone is not enough: the extension is valid only when `G`
//! has `p` real simple roots inside the domain, none shared with `F`.
//! All three conditions are certified without computing roots — a Sturm
//! count, a resultant and a discriminant — and recorded. With exact
//! (rational) moments the whole decision is exact; with fixed-precision
//! moments the same pipeline runs in rounded arithmetic and zero tests
//! become threshold tests.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::interval::Interval;
use crate::linalg;
use crate::moments::{MomentKind, MomentSequence};
use crate::poly::Polynomial;
use crate::rational::{pow10, Rational};
use crate::resultant::{discriminant, resultant};
use crate::real::round_sig;
use crate::sturm::{count_real_roots, count_real_roots_with_multiplicity};

/// Why an extension attempt produced no usable formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailureReason {
    /// The monic Hankel system is singular or inconsistent.
    NoSolution,
    /// `G` has complex roots, or real roots outside the domain.
    ComplexOrOutsideRoots,
    /// `G` has a real root of multiplicity greater than one.
    RepeatedRoots,
    /// `F` and `G` have a common root.
    SharedRoots,
    /// The moment sequence is too short for this `F` and `p`.
    InsufficientMoments { needed: usize, available: usize },
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailureReason::NoSolution => write!(f, "NoSolution"),
            FailureReason::ComplexOrOutsideRoots => write!(f, "ComplexOrOutsideRoots"),
            FailureReason::RepeatedRoots => write!(f, "RepeatedRoots"),
            FailureReason::SharedRoots => write!(f, "SharedRoots"),
            FailureReason::InsufficientMoments { needed, available } => {
                write!(f, "InsufficientMoments(needed {needed}, available {available})")
            }
        }
    }
}

/// Evidence recorded for a successful extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    /// Distinct real roots of `G` in the closed domain (equals `deg G`).
    pub roots_in_domain: usize,
    /// `res(F, G)`, nonzero: no root is shared with `F`.
    pub resultant: Rational,
    /// `disc(G)`, nonzero: all roots of `G` are simple.
    pub discriminant: Rational,
}

/// Result of one extension attempt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtensionOutcome {
    /// A certified monic `G` of the requested degree.
    Success {
        g: Polynomial,
        certificate: Certificate,
    },
    Failure {
        reason: FailureReason,
    },
}

impl ExtensionOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, ExtensionOutcome::Success { .. })
    }

    pub fn success_g(&self) -> Option<&Polynomial> {
        match self {
            ExtensionOutcome::Success { g, .. } => Some(g),
            ExtensionOutcome::Failure { .. } => None,
        }
    }

    pub fn failure_reason(&self) -> Option<&FailureReason> {
        match self {
            ExtensionOutcome::Failure { reason } => Some(reason),
            ExtensionOutcome::Success { .. } => None,
        }
    }
}

/// How many nodes to add at each chain iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Schedule {
    /// Explicit `p` per iteration.
    Explicit(Vec<usize>),
    /// `p = n + 1` where `n` is the current node count, for `iterations`
    /// rounds. Doubles the node count plus one each time.
    NPlusOne { iterations: usize },
}

impl Schedule {
    pub fn validate(&self) -> Result<(), Error> {
        match self {
            Schedule::Explicit(ps) => {
                if ps.is_empty() {
                    return Err(Error::InvalidInput("empty extension schedule".to_string()));
                }
                if ps.iter().any(|&p| p == 0) {
                    return Err(Error::InvalidInput(
                        "every schedule entry must be at least 1".to_string(),
                    ));
                }
                Ok(())
            }
            Schedule::NPlusOne { iterations } => {
                if *iterations == 0 {
                    Err(Error::InvalidInput(
                        "at least one iteration is required".to_string(),
                    ))
                } else {
                    Ok(())
                }
            }
        }
    }

    fn len(&self) -> usize {
        match self {
            Schedule::Explicit(ps) => ps.len(),
            Schedule::NPlusOne { iterations } => *iterations,
        }
    }

    fn step(&self, index: usize, current_degree: usize) -> usize {
        match self {
            Schedule::Explicit(ps) => ps[index],
            Schedule::NPlusOne { .. } => current_degree + 1,
        }
    }
}

/// Modified moments `ν_m = ∫ F(t) t^m ρ(t) dt` for `m = 0..count`.
///
/// Expanded over the coefficients of `F` this is `ν_m = Σ_k f_k μ_(k+m)`,
/// exact whenever the sequence is exact. For fixed-precision sequences
/// each `ν_m` is rounded to the sequence's stated digits.
pub fn modified_moments(
    f: &Polynomial,
    mu: &MomentSequence,
    count: usize,
) -> Result<Vec<Rational>, Error> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if count == 0 {
        return Ok(Vec::new());
    }
    mu.ensure_index(n + count - 1)?;
    let mut out = Vec::with_capacity(count);
    for m in 0..count {
        let mut acc = Rational::zero();
        for (k, fk) in f.coeffs().iter().enumerate() {
            if !fk.is_zero() {
                acc += fk * mu.moment(k + m)?;
            }
        }
        if let MomentKind::Approximate(digits) = mu.kind() {
            acc = round_sig(&acc, digits);
        }
        out.push(acc);
    }
    Ok(out)
}

/// Checks the orthogonality conditions of a candidate `G` exactly:
/// returns the residuals `∫ F G t^i ρ` for `i = 0..p-1` as rationals.
pub fn orthogonality_residuals(
    f: &Polynomial,
    g: &Polynomial,
    mu: &MomentSequence,
    p: usize,
) -> Result<Vec<Rational>, Error> {
    let fg = f * g;
    let mut residuals = Vec::with_capacity(p);
    for i in 0..p {
        let shifted = fg.shift_up(i);
        let mut acc = Rational::zero();
        for (k, c) in shifted.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc += c * mu.moment(k)?;
            }
        }
        residuals.push(acc);
    }
    Ok(residuals)
}

/// Runs the three validity certificates on a candidate `G` against `F`.
///
/// Checks, in order: `G` has `deg G` real roots (with multiplicity) in
/// the closed domain; `res(F, G) ≠ 0`; `disc(G) ≠ 0`. The first failing
/// check names the failure. On success all of `G`'s roots are real,
/// simple, inside the domain and distinct from `F`'s.
pub fn certify(
    f: &Polynomial,
    g: &Polynomial,
    omega: &Interval,
) -> Result<ExtensionOutcome, Error> {
    certify_with_threshold(f, g, omega, None)
}

/// Certificate pass with an optional zero threshold for fixed-precision
/// inputs: scalars at or below the threshold in absolute value are
/// treated as zero, and root location is tested against the domain
/// widened by the same amount.
pub fn certify_with_threshold(
    f: &Polynomial,
    g: &Polynomial,
    omega: &Interval,
    zero_threshold: Option<&Rational>,
) -> Result<ExtensionOutcome, Error> {
    let p = g.degree().ok_or(Error::ZeroPolynomial)?;
    if p == 0 {
        return Err(Error::InvalidInput(
            "certificate check needs deg G >= 1".to_string(),
        ));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    // The threshold widens the root-location test: a node sitting exactly
    // on the boundary may land a hair outside it under rounding. The
    // resultant and discriminant stay exact zero tests even on rounded
    // coefficients: rounding noise never produces an exact zero, and true
    // nonzero values on deep chains can be far smaller than any sound
    // magnitude cutoff.
    let effective_omega = match zero_threshold {
        None => omega.clone(),
        Some(t) => omega.widened(t),
    };
    let fail = |reason| Ok(ExtensionOutcome::Failure { reason });

    let with_mult = count_real_roots_with_multiplicity(g, &effective_omega)?;
    if with_mult != p {
        return fail(FailureReason::ComplexOrOutsideRoots);
    }
    let res = resultant(f, g)?;
    if res.is_zero() {
        return fail(FailureReason::SharedRoots);
    }
    let disc = discriminant(g)?;
    if disc.is_zero() {
        return fail(FailureReason::RepeatedRoots);
    }
    let distinct = count_real_roots(g, &effective_omega)?;
    Ok(ExtensionOutcome::Success {
        g: g.clone(),
        certificate: Certificate {
            roots_in_domain: distinct,
            resultant: res,
            discriminant: disc,
        },
    })
}

/// Extends the formula with node polynomial `F` by `p` nodes.
///
/// Solves the monic Hankel system for `G` and certifies the result. Every
/// algorithmic failure mode is a normal [`ExtensionOutcome::Failure`];
/// `Err` is reserved for violated call contracts (`p = 0`, zero `F`).
///
/// With an exact moment sequence the decision is exact. With a
/// fixed-precision sequence the system is solved by partially pivoted
/// elimination in rounded arithmetic and a pivot below
/// `10^-(digits-15) · scale` declares the system singular.
pub fn extend(
    f: &Polynomial,
    p: usize,
    mu: &MomentSequence,
    omega: &Interval,
) -> Result<ExtensionOutcome, Error> {
    if p == 0 {
        return Err(Error::InvalidInput("p must be at least 1".to_string()));
    }
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;

    if let Err(Error::InsufficientMoments { needed, available }) = mu.ensure_index(n + 2 * p) {
        return Ok(ExtensionOutcome::Failure {
            reason: FailureReason::InsufficientMoments { needed, available },
        });
    }
    let nu = modified_moments(f, mu, 2 * p)?;

    let (solution, threshold) = match mu.kind() {
        MomentKind::Exact => (solve_hankel_exact(&nu, p), None),
        MomentKind::Approximate(digits) => {
            let t = pow10(-(digits.saturating_sub(15).max(5) as i64));
            (solve_hankel_rounded(&nu, p, digits, &t), Some(t))
        }
    };
    let Some(mut coeffs) = solution else {
        return Ok(ExtensionOutcome::Failure {
            reason: FailureReason::NoSolution,
        });
    };
    coeffs.push(Rational::one()); // monic by construction
    let g = Polynomial::new(coeffs);
    debug_assert_eq!(g.degree(), Some(p));
    certify_with_threshold(f, &g, omega, threshold.as_ref())
}

/// Solves `Σ_j g_j ν_(i+j) = -ν_(i+p)` exactly; `None` when singular.
fn solve_hankel_exact(nu: &[Rational], p: usize) -> Option<Vec<Rational>> {
    let a: Vec<Vec<Rational>> = (0..p).map(|i| nu[i..i + p].to_vec()).collect();
    let b: Vec<Rational> = (0..p).map(|i| -&nu[i + p]).collect();
    linalg::solve(&a, &b)
}

/// Same system in fixed-precision arithmetic: partial pivoting, rounding
/// after every operation, pivots at or below `threshold · scale` mean
/// singular.
fn solve_hankel_rounded(
    nu: &[Rational],
    p: usize,
    digits: u32,
    threshold: &Rational,
) -> Option<Vec<Rational>> {
    let mut a: Vec<Vec<Rational>> = (0..p)
        .map(|i| {
            let mut row = nu[i..i + p].to_vec();
            row.push(-&nu[i + p]);
            row
        })
        .collect();
    // singularity is judged relative to the actual entry scale: deep
    // chains have uniformly tiny modified moments
    let scale = a
        .iter()
        .flatten()
        .map(|v| v.abs())
        .max()
        .unwrap_or_else(Rational::zero);
    if scale.is_zero() {
        return None;
    }
    let cutoff = threshold * &scale;
    let rnd = |v: &Rational| round_sig(v, digits);

    for k in 0..p {
        let (pivot_row, pivot_mag) = (k..p)
            .map(|r| (r, a[r][k].abs()))
            .max_by(|x, y| x.1.cmp(&y.1))
            .expect("nonempty");
        if pivot_mag <= cutoff {
            return None;
        }
        a.swap(k, pivot_row);
        for i in k + 1..p {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = rnd(&(&a[i][k] / &a[k][k]));
            for j in k..=p {
                let v = rnd(&(&a[i][j] - &rnd(&(&factor * &a[k][j]))));
                a[i][j] = v;
            }
        }
    }
    let mut x = vec![Rational::zero(); p];
    for i in (0..p).rev() {
        let mut acc = a[i][p].clone();
        for j in i + 1..p {
            acc = rnd(&(&acc - &rnd(&(&a[i][j] * &x[j]))));
        }
        x[i] = rnd(&(&acc / &a[i][i]));
    }
    Some(x)
}

/// Tries the candidate `p` values in order; returns the first success,
/// or the last failure when none succeeds.
pub fn auto_extend(
    f: &Polynomial,
    mu: &MomentSequence,
    omega: &Interval,
    p_candidates: &[usize],
) -> Result<(usize, ExtensionOutcome), Error> {
    if p_candidates.is_empty() {
        return Err(Error::InvalidInput(
            "auto_extend needs at least one candidate p".to_string(),
        ));
    }
    let mut last = None;
    for &p in p_candidates {
        let outcome = extend(f, p, mu, omega)?;
        if outcome.is_success() {
            return Ok((p, outcome));
        }
        last = Some((p, outcome));
    }
    Ok(last.expect("nonempty candidates"))
}

/// One completed (or attempted) chain iteration.
#[derive(Debug, Clone)]
pub struct ChainStep {
    /// Node polynomial before the step.
    pub f_before: Polynomial,
    /// Node polynomial after the step; unchanged if the step failed.
    pub f_after: Polynomial,
    /// Number of nodes this step tried to add.
    pub p: usize,
    pub outcome: ExtensionOutcome,
}

/// Repeatedly extends `start`, multiplying each certified `G` into the
/// running node polynomial. Stops at the first failure; the returned
/// steps are all completed successes plus, possibly, that final failure.
pub fn generate_chain(
    start: &Polynomial,
    schedule: &Schedule,
    mu: &MomentSequence,
    omega: &Interval,
) -> Result<Vec<ChainStep>, Error> {
    schedule.validate()?;
    if start.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut f = start.clone();
    let mut steps = Vec::with_capacity(schedule.len());
    for index in 0..schedule.len() {
        let n = f.degree().expect("nonzero");
        let p = schedule.step(index, n);
        let outcome = extend(&f, p, mu, omega)?;
        let f_before = f.clone();
        let success = outcome.is_success();
        if let ExtensionOutcome::Success { g, .. } = &outcome {
            f = &f * g;
        }
        steps.push(ChainStep {
            f_before,
            f_after: f.clone(),
            p,
            outcome,
        });
        if !success {
            break;
        }
    }
    Ok(steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::DistributionSpec;
    use crate::rational::{rat, rat_int};

    fn beta_half() -> MomentSequence {
        MomentSequence::from_distribution("beta:1/2,1/2".parse().unwrap())
    }

    fn uniform_sym() -> MomentSequence {
        MomentSequence::from_distribution("uniform:-1,1".parse().unwrap())
    }

    fn p(coeffs: &[(i64, i64)]) -> Polynomial {
        Polynomial::new(coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn modified_moments_of_one_are_raw_moments() {
        let nu = modified_moments(&Polynomial::one(), &beta_half(), 3).unwrap();
        assert_eq!(nu, vec![rat_int(1), rat(1, 2), rat(3, 8)]);
    }

    #[test]
    fn modified_moments_center_the_mean() {
        let f = p(&[(-1, 2), (1, 1)]);
        let nu = modified_moments(&f, &beta_half(), 1).unwrap();
        assert_eq!(nu, vec![rat_int(0)]);
    }

    #[test]
    fn modified_moments_shift_indices() {
        let f = p(&[(0, 1), (1, 1)]);
        let nu = modified_moments(&f, &uniform_sym(), 2).unwrap();
        assert_eq!(nu, vec![rat_int(0), rat(1, 3)]);
    }

    #[test]
    fn first_beta_extension_is_centering() {
        let omega = beta_half().domain().clone();
        let outcome = extend(&Polynomial::one(), 1, &beta_half(), &omega).unwrap();
        assert_eq!(outcome.success_g().unwrap(), &p(&[(-1, 2), (1, 1)]));
    }

    #[test]
    fn second_beta_extension() {
        let omega = beta_half().domain().clone();
        let f = p(&[(-1, 2), (1, 1)]);
        let outcome = extend(&f, 2, &beta_half(), &omega).unwrap();
        assert_eq!(outcome.success_g().unwrap(), &p(&[(1, 16), (-1, 1), (1, 1)]));
        match outcome {
            ExtensionOutcome::Success { certificate, .. } => {
                assert_eq!(certificate.roots_in_domain, 2);
                assert!(!certificate.resultant.is_zero());
                assert!(!certificate.discriminant.is_zero());
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn uniform_extension_gives_legendre_factor() {
        let omega = uniform_sym().domain().clone();
        let f = p(&[(0, 1), (1, 1)]);
        let outcome = extend(&f, 2, &uniform_sym(), &omega).unwrap();
        assert_eq!(outcome.success_g().unwrap(), &p(&[(-3, 5), (0, 1), (1, 1)]));
    }

    #[test]
    fn inconsistent_monic_system_reports_no_solution() {
        // F = t, p = 1 on symmetric uniform: the single equation is
        // 0 * g0 = -1/3, so no monic linear G exists at all.
        let omega = uniform_sym().domain().clone();
        let f = p(&[(0, 1), (1, 1)]);
        let outcome = extend(&f, 1, &uniform_sym(), &omega).unwrap();
        assert_eq!(
            outcome.failure_reason().unwrap(),
            &FailureReason::NoSolution
        );
    }

    #[test]
    fn singular_point_mass_moments_report_no_solution() {
        // point mass at 1/2: Hankel matrix has rank one
        let values: Vec<Rational> = (0..6u32)
            .map(|k| {
                let mut acc = Rational::one();
                for _ in 0..k {
                    acc *= rat(1, 2);
                }
                acc
            })
            .collect();
        let mu = MomentSequence::from_table(
            Interval::closed(rat_int(0), rat_int(1)).unwrap(),
            values,
            MomentKind::Exact,
        )
        .unwrap();
        let omega = mu.domain().clone();
        let outcome = extend(&Polynomial::one(), 2, &mu, &omega).unwrap();
        assert_eq!(
            outcome.failure_reason().unwrap(),
            &FailureReason::NoSolution
        );
    }

    #[test]
    fn certify_classifies_injected_candidates() {
        let omega = Interval::closed(rat_int(0), rat_int(1)).unwrap();
        let f = p(&[(-1, 4), (1, 1)]);
        // repeated root inside the domain: multiplicity count passes,
        // resultant passes, discriminant fires
        let double = p(&[(1, 4), (-1, 1), (1, 1)]); // (t - 1/2)^2
        let out = certify(&f, &double, &omega).unwrap();
        assert_eq!(out.failure_reason().unwrap(), &FailureReason::RepeatedRoots);
        // complex roots
        let complex = p(&[(1, 1), (0, 1), (1, 1)]);
        let out = certify(&f, &complex, &omega).unwrap();
        assert_eq!(
            out.failure_reason().unwrap(),
            &FailureReason::ComplexOrOutsideRoots
        );
        // real roots outside the domain
        let outside = p(&[(-4, 1), (0, 1), (1, 1)]); // roots ±2
        let out = certify(&f, &outside, &omega).unwrap();
        assert_eq!(
            out.failure_reason().unwrap(),
            &FailureReason::ComplexOrOutsideRoots
        );
        // shared root with F
        let shared = &p(&[(-1, 4), (1, 1)]) * &p(&[(-3, 4), (1, 1)]);
        let out = certify(&f, &shared, &omega).unwrap();
        assert_eq!(out.failure_reason().unwrap(), &FailureReason::SharedRoots);
        // a genuinely valid G
        let good = p(&[(-3, 4), (1, 1)]);
        assert!(certify(&f, &good, &omega).unwrap().is_success());
    }

    #[test]
    fn insufficient_moments_is_a_failure_outcome() {
        let mu = MomentSequence::from_table(
            Interval::closed(rat_int(0), rat_int(1)).unwrap(),
            vec![rat_int(1), rat(1, 2), rat(3, 8)],
            MomentKind::Exact,
        )
        .unwrap();
        let omega = mu.domain().clone();
        let outcome = extend(&Polynomial::one(), 2, &mu, &omega).unwrap();
        assert_eq!(
            outcome.failure_reason().unwrap(),
            &FailureReason::InsufficientMoments {
                needed: 4,
                available: 2
            }
        );
    }

    #[test]
    fn auto_extend_moves_past_failures() {
        let omega = uniform_sym().domain().clone();
        let f = p(&[(0, 1), (1, 1)]);
        let (chosen, outcome) = auto_extend(&f, &uniform_sym(), &omega, &[1, 2, 3]).unwrap();
        assert_eq!(chosen, 2);
        assert_eq!(outcome.success_g().unwrap(), &p(&[(-3, 5), (0, 1), (1, 1)]));
    }

    #[test]
    fn auto_extend_empty_candidates_is_an_error() {
        let omega = uniform_sym().domain().clone();
        assert!(auto_extend(&Polynomial::one(), &uniform_sym(), &omega, &[]).is_err());
    }

    #[test]
    fn auto_extend_returns_last_failure() {
        let omega = uniform_sym().domain().clone();
        let f = p(&[(0, 1), (1, 1)]);
        let (chosen, outcome) = auto_extend(&f, &uniform_sym(), &omega, &[1]).unwrap();
        assert_eq!(chosen, 1);
        assert!(!outcome.is_success());
    }

    #[test]
    fn single_step_chain_finds_the_mean() {
        let mu = MomentSequence::from_distribution("beta:2,3".parse().unwrap());
        let omega = mu.domain().clone();
        let steps =
            generate_chain(&Polynomial::one(), &Schedule::Explicit(vec![1]), &mu, &omega).unwrap();
        assert_eq!(steps.len(), 1);
        // G = t - μ_1, μ_1 = 2/5
        assert_eq!(
            steps[0].outcome.success_g().unwrap(),
            &p(&[(-2, 5), (1, 1)])
        );
    }

    #[test]
    fn chain_stops_at_first_failure() {
        // only enough moments for the first step
        let mu = MomentSequence::from_table(
            Interval::closed(rat_int(0), rat_int(1)).unwrap(),
            vec![rat_int(1), rat(1, 2), rat(3, 8)],
            MomentKind::Exact,
        )
        .unwrap();
        let omega = mu.domain().clone();
        let steps = generate_chain(
            &Polynomial::one(),
            &Schedule::Explicit(vec![1, 2]),
            &mu,
            &omega,
        )
        .unwrap();
        assert_eq!(steps.len(), 2);
        assert!(steps[0].outcome.is_success());
        assert!(matches!(
            steps[1].outcome.failure_reason().unwrap(),
            FailureReason::InsufficientMoments { .. }
        ));
        assert_eq!(steps[1].f_after, steps[1].f_before);
    }

    #[test]
    fn n_plus_one_schedule_doubles_node_counts() {
        let omega = uniform_sym().domain().clone();
        let start = p(&[(0, 1), (1, 1)]);
        let steps = generate_chain(
            &start,
            &Schedule::NPlusOne { iterations: 3 },
            &uniform_sym(),
            &omega,
        )
        .unwrap();
        let degrees: Vec<usize> = steps
            .iter()
            .map(|s| s.f_after.degree().unwrap())
            .collect();
        assert_eq!(degrees, vec![3, 7, 15]);
        assert!(steps.iter().all(|s| s.outcome.is_success()));
    }

    #[test]
    fn schedule_validation() {
        assert!(Schedule::Explicit(vec![]).validate().is_err());
        assert!(Schedule::Explicit(vec![1, 0]).validate().is_err());
        assert!(Schedule::NPlusOne { iterations: 0 }.validate().is_err());
        assert!(Schedule::Explicit(vec![1, 2, 4]).validate().is_ok());
    }

    #[test]
    fn orthogonality_residuals_vanish_on_success() {
        let mu = beta_half();
        let omega = mu.domain().clone();
        let f = p(&[(-1, 2), (1, 1)]);
        let g = extend(&f, 2, &mu, &omega)
            .unwrap()
            .success_g()
            .unwrap()
            .clone();
        let residuals = orthogonality_residuals(&f, &g, &mu, 2).unwrap();
        assert!(residuals.iter().all(|r| r.is_zero()));
    }

    #[test]
    fn approximate_mode_agrees_on_small_cases() {
        let exact = uniform_sym();
        let omega = exact.domain().clone();
        let approx = exact.to_approximate(100, 20).unwrap();
        let f = p(&[(0, 1), (1, 1)]);
        for pp in 1..=4usize {
            let e = extend(&f, pp, &exact, &omega).unwrap();
            let a = extend(&f, pp, &approx, &omega).unwrap();
            assert_eq!(e.is_success(), a.is_success(), "p = {pp}");
        }
    }

    #[test]
    fn approximate_solution_is_close_to_exact() {
        let exact = beta_half();
        let omega = exact.domain().clone();
        let approx = exact.to_approximate(100, 30).unwrap();
        let f = p(&[(-1, 2), (1, 1)]);
        let ge = extend(&f, 2, &exact, &omega).unwrap();
        let ga = extend(&f, 2, &approx, &omega).unwrap();
        let ge = ge.success_g().unwrap();
        let ga = ga.success_g().unwrap();
        for k in 0..=2 {
            let diff = (ge.coeff(k) - ga.coeff(k)).abs();
            assert!(diff < pow10(-80), "coefficient {k} differs by {diff}");
        }
    }
}
