//! Rule documents: the serialized form of a nested quadrature rule.
//!
//! A document records every level of a chain — exact node polynomial
//! coefficients as `"p/q"` strings, nodes and weights as decimal strings
//! at the stated precision, the level at which each node first appeared,
//! and both the guaranteed and the measured degree of exactness. All
//! numbers travel as strings so no precision is lost across languages.

use serde::{Deserialize, Serialize};

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::extension::{auto_extend, generate_chain, ExtensionOutcome, FailureReason, Schedule};
use crate::formula::{degree_of_exactness, solve_weights, QuadratureFormula};
use crate::interval::Interval;
use crate::moments::MomentSequence;
use crate::poly::Polynomial;
use crate::rational::{format_rational, parse_rational, pow10, Rational};
use crate::real::{parse_decimal, Real};
use crate::roots::real_roots;
use crate::sturm::count_real_roots;

/// One node with the level at which it first appeared.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct NodeDoc {
    pub value: String,
    pub first_level: usize,
}

/// One level of the nested rule.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct LevelDoc {
    /// 1-based level index.
    pub level: usize,
    /// Nodes added by this level's extension; absent for a start formula.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    /// Ascending `"p/q"` coefficients of the exact node polynomial.
    pub node_polynomial: Vec<String>,
    pub nodes: Vec<NodeDoc>,
    pub weights: Vec<String>,
    /// `n + 2p - 1` for an extension, `K - 1` for a start formula.
    pub guaranteed_degree: i64,
    /// Degree measured against the moments.
    pub verified_degree: i64,
}

/// A mid-chain failure recorded in a partial document.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FailureDoc {
    /// Number of levels that completed before the failure.
    pub after_level: usize,
    /// The `p` that was attempted.
    pub p: usize,
    pub reason: String,
}

/// Serialized nested quadrature rule.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RuleDocument {
    pub description: String,
    /// `[lower, upper]`, each `"p/q"`, `"-inf"` or `"inf"`.
    pub domain: [String; 2],
    /// A built-in spec string (`beta:1/2,1/2`, ...) or `"custom"`.
    pub distribution: String,
    /// Significant decimal digits of the node and weight strings.
    pub precision: u32,
    pub levels: Vec<LevelDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<FailureDoc>,
}

impl RuleDocument {
    pub fn to_json(&self) -> Result<String, Error> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))
    }

    /// Table-style CSV of the top level: `node,weight,first_level`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("node,weight,first_level\n");
        if let Some(top) = self.levels.last() {
            for (node, weight) in top.nodes.iter().zip(&top.weights) {
                out.push_str(&format!("{},{},{}\n", node.value, weight, node.first_level));
            }
        }
        out
    }

    pub fn domain_interval(&self) -> Result<Interval, Error> {
        let lo = Interval::parse_endpoint(&self.domain[0]).ok_or_else(|| {
            Error::MalformedDocument(format!("bad lower bound {:?}", self.domain[0]))
        })?;
        let hi = Interval::parse_endpoint(&self.domain[1]).ok_or_else(|| {
            Error::MalformedDocument(format!("bad upper bound {:?}", self.domain[1]))
        })?;
        Interval::new(lo, hi).map_err(|e| Error::MalformedDocument(e.to_string()))
    }

    /// Exact node polynomial of a level.
    pub fn level_polynomial(&self, index: usize) -> Result<Polynomial, Error> {
        let level = &self.levels[index];
        let coeffs = level
            .node_polynomial
            .iter()
            .map(|s| {
                parse_rational(s).ok_or_else(|| {
                    Error::MalformedDocument(format!("bad coefficient {s:?}"))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let poly = Polynomial::new(coeffs);
        if poly.is_zero() {
            return Err(Error::MalformedDocument(
                "zero node polynomial".to_string(),
            ));
        }
        Ok(poly)
    }
}

/// A freshly generated rule: the document plus the failure that stopped
/// the chain early, if any.
#[derive(Debug, Clone)]
pub struct BuiltRule {
    pub document: RuleDocument,
    pub failure: Option<FailureReason>,
}

struct FactorRoots {
    level: usize,
    fine: Vec<Real>,
}

/// Runs a whole chain and assembles the document.
///
/// `start` is the node polynomial of the initial formula (`1` for the
/// empty formula). On a mid-chain failure the completed prefix is still
/// returned, with the failure recorded in the document.
pub fn build_rule_document(
    start: &Polynomial,
    schedule: &Schedule,
    mu: &MomentSequence,
    omega: &Interval,
    digits: u32,
    description: &str,
) -> Result<BuiltRule, Error> {
    validate_start(start, omega)?;
    let steps = generate_chain(start, schedule, mu, omega)?;

    // factors, tagged with the 1-based level at which they enter
    let start_degree = start.degree().expect("nonzero");
    let mut factors: Vec<(usize, Polynomial)> = Vec::new();
    let mut next_level = 1usize;
    if start_degree > 0 {
        factors.push((next_level, start.clone()));
        next_level += 1;
    }
    let mut failure = None;
    let mut failed_step: Option<&crate::extension::ChainStep> = None;
    for step in &steps {
        match &step.outcome {
            ExtensionOutcome::Success { g, .. } => {
                factors.push((next_level, g.clone()));
                next_level += 1;
            }
            ExtensionOutcome::Failure { reason } => {
                failure = Some(reason.clone());
                failed_step = Some(step);
                break;
            }
        }
    }

    let fine_digits = 2 * digits;
    let factor_roots: Vec<FactorRoots> = factors
        .iter()
        .map(|(level, g)| {
            Ok(FactorRoots {
                level: *level,
                fine: real_roots(g, omega, fine_digits)?,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;

    let mut levels = Vec::new();
    let mut f_running = Polynomial::one();
    for (idx, (level, g)) in factors.iter().enumerate() {
        let n_before = f_running.degree().expect("nonzero");
        f_running = &f_running * g;
        let is_start_level = start_degree > 0 && idx == 0;
        let p = if is_start_level {
            None
        } else {
            Some(g.degree().expect("nonzero factor"))
        };
        let guaranteed = match p {
            Some(p) => (n_before + 2 * p) as i64 - 1,
            None => start_degree as i64 - 1,
        };
        let level_doc = assemble_level(
            *level,
            p,
            &f_running,
            &factor_roots[..=idx],
            mu,
            digits,
            guaranteed,
        )?;
        levels.push(level_doc);
    }

    let document = RuleDocument {
        description: description.to_string(),
        domain: [
            Interval::format_endpoint(omega.lower()),
            Interval::format_endpoint(omega.upper()),
        ],
        distribution: mu
            .distribution()
            .map_or_else(|| "custom".to_string(), |d| d.to_string()),
        precision: digits,
        levels,
        failure: failure.as_ref().map(|reason| FailureDoc {
            after_level: next_level - 1,
            p: failed_step.map(|s| s.p).unwrap_or_default(),
            reason: reason.to_string(),
        }),
    };
    Ok(BuiltRule { document, failure })
}

fn validate_start(start: &Polynomial, omega: &Interval) -> Result<(), Error> {
    let degree = start.degree().ok_or(Error::ZeroPolynomial)?;
    if degree == 0 {
        return Ok(());
    }
    if !start.is_squarefree() || count_real_roots(start, omega)? != degree {
        return Err(Error::InvalidInput(
            "start polynomial must have simple real roots inside the domain".to_string(),
        ));
    }
    Ok(())
}

/// Builds one level document from the per-factor refined roots.
fn assemble_level(
    level: usize,
    p: Option<usize>,
    node_polynomial: &Polynomial,
    contributing: &[FactorRoots],
    mu: &MomentSequence,
    digits: u32,
    guaranteed: i64,
) -> Result<LevelDoc, Error> {
    // merge factor roots, remembering which level introduced each node
    let mut tagged: Vec<(Real, usize)> = Vec::new();
    for fr in contributing {
        for r in &fr.fine {
            tagged.push((r.clone(), fr.level));
        }
    }
    tagged.sort_by(|a, b| a.0.value().cmp(b.0.value()));

    let fine: Vec<Real> = tagged.iter().map(|(r, _)| r.clone()).collect();
    let weights = solve_weights(&fine, mu, digits)?;
    let nodes: Vec<Real> = fine.iter().map(|r| r.with_digits(digits)).collect();
    let formula =
        QuadratureFormula::new(nodes, weights, node_polynomial.clone(), digits, None)?;

    let k = formula.len();
    let max_check = match mu.max_index() {
        Some(m) => m.min(2 * k + 1),
        None => 2 * k + 1,
    };
    let verified = degree_of_exactness(&formula, mu, max_check)?;
    if verified < guaranteed {
        return Err(Error::CertificateViolation(format!(
            "level {level}: measured degree {verified} below the guaranteed {guaranteed}"
        )));
    }

    Ok(LevelDoc {
        level,
        p,
        node_polynomial: node_polynomial
            .coeffs()
            .iter()
            .map(format_rational)
            .collect(),
        nodes: formula
            .nodes()
            .iter()
            .zip(&tagged)
            .map(|(r, (_, first_level))| NodeDoc {
                value: r.to_decimal_string(),
                first_level: *first_level,
            })
            .collect(),
        weights: formula
            .weights()
            .iter()
            .map(Real::to_decimal_string)
            .collect(),
        guaranteed_degree: guaranteed,
        verified_degree: verified,
    })
}

/// Recovers the per-level factor polynomials `G_i = F_i / F_(i-1)`.
pub fn recover_factors(doc: &RuleDocument) -> Result<Vec<(usize, Polynomial)>, Error> {
    let mut factors = Vec::with_capacity(doc.levels.len());
    let mut prev = Polynomial::one();
    for (i, level) in doc.levels.iter().enumerate() {
        let current = doc.level_polynomial(i)?;
        let g = current.exact_div(&prev)?.ok_or_else(|| {
            Error::MalformedDocument(format!(
                "level {} polynomial is not divisible by its predecessor",
                level.level
            ))
        })?;
        factors.push((level.level, g));
        prev = current;
    }
    Ok(factors)
}

/// Applies one extension step to an existing document.
///
/// Tries the candidate `p` values in order on the document's top node
/// polynomial. On success returns the document with one appended level;
/// on failure returns the outcome and leaves the document untouched.
pub fn extend_document(
    doc: &RuleDocument,
    p_candidates: &[usize],
    mu: &MomentSequence,
) -> Result<(Option<RuleDocument>, usize, ExtensionOutcome), Error> {
    if doc.levels.is_empty() {
        return Err(Error::MalformedDocument("document has no levels".to_string()));
    }
    let omega = doc.domain_interval()?;
    let f_top = doc.level_polynomial(doc.levels.len() - 1)?;
    let (p, outcome) = auto_extend(&f_top, mu, &omega, p_candidates)?;
    let ExtensionOutcome::Success { g, .. } = &outcome else {
        return Ok((None, p, outcome));
    };

    let digits = doc.precision;
    let fine_digits = 2 * digits;
    let mut factors = recover_factors(doc)?;
    let new_level = doc.levels.last().expect("nonempty").level + 1;
    factors.push((new_level, g.clone()));

    let factor_roots = factors
        .iter()
        .map(|(level, poly)| {
            Ok(FactorRoots {
                level: *level,
                fine: real_roots(poly, &omega, fine_digits)?,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;

    let f_new = &f_top * g;
    let n_before = f_top.degree().expect("nonzero");
    let guaranteed = (n_before + 2 * g.degree().expect("nonzero")) as i64 - 1;
    let level_doc = assemble_level(
        new_level,
        Some(g.degree().expect("nonzero")),
        &f_new,
        &factor_roots,
        mu,
        digits,
        guaranteed,
    )?;

    let mut updated = doc.clone();
    updated.levels.push(level_doc);
    updated.failure = None;
    Ok((Some(updated), p, outcome))
}

/// Why a document failed verification.
#[derive(Debug)]
pub enum VerifyError {
    /// The document cannot be interpreted at all.
    Malformed(String),
    /// A named invariant does not hold.
    Failed { check: &'static str, detail: String },
    /// Verification could not run (e.g. not enough moments supplied).
    Cannot(String),
}

impl std::fmt::Display for VerifyError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VerifyError::Malformed(m) => write!(f, "malformed document: {m}"),
            VerifyError::Failed { check, detail } => {
                write!(f, "verification failed [{check}]: {detail}")
            }
            VerifyError::Cannot(m) => write!(f, "cannot verify: {m}"),
        }
    }
}

fn internal(e: Error) -> VerifyError {
    match e {
        Error::MalformedDocument(m) => VerifyError::Malformed(m),
        Error::InsufficientMoments { needed, available } => VerifyError::Cannot(format!(
            "needs moments up to index {needed}, have {available}"
        )),
        other => VerifyError::Cannot(other.to_string()),
    }
}

/// Re-derives every invariant of a stored document from scratch.
///
/// Checks, in order: structure, nestedness (exact polynomial
/// divisibility), root certificates per level, weight sums, moment
/// reproduction, measured degrees, node residuals, first-level tags.
/// The first failing check names the failure.
pub fn verify_document(doc: &RuleDocument, mu: &MomentSequence) -> Result<(), VerifyError> {
    // --- structure
    if doc.levels.is_empty() {
        return Err(VerifyError::Malformed("document has no levels".to_string()));
    }
    let omega = doc.domain_interval().map_err(internal)?;
    if &omega != mu.domain() {
        return Err(VerifyError::Failed {
            check: "domain",
            detail: format!("document domain {omega} differs from moment domain {}", mu.domain()),
        });
    }
    let mut polys = Vec::with_capacity(doc.levels.len());
    let mut parsed_levels = Vec::with_capacity(doc.levels.len());
    for (i, level) in doc.levels.iter().enumerate() {
        let poly = doc.level_polynomial(i).map_err(internal)?;
        let k = poly.degree().expect("nonzero");
        if level.nodes.len() != k || level.weights.len() != k {
            return Err(VerifyError::Malformed(format!(
                "level {}: degree {k} but {} nodes and {} weights",
                level.level,
                level.nodes.len(),
                level.weights.len()
            )));
        }
        let nodes = level
            .nodes
            .iter()
            .map(|n| {
                parse_number(&n.value).ok_or_else(|| {
                    VerifyError::Malformed(format!("bad node {:?}", n.value))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let weights = level
            .weights
            .iter()
            .map(|w| {
                parse_number(w)
                    .ok_or_else(|| VerifyError::Malformed(format!("bad weight {w:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        polys.push(poly);
        parsed_levels.push((nodes, weights));
    }

    // --- nestedness: each node polynomial exactly divides its successor
    for i in 1..polys.len() {
        let divides = polys[i]
            .exact_div(&polys[i - 1])
            .map_err(internal)?
            .is_some();
        if !divides {
            return Err(VerifyError::Failed {
                check: "nestedness",
                detail: format!(
                    "level {} polynomial does not divide level {}",
                    doc.levels[i - 1].level,
                    doc.levels[i].level
                ),
            });
        }
        if polys[i].degree() <= polys[i - 1].degree() {
            return Err(VerifyError::Failed {
                check: "nestedness",
                detail: "node counts must strictly increase".to_string(),
            });
        }
    }

    // --- certificates: simple real roots inside the domain, level by level
    for (i, poly) in polys.iter().enumerate() {
        let k = poly.degree().expect("nonzero");
        if !poly.is_squarefree() {
            return Err(VerifyError::Failed {
                check: "certificates",
                detail: format!("level {}: repeated roots", doc.levels[i].level),
            });
        }
        let count = count_real_roots(poly, &omega).map_err(internal)?;
        if count != k {
            return Err(VerifyError::Failed {
                check: "certificates",
                detail: format!(
                    "level {}: only {count} of {k} roots lie in {omega}",
                    doc.levels[i].level
                ),
            });
        }
    }

    let prec = doc.precision;
    // --- weight sums
    for (i, (_, weights)) in parsed_levels.iter().enumerate() {
        let sum: Rational = weights.iter().cloned().sum();
        let err = (sum - Rational::one()).abs();
        if err > pow10(-(prec.saturating_sub(5) as i64)) {
            return Err(VerifyError::Failed {
                check: "weight-sum",
                detail: format!("level {}: off by {err}", doc.levels[i].level),
            });
        }
    }

    // --- moment reproduction: a K-node formula must reproduce μ_0..μ_(K-1)
    let tol = pow10(-(prec.saturating_sub(10) as i64));
    for (i, (nodes, weights)) in parsed_levels.iter().enumerate() {
        let k = nodes.len();
        mu.ensure_index(k.saturating_sub(1)).map_err(internal)?;
        let mut powers: Vec<Rational> = vec![Rational::one(); k];
        for j in 0..k {
            let mut sum = Rational::zero();
            for (w, pw) in weights.iter().zip(&powers) {
                sum += w * pw;
            }
            let muj = mu.moment(j).map_err(internal)?;
            let err = (sum - &muj).abs();
            if err > &tol * &muj.abs().max(Rational::one()) {
                return Err(VerifyError::Failed {
                    check: "moment-reproduction",
                    detail: format!(
                        "level {}: moment {j} off by {err}",
                        doc.levels[i].level
                    ),
                });
            }
            if j + 1 < k {
                for (pw, n) in powers.iter_mut().zip(nodes) {
                    *pw *= n;
                }
            }
        }
    }

    // --- measured degrees
    for (i, level) in doc.levels.iter().enumerate() {
        if level.verified_degree < level.guaranteed_degree {
            return Err(VerifyError::Failed {
                check: "verified-degree",
                detail: format!(
                    "level {}: verified {} below guaranteed {}",
                    level.level, level.verified_degree, level.guaranteed_degree
                ),
            });
        }
        let (nodes, weights) = &parsed_levels[i];
        let k = nodes.len();
        let want_check = 2 * k + 1;
        let max_check = match mu.max_index() {
            Some(m) => m.min(want_check),
            None => want_check,
        };
        let reals: Vec<Real> = nodes.iter().map(|v| Real::exact(v.clone(), prec)).collect();
        let wreals: Vec<Real> = weights
            .iter()
            .map(|v| Real::exact(v.clone(), prec))
            .collect();
        let formula = QuadratureFormula::new(reals, wreals, polys[i].clone(), prec, None)
            .map_err(internal)?;
        let measured = degree_of_exactness(&formula, mu, max_check).map_err(internal)?;
        let consistent = if max_check == want_check {
            measured == level.verified_degree
        } else {
            // fewer moments available now than at generation time
            measured == (max_check as i64).min(level.verified_degree)
        };
        if !consistent {
            return Err(VerifyError::Failed {
                check: "verified-degree",
                detail: format!(
                    "level {}: stored degree {} but measured {measured}",
                    level.level, level.verified_degree
                ),
            });
        }
    }

    // --- node residuals against the exact polynomial
    let res_tol = pow10(-(prec.saturating_sub(8) as i64));
    for (i, (nodes, _)) in parsed_levels.iter().enumerate() {
        let dpoly = polys[i].derivative();
        for node in nodes {
            let value = polys[i].eval(node).abs();
            let slope = dpoly.eval(node).abs().max(Rational::one());
            if value > &res_tol * &slope {
                return Err(VerifyError::Failed {
                    check: "node-residuals",
                    detail: format!(
                        "level {}: polynomial residual {value} at a stored node",
                        doc.levels[i].level
                    ),
                });
            }
        }
    }

    // --- first-level tags: monotone membership across levels
    let match_tol = pow10(-(prec.saturating_sub(5) as i64));
    for i in 0..doc.levels.len() {
        for (node, value) in doc.levels[i].nodes.iter().zip(&parsed_levels[i].0) {
            if node.first_level == 0 || node.first_level > doc.levels[i].level {
                return Err(VerifyError::Failed {
                    check: "first-level-tags",
                    detail: format!(
                        "level {}: tag {} out of range",
                        doc.levels[i].level, node.first_level
                    ),
                });
            }
            if i > 0 {
                let in_prev = doc.levels[i - 1]
                    .nodes
                    .iter()
                    .zip(&parsed_levels[i - 1].0)
                    .find(|(_, prev)| (*prev - value).abs() <= match_tol);
                match in_prev {
                    Some((prev_node, _)) => {
                        if prev_node.first_level != node.first_level {
                            return Err(VerifyError::Failed {
                                check: "first-level-tags",
                                detail: format!(
                                    "tag changed between levels {} and {}",
                                    doc.levels[i - 1].level,
                                    doc.levels[i].level
                                ),
                            });
                        }
                    }
                    None => {
                        if node.first_level != doc.levels[i].level {
                            return Err(VerifyError::Failed {
                                check: "first-level-tags",
                                detail: format!(
                                    "new node in level {} tagged {}",
                                    doc.levels[i].level, node.first_level
                                ),
                            });
                        }
                    }
                }
            }
        }
    }

    Ok(())
}

/// Accepts both `"p/q"` and decimal node/weight strings.
fn parse_number(s: &str) -> Option<Rational> {
    let t = s.trim();
    if t.contains('/') || !t.contains(['.', 'e', 'E']) {
        parse_rational(t)
    } else {
        parse_decimal(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn beta_half() -> MomentSequence {
        MomentSequence::from_distribution("beta:1/2,1/2".parse().unwrap())
    }

    fn small_beta_rule() -> BuiltRule {
        let mu = beta_half();
        let omega = mu.domain().clone();
        build_rule_document(
            &Polynomial::one(),
            &Schedule::Explicit(vec![1, 2]),
            &mu,
            &omega,
            40,
            "beta test rule",
        )
        .unwrap()
    }

    #[test]
    fn builds_two_level_beta_rule() {
        let built = small_beta_rule();
        assert!(built.failure.is_none());
        let doc = &built.document;
        assert_eq!(doc.levels.len(), 2);
        assert_eq!(doc.levels[0].nodes.len(), 1);
        assert_eq!(doc.levels[1].nodes.len(), 3);
        assert_eq!(doc.levels[0].nodes[0].value, "0.5");
        assert_eq!(doc.levels[1].nodes[1].value, "0.5");
        assert_eq!(doc.levels[1].nodes[1].first_level, 1);
        assert_eq!(doc.levels[1].nodes[0].first_level, 2);
        assert_eq!(doc.distribution, "beta:1/2,1/2");
        // level 2 weights are all 1/3
        for w in &doc.levels[1].weights {
            let v = parse_number(w).unwrap();
            assert!((v - rat(1, 3)).abs() < pow10(-35));
        }
    }

    #[test]
    fn document_round_trips_and_verifies() {
        let built = small_beta_rule();
        let json = built.document.to_json().unwrap();
        let back = RuleDocument::from_json(&json).unwrap();
        assert_eq!(back, built.document);
        verify_document(&back, &beta_half()).unwrap();
    }

    #[test]
    fn csv_lists_top_level() {
        let built = small_beta_rule();
        let csv = built.document.to_csv();
        let lines: Vec<&str> = csv.trim().lines().collect();
        assert_eq!(lines[0], "node,weight,first_level");
        assert_eq!(lines.len(), 4);
        assert!(lines[2].starts_with("0.5,"));
        assert!(lines[2].ends_with(",1"));
    }

    #[test]
    fn perturbed_node_fails_moment_reproduction() {
        let built = small_beta_rule();
        let mut doc = built.document;
        // perturb one node in the 10th digit
        let v = &doc.levels[1].nodes[0].value;
        let perturbed = parse_number(v).unwrap() + pow10(-10);
        doc.levels[1].nodes[0].value = crate::real::format_decimal(&perturbed, 40);
        match verify_document(&doc, &beta_half()) {
            Err(VerifyError::Failed { check, .. }) => {
                assert_eq!(check, "moment-reproduction")
            }
            other => panic!("expected moment-reproduction failure, got {other:?}"),
        }
    }

    #[test]
    fn empty_levels_is_malformed() {
        let built = small_beta_rule();
        let mut doc = built.document;
        doc.levels.clear();
        assert!(matches!(
            verify_document(&doc, &beta_half()),
            Err(VerifyError::Malformed(_))
        ));
    }

    #[test]
    fn broken_nesting_detected() {
        let built = small_beta_rule();
        let mut doc = built.document;
        // replace the top polynomial with one the first level does not divide
        doc.levels[1].node_polynomial =
            vec!["-1/3".to_string(), "0".to_string(), "0".to_string(), "1".to_string()];
        match verify_document(&doc, &beta_half()) {
            Err(VerifyError::Failed { check, .. }) => assert_eq!(check, "nestedness"),
            other => panic!("expected nestedness failure, got {other:?}"),
        }
    }

    #[test]
    fn partial_document_on_insufficient_moments() {
        let mu = MomentSequence::from_table(
            Interval::closed(Rational::zero(), Rational::one()).unwrap(),
            (0..=2)
                .map(|k| beta_half().moment(k).unwrap())
                .collect(),
            crate::moments::MomentKind::Exact,
        )
        .unwrap();
        let omega = mu.domain().clone();
        let built = build_rule_document(
            &Polynomial::one(),
            &Schedule::Explicit(vec![1, 2]),
            &mu,
            &omega,
            30,
            "partial",
        )
        .unwrap();
        assert_eq!(built.document.levels.len(), 1);
        assert!(built.failure.is_some());
        let failure = built.document.failure.as_ref().unwrap();
        assert_eq!(failure.after_level, 1);
        assert!(failure.reason.contains("InsufficientMoments"));
    }

    #[test]
    fn extend_appends_a_level() {
        let built = small_beta_rule();
        let mu = beta_half();
        let (updated, p, outcome) = extend_document(&built.document, &[4], &mu).unwrap();
        assert!(outcome.is_success());
        assert_eq!(p, 4);
        let updated = updated.unwrap();
        assert_eq!(updated.levels.len(), 3);
        assert_eq!(updated.levels[2].nodes.len(), 7);
        // old nodes keep identical strings
        for (old, new) in built.document.levels[1]
            .nodes
            .iter()
            .zip(updated.levels[2].nodes.iter().filter(|n| n.first_level <= 2))
        {
            assert_eq!(old.value, new.value);
            assert_eq!(old.first_level, new.first_level);
        }
        verify_document(&updated, &mu).unwrap();
    }

    #[test]
    fn extend_failure_leaves_document_alone() {
        let mu = MomentSequence::from_distribution("uniform:-1,1".parse().unwrap());
        let omega = mu.domain().clone();
        let built = build_rule_document(
            &Polynomial::from_integers(&[0, 1]),
            &Schedule::Explicit(vec![2]),
            &mu,
            &omega,
            30,
            "gkp prefix",
        )
        .unwrap();
        let (updated, _, outcome) = extend_document(&built.document, &[1], &mu).unwrap();
        assert!(updated.is_none());
        assert!(!outcome.is_success());
    }
}
