//! Quadrature formulas: weights, degree measurement, assembly.
//!
//! Weights come from the moment-matching square system
//! `Σ_k w_k t_k^i = μ_i`, `i = 0..K-1` — a Vandermonde system solved with
//! Björck–Pereyra progressive elimination rather than dense LU. The
//! elimination itself runs in exact rational arithmetic on the (already
//! refined) node values, so the only error in a weight is the one
//! inherited from its nodes; nodes are therefore refined at twice the
//! requested output precision before the solve. Formulas whose nodes are
//! all exactly rational get exact rational weights.

use num_traits::{One, Signed};

use crate::error::Error;
use crate::interval::Interval;
use crate::moments::{MomentKind, MomentSequence};
use crate::poly::Polynomial;
use crate::rational::{pow10, Rational};
use crate::real::Real;
use crate::roots::real_roots;

/// A quadrature formula at a stated decimal precision.
///
/// `nodes` are the roots of `node_polynomial` (kept exact so chains never
/// accumulate rounding), strictly increasing; `weights[k]` belongs to
/// `nodes[k]`.
#[derive(Debug, Clone)]
pub struct QuadratureFormula {
    nodes: Vec<Real>,
    weights: Vec<Real>,
    node_polynomial: Polynomial,
    precision: u32,
    verified_degree: Option<i64>,
}

impl QuadratureFormula {
    /// Assembles and validates a formula from parts.
    pub fn new(
        nodes: Vec<Real>,
        weights: Vec<Real>,
        node_polynomial: Polynomial,
        precision: u32,
        verified_degree: Option<i64>,
    ) -> Result<Self, Error> {
        let k = node_polynomial.degree().ok_or(Error::ZeroPolynomial)?;
        if nodes.len() != k || weights.len() != k {
            return Err(Error::InvalidInput(format!(
                "expected {k} nodes and weights, got {} and {}",
                nodes.len(),
                weights.len()
            )));
        }
        if nodes.windows(2).any(|w| w[0].value() >= w[1].value()) {
            return Err(Error::InvalidInput(
                "nodes must be strictly increasing".to_string(),
            ));
        }
        let formula = QuadratureFormula {
            nodes,
            weights,
            node_polynomial,
            precision,
            verified_degree,
        };
        formula.check_weight_sum()?;
        Ok(formula)
    }

    /// `Σ w_k = μ_0 = 1` within `10^-(precision-5)`.
    fn check_weight_sum(&self) -> Result<(), Error> {
        if self.nodes.is_empty() {
            return Ok(());
        }
        let sum: Rational = self.weights.iter().map(|w| w.value().clone()).sum();
        let err = (sum - Rational::one()).abs();
        if err > pow10(-(self.precision.saturating_sub(5) as i64)) {
            return Err(Error::InvalidInput(format!(
                "weights sum away from 1 by {err}"
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Real] {
        &self.nodes
    }

    pub fn weights(&self) -> &[Real] {
        &self.weights
    }

    pub fn node_polynomial(&self) -> &Polynomial {
        &self.node_polynomial
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn verified_degree(&self) -> Option<i64> {
        self.verified_degree
    }

    pub fn set_verified_degree(&mut self, d: i64) {
        self.verified_degree = Some(d);
    }

    /// Checks every node lies in the closed domain.
    pub fn check_domain(&self, omega: &Interval) -> Result<(), Error> {
        for n in &self.nodes {
            if !omega.contains(n.value()) {
                return Err(Error::CertificateViolation(format!(
                    "node {} outside {omega}",
                    n.to_decimal_string()
                )));
            }
        }
        Ok(())
    }
}

/// Solves the moment-matching system for the weights of the given nodes.
///
/// Björck–Pereyra dual elimination, exact on the node values; results are
/// reported at `digits` significant digits (exactly, when both the nodes
/// and the moments are exact). A node equal to zero contributes `0^0 = 1`
/// in the zeroth equation, which the factored elimination encodes
/// implicitly. Duplicate nodes are rejected.
pub fn solve_weights(
    nodes: &[Real],
    mu: &MomentSequence,
    digits: u32,
) -> Result<Vec<Real>, Error> {
    let k = nodes.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    mu.ensure_index(k - 1)?;
    for i in 0..k {
        for j in i + 1..k {
            if nodes[i].value() == nodes[j].value() {
                return Err(Error::DuplicateNodes);
            }
        }
    }
    let inputs_exact =
        nodes.iter().all(Real::is_exact) && matches!(mu.kind(), MomentKind::Exact);
    // exact inputs (all-rational nodes) get exact weights; otherwise the
    // elimination runs at twice the output precision and rounds at the end
    let work = 2 * digits + 10;
    let lift = |r: &Real| {
        if inputs_exact {
            Real::exact(r.value().clone(), work)
        } else {
            Real::approx(r.value().clone(), work)
        }
    };
    let x: Vec<Real> = nodes.iter().map(lift).collect();
    let mut b: Vec<Real> = (0..k)
        .map(|i| Ok(Real::exact(mu.moment(i)?, work)))
        .collect::<Result<_, Error>>()?;

    // stage 1: transposed Horner steps
    for kk in 0..k - 1 {
        for i in (kk + 1..k).rev() {
            b[i] = &b[i] - &(&x[kk] * &b[i - 1]);
        }
    }
    // stage 2: transposed divided differences
    for kk in (0..k - 1).rev() {
        for i in kk + 1..k {
            let denom = &x[i] - &x[i - kk - 1];
            b[i] = &b[i] / &denom;
        }
        for i in kk..k - 1 {
            b[i] = &b[i] - &b[i + 1];
        }
    }

    Ok(b.into_iter()
        .map(|w| {
            if w.is_exact() {
                Real::exact(w.value().clone(), digits)
            } else {
                Real::approx(w.value().clone(), digits)
            }
        })
        .collect())
}

/// Measured degree of polynomial exactness of a formula.
///
/// Returns the largest `d <= max_check` with
/// `|Σ w_k t_k^j - μ_j| <= 10^-(precision-10) · max(1, |μ_j|)` for every
/// `j <= d` (so `max_check` itself when nothing fails, and -1 when even
/// `j = 0` fails). Powers accumulate in rounded arithmetic comfortably
/// above the formula's precision.
pub fn degree_of_exactness(
    formula: &QuadratureFormula,
    mu: &MomentSequence,
    max_check: usize,
) -> Result<i64, Error> {
    mu.ensure_index(max_check)?;
    let work = 2 * formula.precision() + 20;
    let tol = pow10(-(formula.precision().saturating_sub(10) as i64));

    let nodes: Vec<Real> = formula.nodes().iter().map(|n| n.with_digits(work)).collect();
    let weights: Vec<Real> = formula
        .weights()
        .iter()
        .map(|w| w.with_digits(work))
        .collect();
    let mut powers: Vec<Real> = nodes
        .iter()
        .map(|_| Real::exact(Rational::one(), work))
        .collect();

    for j in 0..=max_check {
        let mut sum = Real::zero(work);
        for (w, p) in weights.iter().zip(&powers) {
            sum = &sum + &(w * p);
        }
        let muj = mu.moment(j)?;
        let residual = (sum.value() - &muj).abs();
        let scale = muj.abs().max(Rational::one());
        if residual > &tol * &scale {
            return Ok(j as i64 - 1);
        }
        if j < max_check {
            for (p, n) in powers.iter_mut().zip(&nodes) {
                *p = &*p * n;
            }
        }
    }
    Ok(max_check as i64)
}

/// Builds the formula supported on the roots of a certified `F`.
///
/// Roots are refined at twice the requested precision, weights solved on
/// those refined values, then both are reported at `digits`. The measured
/// degree is recorded up to `2K + 1` (or as far as the moments reach).
pub fn build_formula(
    f: &Polynomial,
    mu: &MomentSequence,
    omega: &Interval,
    digits: u32,
) -> Result<QuadratureFormula, Error> {
    let k = f.degree().ok_or(Error::ZeroPolynomial)?;
    mu.ensure_index(k.saturating_sub(1))?;
    let fine = real_roots(f, omega, 2 * digits)?;
    let weights_fine = solve_weights(&fine, mu, digits)?;
    let nodes: Vec<Real> = fine.iter().map(|r| r.with_digits(digits)).collect();

    let mut formula = QuadratureFormula::new(nodes, weights_fine, f.clone(), digits, None)?;
    let max_check = match mu.max_index() {
        Some(m) => m.min(2 * k + 1),
        None => 2 * k + 1,
    };
    let d = degree_of_exactness(&formula, mu, max_check)?;
    formula.set_verified_degree(d);
    formula.check_domain(omega)?;
    Ok(formula)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;
    use crate::rational::{rat, rat_int};

    fn beta_half() -> MomentSequence {
        MomentSequence::from_distribution("beta:1/2,1/2".parse().unwrap())
    }

    fn uniform_sym() -> MomentSequence {
        MomentSequence::from_distribution("uniform:-1,1".parse().unwrap())
    }

    fn exact_nodes(vals: &[Rational]) -> Vec<Real> {
        vals.iter().map(|v| Real::exact(v.clone(), 50)).collect()
    }

    /// Independent check: build the Vandermonde matrix explicitly (with
    /// the 0^0 = 1 convention) and solve by dense exact elimination.
    fn dense_oracle(x: &[Rational], mu: &MomentSequence) -> Vec<Rational> {
        let k = x.len();
        let a: Vec<Vec<Rational>> = (0..k)
            .map(|i| {
                x.iter()
                    .map(|t| {
                        if i == 0 {
                            Rational::one() // includes 0^0
                        } else {
                            let mut acc = Rational::one();
                            for _ in 0..i {
                                acc *= t;
                            }
                            acc
                        }
                    })
                    .collect()
            })
            .collect();
        let b: Vec<Rational> = (0..k).map(|i| mu.moment(i).unwrap()).collect();
        linalg::solve(&a, &b).expect("distinct nodes")
    }

    #[test]
    fn single_node_weight_is_total_mass() {
        let w = solve_weights(&exact_nodes(&[rat(1, 2)]), &beta_half(), 50).unwrap();
        assert_eq!(w.len(), 1);
        assert!(w[0].is_exact());
        assert_eq!(w[0].value(), &rat_int(1));
    }

    #[test]
    fn bjorck_pereyra_matches_dense_oracle() {
        let mu = uniform_sym();
        let xs = vec![rat(-3, 4), rat(-1, 8), rat(1, 3), rat(7, 9), rat(9, 10)];
        let expected = dense_oracle(&xs, &mu);
        let got = solve_weights(&exact_nodes(&xs), &mu, 50).unwrap();
        for (g, e) in got.iter().zip(&expected) {
            assert_eq!(g.value(), e);
        }
    }

    #[test]
    fn bjorck_pereyra_matches_oracle_with_zero_node() {
        let mu = uniform_sym();
        let xs = vec![rat(-1, 2), rat_int(0), rat(2, 3)];
        let expected = dense_oracle(&xs, &mu);
        let got = solve_weights(&exact_nodes(&xs), &mu, 50).unwrap();
        for (g, e) in got.iter().zip(&expected) {
            assert_eq!(g.value(), e);
        }
    }

    #[test]
    fn duplicate_nodes_rejected() {
        let xs = exact_nodes(&[rat(1, 2), rat(1, 2)]);
        assert!(matches!(
            solve_weights(&xs, &beta_half(), 50),
            Err(Error::DuplicateNodes)
        ));
    }

    #[test]
    fn weight_solve_needs_enough_moments() {
        let mu = MomentSequence::from_table(
            Interval::closed(rat_int(0), rat_int(1)).unwrap(),
            vec![rat_int(1), rat(1, 2)],
            MomentKind::Exact,
        )
        .unwrap();
        let xs = exact_nodes(&[rat(1, 4), rat(1, 2), rat(3, 4)]);
        assert!(matches!(
            solve_weights(&xs, &mu, 50),
            Err(Error::InsufficientMoments { .. })
        ));
    }

    #[test]
    fn one_node_formula_degrees() {
        // node {0}, weight 1 on uniform(-1,1): matches μ_1 = 0 but not μ_2
        let f = Polynomial::from_integers(&[0, 1]);
        let formula = build_formula(&f, &uniform_sym(), &uniform_sym().domain().clone(), 50)
            .unwrap();
        assert_eq!(
            degree_of_exactness(&formula, &uniform_sym(), 4).unwrap(),
            1
        );
        // node {1/2}, weight 1 on beta(1/2,1/2): μ_2 = 3/8 ≠ 1/4
        let f = Polynomial::new(vec![rat(-1, 2), rat_int(1)]);
        let formula = build_formula(&f, &beta_half(), &beta_half().domain().clone(), 50).unwrap();
        assert_eq!(degree_of_exactness(&formula, &beta_half(), 4).unwrap(), 1);
    }

    #[test]
    fn gauss_three_point_degree_is_five() {
        // F = t(t^2 - 3/5) on uniform(-1,1): the 3-point Gauss formula
        let f = Polynomial::new(vec![rat_int(0), rat(-3, 5), rat_int(0), rat_int(1)]);
        let mu = uniform_sym();
        let formula = build_formula(&f, &mu, &mu.domain().clone(), 50).unwrap();
        assert_eq!(degree_of_exactness(&formula, &mu, 8).unwrap(), 5);
        assert_eq!(formula.verified_degree(), Some(5));
        // weights are 5/18, 4/9, 5/18 (half the classical Gauss-Legendre
        // weights, since the density is 1/2)
        let expected = [rat(5, 18), rat(4, 9), rat(5, 18)];
        for (w, e) in formula.weights().iter().zip(&expected) {
            let diff = (w.value() - e).abs();
            assert!(diff < pow10(-45), "weight off by {diff}");
        }
    }

    #[test]
    fn equal_weights_for_arcsine_three_point() {
        // F = (t - 1/2)(t^2 - t + 1/16) on Beta(1/2,1/2)
        let lin = Polynomial::new(vec![rat(-1, 2), rat_int(1)]);
        let quad = Polynomial::new(vec![rat(1, 16), rat_int(-1), rat_int(1)]);
        let f = &lin * &quad;
        let mu = beta_half();
        let formula = build_formula(&f, &mu, &mu.domain().clone(), 50).unwrap();
        for w in formula.weights() {
            let diff = (w.value() - rat(1, 3)).abs();
            assert!(diff < pow10(-45), "weight off by {diff}");
        }
        assert!(formula.verified_degree().unwrap() >= 5);
    }

    #[test]
    fn formula_validation_rejects_bad_shapes() {
        let f = Polynomial::from_integers(&[0, 1]);
        // wrong arity
        assert!(QuadratureFormula::new(vec![], vec![], f.clone(), 50, None).is_err());
        // non-increasing nodes
        let nodes = exact_nodes(&[rat(1, 2), rat(1, 4)]);
        let ws = exact_nodes(&[rat(1, 2), rat(1, 2)]);
        let f2 = Polynomial::from_integers(&[0, 0, 1]);
        assert!(QuadratureFormula::new(nodes, ws, f2.clone(), 50, None).is_err());
        // weight sum far from one
        let nodes = exact_nodes(&[rat(1, 4), rat(1, 2)]);
        let ws = exact_nodes(&[rat_int(1), rat_int(1)]);
        assert!(QuadratureFormula::new(nodes, ws, f2, 50, None).is_err());
    }

    #[test]
    fn moment_reproduction_for_built_formulas() {
        // a K-node formula reproduces μ_0..μ_(K-1)
        let mu = beta_half();
        let omega = mu.domain().clone();
        let lin = Polynomial::new(vec![rat(-1, 2), rat_int(1)]);
        let quad = Polynomial::new(vec![rat(1, 16), rat_int(-1), rat_int(1)]);
        let f = &lin * &quad;
        let formula = build_formula(&f, &mu, &omega, 40).unwrap();
        assert!(degree_of_exactness(&formula, &mu, 2).unwrap() >= 2);
    }
}
