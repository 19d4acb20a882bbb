//! # nestquad
//!
//! Nested quadrature rules for arbitrary continuous distributions, built
//! directly from the distribution's moment sequence.
//!
//! A quadrature formula approximates `∫ f(t) ρ(t) dt ≈ Σ w_k f(t_k)`. This
//! crate extends an existing formula (the roots of a polynomial `F`) by `p`
//! new nodes (the roots of a polynomial `G`) chosen so that the combined
//! formula is exact for all polynomials of degree at least `n + 2p − 1`.
//! The coefficients of `G` come from a Hankel linear system assembled from
//! the moments `μ_k = ∫ t^k ρ(t) dt` — the density itself is never
//! evaluated. Repeating the step yields a nested sequence of formulas:
//! every node set contains its predecessor's.
//!
//! Whenever the moments are rational the whole decision procedure runs in
//! exact rational arithmetic: existence of the extension, the location and
//! simplicity of the new nodes (Sturm chains), disjointness from the old
//! nodes (resultants), and simplicity (discriminants) are all certified
//! without ever computing a root numerically. Nodes and weights are then
//! refined separately to any requested number of decimal digits.
//!
//! ## Quick start
//!
//! ```
//! use nestquad::{DistributionSpec, MomentSequence, Polynomial, Schedule};
//! use nestquad::document::build_rule_document;
//!
//! let spec: DistributionSpec = "beta:1/2,1/2".parse().unwrap();
//! let mu = MomentSequence::from_distribution(spec.clone());
//! let doc = build_rule_document(
//!     &Polynomial::one(),
//!     &Schedule::Explicit(vec![1, 2]),
//!     &mu,
//!     &spec.domain(),
//!     50,
//!     "example rule",
//! )
//! .unwrap();
//! assert_eq!(doc.document.levels.len(), 2);
//! assert_eq!(doc.document.levels[1].nodes.len(), 3);
//! ```
//!
//! The `nestquad` binary exposes the same pipeline as the `generate`,
//! `extend`, `verify` and `moments` subcommands.

pub mod document;
pub mod error;
pub mod extension;
pub mod formula;
pub mod interval;
pub mod linalg;
pub mod moments;
pub mod poly;
pub mod rational;
pub mod real;
pub mod resultant;
pub mod roots;
pub mod sturm;

pub use error::Error;
pub use extension::{
    auto_extend, certify, extend, generate_chain, modified_moments, orthogonality_residuals,
    Certificate, ChainStep, ExtensionOutcome, FailureReason, Schedule,
};
pub use formula::{build_formula, degree_of_exactness, solve_weights, QuadratureFormula};
pub use interval::{Endpoint, Interval};
pub use moments::{DistributionSpec, MomentKind, MomentSequence};
pub use poly::Polynomial;
pub use rational::Rational;
pub use real::Real;
pub use resultant::{discriminant, resultant};
pub use roots::real_roots;
pub use sturm::{count_real_roots, count_real_roots_with_multiplicity};
