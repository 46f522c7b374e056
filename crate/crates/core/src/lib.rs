//! Dimer algebras on the torus: validation, path rewriting modulo the
//! superpotential relations, perfect matchings, the monomial impression
//! `η̄`, contractions of arrow sets, the monomial rings `S` and `R`, locus
//! predicates for one-dimensional-per-vertex representations, and bounded
//! detection of free subalgebras.
//!
//! Paths are stored in traversal order: `[a, b]` means `a` first, then `b`.
//! Exact rational arithmetic is used wherever a vanishing test decides an
//! answer; the generic [`Scalar`] parameter exists for callers that want
//! floats for layout or exploration.

pub mod contraction;
pub mod dimer;
pub mod fixtures;
pub mod impression;
pub mod loci;
pub mod matchings;
pub mod pi_check;
pub mod rewrite;
pub mod rings;
pub mod scalar;

use thiserror::Error;

pub use contraction::{Contraction, ContractionError, SComparison};
pub use dimer::{DimerError, DimerQuiver, Homology, Path, RawDimer, Sign, ValidationError, ValidationReport};
pub use impression::{ImpressionMap, Monomial, PointB, Surjectivity};
pub use loci::{AzumayaVerdict, Representation1, Tri};
pub use matchings::{MatchingCatalog, PerfectMatching};
pub use rewrite::{Equivalence, Rewriter};
pub use rings::{CycleFamily, MonomialAlgebra, UVerdict};
pub use scalar::Scalar;

/// Exact rationals, the default scalar field.
pub type Rational = num_rational::BigRational;
/// A point of `Max B` with exact rational coordinates.
pub type RationalPoint = PointB<Rational>;
/// A representation of dimension `1^{Q_0}` with exact rational arrow values.
pub type RationalRep = Representation1<Rational>;
/// Floating-point point, for exploration only.
pub type PointF64 = PointB<f64>;
/// Floating-point representation, for exploration only.
pub type RepF64 = Representation1<f64>;

/// Top-level error for loading inputs.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Validation(#[from] ValidationReport),
    #[error(transparent)]
    Dimer(#[from] DimerError),
    #[error(transparent)]
    Point(#[from] impression::PointError),
    #[error(transparent)]
    Contraction(#[from] ContractionError),
}
