//! Exhaustive generation of basic diagrams and local minimization.
//!
//! A basic diagram of a link in the solid torus draws `k` passings on the
//! cutting curve and joins the `2k` boundary points of the cut-open
//! annulus by chords in minimal position.  Every non-split link with at
//! most `n` crossings is carried by such a diagram whose passing count is
//! bounded in terms of `n`, so enumerating basic diagrams up to a crossing
//! cap enumerates every link of the census.
//!
//! The seed set of the census is produced in stages:
//!
//! 1. enumerate perfect matchings of the boundary points ([`Pairing`]),
//!    pruning branches that already force more crossings than the cap;
//! 2. discard split diagrams, whose underlying annulus graph is
//!    disconnected;
//! 3. expand each matching into candidate diagrams ([`BasicDiagramSpec`])
//!    by choosing an order of crossings along every chord and a handedness
//!    for every crossing, keeping the candidates that embed;
//! 4. convert each candidate to a periodic Gauss paragraph and retract
//!    passings with Θ moves until the passing count is least
//!    ([`theta_reduce`]);
//! 5. keep only the locally minimal, symmetry-least canonical forms
//!    ([`generate_minimal`]).

mod candidates;
mod census;
mod pairing;
mod reduce;

pub use candidates::{expand, to_pgp, BasicDiagramSpec};
pub use census::{generate_minimal, generate_minimal_with_stats, GenerateStats};
pub use pairing::{enumerate_pairings, required_crossings, Pairing};
pub use reduce::theta_reduce;

use thiserror::Error;

/// Errors from building pairings or converting candidate diagrams.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    /// The chord list is not a perfect matching of the boundary points.
    #[error("not a perfect matching of the boundary points: {0}")]
    BadPairing(String),
    /// The candidate diagram does not embed in the annulus.
    #[error("candidate diagram does not embed")]
    Realizability(#[from] stgen_pgp::ValidationReport),
}
