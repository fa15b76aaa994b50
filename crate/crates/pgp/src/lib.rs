//! Periodic Gauss paragraphs: the combinatorial code of link diagrams in
//! the solid torus.
//!
//! A diagram lives in an annulus cut along an arc γ running from the inner
//! to the outer boundary circle; drawing the cut annulus as a square, the
//! bottom and top edges are two copies of γ glued position-by-position.
//! The code records, per crossing, a handedness ω, and per strand segment
//! the ordered crossing passages (sign = over/under) together with the
//! boundary passings where the segment meets γ (+i = bottom copy, −i =
//! top copy of passing i).
//!
//! This crate owns the data model, its realizability validation (an exact
//! Euler-characteristic check of the torus closure), the total order and
//! canonical relabeling used for deduplication, and the structural queries
//! the rest of the pipeline builds on: component tracing, windings,
//! self-writhe, crossing signs and sublinks.

mod code;
mod components;
mod order;
mod validate;

pub use code::{Pgp, PgpParseError, Segment};
pub use components::{Component, ComponentError, Components};
pub use validate::{ValidationReport, Violation};
