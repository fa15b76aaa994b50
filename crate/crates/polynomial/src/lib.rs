//! Exact sparse Laurent polynomials in two variables.
//!
//! This crate is the numeric backbone of the link-census pipeline: it holds
//! bracket polynomials ⟨D⟩(A,x), Kauffman polynomials ∇(A,x) and dichromatic
//! Alexander polynomials Δ(t,x) as exact integer Laurent polynomials, and
//! implements the orders and statistics the classification needs — the
//! graded-lexicographic order, unit equality (equality up to ±t^a·x^b),
//! normal forms, spreads and the x-capped spread, exact division, and the
//! x ↦ x·t^m twist substitution.

mod error;
mod normal;
mod poly;

pub use error::PolyError;
pub use poly::{ExpPair, LaurentPoly2, Var, VarTag};
