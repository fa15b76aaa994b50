//! Moves on solid-torus link diagrams.
//!
//! The calculus contains the affine Reidemeister moves (kink, bigon and
//! triangle), the moves that exchange structure with the cutting curve
//! (crossing and tangle slides, strand bites), flypes and tangle slides,
//! the Dehn twist of the solid torus, and the rotation/reflection
//! symmetries of the annulus presentation.  Two diagrams present the same
//! link exactly when a chain of these moves connects them.
//!
//! [`apply`] performs one move at a named site and returns the canonical
//! form of the result; [`neighbors`] enumerates every applicable move
//! under size constraints; [`find_path`] searches for a connecting chain,
//! treating symmetry variants as a single node; [`dehn_twist`] composes
//! twists, cancelling a literal opposite twist when one is present.

mod catalog;
mod circuits;
mod delta;
mod search;
mod tangle;

pub use catalog::{Move, MoveError};
pub use search::{
    apply, apply_each, dehn_twist, find_path, has_simplifying_move, neighbors,
    neighbors_filtered, symmetry_variants, Constraints, MovePath,
};
