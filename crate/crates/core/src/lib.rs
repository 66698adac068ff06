//! q-matroids and q-transversals over finite fields.

pub mod classical;
pub mod cli;
pub mod error;
pub mod field;
pub mod io;
pub mod lab;
pub mod lattice;
mod linalg;
pub mod qmatroid;
pub mod representation;
pub mod subspace;
pub mod transversal;

pub use error::{Error, Result};
pub use field::{ArithOp, FieldElement, FieldSpec};
pub use lattice::Lattice;
pub use qmatroid::{induce, rank_one, union, QMatroid, SubmodularFn};
pub use subspace::{Caps, GFVector, Subspace, SubspaceFamily, VectorSpaceSpec};
