//! Exact obstruction calculus at desk scale.
//!
//! Free differential graded Lie algebras over Q, bounded chain complexes of
//! free modules over Z, Q or F_p, restricted augmented simplicial objects,
//! Toda brackets with indeterminacy, and folding polytopes.

pub mod chaincx;
pub mod cli;
pub mod conventions;
pub mod error;
pub mod examples;
pub mod linalg;
pub mod lie;
pub mod matrix;
pub mod polytope;
pub mod ring;
pub mod simplicial;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use ring::{Ring, Scalar};
