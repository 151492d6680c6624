//! Free graded Lie algebras and DGLs over Q in tensor normal form.

pub mod dgl;
pub mod expr;
pub mod morphism;
pub mod tensor;

pub use dgl::{DglReport, FreeDGL, Generator, GradedPiece, LieElement, MasseyProduct};
pub use expr::{Factor, LieExpr};
pub use morphism::DGLMorphism;
pub use tensor::Tensor;
