//! Chain complexes of free modules, graded maps, homotopies and Toda brackets.

pub mod complex;
pub mod group;
pub mod hom;
pub mod map;
pub mod replacement;
pub mod sub;
pub mod toda;

pub use complex::{CellKind, FreeChainComplex, ValidationReport};
pub use group::{BracketCoset, Coset, HomologyGroup};
pub use hom::{homotopy_classes, solve_nullhomotopy, HomComplex};
pub use map::{ChainMap, GradedHomotopy, GradedMap};
pub use replacement::{standard_replacement, StandardReplacement};
pub use toda::{long_toda, toda_coset, triple_toda, LongTodaResult, StageReport, TodaResult};
