//! Builders and runners for the two explicit computations.

pub mod moore;
pub mod rational;
pub mod resolution;

pub use moore::{filtration_example, moore_space_bracket, FiltrationReport, MooreBracketReport};
pub use rational::{build_rational_pair, RationalExamplePair};
pub use resolution::{
    attempt_augmentation, build_resolution_fixture, verify_resolution_fixture, AugmentationReport, ResolutionFixture,
    ResolutionReport,
};
