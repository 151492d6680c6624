//! Restricted augmented simplicial objects over free modules.

pub mod cellular;
pub mod comparison;
pub mod dgl;
pub mod object;
pub mod realization;
pub mod sequential;

pub use cellular::{surjections, CellBlock, CellularObject, LatchingDecomposition};
pub use comparison::{check_algebraic_comparison, ComparisonReport};
pub use dgl::{copy_name, DglBlock, DglCell, SimplicialDGL, SimplicialDglReport};
pub use object::{
    cone_restricted, e_functor, AcyclicityReport, IdentityReport, MooreData, SimplicialMap, SimplicialObject,
};
pub use realization::{extend_by_cone, realize_attaching, Descent, DescentStage};
pub use sequential::{build_sequential_realization, cw_normalize, RealizationChecks, SequentialRealization};
