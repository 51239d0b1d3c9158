//! Exact rational engine for props in chain complexes: endomorphism props,
//! props of diagrams, the path object `Z⊗X` and the props built over it,
//! acyclic-fibration checks and lifting.

pub mod biobject;
pub mod error;
pub mod fixtures;
pub mod gradedlinear;
pub mod lifting;
pub mod linalg;
pub mod pathobject;
pub mod pdiagramprops;
pub mod propcore;

pub use error::{Error, Result};
pub use gradedlinear::{ChainComplex, ChainMap, GradedDims};
pub use linalg::{Matrix, Rational, SparseVec};
