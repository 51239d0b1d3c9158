//! Exact sparse linear algebra over ℚ.

mod echelon;
mod rational;
mod sparse;

pub use echelon::{kernel, left_kernel, rank, solve, Echelon, Kernel, Rref};
pub use rational::Rational;
pub use sparse::{Accumulator, Matrix, SparseVec};
