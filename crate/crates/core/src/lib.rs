//! Non-backtracking and backtrack-downweighted walks on digraphs: exact walk
//! counts, deformed graph Laplacians, edge-space matrices, determinant
//! identities, Smith-form multiplicities and radius-of-convergence analysis.

pub mod cli;
pub mod convergence;
pub mod edge_space;
pub mod error;
pub mod graph;
pub mod ihara;
pub mod io;
pub mod laplacian;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod spectral;
pub mod walks;

pub use error::{Error, Result};
pub use graph::Graph;
pub use matrix::ExactMatrix;
pub use poly::{PolyMatrix, Polynomial, SmithForm};
pub use rational::Rational;
