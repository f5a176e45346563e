//! Thermodynamics, topology and biorthogonal entanglement of the Hermitian
//! SSH chain and its non-reciprocal deformation.

pub mod cli;
pub mod eig;
pub mod entanglement;
pub mod error;
pub mod lattice;
pub mod thermo;
pub mod topology;

pub use error::{Error, Result};
