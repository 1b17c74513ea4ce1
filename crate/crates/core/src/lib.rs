//! Intersection homology of filtered simplicial complexes.

pub mod algebra;
pub mod checks;
pub mod corpus;
pub mod error;
pub mod localsys;
pub mod perverse;
pub mod simplicial;
pub mod spectral;

pub use algebra::{ChainComplex, ChainMap, HomologyResult, IntMatrix, Ring};
pub use error::{Error, Result};
