//! Exact linear algebra over the integers, the rationals and prime fields.

pub mod chain;
pub mod exact;
pub mod homology;
pub mod lattice;
pub mod matrix;
pub mod morse;
pub mod reduced;
pub mod ring;
pub mod serde_int;
pub mod snf;

pub use chain::{ChainComplex, ChainMap, HomologyGroup, HomologyResult};
pub use homology::{homology, oracle_homology};
pub use reduced::{induced_homology_map, HomologyMap, ReducedHomology};
pub use matrix::{IntMatrix, Matrix, MatrixReport, SparseVec};
pub use ring::{Pid, Ring};
pub use snf::{smith_normal_form, SmithForm};
