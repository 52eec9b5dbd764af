//! Symplectic GF(2) algebra, block-Clifford sampling and single-copy
//! stabilizer-group learning.

pub mod cds;
pub mod clifford;
pub mod codes;
pub mod counting;
pub mod error;
pub mod f2;
pub mod lagrangian;
pub mod learner;
pub mod rng;

pub use error::{Error, Result};
pub use f2::{symplectic_form, BitVec, Echelon, PauliVec, Subspace};
pub use rng::Rng;
