//! Bit-packed GF(2) vectors, Pauli vectors and canonical subspaces.

mod bitvec;
mod pauli;
mod subspace;
pub(crate) mod words;

pub use bitvec::BitVec;
pub use pauli::{form_bits, symplectic_form, PauliVec};
pub use subspace::{linear_relations, swap_halves, Echelon, Elements, Subspace, ENUMERATION_CAP};
