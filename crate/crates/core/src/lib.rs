//! Exact computations in the level-2 q-deformed Fock space of quantum affine sl2.
//!
//! The crate is organised bottom-up:
//!
//! - [`qfield`]: arithmetic in ℚ(q), Laurent polynomials and truncated series
//! - [`crystal`]: the perfect crystal `B` and its tensor-product rule
//! - [`affinization`]: the basis `z^a v_j`, energy function and generator action
//! - [`wedge`]: finite wedge spaces and straightening to normally ordered wedges
//! - [`fock`]: semi-infinite wedges modulo `q^N` and the quantum group action
//! - [`boson`]: the boson operators `B_a` and their commutators on the vacuum
//! - [`characters`]: enumeration of Fock states and the irreducible-character oracle
//! - [`checks`]: the verification suite shared by the tests and the CLI

pub mod affinization;
pub mod boson;
pub mod characters;
pub mod checks;
pub mod crystal;
pub mod fock;
pub mod qfield;
pub mod wedge;
