//! Construction and verification toolkit for the self-dual quantum
//! Reed-Muller code family on even `m`: `[[2^m, C(m, m/2), 2^(m/2)]]` codes
//! whose stabilizers come from RM(m/2 - 1, m).
//!
//! The crate builds the codes, derives transversal and fold-transversal gate
//! layers from classical code automorphisms, extracts exact signed logical
//! tableaux, synthesizes addressable logical Clifford gates (and arbitrary
//! logical Clifford tableaux) as layer sequences, and cross-checks everything
//! against closed forms and a dense state-vector oracle at small sizes.

pub mod bound;
pub mod circuit;
pub mod error;
pub mod f2;
pub mod oracle;
pub mod pauli;
pub mod qrm;
pub mod rmcode;
pub mod synth;
pub mod tableau;
pub mod verify;

pub use circuit::{fold_phase, fold_swap, transversal_h, Circuit, GateLayer};
pub use error::{Error, Result};
pub use f2::{basis_vector, vector_from_set, BitVector, IndexSet, Permutation};
pub use pauli::{Gate, PhasedPauli};
pub use qrm::{canonical_indices, code_params, LogicalSpec, QrmCode, ReductionChoice};
pub use rmcode::{perm_p, perm_q, PairSet, RMCode};
pub use tableau::{logical_action, preserves_stabilizers, LogicalTableau};
