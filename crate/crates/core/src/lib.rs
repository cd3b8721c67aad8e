//! Exact-diagonalization toolkit for topologically frustrated quantum spin
//! chains.
//!
//! The crate builds XYZ ring Hamiltonians with configurable boundary
//! conditions, solves for their lowest eigenpairs with momentum/parity
//! resolution, constructs the analytic reference states of the frustrated
//! phase (kinks, kink superpositions, generalized W states, GHZ), and
//! computes the quantum-resource diagnostics that distinguish frustrated
//! from unfrustrated rings: bipartite and disconnected entanglement
//! entropies, and stabilizer Rényi entropies from the full Pauli spectrum.

pub mod entanglement;
pub mod error;
pub mod io;
pub mod linalg;
pub mod magic;
pub mod model;
pub mod solver;
pub mod spin;
pub mod states;

pub use error::{Error, Result};
pub use model::{Boundary, Hamiltonian, ModelSpec};
pub use spin::{PauliString, StateVector, SymmetrySector};
