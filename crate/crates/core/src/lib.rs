//! Genuine multipartite entanglement decisions for graph-diagonal qubit states.
//!
//! Every verdict ships with a machine-checkable certificate: a diagonal
//! entanglement witness with a strictly negative expectation value when the
//! state is genuinely multipartite entangled, or an exact decomposition into
//! components that are certifiably separable across some bipartition when it
//! is not.
//!
//! Qubit indices are 0-based throughout the Rust API. The JSON formats and the
//! command-line interface use 1-based indices and the letters `A`, `B`, ...
//!
//! Modules:
//! - [`graph`], [`pauli`], [`gf2`]: graphs, stabilizers, local complementation
//!   and cut ranks.
//! - [`label`], [`state`]: graph-basis labels and graph-diagonal states.
//! - [`dense`]: brute-force dense matrices used as an independent oracle.
//! - [`transfer`], [`simplex`], [`ppt_mixture`]: the PPT-mixture linear program.
//! - [`witness`]: the diagonal witnesses and their validation.
//! - [`classifier`]: complete decision procedures with decompositions.

pub mod classifier;
pub mod cone;
pub mod dense;
pub mod error;
pub mod gf2;
pub mod graph;
pub mod json;
pub mod label;
pub mod oracle;
pub mod pauli;
pub mod ppt_mixture;
pub mod rational;
pub mod simplex;
pub mod state;
pub mod threshold;
pub mod transfer;
pub mod witness;

pub use classifier::{
    classify, verify_decomposition, CertificateKind, ComponentCertificate, Decomposition, Term,
    Verdict,
};
pub use error::{Error, Result};
pub use graph::{Bipartition, Graph};
pub use label::BasisLabel;
pub use pauli::PauliString;
pub use ppt_mixture::{is_ppt_mixture, LpCertificate};
pub use rational::Rational;
pub use state::GraphDiagonalState;
pub use transfer::TransferMatrix;
pub use witness::DiagonalWitness;
