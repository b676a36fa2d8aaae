//! Toolkit for All-versus-Nothing (AvN) contextuality arguments on n-qubit
//! stabiliser states.
//!
//! - [`pauli`]: exact Pauli group algebra, check vectors and GF(2) elimination.
//! - [`subgroup`]: stabiliser groups, XOR theories and AvN decisions with certificates.
//! - [`triples`]: AvN-triple predicates, counting and enumeration.
//! - [`graphstate`]: graph states, local complementation, local Clifford frames.
//! - [`semantics`]: exact small-n quantum semantics used as an oracle.

pub mod error;
pub mod graphstate;
pub mod pauli;
pub mod semantics;
pub mod subgroup;
pub mod triples;

pub use error::{Error, Result};
pub use pauli::{CheckVector, PauliElement, PauliLetter};
pub use subgroup::{AvnDecision, StabiliserGroup, XorEquation, XorTheory};
pub use triples::{AvnTriple, PatternCounts};
