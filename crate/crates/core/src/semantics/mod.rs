//! Exact small-n quantum semantics: state vectors over the Gaussian dyadic
//! rationals, empirical models, strong contextuality and the Galois maps
//! between Pauli subsets and subspaces.

mod galois;
mod model;
mod scalar;
mod state;

pub use galois::{isotropy_group, stabilised_subspace, Subspace, MAX_GALOIS_QUBITS};
pub use model::{
    cluster4, empirical_model, ghz3, is_strongly_contextual, named_fixture, prbox,
    xor_theory_of_model, Context, EmpiricalModel, MAX_ASSIGNMENT_BITS, MAX_MODEL_QUBITS,
};
pub use scalar::ExactScalar;
pub use state::{projector_trace, stabiliser_state, ExactState};

use crate::pauli::{PauliElement, PauliLetter};

pub const MAX_STATE_QUBITS: usize = 10;

/// `P|b⟩ = i^k |target⟩` for basis index `b` (qubit 0 most significant).
pub(crate) fn basis_action(p: &PauliElement, b: usize) -> (u8, usize) {
    let n = p.num_qubits();
    let mut k = p.phase_exp() as u32;
    let mut target = b;
    for (q, l) in p.letters().enumerate() {
        let bit = 1usize << (n - 1 - q);
        let set = b & bit != 0;
        let (x, z) = l.xz();
        if x {
            target ^= bit;
        }
        if l == PauliLetter::Y {
            k += 1;
        }
        if z && set {
            k += 2;
        }
    }
    ((k % 4) as u8, target)
}
