//! Spectral toolkit for arrays of PT-symmetric qubits: Hamiltonian
//! construction, exceptional-point classification, characteristic-polynomial
//! response analysis and Floquet synthesis of effective multi-body
//! interactions.

pub mod ep;
pub mod floquet;
pub mod error;
pub mod operator;
pub mod params;
pub mod pauli;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use operator::{commutator, Operator};
pub use params::QubitSystemParams;
pub use pauli::{
    collective_interaction, dissipative_shift, noninteracting_hamiltonian,
    pauli_string_operator, CollectiveKind, PauliLabel, PauliString,
};
pub use spectral::{
    characteristic_polynomial, eigendecompose, epsilon_linear_term, jordan_structure_at_zero,
    matrix_exponential, numeric_rank, trace_distance, EpsLinearCharPoly, Polynomial,
    SpectrumResult,
};

/// Binomial coefficient with the usual convention C(n, k) = 0 for k > n.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
