//! System parameters shared by every Hamiltonian constructor.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters of an array of identical PT-symmetric qubits: qubit count `n`,
/// inter-level coupling `j` (the energy unit) and the dimensionless
/// dissipation rate `gamma`.
///
/// `gamma` may exceed 1: the eigenvalue scale [`QubitSystemParams::epsilon0`]
/// then becomes purely imaginary (symmetry-broken regime) and is reported as
/// a complex number rather than an error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QubitSystemParams {
    n: usize,
    j: f64,
    gamma: f64,
}

impl QubitSystemParams {
    pub fn new(n: usize, j: f64, gamma: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::argument("qubit count must be at least 1"));
        }
        if !(j > 0.0) {
            return Err(Error::argument(format!("coupling J must be positive, got {j}")));
        }
        if !(gamma >= 0.0) {
            return Err(Error::argument(format!(
                "dissipation rate gamma must be non-negative, got {gamma}"
            )));
        }
        Ok(QubitSystemParams { n, j, gamma })
    }

    /// `n` qubits with `J = 1` and the given dissipation rate.
    pub fn unit_coupling(n: usize, gamma: f64) -> Result<Self> {
        QubitSystemParams::new(n, 1.0, gamma)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn j(&self) -> f64 {
        self.j
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn with_gamma(&self, gamma: f64) -> Result<Self> {
        QubitSystemParams::new(self.n, self.j, gamma)
    }

    /// Hilbert-space dimension 2^n.
    pub fn dim(&self) -> usize {
        1usize << self.n
    }

    /// Single-qubit eigenvalue scale ε₀ = sqrt(1 - γ²): real below γ = 1,
    /// purely imaginary above.
    pub fn epsilon0(&self) -> C64 {
        C64::new(1.0 - self.gamma * self.gamma, 0.0).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_ranges() {
        assert!(QubitSystemParams::new(0, 1.0, 0.5).is_err());
        assert!(QubitSystemParams::new(2, 0.0, 0.5).is_err());
        assert!(QubitSystemParams::new(2, -1.0, 0.5).is_err());
        assert!(QubitSystemParams::new(2, 1.0, -0.1).is_err());
        assert!(QubitSystemParams::new(2, 1.0, 1.5).is_ok());
    }

    #[test]
    fn epsilon0_real_below_one_imaginary_above() {
        let p = QubitSystemParams::unit_coupling(1, 0.6).unwrap();
        let e0 = p.epsilon0();
        assert!((e0.re - 0.8).abs() < 1e-15 && e0.im == 0.0);

        let p = QubitSystemParams::unit_coupling(1, 1.25).unwrap();
        let e0 = p.epsilon0();
        assert!(e0.re.abs() < 1e-15 && (e0.im - 0.75).abs() < 1e-15);
    }
}
