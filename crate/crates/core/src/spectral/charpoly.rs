//! Characteristic polynomials and their first-order response to a
//! perturbation, both through the Faddeev–LeVerrier recursion.
//!
//! The recursion produces the monic coefficients of det(λI − A) and, for
//! free, the matrix coefficients of adj(λI − A). The derivative of the
//! determinant along a perturbation direction B is then a trace against the
//! adjugate, which is how the ε-linear part of det(λI − (H₀ + εB)) is
//! assembled without any root finding.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::operator::Operator;

/// Polynomial in λ with complex coefficients, index i = coefficient of λ^i.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    pub coeffs: Vec<C64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<C64>) -> Self {
        Polynomial { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Horner evaluation.
    pub fn eval(&self, lambda: C64) -> C64 {
        let mut acc = C64::ZERO;
        for c in self.coeffs.iter().rev() {
            acc = acc * lambda + c;
        }
        acc
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// Output of the Faddeev–LeVerrier recursion: the monic characteristic
/// polynomial of A plus the matrix sequence M_k with
/// adj(λI − A) = Σ_{k=1..d} M_k λ^{d−k}.
pub struct CharPolyFactorization {
    pub poly: Polynomial,
    adjugate_seq: Vec<Operator>,
}

impl CharPolyFactorization {
    /// Matrix coefficient of λ^power in adj(λI − A).
    pub fn adjugate_coeff(&self, power: usize) -> Option<&Operator> {
        let d = self.adjugate_seq.len();
        if power >= d {
            return None;
        }
        Some(&self.adjugate_seq[d - 1 - power])
    }
}

/// Runs the Faddeev–LeVerrier recursion on `a`.
///
/// M_1 = I, c_{d−k} = −tr(A·M_k)/k, M_{k+1} = A·M_k + c_{d−k}·I. The
/// recursion is division-light (one scalar division per step) and, for
/// integer-valued inputs such as H₀ at γ = 1, exact in f64 as long as the
/// intermediate entries stay below 2^53.
pub fn faddeev_leverrier(a: &Operator) -> CharPolyFactorization {
    let d = a.dim();
    let mut coeffs = vec![C64::ZERO; d + 1];
    coeffs[d] = C64::ONE;
    let mut seq = Vec::with_capacity(d);
    let mut m = Operator::identity(d);
    for k in 1..=d {
        let am = a.matmul(&m);
        let c = -am.trace() / C64::new(k as f64, 0.0);
        coeffs[d - k] = c;
        seq.push(m);
        m = &am + &Operator::identity(d).scale(c);
    }
    // m is now A*M_d + c_0 I = 0 (Cayley-Hamilton); dropped.
    CharPolyFactorization {
        poly: Polynomial::new(coeffs),
        adjugate_seq: seq,
    }
}

/// Monic coefficients of det(λI − a).
pub fn characteristic_polynomial(a: &Operator) -> Polynomial {
    faddeev_leverrier(a).poly
}

/// Characteristic polynomial of H₀ + εB expanded to first order in ε:
/// `base(λ) + ε·linear(λ)` reproduces det(λI − (H₀ + εB)) up to O(ε²).
#[derive(Debug, Clone)]
pub struct EpsLinearCharPoly {
    /// char poly of h0 alone (monic, degree = dim)
    pub base: Polynomial,
    /// ∂/∂ε coefficients (degree ≤ dim − 1)
    pub linear: Polynomial,
}

/// First-order ε expansion of det(λI − (h0 + ε·b)).
///
/// The ε-linear coefficient of λ^i is −tr(M_{d−i}·B) with M_k the adjugate
/// sequence of h0: d/dε det(X) = tr(adj(X)·dX/dε) applied to X = λI − h0 − εb.
/// The map B ↦ linear part is exactly linear, which is what makes the
/// response of a sum of interactions the sum of individual responses.
pub fn epsilon_linear_term(h0: &Operator, b: &Operator) -> Result<EpsLinearCharPoly> {
    if h0.dim() != b.dim() {
        return Err(Error::argument(format!(
            "epsilon_linear_term dimension mismatch: {} vs {}",
            h0.dim(),
            b.dim()
        )));
    }
    let d = h0.dim();
    let fact = faddeev_leverrier(h0);
    let mut linear = vec![C64::ZERO; d];
    for power in 0..d {
        let m = fact
            .adjugate_coeff(power)
            .expect("adjugate sequence covers powers 0..d-1");
        linear[power] = -(m.matmul(b).trace());
    }
    Ok(EpsLinearCharPoly {
        base: fact.poly,
        linear: Polynomial::new(linear),
    })
}
