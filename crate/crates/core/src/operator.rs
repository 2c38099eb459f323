//! Dense complex square matrices and the arithmetic primitives everything
//! else is built from: products, Kronecker products, commutators, adjoints
//! and a handful of norms.
//!
//! Target scale is small (system dimension 2^n with n ≤ ~6), so everything
//! is dense and owned; no sparsity, no views escaping the API.

use ndarray::{linalg::kron, Array1, Array2};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Dense square complex matrix.
///
/// Values are immutable after construction and cheap to clone at the target
/// scale. All constructive operations leave the entries finite; [`Operator::new`]
/// rejects NaN/Inf inputs so the invariant holds inductively.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    data: Array2<C64>,
}

impl Operator {
    /// Wraps a square matrix, rejecting non-square shapes and non-finite entries.
    pub fn new(data: Array2<C64>) -> Result<Self> {
        if data.nrows() != data.ncols() {
            return Err(Error::argument(format!(
                "operator must be square, got {}x{}",
                data.nrows(),
                data.ncols()
            )));
        }
        if !data.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::numeric("operator entries must be finite"));
        }
        Ok(Operator { data })
    }

    /// Builds from a row-major nested slice; panics on ragged input. Test helper
    /// friendly constructor for small literals.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Array2::zeros((n, n));
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::argument("ragged operator literal"));
            }
            for (j, z) in row.iter().enumerate() {
                data[[i, j]] = *z;
            }
        }
        Operator::new(data)
    }

    pub fn identity(dim: usize) -> Self {
        Operator {
            data: Array2::eye(dim),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Operator {
            data: Array2::zeros((dim, dim)),
        }
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn entries(&self) -> &Array2<C64> {
        &self.data
    }

    pub fn into_array(self) -> Array2<C64> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[[i, j]]
    }

    /// Matrix product; panics on dimension mismatch (programming error at the
    /// call sites that use it; the checked entry point is [`commutator`]).
    pub fn matmul(&self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim(), rhs.dim(), "operator product dimension mismatch");
        Operator {
            data: self.data.dot(&rhs.data),
        }
    }

    /// Kronecker product, `self` as the left (most significant) factor.
    pub fn kron(&self, rhs: &Operator) -> Operator {
        Operator {
            data: kron(&self.data, &rhs.data),
        }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Operator {
        Operator {
            data: self.data.t().mapv(|z| z.conj()),
        }
    }

    pub fn scale(&self, c: C64) -> Operator {
        Operator {
            data: self.data.mapv(|z| z * c),
        }
    }

    pub fn trace(&self) -> C64 {
        self.data.diag().sum()
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &Array1<C64>) -> Array1<C64> {
        self.data.dot(v)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Maximum absolute column sum (the induced 1-norm).
    pub fn one_norm(&self) -> f64 {
        (0..self.dim())
            .map(|j| self.data.column(j).iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest absolute entry of `self - rhs`; the workhorse comparison in tests
    /// and consistency checks.
    pub fn max_abs_diff(&self, rhs: &Operator) -> f64 {
        assert_eq!(self.dim(), rhs.dim(), "operator comparison dimension mismatch");
        self.data
            .iter()
            .zip(rhs.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.dagger()) <= tol
    }
}

impl std::ops::Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim(), rhs.dim(), "operator sum dimension mismatch");
        Operator {
            data: &self.data + &rhs.data,
        }
    }
}

impl std::ops::Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim(), rhs.dim(), "operator difference dimension mismatch");
        Operator {
            data: &self.data - &rhs.data,
        }
    }
}

impl std::ops::Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        self.matmul(rhs)
    }
}

/// Commutator `ab - ba`.
pub fn commutator(a: &Operator, b: &Operator) -> Result<Operator> {
    if a.dim() != b.dim() {
        return Err(Error::argument(format!(
            "commutator dimension mismatch: {} vs {}",
            a.dim(),
            b.dim()
        )));
    }
    Ok(&a.matmul(b) - &b.matmul(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{pauli_string_operator, PauliString};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn rejects_non_square_and_non_finite() {
        assert!(Operator::new(Array2::zeros((2, 3))).is_err());
        let mut bad = Array2::<C64>::zeros((2, 2));
        bad[[0, 0]] = c(f64::NAN, 0.0);
        assert!(Operator::new(bad).is_err());
    }

    #[test]
    fn commutator_of_pauli_x_y_is_2i_z() {
        let sx = pauli_string_operator(&PauliString::from_word("x").unwrap(), 1).unwrap();
        let sy = pauli_string_operator(&PauliString::from_word("y").unwrap(), 1).unwrap();
        let sz = pauli_string_operator(&PauliString::from_word("z").unwrap(), 1).unwrap();
        let comm = commutator(&sx, &sy).unwrap();
        assert!(comm.max_abs_diff(&sz.scale(c(0.0, 2.0))) < 1e-15);
    }

    #[test]
    fn commutator_is_antisymmetric_in_its_argument() {
        let a = Operator::from_rows(&[
            vec![c(1.0, 2.0), c(0.5, -1.0)],
            vec![c(0.0, 3.0), c(-2.0, 0.0)],
        ])
        .unwrap();
        let z = commutator(&a, &a).unwrap();
        assert_eq!(z.max_abs(), 0.0);
    }

    #[test]
    fn commutator_rejects_dimension_mismatch() {
        let a = Operator::identity(2);
        let b = Operator::identity(4);
        assert!(matches!(commutator(&a, &b), Err(Error::Argument(_))));
    }

    #[test]
    fn kron_puts_left_factor_most_significant() {
        let sx = pauli_string_operator(&PauliString::from_word("x").unwrap(), 1).unwrap();
        let id = Operator::identity(2);
        let expected = pauli_string_operator(&PauliString::from_word("x0").unwrap(), 2).unwrap();
        assert!(sx.kron(&id).max_abs_diff(&expected) < 1e-15);
    }
}
