//! Complex LU factorization with partial pivoting: linear solves for the
//! Padé exponential and determinants for test oracles.

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::operator::Operator;

pub struct LuFactors {
    lu: Array2<C64>,
    pivots: Vec<usize>,
    swaps: usize,
    singular: bool,
}

pub fn factor(a: &Operator) -> LuFactors {
    let n = a.dim();
    let mut lu = a.entries().clone();
    let mut pivots = Vec::with_capacity(n);
    let mut swaps = 0;
    let mut singular = false;

    for k in 0..n {
        let mut pivot = k;
        let mut best = lu[[k, k]].norm();
        for i in (k + 1)..n {
            let mag = lu[[i, k]].norm();
            if mag > best {
                best = mag;
                pivot = i;
            }
        }
        pivots.push(pivot);
        if pivot != k {
            swaps += 1;
            for j in 0..n {
                let tmp = lu[[k, j]];
                lu[[k, j]] = lu[[pivot, j]];
                lu[[pivot, j]] = tmp;
            }
        }
        let d = lu[[k, k]];
        if d.norm() == 0.0 {
            singular = true;
            continue;
        }
        for i in (k + 1)..n {
            let factor = lu[[i, k]] / d;
            lu[[i, k]] = factor;
            for j in (k + 1)..n {
                let sub = factor * lu[[k, j]];
                lu[[i, j]] -= sub;
            }
        }
    }

    LuFactors {
        lu,
        pivots,
        swaps,
        singular,
    }
}

impl LuFactors {
    pub fn determinant(&self) -> C64 {
        if self.singular {
            return C64::ZERO;
        }
        let sign = if self.swaps % 2 == 0 { 1.0 } else { -1.0 };
        self.lu.diag().iter().product::<C64>() * C64::new(sign, 0.0)
    }

    /// Solves A X = B column by column.
    pub fn solve_matrix(&self, b: &Operator) -> Result<Operator> {
        if self.singular {
            return Err(Error::numeric("singular matrix in LU solve"));
        }
        let n = b.dim();
        let mut x = b.entries().clone();
        // apply row swaps
        for (k, &p) in self.pivots.iter().enumerate() {
            if p != k {
                for j in 0..n {
                    let tmp = x[[k, j]];
                    x[[k, j]] = x[[p, j]];
                    x[[p, j]] = tmp;
                }
            }
        }
        // forward substitution (unit lower triangle)
        for k in 0..n {
            for i in (k + 1)..n {
                let f = self.lu[[i, k]];
                for j in 0..n {
                    let sub = f * x[[k, j]];
                    x[[i, j]] -= sub;
                }
            }
        }
        // back substitution
        for k in (0..n).rev() {
            let d = self.lu[[k, k]];
            for j in 0..n {
                x[[k, j]] /= d;
            }
            for i in 0..k {
                let f = self.lu[[i, k]];
                for j in 0..n {
                    let sub = f * x[[k, j]];
                    x[[i, j]] -= sub;
                }
            }
        }
        Operator::new(x)
    }
}

/// det(a) through partial-pivot LU.
pub fn determinant(a: &Operator) -> C64 {
    factor(a).determinant()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn determinant_of_known_matrices() {
        assert_eq!(determinant(&Operator::identity(3)), C64::ONE);
        let a = Operator::from_rows(&[
            vec![c(1., 0.), c(2., 0.)],
            vec![c(3., 0.), c(4., 0.)],
        ])
        .unwrap();
        assert!((determinant(&a) - c(-2., 0.)).norm() < 1e-14);
        let b = Operator::from_rows(&[
            vec![c(0., 1.), c(1., 0.)],
            vec![c(1., 0.), c(0., -1.)],
        ])
        .unwrap();
        // det = (i)(-i) - 1 = 0
        assert!(determinant(&b).norm() < 1e-14);
    }

    #[test]
    fn solves_against_identity() {
        let a = Operator::from_rows(&[
            vec![c(2., 1.), c(0., -1.), c(0.5, 0.)],
            vec![c(1., 0.), c(3., 0.), c(0., 2.)],
            vec![c(0., 0.), c(1., 1.), c(4., -1.)],
        ])
        .unwrap();
        let inv = factor(&a).solve_matrix(&Operator::identity(3)).unwrap();
        let prod = a.matmul(&inv);
        assert!(prod.max_abs_diff(&Operator::identity(3)) < 1e-12);
    }
}
