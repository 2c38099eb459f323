//! Singular values by one-sided Jacobi: rotate column pairs until all are
//! mutually orthogonal, then read the singular values off as column norms.
//! Quadratically convergent and accurate down to tiny singular values, which
//! is what the rank counting of nearly nilpotent matrices needs.

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::operator::Operator;

const MAX_SWEEPS: usize = 64;

/// Singular values in descending order, optionally with the right singular
/// vectors (columns of V with A = U Σ V†).
pub fn jacobi_svd(a: &Operator, want_v: bool) -> (Vec<f64>, Option<Array2<C64>>) {
    let n = a.dim();
    let mut w = a.entries().clone();
    let mut v: Option<Array2<C64>> = if want_v { Some(Array2::eye(n)) } else { None };
    let tol = f64::EPSILON;

    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = C64::ZERO;
                for i in 0..n {
                    app += w[[i, p]].norm_sqr();
                    aqq += w[[i, q]].norm_sqr();
                    apq += w[[i, p]].conj() * w[[i, q]];
                }
                if apq.norm() <= tol * (app * aqq).sqrt() || apq.norm() == 0.0 {
                    continue;
                }
                rotated = true;
                // absorb the phase of the off-diagonal Gram entry into column q,
                // then do a real Jacobi rotation
                let phase = apq / apq.norm();
                let g = apq.norm();
                let tau = (aqq - app) / (2.0 * g);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for i in 0..n {
                    let wp = w[[i, p]];
                    let wq = w[[i, q]] * phase.conj();
                    w[[i, p]] = cs * wp - sn * wq;
                    w[[i, q]] = (sn * wp + cs * wq) * phase;
                }
                if let Some(vm) = v.as_mut() {
                    for i in 0..n {
                        let vp = vm[[i, p]];
                        let vq = vm[[i, q]] * phase.conj();
                        vm[[i, p]] = cs * vp - sn * vq;
                        vm[[i, q]] = (sn * vp + cs * vq) * phase;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<f64> = (0..n)
        .map(|j| w.column(j).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap());

    let sigma: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let v_sorted = v.map(|vm| {
        let mut out = Array2::zeros((n, n));
        for (new_j, &old_j) in order.iter().enumerate() {
            for i in 0..n {
                out[[i, new_j]] = vm[[i, old_j]];
            }
        }
        out
    });
    (sigma, v_sorted)
}

/// Singular values in descending order.
pub fn singular_values(a: &Operator) -> Vec<f64> {
    jacobi_svd(a, false).0
}

/// Largest singular value (the spectral norm).
pub fn spectral_norm(a: &Operator) -> f64 {
    singular_values(a).first().copied().unwrap_or(0.0)
}
