//! Complex Schur decomposition: Householder reduction to Hessenberg form
//! followed by an implicit single-shift QR iteration with Wilkinson shifts
//! and occasional exceptional shifts. Works on general complex matrices,
//! including the defective ones this crate cares about (eigenvalues near a
//! high-order exceptional point then carry the intrinsic
//! machine-epsilon^(1/k) error of a size-k Jordan block).

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::operator::Operator;

pub struct Schur {
    /// Unitary similarity: A = Q T Q†.
    pub q: Array2<C64>,
    /// Upper triangular factor (diagonal = eigenvalues, unordered).
    pub t: Array2<C64>,
    pub iterations: usize,
}

const MAX_SWEEPS_PER_DIM: usize = 40;

/// Householder reduction to upper Hessenberg form with accumulated Q.
fn hessenberg(a: &Operator) -> (Array2<C64>, Array2<C64>) {
    let n = a.dim();
    let mut h = a.entries().clone();
    let mut q: Array2<C64> = Array2::eye(n);
    if n < 3 {
        return (h, q);
    }
    let mut v = vec![C64::ZERO; n];
    for k in 0..n - 2 {
        // build the Householder vector for column k below the subdiagonal
        let mut norm_sq = 0.0;
        for i in k + 1..n {
            norm_sq += h[[i, k]].norm_sqr();
        }
        let norm = norm_sq.sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = h[[k + 1, k]];
        let sigma = if x0.norm() == 0.0 { C64::ONE } else { x0 / x0.norm() };
        let mut vnorm_sq = norm_sq;
        v[k + 1] = x0 + sigma * norm;
        vnorm_sq += v[k + 1].norm_sqr() - x0.norm_sqr();
        for i in k + 2..n {
            v[i] = h[[i, k]];
        }
        if vnorm_sq == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm_sq;

        // H <- P H  (rows k+1..n)
        for j in k..n {
            let mut w = C64::ZERO;
            for i in k + 1..n {
                w += v[i].conj() * h[[i, j]];
            }
            w *= tau;
            for i in k + 1..n {
                let sub = w * v[i];
                h[[i, j]] -= sub;
            }
        }
        // H <- H P  (columns k+1..n)
        for i in 0..n {
            let mut w = C64::ZERO;
            for j in k + 1..n {
                w += h[[i, j]] * v[j];
            }
            w *= tau;
            for j in k + 1..n {
                let sub = w * v[j].conj();
                h[[i, j]] -= sub;
            }
        }
        // Q <- Q P
        for i in 0..n {
            let mut w = C64::ZERO;
            for j in k + 1..n {
                w += q[[i, j]] * v[j];
            }
            w *= tau;
            for j in k + 1..n {
                let sub = w * v[j].conj();
                q[[i, j]] -= sub;
            }
        }
        // zero out the annihilated entries explicitly
        h[[k + 1, k]] = -sigma * norm;
        for i in k + 2..n {
            h[[i, k]] = C64::ZERO;
        }
    }
    (h, q)
}

/// Complex Givens rotation zeroing `b` against `a`:
/// returns (c, s, r) with c real, such that
/// [c s; -conj(s) c] [a; b] = [r; 0].
fn givens(a: C64, b: C64) -> (f64, C64, C64) {
    if b.norm() == 0.0 {
        return (1.0, C64::ZERO, a);
    }
    if a.norm() == 0.0 {
        return (0.0, b.conj() / b.norm(), C64::new(b.norm(), 0.0));
    }
    let denom = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let c = a.norm() / denom;
    let phase = a / a.norm();
    let s = phase * b.conj() / denom;
    let r = phase * denom;
    (c, s, r)
}

/// Eigenvalues of a complex 2x2, the one closer to `d` first.
fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let mean = (a + d) * 0.5;
    let disc = ((a - d) * (a - d) * 0.25 + b * c).sqrt();
    let l1 = mean + disc;
    let l2 = mean - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Schur decomposition of a general complex matrix.
pub fn schur_decompose(a: &Operator) -> Result<Schur> {
    let n = a.dim();
    if n == 0 {
        return Err(Error::argument("empty matrix"));
    }
    let (mut h, mut q) = hessenberg(a);
    if n == 1 {
        return Ok(Schur { q, t: h, iterations: 0 });
    }

    let eps = f64::EPSILON;
    let hnorm = h.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
    let max_iters = MAX_SWEEPS_PER_DIM * n;
    let mut total_iters = 0usize;
    let mut hi = n - 1;
    let mut stagnation = 0usize;

    // row rotation on rows (p, p+1), columns j0..n
    let apply_left = |h: &mut Array2<C64>, p: usize, cs: f64, sn: C64, j0: usize| {
        for j in j0..n {
            let hp = h[[p, j]];
            let hq = h[[p + 1, j]];
            h[[p, j]] = cs * hp + sn * hq;
            h[[p + 1, j]] = -sn.conj() * hp + cs * hq;
        }
    };
    // column rotation on columns (p, p+1), rows i0..=i1
    let apply_right = |m: &mut Array2<C64>, p: usize, cs: f64, sn: C64, i0: usize, i1: usize| {
        for i in i0..=i1 {
            let hp = m[[i, p]];
            let hq = m[[i, p + 1]];
            m[[i, p]] = cs * hp + sn.conj() * hq;
            m[[i, p + 1]] = -sn * hp + cs * hq;
        }
    };

    loop {
        // deflate fully converged trailing eigenvalues
        while hi > 0 {
            let tst = {
                let t = h[[hi - 1, hi - 1]].norm() + h[[hi, hi]].norm();
                if t == 0.0 {
                    hnorm
                } else {
                    t
                }
            };
            if h[[hi, hi - 1]].norm() <= eps * tst {
                h[[hi, hi - 1]] = C64::ZERO;
                hi -= 1;
                stagnation = 0;
            } else {
                break;
            }
        }
        if hi == 0 {
            break;
        }

        // active block [lo..=hi]
        let mut lo = 0;
        for l in (1..=hi).rev() {
            let tst = {
                let t = h[[l - 1, l - 1]].norm() + h[[l, l]].norm();
                if t == 0.0 {
                    hnorm
                } else {
                    t
                }
            };
            if h[[l, l - 1]].norm() <= eps * tst {
                h[[l, l - 1]] = C64::ZERO;
                lo = l;
                break;
            }
        }

        if total_iters >= max_iters {
            let partial: Vec<C64> = ((hi + 1)..n).map(|i| h[[i, i]]).collect();
            return Err(Error::EigenConvergence {
                iterations: total_iters,
                deflated: n - 1 - hi,
                dim: n,
                partial,
            });
        }
        total_iters += 1;
        stagnation += 1;

        // shift selection
        let shift = if stagnation % 20 == 0 {
            // exceptional: kick out of a symmetric stall
            h[[hi, hi]] + C64::new(1.5 * (h[[hi, hi - 1]].norm() + hnorm * eps.sqrt()), 0.0)
        } else if stagnation % 10 == 0 {
            h[[hi, hi]] + C64::new(0.75 * h[[hi, hi - 1]].norm(), 0.0)
        } else {
            wilkinson_shift(
                h[[hi - 1, hi - 1]],
                h[[hi - 1, hi]],
                h[[hi, hi - 1]],
                h[[hi, hi]],
            )
        };

        // implicit single-shift QR sweep on [lo..=hi]
        let mut x = h[[lo, lo]] - shift;
        let mut y = h[[lo + 1, lo]];
        for k in lo..hi {
            let (cs, sn, r) = givens(x, y);
            if k > lo {
                h[[k, k - 1]] = r;
                h[[k + 1, k - 1]] = C64::ZERO;
            }
            apply_left(&mut h, k, cs, sn, k);
            let last_row = std::cmp::min(k + 2, hi);
            apply_right(&mut h, k, cs, sn, 0, last_row);
            apply_right(&mut q, k, cs, sn, 0, n - 1);
            if k + 1 < hi {
                x = h[[k + 1, k]];
                y = h[[k + 2, k]];
            }
        }
    }

    Ok(Schur {
        q,
        t: h,
        iterations: total_iters,
    })
}

/// Right eigenvector of the triangular factor for the eigenvalue at
/// diagonal index `idx`, by back-substitution; small pivots are perturbed to
/// `smin` so defective clusters still yield a vector (near-parallel ones,
/// which is intrinsic there).
pub(crate) fn triangular_eigenvector(t: &Array2<C64>, idx: usize, smin: f64) -> Vec<C64> {
    let n = t.nrows();
    let lambda = t[[idx, idx]];
    let mut y = vec![C64::ZERO; n];
    y[idx] = C64::ONE;
    for j in (0..idx).rev() {
        let mut rhs = C64::ZERO;
        for k in j + 1..=idx {
            rhs -= t[[j, k]] * y[k];
        }
        let mut den = t[[j, j]] - lambda;
        if den.norm() < smin {
            den = C64::new(smin, 0.0);
        }
        y[j] = rhs / den;
    }
    y
}
