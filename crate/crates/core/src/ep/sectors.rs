//! Total-spin sector structure of the qubit array: iterative angular-momentum
//! coupling builds an orthonormal basis organized by total spin S, one
//! "path" per irreducible copy. H₀ is block diagonal in this basis with one
//! identical tridiagonal block per copy, which is both how the EP fold
//! structure is computed and a built-in cross-check (copies must match).

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::params::QubitSystemParams;
use crate::pauli::noninteracting_hamiltonian;
use crate::spectral::{jacobi_svd, normalize_phase};

/// One irreducible copy of total spin S (stored as 2S) with its embedding
/// into the product basis: `basis` is 2^n x (2S+1), column i = |S, m⟩ with
/// m = S - i (descending).
#[derive(Debug, Clone)]
pub struct CoupledPath {
    pub twice_spin: usize,
    pub basis: Array2<C64>,
}

/// Couple one more spin-1/2 onto an existing path. The product-basis index
/// convention doubles: old index i ⊗ |↑⟩ -> 2i, old index i ⊗ |↓⟩ -> 2i+1
/// (the new qubit is the least significant Kronecker factor).
fn couple_up_down(path: &CoupledPath) -> Vec<CoupledPath> {
    let ts = path.twice_spin;
    let old_rows = path.basis.nrows();
    let old_cols = ts + 1;
    let new_rows = old_rows * 2;
    let mut out = Vec::with_capacity(2);

    // parent column for twice-m value tm, if within range
    let parent_col = |tm: i64| -> Option<usize> {
        let tsi = ts as i64;
        if tm.abs() <= tsi && (tsi - tm) % 2 == 0 {
            Some(((tsi - tm) / 2) as usize)
        } else {
            None
        }
    };

    for &raise in &[true, false] {
        if !raise && ts == 0 {
            continue;
        }
        let ts_new = if raise { ts + 1 } else { ts - 1 };
        let cols_new = ts_new + 1;
        let mut basis = Array2::<C64>::zeros((new_rows, cols_new));
        for col in 0..cols_new {
            let tm_new = ts_new as i64 - 2 * col as i64;
            // Clebsch-Gordan weights for coupling j2 = 1/2 (Condon-Shortley)
            let c_plus = (((ts as i64 + tm_new + 1) as f64) / (2.0 * (ts as f64 + 1.0))).sqrt();
            let c_minus = (((ts as i64 - tm_new + 1) as f64) / (2.0 * (ts as f64 + 1.0))).sqrt();
            let (w_up, w_dn) = if raise {
                (c_plus, c_minus)
            } else {
                (-c_minus, c_plus)
            };
            if let Some(j) = parent_col(tm_new - 1) {
                debug_assert!(j < old_cols);
                for i in 0..old_rows {
                    basis[[2 * i, col]] += C64::new(w_up, 0.0) * path.basis[[i, j]];
                }
            }
            if let Some(j) = parent_col(tm_new + 1) {
                for i in 0..old_rows {
                    basis[[2 * i + 1, col]] += C64::new(w_dn, 0.0) * path.basis[[i, j]];
                }
            }
        }
        out.push(CoupledPath {
            twice_spin: ts_new,
            basis,
        });
    }
    out
}

/// All coupling paths for `n` qubits, sorted by descending total spin
/// (stable within equal spin, preserving generation order).
pub fn coupled_paths(n: usize) -> Result<Vec<CoupledPath>> {
    if n == 0 {
        return Err(Error::argument("need at least one qubit"));
    }
    let mut paths = vec![CoupledPath {
        twice_spin: 1,
        basis: Array2::eye(2),
    }];
    for _ in 1..n {
        paths = paths.iter().flat_map(couple_up_down).collect();
    }
    paths.sort_by(|a, b| b.twice_spin.cmp(&a.twice_spin));
    Ok(paths)
}

/// One total-spin sector: its spin, the number of identical copies
/// (the EP fold), the total dimension D = (2S+1)·fold, and the shared
/// (2S+1)x(2S+1) tridiagonal block of H₀ restricted to one copy.
#[derive(Debug, Clone)]
pub struct SpinSector {
    pub twice_spin: usize,
    pub fold: usize,
    pub sector_dim: usize,
    pub block: Operator,
}

impl SpinSector {
    /// Block dimension 2S+1, which is also the order of the EP the sector
    /// contributes at γ = 1.
    pub fn block_dim(&self) -> usize {
        self.twice_spin + 1
    }
}

const COPY_MATCH_TOL: f64 = 1e-10;

/// Transforms H₀ into the coupled basis and extracts one block per sector,
/// checking that all copies of the same spin produce the same block.
pub fn spin_sector_blocks(params: &QubitSystemParams) -> Result<Vec<SpinSector>> {
    if params.n() > 6 {
        return Err(Error::argument(
            "spin sector construction is limited to n <= 6",
        ));
    }
    let h0 = noninteracting_hamiltonian(params);
    let paths = coupled_paths(params.n())?;

    let mut sectors: Vec<SpinSector> = Vec::new();
    for path in &paths {
        let block = restrict(&h0, &path.basis)?;
        match sectors.iter_mut().find(|s| s.twice_spin == path.twice_spin) {
            Some(sector) => {
                let dev = sector.block.max_abs_diff(&block);
                if dev > COPY_MATCH_TOL {
                    return Err(Error::consistency(format!(
                        "spin sector 2S={} copies disagree by {dev:e}",
                        path.twice_spin
                    )));
                }
                sector.fold += 1;
                sector.sector_dim += sector.block_dim();
            }
            None => {
                let dim = path.twice_spin + 1;
                sectors.push(SpinSector {
                    twice_spin: path.twice_spin,
                    fold: 1,
                    sector_dim: dim,
                    block,
                });
            }
        }
    }
    Ok(sectors)
}

/// V† H V for an embedding with orthonormal columns.
fn restrict(h: &Operator, v: &Array2<C64>) -> Result<Operator> {
    let cols = v.ncols();
    let hv = h.entries().dot(v);
    let mut block = Array2::<C64>::zeros((cols, cols));
    for r in 0..cols {
        for c in 0..cols {
            let mut acc = C64::ZERO;
            for i in 0..v.nrows() {
                acc += v[[i, r]].conj() * hv[[i, c]];
            }
            block[[r, c]] = acc;
        }
    }
    Operator::new(block)
}

const NONCOALESCING_RESIDUAL_TOL: f64 = 1e-8;

/// The C(n, ⌊n/2⌋) linearly independent eigenstates of H₀ at the γ = 1
/// exceptional point, one per sector copy: the kernel vector of each copy's
/// nilpotent block, mapped back through the copy's embedding. This evaluates
/// the γ → 1 limit of the within-degenerate-subspace eigenvectors exactly
/// instead of substituting γ = 1 into the (coalescing) product states.
pub fn noncoalescing_states(n: usize) -> Result<Vec<Array1<C64>>> {
    let params = QubitSystemParams::unit_coupling(n, 1.0)?;
    let h0 = noninteracting_hamiltonian(&params);
    let paths = coupled_paths(n)?;

    let mut states = Vec::with_capacity(paths.len());
    for path in &paths {
        let block = restrict(&h0, &path.basis)?;
        let (_, v) = jacobi_svd(&block, true);
        let v = v.expect("requested right singular vectors");
        let kernel_col = block.dim() - 1; // smallest singular value is last
        let mut state = Array1::<C64>::zeros(h0.dim());
        for i in 0..h0.dim() {
            let mut acc = C64::ZERO;
            for j in 0..block.dim() {
                acc += path.basis[[i, j]] * v[[j, kernel_col]];
            }
            state[i] = acc;
        }
        normalize_phase(&mut state);
        let residual = {
            let hv = h0.apply(&state);
            hv.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
        };
        if residual > NONCOALESCING_RESIDUAL_TOL {
            return Err(Error::numeric(format!(
                "non-coalescing state residual {residual:e} exceeds {NONCOALESCING_RESIDUAL_TOL:e} (2S={})",
                path.twice_spin
            )));
        }
        states.push(state);
    }
    Ok(states)
}
