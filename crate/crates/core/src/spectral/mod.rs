//! Dense complex spectral machinery: eigendecomposition, characteristic and
//! adjugate polynomials, singular values and numeric rank, Jordan structure
//! at zero, pure-state trace distance and the matrix exponential.

pub mod charpoly;
pub mod expm;
pub mod lu;
pub mod schur;
pub mod svd;

pub use charpoly::{
    characteristic_polynomial, epsilon_linear_term, faddeev_leverrier, CharPolyFactorization,
    EpsLinearCharPoly, Polynomial,
};
pub use expm::matrix_exponential;
pub use lu::determinant;
pub use svd::{jacobi_svd, singular_values, spectral_norm};

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::operator::Operator;

/// Default relative tolerance for singular-value rank counting. Configurable
/// at the call site because powers of nearly defective matrices can blur the
/// singular-value gap.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// Spectral radius below which a matrix counts as "all eigenvalues at zero"
/// for Jordan analysis. A size-k Jordan block leaks eigenvalues of magnitude
/// ~eps^(1/k); 1e-2 covers blocks up to k = 7 (dim 64) with margin.
pub const NILPOTENT_RADIUS_TOL: f64 = 1e-2;

/// Full eigensystem of a general complex matrix.
///
/// Eigenvalues are sorted by descending real part, ties broken by descending
/// imaginary part. Each eigenvector column has unit 2-norm with its first
/// largest-magnitude component rotated real and non-negative, so results are
/// reproducible across runs. `residual_norms[k]` reports ‖A v_k − λ_k v_k‖₂;
/// near an exceptional point these are intrinsically O(eps^(1/k)) and are
/// reported rather than enforced.
#[derive(Debug, Clone)]
pub struct SpectrumResult {
    pub eigenvalues: Vec<C64>,
    /// Column k pairs with eigenvalue k.
    pub eigenvectors: Array2<C64>,
    pub residual_norms: Vec<f64>,
}

impl SpectrumResult {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvector(&self, k: usize) -> Array1<C64> {
        self.eigenvectors.column(k).to_owned()
    }

    pub fn max_residual(&self) -> f64 {
        self.residual_norms.iter().copied().fold(0.0, f64::max)
    }
}

/// Sort key shared by everything that orders eigenvalues.
pub(crate) fn eigenvalue_order(a: &C64, b: &C64) -> std::cmp::Ordering {
    b.re.partial_cmp(&a.re)
        .unwrap()
        .then(b.im.partial_cmp(&a.im).unwrap())
}

/// Normalizes and phase-fixes an eigenvector in place: unit 2-norm, first
/// component of largest magnitude rotated real-positive.
pub(crate) fn normalize_phase(v: &mut Array1<C64>) {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.mapv_inplace(|z| z / norm);
    }
    let mut best = 0usize;
    let mut best_mag = 0.0;
    for (i, z) in v.iter().enumerate() {
        let mag = z.norm();
        if mag > best_mag {
            best_mag = mag;
            best = i;
        }
    }
    if best_mag > 0.0 {
        let phase = v[best].conj() / best_mag;
        v.mapv_inplace(|z| z * phase);
    }
}

/// Eigendecomposition through the complex Schur form: Hessenberg reduction,
/// shifted QR, then triangular back-substitution for the eigenvectors.
/// Eigenvectors may come out nearly parallel near an exceptional point;
/// that is the caller's problem by contract.
pub fn eigendecompose(a: &Operator) -> Result<SpectrumResult> {
    let n = a.dim();
    let schur = schur::schur_decompose(a)?;
    let tnorm = schur.t.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let smin = (f64::EPSILON * tnorm).max(f64::MIN_POSITIVE);

    let mut pairs: Vec<(C64, Array1<C64>)> = Vec::with_capacity(n);
    for i in 0..n {
        let y = schur::triangular_eigenvector(&schur.t, i, smin);
        let mut v = Array1::zeros(n);
        for r in 0..n {
            let mut acc = C64::ZERO;
            for k in 0..=i {
                acc += schur.q[[r, k]] * y[k];
            }
            v[r] = acc;
        }
        normalize_phase(&mut v);
        pairs.push((schur.t[[i, i]], v));
    }
    pairs.sort_by(|x, y| eigenvalue_order(&x.0, &y.0));

    let mut eigenvalues = Vec::with_capacity(n);
    let mut eigenvectors = Array2::zeros((n, n));
    let mut residual_norms = Vec::with_capacity(n);
    for (k, (lam, v)) in pairs.into_iter().enumerate() {
        let av = a.apply(&v);
        let res = av
            .iter()
            .zip(v.iter())
            .map(|(x, y)| (x - lam * y).norm_sqr())
            .sum::<f64>()
            .sqrt();
        for r in 0..n {
            eigenvectors[[r, k]] = v[r];
        }
        eigenvalues.push(lam);
        residual_norms.push(res);
    }
    Ok(SpectrumResult {
        eigenvalues,
        eigenvectors,
        residual_norms,
    })
}

/// Count of singular values above `rel_tol` times the largest one.
pub fn numeric_rank(a: &Operator, rel_tol: f64) -> Result<usize> {
    if !(rel_tol > 0.0 && rel_tol < 1.0) {
        return Err(Error::argument(format!(
            "rank tolerance must lie in (0, 1), got {rel_tol}"
        )));
    }
    let sigma = singular_values(a);
    let smax = sigma.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return Ok(0);
    }
    Ok(sigma.iter().filter(|&&s| s > rel_tol * smax).count())
}

fn rank_above(a: &Operator, abs_threshold: f64) -> usize {
    singular_values(a)
        .iter()
        .filter(|&&s| s > abs_threshold)
        .count()
}

/// Jordan block-size partition at eigenvalue zero, from ranks of successive
/// powers: the number of blocks of size ≥ k is rank(A^{k−1}) − rank(A^k).
///
/// The rank thresholds scale as σ_max(A)^k rather than being relative to each
/// power's own largest singular value; otherwise a power that is zero up to
/// roundoff (entries ~1e-15) would count its noise as rank.
pub fn jordan_structure_at_zero(a: &Operator) -> Result<Vec<usize>> {
    let dim = a.dim();
    let spectrum = eigendecompose(a)?;
    let radius = spectrum
        .eigenvalues
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let scale = spectral_norm(a).max(1.0);
    if radius > NILPOTENT_RADIUS_TOL * scale {
        return Err(Error::precondition(format!(
            "jordan_structure_at_zero needs all eigenvalues near zero; spectral radius {radius:e} exceeds {NILPOTENT_RADIUS_TOL:e} x {scale:e}"
        )));
    }

    let smax = spectral_norm(a);
    let mut ranks = vec![dim];
    let mut power = Operator::identity(dim);
    for k in 1..=dim {
        power = power.matmul(a);
        let threshold = if smax == 0.0 {
            f64::MIN_POSITIVE
        } else {
            DEFAULT_RANK_TOL * smax.powi(k as i32)
        };
        let r = rank_above(&power, threshold);
        ranks.push(r);
        if r == 0 {
            break;
        }
    }
    if *ranks.last().unwrap() != 0 {
        return Err(Error::numeric(
            "power ranks did not reach zero; input is not numerically nilpotent",
        ));
    }

    // blocks_ge[k] = number of blocks of size >= k+1
    let blocks_ge: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut partition = Vec::new();
    for k in (1..=blocks_ge.len()).rev() {
        let count = blocks_ge[k - 1] - if k < blocks_ge.len() { blocks_ge[k] } else { 0 };
        for _ in 0..count {
            partition.push(k);
        }
    }
    partition.sort_unstable_by(|a, b| b.cmp(a));
    Ok(partition)
}

/// Trace distance between two pure states: both are normalized, then
/// sqrt(1 − |⟨v1|v2⟩|²), clamped into [0, 1]. This is the closed form of
/// ½ tr|ρ₁ − ρ₂| for pure states.
pub fn trace_distance(v1: &Array1<C64>, v2: &Array1<C64>) -> Result<f64> {
    if v1.len() != v2.len() {
        return Err(Error::argument(format!(
            "trace_distance dimension mismatch: {} vs {}",
            v1.len(),
            v2.len()
        )));
    }
    let n1 = v1.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let n2 = v2.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if n1 == 0.0 || n2 == 0.0 {
        return Err(Error::argument("trace_distance of a zero vector"));
    }
    let overlap: C64 = v1
        .iter()
        .zip(v2.iter())
        .map(|(a, b)| a.conj() * b)
        .sum::<C64>()
        / C64::new(n1 * n2, 0.0);
    let d_sq = 1.0 - overlap.norm_sqr();
    Ok(d_sq.max(0.0).sqrt().min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{noninteracting_hamiltonian, pauli_string_operator, PauliString};
    use crate::params::QubitSystemParams;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn h0(n: usize, gamma: f64) -> Operator {
        noninteracting_hamiltonian(&QubitSystemParams::unit_coupling(n, gamma).unwrap())
    }

    #[test]
    fn sigma_x_eigensystem() {
        let sx = pauli_string_operator(&PauliString::from_word("x").unwrap(), 1).unwrap();
        let s = eigendecompose(&sx).unwrap();
        assert!((s.eigenvalues[0] - C64::ONE).norm() < 1e-14);
        assert!((s.eigenvalues[1] + C64::ONE).norm() < 1e-14);
        let r = 0.5f64.sqrt();
        let v0 = s.eigenvector(0);
        assert!((v0[0] - c(r, 0.)).norm() < 1e-12 && (v0[1] - c(r, 0.)).norm() < 1e-12);
        let v1 = s.eigenvector(1);
        assert!((v1[0] - c(r, 0.)).norm() < 1e-12 && (v1[1] + c(r, 0.)).norm() < 1e-12);
        assert!(s.max_residual() < 1e-13);
    }

    #[test]
    fn h0_spectrum_matches_kronecker_sum_formula() {
        // (n - 2m) J eps0 with multiplicity C(n, m), n=3 gamma=0.6
        let s = eigendecompose(&h0(3, 0.6)).unwrap();
        let expected = [2.4, 0.8, 0.8, 0.8, -0.8, -0.8, -0.8, -2.4];
        for (lam, want) in s.eigenvalues.iter().zip(expected) {
            assert!((lam - c(want, 0.)).norm() < 1e-10, "{lam} vs {want}");
        }
        assert!(s.max_residual() < 1e-12);
    }

    #[test]
    fn ptb_regime_has_purely_imaginary_pair() {
        let s = eigendecompose(&h0(1, 1.25)).unwrap();
        let mags: Vec<f64> = s.eigenvalues.iter().map(|z| z.im).collect();
        assert!(s.eigenvalues.iter().all(|z| z.re.abs() < 1e-12));
        assert!((mags[0] - 0.75).abs() < 1e-12 && (mags[1] + 0.75).abs() < 1e-12);
    }

    #[test]
    fn spectrum_formula_holds_up_to_n5_in_pts_regime() {
        for n in 1..=5usize {
            let params = QubitSystemParams::unit_coupling(n, 0.3).unwrap();
            let e0 = params.epsilon0().re;
            let s = eigendecompose(&noninteracting_hamiltonian(&params)).unwrap();
            let mut expected: Vec<f64> = Vec::new();
            for m in 0..=n {
                let mult = binomial(n, m);
                for _ in 0..mult {
                    expected.push((n as f64 - 2.0 * m as f64) * e0);
                }
            }
            expected.sort_by(|a, b| b.partial_cmp(a).unwrap());
            for (lam, want) in s.eigenvalues.iter().zip(expected) {
                assert!((lam - c(want, 0.)).norm() < 1e-9, "n={n}: {lam} vs {want}");
            }
        }
    }

    fn binomial(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        let mut acc = 1usize;
        for i in 0..k {
            acc = acc * (n - i) / (i + 1);
        }
        acc
    }

    #[test]
    fn charpoly_vanishes_on_eigenvalues_of_random_matrices() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for dim in [4usize, 9, 16] {
            let mut m = Array2::<C64>::zeros((dim, dim));
            for v in m.iter_mut() {
                *v = c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
            }
            let a = Operator::new(m).unwrap();
            let p = characteristic_polynomial(&a);
            let norm = spectral_norm(&a);
            let bound = 1e-6 * norm.powi(dim as i32);
            let s = eigendecompose(&a).unwrap();
            for lam in &s.eigenvalues {
                assert!(
                    p.eval(*lam).norm() <= bound,
                    "dim {dim}: residual {} > {bound}",
                    p.eval(*lam).norm()
                );
            }
        }
    }

    #[test]
    fn numeric_rank_examples() {
        assert_eq!(numeric_rank(&Operator::identity(4), 1e-10).unwrap(), 4);
        assert_eq!(numeric_rank(&Operator::zeros(3), 1e-10).unwrap(), 0);
        assert_eq!(numeric_rank(&h0(3, 1.0), 1e-10).unwrap(), 5);
        assert!(numeric_rank(&Operator::identity(2), 0.0).is_err());
        assert!(numeric_rank(&Operator::identity(2), 1.5).is_err());
    }

    #[test]
    fn jordan_structure_of_h0_at_the_ep() {
        assert_eq!(jordan_structure_at_zero(&h0(2, 1.0)).unwrap(), vec![3, 1]);
        assert_eq!(jordan_structure_at_zero(&h0(3, 1.0)).unwrap(), vec![4, 2, 2]);
        assert_eq!(jordan_structure_at_zero(&Operator::zeros(2)).unwrap(), vec![1, 1]);
    }

    #[test]
    fn jordan_rejects_non_nilpotent_input() {
        assert!(matches!(
            jordan_structure_at_zero(&Operator::identity(3)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn trace_distance_limits() {
        let v = Array1::from(vec![c(0.3, 0.1), c(-0.2, 0.9)]);
        assert!(trace_distance(&v, &v).unwrap() < 1e-12);

        let e0 = Array1::from(vec![C64::ONE, C64::ZERO]);
        let e1 = Array1::from(vec![C64::ZERO, C64::ONE]);
        assert!((trace_distance(&e0, &e1).unwrap() - 1.0).abs() < 1e-15);

        let zero = Array1::from(vec![C64::ZERO, C64::ZERO]);
        assert!(trace_distance(&zero, &e0).is_err());
    }

    #[test]
    fn trace_distance_is_phase_invariant_and_symmetric() {
        let v1 = Array1::from(vec![c(0.3, 0.1), c(-0.2, 0.9), c(0.0, 0.4)]);
        let v2 = Array1::from(vec![c(1.0, -0.5), c(0.1, 0.0), c(-0.3, 0.2)]);
        let d12 = trace_distance(&v1, &v2).unwrap();
        let d21 = trace_distance(&v2, &v1).unwrap();
        assert!((d12 - d21).abs() < 1e-15);
        let phase = c(0.0, 1.0);
        let v1p = v1.mapv(|z| z * phase);
        assert!((trace_distance(&v1p, &v2).unwrap() - d12).abs() < 1e-14);
    }
}
