//! Exceptional-point analysis: dissipation sweeps with pairwise trace
//! distances, the closed-form EP decomposition cross-checked against the
//! numerically computed Jordan structure, perturbation-response sweeps with
//! log-log slope fits, and the exhaustive m-body response-order audit.

pub mod sectors;

pub use sectors::{coupled_paths, noncoalescing_states, spin_sector_blocks, CoupledPath, SpinSector};

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::binomial;
use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::params::QubitSystemParams;
use crate::pauli::{enumerate_words, noninteracting_hamiltonian, pauli_string_operator, PauliString};
use crate::spectral::{
    eigendecompose, epsilon_linear_term, jordan_structure_at_zero, trace_distance,
};

/// One γ grid point: eigenvalues (sorted by the crate's ordering) and the
/// full pairwise trace-distance matrix of the corresponding eigenvectors.
#[derive(Debug, Clone)]
pub struct GammaSweepRow {
    pub gamma: f64,
    pub eigenvalues: Vec<C64>,
    /// Symmetric with zero diagonal; entry (k, l) = D between states k and l.
    pub trace_distances: Array2<f64>,
}

/// Relative eigenvalue-clustering tolerance used to decide which computed
/// eigenvalues belong to one degenerate multiplet during a sweep.
const CLUSTER_REL_TOL: f64 = 1e-6;

/// Sweeps the dissipation rate: for each γ, eigendecompose H₀ and compute
/// all pairwise trace distances. Grid points are processed in parallel and
/// emitted in grid order.
///
/// Within a numerically degenerate multiplet the eigenvector basis is gauge
/// arbitrary, and a generic QR basis mixes the spin sectors, which scrambles
/// the coalescence pattern near the EP. Degenerate clusters are therefore
/// refined to the total-spin-adapted basis (H₀ commutes with S² exactly);
/// the refined vectors are eigenvectors of the same eigenvalue and make the
/// trace-distance matrix reproducible.
pub fn gamma_sweep(template: &QubitSystemParams, gamma_grid: &[f64]) -> Result<Vec<GammaSweepRow>> {
    if gamma_grid.iter().any(|g| !(*g >= 0.0)) {
        return Err(Error::argument("gamma grid values must be >= 0"));
    }
    let paths = coupled_paths(template.n())?;
    gamma_grid
        .par_iter()
        .map(|&gamma| gamma_sweep_row(template, gamma, &paths))
        .collect()
}

fn gamma_sweep_row(
    template: &QubitSystemParams,
    gamma: f64,
    paths: &[CoupledPath],
) -> Result<GammaSweepRow> {
    let params = template.with_gamma(gamma)?;
    let h0 = noninteracting_hamiltonian(&params);
    let spectrum = eigendecompose(&h0)
        .map_err(|e| Error::numeric(format!("eigensolver failed at gamma={gamma}: {e}")))?;

    let dim = h0.dim();
    let mut vectors: Vec<Array1<C64>> = (0..dim).map(|k| spectrum.eigenvector(k)).collect();

    // refine degenerate clusters with the spin-sector eigenbasis
    let scale = spectrum
        .eigenvalues
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let tol = (CLUSTER_REL_TOL * scale).max(1e-12);
    let mut start = 0;
    while start < dim {
        let mut end = start + 1;
        while end < dim
            && (spectrum.eigenvalues[end] - spectrum.eigenvalues[start]).norm() <= tol
        {
            end += 1;
        }
        if end - start > 1 {
            let center = spectrum.eigenvalues[start..end]
                .iter()
                .sum::<C64>()
                / C64::new((end - start) as f64, 0.0);
            if let Some(refined) = sector_refined_vectors(&h0, paths, center, 10.0 * tol) {
                if refined.len() == end - start {
                    for (slot, v) in (start..end).zip(refined) {
                        vectors[slot] = v;
                    }
                }
            }
        }
        start = end;
    }

    let mut dmat = Array2::<f64>::zeros((dim, dim));
    for k in 0..dim {
        for l in (k + 1)..dim {
            let d = trace_distance(&vectors[k], &vectors[l])?;
            dmat[[k, l]] = d;
            dmat[[l, k]] = d;
        }
    }
    Ok(GammaSweepRow {
        gamma,
        eigenvalues: spectrum.eigenvalues,
        trace_distances: dmat,
    })
}

/// Eigenvectors of H₀ with eigenvalue within `tol` of `center`, one from
/// each sector copy that owns the eigenvalue, ordered by path. Returns None
/// when the per-block eigensolver fails (caller keeps the generic basis).
fn sector_refined_vectors(
    h0: &Operator,
    paths: &[CoupledPath],
    center: C64,
    tol: f64,
) -> Option<Vec<Array1<C64>>> {
    let dim = h0.dim();
    let mut out = Vec::new();
    for path in paths {
        let cols = path.twice_spin + 1;
        // block = V† H V
        let hv = h0.entries().dot(&path.basis);
        let mut block = Array2::<C64>::zeros((cols, cols));
        for r in 0..cols {
            for c in 0..cols {
                let mut acc = C64::ZERO;
                for i in 0..dim {
                    acc += path.basis[[i, r]].conj() * hv[[i, c]];
                }
                block[[r, c]] = acc;
            }
        }
        let spectrum = eigendecompose(&Operator::new(block).ok()?).ok()?;
        for (k, lam) in spectrum.eigenvalues.iter().enumerate() {
            if (lam - center).norm() <= tol {
                let y = spectrum.eigenvector(k);
                let mut v = Array1::<C64>::zeros(dim);
                for i in 0..dim {
                    let mut acc = C64::ZERO;
                    for j in 0..cols {
                        acc += path.basis[[i, j]] * y[j];
                    }
                    v[i] = acc;
                }
                crate::spectral::normalize_phase(&mut v);
                out.push(v);
            }
        }
    }
    Some(out)
}

/// Multiset of (EP order, fold) pairs at γ = 1 plus the count of linearly
/// independent eigenstates that survive the coalescence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EPDecomposition {
    /// (order, fold), descending order; Σ order·fold = 2^n.
    pub parts: Vec<(usize, usize)>,
    /// C(n, ⌊n/2⌋)
    pub independent_states: usize,
}

impl EPDecomposition {
    /// Expands folds into a plain partition (order repeated fold times).
    pub fn partition(&self) -> Vec<usize> {
        let mut p = Vec::new();
        for &(order, fold) in &self.parts {
            for _ in 0..fold {
                p.push(order);
            }
        }
        p.sort_unstable_by(|a, b| b.cmp(a));
        p
    }
}

/// Closed-form EP decomposition of the non-interacting array at γ = 1:
/// for m = 0..⌊n/2⌋ a [C(n,m) − C(n,m−1)]-fold EP of order n−2m+1.
/// Cross-validates against the numerically computed Jordan partition of
/// H₀(γ=1); a mismatch is an internal consistency error.
pub fn ep_decomposition(n: usize) -> Result<EPDecomposition> {
    if n == 0 {
        return Err(Error::argument("need at least one qubit"));
    }
    let mut parts = Vec::new();
    for m in 0..=(n / 2) {
        let order = n - 2 * m + 1;
        let fold = binomial(n, m) - if m >= 1 { binomial(n, m - 1) } else { 0 };
        if fold > 0 {
            parts.push((order, fold));
        }
    }
    let decomposition = EPDecomposition {
        parts,
        independent_states: binomial(n, n / 2),
    };

    let params = QubitSystemParams::unit_coupling(n, 1.0)?;
    let jordan = jordan_structure_at_zero(&noninteracting_hamiltonian(&params))?;
    if jordan != decomposition.partition() {
        return Err(Error::consistency(format!(
            "EP decomposition formula {:?} disagrees with Jordan partition {:?} at n={n}",
            decomposition.partition(),
            jordan
        )));
    }
    Ok(decomposition)
}

/// Least-squares line through (ln x, ln y): returns (slope, intercept,
/// r_squared). Flat data fits slope 0 with r² = 1 by convention.
pub fn fit_loglog_slope(points: &[(f64, f64)]) -> Result<(f64, f64, f64)> {
    if points.len() < 2 {
        return Err(Error::Fit(format!(
            "need at least 2 points, got {}",
            points.len()
        )));
    }
    if points.iter().any(|&(x, y)| !(x > 0.0) || !(y > 0.0)) {
        return Err(Error::argument(
            "log-log fit requires strictly positive coordinates",
        ));
    }
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let lx = x.ln();
        let ly = y.ln();
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-300 {
        return Err(Error::Fit("degenerate abscissae in log-log fit".into()));
    }
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    let mean_y = sy / n;
    let (mut ss_res, mut ss_tot) = (0.0, 0.0);
    for &(x, y) in points {
        let ly = y.ln();
        let pred = slope * x.ln() + intercept;
        ss_res += (ly - pred) * (ly - pred);
        ss_tot += (ly - mean_y) * (ly - mean_y);
    }
    let r_squared = if ss_tot > 0.0 {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    } else {
        1.0
    };
    Ok((slope, intercept, r_squared))
}

/// Result of a perturbation-response sweep: the usable (ε, |λ|) points and
/// the fitted power law; the response order is 1/slope.
#[derive(Debug, Clone)]
pub struct ResponseFit {
    pub epsilons: Vec<f64>,
    pub lambda_mags: Vec<f64>,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Intrinsic eigensolver noise next to a size-k Jordan block.
pub fn defective_noise_floor(block_size: usize) -> f64 {
    f64::EPSILON.powf(1.0 / block_size as f64)
}

/// Largest-magnitude eigenvalue of h0 + ε·b for each ε, in grid order.
/// Branch tracking by magnitude: at the scales swept here the enhanced
/// branch dominates; perturbations with no enhanced branch are a documented
/// limitation.
pub fn tracked_branch(h0: &Operator, b: &Operator, eps_grid: &[f64]) -> Result<Vec<(f64, C64)>> {
    if eps_grid.iter().any(|e| !(*e > 0.0)) {
        return Err(Error::argument("epsilon grid values must be positive"));
    }
    if h0.dim() != b.dim() {
        return Err(Error::argument("tracked_branch dimension mismatch"));
    }
    eps_grid
        .par_iter()
        .map(|&eps| {
            let h = h0 + &b.scale(C64::new(eps, 0.0));
            let spectrum = eigendecompose(&h)
                .map_err(|e| Error::numeric(format!("eigensolver failed at eps={eps}: {e}")))?;
            let lam = spectrum
                .eigenvalues
                .iter()
                .copied()
                .max_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap())
                .expect("non-empty spectrum");
            Ok((eps, lam))
        })
        .collect()
}

/// Filters tracked points through the noise-floor rule and fits the
/// log-log slope. Points with |λ| below 100x the floor are excluded;
/// fewer than 5 survivors is a fit error.
pub fn fit_response(points: &[(f64, C64)], noise_floor: f64) -> Result<ResponseFit> {
    let usable: Vec<(f64, f64)> = points
        .iter()
        .map(|&(e, lam)| (e, lam.norm()))
        .filter(|&(_, mag)| mag >= 100.0 * noise_floor)
        .collect();
    if usable.len() < 5 {
        return Err(Error::Fit(format!(
            "only {} usable sweep points above the noise floor {noise_floor:e}",
            usable.len()
        )));
    }
    let (slope, intercept, r_squared) = fit_loglog_slope(&usable)?;
    Ok(ResponseFit {
        epsilons: usable.iter().map(|p| p.0).collect(),
        lambda_mags: usable.iter().map(|p| p.1).collect(),
        slope,
        intercept,
        r_squared,
    })
}

/// Eleven log-spaced points over [1e-8, 1e-3], the default sweep grid:
/// large enough ε to clear the defective-eigensolver noise, small enough to
/// keep higher-order corrections from bending the fit.
pub fn default_eps_grid() -> Vec<f64> {
    log_spaced_grid(1e-8, 1e-3, 11)
}

pub fn log_spaced_grid(min: f64, max: f64, points: usize) -> Vec<f64> {
    assert!(min > 0.0 && max > min && points >= 2);
    let l0 = min.ln();
    let l1 = max.ln();
    (0..points)
        .map(|i| (l0 + (l1 - l0) * i as f64 / (points - 1) as f64).exp())
        .collect()
}

/// Energy response of H₀(γ=1) to an Ising-type perturbation: sweeps ε,
/// tracks the dominant eigenvalue branch and fits |λ| ∝ ε^slope.
pub fn response_sweep(
    n: usize,
    perturbation: &PauliString,
    eps_grid: &[f64],
) -> Result<ResponseFit> {
    let params = QubitSystemParams::unit_coupling(n, 1.0)?;
    let h0 = noninteracting_hamiltonian(&params);
    let b = pauli_string_operator(perturbation, n)?;
    let points = tracked_branch(&h0, &b, eps_grid)?;
    fit_response(&points, defective_noise_floor(n + 1))
}

/// Lowest ε-linear power of the perturbed characteristic polynomial, the
/// algebraic witness of the response order (order = 2^n − power).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EpsilonPower {
    Power { power: usize, coefficient: C64 },
    /// The ε-linear part vanishes identically.
    NoLinearResponse,
}

/// Coefficients below this relative threshold count as zero when locating
/// the lowest ε-linear power.
const POWER_REL_TOL: f64 = 1e-8;

/// Smallest power of λ carrying a nonvanishing ε-linear coefficient in
/// det(λI − (H₀(γ=1) + εB)).
pub fn lowest_epsilon_power(n: usize, b: &Operator) -> Result<EpsilonPower> {
    let params = QubitSystemParams::unit_coupling(n, 1.0)?;
    let h0 = noninteracting_hamiltonian(&params);
    let lin = epsilon_linear_term(&h0, b)?;
    let max = lin.linear.max_abs_coeff();
    if max == 0.0 {
        return Ok(EpsilonPower::NoLinearResponse);
    }
    for (i, c) in lin.linear.coeffs.iter().enumerate() {
        if c.norm() > POWER_REL_TOL * max {
            return Ok(EpsilonPower::Power {
                power: i,
                coefficient: *c,
            });
        }
    }
    Ok(EpsilonPower::NoLinearResponse)
}

/// One audited Pauli word.
#[derive(Debug, Clone)]
pub struct MBodyAuditRow {
    pub word: String,
    pub bodies: usize,
    /// None when the ε-linear part vanishes identically.
    pub power: Option<usize>,
    pub bound: usize,
    pub satisfied: bool,
}

/// Exhaustive audit report over all 4^n Pauli words.
#[derive(Debug, Clone)]
pub struct MBodyAuditReport {
    pub rows: Vec<MBodyAuditRow>,
    pub violations: usize,
}

/// Checks the response-order bound for every Pauli word on `n` qubits: an
/// m-body word must have its lowest ε-linear power at 2^n − m − 1 or above.
/// A violation signals a numerics bug, not user error; the report carries
/// the full table either way.
pub fn mbody_bound_audit(n: usize) -> Result<MBodyAuditReport> {
    if n > 4 {
        return Err(Error::argument(
            "exhaustive audit is limited to n <= 4 (4^n words)",
        ));
    }
    let words = enumerate_words(n);
    let rows: Vec<MBodyAuditRow> = words
        .par_iter()
        .map(|word| -> Result<MBodyAuditRow> {
            let b = pauli_string_operator(word, n)?;
            let m = word.body_count();
            let bound = (1 << n) - m - 1;
            let power = match lowest_epsilon_power(n, &b)? {
                EpsilonPower::Power { power, .. } => Some(power),
                EpsilonPower::NoLinearResponse => None,
            };
            let satisfied = power.is_none_or(|p| p >= bound);
            Ok(MBodyAuditRow {
                word: word.word(),
                bodies: m,
                power,
                bound,
                satisfied,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let violations = rows.iter().filter(|r| !r.satisfied).count();
    Ok(MBodyAuditReport { rows, violations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn ep_decomposition_small_n() {
        let d2 = ep_decomposition(2).unwrap();
        assert_eq!(d2.parts, vec![(3, 1), (1, 1)]);
        assert_eq!(d2.independent_states, 2);

        let d3 = ep_decomposition(3).unwrap();
        assert_eq!(d3.parts, vec![(4, 1), (2, 2)]);
        assert_eq!(d3.independent_states, 3);

        let d4 = ep_decomposition(4).unwrap();
        assert_eq!(d4.parts, vec![(5, 1), (3, 3), (1, 2)]);
        assert_eq!(d4.independent_states, 6);
        assert_eq!(d4.partition(), vec![5, 3, 3, 3, 1, 1]);
    }

    #[test]
    fn ep_decomposition_matches_jordan_up_to_n5() {
        for n in 1..=5usize {
            let d = ep_decomposition(n).unwrap();
            assert_eq!(d.partition().iter().sum::<usize>(), 1 << n, "n={n}");
            assert_eq!(d.partition().len(), binomial(n, n / 2), "n={n}");
        }
    }

    #[test]
    fn fit_loglog_examples() {
        let (s, _, _) = fit_loglog_slope(&[(1.0, 1.0), (10.0, 10.0)]).unwrap();
        assert!((s - 1.0).abs() < 1e-12);

        let pts: Vec<(f64, f64)> = [1e-6, 1e-5, 1e-4, 1e-3, 1e-2]
            .iter()
            .map(|&e| (e, (e as f64).powf(1.0 / 3.0)))
            .collect();
        let (s, _, r2) = fit_loglog_slope(&pts).unwrap();
        assert!((s - 1.0 / 3.0).abs() < 1e-12);
        assert!((r2 - 1.0).abs() < 1e-12);

        let (s, i, _) = fit_loglog_slope(&[(1.0, 2.0), (100.0, 2.0)]).unwrap();
        assert!(s.abs() < 1e-12);
        assert!((i - 2f64.ln()).abs() < 1e-12);

        assert!(fit_loglog_slope(&[(1.0, 1.0)]).is_err());
        assert!(fit_loglog_slope(&[(1.0, 1.0), (-1.0, 2.0)]).is_err());
    }

    #[test]
    fn synthetic_linear_branch_fits_slope_one() {
        let pts: Vec<(f64, C64)> = default_eps_grid()
            .iter()
            .map(|&e| (e, c(2.0 * e, 0.0)))
            .collect();
        let fit = fit_response(&pts, 1e-30).unwrap();
        assert!((fit.slope - 1.0).abs() < 1e-10);
        assert!((fit.intercept - 2f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn lowest_power_examples_n3() {
        let word = |w: &str| {
            pauli_string_operator(&PauliString::from_word(w).unwrap(), 3).unwrap()
        };
        match lowest_epsilon_power(3, &word("xxx")).unwrap() {
            EpsilonPower::Power { power, coefficient } => {
                assert_eq!(power, 4);
                assert!((coefficient - c(-48.0, 0.0)).norm() < 1e-8);
            }
            _ => panic!("expected a power"),
        }
        match lowest_epsilon_power(3, &word("xx0")).unwrap() {
            EpsilonPower::Power { power, coefficient } => {
                assert_eq!(power, 5);
                assert!((coefficient - c(-16.0, 0.0)).norm() < 1e-8);
            }
            _ => panic!("expected a power"),
        }
        // mixed word measured sign: zz0 carries +16 at power 5
        match lowest_epsilon_power(3, &word("zz0")).unwrap() {
            EpsilonPower::Power { power, coefficient } => {
                assert_eq!(power, 5);
                assert!((coefficient - c(16.0, 0.0)).norm() < 1e-8);
            }
            _ => panic!("expected a power"),
        }
        // identity word: (λ−ε)^8 expansion, power 7 with coefficient −2^n
        match lowest_epsilon_power(3, &Operator::identity(8)).unwrap() {
            EpsilonPower::Power { power, coefficient } => {
                assert_eq!(power, 7);
                assert!((coefficient - c(-8.0, 0.0)).norm() < 1e-10);
            }
            _ => panic!("expected a power"),
        }
        // words with identically vanishing linear part
        assert_eq!(
            lowest_epsilon_power(3, &word("0yy")).unwrap(),
            EpsilonPower::NoLinearResponse
        );
    }

    #[test]
    fn corner_element_power_n2() {
        let mut b = Operator::zeros(4).into_array();
        b[[3, 0]] = C64::ONE;
        match lowest_epsilon_power(2, &Operator::new(b).unwrap()).unwrap() {
            EpsilonPower::Power { power, coefficient } => {
                assert_eq!(power, 1);
                assert!((coefficient - c(-2.0, 0.0)).norm() < 1e-10);
            }
            _ => panic!("expected a power"),
        }
    }

    #[test]
    fn lowest_power_is_invariant_under_qubit_relabeling() {
        for (a, b) in [("xx0", "x0x"), ("xx0", "0xx"), ("00z", "z00"), ("xyz", "zyx")] {
            let pa = lowest_epsilon_power(
                3,
                &pauli_string_operator(&PauliString::from_word(a).unwrap(), 3).unwrap(),
            )
            .unwrap();
            let pb = lowest_epsilon_power(
                3,
                &pauli_string_operator(&PauliString::from_word(b).unwrap(), 3).unwrap(),
            )
            .unwrap();
            let key = |p: EpsilonPower| match p {
                EpsilonPower::Power { power, .. } => Some(power),
                EpsilonPower::NoLinearResponse => None,
            };
            assert_eq!(key(pa), key(pb), "{a} vs {b}");
        }
    }

    #[test]
    fn audit_n2_exhaustive_has_no_violations() {
        let report = mbody_bound_audit(2).unwrap();
        assert_eq!(report.rows.len(), 16);
        assert_eq!(report.violations, 0);
    }

    #[test]
    fn audit_row_00z_satisfies_bound_six() {
        let report = mbody_bound_audit(3).unwrap();
        let row = report.rows.iter().find(|r| r.word == "00z").unwrap();
        assert_eq!(row.bound, 6);
        assert_eq!(row.power, Some(6));
        assert!(row.satisfied);
    }

    #[test]
    fn audit_rejects_large_n() {
        assert!(mbody_bound_audit(5).is_err());
    }

    #[test]
    fn response_slopes_match_body_count() {
        // slope 1/(m+1) for an m-body sigma-x word
        let grid = default_eps_grid();
        for (n, word, m) in [(2usize, "x0", 1usize), (2, "xx", 2), (3, "xx0", 2), (3, "xxx", 3)] {
            let fit = response_sweep(n, &PauliString::from_word(word).unwrap(), &grid).unwrap();
            let target = 1.0 / (m as f64 + 1.0);
            assert!(
                (fit.slope - target).abs() <= 0.03,
                "n={n} word={word}: slope {} vs {target}",
                fit.slope
            );
        }
    }

    #[test]
    fn gamma_sweep_n3_rows() {
        let template = QubitSystemParams::unit_coupling(3, 0.0).unwrap();
        let rows = gamma_sweep(&template, &[0.0, 1.5]).unwrap();

        // gamma = 0: Kronecker-sum spectrum {3,1,1,1,-1,-1,-1,-3}
        let expected = [3.0, 1.0, 1.0, 1.0, -1.0, -1.0, -1.0, -3.0];
        for (lam, want) in rows[0].eigenvalues.iter().zip(expected) {
            assert!((lam - c(want, 0.0)).norm() < 1e-10);
        }

        // gamma = 1.5: purely imaginary ±(n−2m)·sqrt(1.25) pattern
        let s = 1.25f64.sqrt();
        let mut mags: Vec<f64> = rows[1].eigenvalues.iter().map(|z| z.im).collect();
        mags.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let expected = [3.0 * s, s, s, s, -s, -s, -s, -3.0 * s];
        for (got, want) in mags.iter().zip(expected) {
            assert!((got - want).abs() < 1e-9, "{got} vs {want}");
        }
        assert!(rows[1].eigenvalues.iter().all(|z| z.re.abs() < 1e-9));
    }

    #[test]
    fn gamma_sweep_near_ep_coalescence_counts() {
        let template = QubitSystemParams::unit_coupling(3, 0.0).unwrap();
        let rows = gamma_sweep(&template, &[0.9999]).unwrap();
        let d = &rows[0].trace_distances;
        let d1k: Vec<f64> = (1..8).map(|k| d[[0, k]]).collect();
        assert_eq!(d1k.iter().filter(|&&x| x > 0.95).count(), 4);
        assert_eq!(d1k.iter().filter(|&&x| x < 0.1).count(), 3);
        // cross-subspace perfect matching between the two degenerate triples
        for a in 1..4 {
            let hits = (4..7).filter(|&b| d[[a, b]] < 0.1).count();
            assert_eq!(hits, 1, "row {a}");
        }
        for b in 4..7 {
            let hits = (1..4).filter(|&a| d[[a, b]] < 0.1).count();
            assert_eq!(hits, 1, "col {b}");
        }
    }

    #[test]
    fn gamma_sweep_rejects_negative_gamma() {
        let template = QubitSystemParams::unit_coupling(2, 0.0).unwrap();
        assert!(gamma_sweep(&template, &[0.5, -0.1]).is_err());
    }
}
