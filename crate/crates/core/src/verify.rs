//! Machine-checkable verification of the library's key quantitative claims:
//! nilpotency at the exceptional point, the special-term coefficients, the
//! m-body response bound, the summation rule, the dissipation-sweep
//! coalescence pattern, the EP decomposition, the spin-sector blocks, and
//! the Floquet construction. Every threshold is pinned here; the CLI
//! `verify` command and the acceptance test suite both run this module.

use num_complex::Complex64 as C64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::binomial;
use crate::ep::{
    default_eps_grid, ep_decomposition, gamma_sweep, lowest_epsilon_power, mbody_bound_audit,
    noncoalescing_states, response_sweep, spin_sector_blocks, EpsilonPower,
};
use crate::error::Result;
use crate::floquet::{
    build_drive_protocol, effective_hamiltonian, floquet_eigenphase_response_sweep,
    floquet_response_sweep, magnus_error_scaling, magnus_terms,
};
use crate::operator::Operator;
use crate::params::QubitSystemParams;
use crate::pauli::{
    noninteracting_hamiltonian, pauli_string_operator, PauliLabel, PauliString,
};
use crate::spectral::{
    characteristic_polynomial, eigendecompose, epsilon_linear_term, jacobi_svd,
};

/// One verification check: name, outcome, the measured quantity and the
/// threshold it was held against (both human-readable).
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub measured: String,
    pub threshold: String,
}

/// Full report; `overall` is the conjunction of all statuses.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub overall: bool,
}

fn check(name: &str, threshold: &str, body: impl FnOnce() -> Result<(bool, String)>) -> Check {
    let (passed, measured) = match body() {
        Ok((ok, measured)) => (ok, measured),
        Err(e) => (false, format!("error: {e}")),
    };
    Check {
        name: name.to_string(),
        passed,
        measured,
        threshold: threshold.to_string(),
    }
}

fn h0_at_ep(n: usize) -> Operator {
    noninteracting_hamiltonian(&QubitSystemParams::unit_coupling(n, 1.0).unwrap())
}

/// Criterion 1: every non-leading characteristic-polynomial coefficient of
/// H₀(γ=1) vanishes below 1e-9 for n = 1..6.
pub fn check_nilpotency() -> Check {
    check("nilpotency_charpoly_n1_to_n6", "max |coeff| < 1e-9", || {
        let mut worst = 0.0f64;
        for n in 1..=6usize {
            let p = characteristic_polynomial(&h0_at_ep(n));
            let dim = 1 << n;
            for c in &p.coeffs[..dim] {
                worst = worst.max(c.norm());
            }
        }
        Ok((worst < 1e-9, format!("max |coeff| = {worst:.3e}")))
    })
}

/// Criterion 2a: for n = 2..5 the all-σx word's lowest ε-linear power sits
/// at 2^n − n − 1 with coefficient −2^n·n! to relative 1e-8.
pub fn check_special_term_all_x() -> Check {
    check(
        "special_term_all_x_n2_to_n5",
        "power = 2^n-n-1, |coeff + 2^n n!|/|2^n n!| < 1e-8",
        || {
            let mut worst = 0.0f64;
            for n in 2..=5usize {
                let word = PauliString::from_word(&"x".repeat(n)).unwrap();
                let b = pauli_string_operator(&word, n)?;
                let expected_power = (1 << n) - n - 1;
                let expected = -((1u64 << n) as f64) * factorial(n);
                match lowest_epsilon_power(n, &b)? {
                    EpsilonPower::Power { power, coefficient } => {
                        if power != expected_power {
                            return Ok((
                                false,
                                format!("n={n}: power {power} != {expected_power}"),
                            ));
                        }
                        let rel = (coefficient - C64::new(expected, 0.0)).norm() / expected.abs();
                        worst = worst.max(rel);
                    }
                    EpsilonPower::NoLinearResponse => {
                        return Ok((false, format!("n={n}: no linear response")))
                    }
                }
            }
            Ok((worst < 1e-8, format!("worst relative dev = {worst:.3e}")))
        },
    )
}

/// Criterion 2b: a single ε at the anti-diagonal corner gives −n! at the
/// same power.
pub fn check_special_term_corner() -> Check {
    check(
        "special_term_corner_n2_to_n5",
        "power = 2^n-n-1, |coeff + n!|/n! < 1e-8",
        || {
            let mut worst = 0.0f64;
            for n in 2..=5usize {
                let dim = 1 << n;
                let mut b = Operator::zeros(dim).into_array();
                b[[dim - 1, 0]] = C64::ONE;
                let b = Operator::new(b)?;
                let expected_power = dim - n - 1;
                let expected = -factorial(n);
                match lowest_epsilon_power(n, &b)? {
                    EpsilonPower::Power { power, coefficient } => {
                        if power != expected_power {
                            return Ok((
                                false,
                                format!("n={n}: power {power} != {expected_power}"),
                            ));
                        }
                        let rel = (coefficient - C64::new(expected, 0.0)).norm() / expected.abs();
                        worst = worst.max(rel);
                    }
                    EpsilonPower::NoLinearResponse => {
                        return Ok((false, format!("n={n}: no linear response")))
                    }
                }
            }
            Ok((worst < 1e-8, format!("worst relative dev = {worst:.3e}")))
        },
    )
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Criterion 3: exhaustive m-body bound audit over all 4^n words, n = 2, 3.
pub fn check_mbody_bound() -> Check {
    check(
        "mbody_bound_audit_n2_n3",
        "zero violations over 4^n words",
        || {
            let mut total_rows = 0;
            for n in [2usize, 3] {
                let report = mbody_bound_audit(n)?;
                total_rows += report.rows.len();
                if report.violations > 0 {
                    return Ok((
                        false,
                        format!("n={n}: {} violations", report.violations),
                    ));
                }
            }
            Ok((true, format!("0 violations over {total_rows} words")))
        },
    )
}

/// Criterion 4: the ε-linear part is additive over interactions — 100
/// random Ising pairs at n = 3, coefficient-wise residual below 1e-10.
pub fn check_summation_rule() -> Check {
    check(
        "summation_rule_100_random_pairs",
        "coefficient-wise residual < 1e-10",
        || {
            let n = 3usize;
            let h0 = h0_at_ep(n);
            let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
            let alphabet = [PauliLabel::I, PauliLabel::X, PauliLabel::Y, PauliLabel::Z];
            let mut worst = 0.0f64;
            for _ in 0..100 {
                let mut random_word = |rng: &mut ChaCha8Rng| {
                    let labels: Vec<PauliLabel> =
                        (0..n).map(|_| alphabet[rng.random_range(0..4)]).collect();
                    let coeff = C64::new(0.5 + 1.5 * rng.random::<f64>(), 0.0);
                    PauliString::new(coeff, labels)
                };
                let b1 = pauli_string_operator(&random_word(&mut rng), n)?;
                let b2 = pauli_string_operator(&random_word(&mut rng), n)?;
                let lin1 = epsilon_linear_term(&h0, &b1)?;
                let lin2 = epsilon_linear_term(&h0, &b2)?;
                let lin_sum = epsilon_linear_term(&h0, &(&b1 + &b2))?;
                for i in 0..lin_sum.linear.coeffs.len() {
                    let resid = (lin_sum.linear.coeffs[i]
                        - lin1.linear.coeffs[i]
                        - lin2.linear.coeffs[i])
                        .norm();
                    worst = worst.max(resid);
                }
            }
            Ok((worst < 1e-10, format!("worst residual = {worst:.3e}")))
        },
    )
}

/// Criterion 5: Fig. 3 response slopes at n = 3 over the default grid.
pub fn check_fig3_slopes() -> Check {
    check(
        "fig3_response_slopes",
        "xx0 slope = 1/3 ± 0.03, xxx slope = 1/4 ± 0.03",
        || {
            let grid = default_eps_grid();
            let fit_2body =
                response_sweep(3, &PauliString::from_word("xx0").unwrap(), &grid)?;
            let fit_3body =
                response_sweep(3, &PauliString::from_word("xxx").unwrap(), &grid)?;
            let dev2 = (fit_2body.slope - 1.0 / 3.0).abs();
            let dev3 = (fit_3body.slope - 0.25).abs();
            Ok((
                dev2 <= 0.03 && dev3 <= 0.03,
                format!(
                    "xx0 slope = {:.4}, xxx slope = {:.4}",
                    fit_2body.slope, fit_3body.slope
                ),
            ))
        },
    )
}

/// Criterion 6a: coalescence pattern at n = 3, γ = 0.9999 — among D_{1,k}
/// exactly 4 distances above 0.95 and 3 below 0.1, and the two degenerate
/// triples pair up one-to-one.
pub fn check_fig1_coalescence() -> Check {
    check(
        "fig1_coalescence_pattern",
        "4 of D_1k > 0.95, 3 of D_1k < 0.1, cross-triple perfect matching",
        || {
            let template = QubitSystemParams::unit_coupling(3, 0.0)?;
            let rows = gamma_sweep(&template, &[0.9999])?;
            let d = &rows[0].trace_distances;
            let d1k: Vec<f64> = (1..8).map(|k| d[[0, k]]).collect();
            let high = d1k.iter().filter(|&&x| x > 0.95).count();
            let low = d1k.iter().filter(|&&x| x < 0.1).count();
            let mut matching_ok = true;
            for a in 1..4 {
                matching_ok &= (4..7).filter(|&b| d[[a, b]] < 0.1).count() == 1;
            }
            for b in 4..7 {
                matching_ok &= (1..4).filter(|&a| d[[a, b]] < 0.1).count() == 1;
            }
            Ok((
                high == 4 && low == 3 && matching_ok,
                format!("high = {high}, low = {low}, matching = {matching_ok}"),
            ))
        },
    )
}

/// Criterion 6b: the spectrum matches (n−2m)Jε₀ to 1e-8 across γ ∈ [0, 2].
/// The grid is 201 points with the single defective point γ = 1 skipped:
/// there the matrix has a size-4 Jordan block and any eigensolver carries
/// O(eps^(1/4)) ≈ 1e-4 eigenvalue error (the EP itself is criterion 1's
/// charpoly check, which is exact).
pub fn check_fig1_spectrum() -> Check {
    check(
        "fig1_spectrum_formula_gamma_0_to_2",
        "worst multiset deviation < 1e-8 (gamma = 1 excluded)",
        || {
            let n = 3usize;
            let template = QubitSystemParams::unit_coupling(n, 0.0)?;
            let mut worst = 0.0f64;
            for i in 0..=200 {
                let gamma = i as f64 * 0.01;
                if (gamma - 1.0).abs() < 1e-9 {
                    continue;
                }
                let params = template.with_gamma(gamma)?;
                let e0 = params.epsilon0();
                let spectrum = eigendecompose(&noninteracting_hamiltonian(&params))?;
                let mut theory: Vec<C64> = Vec::new();
                for m in 0..=n {
                    let lam = e0 * C64::new(n as f64 - 2.0 * m as f64, 0.0);
                    for _ in 0..binomial(n, m) {
                        theory.push(lam);
                    }
                }
                worst = worst.max(multiset_deviation(&spectrum.eigenvalues, &theory));
            }
            Ok((worst < 1e-8, format!("worst deviation = {worst:.3e}")))
        },
    )
}

/// Greedy globally-minimal matching distance between two equal-length
/// complex multisets. Adequate whenever clusters are separated by much more
/// than the within-cluster spread, which is the regime checked here.
pub fn multiset_deviation(a: &[C64], b: &[C64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut remaining: Vec<C64> = b.to_vec();
    let mut worst = 0.0f64;
    for x in a {
        let (idx, dist) = remaining
            .iter()
            .enumerate()
            .map(|(i, y)| (i, (x - y).norm()))
            .min_by(|p, q| p.1.partial_cmp(&q.1).unwrap())
            .expect("non-empty multiset");
        worst = worst.max(dist);
        remaining.swap_remove(idx);
    }
    worst
}

/// Criterion 7: formula EP decomposition equals the Jordan partition for
/// n = 2..5 and the independent-state count equals C(n, ⌊n/2⌋).
/// (`ep_decomposition` cross-validates against the Jordan structure
/// internally; a mismatch surfaces as an error here.)
pub fn check_ep_decomposition() -> Check {
    check(
        "ep_decomposition_vs_jordan_n2_to_n5",
        "partition match and independent count = C(n, floor(n/2))",
        || {
            for n in 2..=5usize {
                let d = ep_decomposition(n)?;
                if d.independent_states != binomial(n, n / 2) {
                    return Ok((
                        false,
                        format!("n={n}: independent {} != C(n,n/2)", d.independent_states),
                    ));
                }
                if d.partition().iter().sum::<usize>() != (1 << n) {
                    return Ok((false, format!("n={n}: partition does not sum to 2^n")));
                }
            }
            Ok((true, "all partitions match".to_string()))
        },
    )
}

/// Criterion 8a: the printed n = 3, S = 3/2 block is reproduced entrywise
/// below 1e-10, and the S = 1/2 sector has exactly two identical copies
/// with eigenvalues ±Jε₀.
pub fn check_appendix_blocks() -> Check {
    check(
        "spin_sector_blocks_n3",
        "S=3/2 block entrywise < 1e-10; S=1/2 fold = 2, eigenvalues ±J eps0",
        || {
            let j = 1.0;
            let gamma = 0.7;
            let params = QubitSystemParams::new(3, j, gamma)?;
            let sectors = spin_sector_blocks(&params)?;
            let r3 = 3.0f64.sqrt();
            let c = |re: f64, im: f64| C64::new(re, im);
            let printed = Operator::from_rows(&[
                vec![c(0., 3. * j * gamma), c(r3 * j, 0.), C64::ZERO, C64::ZERO],
                vec![c(r3 * j, 0.), c(0., j * gamma), c(2. * j, 0.), C64::ZERO],
                vec![C64::ZERO, c(2. * j, 0.), c(0., -j * gamma), c(r3 * j, 0.)],
                vec![C64::ZERO, C64::ZERO, c(r3 * j, 0.), c(0., -3. * j * gamma)],
            ])?;
            let dev = sectors[0].block.max_abs_diff(&printed);
            if dev > 1e-10 {
                return Ok((false, format!("S=3/2 block deviation {dev:.3e}")));
            }

            let params = QubitSystemParams::unit_coupling(3, 0.6)?;
            let sectors = spin_sector_blocks(&params)?;
            let half = &sectors[1];
            if half.twice_spin != 1 || half.fold != 2 {
                return Ok((
                    false,
                    format!("S=1/2 sector: 2S={} fold={}", half.twice_spin, half.fold),
                ));
            }
            let eig = eigendecompose(&half.block)?;
            let dev_plus = (eig.eigenvalues[0] - C64::new(0.8, 0.0)).norm();
            let dev_minus = (eig.eigenvalues[1] + C64::new(0.8, 0.0)).norm();
            Ok((
                dev_plus < 1e-8 && dev_minus < 1e-8,
                format!(
                    "S=3/2 dev = {dev:.3e}; S=1/2 eigenvalue devs = {dev_plus:.3e}, {dev_minus:.3e}"
                ),
            ))
        },
    )
}

/// Criterion 8b: the n = 3 non-coalescing states are annihilated by
/// H₀(γ=1) below 1e-8 and stack to smallest singular value above 0.1.
pub fn check_noncoalescing_states() -> Check {
    check(
        "noncoalescing_states_n3",
        "residuals < 1e-8, stacked min singular value > 0.1",
        || {
            let states = noncoalescing_states(3)?;
            if states.len() != 3 {
                return Ok((false, format!("{} states != 3", states.len())));
            }
            let h0 = h0_at_ep(3);
            let mut worst_resid = 0.0f64;
            for s in &states {
                let hv = h0.apply(s);
                let r = hv.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                worst_resid = worst_resid.max(r);
            }
            let mut stack = Operator::zeros(8).into_array();
            for (j, s) in states.iter().enumerate() {
                for i in 0..8 {
                    stack[[i, j]] = s[i];
                }
            }
            let sigma = jacobi_svd(&Operator::new(stack)?, false).0;
            let min_sigma = sigma[2]; // third-largest: the stacked rank-3 tail
            Ok((
                worst_resid < 1e-8 && min_sigma > 0.1,
                format!("worst residual = {worst_resid:.3e}, min sigma = {min_sigma:.3}"),
            ))
        },
    )
}

/// Criterion 9: the closed-form effective Hamiltonian equals the Magnus
/// integrals entrywise below 1e-10 at (n = 3, ε = 1e-3, TJ = 0.2), and at
/// ε = 0 it equals H₀ below 1e-10.
pub fn check_heff_consistency() -> Check {
    check(
        "heff_closed_form_vs_magnus",
        "entrywise < 1e-10; eps = 0 gives H0 < 1e-10",
        || {
            let params = QubitSystemParams::unit_coupling(3, 1.0)?;
            let protocol = build_drive_protocol(&params, 1e-3, 0.2)?;
            let magnus = magnus_terms(&protocol)?;
            let closed = effective_hamiltonian(&params, 1e-3, 0.2)?;
            let dev = magnus.h_eff.max_abs_diff(&closed);

            let protocol0 = build_drive_protocol(&params, 0.0, 0.2)?;
            let magnus0 = magnus_terms(&protocol0)?;
            let dev0 = magnus0
                .h_eff
                .max_abs_diff(&noninteracting_hamiltonian(&params));
            Ok((
                dev < 1e-10 && dev0 < 1e-10,
                format!("dev = {dev:.3e}, eps=0 dev = {dev0:.3e}"),
            ))
        },
    )
}

/// Criterion 10: halving the period from TJ = 0.2 to 0.05 divides the
/// Magnus truncation error by 6 to 10 per halving.
pub fn check_magnus_scaling() -> Check {
    check(
        "magnus_error_scaling",
        "error ratios in [6, 10] per halving, monotone",
        || {
            let params = QubitSystemParams::unit_coupling(3, 1.0)?;
            let rows = magnus_error_scaling(&params, 1e-3, &[0.2, 0.1, 0.05])?;
            let mut ratios = Vec::new();
            for w in rows.windows(2) {
                if w[0].error <= w[1].error {
                    return Ok((false, "error not monotone decreasing".to_string()));
                }
            }
            for row in &rows[..rows.len() - 1] {
                let r = row.ratio.expect("ratio defined for all but the last row");
                if !(6.0..=10.0).contains(&r) {
                    return Ok((false, format!("ratio {r:.3} at T = {}", row.period)));
                }
                ratios.push(format!("{r:.2}"));
            }
            Ok((true, format!("ratios = [{}]", ratios.join(", "))))
        },
    )
}

/// Criterion 11a: the effective-Hamiltonian response sweep at TJ = 0.2
/// shows the fourth-order slope.
pub fn check_fig4_heff_slope() -> Check {
    check("fig4_slope_on_heff", "slope = 1/4 ± 0.05", || {
        let params = QubitSystemParams::unit_coupling(3, 1.0)?;
        let fit = floquet_response_sweep(&params, 0.2, &default_eps_grid())?;
        Ok((
            (fit.slope - 0.25).abs() <= 0.05,
            format!("slope = {:.4} (r² = {:.4})", fit.slope, fit.r_squared),
        ))
    })
}

/// Criterion 11b: the same slope extracted from exact period-propagator
/// eigenphases.
///
/// KNOWN RED. At TJ = 0.2 the third-order Magnus terms dropped by the
/// closed form leave an ε-independent eigenphase background of magnitude
/// ~0.34 that both dominates largest-|λ| tracking and breaks the EP₄ chain
/// of the exact stroboscopic generator into EP₂ remnants (measured response
/// ~ ε^(1/2)). The check is implemented as specified and reports the
/// measured slope honestly.
pub fn check_fig4_exact_eigenphase_slope() -> Check {
    check(
        "fig4_slope_on_exact_eigenphases",
        "slope = 1/4 ± 0.05",
        || {
            let params = QubitSystemParams::unit_coupling(3, 1.0)?;
            let fit = floquet_eigenphase_response_sweep(&params, 0.2, &default_eps_grid())?;
            Ok((
                (fit.slope - 0.25).abs() <= 0.05,
                format!("slope = {:.4} (r² = {:.4})", fit.slope, fit.r_squared),
            ))
        },
    )
}

/// Runs every check in criterion order.
pub fn run_verification() -> VerifyReport {
    let checks = vec![
        check_nilpotency(),
        check_special_term_all_x(),
        check_special_term_corner(),
        check_mbody_bound(),
        check_summation_rule(),
        check_fig3_slopes(),
        check_fig1_coalescence(),
        check_fig1_spectrum(),
        check_ep_decomposition(),
        check_appendix_blocks(),
        check_noncoalescing_states(),
        check_heff_consistency(),
        check_magnus_scaling(),
        check_fig4_heff_slope(),
        check_fig4_exact_eigenphase_slope(),
    ];
    let overall = checks.iter().all(|c| c.passed);
    VerifyReport { checks, overall }
}
