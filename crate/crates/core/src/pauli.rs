//! Pauli-string operators and the Hamiltonian constructors built from them:
//! the non-interacting PT-symmetric array, its purely-dissipative shift,
//! Ising-type Pauli-string interactions and the collective two-body drives.
//!
//! Convention fixed here and shared by every module: qubit 1 is the leftmost
//! (most significant) Kronecker factor, and spin-up is the first basis vector
//! of each factor.

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::params::QubitSystemParams;

/// Single-site Pauli label; `I` is written `0` in word form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliLabel {
    I,
    X,
    Y,
    Z,
}

impl PauliLabel {
    pub fn from_char(c: char) -> Result<Self> {
        match c.to_ascii_lowercase() {
            '0' | 'i' => Ok(PauliLabel::I),
            'x' => Ok(PauliLabel::X),
            'y' => Ok(PauliLabel::Y),
            'z' => Ok(PauliLabel::Z),
            other => Err(Error::argument(format!(
                "invalid Pauli label '{other}' (expected one of 0, x, y, z)"
            ))),
        }
    }

    pub fn to_char(self) -> char {
        match self {
            PauliLabel::I => '0',
            PauliLabel::X => 'x',
            PauliLabel::Y => 'y',
            PauliLabel::Z => 'z',
        }
    }

    /// The 2x2 matrix for this label.
    pub fn matrix(self) -> Operator {
        let i = C64::I;
        let o = C64::ZERO;
        let l = C64::ONE;
        let rows = match self {
            PauliLabel::I => [[l, o], [o, l]],
            PauliLabel::X => [[o, l], [l, o]],
            PauliLabel::Y => [[o, -i], [i, o]],
            PauliLabel::Z => [[l, o], [o, -l]],
        };
        let mut data = Array2::zeros((2, 2));
        for (r, row) in rows.iter().enumerate() {
            for (c, z) in row.iter().enumerate() {
                data[[r, c]] = *z;
            }
        }
        Operator::new(data).expect("pauli matrices are finite")
    }
}

/// A scalar coefficient times a word of per-qubit Pauli labels — the
/// universal interaction descriptor. The identity word encodes a multiple of
/// the identity operator.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliString {
    pub coefficient: C64,
    pub labels: Vec<PauliLabel>,
}

impl PauliString {
    pub fn new(coefficient: C64, labels: Vec<PauliLabel>) -> Self {
        PauliString { coefficient, labels }
    }

    /// Parses a word like `"xx0"` with unit coefficient.
    pub fn from_word(word: &str) -> Result<Self> {
        let labels = word
            .chars()
            .map(PauliLabel::from_char)
            .collect::<Result<Vec<_>>>()?;
        if labels.is_empty() {
            return Err(Error::argument("empty Pauli word"));
        }
        Ok(PauliString::new(C64::ONE, labels))
    }

    pub fn with_coefficient(mut self, coefficient: C64) -> Self {
        self.coefficient = coefficient;
        self
    }

    pub fn word(&self) -> String {
        self.labels.iter().map(|l| l.to_char()).collect()
    }

    /// Number of non-identity labels (the interaction's body count).
    pub fn body_count(&self) -> usize {
        self.labels.iter().filter(|l| **l != PauliLabel::I).count()
    }
}

/// Dense matrix of a Pauli string on `n` qubits: coefficient times the
/// Kronecker product of the per-site matrices, qubit 1 leftmost.
pub fn pauli_string_operator(ps: &PauliString, n: usize) -> Result<Operator> {
    if ps.labels.len() != n {
        return Err(Error::argument(format!(
            "Pauli word length {} does not match qubit count {}",
            ps.labels.len(),
            n
        )));
    }
    let mut op = ps.labels[0].matrix();
    for label in &ps.labels[1..] {
        op = op.kron(&label.matrix());
    }
    Ok(op.scale(ps.coefficient))
}

/// Embeds a single-site operator at qubit `site` (0-based) of an `n`-qubit
/// register, identity elsewhere.
fn embed_single_site(op: &Operator, site: usize, n: usize) -> Operator {
    let mut acc = if site == 0 {
        op.clone()
    } else {
        Operator::identity(1 << site)
    };
    if site != 0 {
        acc = acc.kron(op);
    }
    let trailing = n - site - 1;
    if trailing > 0 {
        acc = acc.kron(&Operator::identity(1 << trailing));
    }
    acc
}

/// Single-qubit PT-symmetric Hamiltonian h = J(σx + iγσz).
pub fn single_qubit_hamiltonian(params: &QubitSystemParams) -> Operator {
    let sx = PauliLabel::X.matrix();
    let sz = PauliLabel::Z.matrix();
    &sx.scale(C64::new(params.j(), 0.0))
        + &sz.scale(C64::new(0.0, params.j() * params.gamma()))
}

/// Non-interacting array Hamiltonian H₀ = Σ_j J(σx^j + iγσz^j), the Kronecker
/// sum of identical single-qubit terms.
pub fn noninteracting_hamiltonian(params: &QubitSystemParams) -> Operator {
    let h = single_qubit_hamiltonian(params);
    let n = params.n();
    let mut total = Operator::zeros(params.dim());
    for site in 0..n {
        total = &total + &embed_single_site(&h, site, n);
    }
    total
}

/// Maps onto the purely dissipative picture by subtracting iγJ per qubit:
/// returns `op - iγJn·I`. The shift leaves eigenvectors untouched and
/// translates every eigenvalue by -iγJn.
pub fn dissipative_shift(op: &Operator, params: &QubitSystemParams) -> Result<Operator> {
    if op.dim() != params.dim() {
        return Err(Error::argument(format!(
            "dissipative shift dimension mismatch: operator {} vs system {}",
            op.dim(),
            params.dim()
        )));
    }
    let shift = C64::new(0.0, -(params.gamma() * params.j() * params.n() as f64));
    Ok(op + &Operator::identity(op.dim()).scale(shift))
}

/// Which collective two-body drive to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CollectiveKind {
    /// Σ_{k≠l} σx^k σy^l
    Xy,
    /// Σ_{k≠l} σz^k σx^l
    Zx,
}

/// Collective two-body interaction Σ_{k≠l} σa^k σb^l with the sum running
/// over ordered pairs — both (k,l) and (l,k) contribute.
pub fn collective_interaction(kind: CollectiveKind, n: usize) -> Result<Operator> {
    if n < 2 {
        return Err(Error::argument(format!(
            "collective interaction needs at least 2 qubits, got {n}"
        )));
    }
    let (first, second) = match kind {
        CollectiveKind::Xy => (PauliLabel::X, PauliLabel::Y),
        CollectiveKind::Zx => (PauliLabel::Z, PauliLabel::X),
    };
    let mut total = Operator::zeros(1 << n);
    for k in 0..n {
        for l in 0..n {
            if k == l {
                continue;
            }
            let mut labels = vec![PauliLabel::I; n];
            labels[k] = first;
            labels[l] = second;
            let ps = PauliString::new(C64::ONE, labels);
            total = &total + &pauli_string_operator(&ps, n)?;
        }
    }
    Ok(total)
}

/// Expansion coefficient of `op` on the Pauli word `labels`:
/// tr(P† op) / 2^n. Zero for strings absent from the operator.
pub fn pauli_component(op: &Operator, labels: &[PauliLabel]) -> Result<C64> {
    let n = labels.len();
    let p = pauli_string_operator(&PauliString::new(C64::ONE, labels.to_vec()), n)?;
    if p.dim() != op.dim() {
        return Err(Error::argument("pauli_component dimension mismatch"));
    }
    Ok(p.dagger().matmul(op).trace() / C64::new(op.dim() as f64, 0.0))
}

/// All length-`n` Pauli words in lexicographic order over {0, x, y, z}.
pub fn enumerate_words(n: usize) -> Vec<PauliString> {
    let alphabet = [PauliLabel::I, PauliLabel::X, PauliLabel::Y, PauliLabel::Z];
    let total = 4usize.pow(n as u32);
    let mut words = Vec::with_capacity(total);
    for idx in 0..total {
        let mut labels = vec![PauliLabel::I; n];
        let mut rem = idx;
        for pos in (0..n).rev() {
            labels[pos] = alphabet[rem % 4];
            rem /= 4;
        }
        words.push(PauliString::new(C64::ONE, labels));
    }
    words
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn pauli_x_matrix() {
        let op = pauli_string_operator(&PauliString::from_word("x").unwrap(), 1).unwrap();
        let expected =
            Operator::from_rows(&[vec![c(0., 0.), c(1., 0.)], vec![c(1., 0.), c(0., 0.)]]).unwrap();
        assert_eq!(op.max_abs_diff(&expected), 0.0);
    }

    #[test]
    fn xx_word_is_scaled_antidiagonal() {
        let eps = c(0.3, 0.0);
        let ps = PauliString::from_word("xx").unwrap().with_coefficient(eps);
        let op = pauli_string_operator(&ps, 2).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i + j == 3 { eps } else { C64::ZERO };
                assert_eq!(op.get(i, j), expected);
            }
        }
    }

    #[test]
    fn x0_word_matches_hand_expansion() {
        // sigma_x (x) I2, expanded by hand
        let op = pauli_string_operator(&PauliString::from_word("x0").unwrap(), 2).unwrap();
        let e = |i: usize, j: usize| -> f64 {
            [
                [0., 0., 1., 0.],
                [0., 0., 0., 1.],
                [1., 0., 0., 0.],
                [0., 1., 0., 0.],
            ][i][j]
        };
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(op.get(i, j), c(e(i, j), 0.0));
            }
        }
    }

    #[test]
    fn word_length_mismatch_is_an_argument_error() {
        let ps = PauliString::from_word("xx").unwrap();
        assert!(matches!(
            pauli_string_operator(&ps, 3),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn single_qubit_h0_at_the_ep() {
        let p = QubitSystemParams::unit_coupling(1, 1.0).unwrap();
        let h = noninteracting_hamiltonian(&p);
        let expected =
            Operator::from_rows(&[vec![c(0., 1.), c(1., 0.)], vec![c(1., 0.), c(0., -1.)]])
                .unwrap();
        assert_eq!(h.max_abs_diff(&expected), 0.0);
    }

    #[test]
    fn dissipative_shift_subtracts_i_gamma_j_n() {
        let p = QubitSystemParams::unit_coupling(1, 1.0).unwrap();
        let h = noninteracting_hamiltonian(&p);
        let shifted = dissipative_shift(&h, &p).unwrap();
        let expected =
            Operator::from_rows(&[vec![c(0., 0.), c(1., 0.)], vec![c(1., 0.), c(0., -2.)]])
                .unwrap();
        assert_eq!(shifted.max_abs_diff(&expected), 0.0);

        let wrong_dim = Operator::identity(4);
        assert!(dissipative_shift(&wrong_dim, &p).is_err());
    }

    #[test]
    fn collective_xy_n2_is_xy_plus_yx() {
        let op = collective_interaction(CollectiveKind::Xy, 2).unwrap();
        let xy = pauli_string_operator(&PauliString::from_word("xy").unwrap(), 2).unwrap();
        let yx = pauli_string_operator(&PauliString::from_word("yx").unwrap(), 2).unwrap();
        assert!(op.max_abs_diff(&(&xy + &yx)) < 1e-15);
        assert!(collective_interaction(CollectiveKind::Xy, 1).is_err());
    }

    #[test]
    fn collective_zx_n2_is_zx_plus_xz() {
        let op = collective_interaction(CollectiveKind::Zx, 2).unwrap();
        let zx = pauli_string_operator(&PauliString::from_word("zx").unwrap(), 2).unwrap();
        let xz = pauli_string_operator(&PauliString::from_word("xz").unwrap(), 2).unwrap();
        assert!(op.max_abs_diff(&(&zx + &xz)) < 1e-15);
    }

    #[test]
    fn collective_interactions_are_hermitian_up_to_n6() {
        for n in 2..=6 {
            for kind in [CollectiveKind::Xy, CollectiveKind::Zx] {
                let op = collective_interaction(kind, n).unwrap();
                assert!(op.is_hermitian(1e-12), "kind {kind:?} n {n}");
            }
        }
    }

    #[test]
    fn h0_commutes_with_the_pt_check() {
        // P conj(H0) P == H0 with P the all-sites sigma_x flip, any gamma.
        for gamma in [0.0, 0.5, 0.9, 1.0, 1.7] {
            let p = QubitSystemParams::unit_coupling(3, gamma).unwrap();
            let h = noninteracting_hamiltonian(&p);
            let flip = pauli_string_operator(&PauliString::from_word("xxx").unwrap(), 3).unwrap();
            let conj = Operator::new(h.entries().mapv(|z| z.conj())).unwrap();
            let pt = flip.matmul(&conj).matmul(&flip);
            assert!(pt.max_abs_diff(&h) < 1e-12, "gamma {gamma}");
        }
    }

    #[test]
    fn pauli_string_operator_is_multiplicative_over_site_embeddings() {
        // building "xyz" equals the product of single-site embeddings
        let word = pauli_string_operator(&PauliString::from_word("xyz").unwrap(), 3).unwrap();
        let x = pauli_string_operator(&PauliString::from_word("x00").unwrap(), 3).unwrap();
        let y = pauli_string_operator(&PauliString::from_word("0y0").unwrap(), 3).unwrap();
        let z = pauli_string_operator(&PauliString::from_word("00z").unwrap(), 3).unwrap();
        assert!(word.max_abs_diff(&x.matmul(&y).matmul(&z)) < 1e-15);
    }

    #[test]
    fn enumerate_words_is_lexicographic_and_complete() {
        let words = enumerate_words(2);
        assert_eq!(words.len(), 16);
        assert_eq!(words[0].word(), "00");
        assert_eq!(words[1].word(), "0x");
        assert_eq!(words[4].word(), "x0");
        assert_eq!(words[15].word(), "zz");
        let unique: std::collections::HashSet<String> =
            words.iter().map(|w| w.word()).collect();
        assert_eq!(unique.len(), 16);
    }
}
