//! Operator and state Schmidt decompositions across a tensor split, and the
//! strict (identity-iso) parallel decomposition test in `(FinVec, ⊗)`.

use serde::{Deserialize, Serialize};

use crate::decomposition::{verdict_from_grades, DecompositionOutcome, Policy, Verdict, WitnessGrade};
use crate::error::{Error, Result};
use crate::linvec::matrix::{ComplexMatrix, C64};
use crate::linvec::svd::svd;

/// Singular values are nonzero iff `σᵢ > RANK_THRESHOLD · (1 + σ₁)`.
pub const RANK_THRESHOLD: f64 = 1e-9;

/// `C^{d₁} ⊗ C^{d₂} → C^{d₁′} ⊗ C^{d₂′}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TensorSplit {
    pub dom: (usize, usize),
    pub cod: (usize, usize),
}

impl TensorSplit {
    pub fn new(dom: (usize, usize), cod: (usize, usize)) -> Self {
        TensorSplit { dom, cod }
    }

    /// Endomorphism split `C^{d₁} ⊗ C^{d₂} → C^{d₁} ⊗ C^{d₂}`.
    pub fn square(d1: usize, d2: usize) -> Self {
        TensorSplit { dom: (d1, d2), cod: (d1, d2) }
    }

    /// A state `C → C^{d₁} ⊗ C^{d₂}`.
    pub fn state(d1: usize, d2: usize) -> Self {
        TensorSplit { dom: (1, 1), cod: (d1, d2) }
    }

    /// The split that undoes [`realign`] with this split.
    pub fn realigned(self) -> Self {
        TensorSplit { dom: (self.cod.1, self.dom.1), cod: (self.cod.0, self.dom.0) }
    }

    fn check(&self, m: &ComplexMatrix) -> Result<()> {
        let rows = self.cod.0 * self.cod.1;
        let cols = self.dom.0 * self.dom.1;
        if m.shape() != (rows, cols) {
            return Err(Error::Shape(format!(
                "matrix is {}×{} but the split {}⊗{} → {}⊗{} needs {rows}×{cols}",
                m.rows(),
                m.cols(),
                self.dom.0,
                self.dom.1,
                self.cod.0,
                self.cod.1
            )));
        }
        Ok(())
    }

    /// One factor is a scalar `C → C` on the unit.
    pub fn has_scalar_factor(&self) -> bool {
        (self.dom.0 == 1 && self.cod.0 == 1) || (self.dom.1 == 1 && self.cod.1 == 1)
    }
}

/// Index reshuffle `R[(i,j),(k,l)] = M[(i,k),(j,l)]` with `i, j` ranging
/// over the first factor's codomain and domain and `k, l` over the second's.
///
/// Turns operator Schmidt rank into ordinary matrix rank: `A ⊗ B` realigns
/// to `vec(A)·vec(B)ᵀ`.
pub fn realign(m: &ComplexMatrix, split: TensorSplit) -> Result<ComplexMatrix> {
    split.check(m)?;
    let (d1, d2) = split.dom;
    let (e1, e2) = split.cod;
    Ok(ComplexMatrix::from_fn(e1 * d1, e2 * d2, |r, c| {
        let (i, j) = (r / d1, r % d1);
        let (k, l) = (c / d2, c % d2);
        m[(i * e2 + k, j * d2 + l)]
    }))
}

/// `Σᵢ σᵢ · Lᵢ ⊗ Rᵢ` with orthonormal factor families.
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition {
    /// Descending, all strictly above the rank threshold.
    pub coefficients: Vec<f64>,
    pub left_factors: Vec<ComplexMatrix>,
    pub right_factors: Vec<ComplexMatrix>,
    pub rank: usize,
    pub split: TensorSplit,
}

impl SchmidtDecomposition {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let rows = self.split.cod.0 * self.split.cod.1;
        let cols = self.split.dom.0 * self.split.dom.1;
        let mut out = ComplexMatrix::zeros(rows, cols);
        for ((s, l), r) in self.coefficients.iter().zip(&self.left_factors).zip(&self.right_factors) {
            out = out.add(&l.kron(r).scale(C64::new(*s, 0.0))).expect("term shapes agree");
        }
        out
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.coefficients.iter().map(|s| s * s).sum()
    }
}

fn truncated(s: &[f64]) -> usize {
    let cutoff = RANK_THRESHOLD * (1.0 + s.first().copied().unwrap_or(0.0));
    s.iter().take_while(|&&x| x > cutoff).count()
}

pub fn operator_schmidt(m: &ComplexMatrix, split: TensorSplit) -> Result<SchmidtDecomposition> {
    let r = realign(m, split)?;
    let d = svd(&r);
    let rank = truncated(&d.s);
    let (d1, d2) = split.dom;
    let (e1, e2) = split.cod;
    let left_factors = (0..rank)
        .map(|i| ComplexMatrix::new(e1, d1, d.u.col(i)).expect("column length is e1·d1"))
        .collect();
    let right_factors = (0..rank)
        .map(|i| ComplexMatrix::new(e2, d2, d.v.col(i).iter().map(|z| z.conj()).collect()).expect("column length is e2·d2"))
        .collect();
    Ok(SchmidtDecomposition { coefficients: d.s[..rank].to_vec(), left_factors, right_factors, rank, split })
}

/// Schmidt decomposition of a vector in `C^{d₁} ⊗ C^{d₂}`; factors are
/// column vectors.
pub fn state_schmidt(v: &[C64], split: (usize, usize)) -> Result<SchmidtDecomposition> {
    let (d1, d2) = split;
    if v.len() != d1 * d2 {
        return Err(Error::Shape(format!("vector has length {} but the split {d1}⊗{d2} needs {}", v.len(), d1 * d2)));
    }
    operator_schmidt(&ComplexMatrix::column(v), TensorSplit::state(d1, d2))
}

/// Schmidt rank ≥ 2 for a unit vector.
pub fn is_entangled(v: &[C64], split: (usize, usize), tolerance: f64) -> Result<bool> {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > tolerance {
        return Err(Error::Normalization { norm });
    }
    Ok(state_schmidt(v, split)?.rank >= 2)
}

/// `1 − σ₁² / Σσᵢ²` over the operator Schmidt coefficients. Zero exactly
/// when the operator is a single tensor product.
pub fn coupling_measure(m: &ComplexMatrix, split: TensorSplit) -> Result<f64> {
    let sd = operator_schmidt(m, split)?;
    if sd.rank == 0 {
        return Err(Error::UndefinedMeasure);
    }
    let total = sd.sum_of_squares();
    let lead = sd.coefficients[0] * sd.coefficients[0];
    Ok((1.0 - lead / total).clamp(0.0, 1.0))
}

fn is_invertible(m: &ComplexMatrix) -> bool {
    m.is_square() && truncated(&svd(m).s) == m.rows()
}

/// Parallel decomposition with both witness isos fixed to identities:
/// `M = A ⊗ B` exactly when the operator Schmidt rank is 1.
///
/// The scalar weight goes on the left factor and the right factor's
/// largest-magnitude entry is made real positive. The zero operator and
/// splits with a scalar (`1 → 1`) factor are degenerate under every
/// policy. `Essential` also rejects invertible factors.
pub fn strict_par_decompose_tensor(
    m: &ComplexMatrix,
    split: TensorSplit,
    policy: Policy,
) -> Result<DecompositionOutcome<ComplexMatrix>> {
    let sd = operator_schmidt(m, split)?;
    let isos = (ComplexMatrix::identity(m.cols()), ComplexMatrix::identity(m.rows()));
    let (d1, d2) = split.dom;
    let (e1, e2) = split.cod;
    match sd.rank {
        0 => Ok(DecompositionOutcome::parallel(
            Verdict::DegenerateOnly,
            policy,
            (ComplexMatrix::zeros(e1, d1), ComplexMatrix::zeros(e2, d2)),
            isos,
        )),
        1 => {
            let (left, right) = gauge(sd.coefficients[0], &sd.left_factors[0], &sd.right_factors[0]);
            let grade = WitnessGrade {
                identity: false,
                degenerate: split.has_scalar_factor(),
                trivial_iso: is_invertible(&left) || is_invertible(&right),
            };
            let mut verdict = verdict_from_grades([grade], policy);
            if grade.degenerate && verdict == Verdict::Decomposable {
                verdict = Verdict::DegenerateOnly;
            }
            Ok(DecompositionOutcome::parallel(verdict, policy, (left, right), isos))
        }
        _ => Ok(DecompositionOutcome::not_decomposable(policy)),
    }
}

fn gauge(sigma: f64, left: &ComplexMatrix, right: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let peak = right.max_abs();
    // first entry within rounding of the peak, so the choice is stable
    let pivot = right
        .data()
        .iter()
        .copied()
        .find(|z| z.norm() >= peak * (1.0 - 1e-12))
        .unwrap_or(C64::new(1.0, 0.0));
    let phase = pivot / pivot.norm();
    (left.scale(phase * sigma), right.scale(phase.conj()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn swap() -> ComplexMatrix {
        ComplexMatrix::from_fn(4, 4, |r, col| if r == (col % 2) * 2 + col / 2 { c(1.0) } else { c(0.0) })
    }

    fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
    }

    fn cnot() -> ComplexMatrix {
        let p0 = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 0.0]]);
        let p1 = ComplexMatrix::from_real_rows(&[&[0.0, 0.0], &[0.0, 1.0]]);
        p0.kron(&ComplexMatrix::identity(2)).add(&p1.kron(&pauli_x())).unwrap()
    }

    #[test]
    fn swap_realigns_to_a_permutation() {
        let r = realign(&swap(), TensorSplit::square(2, 2)).unwrap();
        for i in 0..4 {
            let row_ones = (0..4).filter(|&j| r[(i, j)] == c(1.0)).count();
            let col_ones = (0..4).filter(|&j| r[(j, i)] == c(1.0)).count();
            assert_eq!((row_ones, col_ones), (1, 1));
        }
    }

    #[test]
    fn realign_of_kronecker_is_outer_product_of_vecs() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let b = ComplexMatrix::from_fn(2, 2, |i, j| C64::new(i as f64, j as f64 + 1.0));
        let r = realign(&a.kron(&b), TensorSplit::square(2, 2)).unwrap();
        let expected = ComplexMatrix::from_fn(4, 4, |p, q| a.data()[p] * b.data()[q]);
        assert_eq!(r, expected);
    }

    #[test]
    fn realign_inverts_with_the_realigned_split() {
        let m = ComplexMatrix::from_fn(6, 4, |i, j| C64::new(i as f64, j as f64 * 0.5));
        let split = TensorSplit::new((2, 2), (3, 2));
        let r = realign(&m, split).unwrap();
        assert_eq!(realign(&r, split.realigned()).unwrap(), m);
        let sq = ComplexMatrix::from_fn(4, 4, |i, j| C64::new((i * 4 + j) as f64, 1.0));
        let s = TensorSplit::square(2, 2);
        assert_eq!(realign(&realign(&sq, s).unwrap(), s).unwrap(), sq);
    }

    #[test]
    fn realign_shape_error() {
        assert!(matches!(realign(&ComplexMatrix::zeros(3, 4), TensorSplit::square(2, 2)), Err(Error::Shape(_))));
    }

    #[test]
    fn swap_has_four_unit_coefficients() {
        let sd = operator_schmidt(&swap(), TensorSplit::square(2, 2)).unwrap();
        assert_eq!(sd.rank, 4);
        for s in &sd.coefficients {
            assert!((s - 1.0).abs() < 1e-12);
        }
        assert!(sd.reconstruct().approx_eq(&swap(), 1e-12));
    }

    #[test]
    fn cnot_has_two_root_two_coefficients() {
        let sd = operator_schmidt(&cnot(), TensorSplit::square(2, 2)).unwrap();
        assert_eq!(sd.rank, 2);
        for s in &sd.coefficients {
            assert!((s - 2f64.sqrt()).abs() < 1e-12);
        }
        assert!((coupling_measure(&cnot(), TensorSplit::square(2, 2)).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn x_tensor_unit_norm_h_is_rank_one() {
        let h = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, -0.5]]);
        let m = pauli_x().kron(&h);
        let sd = operator_schmidt(&m, TensorSplit::square(2, 2)).unwrap();
        assert_eq!(sd.rank, 1);
        assert!((sd.coefficients[0] - 2f64.sqrt()).abs() < 1e-12);

        let out = strict_par_decompose_tensor(&m, TensorSplit::square(2, 2), Policy::Nondegenerate).unwrap();
        assert_eq!(out.verdict, Verdict::Decomposable);
        let (a, b) = out.factors.unwrap();
        assert!(a.kron(&b).max_abs_diff(&m) <= 1e-8);
        assert_eq!(coupling_measure(&m, TensorSplit::square(2, 2)).unwrap(), 0.0);
    }

    #[test]
    fn gauge_makes_right_peak_real_positive() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 2.0]]);
        let b = ComplexMatrix::from_fn(2, 2, |i, j| C64::new(0.0, (i + 2 * j) as f64 - 1.0));
        let out = strict_par_decompose_tensor(&a.kron(&b), TensorSplit::square(2, 2), Policy::PaperLiteral).unwrap();
        let (_, right) = out.factors.unwrap();
        let peak = right.max_abs();
        let z = right.data().iter().find(|z| z.norm() >= peak * (1.0 - 1e-12)).unwrap();
        assert!(z.im.abs() < 1e-15 && z.re > 0.0);
    }

    #[test]
    fn swap_and_zero_verdicts() {
        let split = TensorSplit::square(2, 2);
        assert_eq!(strict_par_decompose_tensor(&swap(), split, Policy::Nondegenerate).unwrap().verdict, Verdict::NotDecomposable);
        let zero = ComplexMatrix::zeros(4, 4);
        assert_eq!(strict_par_decompose_tensor(&zero, split, Policy::PaperLiteral).unwrap().verdict, Verdict::DegenerateOnly);
        assert_eq!(coupling_measure(&zero, split), Err(Error::UndefinedMeasure));
        assert!((coupling_measure(&swap(), split).unwrap() - 0.75).abs() < 1e-12);
    }

    #[test]
    fn scalar_factor_split_is_degenerate() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let out = strict_par_decompose_tensor(&m, TensorSplit::square(1, 2), Policy::PaperLiteral).unwrap();
        assert_eq!(out.verdict, Verdict::DegenerateOnly);
    }

    #[test]
    fn essential_rejects_invertible_factors() {
        let m = pauli_x().kron(&ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]));
        let split = TensorSplit::square(2, 2);
        assert_eq!(strict_par_decompose_tensor(&m, split, Policy::Essential).unwrap().verdict, Verdict::NotDecomposable);
        let singular = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 0.0]]);
        let m = singular.kron(&ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]));
        assert_eq!(strict_par_decompose_tensor(&m, split, Policy::Essential).unwrap().verdict, Verdict::Decomposable);
    }

    #[test]
    fn bell_state_is_entangled() {
        let r = 0.5f64.sqrt();
        let bell = [c(r), c(0.0), c(0.0), c(r)];
        let sd = state_schmidt(&bell, (2, 2)).unwrap();
        assert_eq!(sd.rank, 2);
        for s in &sd.coefficients {
            assert!((s - r).abs() < 1e-12);
        }
        assert!(is_entangled(&bell, (2, 2), 1e-9).unwrap());
        let product = [c(0.0), c(1.0), c(0.0), c(0.0)];
        assert!(!is_entangled(&product, (2, 2), 1e-9).unwrap());
        assert!(matches!(is_entangled(&[c(1.0), c(1.0)], (2, 1), 1e-9), Err(Error::Normalization { .. })));
        assert!(state_schmidt(&bell, (3, 2)).is_err());
    }
}
