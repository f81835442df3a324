//! Rank factorization, direct-sum splitting and linear solves.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::decomposition::{verdict_from_grades, DecompositionOutcome, Policy, Verdict, WitnessGrade};
use crate::error::{Error, Result};
use crate::linvec::matrix::{ComplexMatrix, C64};
use crate::linvec::schmidt::RANK_THRESHOLD;
use crate::linvec::svd::{svd, unitary_completion};

/// Invertibility cutoff: `σ_min > SINGULAR_THRESHOLD · σ_max`.
pub const SINGULAR_THRESHOLD: f64 = 1e-12;

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn is_identity(m: &ComplexMatrix, tol: f64) -> bool {
    m.is_square() && m.approx_eq(&ComplexMatrix::identity(m.rows()), tol)
}

/// Sequential split `M = L · R` through `C^r`, `r` the numerical rank, with
/// `L = U·√S` and `R = √S·V†`.
///
/// Identity matrices are never decomposable. A rank-0 matrix only factors
/// through `C⁰` and is reported degenerate. `Essential` rejects the split
/// when `L` or `R` is square (and so invertible), that is when
/// `r = rows` or `r = cols`. If the SVD route produces an identity factor
/// for a non-identity `M` the factors are rescaled by 2 and 1/2.
pub fn rank_factorization(m: &ComplexMatrix, policy: Policy, tolerance: f64) -> DecompositionOutcome<ComplexMatrix> {
    if is_identity(m, tolerance) {
        return DecompositionOutcome::not_decomposable(policy);
    }
    let d = svd(m);
    let r = d.rank(RANK_THRESHOLD);
    let mut left = ComplexMatrix::from_fn(m.rows(), r, |i, j| d.u[(i, j)] * d.s[j].sqrt());
    let mut right = ComplexMatrix::from_fn(r, m.cols(), |i, j| d.v[(j, i)].conj() * d.s[i].sqrt());
    if r == 0 {
        return DecompositionOutcome::sequential(Verdict::DegenerateOnly, policy, right, left);
    }
    if is_identity(&left, tolerance) || is_identity(&right, tolerance) {
        left = left.scale(real(2.0));
        right = right.scale(real(0.5));
    }
    let grade = WitnessGrade { identity: false, degenerate: false, trivial_iso: r == m.rows() || r == m.cols() };
    DecompositionOutcome::sequential(verdict_from_grades([grade], policy), policy, right, left)
}

/// How the witness isos of a direct-sum split are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DirectSumMode {
    /// Both isos are identities: the off-diagonal blocks must vanish.
    Fixed,
    /// Any invertible witnesses, found through the rank normal form.
    UpToIso,
}

impl DirectSumMode {
    pub fn as_str(self) -> &'static str {
        match self {
            DirectSumMode::Fixed => "fixed",
            DirectSumMode::UpToIso => "up_to_iso",
        }
    }
}

impl fmt::Display for DirectSumMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DirectSumMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.replace('-', "_").as_str() {
            "fixed" => Ok(DirectSumMode::Fixed),
            "up_to_iso" => Ok(DirectSumMode::UpToIso),
            other => Err(format!("unknown direct-sum mode `{other}`")),
        }
    }
}

fn is_invertible(m: &ComplexMatrix) -> bool {
    m.is_square() && svd(m).rank(RANK_THRESHOLD) == m.rows()
}

fn grade(g1: &ComplexMatrix, g2: &ComplexMatrix, tolerance: f64) -> WitnessGrade {
    WitnessGrade {
        identity: is_identity(g1, tolerance) || is_identity(g2, tolerance),
        degenerate: false,
        trivial_iso: is_invertible(g1) || is_invertible(g2),
    }
}

/// Parallel split `M ≅ M₁ ⊕ M₂` with `M₁: C^{m₁} → C^{n₁}` and
/// `M₂: C^{m₂} → C^{n₂}`.
///
/// In `UpToIso` mode `M = P⁻¹ · diag(J₁, J₂) · Q⁻¹` where `Jᵢ` are partial
/// identities sharing out the rank; this needs
/// `r ≤ min(n₁,m₁) + min(n₂,m₂)`. Every distribution of the rank is tried,
/// largest first block first. When each one has an identity block the
/// verdict is `DegenerateOnly` and the first witness is still returned.
pub fn par_decompose_directsum(
    m: &ComplexMatrix,
    split_dom: (usize, usize),
    split_cod: (usize, usize),
    mode: DirectSumMode,
    policy: Policy,
    tolerance: f64,
) -> Result<DecompositionOutcome<ComplexMatrix>> {
    let (m1, m2) = split_dom;
    let (n1, n2) = split_cod;
    if m1 + m2 != m.cols() || n1 + n2 != m.rows() || [m1, m2, n1, n2].contains(&0) {
        return Err(Error::Shape(format!(
            "split {m1}+{m2} → {n1}+{n2} does not fit a {}×{} matrix with nonzero parts",
            m.rows(),
            m.cols()
        )));
    }
    match mode {
        DirectSumMode::Fixed => {
            let scale = tolerance * (1.0 + m.max_abs());
            let off_a = m.block(0, n1, m1, m1 + m2);
            let off_b = m.block(n1, n1 + n2, 0, m1);
            if off_a.max_abs() > scale || off_b.max_abs() > scale {
                return Ok(DecompositionOutcome::not_decomposable(policy));
            }
            let g1 = m.block(0, n1, 0, m1);
            let g2 = m.block(n1, n1 + n2, m1, m1 + m2);
            let verdict = verdict_from_grades([grade(&g1, &g2, tolerance)], policy);
            let isos = (ComplexMatrix::identity(m.cols()), ComplexMatrix::identity(m.rows()));
            Ok(DecompositionOutcome::parallel(verdict, policy, (g1, g2), isos))
        }
        DirectSumMode::UpToIso => Ok(up_to_iso(m, split_dom, split_cod, policy, tolerance)),
    }
}

fn up_to_iso(
    m: &ComplexMatrix,
    (m1, m2): (usize, usize),
    (n1, n2): (usize, usize),
    policy: Policy,
    tolerance: f64,
) -> DecompositionOutcome<ComplexMatrix> {
    let d = svd(m);
    let r = d.rank(RANK_THRESHOLD);
    let (cap1, cap2) = (n1.min(m1), n2.min(m2));
    if r > cap1 + cap2 {
        return DecompositionOutcome::not_decomposable(policy);
    }
    let (rows, cols) = m.shape();
    let u = unitary_completion(&d.u);
    let v = unitary_completion(&d.v);

    let mut first = None;
    for r1 in (r.saturating_sub(cap2)..=r.min(cap1)).rev() {
        let r2 = r - r1;
        let j1 = ComplexMatrix::from_fn(n1, m1, |i, j| if i == j && i < r1 { real(1.0) } else { real(0.0) });
        let j2 = ComplexMatrix::from_fn(n2, m2, |i, j| if i == j && i < r2 { real(1.0) } else { real(0.0) });
        let g = grade(&j1, &j2, tolerance);

        // pivot k < r1 goes to (k, k); r1 ≤ k < r goes to (n₁ + k − r1, m₁ + k − r1)
        let row_slot = |k: usize| if k < r1 { k } else if k < r { n1 + k - r1 } else { free_slot(k - r, r1, r2, n1, n2) };
        let col_slot = |k: usize| if k < r1 { k } else if k < r { m1 + k - r1 } else { free_slot(k - r, r1, r2, m1, m2) };

        // dom_iso = V · Πc maps the block basis to the right singular basis
        let mut dom_iso = ComplexMatrix::zeros(cols, cols);
        for k in 0..cols {
            let slot = col_slot(k);
            for i in 0..cols {
                dom_iso[(i, slot)] = v[(i, k)];
            }
        }
        // cod_iso = U · diag(σ, 1) · Πrᵀ
        let mut cod_iso = ComplexMatrix::zeros(rows, rows);
        for k in 0..rows {
            let slot = row_slot(k);
            let w = if k < r { d.s[k] } else { 1.0 };
            for i in 0..rows {
                cod_iso[(i, slot)] = u[(i, k)] * w;
            }
        }
        let candidate = (g, (j1, j2), (dom_iso, cod_iso));
        if g.accepted(policy) {
            let (_, factors, isos) = candidate;
            return DecompositionOutcome::parallel(Verdict::Decomposable, policy, factors, isos);
        }
        first.get_or_insert(candidate);
    }
    let (g, factors, isos) = first.expect("at least one rank distribution is feasible");
    let verdict = if g.identity { Verdict::DegenerateOnly } else { verdict_from_grades([g], policy) };
    DecompositionOutcome::parallel(verdict, policy, factors, isos)
}

/// Position of the `t`-th non-pivot basis vector: first the unused slots of
/// block 1, then those of block 2.
fn free_slot(t: usize, r1: usize, r2: usize, b1: usize, b2: usize) -> usize {
    let spare1 = b1 - r1;
    if t < spare1 {
        r1 + t
    } else {
        let t2 = t - spare1;
        debug_assert!(t2 < b2 - r2);
        b1 + r2 + t2
    }
}

/// Inverse by SVD, `V · S⁻¹ · U†`.
pub fn invert(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !m.is_square() {
        return Err(Error::Shape(format!("cannot invert a {}×{} matrix", m.rows(), m.cols())));
    }
    let d = svd(m);
    if let (Some(&hi), Some(&lo)) = (d.s.first(), d.s.last()) {
        if hi == 0.0 || lo <= SINGULAR_THRESHOLD * hi {
            return Err(Error::Singular { sigma_min: lo });
        }
    }
    let vs = ComplexMatrix::from_fn(m.rows(), m.rows(), |i, j| d.v[(i, j)] / d.s[j]);
    vs.matmul(&d.u.adjoint())
}

/// `x` with `M·x = b`, refined once against the residual.
pub fn solve(m: &ComplexMatrix, b: &[C64]) -> Result<Vec<C64>> {
    if b.len() != m.rows() {
        return Err(Error::Shape(format!("right-hand side has length {} but the matrix has {} rows", b.len(), m.rows())));
    }
    let inv = invert(m)?;
    let mut x = inv.apply(b)?;
    let mx = m.apply(&x)?;
    let residual: Vec<C64> = b.iter().zip(&mx).map(|(bi, yi)| bi - yi).collect();
    for (xi, di) in x.iter_mut().zip(inv.apply(&residual)?) {
        *xi += di;
    }
    Ok(x)
}
