//! Singular value decomposition by one-sided (Hestenes) Jacobi rotations.
//!
//! Deterministic for a fixed input: the sweep order is cyclic by column
//! pairs and ties in the final sort are broken by column index.

use crate::linvec::matrix::{ComplexMatrix, C64};

const MAX_SWEEPS: usize = 80;

/// Thin SVD `M = U · diag(S) · V†` with `k = min(rows, cols)` columns in
/// `U` (rows × k) and `V` (cols × k), and `S` descending.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub s: Vec<f64>,
    pub v: ComplexMatrix,
}

impl Svd {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let k = self.s.len();
        let us = ComplexMatrix::from_fn(self.u.rows(), k, |i, j| self.u[(i, j)] * self.s[j]);
        us.matmul(&self.v.adjoint()).expect("svd factor shapes agree")
    }

    /// Number of singular values above `rel · (1 + σ₁)`.
    pub fn rank(&self, rel: f64) -> usize {
        let cutoff = rel * (1.0 + self.s.first().copied().unwrap_or(0.0));
        self.s.iter().take_while(|&&s| s > cutoff).count()
    }
}

pub fn svd(m: &ComplexMatrix) -> Svd {
    if m.rows() < m.cols() {
        let t = svd_tall(&m.adjoint());
        return Svd { u: t.v, s: t.s, v: t.u };
    }
    svd_tall(m)
}

fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm_sqr(a: &[C64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum()
}

/// rows ≥ cols
fn svd_tall(m: &ComplexMatrix) -> Svd {
    let (rows, n) = m.shape();
    let mut a: Vec<Vec<C64>> = (0..n).map(|j| m.col(j)).collect();
    let mut v: Vec<Vec<C64>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) }).collect())
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = norm_sqr(&a[p]);
                let beta = norm_sqr(&a[q]);
                let gamma = dot(&a[p], &a[q]);
                let g = gamma.norm();
                if g == 0.0 || g <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut a, p, q, c, s, phase);
                rotate(&mut v, p, q, c, s, phase);
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = a.iter().map(|col| norm_sqr(col).sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]).then(i.cmp(&j)));

    let s: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let mut u_cols: Vec<Option<Vec<C64>>> = order
        .iter()
        .map(|&j| {
            let sigma = norms[j];
            (sigma > f64::MIN_POSITIVE * 1e10).then(|| a[j].iter().map(|x| x / sigma).collect())
        })
        .collect();
    complete_orthonormal(rows, &mut u_cols);

    let u_cols: Vec<Vec<C64>> = u_cols.into_iter().map(|c| c.expect("completed")).collect();
    let u = ComplexMatrix::from_fn(rows, n, |i, j| u_cols[j][i]);
    let v = ComplexMatrix::from_fn(n, n, |i, j| v[order[j]][i]);
    Svd { u, s, v }
}

/// `(a_p, a_q) ← (c·a_p − s·e^{-iφ}·a_q, s·e^{iφ}·a_p + c·a_q)`.
fn rotate(cols: &mut [Vec<C64>], p: usize, q: usize, c: f64, s: f64, phase: C64) {
    let (left, right) = cols.split_at_mut(q);
    let (cp, cq) = (&mut left[p], &mut right[0]);
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let (xp, yq) = (*x, *y);
        *x = xp * c - phase.conj() * yq * s;
        *y = phase * xp * s + yq * c;
    }
}

/// Fills the `None` slots with unit vectors orthogonal to every other column
/// (Gram–Schmidt against the standard basis, applied twice).
pub(crate) fn complete_orthonormal(dim: usize, cols: &mut [Option<Vec<C64>>]) {
    for slot in 0..cols.len() {
        if cols[slot].is_some() {
            continue;
        }
        let mut best: Option<(f64, Vec<C64>)> = None;
        for e in 0..dim {
            let mut w = vec![C64::new(0.0, 0.0); dim];
            w[e] = C64::new(1.0, 0.0);
            for _ in 0..2 {
                for c in cols.iter().flatten() {
                    let proj = dot(c, &w);
                    for (wi, ci) in w.iter_mut().zip(c) {
                        *wi -= proj * ci;
                    }
                }
            }
            let n = norm_sqr(&w).sqrt();
            if best.as_ref().is_none_or(|(bn, _)| n > *bn) {
                best = Some((n, w));
            }
        }
        let (n, w) = best.expect("completion needs dim > number of filled columns");
        cols[slot] = Some(w.into_iter().map(|x| x / n).collect());
    }
}

/// Extends orthonormal columns `q` (dim × k) to a dim × dim unitary.
pub(crate) fn unitary_completion(q: &ComplexMatrix) -> ComplexMatrix {
    let (dim, k) = q.shape();
    let mut cols: Vec<Option<Vec<C64>>> = (0..k).map(|j| Some(q.col(j))).collect();
    cols.extend((k..dim).map(|_| None));
    complete_orthonormal(dim, &mut cols);
    let cols: Vec<Vec<C64>> = cols.into_iter().map(|c| c.expect("completed")).collect();
    ComplexMatrix::from_fn(dim, dim, |i, j| cols[j][i])
}
