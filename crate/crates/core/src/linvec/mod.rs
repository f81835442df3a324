//! Finite-dimensional complex vector spaces with the direct-sum and tensor
//! monoidal structures, a small dense numerical kernel and the
//! decomposition procedures for linear maps.

mod factor;
mod matrix;
mod monoidal;
mod schmidt;
mod svd;

pub use factor::{invert, par_decompose_directsum, rank_factorization, solve, DirectSumMode, SINGULAR_THRESHOLD};
pub use matrix::{ComplexMatrix, C64};
pub use monoidal::{FinVecCat, VecProduct, DEFAULT_TOLERANCE};
pub use schmidt::{
    coupling_measure, is_entangled, operator_schmidt, realign, state_schmidt, strict_par_decompose_tensor,
    SchmidtDecomposition, TensorSplit, RANK_THRESHOLD,
};
pub use svd::{svd, Svd};
