//! Finite sets and functions, with the disjoint-union and cartesian
//! monoidal structures, and the decomposition procedures for functions.

mod components;
mod coproduct;
mod monoidal;
mod product;
mod sequential;
mod set;

pub use components::{components, Block, ComponentPartition, DisjointSets};
pub use coproduct::{par_check_coproduct, par_decompose_coproduct, MAX_SPLIT_ITEMS};
pub use monoidal::{FinSetCat, SetProduct};
pub use product::{par_check_product, par_search_product, MAX_SEARCH_CARD};
pub use sequential::{image_factorization, seq_decompose};
pub use set::{FinFunction, FinSet, Label};

/// Default cardinality bound for [`par_search_product`].
pub const DEFAULT_SEARCH_CARD: usize = 8;
