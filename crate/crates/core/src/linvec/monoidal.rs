use serde::{Deserialize, Serialize};

use crate::category::{Category, IsoKind, Monoidal, StructuralIso};
use crate::error::{Error, Result};
use crate::linvec::ComplexMatrix;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Monoidal product on finite-dimensional complex vector spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VecProduct {
    /// `⊕`, unit `C⁰`.
    DirectSum,
    /// `⊗`, unit `C¹`.
    Tensor,
}

/// Vector spaces `C^n` (objects are dimensions) and matrices.
///
/// Both products keep basis order left factor major, so every associator
/// and unitor is an identity matrix and the structure is strict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FinVecCat {
    pub product: VecProduct,
    pub tolerance: f64,
}

impl FinVecCat {
    pub fn new(product: VecProduct) -> Self {
        FinVecCat { product, tolerance: DEFAULT_TOLERANCE }
    }

    pub fn with_tolerance(product: VecProduct, tolerance: f64) -> Self {
        FinVecCat { product, tolerance }
    }

    fn strict(kind: IsoKind, dim: usize) -> StructuralIso<ComplexMatrix> {
        let id = ComplexMatrix::identity(dim);
        StructuralIso { kind, forward: id.clone(), backward: id }
    }
}

impl Category for FinVecCat {
    type Object = usize;
    type Morphism = ComplexMatrix;

    fn dom(&self, f: &ComplexMatrix) -> usize {
        f.cols()
    }

    fn cod(&self, f: &ComplexMatrix) -> usize {
        f.rows()
    }

    fn identity(&self, a: &usize) -> ComplexMatrix {
        ComplexMatrix::identity(*a)
    }

    fn compose(&self, g: &ComplexMatrix, f: &ComplexMatrix) -> Result<ComplexMatrix> {
        if f.rows() != g.cols() {
            return Err(Error::CompositionDomain { cod: format!("C^{}", f.rows()), dom: format!("C^{}", g.cols()) });
        }
        g.matmul(f)
    }

    fn deviation(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
        a.max_abs_diff(b)
    }

    fn magnitude(&self, f: &ComplexMatrix) -> f64 {
        f.max_abs()
    }

    fn tolerance(&self) -> f64 {
        self.tolerance
    }
}

impl Monoidal for FinVecCat {
    fn unit(&self) -> usize {
        match self.product {
            VecProduct::DirectSum => 0,
            VecProduct::Tensor => 1,
        }
    }

    fn product_obj(&self, a: &usize, b: &usize) -> usize {
        match self.product {
            VecProduct::DirectSum => a + b,
            VecProduct::Tensor => a * b,
        }
    }

    fn product_mor(&self, f: &ComplexMatrix, g: &ComplexMatrix) -> ComplexMatrix {
        match self.product {
            VecProduct::DirectSum => f.direct_sum(g),
            VecProduct::Tensor => f.kron(g),
        }
    }

    fn associator(&self, a: &usize, b: &usize, c: &usize) -> StructuralIso<ComplexMatrix> {
        let dim = self.product_obj(&self.product_obj(a, b), c);
        Self::strict(IsoKind::Associator, dim)
    }

    fn left_unitor(&self, a: &usize) -> StructuralIso<ComplexMatrix> {
        Self::strict(IsoKind::LeftUnitor, *a)
    }

    fn right_unitor(&self, a: &usize) -> StructuralIso<ComplexMatrix> {
        Self::strict(IsoKind::RightUnitor, *a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_associator_is_identity() {
        let cat = FinVecCat::new(VecProduct::Tensor);
        let alpha = cat.associator(&2, &3, &2);
        assert_eq!(alpha.forward, ComplexMatrix::identity(12));
    }

    #[test]
    fn tensor_of_identities_is_identity() {
        let cat = FinVecCat::new(VecProduct::Tensor);
        assert_eq!(cat.product_mor(&cat.identity(&2), &cat.identity(&3)), cat.identity(&6));
        assert_eq!(cat.product_obj(&2, &3), 6);
    }

    #[test]
    fn composing_with_inverse_gives_identity() {
        let cat = FinVecCat::new(VecProduct::DirectSum);
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[-1.0, 1.0]]);
        let inv = ComplexMatrix::from_real_rows(&[&[0.5, -0.5], &[0.5, 0.5]]);
        let id = cat.compose(&inv, &m).unwrap();
        assert!(id.max_abs_diff(&ComplexMatrix::identity(2)) <= 1e-12);
        assert!(cat.compose(&m, &ComplexMatrix::zeros(3, 3)).is_err());
    }
}
