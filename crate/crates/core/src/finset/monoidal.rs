use serde::{Deserialize, Serialize};

use crate::category::{Category, IsoKind, Monoidal, StructuralIso};
use crate::error::Result;
use crate::finset::{FinFunction, FinSet};

/// Monoidal product on finite sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SetProduct {
    /// Disjoint union `⊕` with the empty set as unit.
    Coproduct,
    /// Cartesian product `×` with the canonical singleton as unit.
    Product,
}

/// The category of finite sets and functions with one chosen monoidal
/// structure. Equality is exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FinSetCat {
    pub product: SetProduct,
}

impl FinSetCat {
    pub const COPRODUCT: FinSetCat = FinSetCat { product: SetProduct::Coproduct };
    pub const PRODUCT: FinSetCat = FinSetCat { product: SetProduct::Product };

    /// Structural isos on finite sets are relabelings whose index table is
    /// the identity permutation: every construction here lists elements
    /// left factor major, so `((a,b),c)` and `(a,(b,c))` sit at the same
    /// position in their respective sets.
    fn relabeling(kind: IsoKind, from: FinSet, to: FinSet) -> StructuralIso<FinFunction> {
        debug_assert_eq!(from.len(), to.len());
        let table: Vec<usize> = (0..from.len()).collect();
        StructuralIso {
            kind,
            forward: FinFunction::new_unchecked(from.clone(), to.clone(), table.clone()),
            backward: FinFunction::new_unchecked(to, from, table),
        }
    }
}

impl Category for FinSetCat {
    type Object = FinSet;
    type Morphism = FinFunction;

    fn dom(&self, f: &FinFunction) -> FinSet {
        f.dom().clone()
    }

    fn cod(&self, f: &FinFunction) -> FinSet {
        f.cod().clone()
    }

    fn identity(&self, a: &FinSet) -> FinFunction {
        FinFunction::identity(a)
    }

    fn compose(&self, g: &FinFunction, f: &FinFunction) -> Result<FinFunction> {
        g.after(f)
    }

    fn deviation(&self, a: &FinFunction, b: &FinFunction) -> f64 {
        a.disagreements(b)
    }

    fn magnitude(&self, _f: &FinFunction) -> f64 {
        0.0
    }

    fn tolerance(&self) -> f64 {
        0.0
    }

    fn is_identity(&self, f: &FinFunction) -> bool {
        f.is_identity()
    }
}

impl Monoidal for FinSetCat {
    fn unit(&self) -> FinSet {
        match self.product {
            SetProduct::Coproduct => FinSet::empty(),
            SetProduct::Product => FinSet::singleton(),
        }
    }

    fn product_obj(&self, a: &FinSet, b: &FinSet) -> FinSet {
        match self.product {
            SetProduct::Coproduct => a.coproduct(b),
            SetProduct::Product => a.product(b),
        }
    }

    fn product_mor(&self, f: &FinFunction, g: &FinFunction) -> FinFunction {
        let dom = self.product_obj(f.dom(), g.dom());
        let cod = self.product_obj(f.cod(), g.cod());
        let table = match self.product {
            SetProduct::Coproduct => {
                let shift = f.cod().len();
                f.table().iter().copied().chain(g.table().iter().map(|&t| t + shift)).collect()
            }
            SetProduct::Product => {
                let width = g.cod().len();
                let mut table = Vec::with_capacity(dom.len());
                for &i in f.table() {
                    for &j in g.table() {
                        table.push(i * width + j);
                    }
                }
                table
            }
        };
        FinFunction::new_unchecked(dom, cod, table)
    }

    fn associator(&self, a: &FinSet, b: &FinSet, c: &FinSet) -> StructuralIso<FinFunction> {
        let left = self.product_obj(&self.product_obj(a, b), c);
        let right = self.product_obj(a, &self.product_obj(b, c));
        Self::relabeling(IsoKind::Associator, left, right)
    }

    fn left_unitor(&self, a: &FinSet) -> StructuralIso<FinFunction> {
        let from = self.product_obj(&self.unit(), a);
        Self::relabeling(IsoKind::LeftUnitor, from, a.clone())
    }

    fn right_unitor(&self, a: &FinSet) -> StructuralIso<FinFunction> {
        let from = self.product_obj(a, &self.unit());
        Self::relabeling(IsoKind::RightUnitor, from, a.clone())
    }
}
