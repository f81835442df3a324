//! Runtime-selected monoidal instances.
//!
//! [`MonoidalInstance`] wraps one of the four concrete structures behind a
//! single value so that callers (the CLI in particular) can pick the
//! instance from data. Objects and morphisms carry the instance they were
//! made in and every operation checks it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::category::{Category, IsoKind, Monoidal, StructuralIso};
use crate::error::{Error, Result};
use crate::finset::{FinFunction, FinSet, FinSetCat, Label, SetProduct};
use crate::linvec::{invert, ComplexMatrix, FinVecCat, VecProduct, C64, DEFAULT_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CategoryId {
    Finset,
    Vec,
}

impl CategoryId {
    pub fn as_str(self) -> &'static str {
        match self {
            CategoryId::Finset => "finset",
            CategoryId::Vec => "vec",
        }
    }
}

impl fmt::Display for CategoryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The monoidal product, which also determines the category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductKind {
    Coproduct,
    Product,
    Directsum,
    Tensor,
}

impl ProductKind {
    pub const ALL: [ProductKind; 4] = [ProductKind::Coproduct, ProductKind::Product, ProductKind::Directsum, ProductKind::Tensor];

    pub fn category(self) -> CategoryId {
        match self {
            ProductKind::Coproduct | ProductKind::Product => CategoryId::Finset,
            ProductKind::Directsum | ProductKind::Tensor => CategoryId::Vec,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ProductKind::Coproduct => "coproduct",
            ProductKind::Product => "product",
            ProductKind::Directsum => "directsum",
            ProductKind::Tensor => "tensor",
        }
    }
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProductKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        ProductKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown monoidal product `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ObjectPayload {
    Set(FinSet),
    Dim(usize),
}

/// An object tagged with the instance it belongs to.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectHandle {
    instance: ProductKind,
    payload: ObjectPayload,
}

impl ObjectHandle {
    pub fn instance(&self) -> ProductKind {
        self.instance
    }

    pub fn payload(&self) -> &ObjectPayload {
        &self.payload
    }

    pub fn as_set(&self) -> Option<&FinSet> {
        match &self.payload {
            ObjectPayload::Set(s) => Some(s),
            ObjectPayload::Dim(_) => None,
        }
    }

    pub fn as_dim(&self) -> Option<usize> {
        match self.payload {
            ObjectPayload::Dim(d) => Some(d),
            ObjectPayload::Set(_) => None,
        }
    }

    /// Cardinality or dimension.
    pub fn size(&self) -> usize {
        match &self.payload {
            ObjectPayload::Set(s) => s.len(),
            ObjectPayload::Dim(d) => *d,
        }
    }
}

impl fmt::Display for ObjectHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.payload {
            ObjectPayload::Set(s) => write!(f, "{s}"),
            ObjectPayload::Dim(d) => write!(f, "C^{d}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MorphismBody {
    Function(FinFunction),
    Linear(ComplexMatrix),
}

/// A morphism tagged with the instance it belongs to.
#[derive(Debug, Clone, PartialEq)]
pub struct Morphism {
    instance: ProductKind,
    body: MorphismBody,
}

impl Morphism {
    pub fn instance(&self) -> ProductKind {
        self.instance
    }

    pub fn body(&self) -> &MorphismBody {
        &self.body
    }

    pub fn into_body(self) -> MorphismBody {
        self.body
    }

    pub fn as_function(&self) -> Option<&FinFunction> {
        match &self.body {
            MorphismBody::Function(f) => Some(f),
            MorphismBody::Linear(_) => None,
        }
    }

    pub fn as_matrix(&self) -> Option<&ComplexMatrix> {
        match &self.body {
            MorphismBody::Linear(m) => Some(m),
            MorphismBody::Function(_) => None,
        }
    }

    pub fn dom(&self) -> ObjectHandle {
        let payload = match &self.body {
            MorphismBody::Function(f) => ObjectPayload::Set(f.dom().clone()),
            MorphismBody::Linear(m) => ObjectPayload::Dim(m.cols()),
        };
        ObjectHandle { instance: self.instance, payload }
    }

    pub fn cod(&self) -> ObjectHandle {
        let payload = match &self.body {
            MorphismBody::Function(f) => ObjectPayload::Set(f.cod().clone()),
            MorphismBody::Linear(m) => ObjectPayload::Dim(m.rows()),
        };
        ObjectHandle { instance: self.instance, payload }
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.body {
            MorphismBody::Function(g) => write!(f, "{g}"),
            MorphismBody::Linear(m) => write!(f, "{m}"),
        }
    }
}

/// A point of an object, as selected by a state `I → A`.
#[derive(Debug, Clone, PartialEq)]
pub enum Point {
    Element(Label),
    Vector(Vec<C64>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Concrete {
    Set(FinSetCat),
    Vec(FinVecCat),
}

/// A category together with one monoidal structure and the tolerance used
/// for every numeric comparison in it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonoidalInstance {
    kind: ProductKind,
    tolerance: f64,
}

impl MonoidalInstance {
    /// Finite-set instances require a tolerance of exactly zero; vector
    /// instances default to [`DEFAULT_TOLERANCE`].
    pub fn new(category: CategoryId, product: ProductKind, tolerance: Option<f64>) -> Result<Self> {
        if product.category() != category {
            return Err(Error::Instance(format!("product `{product}` does not belong to category `{category}`")));
        }
        let tolerance = match (category, tolerance) {
            (CategoryId::Finset, None | Some(0.0)) => 0.0,
            (CategoryId::Finset, Some(t)) => {
                return Err(Error::Instance(format!("finset instances are exact; tolerance must be 0, got {t}")))
            }
            (CategoryId::Vec, None) => DEFAULT_TOLERANCE,
            (CategoryId::Vec, Some(t)) if t.is_finite() && t >= 0.0 => t,
            (CategoryId::Vec, Some(t)) => return Err(Error::Instance(format!("tolerance must be a nonnegative real, got {t}"))),
        };
        Ok(MonoidalInstance { kind: product, tolerance })
    }

    pub fn finset(product: SetProduct) -> Self {
        let kind = match product {
            SetProduct::Coproduct => ProductKind::Coproduct,
            SetProduct::Product => ProductKind::Product,
        };
        MonoidalInstance { kind, tolerance: 0.0 }
    }

    pub fn vec(product: VecProduct) -> Self {
        Self::vec_with_tolerance(product, DEFAULT_TOLERANCE)
    }

    pub fn vec_with_tolerance(product: VecProduct, tolerance: f64) -> Self {
        let kind = match product {
            VecProduct::DirectSum => ProductKind::Directsum,
            VecProduct::Tensor => ProductKind::Tensor,
        };
        MonoidalInstance { kind, tolerance }
    }

    pub fn category_id(&self) -> CategoryId {
        self.kind.category()
    }

    pub fn product_kind(&self) -> ProductKind {
        self.kind
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    fn concrete(&self) -> Concrete {
        match self.kind {
            ProductKind::Coproduct => Concrete::Set(FinSetCat::COPRODUCT),
            ProductKind::Product => Concrete::Set(FinSetCat::PRODUCT),
            ProductKind::Directsum => Concrete::Vec(FinVecCat::with_tolerance(VecProduct::DirectSum, self.tolerance)),
            ProductKind::Tensor => Concrete::Vec(FinVecCat::with_tolerance(VecProduct::Tensor, self.tolerance)),
        }
    }

    pub fn set_category(&self) -> Option<FinSetCat> {
        match self.concrete() {
            Concrete::Set(c) => Some(c),
            Concrete::Vec(_) => None,
        }
    }

    pub fn vec_category(&self) -> Option<FinVecCat> {
        match self.concrete() {
            Concrete::Vec(c) => Some(c),
            Concrete::Set(_) => None,
        }
    }

    fn wrong_category(&self, what: &str) -> Error {
        Error::Instance(format!("{what} does not belong to a {} instance", self.category_id()))
    }

    pub fn set_object(&self, set: FinSet) -> Result<ObjectHandle> {
        match self.category_id() {
            CategoryId::Finset => Ok(ObjectHandle { instance: self.kind, payload: ObjectPayload::Set(set) }),
            CategoryId::Vec => Err(self.wrong_category("a finite set")),
        }
    }

    pub fn dim_object(&self, dim: usize) -> Result<ObjectHandle> {
        match self.category_id() {
            CategoryId::Vec => Ok(ObjectHandle { instance: self.kind, payload: ObjectPayload::Dim(dim) }),
            CategoryId::Finset => Err(self.wrong_category("a dimension")),
        }
    }

    pub fn function(&self, f: FinFunction) -> Result<Morphism> {
        match self.category_id() {
            CategoryId::Finset => Ok(self.wrap(MorphismBody::Function(f))),
            CategoryId::Vec => Err(self.wrong_category("a function table")),
        }
    }

    pub fn matrix(&self, m: ComplexMatrix) -> Result<Morphism> {
        match self.category_id() {
            CategoryId::Vec => Ok(self.wrap(MorphismBody::Linear(m))),
            CategoryId::Finset => Err(self.wrong_category("a matrix")),
        }
    }

    fn wrap(&self, body: MorphismBody) -> Morphism {
        Morphism { instance: self.kind, body }
    }

    fn own_object<'a>(&self, a: &'a ObjectHandle) -> Result<&'a ObjectPayload> {
        if a.instance != self.kind {
            return Err(Error::Instance(format!("object {a} belongs to the {} instance, not {}", a.instance, self.kind)));
        }
        Ok(&a.payload)
    }

    fn own_morphism<'a>(&self, f: &'a Morphism) -> Result<&'a MorphismBody> {
        if f.instance != self.kind {
            return Err(Error::Instance(format!("morphism belongs to the {} instance, not {}", f.instance, self.kind)));
        }
        Ok(&f.body)
    }

    fn set_of<'a>(&self, a: &'a ObjectHandle) -> Result<&'a FinSet> {
        self.own_object(a)?;
        a.as_set().ok_or_else(|| self.wrong_category("a dimension"))
    }

    fn dim_of(&self, a: &ObjectHandle) -> Result<usize> {
        self.own_object(a)?;
        a.as_dim().ok_or_else(|| self.wrong_category("a finite set"))
    }

    fn function_of<'a>(&self, f: &'a Morphism) -> Result<&'a FinFunction> {
        self.own_morphism(f)?;
        f.as_function().ok_or_else(|| self.wrong_category("a matrix"))
    }

    fn matrix_of<'a>(&self, f: &'a Morphism) -> Result<&'a ComplexMatrix> {
        self.own_morphism(f)?;
        f.as_matrix().ok_or_else(|| self.wrong_category("a function table"))
    }

    pub fn unit(&self) -> ObjectHandle {
        let payload = match self.concrete() {
            Concrete::Set(c) => ObjectPayload::Set(c.unit()),
            Concrete::Vec(c) => ObjectPayload::Dim(c.unit()),
        };
        ObjectHandle { instance: self.kind, payload }
    }

    pub fn is_unit(&self, a: &ObjectHandle) -> bool {
        *a == self.unit()
    }

    pub fn identity(&self, a: &ObjectHandle) -> Result<Morphism> {
        let body = match self.concrete() {
            Concrete::Set(c) => MorphismBody::Function(c.identity(self.set_of(a)?)),
            Concrete::Vec(c) => MorphismBody::Linear(c.identity(&self.dim_of(a)?)),
        };
        Ok(self.wrap(body))
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: &Morphism, f: &Morphism) -> Result<Morphism> {
        let body = match self.concrete() {
            Concrete::Set(c) => MorphismBody::Function(c.compose(self.function_of(g)?, self.function_of(f)?)?),
            Concrete::Vec(c) => MorphismBody::Linear(c.compose(self.matrix_of(g)?, self.matrix_of(f)?)?),
        };
        Ok(self.wrap(body))
    }

    pub fn mproduct_obj(&self, a: &ObjectHandle, b: &ObjectHandle) -> Result<ObjectHandle> {
        let payload = match self.concrete() {
            Concrete::Set(c) => ObjectPayload::Set(c.product_obj(self.set_of(a)?, self.set_of(b)?)),
            Concrete::Vec(c) => ObjectPayload::Dim(c.product_obj(&self.dim_of(a)?, &self.dim_of(b)?)),
        };
        Ok(ObjectHandle { instance: self.kind, payload })
    }

    pub fn mproduct_mor(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        let body = match self.concrete() {
            Concrete::Set(c) => MorphismBody::Function(c.product_mor(self.function_of(f)?, self.function_of(g)?)),
            Concrete::Vec(c) => MorphismBody::Linear(c.product_mor(self.matrix_of(f)?, self.matrix_of(g)?)),
        };
        Ok(self.wrap(body))
    }

    /// `α_{A,B,C}` takes three objects, `λ_A` and `ρ_A` take one.
    pub fn structural_iso(&self, kind: IsoKind, objects: &[ObjectHandle]) -> Result<StructuralIso<Morphism>> {
        let arity = if kind == IsoKind::Associator { 3 } else { 1 };
        if objects.len() != arity {
            return Err(Error::Domain(format!("{kind:?} takes {arity} object(s), got {}", objects.len())));
        }
        fn lift<M>(iso: StructuralIso<M>, wrap: impl Fn(M) -> Morphism) -> StructuralIso<Morphism> {
            StructuralIso { kind: iso.kind, forward: wrap(iso.forward), backward: wrap(iso.backward) }
        }
        match self.concrete() {
            Concrete::Set(c) => {
                let sets: Vec<&FinSet> = objects.iter().map(|a| self.set_of(a)).collect::<Result<_>>()?;
                let iso = match kind {
                    IsoKind::Associator => c.associator(sets[0], sets[1], sets[2]),
                    IsoKind::LeftUnitor => c.left_unitor(sets[0]),
                    IsoKind::RightUnitor => c.right_unitor(sets[0]),
                };
                Ok(lift(iso, |f| self.wrap(MorphismBody::Function(f))))
            }
            Concrete::Vec(c) => {
                let dims: Vec<usize> = objects.iter().map(|a| self.dim_of(a)).collect::<Result<_>>()?;
                let iso = match kind {
                    IsoKind::Associator => c.associator(&dims[0], &dims[1], &dims[2]),
                    IsoKind::LeftUnitor => c.left_unitor(&dims[0]),
                    IsoKind::RightUnitor => c.right_unitor(&dims[0]),
                };
                Ok(lift(iso, |m| self.wrap(MorphismBody::Linear(m))))
            }
        }
    }

    /// The inverse of `f` if it is an isomorphism: a bijection, or a square
    /// matrix invertible under the instance tolerance.
    pub fn iso_check(&self, f: &Morphism) -> Result<Option<Morphism>> {
        match self.concrete() {
            Concrete::Set(_) => Ok(self.function_of(f)?.inverse().map(|g| self.wrap(MorphismBody::Function(g)))),
            Concrete::Vec(c) => {
                let m = self.matrix_of(f)?;
                let Ok(inv) = invert(m) else { return Ok(None) };
                let n = m.rows();
                let id = ComplexMatrix::identity(n);
                let both = c.approx_eq(&m.matmul(&inv)?, &id) && c.approx_eq(&inv.matmul(m)?, &id);
                Ok(both.then(|| self.wrap(MorphismBody::Linear(inv))))
            }
        }
    }

    pub fn deviation(&self, a: &Morphism, b: &Morphism) -> Result<f64> {
        Ok(match self.concrete() {
            Concrete::Set(c) => c.deviation(self.function_of(a)?, self.function_of(b)?),
            Concrete::Vec(c) => c.deviation(self.matrix_of(a)?, self.matrix_of(b)?),
        })
    }

    pub fn approx_eq(&self, a: &Morphism, b: &Morphism) -> Result<bool> {
        Ok(match self.concrete() {
            Concrete::Set(c) => c.approx_eq(self.function_of(a)?, self.function_of(b)?),
            Concrete::Vec(c) => c.approx_eq(self.matrix_of(a)?, self.matrix_of(b)?),
        })
    }

    /// The state `I → A` selecting `point`. Available in the cartesian
    /// finite-set instance and the tensor instance, where the unit is a
    /// singleton or `C¹`.
    pub fn state_embed(&self, a: &ObjectHandle, point: &Point) -> Result<Morphism> {
        match (self.kind, point) {
            (ProductKind::Product, Point::Element(x)) => {
                let set = self.set_of(a)?;
                let j = set.index_of(x).ok_or_else(|| Error::Domain(format!("`{x}` is not an element of {set}")))?;
                Ok(self.wrap(MorphismBody::Function(FinFunction::new(FinSet::singleton(), set.clone(), vec![j])?)))
            }
            (ProductKind::Tensor, Point::Vector(v)) => {
                let dim = self.dim_of(a)?;
                if v.len() != dim {
                    return Err(Error::Shape(format!("vector of length {} is not a point of C^{dim}", v.len())));
                }
                Ok(self.wrap(MorphismBody::Linear(ComplexMatrix::new(dim, 1, v.clone())?)))
            }
            (ProductKind::Product | ProductKind::Tensor, _) => Err(Error::Domain("point does not match the object kind".into())),
            _ => Err(Error::Instance(format!(
                "states need a singleton or one-dimensional unit; the {} instance does not have one",
                self.kind
            ))),
        }
    }

    pub fn state_extract(&self, f: &Morphism) -> Result<Point> {
        let dom = f.dom();
        self.own_object(&dom)?;
        if !self.is_unit(&dom) {
            return Err(Error::Domain(format!("domain {dom} is not the unit object {}", self.unit())));
        }
        match &f.body {
            MorphismBody::Function(g) => Ok(Point::Element(g.cod().label(g.apply(0)).clone())),
            MorphismBody::Linear(m) => Ok(Point::Vector(m.data().to_vec())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(labels: &[&str]) -> FinSet {
        FinSet::new(labels.iter().copied()).unwrap()
    }

    #[test]
    fn rejects_mismatched_configuration() {
        assert!(MonoidalInstance::new(CategoryId::Finset, ProductKind::Tensor, None).is_err());
        assert!(MonoidalInstance::new(CategoryId::Finset, ProductKind::Coproduct, Some(1e-9)).is_err());
        assert!(MonoidalInstance::new(CategoryId::Vec, ProductKind::Tensor, Some(-1.0)).is_err());
        let inst = MonoidalInstance::new(CategoryId::Vec, ProductKind::Directsum, None).unwrap();
        assert_eq!(inst.tolerance(), DEFAULT_TOLERANCE);
        assert_eq!(inst.unit().as_dim(), Some(0));
    }

    #[test]
    fn squares_then_cubes() {
        let inst = MonoidalInstance::finset(SetProduct::Product);
        let a = set(&["-1", "0", "2"]);
        let b = set(&["0", "1", "4"]);
        let c = set(&["0", "1", "64"]);
        let f = inst.function(FinFunction::new(a, b.clone(), vec![1, 0, 2]).unwrap()).unwrap();
        let g = inst.function(FinFunction::new(b, c, vec![0, 1, 2]).unwrap()).unwrap();
        let gf = inst.compose(&g, &f).unwrap();
        let h = gf.as_function().unwrap();
        assert_eq!(h.apply_label(&Label::atom("2")), Some(&Label::atom("64")));
        assert_eq!(h.apply_label(&Label::atom("-1")), Some(&Label::atom("1")));
        assert!(inst.compose(&f, &g).is_err());
    }

    #[test]
    fn cross_instance_use_is_an_error() {
        let sum = MonoidalInstance::finset(SetProduct::Coproduct);
        let prod = MonoidalInstance::finset(SetProduct::Product);
        let a = sum.set_object(set(&["a"])).unwrap();
        assert!(matches!(prod.identity(&a), Err(Error::Instance(_))));
        assert!(matches!(sum.dim_object(2), Err(Error::Instance(_))));
    }

    #[test]
    fn iso_check_on_both_categories() {
        let inst = MonoidalInstance::vec(VecProduct::Tensor);
        let m = inst.matrix(ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[-1.0, 1.0]])).unwrap();
        let inv = inst.iso_check(&m).unwrap().unwrap();
        let expected = ComplexMatrix::from_real_rows(&[&[0.5, -0.5], &[0.5, 0.5]]);
        assert!(inv.as_matrix().unwrap().approx_eq(&expected, 1e-14));
        let id = inst.compose(&m, &inv).unwrap();
        assert!(id.as_matrix().unwrap().max_abs_diff(&ComplexMatrix::identity(2)) <= 1e-12);

        let sets = MonoidalInstance::finset(SetProduct::Coproduct);
        let constant = sets.function(FinFunction::new(set(&["1", "2"]), set(&["x"]), vec![0, 0]).unwrap()).unwrap();
        assert_eq!(sets.iso_check(&constant).unwrap(), None);
        let swap = sets.function(FinFunction::new(set(&["a1", "a2"]), set(&["b1", "b2"]), vec![1, 0]).unwrap()).unwrap();
        let inv = sets.iso_check(&swap).unwrap().unwrap();
        assert_eq!(inv.as_function().unwrap().table(), &[1, 0]);
    }

    #[test]
    fn structural_iso_arity_and_inverse() {
        let inst = MonoidalInstance::finset(SetProduct::Coproduct);
        let a = inst.set_object(set(&["a1", "a2"])).unwrap();
        assert!(inst.structural_iso(IsoKind::Associator, &[a.clone()]).is_err());
        let lambda = inst.structural_iso(IsoKind::LeftUnitor, &[a.clone()]).unwrap();
        let round = inst.compose(&lambda.backward, &lambda.forward).unwrap();
        assert!(inst.approx_eq(&round, &inst.identity(&lambda.forward.dom()).unwrap()).unwrap());
        let f = lambda.forward.as_function().unwrap();
        assert_eq!(f.apply_label(&Label::tagged(Label::atom("a1"), 2)), Some(&Label::atom("a1")));
    }

    #[test]
    fn states_round_trip() {
        let inst = MonoidalInstance::finset(SetProduct::Product);
        let b = inst.set_object(set(&["b1", "b2"])).unwrap();
        let s = inst.state_embed(&b, &Point::Element(Label::atom("b1"))).unwrap();
        assert_eq!(s.as_function().unwrap().image_indices(), vec![0]);
        assert_eq!(inst.state_extract(&s).unwrap(), Point::Element(Label::atom("b1")));

        let vec = MonoidalInstance::vec(VecProduct::Tensor);
        let r = 0.5f64.sqrt();
        let bell = vec![C64::new(r, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(r, 0.0)];
        let four = vec.dim_object(4).unwrap();
        let s = vec.state_embed(&four, &Point::Vector(bell.clone())).unwrap();
        assert_eq!(s.as_matrix().unwrap().shape(), (4, 1));
        assert_eq!(vec.state_extract(&s).unwrap(), Point::Vector(bell));

        let m = vec.matrix(ComplexMatrix::identity(2)).unwrap();
        assert!(matches!(vec.state_extract(&m), Err(Error::Domain(_))));
        let sum = MonoidalInstance::finset(SetProduct::Coproduct);
        let a = sum.set_object(set(&["a"])).unwrap();
        assert!(matches!(sum.state_embed(&a, &Point::Element(Label::atom("a"))), Err(Error::Instance(_))));
    }
}
