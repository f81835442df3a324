//! Abstract contracts shared by the concrete instances.
//!
//! A [`Category`] supplies objects, morphisms, identities and composition.
//! A [`Monoidal`] category adds a product bifunctor, a unit object and the
//! structural isomorphisms (associator and the two unitors). Both the finite
//! set instances and the vector space instances implement these traits, and
//! the law checker is generic over them.

use std::fmt::Debug;

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub trait Category {
    type Object: Clone + Debug + PartialEq;
    type Morphism: Clone + Debug;

    fn dom(&self, f: &Self::Morphism) -> Self::Object;
    fn cod(&self, f: &Self::Morphism) -> Self::Object;

    fn identity(&self, a: &Self::Object) -> Self::Morphism;

    /// `g ∘ f`, i.e. `g` after `f`.
    fn compose(&self, g: &Self::Morphism, f: &Self::Morphism) -> Result<Self::Morphism>;

    /// Distance between two morphisms. Infinite when their types differ.
    ///
    /// Function tables report the number of disagreeing entries; matrices
    /// report the largest absolute entry difference.
    fn deviation(&self, a: &Self::Morphism, b: &Self::Morphism) -> f64;

    /// Size scale used to make [`Category::deviation`] relative.
    fn magnitude(&self, f: &Self::Morphism) -> f64;

    /// Numeric tolerance for equality. Zero for exact instances.
    fn tolerance(&self) -> f64;

    fn approx_eq(&self, a: &Self::Morphism, b: &Self::Morphism) -> bool {
        let dev = self.deviation(a, b);
        if !dev.is_finite() {
            return false;
        }
        let scale = 1.0 + self.magnitude(a).max(self.magnitude(b));
        dev <= self.tolerance() * scale
    }

    fn is_identity(&self, f: &Self::Morphism) -> bool {
        let d = self.dom(f);
        d == self.cod(f) && self.approx_eq(f, &self.identity(&d))
    }
}

/// Which structural isomorphism a [`StructuralIso`] realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoKind {
    Associator,
    LeftUnitor,
    RightUnitor,
}

/// An invertible structural morphism together with its inverse.
#[derive(Debug, Clone, PartialEq)]
pub struct StructuralIso<M> {
    pub kind: IsoKind,
    pub forward: M,
    pub backward: M,
}

pub trait Monoidal: Category {
    fn unit(&self) -> Self::Object;

    fn product_obj(&self, a: &Self::Object, b: &Self::Object) -> Self::Object;

    fn product_mor(&self, f: &Self::Morphism, g: &Self::Morphism) -> Self::Morphism;

    /// `α_{A,B,C}: (A ⊗ B) ⊗ C → A ⊗ (B ⊗ C)`.
    fn associator(
        &self,
        a: &Self::Object,
        b: &Self::Object,
        c: &Self::Object,
    ) -> StructuralIso<Self::Morphism>;

    /// `λ_A: I ⊗ A → A`.
    fn left_unitor(&self, a: &Self::Object) -> StructuralIso<Self::Morphism>;

    /// `ρ_A: A ⊗ I → A`.
    fn right_unitor(&self, a: &Self::Object) -> StructuralIso<Self::Morphism>;
}
