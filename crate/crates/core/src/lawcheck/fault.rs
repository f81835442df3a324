use std::fmt;

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::category::{Category, Monoidal, StructuralIso};
use crate::error::Result;
use crate::lawcheck::{LawId, Sampler};

/// A single deliberate defect, each aimed at one law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fault {
    /// Composites change their value at the first input.
    PerturbedCompose,
    /// Identities exchange their first two inputs (or negate, for
    /// matrices).
    TwistedIdentity,
    /// Products of morphisms change their value at the first input.
    PerturbedProduct,
    /// The associator is precomposed with a swap.
    UnnaturalAssociator,
    UnnaturalLeftUnitor,
    UnnaturalRightUnitor,
    /// The left unitor is replaced by a natural but incoherent one (`−λ`
    /// for matrices; a swap for sets, which have no such alternative).
    IncoherentLeftUnitor,
    IncoherentAssociator,
}

impl Fault {
    pub const ALL: [Fault; 8] = [
        Fault::PerturbedCompose,
        Fault::TwistedIdentity,
        Fault::PerturbedProduct,
        Fault::UnnaturalAssociator,
        Fault::UnnaturalLeftUnitor,
        Fault::UnnaturalRightUnitor,
        Fault::IncoherentLeftUnitor,
        Fault::IncoherentAssociator,
    ];

    pub fn target(self) -> LawId {
        match self {
            Fault::PerturbedCompose => LawId::Assoc,
            Fault::TwistedIdentity => LawId::Identity,
            Fault::PerturbedProduct => LawId::Interchange,
            Fault::UnnaturalAssociator => LawId::NaturalityAlpha,
            Fault::UnnaturalLeftUnitor => LawId::NaturalityLambda,
            Fault::UnnaturalRightUnitor => LawId::NaturalityRho,
            Fault::IncoherentLeftUnitor => LawId::Triangle,
            Fault::IncoherentAssociator => LawId::Pentagon,
        }
    }
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `inner` with one [`Fault`] injected.
#[derive(Debug, Clone, Copy)]
pub struct Faulty<C> {
    pub inner: C,
    pub fault: Fault,
}

impl<C: Sampler> Faulty<C> {
    pub fn new(inner: C, fault: Fault) -> Self {
        Faulty { inner, fault }
    }

    fn swapped(&self, iso: StructuralIso<C::Morphism>) -> StructuralIso<C::Morphism> {
        StructuralIso {
            kind: iso.kind,
            forward: self.inner.swap_inputs(&iso.forward),
            backward: self.inner.swap_outputs(&iso.backward),
        }
    }

    fn incoherent(&self, iso: StructuralIso<C::Morphism>) -> StructuralIso<C::Morphism> {
        match (self.inner.negate(&iso.forward), self.inner.negate(&iso.backward)) {
            (Some(forward), Some(backward)) => StructuralIso { kind: iso.kind, forward, backward },
            _ => self.swapped(iso),
        }
    }
}

impl<C: Sampler> Category for Faulty<C> {
    type Object = C::Object;
    type Morphism = C::Morphism;

    fn dom(&self, f: &C::Morphism) -> C::Object {
        self.inner.dom(f)
    }

    fn cod(&self, f: &C::Morphism) -> C::Object {
        self.inner.cod(f)
    }

    fn identity(&self, a: &C::Object) -> C::Morphism {
        let id = self.inner.identity(a);
        if self.fault != Fault::TwistedIdentity {
            return id;
        }
        self.inner.negate(&id).unwrap_or_else(|| self.inner.swap_inputs(&id))
    }

    fn compose(&self, g: &C::Morphism, f: &C::Morphism) -> Result<C::Morphism> {
        let gf = self.inner.compose(g, f)?;
        Ok(if self.fault == Fault::PerturbedCompose { self.inner.perturb(&gf) } else { gf })
    }

    fn deviation(&self, a: &C::Morphism, b: &C::Morphism) -> f64 {
        self.inner.deviation(a, b)
    }

    fn magnitude(&self, f: &C::Morphism) -> f64 {
        self.inner.magnitude(f)
    }

    fn tolerance(&self) -> f64 {
        self.inner.tolerance()
    }
}

impl<C: Sampler> Monoidal for Faulty<C> {
    fn unit(&self) -> C::Object {
        self.inner.unit()
    }

    fn product_obj(&self, a: &C::Object, b: &C::Object) -> C::Object {
        self.inner.product_obj(a, b)
    }

    fn product_mor(&self, f: &C::Morphism, g: &C::Morphism) -> C::Morphism {
        let fg = self.inner.product_mor(f, g);
        if self.fault == Fault::PerturbedProduct {
            self.inner.perturb(&fg)
        } else {
            fg
        }
    }

    fn associator(&self, a: &C::Object, b: &C::Object, c: &C::Object) -> StructuralIso<C::Morphism> {
        let iso = self.inner.associator(a, b, c);
        match self.fault {
            Fault::UnnaturalAssociator => self.swapped(iso),
            Fault::IncoherentAssociator => self.incoherent(iso),
            _ => iso,
        }
    }

    fn left_unitor(&self, a: &C::Object) -> StructuralIso<C::Morphism> {
        let iso = self.inner.left_unitor(a);
        match self.fault {
            Fault::UnnaturalLeftUnitor => self.swapped(iso),
            Fault::IncoherentLeftUnitor => self.incoherent(iso),
            _ => iso,
        }
    }

    fn right_unitor(&self, a: &C::Object) -> StructuralIso<C::Morphism> {
        let iso = self.inner.right_unitor(a);
        match self.fault {
            Fault::UnnaturalRightUnitor => self.swapped(iso),
            _ => iso,
        }
    }
}

impl<C: Sampler> Sampler for Faulty<C> {
    fn max_object_size(&self) -> usize {
        self.inner.max_object_size()
    }

    fn object_of_size(&self, size: usize) -> C::Object {
        self.inner.object_of_size(size)
    }

    fn size_of(&self, a: &C::Object) -> usize {
        self.inner.size_of(a)
    }

    fn hom_inhabited(&self, a: &C::Object, b: &C::Object) -> bool {
        self.inner.hom_inhabited(a, b)
    }

    fn sample_morphism(&self, rng: &mut ChaCha8Rng, a: &C::Object, b: &C::Object) -> C::Morphism {
        self.inner.sample_morphism(rng, a, b)
    }

    fn all_morphisms(&self, a: &C::Object, b: &C::Object) -> Option<Vec<C::Morphism>> {
        self.inner.all_morphisms(a, b)
    }

    fn perturb(&self, f: &C::Morphism) -> C::Morphism {
        self.inner.perturb(f)
    }

    fn swap_inputs(&self, f: &C::Morphism) -> C::Morphism {
        self.inner.swap_inputs(f)
    }

    fn swap_outputs(&self, f: &C::Morphism) -> C::Morphism {
        self.inner.swap_outputs(f)
    }

    fn negate(&self, f: &C::Morphism) -> Option<C::Morphism> {
        self.inner.negate(f)
    }
}
