//! Monoidal categories of finite sets and of finite-dimensional complex
//! vector spaces, with sampled law checking and decision procedures for
//! sequential and parallel decomposition of morphisms.

pub mod category;
pub mod decomposition;
mod error;
pub mod finset;
mod instance;
pub mod lawcheck;
pub mod linvec;

pub use category::{Category, IsoKind, Monoidal, StructuralIso};
pub use decomposition::{DecompositionOutcome, Policy, Verdict};
pub use error::{Error, Result};
pub use instance::{CategoryId, MonoidalInstance, Morphism, MorphismBody, ObjectHandle, ObjectPayload, Point, ProductKind};
