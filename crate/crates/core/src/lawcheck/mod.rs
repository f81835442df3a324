//! Sampled verification of the category, bifunctor, naturality and
//! coherence laws of a monoidal instance.
//!
//! Every law draws its inputs from its own ChaCha8 stream seeded from
//! [`SampleSpec::seed`], so reports are reproducible and independent of
//! which other laws are checked.

mod fault;
mod laws;
mod sampler;

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use fault::{Fault, Faulty};
pub use sampler::Sampler;

/// At most this many failures are recorded per report; the full count is in
/// [`LawReport::failure_count`].
pub const MAX_RECORDED_FAILURES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub seed: u64,
    /// Inclusive bounds on cardinality (sets) or dimension (vector spaces).
    pub object_size_range: (usize, usize),
    /// Number of morphisms produced by [`sample`].
    pub morphism_count: usize,
    pub trial_count: usize,
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec { seed: 1, object_size_range: (0, 3), morphism_count: 8, trial_count: 100 }
    }
}

impl SampleSpec {
    pub fn new(seed: u64, object_size_range: (usize, usize), trial_count: usize) -> Self {
        SampleSpec { seed, object_size_range, trial_count, ..SampleSpec::default() }
    }

    pub fn validate<C: Sampler>(&self, cat: &C) -> Result<()> {
        let (lo, hi) = self.object_size_range;
        if lo > hi {
            return Err(Error::Spec(format!("object size range ({lo}, {hi}) is empty")));
        }
        if hi > cat.max_object_size() {
            return Err(Error::Spec(format!("object size {hi} exceeds the limit {} for this instance", cat.max_object_size())));
        }
        if self.trial_count == 0 {
            return Err(Error::Spec("trial count must be at least 1".into()));
        }
        Ok(())
    }

    pub(crate) fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LawId {
    Assoc,
    Identity,
    Interchange,
    NaturalityAlpha,
    NaturalityLambda,
    NaturalityRho,
    Triangle,
    Pentagon,
}

impl LawId {
    pub const ALL: [LawId; 8] = [
        LawId::Assoc,
        LawId::Identity,
        LawId::Interchange,
        LawId::NaturalityAlpha,
        LawId::NaturalityLambda,
        LawId::NaturalityRho,
        LawId::Triangle,
        LawId::Pentagon,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LawId::Assoc => "assoc",
            LawId::Identity => "identity",
            LawId::Interchange => "interchange",
            LawId::NaturalityAlpha => "naturality_alpha",
            LawId::NaturalityLambda => "naturality_lambda",
            LawId::NaturalityRho => "naturality_rho",
            LawId::Triangle => "triangle",
            LawId::Pentagon => "pentagon",
        }
    }

    fn stream(self) -> u64 {
        self as u64 + 1
    }
}

impl fmt::Display for LawId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LawId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        LawId::ALL.into_iter().find(|l| l.as_str() == s).ok_or_else(|| format!("unknown law `{s}`"))
    }
}

/// One failing comparison: the sampled inputs and both sides of the law.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawFailure {
    pub trial: usize,
    pub inputs: String,
    pub left: String,
    pub right: String,
    /// `None` when the two sides do not even have the same type (or one
    /// side could not be computed).
    pub deviation: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawReport {
    pub law: LawId,
    pub trials: usize,
    pub failure_count: usize,
    pub failures: Vec<LawFailure>,
    /// Largest finite deviation seen over all comparisons.
    pub max_deviation: f64,
}

impl LawReport {
    pub(crate) fn new(law: LawId) -> Self {
        LawReport { law, trials: 0, failure_count: 0, failures: Vec::new(), max_deviation: 0.0 }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

/// Objects and morphisms drawn from an instance.
#[derive(Debug, Clone)]
pub struct Sample<C: Sampler> {
    pub objects: Vec<C::Object>,
    pub morphisms: Vec<C::Morphism>,
}

/// `morphism_count` random morphisms between random objects, from a stream
/// separate from those of the law checks.
pub fn sample<C: Sampler>(cat: &C, spec: &SampleSpec) -> Result<Sample<C>> {
    spec.validate(cat)?;
    let mut rng = spec.rng(0);
    let mut objects = Vec::new();
    let mut morphisms = Vec::new();
    for _ in 0..spec.morphism_count {
        let chain = laws::chain(cat, &mut rng, spec.object_size_range, 2);
        morphisms.push(cat.sample_morphism(&mut rng, &chain[0], &chain[1]));
        objects.extend(chain);
    }
    Ok(Sample { objects, morphisms })
}

pub fn check_law<C: Sampler>(cat: &C, spec: &SampleSpec, law: LawId) -> Result<LawReport> {
    spec.validate(cat)?;
    Ok(laws::run_random(cat, spec, law))
}

/// `assoc` and `identity`.
pub fn check_category<C: Sampler>(cat: &C, spec: &SampleSpec) -> Result<[LawReport; 2]> {
    Ok([check_law(cat, spec, LawId::Assoc)?, check_law(cat, spec, LawId::Identity)?])
}

pub fn check_interchange<C: Sampler>(cat: &C, spec: &SampleSpec) -> Result<LawReport> {
    check_law(cat, spec, LawId::Interchange)
}

/// Naturality of `α`, `λ` and `ρ`, including that each component's
/// backward map inverts its forward map.
pub fn check_naturality<C: Sampler>(cat: &C, spec: &SampleSpec) -> Result<[LawReport; 3]> {
    Ok([
        check_law(cat, spec, LawId::NaturalityAlpha)?,
        check_law(cat, spec, LawId::NaturalityLambda)?,
        check_law(cat, spec, LawId::NaturalityRho)?,
    ])
}

/// Triangle and pentagon.
pub fn check_coherence<C: Sampler>(cat: &C, spec: &SampleSpec) -> Result<[LawReport; 2]> {
    Ok([check_law(cat, spec, LawId::Triangle)?, check_law(cat, spec, LawId::Pentagon)?])
}

/// All eight laws in [`LawId::ALL`] order.
pub fn check_all<C: Sampler>(cat: &C, spec: &SampleSpec) -> Result<Vec<LawReport>> {
    LawId::ALL.into_iter().map(|law| check_law(cat, spec, law)).collect()
}

/// Largest object size accepted by [`check_exhaustive`].
pub const EXHAUSTIVE_MAX_SIZE: usize = 2;

/// Every law over every object of size `0..=max_size` and every morphism
/// between them. Only available for instances with finite hom-sets.
pub fn check_exhaustive<C: Sampler>(cat: &C, max_size: usize) -> Result<Vec<LawReport>> {
    if max_size > EXHAUSTIVE_MAX_SIZE {
        return Err(Error::Spec(format!("exhaustive mode supports object sizes up to {EXHAUSTIVE_MAX_SIZE}, got {max_size}")));
    }
    let probe = cat.object_of_size(0);
    if cat.all_morphisms(&probe, &probe).is_none() {
        return Err(Error::Spec("exhaustive mode needs finite hom-sets".into()));
    }
    Ok(LawId::ALL.into_iter().map(|law| laws::run_exhaustive(cat, max_size, law)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::FinSetCat;
    use crate::linvec::{FinVecCat, VecProduct};

    #[test]
    fn spec_bounds_are_enforced() {
        let sets = FinSetCat::COPRODUCT;
        let vecs = FinVecCat::new(VecProduct::Tensor);
        assert!(SampleSpec::new(1, (0, 6), 1).validate(&sets).is_ok());
        assert!(SampleSpec::new(1, (0, 7), 1).validate(&sets).is_err());
        assert!(SampleSpec::new(1, (0, 5), 1).validate(&vecs).is_err());
        assert!(SampleSpec::new(1, (2, 1), 1).validate(&vecs).is_err());
        assert!(SampleSpec::new(1, (0, 1), 0).validate(&vecs).is_err());
    }

    #[test]
    fn sampling_is_reproducible() {
        let sets = FinSetCat::PRODUCT;
        let spec = SampleSpec::new(1, (0, 3), 10);
        let a = sample(&sets, &spec).unwrap();
        let b = sample(&sets, &spec).unwrap();
        assert_eq!(a.morphisms, b.morphisms);
        let c = sample(&sets, &SampleSpec { seed: 2, ..spec }).unwrap();
        assert_ne!(a.morphisms, c.morphisms);
    }

    #[test]
    fn every_law_holds_on_every_instance() {
        let spec = SampleSpec::new(7, (0, 3), 40);
        for cat in [FinSetCat::COPRODUCT, FinSetCat::PRODUCT] {
            for report in check_all(&cat, &spec).unwrap() {
                assert!(report.passed(), "{report:?}");
                assert_eq!(report.max_deviation, 0.0);
            }
        }
        for product in [VecProduct::DirectSum, VecProduct::Tensor] {
            for report in check_all(&FinVecCat::new(product), &spec).unwrap() {
                assert!(report.passed(), "{report:?}");
                assert!(report.max_deviation <= 1e-12, "{report:?}");
            }
        }
    }

    #[test]
    fn exhaustive_mode_on_small_sets() {
        for cat in [FinSetCat::COPRODUCT, FinSetCat::PRODUCT] {
            let reports = check_exhaustive(&cat, 2).unwrap();
            assert_eq!(reports.len(), 8);
            assert!(reports.iter().all(LawReport::passed));
            assert!(reports.iter().all(|r| r.trials > 0));
        }
        assert!(check_exhaustive(&FinSetCat::COPRODUCT, 3).is_err());
        assert!(check_exhaustive(&FinVecCat::new(VecProduct::Tensor), 1).is_err());
    }
}
