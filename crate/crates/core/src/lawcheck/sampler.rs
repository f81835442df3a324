use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::category::Monoidal;
use crate::finset::{FinFunction, FinSet, FinSetCat};
use crate::linvec::{ComplexMatrix, FinVecCat, C64};

/// Random generation of objects and morphisms, plus the small mutations
/// used to inject faults into an instance.
pub trait Sampler: Monoidal {
    /// Largest object size a [`crate::lawcheck::SampleSpec`] may request.
    fn max_object_size(&self) -> usize;

    fn object_of_size(&self, size: usize) -> Self::Object;

    fn size_of(&self, a: &Self::Object) -> usize;

    /// Whether a morphism `a → b` exists.
    fn hom_inhabited(&self, a: &Self::Object, b: &Self::Object) -> bool;

    fn sample_morphism(&self, rng: &mut ChaCha8Rng, a: &Self::Object, b: &Self::Object) -> Self::Morphism;

    /// Every morphism `a → b`, when that is finite.
    fn all_morphisms(&self, _a: &Self::Object, _b: &Self::Object) -> Option<Vec<Self::Morphism>> {
        None
    }

    /// A small change to the value of `f` at its first input.
    fn perturb(&self, f: &Self::Morphism) -> Self::Morphism;

    /// `f ∘ τ` with `τ` exchanging the first two inputs.
    fn swap_inputs(&self, f: &Self::Morphism) -> Self::Morphism;

    /// `τ ∘ f` with `τ` exchanging the first two outputs.
    fn swap_outputs(&self, f: &Self::Morphism) -> Self::Morphism;

    /// A natural automorphism of the identity functor applied to `f`, when
    /// one other than the identity exists (`−f` for linear maps).
    fn negate(&self, _f: &Self::Morphism) -> Option<Self::Morphism> {
        None
    }
}

impl Sampler for FinSetCat {
    fn max_object_size(&self) -> usize {
        6
    }

    fn object_of_size(&self, size: usize) -> FinSet {
        FinSet::numbered("e", size)
    }

    fn size_of(&self, a: &FinSet) -> usize {
        a.len()
    }

    fn hom_inhabited(&self, a: &FinSet, b: &FinSet) -> bool {
        a.is_empty() || !b.is_empty()
    }

    fn sample_morphism(&self, rng: &mut ChaCha8Rng, a: &FinSet, b: &FinSet) -> FinFunction {
        let table = (0..a.len()).map(|_| rng.random_range(0..b.len())).collect();
        FinFunction::new(a.clone(), b.clone(), table).expect("sampled table is in range")
    }

    fn all_morphisms(&self, a: &FinSet, b: &FinSet) -> Option<Vec<FinFunction>> {
        let (n, m) = (a.len(), b.len());
        if m == 0 {
            return Some(if n == 0 { vec![FinFunction::identity(a)] } else { vec![] });
        }
        let count = m.checked_pow(n as u32)?;
        let out = (0..count)
            .map(|mut code| {
                let mut table = vec![0; n];
                for slot in table.iter_mut().rev() {
                    *slot = code % m;
                    code /= m;
                }
                FinFunction::new(a.clone(), b.clone(), table).expect("enumerated table is in range")
            })
            .collect();
        Some(out)
    }

    fn perturb(&self, f: &FinFunction) -> FinFunction {
        let m = f.cod().len();
        let mut table = f.table().to_vec();
        if let Some(t) = table.first_mut() {
            if m >= 2 {
                *t = (*t + 1) % m;
            }
        }
        FinFunction::new(f.dom().clone(), f.cod().clone(), table).expect("perturbed table is in range")
    }

    fn swap_inputs(&self, f: &FinFunction) -> FinFunction {
        let mut table = f.table().to_vec();
        if table.len() >= 2 {
            table.swap(0, 1);
        }
        FinFunction::new(f.dom().clone(), f.cod().clone(), table).expect("permuted table is in range")
    }

    fn swap_outputs(&self, f: &FinFunction) -> FinFunction {
        let swap = |t: usize| match t {
            0 => 1,
            1 => 0,
            t => t,
        };
        let table = if f.cod().len() >= 2 { f.table().iter().map(|&t| swap(t)).collect() } else { f.table().to_vec() };
        FinFunction::new(f.dom().clone(), f.cod().clone(), table).expect("permuted table is in range")
    }
}

fn uniform_entry(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0))
}

impl Sampler for FinVecCat {
    fn max_object_size(&self) -> usize {
        4
    }

    fn object_of_size(&self, size: usize) -> usize {
        size
    }

    fn size_of(&self, a: &usize) -> usize {
        *a
    }

    fn hom_inhabited(&self, _a: &usize, _b: &usize) -> bool {
        true
    }

    /// Entries uniform in `[−1, 1] × [−1, 1]`.
    fn sample_morphism(&self, rng: &mut ChaCha8Rng, a: &usize, b: &usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(*b, *a, |_, _| uniform_entry(rng))
    }

    fn perturb(&self, f: &ComplexMatrix) -> ComplexMatrix {
        let mut g = f.clone();
        if g.rows() > 0 && g.cols() > 0 {
            g[(0, 0)] += C64::new(0.5, 0.0);
        }
        g
    }

    fn swap_inputs(&self, f: &ComplexMatrix) -> ComplexMatrix {
        let swap = |j: usize| match j {
            0 if f.cols() >= 2 => 1,
            1 => 0,
            j => j,
        };
        ComplexMatrix::from_fn(f.rows(), f.cols(), |i, j| f[(i, swap(j))])
    }

    fn swap_outputs(&self, f: &ComplexMatrix) -> ComplexMatrix {
        let swap = |i: usize| match i {
            0 if f.rows() >= 2 => 1,
            1 => 0,
            i => i,
        };
        ComplexMatrix::from_fn(f.rows(), f.cols(), |i, j| f[(swap(i), j)])
    }

    fn negate(&self, f: &ComplexMatrix) -> Option<ComplexMatrix> {
        Some(f.scale(C64::new(-1.0, 0.0)))
    }
}
