use crate::decomposition::{DecompositionOutcome, Policy, Verdict, WitnessGrade};
use crate::finset::{FinFunction, FinSet, Label};

/// `{c1, …, ck}`, primed as often as needed to differ from every set in `avoid`.
pub(crate) fn fresh_set(k: usize, avoid: &[&FinSet]) -> FinSet {
    let mut prefix = String::from("c");
    loop {
        let s = FinSet::from_distinct((1..=k).map(|i| Label::Atom(format!("{prefix}{i}"))).collect());
        if avoid.iter().all(|a| **a != s) {
            return s;
        }
        prefix.push('\'');
    }
}

/// Epi-mono factorization `f = m ∘ e` through the image of `f`, with the
/// image listed in codomain order and labeled by codomain labels.
pub fn image_factorization(f: &FinFunction) -> (FinFunction, FinFunction) {
    let image = f.image_indices();
    let mut position = vec![usize::MAX; f.cod().len()];
    for (k, &j) in image.iter().enumerate() {
        position[j] = k;
    }
    let c = f.cod().subset(&image);
    let e = FinFunction::new_unchecked(f.dom().clone(), c.clone(), f.table().iter().map(|&j| position[j]).collect());
    let m = FinFunction::new_unchecked(c, f.cod().clone(), image);
    (e, m)
}

fn relabel_middle(e: &FinFunction, m: &FinFunction, middle: FinSet) -> (FinFunction, FinFunction) {
    (
        FinFunction::new_unchecked(e.dom().clone(), middle.clone(), e.table().to_vec()),
        FinFunction::new_unchecked(middle, m.cod().clone(), m.table().to_vec()),
    )
}

/// Sequential decomposition `f = second ∘ first` of a function.
///
/// Identity morphisms are never decomposable. Under `PaperLiteral` and
/// `Nondegenerate` the witness is the image factorization, moved onto a
/// freshly labeled copy of the image when one of its factors would
/// otherwise be an identity. A function out of the empty set only
/// factors through an empty-domain first factor, which `Nondegenerate`
/// rejects.
///
/// Under `Essential` neither factor may be injective or surjective. Such a
/// witness exists iff `f` is neither injective nor surjective; the search
/// runs over intermediate sizes up to `|dom| + |cod|` and returns the
/// smallest intermediate with lexicographically least tables.
pub fn seq_decompose(f: &FinFunction, policy: Policy) -> DecompositionOutcome<FinFunction> {
    if f.is_identity() {
        return DecompositionOutcome::not_decomposable(policy);
    }
    match policy {
        Policy::PaperLiteral | Policy::Nondegenerate => {
            let (first, second) = literal_witness(f);
            let grade = WitnessGrade { identity: false, degenerate: f.dom().is_empty(), trivial_iso: false };
            let verdict = crate::decomposition::verdict_from_grades([grade], policy);
            DecompositionOutcome::sequential(verdict, policy, first, second)
        }
        Policy::Essential => match essential_witness(f) {
            Some((first, second)) => DecompositionOutcome::sequential(Verdict::Decomposable, policy, first, second),
            None => DecompositionOutcome::not_decomposable(policy),
        },
    }
}

fn literal_witness(f: &FinFunction) -> (FinFunction, FinFunction) {
    let (e, m) = image_factorization(f);
    if !e.is_identity() && !m.is_identity() {
        return (e, m);
    }
    if f.dom().is_empty() {
        // f: ∅ → B with B nonempty (f is not the identity on ∅).
        let c = fresh_set(1, &[f.dom(), f.cod()]);
        let first = FinFunction::new_unchecked(f.dom().clone(), c.clone(), Vec::new());
        let second = FinFunction::new_unchecked(c, f.cod().clone(), vec![0]);
        return (first, second);
    }
    let c = fresh_set(e.cod().len(), &[f.dom(), f.cod()]);
    relabel_middle(&e, &m, c)
}

fn essential_witness(f: &FinFunction) -> Option<(FinFunction, FinFunction)> {
    if f.is_injective() || f.is_surjective() {
        return None;
    }
    let n = f.dom().len();
    let image_size = f.image_indices().len();
    for k in image_size + 1..=n + f.cod().len() {
        let mut first = vec![0; n];
        if let Some(second) = search_first(f, k, 0, &mut first) {
            let c = fresh_set(k, &[f.dom(), f.cod()]);
            return Some((
                FinFunction::new_unchecked(f.dom().clone(), c.clone(), first),
                FinFunction::new_unchecked(c, f.cod().clone(), second),
            ));
        }
    }
    None
}

/// Depth-first search over first-factor tables in lexicographic order.
fn search_first(f: &FinFunction, k: usize, a: usize, first: &mut Vec<usize>) -> Option<Vec<usize>> {
    let n = f.dom().len();
    if a == n {
        let mut used = vec![false; k];
        for &c in first.iter() {
            used[c] = true;
        }
        let distinct = used.iter().filter(|&&u| u).count();
        // first must be neither injective nor surjective
        if distinct == n || distinct == k {
            return None;
        }
        return search_second(f, first, &used);
    }
    for c in 0..k {
        // f(a) = second(first(a)) forces collisions of `first` to stay inside fibres of f
        let compatible = (0..a).all(|b| first[b] != c || f.apply(b) == f.apply(a));
        if compatible {
            first[a] = c;
            if let Some(second) = search_first(f, k, a + 1, first) {
                return Some(second);
            }
        }
    }
    None
}

fn search_second(f: &FinFunction, first: &[usize], used: &[bool]) -> Option<Vec<usize>> {
    let k = used.len();
    let m = f.cod().len();
    let mut second = vec![usize::MAX; k];
    for (a, &c) in first.iter().enumerate() {
        second[c] = f.apply(a);
    }
    let free: Vec<usize> = (0..k).filter(|&c| !used[c]).collect();
    let mut choice = vec![0usize; free.len()];
    loop {
        for (slot, &c) in free.iter().enumerate() {
            second[c] = choice[slot];
        }
        let g = FinFunction::new_unchecked(FinSet::numbered("", k), f.cod().clone(), second.clone());
        if !g.is_injective() && !g.is_surjective() {
            return Some(second);
        }
        // odometer, last slot fastest so tables come out in lexicographic order
        let mut slot = free.len();
        loop {
            if slot == 0 {
                return None;
            }
            slot -= 1;
            choice[slot] += 1;
            if choice[slot] < m {
                break;
            }
            choice[slot] = 0;
        }
    }
}
