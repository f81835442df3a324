use crate::decomposition::{verdict_from_grades, DecompositionOutcome, Policy, Verdict, WitnessGrade};
use crate::error::{Error, Result};
use crate::finset::{components, FinFunction, FinSet};

/// More blocks plus isolated codomain elements than this and the split
/// enumeration is refused.
pub const MAX_SPLIT_ITEMS: usize = 22;

/// A candidate split of `f` over `⊕`: domain and codomain index subsets for
/// the first factor; the second factor gets the complements.
struct Split {
    dom1: Vec<usize>,
    cod1: Vec<usize>,
    dom2: Vec<usize>,
    cod2: Vec<usize>,
}

fn restrict(f: &FinFunction, dom: &[usize], cod: &[usize]) -> FinFunction {
    let mut position = vec![usize::MAX; f.cod().len()];
    for (k, &j) in cod.iter().enumerate() {
        position[j] = k;
    }
    let table = dom.iter().map(|&i| position[f.apply(i)]).collect();
    FinFunction::new_unchecked(f.dom().subset(dom), f.cod().subset(cod), table)
}

/// Retagging bijection `X₁ ⊕ X₂ → X` for index subsets `part1`, `part2` of `whole`.
fn retagging(whole: &FinSet, part1: &[usize], part2: &[usize]) -> FinFunction {
    let sum = whole.subset(part1).coproduct(&whole.subset(part2));
    FinFunction::new_unchecked(sum, whole.clone(), part1.iter().chain(part2).copied().collect())
}

fn grade(g1: &FinFunction, g2: &FinFunction) -> WitnessGrade {
    WitnessGrade {
        identity: g1.is_identity() || g2.is_identity(),
        degenerate: [g1.dom(), g1.cod(), g2.dom(), g2.cod()].iter().any(|s| s.is_empty()),
        trivial_iso: g1.is_bijective() || g2.is_bijective(),
    }
}

fn outcome(f: &FinFunction, split: &Split, verdict: Verdict, policy: Policy) -> DecompositionOutcome<FinFunction> {
    let g1 = restrict(f, &split.dom1, &split.cod1);
    let g2 = restrict(f, &split.dom2, &split.cod2);
    let isos = (retagging(f.dom(), &split.dom1, &split.dom2), retagging(f.cod(), &split.cod1, &split.cod2));
    DecompositionOutcome::parallel(verdict, policy, (g1, g2), isos)
}

/// Tie-break key: smaller first domain, then the first factor's table, then
/// the codomain assignment.
fn key(f: &FinFunction, split: &Split) -> (usize, Vec<(usize, usize)>, Vec<usize>) {
    let table = split.dom1.iter().map(|&i| (i, f.apply(i))).collect();
    (split.dom1.len(), table, split.cod1.clone())
}

/// Parallel decomposition of a function over disjoint union.
///
/// Every split is a two-colouring of the connected components of `f`
/// together with its isolated codomain elements; each colouring yields
/// restrictions `g₁`, `g₂` with `f ≅ g₁ ⊕ g₂` under retagging. The
/// returned witness minimizes `(|C₁|, g₁'s table)`.
///
/// Policies: `PaperLiteral` only excludes identity factors (empty-domain
/// factors are allowed); `Nondegenerate` needs all four factor objects
/// nonempty; `Essential` additionally rejects bijective factors.
pub fn par_decompose_coproduct(f: &FinFunction, policy: Policy) -> Result<DecompositionOutcome<FinFunction>> {
    let parts = components(f);
    let items = parts.blocks.len() + parts.isolated_cod.len();
    if items > MAX_SPLIT_ITEMS {
        return Err(Error::Size(format!(
            "{items} components and isolated elements exceed the split enumeration cap of {MAX_SPLIT_ITEMS}"
        )));
    }

    let mut best: Option<(_, Split)> = None;
    let mut degenerate: Option<(_, Split)> = None;
    for mask in 0u64..(1u64 << items) {
        let mut split = Split { dom1: Vec::new(), cod1: Vec::new(), dom2: Vec::new(), cod2: Vec::new() };
        for (b, block) in parts.blocks.iter().enumerate() {
            let (d, c) = if mask >> b & 1 == 1 {
                (&mut split.dom1, &mut split.cod1)
            } else {
                (&mut split.dom2, &mut split.cod2)
            };
            d.extend(&block.dom);
            c.extend(&block.cod);
        }
        for (k, &j) in parts.isolated_cod.iter().enumerate() {
            if mask >> (parts.blocks.len() + k) & 1 == 1 {
                split.cod1.push(j);
            } else {
                split.cod2.push(j);
            }
        }
        for v in [&mut split.dom1, &mut split.cod1, &mut split.dom2, &mut split.cod2] {
            v.sort_unstable();
        }

        let g = grade(&restrict(f, &split.dom1, &split.cod1), &restrict(f, &split.dom2, &split.cod2));
        let slot = if g.accepted(policy) {
            &mut best
        } else if g.accepted_up_to_degeneracy(policy) {
            &mut degenerate
        } else {
            continue;
        };
        let k = key(f, &split);
        if slot.as_ref().is_none_or(|(bk, _)| k < *bk) {
            *slot = Some((k, split));
        }
    }

    Ok(match (best, degenerate) {
        (Some((_, s)), _) => outcome(f, &s, Verdict::Decomposable, policy),
        (None, Some((_, s))) => outcome(f, &s, Verdict::DegenerateOnly, policy),
        (None, None) => DecompositionOutcome::not_decomposable(policy),
    })
}

/// Checks a user-supplied split `A ≅ A₁ ⊕ A₂`, `B ≅ B₁ ⊕ B₂` where the
/// parts partition the labels of `dom(f)` and `cod(f)`.
pub fn par_check_coproduct(
    f: &FinFunction,
    dom_parts: (&FinSet, &FinSet),
    cod_parts: (&FinSet, &FinSet),
    policy: Policy,
) -> Result<DecompositionOutcome<FinFunction>> {
    let dom = partition_indices(f.dom(), dom_parts, "domain")?;
    let cod = partition_indices(f.cod(), cod_parts, "codomain")?;

    let lands = |from: &[usize], into: &[usize]| from.iter().all(|&i| into.contains(&f.apply(i)));
    if !lands(&dom.0, &cod.0) || !lands(&dom.1, &cod.1) {
        return Ok(DecompositionOutcome::not_decomposable(policy));
    }
    let split = Split { dom1: dom.0, cod1: cod.0, dom2: dom.1, cod2: cod.1 };
    let g = grade(&restrict(f, &split.dom1, &split.cod1), &restrict(f, &split.dom2, &split.cod2));
    let verdict = verdict_from_grades([g], policy);
    if verdict == Verdict::NotDecomposable {
        return Ok(DecompositionOutcome::not_decomposable(policy));
    }
    Ok(outcome(f, &split, verdict, policy))
}

fn partition_indices(whole: &FinSet, parts: (&FinSet, &FinSet), what: &str) -> Result<(Vec<usize>, Vec<usize>)> {
    let locate = |part: &FinSet| -> Result<Vec<usize>> {
        part.elements()
            .iter()
            .map(|l| {
                whole
                    .index_of(l)
                    .ok_or_else(|| Error::Witness(format!("`{l}` is not an element of the {what} {whole}")))
            })
            .collect()
    };
    let first = locate(parts.0)?;
    let second = locate(parts.1)?;
    if first.len() + second.len() != whole.len() || first.iter().any(|i| second.contains(i)) {
        return Err(Error::Witness(format!("the parts do not partition the {what} {whole}")));
    }
    Ok((first, second))
}
