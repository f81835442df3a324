use moncat::finset::{
    components, image_factorization, par_decompose_coproduct, par_search_product, seq_decompose, FinFunction, FinSet,
    FinSetCat,
};
use moncat::{Monoidal, Policy, Verdict};
use proptest::prelude::*;

fn function(n: usize, m: usize, table: Vec<usize>) -> FinFunction {
    FinFunction::new(FinSet::numbered("e", n), FinSet::numbered("e", m), table).unwrap()
}

/// Random total functions; labels overlap between domain and codomain so
/// that identity restrictions actually occur.
fn functions(max: usize) -> impl Strategy<Value = FinFunction> {
    (0..=max, 0..=max)
        .prop_filter("no functions into the empty set", |&(n, m)| n == 0 || m > 0)
        .prop_flat_map(|(n, m)| proptest::collection::vec(0..m.max(1), n).prop_map(move |t| function(n, m, t)))
}

/// Verdict over every split of domain and codomain into two index sets,
/// checked directly against the policy definitions.
fn coproduct_oracle(f: &FinFunction, policy: Policy) -> Verdict {
    let (n, m) = (f.dom().len(), f.cod().len());
    let mut accepted = false;
    let mut up_to_degeneracy = false;
    for dmask in 0u32..1 << n {
        for cmask in 0u32..1 << m {
            let side = |mask: u32, i: usize| mask >> i & 1 == 1;
            if (0..n).any(|i| side(dmask, i) != side(cmask, f.apply(i))) {
                continue;
            }
            let mut identity = false;
            let mut degenerate = false;
            let mut bijective = false;
            for part in [true, false] {
                let dom: Vec<usize> = (0..n).filter(|&i| side(dmask, i) == part).collect();
                let cod: Vec<usize> = (0..m).filter(|&j| side(cmask, j) == part).collect();
                let dom_labels: Vec<_> = dom.iter().map(|&i| f.dom().label(i)).collect();
                let cod_labels: Vec<_> = cod.iter().map(|&j| f.cod().label(j)).collect();
                let maps_to_self = dom.iter().all(|&i| f.cod().label(f.apply(i)) == f.dom().label(i));
                identity |= dom_labels == cod_labels && maps_to_self;
                degenerate |= dom.is_empty() || cod.is_empty();
                let mut hit: Vec<usize> = dom.iter().map(|&i| f.apply(i)).collect();
                hit.sort_unstable();
                hit.dedup();
                bijective |= dom.len() == cod.len() && hit.len() == dom.len();
            }
            if identity {
                continue;
            }
            let ok_ignoring_degeneracy = match policy {
                Policy::PaperLiteral | Policy::Nondegenerate => true,
                Policy::Essential => !bijective,
            };
            let ok = ok_ignoring_degeneracy && (policy == Policy::PaperLiteral || !degenerate);
            accepted |= ok;
            up_to_degeneracy |= ok_ignoring_degeneracy;
        }
    }
    if accepted {
        Verdict::Decomposable
    } else if up_to_degeneracy {
        Verdict::DegenerateOnly
    } else {
        Verdict::NotDecomposable
    }
}

fn replays(f: &FinFunction, g1: &FinFunction, g2: &FinFunction, dom_iso: &FinFunction, cod_iso: &FinFunction, cat: FinSetCat) -> bool {
    let left = f.after(dom_iso).unwrap();
    let right = cod_iso.after(&cat.product_mor(g1, g2)).unwrap();
    left == right
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn coproduct_verdicts_match_the_oracle(f in functions(4)) {
        for policy in Policy::ALL {
            let out = par_decompose_coproduct(&f, policy).unwrap();
            prop_assert_eq!(out.verdict, coproduct_oracle(&f, policy), "{} under {}", f, policy);
            if out.verdict == Verdict::Decomposable {
                let (g1, g2) = out.factors.unwrap();
                let (di, ci) = out.witness_isos.unwrap();
                prop_assert!(replays(&f, &g1, &g2, &di, &ci, FinSetCat::COPRODUCT));
            }
        }
    }

    #[test]
    fn components_partition_the_domain(f in functions(6)) {
        let parts = components(&f);
        let mut seen_dom = vec![0; f.dom().len()];
        let mut seen_cod = vec![0; f.cod().len()];
        for block in &parts.blocks {
            for &i in &block.dom {
                seen_dom[i] += 1;
                prop_assert!(block.cod.contains(&f.apply(i)));
            }
            for &j in &block.cod {
                seen_cod[j] += 1;
            }
        }
        for &j in &parts.isolated_cod {
            seen_cod[j] += 1;
            prop_assert!(!f.table().contains(&j));
        }
        prop_assert!(seen_dom.iter().all(|&c| c == 1));
        prop_assert!(seen_cod.iter().all(|&c| c == 1));
    }

    #[test]
    fn image_factorization_replays(f in functions(6)) {
        let (e, m) = image_factorization(&f);
        prop_assert_eq!(m.after(&e).unwrap(), f.clone());
        prop_assert!(e.is_surjective());
        prop_assert!(m.is_injective());
        for policy in Policy::ALL {
            let out = seq_decompose(&f, policy);
            if let Some((first, second)) = out.factors {
                prop_assert_eq!(second.after(&first).unwrap(), f.clone());
                if out.verdict == Verdict::Decomposable {
                    prop_assert!(!first.is_identity() && !second.is_identity());
                }
            }
        }
    }
}

fn non_identity(max_dom: usize, max_cod: usize) -> impl Strategy<Value = FinFunction> {
    (2..=max_dom, 1..=max_cod).prop_flat_map(|(n, m)| {
        proptest::collection::vec(0..m, n)
            .prop_map(move |t| FinFunction::new(FinSet::numbered("a", n), FinSet::numbered("b", m), t).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_search_finds_constructed_products(
        g1 in non_identity(4, 4),
        g2 in non_identity(4, 4),
        seed in any::<u64>(),
    ) {
        let cat = FinSetCat::PRODUCT;
        prop_assume!(g1.dom().len() * g2.dom().len() <= 8 && g1.cod().len() * g2.cod().len() <= 8);
        let h = cat.product_mor(&g1, &g2);
        // scramble both sides with seeded permutations
        let perm = |n: usize, salt: u64| {
            let mut p: Vec<usize> = (0..n).collect();
            let mut state = seed ^ salt;
            for i in (1..n).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                p.swap(i, (state >> 33) as usize % (i + 1));
            }
            p
        };
        let pd = perm(h.dom().len(), 1);
        let pc = perm(h.cod().len(), 2);
        let dom = FinSet::numbered("s", h.dom().len());
        let cod = FinSet::numbered("t", h.cod().len());
        let mut table = vec![0; dom.len()];
        for i in 0..dom.len() {
            table[pd[i]] = pc[h.apply(i)];
        }
        let f = FinFunction::new(dom, cod, table).unwrap();
        let out = par_search_product(&f, 8, Policy::Nondegenerate).unwrap();
        prop_assert_eq!(out.verdict, Verdict::Decomposable);
        let (a, b) = out.factors.unwrap();
        let (di, ci) = out.witness_isos.unwrap();
        prop_assert!(replays(&f, &a, &b, &di, &ci, cat));
    }
}
