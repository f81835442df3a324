use crate::decomposition::{verdict_from_grades, DecompositionOutcome, Policy, Verdict, WitnessGrade};
use crate::error::{Error, Result};
use crate::finset::{FinFunction, FinSet};

/// Hard cap on domain and codomain cardinality for [`par_search_product`].
pub const MAX_SEARCH_CARD: usize = 8;

fn grade(g1: &FinFunction, g2: &FinFunction) -> WitnessGrade {
    WitnessGrade {
        identity: g1.is_identity() || g2.is_identity(),
        degenerate: g1.dom().len() < 2 || g2.dom().len() < 2,
        trivial_iso: g1.is_bijective() || g2.is_bijective(),
    }
}

/// Splits `h: C₁ × C₂ → D₁ × D₂` (indices left major) into `(g₁, g₂)` if
/// each output coordinate depends only on the matching input coordinate.
fn split_tables(h: &[usize], c: (usize, usize), d: (usize, usize)) -> Option<(Vec<usize>, Vec<usize>)> {
    let (c1, c2) = c;
    let (d1, d2) = d;
    if c1 * c2 == 0 {
        // Any pair of functions works; they exist iff nonempty sources have nonempty targets.
        if (c1 > 0 && d1 == 0) || (c2 > 0 && d2 == 0) {
            return None;
        }
        return Some((vec![0; c1], vec![0; c2]));
    }
    let g1: Vec<usize> = (0..c1).map(|i| h[i * c2] / d2).collect();
    let g2: Vec<usize> = (0..c2).map(|j| h[j] % d2).collect();
    for i in 0..c1 {
        for j in 0..c2 {
            if h[i * c2 + j] != g1[i] * d2 + g2[j] {
                return None;
            }
        }
    }
    Some((g1, g2))
}

/// Fixed-iso parallel check in `(FinSet, ×)`.
///
/// `dom_iso: C₁ × C₂ → dom(f)` and `cod_iso: D₁ × D₂ → cod(f)` must be
/// bijections. `f` is transported to `C₁ × C₂ → D₁ × D₂` and split
/// coordinatewise. When the split exists the factors are returned even if
/// the policy rejects them (e.g. identity factors under any policy).
///
/// Policies: identity factors are always rejected; `Nondegenerate` needs
/// both domain factors to have at least two elements; `Essential`
/// additionally rejects bijective factors.
pub fn par_check_product(
    f: &FinFunction,
    split_dom: (&FinSet, &FinSet),
    split_cod: (&FinSet, &FinSet),
    dom_iso: &FinFunction,
    cod_iso: &FinFunction,
    policy: Policy,
) -> Result<DecompositionOutcome<FinFunction>> {
    let dom_product = split_dom.0.product(split_dom.1);
    let cod_product = split_cod.0.product(split_cod.1);
    check_iso(dom_iso, &dom_product, f.dom(), "domain")?;
    check_iso(cod_iso, &cod_product, f.cod(), "codomain")?;

    let back = cod_iso.inverse().expect("checked bijective");
    let h = back.after(&f.after(dom_iso)?)?;
    let c = (split_dom.0.len(), split_dom.1.len());
    let d = (split_cod.0.len(), split_cod.1.len());
    let Some((t1, t2)) = split_tables(h.table(), c, d) else {
        return Ok(DecompositionOutcome::not_decomposable(policy));
    };
    let g1 = FinFunction::new_unchecked(split_dom.0.clone(), split_cod.0.clone(), t1);
    let g2 = FinFunction::new_unchecked(split_dom.1.clone(), split_cod.1.clone(), t2);
    let verdict = verdict_from_grades([grade(&g1, &g2)], policy);
    Ok(DecompositionOutcome::parallel(verdict, policy, (g1, g2), (dom_iso.clone(), cod_iso.clone())))
}

fn check_iso(iso: &FinFunction, from: &FinSet, to: &FinSet, what: &str) -> Result<()> {
    if iso.dom() != from {
        return Err(Error::Witness(format!("{what} iso must start at {from}, found {}", iso.dom())));
    }
    if iso.cod() != to {
        return Err(Error::Witness(format!("{what} iso must end at {to}, found {}", iso.cod())));
    }
    if !iso.is_bijective() {
        return Err(Error::Witness(format!("{what} iso is not a bijection")));
    }
    Ok(())
}

/// All bijections `set → rows × cols` up to relabeling rows and columns,
/// each given as `cell[x] = row * cols + col`. Rows and columns are numbered
/// in order of first appearance, which picks one representative per orbit.
fn canonical_grids(size: usize, rows: usize, cols: usize) -> Vec<Vec<usize>> {
    fn go(
        x: usize,
        size: usize,
        (rows, cols): (usize, usize),
        (rows_used, cols_used): (usize, usize),
        taken: &mut Vec<bool>,
        cell: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if x == size {
            out.push(cell.clone());
            return;
        }
        for r in 0..rows.min(rows_used + 1) {
            for c in 0..cols.min(cols_used + 1) {
                let k = r * cols + c;
                if taken[k] {
                    continue;
                }
                taken[k] = true;
                cell[x] = k;
                let used = (rows_used.max(r + 1), cols_used.max(c + 1));
                go(x + 1, size, (rows, cols), used, taken, cell, out);
                taken[k] = false;
            }
        }
    }
    debug_assert_eq!(size, rows * cols);
    let mut out = Vec::new();
    go(0, size, (rows, cols), (0, 0), &mut vec![false; size], &mut vec![0; size], &mut out);
    out
}

fn divisor_pairs(n: usize, min_factor: usize) -> Vec<(usize, usize)> {
    (min_factor..=n).filter(|a| n % a == 0 && n / a >= min_factor).map(|a| (a, n / a)).collect()
}

/// `(p, g₁ table, g₂ table, domain grid, codomain grid)`, compared lexicographically.
type Key = (usize, Vec<usize>, Vec<usize>, Vec<usize>, Vec<usize>);

fn grid_iso(grid: &[usize], product: FinSet, target: &FinSet) -> FinFunction {
    let mut table = vec![0; grid.len()];
    for (x, &k) in grid.iter().enumerate() {
        table[k] = x;
    }
    FinFunction::new_unchecked(product, target.clone(), table)
}

/// Existential parallel search in `(FinSet, ×)`: tries every cardinality
/// split `|dom| = m·n` with `m, n ≥ 2` and `|cod| = p·q`, and every
/// relabeling of domain and codomain as grids (up to row and column
/// permutations), looking for `f ≅ g₁ × g₂`.
///
/// Factor objects are fresh (`x…`, `y…` for the domain side, `u…`, `v…`
/// for the codomain side), so factors are never identities. Among all
/// witnesses accepted by the policy the one with the smallest `m`, then
/// `p`, then lexicographically least factor tables is returned.
pub fn par_search_product(f: &FinFunction, max_card: usize, policy: Policy) -> Result<DecompositionOutcome<FinFunction>> {
    if max_card > MAX_SEARCH_CARD {
        return Err(Error::Size(format!("max_card {max_card} exceeds the hard cap of {MAX_SEARCH_CARD}")));
    }
    let (n_dom, n_cod) = (f.dom().len(), f.cod().len());
    if n_dom > max_card || n_cod > max_card {
        return Err(Error::Size(format!(
            "|dom| = {n_dom} and |cod| = {n_cod} must not exceed max_card = {max_card}"
        )));
    }

    for (m, n) in divisor_pairs(n_dom, 2) {
        let dom_grids = canonical_grids(n_dom, m, n);
        let mut best: Option<(Key, (usize, usize))> = None;
        for (p, q) in divisor_pairs(n_cod, 1) {
            let cod_grids = canonical_grids(n_cod, p, q);
            for dg in &dom_grids {
                for cg in &cod_grids {
                    // transported h(cell) = cg[f(x)] where dg[x] = cell
                    let mut h = vec![0; n_dom];
                    for x in 0..n_dom {
                        h[dg[x]] = cg[f.apply(x)];
                    }
                    let Some((t1, t2)) = split_tables(&h, (m, n), (p, q)) else {
                        continue;
                    };
                    let g1 = FinFunction::new_unchecked(FinSet::numbered("x", m), FinSet::numbered("u", p), t1.clone());
                    let g2 = FinFunction::new_unchecked(FinSet::numbered("y", n), FinSet::numbered("v", q), t2.clone());
                    if !grade(&g1, &g2).accepted(policy) {
                        continue;
                    }
                    let key = (p, t1, t2, dg.clone(), cg.clone());
                    if best.as_ref().is_none_or(|(k, _)| &key < k) {
                        best = Some((key, (p, q)));
                    }
                }
            }
        }
        if let Some(((_, t1, t2, dg, cg), (p, q))) = best {
            let c1 = FinSet::numbered("x", m);
            let c2 = FinSet::numbered("y", n);
            let d1 = FinSet::numbered("u", p);
            let d2 = FinSet::numbered("v", q);
            let dom_iso = grid_iso(&dg, c1.product(&c2), f.dom());
            let cod_iso = grid_iso(&cg, d1.product(&d2), f.cod());
            let g1 = FinFunction::new_unchecked(c1, d1, t1);
            let g2 = FinFunction::new_unchecked(c2, d2, t2);
            return Ok(DecompositionOutcome::parallel(Verdict::Decomposable, policy, (g1, g2), (dom_iso, cod_iso)));
        }
    }
    Ok(DecompositionOutcome::not_decomposable(policy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::Monoidal;
    use crate::finset::FinSetCat;

    fn bit() -> FinSet {
        FinSet::new(["0", "1"]).unwrap()
    }

    fn on_bits(f: impl Fn(usize, usize) -> (usize, usize)) -> FinFunction {
        let sq = bit().product(&bit());
        FinFunction::from_fn(sq.clone(), sq, |k| {
            let (a, b) = f(k / 2, k % 2);
            a * 2 + b
        })
        .unwrap()
    }

    fn replay(f: &FinFunction, out: &DecompositionOutcome<FinFunction>) -> bool {
        let (g1, g2) = out.factors.as_ref().unwrap();
        let (di, ci) = out.witness_isos.as_ref().unwrap();
        f.after(di).unwrap() == ci.after(&FinSetCat::PRODUCT.product_mor(g1, g2)).unwrap()
    }

    #[test]
    fn negation_times_identity_splits_with_identity_isos() {
        let f = on_bits(|a, b| (1 - a, b));
        let id = FinFunction::identity(f.dom());
        let out = par_check_product(&f, (&bit(), &bit()), (&bit(), &bit()), &id, &id, Policy::PaperLiteral).unwrap();
        let (g1, g2) = out.factors.clone().unwrap();
        assert_eq!(g1.table(), &[1, 0]);
        assert!(g2.is_identity());
        assert!(replay(&f, &out));
        // the second factor is an identity, which no policy accepts
        assert_eq!(out.verdict, Verdict::NotDecomposable);
    }

    #[test]
    fn xor_does_not_split() {
        let f = on_bits(|a, b| (a ^ b, b));
        let id = FinFunction::identity(f.dom());
        let out = par_check_product(&f, (&bit(), &bit()), (&bit(), &bit()), &id, &id, Policy::PaperLiteral).unwrap();
        assert_eq!(out.verdict, Verdict::NotDecomposable);
        assert!(out.factors.is_none());
        // the oracle: f(0,0) and f(0,1) disagree in the first coordinate
        assert_ne!(f.apply(0) / 2, f.apply(1) / 2);
    }

    #[test]
    fn identity_splits_into_identities_but_is_rejected() {
        let f = on_bits(|a, b| (a, b));
        let id = FinFunction::identity(f.dom());
        let out = par_check_product(&f, (&bit(), &bit()), (&bit(), &bit()), &id, &id, Policy::PaperLiteral).unwrap();
        let (g1, g2) = out.factors.unwrap();
        assert!(g1.is_identity() && g2.is_identity());
        assert_eq!(out.verdict, Verdict::NotDecomposable);
    }

    #[test]
    fn non_bijective_iso_is_a_witness_error() {
        let f = on_bits(|a, b| (a, b));
        let squash = FinFunction::new(f.dom().clone(), f.dom().clone(), vec![0, 0, 1, 2]).unwrap();
        let id = FinFunction::identity(f.dom());
        let err = par_check_product(&f, (&bit(), &bit()), (&bit(), &bit()), &squash, &id, Policy::PaperLiteral);
        assert!(matches!(err, Err(Error::Witness(_))));
    }

    #[test]
    fn canonical_grid_counts() {
        // (mn)! / (m! n!)
        assert_eq!(canonical_grids(4, 2, 2).len(), 6);
        assert_eq!(canonical_grids(6, 2, 3).len(), 60);
        assert_eq!(canonical_grids(8, 2, 4).len(), 840);
        assert_eq!(canonical_grids(3, 1, 3).len(), 1);
    }

    #[test]
    fn prime_cardinality_never_splits() {
        let five = FinSet::numbered("e", 5);
        let f = FinFunction::from_fn(five.clone(), five, |i| (i + 1) % 5).unwrap();
        let out = par_search_product(&f, 8, Policy::PaperLiteral).unwrap();
        assert_eq!(out.verdict, Verdict::NotDecomposable);
    }

    #[test]
    fn search_finds_unstructured_negation() {
        let four = FinSet::numbered("p", 4);
        let f = FinFunction::new(four.clone(), four, vec![2, 3, 0, 1]).unwrap();
        let out = par_search_product(&f, 8, Policy::Nondegenerate).unwrap();
        assert_eq!(out.verdict, Verdict::Decomposable);
        assert!(replay(&f, &out));
        assert_eq!(par_search_product(&f, 8, Policy::Essential).unwrap().verdict, Verdict::NotDecomposable);
    }

    #[test]
    fn search_respects_size_caps() {
        let nine = FinSet::numbered("e", 9);
        let f = FinFunction::identity(&nine);
        assert!(matches!(par_search_product(&f, 8, Policy::Nondegenerate), Err(Error::Size(_))));
        assert!(matches!(par_search_product(&f, 9, Policy::Nondegenerate), Err(Error::Size(_))));
    }
}
