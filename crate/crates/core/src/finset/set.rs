use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Element label of a finite set.
///
/// Products and coproducts build structured labels out of the labels of
/// their factors, so that `(A ⊕ B) ⊕ C` and `A ⊕ (B ⊕ C)` are different
/// objects with different elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Atom(String),
    /// Coproduct injection: `(x, 1)` for the left summand, `(x, 2)` for the right.
    Tagged(Box<Label>, u8),
    Pair(Box<Label>, Box<Label>),
    /// The element of the canonical singleton.
    Star,
}

impl Label {
    pub fn atom(s: impl Into<String>) -> Self {
        Label::Atom(s.into())
    }

    pub fn tagged(inner: Label, tag: u8) -> Self {
        Label::Tagged(Box::new(inner), tag)
    }

    pub fn pair(a: Label, b: Label) -> Self {
        Label::Pair(Box::new(a), Box::new(b))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Atom(s) => f.write_str(s),
            Label::Tagged(x, t) => write!(f, "({x},{t})"),
            Label::Pair(a, b) => write!(f, "({a},{b})"),
            Label::Star => f.write_str("*"),
        }
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::atom(s)
    }
}

/// A finite set with an explicit element order.
///
/// Two sets are equal iff they list the same labels in the same order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinSet {
    elements: Arc<[Label]>,
}

impl FinSet {
    pub fn new<L: Into<Label>>(labels: impl IntoIterator<Item = L>) -> Result<Self> {
        let elements: Vec<Label> = labels.into_iter().map(Into::into).collect();
        let mut sorted: Vec<&Label> = elements.iter().collect();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Object(format!("duplicate element label `{}`", w[0])));
        }
        Ok(FinSet { elements: elements.into() })
    }

    /// For labels already known to be distinct.
    pub(crate) fn from_distinct(elements: Vec<Label>) -> Self {
        debug_assert!(FinSet::new(elements.clone()).is_ok());
        FinSet { elements: elements.into() }
    }

    pub fn empty() -> Self {
        FinSet { elements: Arc::from(Vec::new()) }
    }

    pub fn singleton() -> Self {
        FinSet { elements: Arc::from(vec![Label::Star]) }
    }

    /// `{prefix0, prefix1, …}` with `n` elements.
    pub fn numbered(prefix: &str, n: usize) -> Self {
        FinSet::from_distinct((0..n).map(|i| Label::Atom(format!("{prefix}{i}"))).collect())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Label] {
        &self.elements
    }

    pub fn label(&self, i: usize) -> &Label {
        &self.elements[i]
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.elements.iter().position(|l| l == label)
    }

    /// Sub-object on the given indices, in the given order.
    pub fn subset(&self, indices: &[usize]) -> FinSet {
        FinSet::from_distinct(indices.iter().map(|&i| self.elements[i].clone()).collect())
    }

    pub fn coproduct(&self, other: &FinSet) -> FinSet {
        let elements = self
            .elements
            .iter()
            .map(|x| Label::tagged(x.clone(), 1))
            .chain(other.elements.iter().map(|y| Label::tagged(y.clone(), 2)))
            .collect();
        FinSet::from_distinct(elements)
    }

    /// Cartesian product, left factor major.
    pub fn product(&self, other: &FinSet) -> FinSet {
        let mut elements = Vec::with_capacity(self.len() * other.len());
        for a in self.elements.iter() {
            for b in other.elements.iter() {
                elements.push(Label::pair(a.clone(), b.clone()));
            }
        }
        FinSet::from_distinct(elements)
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, l) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinSet{self}")
    }
}

/// A total function between finite sets, stored as an index table:
/// element `i` of the domain maps to element `table[i]` of the codomain.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinFunction {
    dom: FinSet,
    cod: FinSet,
    table: Vec<usize>,
}

impl FinFunction {
    pub fn new(dom: FinSet, cod: FinSet, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom.len() {
            return Err(Error::Shape(format!(
                "function table has {} entries but the domain has {} elements",
                table.len(),
                dom.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&t| t >= cod.len()) {
            return Err(Error::Shape(format!(
                "function table entry {bad} is outside a codomain of {} elements",
                cod.len()
            )));
        }
        Ok(FinFunction { dom, cod, table })
    }

    pub(crate) fn new_unchecked(dom: FinSet, cod: FinSet, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), dom.len());
        debug_assert!(table.iter().all(|&t| t < cod.len()));
        FinFunction { dom, cod, table }
    }

    /// Builds a function from `(source, target)` label pairs. Every domain
    /// element must appear exactly once.
    pub fn from_pairs<'a>(
        dom: FinSet,
        cod: FinSet,
        pairs: impl IntoIterator<Item = (&'a Label, &'a Label)>,
    ) -> Result<Self> {
        let mut table = vec![usize::MAX; dom.len()];
        for (x, y) in pairs {
            let i = dom
                .index_of(x)
                .ok_or_else(|| Error::Shape(format!("`{x}` is not an element of the domain {dom}")))?;
            let j = cod
                .index_of(y)
                .ok_or_else(|| Error::Shape(format!("`{y}` is not an element of the codomain {cod}")))?;
            if table[i] != usize::MAX {
                return Err(Error::Shape(format!("`{x}` is mapped twice")));
            }
            table[i] = j;
        }
        if let Some(i) = table.iter().position(|&t| t == usize::MAX) {
            return Err(Error::Shape(format!("function is not total: `{}` has no image", dom.label(i))));
        }
        Ok(FinFunction { dom, cod, table })
    }

    pub fn from_fn(dom: FinSet, cod: FinSet, mut f: impl FnMut(usize) -> usize) -> Result<Self> {
        let table = (0..dom.len()).map(&mut f).collect();
        FinFunction::new(dom, cod, table)
    }

    pub fn identity(a: &FinSet) -> Self {
        FinFunction { dom: a.clone(), cod: a.clone(), table: (0..a.len()).collect() }
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    /// Image of a domain label.
    pub fn apply_label(&self, x: &Label) -> Option<&Label> {
        self.dom.index_of(x).map(|i| self.cod.label(self.table[i]))
    }

    pub fn then(&self, g: &FinFunction) -> Result<FinFunction> {
        g.after(self)
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &FinFunction) -> Result<FinFunction> {
        if f.cod != self.dom {
            return Err(Error::CompositionDomain { cod: f.cod.to_string(), dom: self.dom.to_string() });
        }
        let table = f.table.iter().map(|&j| self.table[j]).collect();
        Ok(FinFunction { dom: f.dom.clone(), cod: self.cod.clone(), table })
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.table.iter().enumerate().all(|(i, &t)| i == t)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        self.table.iter().all(|&t| !std::mem::replace(&mut seen[t], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.len()];
        for &t in &self.table {
            hit[t] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.len() == self.cod.len() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<FinFunction> {
        if !self.is_bijective() {
            return None;
        }
        let mut table = vec![0; self.cod.len()];
        for (i, &t) in self.table.iter().enumerate() {
            table[t] = i;
        }
        Some(FinFunction { dom: self.cod.clone(), cod: self.dom.clone(), table })
    }

    /// Codomain indices hit by the function, ascending.
    pub fn image_indices(&self) -> Vec<usize> {
        let mut hit = vec![false; self.cod.len()];
        for &t in &self.table {
            hit[t] = true;
        }
        hit.iter().enumerate().filter_map(|(j, &h)| h.then_some(j)).collect()
    }

    /// Number of domain elements on which the two functions disagree, or
    /// infinity when their domains or codomains differ.
    pub fn disagreements(&self, other: &FinFunction) -> f64 {
        if self.dom != other.dom || self.cod != other.cod {
            return f64::INFINITY;
        }
        self.table.iter().zip(&other.table).filter(|(a, b)| a != b).count() as f64
    }
}

impl fmt::Display for FinFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, &t) in self.table.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}↦{}", self.dom.label(i), self.cod.label(t))?;
        }
        write!(f, "}}: {} → {}", self.dom, self.cod)
    }
}

impl fmt::Debug for FinFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinFunction{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(labels: &[&str]) -> FinSet {
        FinSet::new(labels.iter().copied()).unwrap()
    }

    #[test]
    fn duplicate_labels_are_rejected() {
        assert!(FinSet::new(["a", "b", "a"]).is_err());
        assert!(FinSet::new(Vec::<&str>::new()).unwrap().is_empty());
    }

    #[test]
    fn coproduct_tags_sides() {
        let s = set(&["a1"]).coproduct(&set(&["a2"]));
        assert_eq!(s.to_string(), "{(a1,1),(a2,2)}");
    }

    #[test]
    fn product_is_left_major() {
        let s = set(&["0", "1"]).product(&set(&["x", "y"]));
        assert_eq!(s.to_string(), "{(0,x),(0,y),(1,x),(1,y)}");
    }

    #[test]
    fn from_pairs_rejects_partial_tables() {
        let a = set(&["a1", "a2"]);
        let b = set(&["b1"]);
        let x = Label::atom("a1");
        let y = Label::atom("b1");
        assert!(FinFunction::from_pairs(a, b, [(&x, &y)]).is_err());
    }

    #[test]
    fn composition_checks_the_middle_object() {
        let a = set(&["a"]);
        let b = set(&["b"]);
        let f = FinFunction::new(a.clone(), b.clone(), vec![0]).unwrap();
        assert!(matches!(f.after(&f), Err(Error::CompositionDomain { .. })));
        let g = FinFunction::new(b, a, vec![0]).unwrap();
        assert!(g.after(&f).unwrap().is_identity());
    }

    #[test]
    fn inverse_of_bijection_and_constant() {
        let f = FinFunction::new(set(&["a1", "a2"]), set(&["b1", "b2"]), vec![1, 0]).unwrap();
        let g = f.inverse().unwrap();
        assert!(g.after(&f).unwrap().is_identity());
        let c = FinFunction::new(set(&["1", "2"]), set(&["x"]), vec![0, 0]).unwrap();
        assert!(c.inverse().is_none());
    }
}
