use crate::finset::{FinFunction, FinSet};

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

/// One connected component: domain indices and the codomain indices they
/// reach, both ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub dom: Vec<usize>,
    pub cod: Vec<usize>,
}

/// Connected components of the graph on `dom ⊔ cod` with
/// an edge `a -> f(a)` for every domain element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    /// Ordered by smallest domain index.
    pub blocks: Vec<Block>,
    /// Codomain indices with empty preimage.
    pub isolated_cod: Vec<usize>,
}

impl ComponentPartition {
    pub fn block_dom_set(&self, f: &FinFunction, block: usize) -> FinSet {
        f.dom().subset(&self.blocks[block].dom)
    }

    pub fn block_cod_set(&self, f: &FinFunction, block: usize) -> FinSet {
        f.cod().subset(&self.blocks[block].cod)
    }
}

pub fn components(f: &FinFunction) -> ComponentPartition {
    let n = f.dom().len();
    let m = f.cod().len();
    let mut sets = DisjointSets::new(n + m);
    for (a, &b) in f.table().iter().enumerate() {
        sets.union(a, n + b);
    }

    let mut root_to_block: Vec<Option<usize>> = vec![None; n + m];
    let mut blocks: Vec<Block> = Vec::new();
    for a in 0..n {
        let r = sets.find(a);
        let id = *root_to_block[r].get_or_insert_with(|| {
            blocks.push(Block { dom: Vec::new(), cod: Vec::new() });
            blocks.len() - 1
        });
        blocks[id].dom.push(a);
    }
    let mut isolated_cod = Vec::new();
    for b in 0..m {
        match root_to_block[sets.find(n + b)] {
            Some(id) => blocks[id].cod.push(b),
            None => isolated_cod.push(b),
        }
    }
    ComponentPartition { blocks, isolated_cod }
}
