//! DOT output for morphisms and decomposition witnesses.

use std::fmt::Write as _;

/// A digraph with nodes keyed by id. Output is sorted by node id and by
/// `(from, to, label)`, so equal graphs print identically.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    name: String,
    nodes: Vec<(String, String)>,
    edges: Vec<(String, String, String)>,
}

impl Graph {
    pub fn new(name: impl Into<String>) -> Self {
        Graph { name: name.into(), ..Graph::default() }
    }

    pub fn node(&mut self, id: &str, label: &str) -> &mut Self {
        self.nodes.retain(|(n, _)| n != id);
        self.nodes.push((id.into(), label.into()));
        self
    }

    pub fn edge(&mut self, from: &str, to: &str, label: &str) -> &mut Self {
        self.edges.push((from.into(), to.into(), label.into()));
        self
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn render(&self) -> String {
        let mut nodes = self.nodes.clone();
        nodes.sort();
        let mut edges = self.edges.clone();
        edges.sort();
        let mut out = String::new();
        writeln!(out, "digraph {} {{", quote(&self.name)).unwrap();
        writeln!(out, "  rankdir=LR;").unwrap();
        writeln!(out, "  node [shape=plaintext];").unwrap();
        for (id, label) in &nodes {
            writeln!(out, "  {} [label={}];", quote(id), quote(label)).unwrap();
        }
        for (from, to, label) in &edges {
            writeln!(out, "  {} -> {} [label={}];", quote(from), quote(to), quote(label)).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// `f: A → B`.
pub fn morphism(name: &str, dom: &str, cod: &str) -> Graph {
    let mut g = Graph::new(name);
    g.node("dom", dom).node("cod", cod).edge("dom", "cod", name);
    g
}

/// The triangle `f = f₂ ∘ f₁` through `mid`.
pub fn sequential(name: &str, dom: &str, mid: &str, cod: &str) -> Graph {
    let mut g = morphism(name, dom, cod);
    g.node("mid", mid)
        .edge("dom", "mid", &format!("{name}₁"))
        .edge("mid", "cod", &format!("{name}₂"));
    g
}

/// The square `f ∘ dom_iso = cod_iso ∘ (f₁ ⊗ f₂)`, with `op` the product
/// symbol and the isos drawn into `dom` and `cod`.
pub fn parallel(name: &str, op: &str, dom: &str, cod: &str, factor_dom: [&str; 2], factor_cod: [&str; 2]) -> Graph {
    let mut g = morphism(name, dom, cod);
    g.node("factor_dom", &format!("{} {op} {}", factor_dom[0], factor_dom[1]))
        .node("factor_cod", &format!("{} {op} {}", factor_cod[0], factor_cod[1]))
        .edge("factor_dom", "factor_cod", &format!("{name}₁ {op} {name}₂"))
        .edge("factor_dom", "dom", "∼")
        .edge("factor_cod", "cod", "∼");
    g
}
