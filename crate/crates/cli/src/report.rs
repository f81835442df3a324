//! Serializable command reports and their text rendering.

use std::fmt::Write as _;

use moncat::lawcheck::{Fault, LawReport};
use moncat::linvec::C64;
use moncat::{Morphism, MorphismBody, ObjectHandle, ObjectPayload, Policy, Verdict};
use serde::{Deserialize, Serialize};

use crate::document::Table;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub command: CommandEcho,
    pub instance: InstanceEcho,
    /// Tolerance actually used, after flag and environment overrides.
    pub tolerance: f64,
    pub result: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommandEcho {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morphism: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub policy: Option<Policy>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sizes: Option<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exhaustive: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inject: Option<Fault>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceEcho {
    pub category: String,
    pub product: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Laws {
        passed: bool,
        reports: Vec<LawReport>,
    },
    /// Sequential factors are `[first, second]`; parallel ones `[g1, g2]`
    /// with `witness_isos = [dom_iso, cod_iso]`.
    Decomposition {
        verdict: Verdict,
        shape: Shape,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        factors: Option<[MorphismValue; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        witness_isos: Option<[MorphismValue; 2]>,
        /// Deviation between the two sides of the witness diagram.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        replay_deviation: Option<f64>,
    },
    Entanglement {
        entangled: bool,
        split: [usize; 2],
        schmidt_rank: usize,
        coefficients: Vec<f64>,
    },
    Coupling {
        value: f64,
        schmidt_rank: usize,
        coefficients: Vec<f64>,
    },
    Solution {
        x: Vec<[f64; 2]>,
        residual: f64,
    },
    Diagram {
        dot: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Sequential,
    Parallel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectValue {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
}

impl From<&ObjectHandle> for ObjectValue {
    fn from(a: &ObjectHandle) -> Self {
        match a.payload() {
            ObjectPayload::Set(s) => {
                ObjectValue { elements: Some(s.elements().iter().map(ToString::to_string).collect()), dim: None }
            }
            ObjectPayload::Dim(d) => ObjectValue { elements: None, dim: Some(*d) },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismValue {
    pub dom: ObjectValue,
    pub cod: ObjectValue,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<[f64; 2]>>>,
}

impl From<&Morphism> for MorphismValue {
    fn from(f: &Morphism) -> Self {
        let (dom, cod) = ((&f.dom()).into(), (&f.cod()).into());
        match f.body() {
            MorphismBody::Function(g) => {
                let table = g
                    .dom()
                    .elements()
                    .iter()
                    .enumerate()
                    .map(|(i, x)| (x.to_string(), g.cod().label(g.apply(i)).to_string()))
                    .collect();
                MorphismValue { dom, cod, table: Some(Table(table)), matrix: None }
            }
            MorphismBody::Linear(m) => {
                let rows = (0..m.rows()).map(|r| (0..m.cols()).map(|c| pair(m[(r, c)])).collect()).collect();
                MorphismValue { dom, cod, table: None, matrix: Some(rows) }
            }
        }
    }
}

pub fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

impl Report {
    pub fn to_json(&self) -> String {
        crate::json::pretty(self)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.command;
        write!(out, "{}", c.name).unwrap();
        if let Some(m) = &c.morphism {
            write!(out, " {m}").unwrap();
        }
        writeln!(out, " in ({}, {})", self.instance.category, self.instance.product).unwrap();
        let mut settings = Vec::new();
        if let Some(p) = c.policy {
            settings.push(format!("policy {p}"));
        }
        if let Some(m) = &c.mode {
            settings.push(format!("mode {m}"));
        }
        if let Some(s) = &c.split {
            settings.push(format!("split {s}"));
        }
        if let Some(s) = c.seed {
            settings.push(format!("seed {s}"));
        }
        if let Some(t) = c.trials {
            settings.push(format!("{t} trials"));
        }
        if let Some((lo, hi)) = c.sizes {
            settings.push(format!("sizes {lo}..={hi}"));
        }
        if c.exhaustive == Some(true) {
            settings.push("exhaustive".into());
        }
        if let Some(f) = c.inject {
            settings.push(format!("injected fault {f}"));
        }
        settings.push(if self.tolerance == 0.0 { "exact".into() } else { format!("tolerance {:e}", self.tolerance) });
        writeln!(out, "  {}", settings.join(", ")).unwrap();

        match &self.result {
            Outcome::Laws { passed, reports } => {
                for r in reports {
                    let status = if r.passed() { "pass" } else { "FAIL" };
                    writeln!(
                        out,
                        "  {status} {:<18} {:>5} trials, {} failures, max deviation {}",
                        r.law.as_str(),
                        r.trials,
                        r.failure_count,
                        sci(r.max_deviation)
                    )
                    .unwrap();
                    for f in &r.failures {
                        writeln!(out, "    trial {}: {}", f.trial, f.inputs).unwrap();
                        writeln!(out, "      left:  {}", f.left).unwrap();
                        writeln!(out, "      right: {}", f.right).unwrap();
                    }
                }
                writeln!(out, "{}", if *passed { "all laws hold" } else { "some laws fail" }).unwrap();
            }
            Outcome::Decomposition { verdict, shape, factors, witness_isos, replay_deviation } => {
                writeln!(out, "verdict: {verdict}").unwrap();
                let names: [&str; 2] = match shape {
                    Shape::Sequential => ["first", "second"],
                    Shape::Parallel => ["g1", "g2"],
                };
                if let Some(fs) = factors {
                    for (n, f) in names.iter().zip(fs) {
                        write_morphism(&mut out, n, f);
                    }
                }
                if let Some(isos) = witness_isos {
                    for (n, f) in ["dom_iso", "cod_iso"].iter().zip(isos) {
                        write_morphism(&mut out, n, f);
                    }
                }
                if let Some(d) = replay_deviation {
                    writeln!(out, "replay deviation: {}", sci(*d)).unwrap();
                }
            }
            Outcome::Entanglement { entangled, split, schmidt_rank, coefficients } => {
                writeln!(out, "split: C^{} ⊗ C^{}", split[0], split[1]).unwrap();
                writeln!(out, "schmidt rank: {schmidt_rank}").unwrap();
                writeln!(out, "schmidt coefficients: {}", numbers(coefficients)).unwrap();
                writeln!(out, "{}", if *entangled { "entangled" } else { "product state" }).unwrap();
            }
            Outcome::Coupling { value, schmidt_rank, coefficients } => {
                writeln!(out, "operator schmidt rank: {schmidt_rank}").unwrap();
                writeln!(out, "schmidt coefficients: {}", numbers(coefficients)).unwrap();
                writeln!(out, "coupling: {value}").unwrap();
            }
            Outcome::Solution { x, residual } => {
                writeln!(out, "x = ({})", x.iter().map(|z| complex(*z)).collect::<Vec<_>>().join(", ")).unwrap();
                writeln!(out, "residual: {}", sci(*residual)).unwrap();
            }
            Outcome::Diagram { dot } => out.push_str(dot),
        }
        out
    }
}

fn sci(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x:.3e}")
    }
}

fn numbers(xs: &[f64]) -> String {
    xs.iter().map(|x| format!("{x:.10}")).collect::<Vec<_>>().join(", ")
}

fn complex(z: [f64; 2]) -> String {
    if z[1] == 0.0 {
        format!("{}", z[0])
    } else if z[1] < 0.0 {
        format!("{}-{}i", z[0], -z[1])
    } else {
        format!("{}+{}i", z[0], z[1])
    }
}

fn object(o: &ObjectValue) -> String {
    match (&o.elements, o.dim) {
        (Some(e), _) => format!("{{{}}}", e.join(", ")),
        (None, Some(d)) => format!("C^{d}"),
        (None, None) => "?".into(),
    }
}

fn write_morphism(out: &mut String, name: &str, f: &MorphismValue) {
    writeln!(out, "{name}: {} -> {}", object(&f.dom), object(&f.cod)).unwrap();
    if let Some(t) = &f.table {
        for (k, v) in &t.0 {
            writeln!(out, "    {k} ↦ {v}").unwrap();
        }
    }
    if let Some(rows) = &f.matrix {
        for row in rows {
            writeln!(out, "    [{}]", row.iter().map(|z| format!("{:>10}", complex(round(*z)))).collect::<Vec<_>>().join(" ")).unwrap();
        }
    }
}

fn round(z: [f64; 2]) -> [f64; 2] {
    let r = |x: f64| {
        let y = (x * 1e6).round() / 1e6;
        if y == 0.0 {
            0.0
        } else {
            y
        }
    };
    [r(z[0]), r(z[1])]
}
