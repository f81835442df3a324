//! The JSON document format: declared instance, objects, morphisms and
//! named splits.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use moncat::finset::{FinFunction, FinSet, Label};
use moncat::linvec::{ComplexMatrix, C64};
use moncat::{CategoryId, MonoidalInstance, Morphism, ObjectHandle, ProductKind};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub const SCHEMA_VERSION: &str = "1";

/// Largest accepted vector-space dimension.
pub const MAX_DIM: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub schema_version: String,
    pub instance: InstanceDecl,
    #[serde(default)]
    pub objects: Vec<ObjectDecl>,
    #[serde(default)]
    pub morphisms: Vec<MorphismDecl>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub splits: Vec<SplitDecl>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDecl {
    pub category: CategoryId,
    pub product: ProductKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

/// A finite set (`elements`) or a vector space (`dim`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectDecl {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
}

/// A function (`table`) or a matrix (`matrix`, rows of `[re, im]`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDecl {
    pub name: String,
    pub dom: String,
    pub cod: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<[f64; 2]>>>,
}

/// Factor assignment for fixed-split queries. `dom` may be omitted for
/// states. `dom_iso` and `cod_iso` are only read by the cartesian
/// instance, keyed by product elements such as `(a,x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitDecl {
    pub name: String,
    pub morphism: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dom: Option<[String; 2]>,
    pub cod: [String; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dom_iso: Option<Table>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cod_iso: Option<Table>,
}

/// Label-to-label map that keeps its key order and rejects repeated keys.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Table(pub Vec<(String, String)>);

impl Serialize for Table {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Table {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct TableVisitor;

        impl<'de> Visitor<'de> for TableVisitor {
            type Value = Table;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from labels to labels")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Table, A::Error> {
                let mut seen = HashSet::new();
                let mut entries = Vec::new();
                while let Some((k, v)) = access.next_entry::<String, String>()? {
                    if !seen.insert(k.clone()) {
                        return Err(de::Error::custom(format!("duplicate key `{k}`")));
                    }
                    entries.push((k, v));
                }
                Ok(Table(entries))
            }
        }

        deserializer.deserialize_map(TableVisitor)
    }
}

/// An input problem, located by a JSON path such as `morphisms[1].matrix[0]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub path: String,
    pub message: String,
}

impl Diagnostic {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic { path: path.into(), message: message.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() || self.path == "." {
            f.write_str(&self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for Diagnostic {}

/// Parses and validates a document.
pub fn parse(text: &str) -> Result<Document, Diagnostic> {
    serde_json::from_str::<serde::de::IgnoredAny>(text)
        .map_err(|e| Diagnostic::new("", format!("invalid JSON: {e}")))?;
    let mut de = serde_json::Deserializer::from_str(text);
    let doc: Document = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        Diagnostic::new(path, e.into_inner().to_string())
    })?;
    de.end().map_err(|e| Diagnostic::new("", e.to_string()))?;
    validate(&doc)?;
    Ok(doc)
}

pub fn to_json(doc: &Document) -> String {
    crate::json::pretty(doc)
}

/// Structural checks that do not need the instance: version, unique names,
/// references, payload kinds and dimensions.
pub fn validate(doc: &Document) -> Result<(), Diagnostic> {
    if doc.schema_version != SCHEMA_VERSION {
        return Err(Diagnostic::new(
            "schema_version",
            format!("unsupported schema version `{}`, expected `{SCHEMA_VERSION}`", doc.schema_version),
        ));
    }
    let category = doc.instance.category;
    if doc.instance.product.category() != category {
        return Err(Diagnostic::new(
            "instance.product",
            format!("product `{}` does not belong to category `{category}`", doc.instance.product),
        ));
    }
    if let Some(t) = doc.instance.tolerance {
        if category == CategoryId::Finset && t != 0.0 {
            return Err(Diagnostic::new("instance.tolerance", format!("finset instances are exact; tolerance must be 0, got {t}")));
        }
        if !t.is_finite() || t < 0.0 {
            return Err(Diagnostic::new("instance.tolerance", format!("tolerance must be a non-negative number, got {t}")));
        }
    }

    let mut names = HashSet::new();
    let mut unique = |name: &str, path: String| {
        if name.is_empty() {
            return Err(Diagnostic::new(path, "name must not be empty"));
        }
        if !names.insert(name.to_string()) {
            return Err(Diagnostic::new(path, format!("duplicate name `{name}`")));
        }
        Ok(())
    };

    let mut objects = BTreeMap::new();
    for (i, o) in doc.objects.iter().enumerate() {
        unique(&o.name, format!("objects[{i}].name"))?;
        let size = match (category, &o.elements, o.dim) {
            (CategoryId::Finset, Some(elements), None) => {
                let mut seen = HashSet::new();
                for (j, e) in elements.iter().enumerate() {
                    if !seen.insert(e) {
                        return Err(Diagnostic::new(format!("objects[{i}].elements[{j}]"), format!("duplicate element `{e}`")));
                    }
                }
                elements.len()
            }
            (CategoryId::Vec, None, Some(dim)) => {
                if dim > MAX_DIM {
                    return Err(Diagnostic::new(
                        format!("objects[{i}].dim"),
                        format!("dimension {dim} exceeds the cap of {MAX_DIM}"),
                    ));
                }
                dim
            }
            (CategoryId::Finset, _, _) => {
                return Err(Diagnostic::new(format!("objects[{i}]"), "finset objects need `elements` and no `dim`"))
            }
            (CategoryId::Vec, _, _) => {
                return Err(Diagnostic::new(format!("objects[{i}]"), "vec objects need `dim` and no `elements`"))
            }
        };
        objects.insert(o.name.as_str(), (o, size));
    }

    let lookup = |name: &str, path: String| {
        objects.get(name).copied().ok_or_else(|| Diagnostic::new(path, format!("unknown object `{name}`")))
    };

    let mut morphisms = BTreeMap::new();
    for (i, m) in doc.morphisms.iter().enumerate() {
        let at = |field: &str| format!("morphisms[{i}].{field}");
        unique(&m.name, at("name"))?;
        let (dom, dom_size) = lookup(&m.dom, at("dom"))?;
        let (cod, cod_size) = lookup(&m.cod, at("cod"))?;
        match (category, &m.table, &m.matrix) {
            (CategoryId::Finset, Some(table), None) => {
                let dom_elements = dom.elements.as_deref().unwrap_or_default();
                let cod_elements = cod.elements.as_deref().unwrap_or_default();
                for (k, v) in &table.0 {
                    if !dom_elements.contains(k) {
                        return Err(Diagnostic::new(at("table"), format!("`{k}` is not an element of `{}`", m.dom)));
                    }
                    if !cod_elements.contains(v) {
                        return Err(Diagnostic::new(
                            format!("morphisms[{i}].table.{k}"),
                            format!("`{v}` is not an element of `{}`", m.cod),
                        ));
                    }
                }
                if let Some(x) = dom_elements.iter().find(|x| !table.0.iter().any(|(k, _)| k == *x)) {
                    return Err(Diagnostic::new(at("table"), format!("function is not total: `{x}` has no image")));
                }
            }
            (CategoryId::Vec, None, Some(rows)) => {
                if rows.len() != cod_size {
                    return Err(Diagnostic::new(
                        at("matrix"),
                        format!("expected {cod_size} rows for codomain `{}`, found {}", m.cod, rows.len()),
                    ));
                }
                for (r, row) in rows.iter().enumerate() {
                    if row.len() != dom_size {
                        return Err(Diagnostic::new(
                            format!("morphisms[{i}].matrix[{r}]"),
                            format!("row {r} has {} entries, expected {dom_size} for domain `{}`", row.len(), m.dom),
                        ));
                    }
                    if let Some(c) = row.iter().position(|z| !z[0].is_finite() || !z[1].is_finite()) {
                        return Err(Diagnostic::new(format!("morphisms[{i}].matrix[{r}][{c}]"), "entries must be finite"));
                    }
                }
            }
            (CategoryId::Finset, _, _) => return Err(Diagnostic::new(format!("morphisms[{i}]"), "finset morphisms need `table` and no `matrix`")),
            (CategoryId::Vec, _, _) => return Err(Diagnostic::new(format!("morphisms[{i}]"), "vec morphisms need `matrix` and no `table`")),
        }
        morphisms.insert(m.name.as_str(), m);
    }

    for (i, s) in doc.splits.iter().enumerate() {
        let at = |field: &str| format!("splits[{i}].{field}");
        unique(&s.name, at("name"))?;
        if !morphisms.contains_key(s.morphism.as_str()) {
            return Err(Diagnostic::new(at("morphism"), format!("unknown morphism `{}`", s.morphism)));
        }
        if let Some(dom) = &s.dom {
            for (j, name) in dom.iter().enumerate() {
                lookup(name, format!("splits[{i}].dom[{j}]"))?;
            }
        }
        for (j, name) in s.cod.iter().enumerate() {
            lookup(name, format!("splits[{i}].cod[{j}]"))?;
        }
        if (s.dom_iso.is_some() || s.cod_iso.is_some()) && doc.instance.product != ProductKind::Product {
            return Err(Diagnostic::new(at("dom_iso"), "witness isos can only be given for the product instance"));
        }
    }
    Ok(())
}

/// A named split, resolved against the instance.
#[derive(Debug, Clone)]
pub struct Split {
    pub name: String,
    pub morphism: String,
    pub dom: Option<(ObjectHandle, ObjectHandle)>,
    pub cod: (ObjectHandle, ObjectHandle),
    pub dom_iso: Option<Morphism>,
    pub cod_iso: Option<Morphism>,
}

/// A validated document with every payload built in its instance.
#[derive(Debug, Clone)]
pub struct Workspace {
    pub instance: MonoidalInstance,
    pub objects: Vec<(String, ObjectHandle)>,
    pub morphisms: Vec<(String, Morphism)>,
    pub splits: Vec<Split>,
}

impl Workspace {
    /// `doc` must have passed [`validate`].
    pub fn build(doc: &Document, tolerance: Option<f64>) -> Result<Self, Diagnostic> {
        let instance = MonoidalInstance::new(doc.instance.category, doc.instance.product, tolerance)
            .map_err(core("instance"))?;

        let mut objects = Vec::new();
        for (i, o) in doc.objects.iter().enumerate() {
            let path = format!("objects[{i}]");
            let handle = match (&o.elements, o.dim) {
                (Some(elements), _) => {
                    let set = FinSet::new(elements.iter().map(|e| Label::atom(e.as_str()))).map_err(core(&path))?;
                    instance.set_object(set)
                }
                (None, Some(dim)) => instance.dim_object(dim),
                (None, None) => unreachable!("validated"),
            }
            .map_err(core(&path))?;
            objects.push((o.name.clone(), handle));
        }

        let mut ws = Workspace { instance, objects, morphisms: Vec::new(), splits: Vec::new() };
        for (i, m) in doc.morphisms.iter().enumerate() {
            let path = format!("morphisms[{i}]");
            let dom = ws.object(&m.dom).map_err(|d| Diagnostic::new(&path, d.message))?.clone();
            let cod = ws.object(&m.cod).map_err(|d| Diagnostic::new(&path, d.message))?.clone();
            let morphism = match (&m.table, &m.matrix) {
                (Some(table), _) => {
                    let f = function_from_table(dom.as_set().expect("set"), cod.as_set().expect("set"), table)
                        .map_err(core(&path))?;
                    ws.instance.function(f)
                }
                (None, Some(rows)) => ws.instance.matrix(matrix_from_rows(rows, dom.size())),
                (None, None) => unreachable!("validated"),
            }
            .map_err(core(&path))?;
            ws.morphisms.push((m.name.clone(), morphism));
        }

        for (i, s) in doc.splits.iter().enumerate() {
            let path = format!("splits[{i}]");
            let pair = |names: &[String; 2]| -> Result<(ObjectHandle, ObjectHandle), Diagnostic> {
                Ok((ws.object(&names[0])?.clone(), ws.object(&names[1])?.clone()))
            };
            let dom = s.dom.as_ref().map(pair).transpose()?;
            let cod = pair(&s.cod)?;
            let f = ws.morphism(&s.morphism)?;
            let iso = |table: &Option<Table>, parts: Option<&(ObjectHandle, ObjectHandle)>, target: ObjectHandle, field: &str| {
                let (Some(table), Some((a, b))) = (table, parts) else {
                    return Ok(None);
                };
                let at = format!("{path}.{field}");
                let from = a.as_set().expect("set").product(b.as_set().expect("set"));
                let f = function_from_table(&from, target.as_set().expect("set"), table).map_err(core(&at))?;
                ws.instance.function(f).map(Some).map_err(core(&at))
            };
            let dom_iso = iso(&s.dom_iso, dom.as_ref(), f.dom(), "dom_iso")?;
            let cod_iso = iso(&s.cod_iso, Some(&cod), f.cod(), "cod_iso")?;
            if s.dom_iso.is_some() && dom.is_none() {
                return Err(Diagnostic::new(format!("{path}.dom_iso"), "needs `dom` factors"));
            }
            ws.splits.push(Split { name: s.name.clone(), morphism: s.morphism.clone(), dom, cod, dom_iso, cod_iso });
        }
        Ok(ws)
    }

    pub fn object(&self, name: &str) -> Result<&ObjectHandle, Diagnostic> {
        self.objects
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, o)| o)
            .ok_or_else(|| Diagnostic::new("", format!("unknown object `{name}`")))
    }

    pub fn morphism(&self, name: &str) -> Result<&Morphism, Diagnostic> {
        self.morphisms
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
            .ok_or_else(|| Diagnostic::new("", format!("unknown morphism `{name}`")))
    }

    pub fn split(&self, name: &str) -> Result<&Split, Diagnostic> {
        self.splits
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| Diagnostic::new("", format!("unknown split `{name}`")))
    }

    /// The only split declared for `morphism`, if there is exactly one.
    pub fn sole_split(&self, morphism: &str) -> Option<&Split> {
        let mut it = self.splits.iter().filter(|s| s.morphism == morphism);
        match (it.next(), it.next()) {
            (Some(s), None) => Some(s),
            _ => None,
        }
    }

    /// Name of the first declared object equal to `a`.
    pub fn name_of(&self, a: &ObjectHandle) -> Option<&str> {
        self.objects.iter().find(|(_, o)| o == a).map(|(n, _)| n.as_str())
    }
}

fn core(path: &str) -> impl FnOnce(moncat::Error) -> Diagnostic + '_ {
    move |e| Diagnostic::new(path, e.to_string())
}

fn function_from_table(dom: &FinSet, cod: &FinSet, table: &Table) -> moncat::Result<FinFunction> {
    let find = |set: &FinSet, s: &str| set.elements().iter().find(|l| l.to_string() == s).cloned();
    let mut pairs = Vec::with_capacity(table.0.len());
    for (k, v) in &table.0 {
        let x = find(dom, k).ok_or_else(|| moncat::Error::Shape(format!("`{k}` is not an element of {dom}")))?;
        let y = find(cod, v).ok_or_else(|| moncat::Error::Shape(format!("`{v}` is not an element of {cod}")))?;
        pairs.push((x, y));
    }
    FinFunction::from_pairs(dom.clone(), cod.clone(), pairs.iter().map(|(x, y)| (x, y)))
}

fn matrix_from_rows(rows: &[Vec<[f64; 2]>], cols: usize) -> ComplexMatrix {
    let data = rows.iter().flatten().map(|z| C64::new(z[0], z[1])).collect();
    ComplexMatrix::new(rows.len(), cols, data).expect("validated shape")
}
