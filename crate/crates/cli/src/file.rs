//! Structure-definition files.
//!
//! A file is TOML with a `kind`, a `chart` and the tensor components of the
//! structure, keyed by one-based index tuples:
//!
//! ```toml
//! kind = "jacobi_pair"
//! chart = ["x", "y", "z"]
//!
//! [meta]
//! name = "std_contact_pair_r3"
//!
//! [lambda]
//! "12" = "1"
//! "23" = "-y"
//!
//! [r]
//! "3" = "1"
//! ```
//!
//! A `contact_form` file has a `[theta]` table instead of `[lambda]` and `[r]`.
//! Keys are digit strings, or comma separated (`"2,10"`) on charts with ten
//! or more coordinates. Non-increasing keys are allowed and pick up the sign
//! of the sorting permutation.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use jacobi_core::catalog::Structure;
use jacobi_core::contact::ContactForm;
use jacobi_core::extcalc::{index_key, sort_with_sign, DiffForm, MultiVector};
use jacobi_core::jacobi::JacobiPair;
use jacobi_core::symcore::parse;
use jacobi_core::{Chart, Expr};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    JacobiPair,
    ContactForm,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::JacobiPair => "jacobi_pair",
            Kind::ContactForm => "contact_form",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
}

type Components = BTreeMap<String, String>;

/// The raw file contents, before any expression is parsed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub kind: Kind,
    pub chart: Vec<String>,
    #[serde(default)]
    pub meta: Meta,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Components>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Components>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<Components>,
}

#[derive(Debug)]
pub struct FileError(pub String);

impl fmt::Display for FileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for FileError {}

fn err<T>(msg: impl Into<String>) -> Result<T, FileError> {
    Err(FileError(msg.into()))
}

/// A parsed file: the structure plus its display name.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub name: String,
    pub description: Option<String>,
    pub kind: Kind,
    pub structure: Structure,
}

impl Loaded {
    pub fn chart(&self) -> &Chart {
        self.structure.chart()
    }
}

/// Parses an index key such as `"12"` or `"2,10"` into zero-based indices.
pub fn parse_key(key: &str, dim: usize) -> Result<Vec<usize>, FileError> {
    let parts: Vec<&str> = if key.contains(',') {
        key.split(',').map(str::trim).collect()
    } else {
        key.split("").filter(|s| !s.is_empty()).collect()
    };
    let mut out = Vec::with_capacity(parts.len());
    for p in parts {
        let i: usize = p
            .parse()
            .map_err(|_| FileError(format!("bad index key `{key}`: `{p}` is not a positive integer")))?;
        if i == 0 || i > dim {
            return err(format!("index {i} in key `{key}` is out of range 1..={dim}"));
        }
        out.push(i - 1);
    }
    Ok(out)
}

fn components(
    table: &Components,
    field: &str,
    grade: usize,
    chart: &Chart,
) -> Result<Vec<(Vec<usize>, Expr)>, FileError> {
    let mut seen: BTreeMap<Vec<usize>, &str> = BTreeMap::new();
    let mut out = Vec::new();
    for (key, src) in table {
        let idx = parse_key(key, chart.dim())?;
        if idx.len() != grade {
            return err(format!("[{field}] key `{key}` has {} indices, expected {grade}", idx.len()));
        }
        let mut sorted = idx.clone();
        if sort_with_sign(&mut sorted).is_none() {
            return err(format!("[{field}] key `{key}` repeats an index"));
        }
        if let Some(prev) = seen.insert(sorted, key) {
            return err(format!("[{field}] keys `{prev}` and `{key}` name the same component"));
        }
        let e = parse(src, chart).map_err(|e| FileError(format!("[{field}] `{key}` = \"{src}\": {e}")))?;
        out.push((idx, e));
    }
    Ok(out)
}

impl StructureFile {
    pub fn from_toml(text: &str) -> Result<StructureFile, FileError> {
        toml::from_str(text).map_err(|e| FileError(format!("invalid structure file: {e}")))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("plain tables serialize")
    }

    pub fn load(&self, fallback_name: &str) -> Result<Loaded, FileError> {
        let chart = Chart::new(&self.chart).map_err(|e| FileError(e.to_string()))?;
        let structure = match self.kind {
            Kind::JacobiPair => {
                if self.theta.is_some() {
                    return err("a jacobi_pair file must not have a [theta] table");
                }
                let empty = Components::new();
                let l = components(self.lambda.as_ref().unwrap_or(&empty), "lambda", 2, &chart)?;
                let r = components(self.r.as_ref().unwrap_or(&empty), "r", 1, &chart)?;
                let l = MultiVector::from_components(&chart, 2, l).map_err(|e| FileError(e.to_string()))?;
                let r = MultiVector::from_components(&chart, 1, r).map_err(|e| FileError(e.to_string()))?;
                Structure::Jacobi(JacobiPair::new(l, r).map_err(|e| FileError(e.to_string()))?)
            }
            Kind::ContactForm => {
                if self.lambda.is_some() || self.r.is_some() {
                    return err("a contact_form file must not have [lambda] or [r] tables");
                }
                let Some(theta) = &self.theta else {
                    return err("a contact_form file needs a [theta] table");
                };
                let t = components(theta, "theta", 1, &chart)?;
                let t = DiffForm::from_components(&chart, 1, t).map_err(|e| FileError(e.to_string()))?;
                Structure::Contact(ContactForm::new(t).map_err(|e| FileError(e.to_string()))?)
            }
        };
        Ok(Loaded {
            name: self.meta.name.clone().unwrap_or_else(|| fallback_name.to_string()),
            description: self.meta.description.clone(),
            kind: self.kind,
            structure,
        })
    }

    /// The file describing `structure`, with canonical keys.
    pub fn from_structure(structure: &Structure, meta: Meta) -> StructureFile {
        fn table(comps: &BTreeMap<Vec<usize>, Expr>, chart: &Chart) -> Components {
            comps.iter().map(|(k, v)| (index_key(k), v.to_string_on(chart))).collect()
        }
        let chart = structure.chart();
        let names = chart.names().to_vec();
        match structure {
            Structure::Jacobi(p) => StructureFile {
                kind: Kind::JacobiPair,
                chart: names,
                meta,
                lambda: Some(table(p.lambda().components(), chart)),
                r: Some(table(p.r().components(), chart)),
                theta: None,
            },
            Structure::Contact(c) => StructureFile {
                kind: Kind::ContactForm,
                chart: names,
                meta,
                lambda: None,
                r: None,
                theta: Some(table(c.theta().components(), chart)),
            },
        }
    }
}

/// Reads and parses a structure file; the file stem names it when the file
/// has no `meta.name`.
pub fn load_path(path: &Path) -> Result<Loaded, FileError> {
    let text = std::fs::read_to_string(path).map_err(|e| FileError(format!("{}: {e}", path.display())))?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("structure");
    StructureFile::from_toml(&text)
        .and_then(|f| f.load(stem))
        .map_err(|e| FileError(format!("{}: {e}", path.display())))
}
