use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::{Expr, Rational};

/// An ordered list of coordinate names. Cheap to clone.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Chart {
    names: Arc<[String]>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Chart {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Chart> {
        if names.is_empty() {
            return Err(Error::InvalidChart("a chart needs at least one coordinate".into()));
        }
        let mut owned: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            if !is_identifier(n) {
                return Err(Error::InvalidChart(format!("`{n}` is not an identifier")));
            }
            if owned.iter().any(|o| o == n) {
                return Err(Error::InvalidChart(format!("duplicate coordinate `{n}`")));
            }
            owned.push(n.to_string());
        }
        Ok(Chart {
            names: owned.into(),
        })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownCoordinate(name.to_string()))
    }

    /// The coordinate function with the given index.
    pub fn coord(&self, index: usize) -> Expr {
        assert!(index < self.dim(), "coordinate index out of range");
        Expr::var(index)
    }

    /// Coordinate function by name.
    pub fn coord_named(&self, name: &str) -> Result<Expr> {
        Ok(Expr::var(self.index(name)?))
    }

    /// Chart with one extra coordinate appended at the end.
    pub fn extend(&self, name: &str) -> Result<Chart> {
        if self.index_of(name).is_some() {
            return Err(Error::NameCollision(name.to_string()));
        }
        let mut names: Vec<String> = self.names.to_vec();
        names.push(name.to_string());
        Chart::new(&names)
    }

    /// Orders named coordinate values into a point; every coordinate must be assigned.
    pub fn point<S: AsRef<str>>(&self, values: &[(S, Rational)]) -> Result<Vec<Rational>> {
        self.names
            .iter()
            .map(|n| {
                values
                    .iter()
                    .find(|(k, _)| k.as_ref() == n)
                    .map(|(_, v)| v.clone())
                    .ok_or_else(|| Error::MissingCoordinate(n.clone()))
            })
            .collect()
    }

    pub(crate) fn check_same(&self, other: &Chart) -> Result<()> {
        if Arc::ptr_eq(&self.names, &other.names) || self.names == other.names {
            Ok(())
        } else {
            Err(Error::ChartMismatch)
        }
    }
}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chart({})", self.names.join(", "))
    }
}
