//! Named example structures, shared by the tests and the command-line tool.

use crate::contact::{induced_jacobi_pair, ContactForm};
use crate::error::Result;
use crate::extcalc::{DiffForm, MultiVector};
use crate::jacobi::JacobiPair;
use crate::symcore::{parse, Chart, Expr};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    Jacobi(JacobiPair),
    Contact(ContactForm),
}

impl Structure {
    pub fn chart(&self) -> &Chart {
        match self {
            Structure::Jacobi(p) => p.chart(),
            Structure::Contact(c) => c.chart(),
        }
    }

    /// The pair itself, or the pair induced by a contact form.
    pub fn jacobi_pair(&self) -> Result<JacobiPair> {
        match self {
            Structure::Jacobi(p) => Ok(p.clone()),
            Structure::Contact(c) => induced_jacobi_pair(c),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub name: &'static str,
    pub description: &'static str,
    /// Whether the structure is expected to pass its checks.
    pub valid: bool,
    pub structure: Structure,
}

fn chart(names: &[&str]) -> Chart {
    Chart::new(names).expect("valid catalog chart")
}

fn expr(c: &Chart, s: &str) -> Expr {
    parse(s, c).expect("valid catalog expression")
}

fn pair(c: &Chart, lambda: &[(&[usize], &str)], r: &[(usize, &str)]) -> Structure {
    let l = MultiVector::from_components(c, 2, lambda.iter().map(|(k, s)| (k.to_vec(), expr(c, s)))).expect("valid");
    let r = MultiVector::from_components(c, 1, r.iter().map(|(k, s)| (vec![*k], expr(c, s)))).expect("valid");
    Structure::Jacobi(JacobiPair::new(l, r).expect("valid"))
}

fn contact(c: &Chart, theta: &[(usize, &str)]) -> Structure {
    let t = DiffForm::from_components(c, 1, theta.iter().map(|(k, s)| (vec![*k], expr(c, s)))).expect("valid");
    Structure::Contact(ContactForm::new(t).expect("odd dimension"))
}

pub fn entries() -> Vec<Entry> {
    let r3 = chart(&["x", "y", "z"]);
    let r5 = chart(&["x1", "y1", "x2", "y2", "z"]);
    vec![
        Entry {
            name: "poisson_r3",
            description: "constant Poisson bivector dx^dy on R^3, R = 0",
            valid: true,
            structure: pair(&r3, &[(&[0, 1], "1")], &[]),
        },
        Entry {
            name: "broken_r3",
            description: "dx^dy with R = dz: not a Jacobi pair",
            valid: false,
            structure: pair(&r3, &[(&[0, 1], "1")], &[(2, "1")]),
        },
        Entry {
            name: "zero_jacobi",
            description: "the zero structure on R^3",
            valid: true,
            structure: pair(&r3, &[], &[]),
        },
        Entry {
            name: "std_contact_r3",
            description: "standard contact form dz - y dx on R^3",
            valid: true,
            structure: contact(&r3, &[(0, "-y"), (2, "1")]),
        },
        Entry {
            name: "std_contact_pair_r3",
            description: "Jacobi pair induced by dz - y dx",
            valid: true,
            structure: pair(&r3, &[(&[0, 1], "1"), (&[1, 2], "-y")], &[(2, "1")]),
        },
        Entry {
            name: "so3_dual_r3",
            description: "linear Poisson structure of the dual of so(3)",
            valid: true,
            structure: pair(&r3, &[(&[0, 1], "z"), (&[1, 2], "x"), (&[2, 0], "y")], &[]),
        },
        Entry {
            name: "reeb_only_r3",
            description: "Lambda = 0 with a non-constant vector field R = x dy + dz",
            valid: true,
            structure: pair(&r3, &[], &[(1, "x"), (2, "1")]),
        },
        Entry {
            name: "conformal_contact_r3",
            description: "(1 + x^2)(dz - y dx), a contact form with rational Reeb field",
            valid: true,
            structure: contact(&r3, &[(0, "-y*(1 + x^2)"), (2, "1 + x^2")]),
        },
        Entry {
            name: "contact_r5",
            description: "standard contact form dz - y1 dx1 - y2 dx2 on R^5",
            valid: true,
            structure: contact(&r5, &[(0, "-y1"), (2, "-y2"), (4, "1")]),
        },
    ]
}

pub fn get(name: &str) -> Option<Entry> {
    entries().into_iter().find(|e| e.name == name)
}
