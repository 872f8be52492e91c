#![allow(dead_code)]

use jacobi_core::catalog::{entries, Structure};
use jacobi_core::contact::{Contact, ContactForm};
use jacobi_core::extcalc::MultiVector;
use jacobi_core::jacobi::JacobiPair;
use jacobi_core::symcore::{parse, Chart};
use jacobi_core::Expr;

pub fn r3() -> Chart {
    Chart::new(&["x", "y", "z"]).unwrap()
}

pub fn ex(c: &Chart, s: &str) -> Expr {
    parse(s, c).unwrap()
}

/// Every catalog structure expected to be Jacobi, as pairs (contact forms induced).
pub fn valid_pairs() -> Vec<(&'static str, JacobiPair)> {
    entries()
        .into_iter()
        .filter(|e| e.valid)
        .map(|e| (e.name, e.structure.jacobi_pair().unwrap()))
        .collect()
}

pub fn pair_named(name: &str) -> JacobiPair {
    jacobi_core::catalog::get(name).unwrap().structure.jacobi_pair().unwrap()
}

pub fn contacts() -> Vec<(&'static str, Contact)> {
    entries()
        .into_iter()
        .filter_map(|e| match e.structure {
            Structure::Contact(c) => Some((e.name, Contact::new(&c).unwrap())),
            _ => None,
        })
        .collect()
}

pub fn contact_named(name: &str) -> ContactForm {
    match jacobi_core::catalog::get(name).unwrap().structure {
        Structure::Contact(c) => c,
        _ => panic!("{name} is not a contact form"),
    }
}

/// The graded Jacobiator of three multivectors; identically zero.
pub fn graded_jacobi(p: &MultiVector, q: &MultiVector, r: &MultiVector) -> MultiVector {
    use jacobi_core::extcalc::schouten;
    let (gp, gq, gr) = (p.grade(), q.grade(), r.grade());
    // (-1)^{(a-1)(b-1)}
    let s = |a: usize, b: usize| if a.is_multiple_of(2) && b.is_multiple_of(2) { Expr::int(-1) } else { Expr::one() };
    let t1 = schouten(p, &schouten(q, r).unwrap()).unwrap().scale(&s(gp, gr));
    let t2 = schouten(q, &schouten(r, p).unwrap()).unwrap().scale(&s(gq, gp));
    let t3 = schouten(r, &schouten(p, q).unwrap()).unwrap().scale(&s(gr, gq));
    t1.add(&t2).unwrap().add(&t3).unwrap()
}

pub mod strategies {
    use jacobi_core::extcalc::{DiffForm, MultiVector};
    use jacobi_core::residual::index_tuples;
    use jacobi_core::symcore::poly::{Monomial, Poly};
    use jacobi_core::symcore::rational;
    use jacobi_core::{Chart, Expr};
    use proptest::prelude::*;

    /// Polynomials in `dim` variables with at most `terms` terms of total degree ≤ `degree`.
    pub fn poly(dim: usize, degree: u32, terms: usize) -> impl Strategy<Value = Expr> {
        prop::collection::vec((prop::collection::vec(0..=degree, dim), -4i64..=4), 0..=terms).prop_map(
            move |ts| {
                let ts: Vec<_> = ts
                    .into_iter()
                    .filter(|(e, _)| e.iter().sum::<u32>() <= degree)
                    .map(|(e, c)| (Monomial::from_exponents(&e), rational(c, 1)))
                    .collect();
                Expr::from_poly(Poly::from_terms(ts))
            },
        )
    }

    /// Nonzero rational functions with small numerator and denominator.
    pub fn rational_fn(dim: usize) -> impl Strategy<Value = Expr> {
        (poly(dim, 2, 3), poly(dim, 1, 2)).prop_map(|(n, d)| {
            let d = if d.is_zero() { Expr::one() } else { d };
            n.checked_div(&d).unwrap()
        })
    }

    pub fn multivector(chart: Chart, grade: usize, degree: u32) -> impl Strategy<Value = MultiVector> {
        let tuples = index_tuples(chart.dim(), grade);
        prop::collection::vec(poly(chart.dim(), degree, 3), tuples.len()).prop_map(move |vals| {
            MultiVector::from_components(&chart, grade, tuples.clone().into_iter().zip(vals)).unwrap()
        })
    }

    pub fn form(chart: Chart, grade: usize, degree: u32) -> impl Strategy<Value = DiffForm> {
        let tuples = index_tuples(chart.dim(), grade);
        prop::collection::vec(poly(chart.dim(), degree, 3), tuples.len()).prop_map(move |vals| {
            DiffForm::from_components(&chart, grade, tuples.clone().into_iter().zip(vals)).unwrap()
        })
    }
}
