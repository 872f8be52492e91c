use super::alt::AltField;
use super::MultiVector;
use crate::error::{Error, Result};

/// Right derivative `P ∂⃖/∂ξᵢ`: removes `ξᵢ` after moving it to the end.
fn right_odd_derivative(p: &MultiVector, i: usize) -> AltField {
    let mut out = AltField::zero(p.chart(), p.grade() - 1);
    let k = p.grade();
    for (idx, v) in p.components() {
        if let Some(m) = idx.iter().position(|j| *j == i) {
            let mut rest = idx.clone();
            rest.remove(m);
            let negative = (k - 1 - m) % 2 == 1;
            out.accumulate(rest, if negative { -v } else { v.clone() });
        }
    }
    out
}

/// Left derivative `∂⃗/∂ξᵢ Q`: removes `ξᵢ` after moving it to the front.
fn left_odd_derivative(q: &MultiVector, i: usize) -> AltField {
    let mut out = AltField::zero(q.chart(), q.grade() - 1);
    for (idx, v) in q.components() {
        if let Some(m) = idx.iter().position(|j| *j == i) {
            let mut rest = idx.clone();
            rest.remove(m);
            out.accumulate(rest, if m % 2 == 1 { -v } else { v.clone() });
        }
    }
    out
}

fn partial(p: &MultiVector, i: usize) -> AltField {
    p.0.map(|v| v.diff(i))
}

/// Schouten–Nijenhuis bracket of a p-vector and a q-vector, of grade p + q - 1.
/// See the module docs for the sign convention.
pub fn schouten(p: &MultiVector, q: &MultiVector) -> Result<MultiVector> {
    p.chart().check_same(q.chart())?;
    let (pg, qg) = (p.grade(), q.grade());
    if pg + qg == 0 {
        return Err(Error::GradeMismatch(
            "the Schouten bracket of two functions is undefined".into(),
        ));
    }
    let chart = p.chart();
    let mut out = AltField::zero(chart, pg + qg - 1);
    if pg + qg - 1 > chart.dim() {
        return Ok(MultiVector(out));
    }
    for i in 0..chart.dim() {
        if pg > 0 {
            let dq = partial(q, i);
            if !dq.is_zero() {
                let term = right_odd_derivative(p, i).wedge(&dq)?;
                for (k, v) in term.comps {
                    out.accumulate(k, v);
                }
            }
        }
        if qg > 0 {
            let dp = partial(p, i);
            if !dp.is_zero() {
                let term = dp.wedge(&left_odd_derivative(q, i))?;
                for (k, v) in term.comps {
                    out.accumulate(k, -v);
                }
            }
        }
    }
    // (p-1)(q-1) is odd exactly when p and q are both even
    let flip = pg % 2 == 0 && qg % 2 == 0;
    Ok(MultiVector(if flip { out.neg() } else { out }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extcalc::{vf_bracket, wedge};
    use crate::symcore::{parse, Chart, Expr};

    fn r3() -> Chart {
        Chart::new(&["x", "y", "z"]).unwrap()
    }

    fn e(src: &str) -> Expr {
        parse(src, &r3()).unwrap()
    }

    #[test]
    fn vector_fields() {
        let c = r3();
        let dx = MultiVector::basis(&c, &[0]).unwrap();
        let dy = MultiVector::basis(&c, &[1]).unwrap();
        assert!(schouten(&dx, &dy).unwrap().is_zero());
        let x_dy = MultiVector::from_vec(&c, vec![e("0"), e("x"), e("0")]).unwrap();
        assert_eq!(schouten(&dx, &x_dy).unwrap(), dy);
        let a = MultiVector::from_vec(&c, vec![e("y*z"), e("x^2"), e("z")]).unwrap();
        let b = MultiVector::from_vec(&c, vec![e("1"), e("x*y"), e("y^2")]).unwrap();
        assert_eq!(schouten(&a, &b).unwrap(), vf_bracket(&a, &b).unwrap());
    }

    #[test]
    fn constant_bivector_is_poisson() {
        let c = r3();
        let l = MultiVector::basis(&c, &[0, 1]).unwrap();
        assert!(schouten(&l, &l).unwrap().is_zero());
    }

    #[test]
    fn function_brackets() {
        // [X, f] = X(f) and [f, X] = -X(f)
        let c = r3();
        let x = MultiVector::from_vec(&c, vec![e("y"), e("0"), e("x")]).unwrap();
        let f = MultiVector::scalar(&c, e("x*y + z^2"));
        let xf = x.apply(&e("x*y + z^2")).unwrap();
        assert_eq!(schouten(&x, &f).unwrap().as_scalar().unwrap(), xf);
        assert_eq!(schouten(&f, &x).unwrap().as_scalar().unwrap(), -xf);
        assert!(schouten(&f, &f).is_err());
    }

    #[test]
    fn standard_contact_pair() {
        // Λ = ∂x∧∂y - y ∂y∧∂z, R = ∂z: [Λ,Λ] = 2R∧Λ and [Λ,R] = 0
        let c = r3();
        let l = MultiVector::from_components(&c, 2, [(vec![0, 1], e("1")), (vec![1, 2], e("-y"))]).unwrap();
        let r = MultiVector::basis(&c, &[2]).unwrap();
        let rl = wedge(&r, &l).unwrap().scale(&Expr::int(2));
        assert_eq!(schouten(&l, &l).unwrap(), rl);
        assert!(schouten(&l, &r).unwrap().is_zero());
    }
}
