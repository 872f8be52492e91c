use super::alt::{merge_sorted, AltField};
use super::{schouten, DiffForm, MultiVector};
use crate::error::{Error, Result};
use crate::symcore::Expr;

/// Graded-commutative exterior product (forms with forms, multivectors with multivectors).
pub fn wedge<T: Wedge>(a: &T, b: &T) -> Result<T> {
    a.wedge_with(b)
}

pub trait Wedge: Sized {
    fn wedge_with(&self, other: &Self) -> Result<Self>;
}

impl Wedge for MultiVector {
    fn wedge_with(&self, other: &Self) -> Result<Self> {
        self.wedge(other)
    }
}

impl Wedge for DiffForm {
    fn wedge_with(&self, other: &Self) -> Result<Self> {
        self.wedge(other)
    }
}

/// Exterior derivative.
pub fn d(omega: &DiffForm) -> DiffForm {
    let chart = omega.chart();
    let mut out = AltField::zero(chart, omega.grade() + 1);
    if omega.grade() >= chart.dim() {
        return DiffForm(out);
    }
    for (idx, v) in omega.components() {
        for j in 0..chart.dim() {
            if idx.contains(&j) {
                continue;
            }
            let dv = v.diff(j);
            if dv.is_zero() {
                continue;
            }
            // dxʲ ∧ dx^I
            if let Some((k, negative)) = merge_sorted(&[j], idx) {
                out.accumulate(k, if negative { -dv } else { dv });
            }
        }
    }
    DiffForm(out)
}

/// Contraction of a vector field into the first slot of a form.
pub fn interior(x: &MultiVector, omega: &DiffForm) -> Result<DiffForm> {
    x.chart().check_same(omega.chart())?;
    if x.grade() != 1 {
        return Err(Error::GradeMismatch(format!(
            "interior product needs a vector field, got grade {}",
            x.grade()
        )));
    }
    if omega.grade() == 0 {
        return Err(Error::GradeMismatch(
            "interior product of a function is undefined".into(),
        ));
    }
    let mut out = AltField::zero(omega.chart(), omega.grade() - 1);
    for (idx, v) in omega.components() {
        for (m, i) in idx.iter().enumerate() {
            let xi = x.get(&[*i]);
            if xi.is_zero() {
                continue;
            }
            let mut rest = idx.clone();
            rest.remove(m);
            let term = &xi * v;
            out.accumulate(rest, if m % 2 == 1 { -term } else { term });
        }
    }
    Ok(DiffForm(out))
}

/// Full contraction `⟨ω, A⟩` of a k-form with a k-vector (determinant normalization).
pub fn pairing(omega: &DiffForm, a: &MultiVector) -> Result<Expr> {
    omega.chart().check_same(a.chart())?;
    if omega.grade() != a.grade() {
        return Err(Error::GradeMismatch(format!(
            "pairing a {}-form with a {}-vector",
            omega.grade(),
            a.grade()
        )));
    }
    let (small, large) = if omega.components().len() <= a.components().len() {
        (omega.components(), a.components())
    } else {
        (a.components(), omega.components())
    };
    Ok(small
        .iter()
        .filter_map(|(k, v)| large.get(k).map(|w| v * w))
        .sum())
}

/// Lie bracket of vector fields, `[X, Y]ⁱ = X(Yⁱ) - Y(Xⁱ)`.
pub fn vf_bracket(x: &MultiVector, y: &MultiVector) -> Result<MultiVector> {
    x.chart().check_same(y.chart())?;
    if x.grade() != 1 || y.grade() != 1 {
        return Err(Error::GradeMismatch("vf_bracket needs two vector fields".into()));
    }
    let n = x.chart().dim();
    let comps = (0..n).map(|i| {
        let v = x.apply(&y.get(&[i])).expect("grade checked")
            - y.apply(&x.get(&[i])).expect("grade checked");
        (vec![i], v)
    });
    MultiVector::from_components(x.chart(), 1, comps)
}

/// Lie derivative along a vector field, for forms and multivectors alike.
pub trait LieDerivative: Sized {
    fn lie_derivative(&self, x: &MultiVector) -> Result<Self>;
}

pub fn lie_derivative<T: LieDerivative>(x: &MultiVector, t: &T) -> Result<T> {
    t.lie_derivative(x)
}

fn require_vector_field(x: &MultiVector) -> Result<()> {
    if x.grade() == 1 {
        Ok(())
    } else {
        Err(Error::GradeMismatch(format!(
            "Lie derivative needs a vector field, got grade {}",
            x.grade()
        )))
    }
}

impl LieDerivative for DiffForm {
    /// Componentwise: `L_X(f dx^{i₁}∧…) = X(f) dx^I + f Σ_m dx^{i₁}∧…∧dXⁱᵐ∧…`.
    fn lie_derivative(&self, x: &MultiVector) -> Result<DiffForm> {
        x.chart().check_same(self.chart())?;
        require_vector_field(x)?;
        let chart = self.chart();
        let mut out = AltField::zero(chart, self.grade());
        for (idx, v) in self.components() {
            out.accumulate(idx.clone(), x.apply(v)?);
            for (m, i) in idx.iter().enumerate() {
                let xi = x.get(&[*i]);
                for j in 0..chart.dim() {
                    let dxi = xi.diff(j);
                    if dxi.is_zero() {
                        continue;
                    }
                    // slot m of the tuple becomes dxʲ
                    let mut k = idx.clone();
                    k[m] = j;
                    let mut sorted = k.clone();
                    if let Some(negative) = super::sort_with_sign(&mut sorted) {
                        let term = v * &dxi;
                        out.accumulate(sorted, if negative { -term } else { term });
                    }
                }
            }
        }
        Ok(DiffForm(out))
    }
}

impl LieDerivative for MultiVector {
    /// Componentwise: `L_X(f ∂_{i₁}∧…) = X(f) ∂_I + f Σ_m ∂_{i₁}∧…∧[X, ∂_{iₘ}]∧…`
    /// with `[X, ∂ᵢ] = -Σⱼ ∂ᵢXʲ ∂ⱼ`.
    fn lie_derivative(&self, x: &MultiVector) -> Result<MultiVector> {
        x.chart().check_same(self.chart())?;
        require_vector_field(x)?;
        let chart = self.chart();
        let mut out = AltField::zero(chart, self.grade());
        for (idx, v) in self.components() {
            out.accumulate(idx.clone(), x.apply(v)?);
            for (m, i) in idx.iter().enumerate() {
                for j in 0..chart.dim() {
                    let dxj = x.get(&[j]).diff(*i);
                    if dxj.is_zero() {
                        continue;
                    }
                    let mut k = idx.clone();
                    k[m] = j;
                    let mut sorted = k.clone();
                    if let Some(negative) = super::sort_with_sign(&mut sorted) {
                        let term = v * &dxj;
                        // the bracket contributes with a minus sign
                        out.accumulate(sorted, if negative { term } else { -term });
                    }
                }
            }
        }
        Ok(MultiVector(out))
    }
}

/// Lie derivative of a multivector computed through the Schouten bracket.
pub fn lie_derivative_via_schouten(x: &MultiVector, t: &MultiVector) -> Result<MultiVector> {
    require_vector_field(x)?;
    schouten(x, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::{parse, Chart};

    fn r3() -> Chart {
        Chart::new(&["x", "y", "z"]).unwrap()
    }

    fn e(src: &str) -> Expr {
        parse(src, &r3()).unwrap()
    }

    fn vf(comps: [&str; 3]) -> MultiVector {
        MultiVector::from_vec(&r3(), comps.iter().map(|s| e(s)).collect()).unwrap()
    }

    fn one_form(comps: [&str; 3]) -> DiffForm {
        DiffForm::from_vec(&r3(), comps.iter().map(|s| e(s)).collect()).unwrap()
    }

    #[test]
    fn wedge_antisymmetry() {
        let c = r3();
        let dx = MultiVector::basis(&c, &[0]).unwrap();
        assert!(wedge(&dx, &dx).unwrap().is_zero());
        let fx = DiffForm::basis(&c, &[0]).unwrap();
        let fy = DiffForm::basis(&c, &[1]).unwrap();
        assert_eq!(wedge(&fx, &fy).unwrap(), wedge(&fy, &fx).unwrap().neg());
    }

    #[test]
    fn wedge_matches_permutation_oracle() {
        // ∂z ∧ (∂x∧∂y): the tuple (2, 0, 1) is an even permutation of (0, 1, 2)
        let c = r3();
        let z = MultiVector::basis(&c, &[2]).unwrap();
        let xy = MultiVector::basis(&c, &[0, 1]).unwrap();
        let w = wedge(&z, &xy).unwrap();
        assert_eq!(w, MultiVector::basis(&c, &[0, 1, 2]).unwrap());
        // grade overflow is the zero field
        let w4 = wedge(&w, &z).unwrap();
        assert!(w4.is_zero());
        assert_eq!(w4.grade(), 4);
    }

    #[test]
    fn exterior_derivative_examples() {
        let c = r3();
        let theta = one_form(["-y", "0", "1"]);
        assert_eq!(d(&theta), DiffForm::basis(&c, &[0, 1]).unwrap());
        let f = e("x^2*y + z^3*x");
        let df = d(&DiffForm::scalar(&c, f.clone()));
        assert_eq!(df, DiffForm::exact(&c, &f));
        assert!(d(&df).is_zero());
    }

    #[test]
    fn interior_examples() {
        let c = r3();
        let theta = one_form(["-y", "0", "1"]);
        let dz = MultiVector::basis(&c, &[2]).unwrap();
        let i = interior(&dz, &theta).unwrap();
        assert_eq!(i.as_scalar().unwrap(), Expr::one());
        assert!(matches!(
            interior(&dz, &DiffForm::scalar(&c, e("x"))),
            Err(Error::GradeMismatch(_))
        ));
        let omega = DiffForm::from_components(&c, 2, [(vec![0, 1], e("x*z")), (vec![1, 2], e("y"))]).unwrap();
        let x = vf(["y", "x^2", "1"]);
        let once = interior(&x, &omega).unwrap();
        assert!(interior(&x, &once).unwrap().is_zero());
    }

    #[test]
    fn pairing_examples() {
        let c = r3();
        let dxdy = DiffForm::basis(&c, &[0, 1]).unwrap();
        assert!(pairing(&dxdy, &MultiVector::basis(&c, &[0, 1]).unwrap()).unwrap().is_one());
        assert!(pairing(&dxdy, &MultiVector::basis(&c, &[0, 2]).unwrap()).unwrap().is_zero());
        assert!(matches!(
            pairing(&dxdy, &MultiVector::basis(&c, &[0]).unwrap()),
            Err(Error::GradeMismatch(_))
        ));
    }

    #[test]
    fn lie_derivative_examples() {
        let c = r3();
        let dz = MultiVector::basis(&c, &[2]).unwrap();
        let f = DiffForm::scalar(&c, e("x^2*y"));
        assert!(lie_derivative(&dz, &f).unwrap().is_zero());
        let dx = MultiVector::basis(&c, &[0]).unwrap();
        let x_dy = vf(["0", "x", "0"]);
        let l = lie_derivative(&dx, &x_dy).unwrap();
        assert_eq!(l, MultiVector::basis(&c, &[1]).unwrap());
        assert_eq!(vf_bracket(&dx, &x_dy).unwrap(), l);
    }

    #[test]
    fn chart_mismatch() {
        let other = Chart::new(&["a", "b", "c"]).unwrap();
        let x = MultiVector::basis(&r3(), &[0]).unwrap();
        let y = MultiVector::basis(&other, &[0]).unwrap();
        assert_eq!(vf_bracket(&x, &y), Err(Error::ChartMismatch));
        assert_eq!(x.wedge(&y), Err(Error::ChartMismatch));
    }
}
