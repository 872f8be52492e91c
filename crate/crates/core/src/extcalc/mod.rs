//! Exterior calculus on a single chart.
//!
//! [`MultiVector`] and [`DiffForm`] store their components sparsely under
//! strictly increasing index tuples (coordinate indices are zero-based).
//! The form/multivector pairing uses the determinant normalization
//! `⟨dx^I, ∂_J⟩ = δ_IJ`, so `⟨α¹∧…∧αᵏ, X₁∧…∧Xₖ⟩ = det[αⁱ(Xⱼ)]`.
//!
//! # Schouten–Nijenhuis sign convention
//!
//! Writing a multivector as a polynomial in odd symbols `ξᵢ = ∂ᵢ`,
//!
//! ```text
//! [P, Q] = (-1)^{(p-1)(q-1)} Σᵢ ( (P ∂⃖/∂ξᵢ)·(∂Q/∂xᵢ) - (∂P/∂xᵢ)·(∂⃗/∂ξᵢ Q) )
//! ```
//!
//! with right derivatives on `P` and left derivatives on `Q`. On vector
//! fields this is the Lie bracket, `[X, Q] = L_X Q`, graded antisymmetry
//! reads `[P, Q] = -(-1)^{(p-1)(q-1)} [Q, P]`, and a pair `(Λ, R)` satisfies
//! `[Λ, R] = 0, [Λ, Λ] = 2 R∧Λ` exactly when
//! `{f, g} = ⟨df∧dg, Λ⟩ + f R(g) - g R(f)` obeys the Jacobi identity. The
//! prefactor was fixed against that Jacobiator on the standard contact form.

mod alt;
mod ops;
mod schouten;

pub use alt::{merge_sorted, sort_with_sign, Index};
pub use ops::{
    d, interior, lie_derivative, lie_derivative_via_schouten, pairing, vf_bracket, wedge, LieDerivative,
};
pub use schouten::schouten;

use std::collections::BTreeMap;
use std::fmt;

use alt::AltField;

use crate::error::{Error, Result};
use crate::symcore::{Chart, Expr};

macro_rules! alternating_type {
    ($(#[$meta:meta])* $name:ident, $basis:literal) => {
        $(#[$meta])*
        #[derive(Clone, PartialEq, Eq)]
        pub struct $name(pub(crate) AltField);

        impl $name {
            pub fn zero(chart: &Chart, grade: usize) -> Self {
                $name(AltField::zero(chart, grade))
            }

            /// Grade-0 field holding a single function.
            pub fn scalar(chart: &Chart, f: Expr) -> Self {
                $name::from_components(chart, 0, [(vec![], f)]).expect("grade 0 is always valid")
            }

            /// Grade-1 field from its components in chart order.
            pub fn from_vec(chart: &Chart, comps: Vec<Expr>) -> Result<Self> {
                if comps.len() != chart.dim() {
                    return Err(Error::GradeMismatch(format!(
                        "{} components on a chart of dimension {}",
                        comps.len(),
                        chart.dim()
                    )));
                }
                $name::from_components(chart, 1, comps.into_iter().enumerate().map(|(i, e)| (vec![i], e)))
            }

            /// Builds a field from `(index tuple, value)` pairs. Tuples may be in
            /// any order; they are antisymmetrized and repeated slots add up.
            pub fn from_components<I>(chart: &Chart, grade: usize, comps: I) -> Result<Self>
            where
                I: IntoIterator<Item = (Index, Expr)>,
            {
                Ok($name(AltField::from_components(chart, grade, comps)?))
            }

            /// The basis element with the given index tuple (any order).
            pub fn basis(chart: &Chart, idx: &[usize]) -> Result<Self> {
                $name::from_components(chart, idx.len(), [(idx.to_vec(), Expr::one())])
            }

            pub fn chart(&self) -> &Chart {
                &self.0.chart
            }

            pub fn grade(&self) -> usize {
                self.0.grade
            }

            /// Component for an index tuple in any order, with the permutation sign applied.
            pub fn get(&self, idx: &[usize]) -> Expr {
                self.0.get(idx)
            }

            /// Nonzero components keyed by increasing index tuples.
            pub fn components(&self) -> &BTreeMap<Index, Expr> {
                &self.0.comps
            }

            /// The single component of a grade-0 field.
            pub fn as_scalar(&self) -> Option<Expr> {
                (self.0.grade == 0).then(|| self.0.get(&[]))
            }

            /// Components of a grade-1 field in chart order.
            pub fn to_vec(&self) -> Option<Vec<Expr>> {
                (self.0.grade == 1).then(|| (0..self.0.chart.dim()).map(|i| self.0.get(&[i])).collect())
            }

            pub fn is_zero(&self) -> bool {
                self.0.is_zero()
            }

            pub fn add(&self, other: &Self) -> Result<Self> {
                Ok($name(self.0.add(&other.0)?))
            }

            pub fn sub(&self, other: &Self) -> Result<Self> {
                Ok($name(self.0.add(&other.0.neg())?))
            }

            pub fn neg(&self) -> Self {
                $name(self.0.neg())
            }

            /// Multiplication by a function.
            pub fn scale(&self, f: &Expr) -> Self {
                $name(self.0.scale(f))
            }

            /// Applies `f` to every component.
            pub fn map(&self, f: impl Fn(&Expr) -> Expr) -> Self {
                $name(self.0.map(f))
            }

            /// Exterior product; the zero field of grade `p + q` when that exceeds the dimension.
            pub fn wedge(&self, other: &Self) -> Result<Self> {
                Ok($name(self.0.wedge(&other.0)?))
            }

            /// Same components on a chart extending this one by trailing coordinates.
            pub fn embed(&self, bigger: &Chart) -> Result<Self> {
                Ok($name(self.0.embed(bigger)?))
            }

            /// Components printed in the expression grammar, keyed by one-based index strings.
            pub fn to_strings(&self) -> Vec<(String, String)> {
                self.0
                    .comps
                    .iter()
                    .map(|(k, v)| {
                        let key = if k.is_empty() {
                            "scalar".to_string()
                        } else {
                            index_key(k)
                        };
                        (key, v.to_string_on(&self.0.chart))
                    })
                    .collect()
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.0.comps.is_empty() {
                    return f.write_str("0");
                }
                let mut first = true;
                for (k, v) in &self.0.comps {
                    if !first {
                        f.write_str(" + ")?;
                    }
                    first = false;
                    write!(f, "({})", v.display(&self.0.chart))?;
                    for (n, i) in k.iter().enumerate() {
                        f.write_str(if n == 0 { " " } else { "∧" })?;
                        write!(f, "{}{}", $basis, self.0.chart.name(*i))?;
                    }
                }
                Ok(())
            }
        }
    };
}

/// One-based index key such as `"12"` for `∂₁∧∂₂`; comma separated once any
/// index has two digits.
pub fn index_key(idx: &[usize]) -> String {
    if idx.iter().all(|i| *i < 9) {
        idx.iter().map(|i| (i + 1).to_string()).collect()
    } else {
        idx.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
    }
}

alternating_type!(
    /// Antisymmetric contravariant tensor field of fixed grade.
    MultiVector,
    "∂"
);

alternating_type!(
    /// Differential form of fixed grade.
    DiffForm,
    "d"
);

impl MultiVector {
    /// Applies a vector field to a function: `X(f) = Σ Xⁱ ∂ᵢf`.
    pub fn apply(&self, f: &Expr) -> Result<Expr> {
        if self.grade() != 1 {
            return Err(Error::GradeMismatch(format!(
                "only vector fields act on functions, got grade {}",
                self.grade()
            )));
        }
        Ok(self
            .components()
            .iter()
            .map(|(k, v)| v * &f.diff(k[0]))
            .sum())
    }

    /// `Λ(α, β) = Σ Λ^{ij} αᵢ βⱼ` for a bivector and two 1-forms.
    pub fn eval_bivector(&self, alpha: &DiffForm, beta: &DiffForm) -> Result<Expr> {
        pairing(&alpha.wedge(beta)?, self)
    }

    /// `Λ♯(α) = Σ Λ^{ij} αᵢ ∂ⱼ`, i.e. `i_α Λ` contracting the first slot.
    pub fn sharp(&self, alpha: &DiffForm) -> Result<MultiVector> {
        self.chart().check_same(alpha.chart())?;
        if self.grade() != 2 || alpha.grade() != 1 {
            return Err(Error::GradeMismatch("sharp needs a bivector and a 1-form".into()));
        }
        let n = self.chart().dim();
        let comps = (0..n).map(|j| {
            let v: Expr = alpha
                .components()
                .iter()
                .map(|(k, a)| a * &self.get(&[k[0], j]))
                .sum();
            (vec![j], v)
        });
        MultiVector::from_components(self.chart(), 1, comps)
    }
}

impl DiffForm {
    /// `df = Σ ∂ᵢf dxⁱ`.
    pub fn exact(chart: &Chart, f: &Expr) -> DiffForm {
        DiffForm::from_components(chart, 1, (0..chart.dim()).map(|i| (vec![i], f.diff(i))))
            .expect("valid 1-form indices")
    }

    /// Evaluates a 1-form on a vector field.
    pub fn on(&self, x: &MultiVector) -> Result<Expr> {
        pairing(self, x)
    }
}
