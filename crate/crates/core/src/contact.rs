//! Contact forms on a chart with trivialized line bundle.
//!
//! Every vector-valued quantity here solves the same bordered linear system
//! in the unknowns `(V, λ)`:
//!
//! ```text
//! i_V dθ - λ θ = a      (a 1-form)
//!         θ(V) = s      (a function)
//! ```
//!
//! Contracting the first line with the Reeb field forces `λ = -a(R)`, so the
//! system fixes `V` through `θ(V)` and the restriction of `i_V dθ` to
//! `H = ker θ`. With this:
//!
//! - the Reeb field `R` solves `(a, s) = (0, 1)`;
//! - `R_f` solves `(-df, f)`, which is the condition `θ([R_f, W]) = 0` for `W ∈ H`;
//! - `b(ω)` solves `(-ω, 0)`: it lies in `H` and `dθ(W, b(ω)) = ω(W)` on `H`,
//!   so that `R_f = f R + b(df)`.
//!
//! The matrix of the system is inverted once per [`Contact`].

use crate::error::{Error, Result};
use crate::extcalc::{d, interior, vf_bracket, DiffForm, MultiVector};
use crate::jacobi::JacobiPair;
use crate::symcore::{Chart, Expr};

/// A 1-form on an odd-dimensional chart; contact-ness is checked separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactForm {
    chart: Chart,
    theta: DiffForm,
}

impl ContactForm {
    pub fn new(theta: DiffForm) -> Result<ContactForm> {
        if theta.grade() != 1 {
            return Err(Error::GradeMismatch(format!("θ must be a 1-form, got grade {}", theta.grade())));
        }
        let chart = theta.chart().clone();
        if chart.dim().is_multiple_of(2) {
            return Err(Error::EvenDimension(chart.dim()));
        }
        Ok(ContactForm { chart, theta })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn theta(&self) -> &DiffForm {
        &self.theta
    }

    /// `θ(X)`.
    pub fn eval(&self, x: &MultiVector) -> Result<Expr> {
        self.theta.on(x)
    }
}

/// Outcome of [`is_contact`]: the single component of `θ∧(dθ)ⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactVerdict {
    pub is_contact: bool,
    pub witness: Expr,
}

/// Computes `θ∧(dθ)ⁿ` on a chart of dimension `2n+1`.
pub fn is_contact(c: &ContactForm) -> ContactVerdict {
    let dtheta = d(&c.theta);
    let mut top = c.theta.clone();
    for _ in 0..c.chart.dim() / 2 {
        top = top.wedge(&dtheta).expect("same chart");
    }
    let all: Vec<usize> = (0..c.chart.dim()).collect();
    let witness = top.get(&all);
    ContactVerdict {
        is_contact: !witness.is_zero(),
        witness,
    }
}

/// A contact form together with the inverted structure system.
#[derive(Clone, Debug)]
pub struct Contact {
    form: ContactForm,
    dtheta: DiffForm,
    /// Inverse of the bordered matrix, row-major, size `(dim+1)²`.
    inverse: Vec<Vec<Expr>>,
    reeb: MultiVector,
}

impl Contact {
    /// Fails with [`Error::NotContact`] when `θ∧(dθ)ⁿ ≡ 0`.
    pub fn new(form: &ContactForm) -> Result<Contact> {
        if !is_contact(form).is_contact {
            return Err(Error::NotContact);
        }
        let n = form.chart.dim();
        let dtheta = d(&form.theta);
        let theta = |i: usize| form.theta.get(&[i]);
        let mut m = vec![vec![Expr::zero(); n + 1]; n + 1];
        for (j, row) in m.iter_mut().enumerate().take(n) {
            for (i, cell) in row.iter_mut().enumerate().take(n) {
                *cell = dtheta.get(&[i, j]);
            }
            row[n] = -theta(j);
        }
        for i in 0..n {
            m[n][i] = theta(i);
        }
        let inverse = invert(m)?;
        let mut out = Contact {
            form: form.clone(),
            dtheta,
            inverse,
            reeb: MultiVector::zero(&form.chart, 1),
        };
        out.reeb = out.solve(&DiffForm::zero(&form.chart, 1), &Expr::one());
        Ok(out)
    }

    pub fn form(&self) -> &ContactForm {
        &self.form
    }

    pub fn chart(&self) -> &Chart {
        &self.form.chart
    }

    pub fn theta(&self) -> &DiffForm {
        &self.form.theta
    }

    pub fn dtheta(&self) -> &DiffForm {
        &self.dtheta
    }

    /// The vector part of the solution of `i_V dθ - λθ = a, θ(V) = s`.
    fn solve(&self, a: &DiffForm, s: &Expr) -> MultiVector {
        let n = self.chart().dim();
        let rhs: Vec<Expr> = (0..n).map(|j| a.get(&[j])).chain(std::iter::once(s.clone())).collect();
        let comps = (0..n).map(|i| {
            let v: Expr = self.inverse[i]
                .iter()
                .zip(&rhs)
                .filter(|(_, r)| !r.is_zero())
                .map(|(m, r)| m * r)
                .sum();
            (vec![i], v)
        });
        MultiVector::from_components(self.chart(), 1, comps).expect("valid indices")
    }

    /// The Reeb field: `θ(R) = 1`, `i_R dθ = 0`.
    pub fn reeb_field(&self) -> &MultiVector {
        &self.reeb
    }

    /// `R_f`: `θ(R_f) = f` and `θ([R_f, W]) = 0` for every `W ∈ H`.
    pub fn reeb_field_of(&self, f: &Expr) -> MultiVector {
        let df = DiffForm::exact(self.chart(), f);
        self.solve(&df.neg(), f)
    }

    /// `b(ω) ∈ H` with `dθ(W, b(ω)) = ω(W)` for `W ∈ H`.
    pub fn b_map(&self, omega: &DiffForm) -> Result<MultiVector> {
        self.chart().check_same(omega.chart())?;
        if omega.grade() != 1 {
            return Err(Error::GradeMismatch("b is defined on 1-forms".into()));
        }
        Ok(self.solve(&omega.neg(), &Expr::zero()))
    }

    /// `{f, g} = θ([R_f, R_g])`.
    pub fn reeb_bracket(&self, f: &Expr, g: &Expr) -> Expr {
        let bracket = vf_bracket(&self.reeb_field_of(f), &self.reeb_field_of(g)).expect("vector fields");
        self.form.eval(&bracket).expect("same chart")
    }

    /// `(Λ, R)` with `Λ^{ij} = dθ(b(dxⁱ), b(dxʲ))`, whose bracket is the Reeb bracket.
    pub fn induced_jacobi_pair(&self) -> JacobiPair {
        let chart = self.chart();
        let n = chart.dim();
        let bs: Vec<MultiVector> = (0..n)
            .map(|i| self.b_map(&DiffForm::basis(chart, &[i]).expect("valid index")).expect("1-form"))
            .collect();
        let mut comps = Vec::new();
        for i in 0..n {
            let bi = interior(&bs[i], &self.dtheta).expect("vector field into 2-form");
            for (j, bj) in bs.iter().enumerate().skip(i + 1) {
                comps.push((vec![i, j], bi.on(bj).expect("same chart")));
            }
        }
        let lambda = MultiVector::from_components(chart, 2, comps).expect("valid indices");
        JacobiPair::new(lambda, self.reeb.clone()).expect("bivector and vector field")
    }

    /// Splits `X` into `(θ(X), φ)` where `φ(W) = θ([W, X])` for `W ∈ H`.
    /// The stored `φ = du + i_X dθ - R(u) θ` is the representative with `φ(R) = 0`.
    pub fn decompose_vf(&self, x: &MultiVector) -> Result<VFDecomposition> {
        let u = self.form.eval(x)?;
        let du = DiffForm::exact(self.chart(), &u);
        let ru = self.reeb.apply(&u)?;
        let phi = du
            .add(&interior(x, &self.dtheta)?)?
            .sub(&self.theta().scale(&ru))?;
        Ok(VFDecomposition { u, phi })
    }

    /// `R_u - b(φ)`, the inverse of [`Contact::decompose_vf`].
    pub fn reconstruct_vf(&self, dec: &VFDecomposition) -> Result<MultiVector> {
        self.reeb_field_of(&dec.u).sub(&self.b_map(&dec.phi)?)
    }

    /// A frame `W_i = θ_k ∂_i - θ_i ∂_k` (`i ≠ k`) of `H`, where `k` is the first
    /// index with `θ_k ≢ 0`. It spans `H` wherever `θ_k ≠ 0`.
    pub fn h_frame(&self) -> Vec<MultiVector> {
        let chart = self.chart();
        let n = chart.dim();
        let theta = self.theta();
        let k = (0..n).find(|k| !theta.get(&[*k]).is_zero()).expect("a contact form is nonzero");
        (0..n)
            .filter(|i| *i != k)
            .map(|i| {
                MultiVector::from_components(chart, 1, [(vec![i], theta.get(&[k])), (vec![k], -theta.get(&[i]))])
                    .expect("valid indices")
            })
            .collect()
    }
}

/// `X ↦ (θ(X), θ([·, X])|_H)`; only the restriction of `phi` to `H` is meaningful.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VFDecomposition {
    pub u: Expr,
    pub phi: DiffForm,
}

impl VFDecomposition {
    /// Equality as pairs `(u, φ|_H)`, testing `φ` on a frame of `H`.
    pub fn equivalent(&self, other: &VFDecomposition, frame: &[MultiVector]) -> Result<bool> {
        if self.u != other.u {
            return Ok(false);
        }
        let diff = self.phi.sub(&other.phi)?;
        for w in frame {
            if !diff.on(w)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `f·(u, φ) = (f u, f φ + u df)`.
    pub fn scale(&self, f: &Expr) -> VFDecomposition {
        let df = DiffForm::exact(self.phi.chart(), f);
        VFDecomposition {
            u: f * &self.u,
            phi: self.phi.scale(f).add(&df.scale(&self.u)).expect("same chart"),
        }
    }
}

pub fn reeb_field(c: &ContactForm) -> Result<MultiVector> {
    Ok(Contact::new(c)?.reeb.clone())
}

pub fn reeb_field_of(c: &ContactForm, f: &Expr) -> Result<MultiVector> {
    Ok(Contact::new(c)?.reeb_field_of(f))
}

pub fn b_map(c: &ContactForm, omega: &DiffForm) -> Result<MultiVector> {
    Contact::new(c)?.b_map(omega)
}

pub fn reeb_bracket(c: &ContactForm, f: &Expr, g: &Expr) -> Result<Expr> {
    Ok(Contact::new(c)?.reeb_bracket(f, g))
}

pub fn induced_jacobi_pair(c: &ContactForm) -> Result<JacobiPair> {
    Ok(Contact::new(c)?.induced_jacobi_pair())
}

pub fn decompose_vf(c: &ContactForm, x: &MultiVector) -> Result<VFDecomposition> {
    Contact::new(c)?.decompose_vf(x)
}

pub fn reconstruct_vf(c: &ContactForm, dec: &VFDecomposition) -> Result<MultiVector> {
    Contact::new(c)?.reconstruct_vf(dec)
}

/// Gauss–Jordan inversion over the rational-function field.
fn invert(mut m: Vec<Vec<Expr>>) -> Result<Vec<Vec<Expr>>> {
    let n = m.len();
    let mut inv: Vec<Vec<Expr>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Expr::one() } else { Expr::zero() }).collect())
        .collect();
    for col in 0..n {
        // prefer constant pivots to keep denominators small
        let pivot = (col..n)
            .filter(|r| !m[*r][col].is_zero())
            .min_by_key(|r| (m[*r][col].as_constant().is_none(), *r))
            .ok_or(Error::SingularSystem)?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = m[col][col].recip()?;
        for j in 0..n {
            m[col][j] = &m[col][j] * &p;
            inv[col][j] = &inv[col][j] * &p;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for j in 0..n {
                if !m[col][j].is_zero() {
                    m[r][j] = &m[r][j] - &(&factor * &m[col][j]);
                }
                if !inv[col][j].is_zero() {
                    inv[r][j] = &inv[r][j] - &(&factor * &inv[col][j]);
                }
            }
        }
    }
    Ok(inv)
}
