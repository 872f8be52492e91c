//! Jacobi pairs `(Λ, R)` on a chart and the bracket
//! `{f, g} = ⟨df∧dg, Λ⟩ + f R(g) - g R(f)`.
//!
//! The bracket fixes the sign of the `R` terms; with it, `∇_{j¹f}(1) = -R(f)`
//! in the jet algebroid. A pair is Jacobi when `[Λ, R] = 0` and
//! `[Λ, Λ] = 2 R∧Λ`, which under the Schouten convention of [`crate::extcalc`]
//! is equivalent to the Jacobi identity of the bracket.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::extcalc::{lie_derivative, schouten, wedge, DiffForm, MultiVector};
use crate::residual::{trial_seed, Residual, Sampler};
use crate::symcore::random::monomials_up_to;
use crate::symcore::{Chart, Expr};

/// A bivector and a vector field on the same chart. Being Jacobi is not
/// enforced; see [`check_jacobi_pair`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiPair {
    chart: Chart,
    lambda: MultiVector,
    r: MultiVector,
}

impl JacobiPair {
    pub fn new(lambda: MultiVector, r: MultiVector) -> Result<JacobiPair> {
        lambda.chart().check_same(r.chart())?;
        if lambda.grade() != 2 {
            return Err(Error::GradeMismatch(format!("Λ must be a bivector, got grade {}", lambda.grade())));
        }
        if r.grade() != 1 {
            return Err(Error::GradeMismatch(format!("R must be a vector field, got grade {}", r.grade())));
        }
        Ok(JacobiPair {
            chart: lambda.chart().clone(),
            lambda,
            r,
        })
    }

    /// The zero structure `(0, 0)`.
    pub fn zero(chart: &Chart) -> JacobiPair {
        JacobiPair {
            chart: chart.clone(),
            lambda: MultiVector::zero(chart, 2),
            r: MultiVector::zero(chart, 1),
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn lambda(&self) -> &MultiVector {
        &self.lambda
    }

    pub fn r(&self) -> &MultiVector {
        &self.r
    }

    /// `Λ(α, β) = Σ Λ^{ij} αᵢ βⱼ`.
    pub fn lambda_on(&self, alpha: &DiffForm, beta: &DiffForm) -> Expr {
        self.lambda.eval_bivector(alpha, beta).expect("pair and forms share the chart")
    }

    /// `Λ♯(α) = Σ Λ^{ij} αᵢ ∂ⱼ`, so that `Λ♯(α)(g) = Λ(α, dg)`.
    pub fn sharp(&self, alpha: &DiffForm) -> MultiVector {
        self.lambda.sharp(alpha).expect("pair and form share the chart")
    }

    /// `R(f)`.
    pub fn reeb(&self, f: &Expr) -> Expr {
        self.r.apply(f).expect("R is a vector field")
    }

    pub(crate) fn check_expr(&self, e: &Expr) -> Result<()> {
        let width = e.numer().width().max(e.denom().width());
        if width > self.chart.dim() {
            return Err(Error::IndexOutOfRange(format!(
                "expression uses coordinate {} on a chart of dimension {}",
                width,
                self.chart.dim()
            )));
        }
        Ok(())
    }
}

/// Residuals of `[Λ, R] = 0` and `[Λ, Λ] = 2 R∧Λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairReport {
    pub is_jacobi: bool,
    /// `[Λ, R]`.
    pub residual_lr: MultiVector,
    /// `[Λ, Λ] - 2 R∧Λ`.
    pub residual_ll: MultiVector,
}

pub fn check_jacobi_pair(p: &JacobiPair) -> PairReport {
    let residual_lr = schouten(&p.lambda, &p.r).expect("grades 2 and 1");
    let ll = schouten(&p.lambda, &p.lambda).expect("grades 2 and 2");
    let rl = wedge(&p.r, &p.lambda).expect("same chart").scale(&Expr::int(2));
    let residual_ll = ll.sub(&rl).expect("both of grade 3");
    PairReport {
        is_jacobi: residual_lr.is_zero() && residual_ll.is_zero(),
        residual_lr,
        residual_ll,
    }
}

/// `{f, g} = ⟨df∧dg, Λ⟩ + f R(g) - g R(f)`.
pub fn jacobi_bracket(p: &JacobiPair, f: &Expr, g: &Expr) -> Result<Expr> {
    p.check_expr(f)?;
    p.check_expr(g)?;
    Ok(bracket(p, f, g))
}

fn bracket(p: &JacobiPair, f: &Expr, g: &Expr) -> Expr {
    let df = DiffForm::exact(&p.chart, f);
    let dg = DiffForm::exact(&p.chart, g);
    p.lambda_on(&df, &dg) + f * &p.reeb(g) - g * &p.reeb(f)
}

/// `{{f,g},h} + {{g,h},f} + {{h,f},g}`.
pub fn jacobiator(p: &JacobiPair, f: &Expr, g: &Expr, h: &Expr) -> Result<Expr> {
    for e in [f, g, h] {
        p.check_expr(e)?;
    }
    Ok(bracket(p, &bracket(p, f, g), h) + bracket(p, &bracket(p, g, h), f) + bracket(p, &bracket(p, h, f), g))
}

/// The symbol `ρ¹(u) = Λ♯(du) + u R` of `{u, ·}`:
/// `{u, f v} = f {u, v} + ρ¹(u)(f) v`.
pub fn hamiltonian_symbol(p: &JacobiPair, u: &Expr) -> Result<MultiVector> {
    p.check_expr(u)?;
    Ok(symbol(p, u))
}

pub(crate) fn symbol(p: &JacobiPair, u: &Expr) -> MultiVector {
    let du = DiffForm::exact(&p.chart, u);
    p.sharp(&du).add(&p.r.scale(u)).expect("same chart")
}

/// `Π = t⁻¹ Λ + ∂t∧R` on the chart extended by the trailing coordinate `t`
/// (meaningful for `t > 0`). `Π` is Poisson exactly when the pair is Jacobi.
pub fn poissonization(p: &JacobiPair, new_coord: &str) -> Result<MultiVector> {
    let big = p.chart.extend(new_coord)?;
    let t = big.dim() - 1;
    let inv_t = Expr::var(t).recip()?;
    let lambda = p.lambda.embed(&big)?.scale(&inv_t);
    let dt = MultiVector::basis(&big, &[t])?;
    let dt_r = wedge(&dt, &p.r.embed(&big)?)?;
    lambda.add(&dt_r)
}

/// The Euler field `t ∂t` of the last coordinate of `chart`.
pub fn euler_field(chart: &Chart) -> MultiVector {
    let t = chart.dim() - 1;
    MultiVector::from_components(chart, 1, [(vec![t], Expr::var(t))]).expect("valid index")
}

/// `L_{t∂t} Π + Π`, zero for a homogeneous bivector of weight -1.
pub fn homogeneity_residual(pi: &MultiVector) -> Result<MultiVector> {
    let e = euler_field(pi.chart());
    lie_derivative(&e, pi)?.add(pi)
}

/// Jacobiator on `trials` random polynomial triples of total degree at most
/// `degree`; trial `i` draws its triple from `trial_seed(seed, i)`.
pub fn sample_jacobiator(p: &JacobiPair, trials: usize, degree: u32, seed: u64) -> Vec<Residual> {
    (0..trials)
        .into_par_iter()
        .map(|i| {
            let s = trial_seed(seed, i);
            let mut smp = Sampler::new(&p.chart, degree, s);
            let (f, g, h) = (smp.poly(), smp.poly(), smp.poly());
            let v = bracket(p, &bracket(p, &f, &g), &h)
                + bracket(p, &bracket(p, &g, &h), &f)
                + bracket(p, &bracket(p, &h, &f), &g);
            Residual::new("jacobiator", s, v)
        })
        .collect()
}

/// A monomial triple with nonzero Jacobiator, searching monomials of total
/// degree at most `max_degree` in increasing order.
pub fn find_jacobiator_witness(p: &JacobiPair, max_degree: u32) -> Option<([Expr; 3], Expr)> {
    let monos: Vec<Expr> = monomials_up_to(p.chart.dim(), max_degree)
        .into_iter()
        .map(|m| Expr::from_poly(crate::symcore::poly::Poly::monomial(m, crate::symcore::rational(1, 1))))
        .collect();
    // the Jacobiator is alternating, so unordered distinct triples suffice
    for i in 0..monos.len() {
        for j in i + 1..monos.len() {
            for k in j + 1..monos.len() {
                let (f, g, h) = (&monos[i], &monos[j], &monos[k]);
                let v = bracket(p, &bracket(p, f, g), h)
                    + bracket(p, &bracket(p, g, h), f)
                    + bracket(p, &bracket(p, h, f), g);
                if !v.is_zero() {
                    return Some(([f.clone(), g.clone(), h.clone()], v));
                }
            }
        }
    }
    None
}
