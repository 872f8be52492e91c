//! Sections of the first jet bundle `J¹L` of the trivial line bundle, the
//! classical Spencer operator, and the Lie algebroid of a Jacobi pair.
//!
//! A [`JetSection`] `(u, ω)` is stored in the Spencer decomposition with
//! `j¹u = (u, 0)` and module action `f·(u, ω) = (f u, f ω + u df)`, so the
//! Spencer operator is `D(u, ω) = ω` and the projection is `pr(u, ω) = u`.
//!
//! The algebroid formulas are easiest in the C∞-linear jet coordinates
//! `η = du - ω`. For `α = (u, η)`, `β = (v, ξ)`:
//!
//! ```text
//! ρ(α)       = Λ♯(η) + u R
//! ∇_α(v)     = ρ(α)(v) - v ⟨η, R⟩
//! pr[α, β]   = -Λ(η, ξ) + ρ(α)(v) - ρ(β)(u)
//! η([α, β])ₘ = u ⟨ξ, ∂ₘR⟩ - v ⟨η, ∂ₘR⟩ + (∂ₘΛ)(η, ξ)
//!              + ηₘ ⟨ξ, R⟩ - ξₘ ⟨η, R⟩ + ρ(α)(ξₘ) - ρ(β)(ηₘ)
//! ```
//!
//! These are checked against the generator expansion
//! `(u, ω) = j¹u + Σₖ (xₖ·j¹vₖ - j¹(xₖvₖ))` for `ω = Σ vₖ dxₖ`, reduced with
//! `[j¹u, j¹v] = j¹{u, v}` and the Leibniz rule.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::extcalc::{vf_bracket, DiffForm, MultiVector};
use crate::jacobi::{check_jacobi_pair, jacobi_bracket, symbol, JacobiPair};
use crate::residual::{trial_seed, Residual, Sampler};
use crate::symcore::{Chart, Expr};

/// A section `(u, ω)` of `J¹L` in the Spencer decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetSection {
    u: Expr,
    omega: DiffForm,
}

impl JetSection {
    pub fn new(u: Expr, omega: DiffForm) -> Result<JetSection> {
        if omega.grade() != 1 {
            return Err(Error::GradeMismatch(format!(
                "the form part of a jet section is a 1-form, got grade {}",
                omega.grade()
            )));
        }
        Ok(JetSection { u, omega })
    }

    pub fn zero(chart: &Chart) -> JetSection {
        JetSection {
            u: Expr::zero(),
            omega: DiffForm::zero(chart, 1),
        }
    }

    pub fn chart(&self) -> &Chart {
        self.omega.chart()
    }

    pub fn u(&self) -> &Expr {
        &self.u
    }

    pub fn omega(&self) -> &DiffForm {
        &self.omega
    }

    /// `η = du - ω`, which is C∞-linear: `η(f·α) = f η(α)`.
    pub fn jet_coords(&self) -> DiffForm {
        DiffForm::exact(self.chart(), &self.u).sub(&self.omega).expect("same chart")
    }

    /// Inverse of [`JetSection::jet_coords`].
    pub fn from_jet_coords(u: Expr, eta: &DiffForm) -> JetSection {
        let omega = DiffForm::exact(eta.chart(), &u).sub(eta).expect("same chart");
        JetSection { u, omega }
    }

    /// `f·(u, ω) = (f u, f ω + u df)`.
    pub fn scale(&self, f: &Expr) -> JetSection {
        let df = DiffForm::exact(self.chart(), f);
        JetSection {
            u: f * &self.u,
            omega: self.omega.scale(f).add(&df.scale(&self.u)).expect("same chart"),
        }
    }

    pub fn add(&self, other: &JetSection) -> Result<JetSection> {
        Ok(JetSection {
            u: &self.u + &other.u,
            omega: self.omega.add(&other.omega)?,
        })
    }

    pub fn sub(&self, other: &JetSection) -> Result<JetSection> {
        Ok(JetSection {
            u: &self.u - &other.u,
            omega: self.omega.sub(&other.omega)?,
        })
    }

    pub fn neg(&self) -> JetSection {
        JetSection {
            u: -&self.u,
            omega: self.omega.neg(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.omega.is_zero()
    }

    /// `D_X(α) = ω(X)`.
    pub fn spencer_d_along(&self, x: &MultiVector) -> Result<Expr> {
        self.omega.on(x)
    }
}

/// The holonomic section `j¹u = (u, 0)`.
pub fn j1(chart: &Chart, u: &Expr) -> JetSection {
    JetSection {
        u: u.clone(),
        omega: DiffForm::zero(chart, 1),
    }
}

/// `i(ω) = (0, ω)`.
pub fn i_incl(omega: &DiffForm) -> Result<JetSection> {
    JetSection::new(Expr::zero(), omega.clone())
}

/// The classical Spencer operator `D(u, ω) = ω`.
pub fn spencer_d(alpha: &JetSection) -> DiffForm {
    alpha.omega.clone()
}

/// `pr(u, ω) = u`.
pub fn pr(alpha: &JetSection) -> Expr {
    alpha.u.clone()
}

/// The Lie algebroid structure on `J¹L` induced by a pair. Built through
/// [`JetAlgebroid::new`] the pair is known to be Jacobi; the unchecked
/// constructor exists for exhibiting what goes wrong on broken pairs.
#[derive(Clone, Debug)]
pub struct JetAlgebroid {
    pair: JacobiPair,
}

impl JetAlgebroid {
    pub fn new(pair: &JacobiPair) -> Result<JetAlgebroid> {
        if !check_jacobi_pair(pair).is_jacobi {
            return Err(Error::NotJacobi);
        }
        Ok(JetAlgebroid { pair: pair.clone() })
    }

    /// Same formulas without the Jacobi check. The result is a Lie algebroid
    /// only when the pair is Jacobi.
    pub fn unchecked(pair: &JacobiPair) -> JetAlgebroid {
        JetAlgebroid { pair: pair.clone() }
    }

    pub fn pair(&self) -> &JacobiPair {
        &self.pair
    }

    pub fn chart(&self) -> &Chart {
        self.pair.chart()
    }

    fn check(&self, alpha: &JetSection) -> Result<()> {
        self.chart().check_same(alpha.chart())?;
        self.pair.check_expr(&alpha.u)?;
        Ok(())
    }

    /// `ρ(u, ω) = ρ¹(u) + ρ²(ω)` with `ρ¹(u) = Λ♯(du) + u R` and `ρ²(ω) = -Λ♯(ω)`.
    pub fn anchor(&self, alpha: &JetSection) -> Result<MultiVector> {
        self.check(alpha)?;
        Ok(self.anchor_jet(&alpha.u, &alpha.jet_coords()))
    }

    fn anchor_jet(&self, u: &Expr, eta: &DiffForm) -> MultiVector {
        self.pair.sharp(eta).add(&self.pair.r().scale(u)).expect("same chart")
    }

    /// `∇_α(v)`, closed form.
    pub fn nabla(&self, alpha: &JetSection, v: &Expr) -> Result<Expr> {
        self.check(alpha)?;
        self.pair.check_expr(v)?;
        let eta = alpha.jet_coords();
        let rho = self.anchor_jet(&alpha.u, &eta);
        Ok(rho.apply(v)? - v * &eta.on(self.pair.r())?)
    }

    /// `∇_α(v)` by expanding `α` into holonomic generators, using
    /// `∇_{a·j¹h}(v) = a {h, v}`.
    pub fn nabla_by_generators(&self, alpha: &JetSection, v: &Expr) -> Result<Expr> {
        self.check(alpha)?;
        self.pair.check_expr(v)?;
        let mut out = Expr::zero();
        for (a, h) in generators(alpha) {
            out = out + &a * &jacobi_bracket(&self.pair, &h, v)?;
        }
        Ok(out)
    }

    /// `[α, β]`, closed form in jet coordinates.
    pub fn bracket(&self, alpha: &JetSection, beta: &JetSection) -> Result<JetSection> {
        self.check(alpha)?;
        self.check(beta)?;
        let chart = self.chart();
        let n = chart.dim();
        let (u, eta) = (&alpha.u, alpha.jet_coords());
        let (v, xi) = (&beta.u, beta.jet_coords());
        let r = self.pair.r();
        let lambda = self.pair.lambda();
        let rho_a = self.anchor_jet(u, &eta);
        let rho_b = self.anchor_jet(v, &xi);

        let value = -self.pair.lambda_on(&eta, &xi) + rho_a.apply(v)? - rho_b.apply(u)?;

        let eta_r = eta.on(r)?;
        let xi_r = xi.on(r)?;
        let mut comps = Vec::with_capacity(n);
        for m in 0..n {
            let dr = r.map(|c| c.diff(m));
            let dl = lambda.map(|c| c.diff(m));
            let (eta_m, xi_m) = (eta.get(&[m]), xi.get(&[m]));
            let c = u * &xi.on(&dr)? - v * &eta.on(&dr)?
                + dl.eval_bivector(&eta, &xi)?
                + &eta_m * &xi_r
                - &xi_m * &eta_r
                + rho_a.apply(&xi_m)?
                - rho_b.apply(&eta_m)?;
            comps.push((vec![m], c));
        }
        let new_eta = DiffForm::from_components(chart, 1, comps)?;
        Ok(JetSection::from_jet_coords(value, &new_eta))
    }

    /// `[α, β]` by bilinear expansion over holonomic generators and
    /// `[a·j¹h, b·j¹k] = ab·j¹{h,k} + a ρ¹(h)(b)·j¹k - b ρ¹(k)(a)·j¹h`.
    pub fn bracket_by_generators(&self, alpha: &JetSection, beta: &JetSection) -> Result<JetSection> {
        self.check(alpha)?;
        self.check(beta)?;
        let chart = self.chart();
        let ga = generators(alpha);
        let gb = generators(beta);
        let sym_a: Vec<MultiVector> = ga.iter().map(|(_, h)| symbol(&self.pair, h)).collect();
        let sym_b: Vec<MultiVector> = gb.iter().map(|(_, k)| symbol(&self.pair, k)).collect();
        let mut out = JetSection::zero(chart);
        for ((a, h), rho_h) in ga.iter().zip(&sym_a) {
            for ((b, k), rho_k) in gb.iter().zip(&sym_b) {
                let hk = jacobi_bracket(&self.pair, h, k)?;
                let terms = [
                    (a * b, hk),
                    (a * &rho_h.apply(b)?, k.clone()),
                    (-(b * &rho_k.apply(a)?), h.clone()),
                ];
                for (coef, g) in terms {
                    if !coef.is_zero() && !g.is_zero() {
                        out = out.add(&j1(chart, &g).scale(&coef))?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `pr([j¹u, j¹v])`, which recovers the Jacobi bracket.
    pub fn bracket_from_algebroid(&self, u: &Expr, v: &Expr) -> Result<Expr> {
        let chart = self.chart();
        Ok(pr(&self.bracket(&j1(chart, u), &j1(chart, v))?))
    }
}

/// `(a, h)` pairs with `α = Σ a·j¹h`.
fn generators(alpha: &JetSection) -> Vec<(Expr, Expr)> {
    let mut out = vec![(Expr::one(), alpha.u.clone())];
    for (k, vk) in alpha.omega.components() {
        let xk = Expr::var(k[0]);
        out.push((xk.clone(), vk.clone()));
        out.push((Expr::int(-1), &xk * vk));
    }
    out
}

/// Checked entry points: each fails with [`Error::NotJacobi`] on a broken pair.
pub fn anchor(p: &JacobiPair, alpha: &JetSection) -> Result<MultiVector> {
    JetAlgebroid::new(p)?.anchor(alpha)
}

pub fn algebroid_bracket(p: &JacobiPair, alpha: &JetSection, beta: &JetSection) -> Result<JetSection> {
    JetAlgebroid::new(p)?.bracket(alpha, beta)
}

pub fn nabla(p: &JacobiPair, alpha: &JetSection, v: &Expr) -> Result<Expr> {
    JetAlgebroid::new(p)?.nabla(alpha, v)
}

pub fn bracket_from_algebroid(p: &JacobiPair, u: &Expr, v: &Expr) -> Result<Expr> {
    JetAlgebroid::new(p)?.bracket_from_algebroid(u, v)
}

/// Residuals of the Spencer-operator axioms for `D` relative to `l = pr`,
/// plus the two algebroid compatibilities they presuppose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpencerAxiomReport {
    /// `D_X(fα) - f D_X(α) - X(f) l(α)`.
    pub leibniz_residuals: Vec<Residual>,
    /// `D_{ρ(α)}(α') - ∇_{α'}(l(α)) - l([α, α'])`.
    pub horizontal_residuals: Vec<Residual>,
    /// `D_X[α,α'] - ∇_α(D_Xα') + D_{[ρ(α),X]}α' + ∇_{α'}(D_Xα) - D_{[ρ(α'),X]}α`.
    pub vertical_residuals: Vec<Residual>,
    /// Flatness of `∇` on a random function, and `ρ[α,α'] - [ρα, ρα']` applied
    /// to a random function.
    pub algebroid_residuals: Vec<Residual>,
    pub all_zero: bool,
}

impl SpencerAxiomReport {
    pub fn residuals(&self) -> impl Iterator<Item = &Residual> {
        self.leibniz_residuals
            .iter()
            .chain(&self.horizontal_residuals)
            .chain(&self.vertical_residuals)
            .chain(&self.algebroid_residuals)
    }

    /// The first nonzero residual, if any.
    pub fn witness(&self) -> Option<&Residual> {
        self.residuals().find(|r| !r.is_zero())
    }
}

pub const DEFAULT_DEGREE: u32 = 3;

/// Random jet section with polynomial entries of degree at most `degree`.
pub fn random_section(smp: &mut Sampler, chart: &Chart) -> JetSection {
    JetSection {
        u: smp.poly_or_simple(),
        omega: smp.one_form(chart),
    }
}

/// Runs the axiom checks on `trials` random inputs of degree
/// [`DEFAULT_DEGREE`]. Broken pairs are accepted and produce nonzero residuals.
pub fn check_spencer_axioms(p: &JacobiPair, trials: usize, seed: u64) -> SpencerAxiomReport {
    check_spencer_axioms_with(p, trials, DEFAULT_DEGREE, seed)
}

pub fn check_spencer_axioms_with(p: &JacobiPair, trials: usize, degree: u32, seed: u64) -> SpencerAxiomReport {
    let alg = JetAlgebroid::unchecked(p);
    let per_trial: Vec<[Residual; 5]> = (0..trials)
        .into_par_iter()
        .map(|i| spencer_trial(&alg, degree, trial_seed(seed, i)).expect("inputs live on the pair's chart"))
        .collect();
    let mut report = SpencerAxiomReport {
        leibniz_residuals: Vec::new(),
        horizontal_residuals: Vec::new(),
        vertical_residuals: Vec::new(),
        algebroid_residuals: Vec::new(),
        all_zero: true,
    };
    for [leib, hor, ver, flat, morph] in per_trial {
        report.leibniz_residuals.push(leib);
        report.horizontal_residuals.push(hor);
        report.vertical_residuals.push(ver);
        report.algebroid_residuals.push(flat);
        report.algebroid_residuals.push(morph);
    }
    let all_zero = report.residuals().all(Residual::is_zero);
    report.all_zero = all_zero;
    report
}

fn spencer_trial(alg: &JetAlgebroid, degree: u32, seed: u64) -> Result<[Residual; 5]> {
    let chart = alg.chart();
    let mut smp = Sampler::new(chart, degree, seed);
    let a = random_section(&mut smp, chart);
    let b = random_section(&mut smp, chart);
    let x = smp.vector_field(chart);
    let f = smp.poly();
    let v = smp.poly();

    let leibniz = a.scale(&f).spencer_d_along(&x)? - &f * &a.spencer_d_along(&x)? - x.apply(&f)? * a.u();

    let ab = alg.bracket(&a, &b)?;
    let rho_a = alg.anchor(&a)?;
    let rho_b = alg.anchor(&b)?;
    let horizontal = b.spencer_d_along(&rho_a)? - alg.nabla(&b, a.u())? - ab.u();

    let vertical = ab.spencer_d_along(&x)?
        - alg.nabla(&a, &b.spencer_d_along(&x)?)?
        + b.spencer_d_along(&vf_bracket(&rho_a, &x)?)?
        + alg.nabla(&b, &a.spencer_d_along(&x)?)?
        - a.spencer_d_along(&vf_bracket(&rho_b, &x)?)?;

    let flatness = alg.nabla(&ab, &v)? - alg.nabla(&a, &alg.nabla(&b, &v)?)? + alg.nabla(&b, &alg.nabla(&a, &v)?)?;
    let morphism = alg.anchor(&ab)?.sub(&vf_bracket(&rho_a, &rho_b)?)?.apply(&v)?;

    Ok([
        Residual::new("leibniz", seed, leibniz),
        Residual::new("horizontal", seed, horizontal),
        Residual::new("vertical", seed, vertical),
        Residual::new("nabla flatness", seed, flatness),
        Residual::new("anchor morphism", seed, morphism),
    ])
}
