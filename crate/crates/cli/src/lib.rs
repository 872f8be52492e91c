//! The commands behind the `jacobi-kit` binary.
//!
//! Every command takes a loaded structure file and returns a [`Report`];
//! reports contain no timing data unless asked for, so a fixed seed gives
//! byte-identical output.

pub mod file;
pub mod report;

use jacobi_core::catalog::Structure;
use jacobi_core::contact::{is_contact, Contact};
use jacobi_core::extcalc::{schouten, vf_bracket, MultiVector};
use jacobi_core::jacobi::{
    check_jacobi_pair, homogeneity_residual, jacobi_bracket, poissonization, sample_jacobiator, JacobiPair,
};
use jacobi_core::jetalg::{check_spencer_axioms_with, j1, spencer_d, JetAlgebroid};
use jacobi_core::residual::{trial_seed, Residual, Sampler};
use jacobi_core::symcore::parse;
use jacobi_core::{Error, Expr};
use rayon::prelude::*;

pub use file::{load_path, FileError, Kind, Loaded, Meta, StructureFile};
pub use report::{Item, Report, Verdict};

use report::{expr_items, form_items, multivector_items};

/// Why a command produced no report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// Bad input: unreadable file, unparsable expression, wrong file kind.
    Usage(String),
    /// The structure itself fails a precondition, e.g. θ is not contact.
    Check(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Check(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Check(m) => m,
        }
    }
}

impl From<FileError> for Failure {
    fn from(e: FileError) -> Failure {
        Failure::Usage(e.0)
    }
}

fn math(e: Error) -> Failure {
    match e {
        Error::NotContact | Error::NotJacobi | Error::SingularSystem => Failure::Check(e.to_string()),
        _ => Failure::Usage(e.to_string()),
    }
}

/// Sampling parameters shared by the verification verbs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sampling {
    pub seed: u64,
    pub trials: usize,
    pub degree: u32,
    pub timings: bool,
}

fn header(cmd: &str, l: &Loaded, timings: bool) -> Report {
    Report::new(cmd, &l.name, &l.kind.to_string(), l.chart(), timings)
}

fn sampled_header(cmd: &str, l: &Loaded, s: &Sampling) -> Report {
    let mut r = header(cmd, l, s.timings);
    r.seed = Some(s.seed);
    r.trials = Some(s.trials);
    r.degree = Some(s.degree);
    r
}

fn parse_on(src: &str, l: &Loaded) -> Result<Expr, Failure> {
    parse(src, l.chart()).map_err(|e| Failure::Usage(format!("`{src}`: {e}")))
}

fn contact_of(l: &Loaded) -> Result<Contact, Failure> {
    match &l.structure {
        Structure::Contact(c) => Contact::new(c).map_err(math),
        Structure::Jacobi(_) => Err(Failure::Usage(format!("{} is a jacobi_pair file; this verb needs a contact_form", l.name))),
    }
}

fn pair_of(l: &Loaded) -> Result<JacobiPair, Failure> {
    l.structure.jacobi_pair().map_err(math)
}

/// Keeps a trial count on a verdict built from several residuals per trial.
fn per_trial(name: &str, trials: usize, rs: &[Residual], chart: &jacobi_core::Chart) -> Verdict {
    let mut v = Verdict::from_residuals(name, rs, chart);
    v.trials = Some(trials);
    v
}

/// Pair identities plus Jacobiator sampling, or non-degeneracy plus the
/// defining conditions of the Reeb fields.
pub fn check(l: &Loaded, s: &Sampling) -> Result<Report, Failure> {
    let mut rep = sampled_header("check", l, s);
    match &l.structure {
        Structure::Jacobi(p) => {
            let pr = check_jacobi_pair(p);
            rep.run(|| Verdict::from_items("[Λ,R] = 0", multivector_items(&pr.residual_lr)));
            rep.run(|| Verdict::from_items("[Λ,Λ] = 2R∧Λ", multivector_items(&pr.residual_ll)));
            let chart = p.chart().clone();
            rep.run(|| {
                Verdict::from_residuals("jacobiator vanishes", &sample_jacobiator(p, s.trials, s.degree, s.seed), &chart)
            });
        }
        Structure::Contact(form) => {
            let verdict = is_contact(form);
            let n = form.chart().dim() / 2;
            let top = format!("θ∧(dθ)^{n}");
            rep.run(|| {
                Verdict::flag(
                    format!("{top} ≠ 0"),
                    verdict.is_contact,
                    expr_items(&top, &verdict.witness, form.chart()),
                )
            });
            if verdict.is_contact {
                let c = Contact::new(form).map_err(math)?;
                let chart = c.chart().clone();
                rep.result("R", multivector_items(c.reeb_field()));
                let theta_r = c.form().eval(c.reeb_field()).map_err(math)? - Expr::one();
                rep.run(|| Verdict::from_items("θ(R) = 1", expr_items("θ(R) - 1", &theta_r, &chart)));
                let i_r = jacobi_core::extcalc::interior(c.reeb_field(), c.dtheta()).map_err(math)?;
                rep.run(|| Verdict::from_items("i_R dθ = 0", form_items(&i_r)));
                let frame = c.h_frame();
                rep.run(|| {
                    let rs: Vec<Residual> = par_map(s.trials, |i| {
                        let seed = trial_seed(s.seed, i);
                        let f = Sampler::new(&chart, s.degree, seed).poly();
                        let rf = c.reeb_field_of(&f);
                        let mut out = vec![Residual::new("θ(R_f) - f", seed, c.form().eval(&rf).expect("vector field") - &f)];
                        for (k, w) in frame.iter().enumerate() {
                            let v = c.form().eval(&vf_bracket(&rf, w).expect("same chart")).expect("vector field");
                            out.push(Residual::new(format!("θ([R_f, W{}])", k + 1), seed, v));
                        }
                        out
                    })
                    .into_iter()
                    .flatten()
                    .collect();
                    per_trial("Reeb fields R_f", s.trials, &rs, &chart)
                });
            }
        }
    }
    rep.finish();
    Ok(rep)
}

/// The Jacobi bracket of a pair, or the Reeb bracket of a contact form.
pub fn bracket(l: &Loaded, f: &str, g: &str) -> Result<Expr, Failure> {
    let (f, g) = (parse_on(f, l)?, parse_on(g, l)?);
    match &l.structure {
        Structure::Jacobi(p) => jacobi_bracket(p, &f, &g).map_err(math),
        Structure::Contact(_) => Ok(contact_of(l)?.reeb_bracket(&f, &g)),
    }
}

pub fn bracket_report(l: &Loaded, f: &str, g: &str) -> Result<Report, Failure> {
    let v = bracket(l, f, g)?;
    let mut rep = header("bracket", l, false);
    rep.result("{f,g}", vec![Item::new("f", f), Item::new("g", g), Item::new("{f,g}", v.to_string_on(l.chart()))]);
    Ok(rep)
}

/// Spencer-operator axioms for the jet algebroid, plus the round trip from
/// the algebroid back to the Jacobi bracket.
pub fn spencer(l: &Loaded, s: &Sampling) -> Result<Report, Failure> {
    let p = pair_of(l)?;
    let chart = p.chart().clone();
    let mut rep = sampled_header("spencer", l, s);
    let axioms = check_spencer_axioms_with(&p, s.trials, s.degree, s.seed);
    rep.run(|| Verdict::from_residuals("Leibniz rule", &axioms.leibniz_residuals, &chart));
    rep.run(|| Verdict::from_residuals("horizontal compatibility", &axioms.horizontal_residuals, &chart));
    rep.run(|| Verdict::from_residuals("vertical compatibility", &axioms.vertical_residuals, &chart));
    rep.run(|| per_trial("∇ flat and ρ a morphism", s.trials, &axioms.algebroid_residuals, &chart));
    let alg = JetAlgebroid::unchecked(&p);
    let trials: Vec<(Residual, Vec<Residual>)> = par_map(s.trials, |i| {
        let seed = trial_seed(s.seed, i);
        let mut smp = Sampler::new(&chart, s.degree, seed);
        let (u, v) = (smp.poly(), smp.poly());
        let back = alg.bracket_from_algebroid(&u, &v).expect("same chart") - jacobi_bracket(&p, &u, &v).expect("same chart");
        let d = spencer_d(&alg.bracket(&j1(&chart, &u), &j1(&chart, &v)).expect("same chart"));
        let holonomic = (0..chart.dim())
            .map(|k| Residual::new(format!("D[j¹u, j¹v] along ∂{}", chart.name(k)), seed, d.get(&[k])))
            .collect();
        (Residual::new("{u,v} from the algebroid - {u,v}", seed, back), holonomic)
    });
    let (back, holo): (Vec<Residual>, Vec<Vec<Residual>>) = trials.into_iter().unzip();
    let holo: Vec<Residual> = holo.into_iter().flatten().collect();
    rep.run(|| Verdict::from_residuals("bracket round trip", &back, &chart));
    rep.run(|| per_trial("[j¹u, j¹v] holonomic", s.trials, &holo, &chart));
    rep.finish();
    Ok(rep)
}

pub fn poissonize(l: &Loaded, coord: &str, timings: bool) -> Result<Report, Failure> {
    let p = pair_of(l)?;
    let pi = poissonization(&p, coord).map_err(math)?;
    let mut rep = header("poissonize", l, timings);
    rep.result(format!("Π on {}", pi.chart().names().join(", ")), multivector_items(&pi));
    rep.run(|| Verdict::from_items("[Π,Π] = 0", multivector_items(&schouten(&pi, &pi).expect("bivectors"))));
    rep.run(|| {
        let h = homogeneity_residual(&pi).expect("same chart");
        Verdict::from_items(format!("L_E Π = -Π, E = {coord}∂{coord}"), multivector_items(&h))
    });
    rep.finish();
    Ok(rep)
}

pub fn reeb(l: &Loaded, f: &str) -> Result<Report, Failure> {
    let c = contact_of(l)?;
    let fe = parse_on(f, l)?;
    let mut rep = header("reeb", l, false);
    rep.result("f", vec![Item::new("f", f)]);
    rep.result("R_f", multivector_items(&c.reeb_field_of(&fe)));
    Ok(rep)
}

/// Splits a vector field as `X = R_u - b(φ)` and checks the reconstruction.
pub fn decompose(l: &Loaded, field: &[String], timings: bool) -> Result<Report, Failure> {
    let c = contact_of(l)?;
    let chart = c.chart().clone();
    if field.len() != chart.dim() {
        return Err(Failure::Usage(format!(
            "expected {} vector field components, got {}",
            chart.dim(),
            field.len()
        )));
    }
    let comps = field.iter().map(|s| parse_on(s, l)).collect::<Result<Vec<_>, _>>()?;
    let x = MultiVector::from_vec(&chart, comps).map_err(math)?;
    let dec = c.decompose_vf(&x).map_err(math)?;
    let mut rep = header("decompose", l, timings);
    rep.result("X", multivector_items(&x));
    rep.result("u", expr_items("u", &dec.u, &chart));
    rep.result("φ", form_items(&dec.phi));
    rep.run(|| {
        let back = c.reconstruct_vf(&dec).expect("same chart").sub(&x).expect("same chart");
        Verdict::from_items("R_u - b(φ) = X", multivector_items(&back))
    });
    rep.finish();
    Ok(rep)
}

fn par_map<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    (0..n).into_par_iter().map(f).collect()
}
