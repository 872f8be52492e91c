//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::time::Instant;

use rayon::prelude::*;

use common::*;
use jacobi_core::contact::Contact;
use jacobi_core::extcalc::{d, interior, lie_derivative, schouten, DiffForm, MultiVector};
use jacobi_core::jacobi::{
    check_jacobi_pair, find_jacobiator_witness, homogeneity_residual, jacobi_bracket, poissonization,
    sample_jacobiator,
};
use jacobi_core::jetalg::{j1, pr, random_section, spencer_d, JetAlgebroid};
use jacobi_core::residual::{trial_seed, Sampler};
use jacobi_core::Expr;

const SEED: u64 = 20_240_611;
const DEGREE: u32 = 3;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    for name in ["std_contact_r3", "poisson_r3"] {
        let p = pair_named(name);
        ensure(check_jacobi_pair(&p).is_jacobi, || format!("{name}: pair check failed"))?;
        let res = sample_jacobiator(&p, 20, DEGREE, SEED);
        if let Some(r) = res.iter().find(|r| !r.is_zero()) {
            return Err(format!("{name}: {r}"));
        }
    }
    let broken = pair_named("broken_r3");
    ensure(!check_jacobi_pair(&broken).is_jacobi, || "broken_r3 passed the pair check".into())?;
    let ([f, g, h], v) = find_jacobiator_witness(&broken, 2).ok_or("no witness for broken_r3")?;
    let c = broken.chart();
    Ok(format!(
        "20 triples of degree {DEGREE} on 2 pairs; broken_r3 witness ({}, {}, {}) -> {}",
        f.to_string_on(c),
        g.to_string_on(c),
        h.to_string_on(c),
        v.to_string_on(c)
    ))
}

fn criterion_2() -> Outcome {
    for name in ["std_contact_r3", "contact_r5"] {
        let c = Contact::new(&contact_named(name)).unwrap();
        let p = c.induced_jacobi_pair();
        let bad = (0..20).into_par_iter().find_map_any(|i| {
            let mut s = Sampler::new(c.chart(), DEGREE, trial_seed(SEED, i));
            let (f, g) = (s.poly(), s.poly());
            let lhs = c.reeb_bracket(&f, &g);
            let rhs = jacobi_bracket(&p, &f, &g).unwrap();
            (lhs != rhs).then(|| format!("{name} trial {i}: {}", (lhs - rhs).to_string_on(c.chart())))
        });
        if let Some(msg) = bad {
            return Err(msg);
        }
    }
    Ok("20 pairs (f, g) each on std_contact_r3 and contact_r5".into())
}

fn criterion_3() -> Outcome {
    for (name, c) in contacts() {
        let r = c.reeb_field();
        ensure(c.form().eval(r).unwrap().is_one(), || format!("{name}: θ(R) ≠ 1"))?;
        ensure(interior(r, c.dtheta()).unwrap().is_zero(), || format!("{name}: i_R dθ ≠ 0"))?;
        let bad = (0..20).into_par_iter().find_map_any(|i| {
            let mut s = Sampler::new(c.chart(), DEGREE, trial_seed(SEED, i));
            let (f, u) = (s.poly(), s.poly());
            // R_{fu} = f R_u + b(u df)
            let lhs = c.reeb_field_of(&(&f * &u));
            let udf = DiffForm::exact(c.chart(), &f).scale(&u);
            let rhs = c.reeb_field_of(&u).scale(&f).add(&c.b_map(&udf).unwrap()).unwrap();
            if lhs != rhs {
                return Some(format!("{name} trial {i}: R_fu identity"));
            }
            if i < 10 {
                let g = s.poly();
                let rf = c.reeb_field_of(&f);
                let rg = c.reeb_field_of(&g);
                let lhs = jacobi_core::extcalc::vf_bracket(&rf, &rg).unwrap();
                let rhs = c.reeb_field_of(&c.reeb_bracket(&f, &g));
                if lhs != rhs {
                    return Some(format!("{name} trial {i}: [R_f, R_g] ≠ R_{{f,g}}"));
                }
            }
            None
        });
        if let Some(msg) = bad {
            return Err(msg);
        }
    }
    Ok(format!("{} contact forms, 20 f and 10 (f, g) each", contacts().len()))
}

fn criterion_4() -> Outcome {
    let pairs = valid_pairs();
    for (name, p) in &pairs {
        let rep = jacobi_core::jetalg::check_spencer_axioms(p, 20, SEED);
        if let Some(w) = rep.witness() {
            return Err(format!("{name}: {w}"));
        }
        ensure(rep.leibniz_residuals.len() >= 20 && rep.vertical_residuals.len() >= 20, || "too few trials".into())?;
    }
    let rep = jacobi_core::jetalg::check_spencer_axioms(&pair_named("broken_r3"), 20, SEED);
    ensure(!rep.all_zero, || "broken_r3 passed the Spencer checks".into())?;
    Ok(format!(
        "20 trials on {} pairs; broken_r3 witness: {}",
        pairs.len(),
        rep.witness().map(|w| w.check.clone()).unwrap_or_default()
    ))
}

fn criterion_5() -> Outcome {
    let pairs = valid_pairs();
    for (name, p) in &pairs {
        let alg = JetAlgebroid::new(p).unwrap();
        let c = p.chart();
        let bad = (0..20).into_par_iter().find_map_any(|i| {
            let mut s = Sampler::new(c, DEGREE, trial_seed(SEED, i));
            let (u, v) = (s.poly(), s.poly());
            let b = alg.bracket(&j1(c, &u), &j1(c, &v)).unwrap();
            if pr(&b) != jacobi_bracket(p, &u, &v).unwrap() {
                return Some(format!("{name} trial {i}: pr[j¹u, j¹v] ≠ {{u, v}}"));
            }
            (!spencer_d(&b).is_zero()).then(|| format!("{name} trial {i}: D[j¹u, j¹v] ≠ 0"))
        });
        if let Some(msg) = bad {
            return Err(msg);
        }
    }
    Ok(format!("20 pairs (u, v) on {} pairs", pairs.len()))
}

fn criterion_6() -> Outcome {
    let pairs = valid_pairs();
    for (name, p) in &pairs {
        let alg = JetAlgebroid::new(p).unwrap();
        let c = p.chart();
        // nested brackets grow quickly, so the Jacobi identity uses degree 2
        let bad = (0..10).into_par_iter().find_map_any(|i| {
            let mut s = Sampler::new(c, 2, trial_seed(SEED, i));
            let (a, b, g) = (random_section(&mut s, c), random_section(&mut s, c), random_section(&mut s, c));
            let (f, v) = (s.poly(), s.poly());
            let ab = alg.bracket(&a, &b).unwrap();
            let rho_a = alg.anchor(&a).unwrap();
            let leibniz = alg
                .bracket(&a, &b.scale(&f))
                .unwrap()
                .sub(&ab.scale(&f).add(&b.scale(&rho_a.apply(&f).unwrap())).unwrap())
                .unwrap();
            if !leibniz.is_zero() {
                return Some(format!("{name} trial {i}: Leibniz"));
            }
            let morph = alg
                .anchor(&ab)
                .unwrap()
                .sub(&jacobi_core::extcalc::vf_bracket(&rho_a, &alg.anchor(&b).unwrap()).unwrap())
                .unwrap();
            if !morph.is_zero() {
                return Some(format!("{name} trial {i}: anchor morphism"));
            }
            let jac = alg
                .bracket(&ab, &g)
                .unwrap()
                .add(&alg.bracket(&alg.bracket(&b, &g).unwrap(), &a).unwrap())
                .unwrap()
                .add(&alg.bracket(&alg.bracket(&g, &a).unwrap(), &b).unwrap())
                .unwrap();
            if !jac.is_zero() {
                return Some(format!("{name} trial {i}: bracket Jacobi identity"));
            }
            let flat = alg.nabla(&ab, &v).unwrap() - alg.nabla(&a, &alg.nabla(&b, &v).unwrap()).unwrap()
                + alg.nabla(&b, &alg.nabla(&a, &v).unwrap()).unwrap();
            (!flat.is_zero()).then(|| format!("{name} trial {i}: ∇ flatness"))
        });
        if let Some(msg) = bad {
            return Err(msg);
        }
    }
    Ok(format!("10 triples on {} pairs", pairs.len()))
}

fn criterion_7() -> Outcome {
    let mut count = 0;
    for (name, p) in valid_pairs() {
        if p.r().is_zero() {
            continue;
        }
        count += 1;
        let alg = JetAlgebroid::new(&p).unwrap();
        let c = p.chart().clone();
        for i in 0..10 {
            let f = Sampler::new(&c, DEGREE, trial_seed(SEED, i)).poly();
            let lhs = alg.nabla(&j1(&c, &f), &Expr::one()).unwrap();
            ensure(lhs == -p.reeb(&f), || format!("{name} trial {i}: ∇_(j¹f)(1) ≠ -R(f)"))?;
        }
    }
    Ok(format!("10 f on {count} pairs with R ≠ 0"))
}

fn criterion_8() -> Outcome {
    for e in jacobi_core::catalog::entries() {
        let p = e.structure.jacobi_pair().unwrap();
        let pi = poissonization(&p, "t").unwrap();
        let poisson = schouten(&pi, &pi).unwrap().is_zero();
        ensure(poisson == e.valid, || format!("{}: [Π, Π] = 0 is {poisson}", e.name))?;
        ensure(homogeneity_residual(&pi).unwrap().is_zero(), || format!("{}: L_(t∂t)Π ≠ -Π", e.name))?;
    }
    Ok("all catalog structures, including broken_r3".into())
}

fn criterion_9() -> Outcome {
    let c = r3();
    let bad = (0..20).into_par_iter().find_map_any(|i| {
        let mut s = Sampler::new(&c, 2, trial_seed(SEED, i));
        for k in 0..3 {
            let w = s.form(&c, k);
            if !d(&d(&w)).is_zero() {
                return Some(format!("trial {i}: d² ≠ 0 in grade {k}"));
            }
        }
        let x = s.vector_field(&c);
        for k in 1..3 {
            let w = s.form(&c, k);
            let cartan = interior(&x, &d(&w)).unwrap().add(&d(&interior(&x, &w).unwrap())).unwrap();
            if lie_derivative(&x, &w).unwrap() != cartan {
                return Some(format!("trial {i}: Cartan formula in grade {k}"));
            }
        }
        let mvs: Vec<MultiVector> = [1, 1, 1, 2, 2, 2].iter().map(|k| s.multivector(&c, *k)).collect();
        for (a, b) in [(0, 1), (0, 3), (3, 4)] {
            let (p, q) = (&mvs[a], &mvs[b]);
            let sign = if p.grade() % 2 == 0 && q.grade() % 2 == 0 { Expr::int(-1) } else { Expr::one() };
            let lhs = schouten(p, q).unwrap();
            let rhs = schouten(q, p).unwrap().scale(&-sign);
            if lhs != rhs {
                return Some(format!("trial {i}: antisymmetry in grades ({}, {})", p.grade(), q.grade()));
            }
        }
        for (a, b, g) in [(0, 1, 2), (0, 1, 3), (0, 3, 4), (3, 4, 0)] {
            if !graded_jacobi(&mvs[a], &mvs[b], &mvs[g]).is_zero() {
                return Some(format!(
                    "trial {i}: graded Jacobi in grades ({}, {}, {})",
                    mvs[a].grade(),
                    mvs[b].grade(),
                    mvs[g].grade()
                ));
            }
        }
        None
    });
    match bad {
        Some(msg) => Err(msg),
        None => Ok("20 trials: d², Cartan, antisymmetry (1,1) (1,2) (2,2), Jacobi (1,1,1) (1,1,2) (1,2,2) (2,2,1)".into()),
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("pair equations vs Jacobi identity", criterion_1),
        ("contact bracket equals induced Jacobi bracket", criterion_2),
        ("Reeb field laws", criterion_3),
        ("Spencer operator axioms", criterion_4),
        ("bracket recovered from the algebroid", criterion_5),
        ("algebroid laws", criterion_6),
        ("∇ of j¹f on the unit section", criterion_7),
        ("Poissonization", criterion_8),
        ("calculus substrate", criterion_9),
    ];
    // ACCEPTANCE_ONLY=3,4 runs a subset, for profiling
    let only: Option<Vec<usize>> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .map(|v| v.split(',').filter_map(|s| s.trim().parse().ok()).collect());
    let start = Instant::now();
    let results: Vec<(Outcome, f64)> = criteria
        .par_iter()
        .enumerate()
        .map(|(i, (_, f))| {
            if only.as_ref().is_some_and(|o| !o.contains(&(i + 1))) {
                return (Ok("skipped".to_string()), 0.0);
            }
            let t = Instant::now();
            let out = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
            (out, t.elapsed().as_secs_f64())
        })
        .collect();
    let mut failed = 0;
    for (i, ((label, _), (out, secs))) in criteria.iter().zip(&results).enumerate() {
        match out {
            Ok(detail) => println!("criterion {} PASS  {label} ({detail}) [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL  {label}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
