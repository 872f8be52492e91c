//! Randomized identity checks and their records.

use std::fmt;

use rand::Rng;

use crate::extcalc::{DiffForm, MultiVector};
use crate::symcore::random::{random_poly_with, rng_for};
use crate::symcore::{Chart, Expr};

/// One evaluated identity: the left side minus the right side, which must be
/// identically zero. `seed` regenerates the random inputs of the trial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub check: String,
    pub seed: u64,
    pub value: Expr,
}

impl Residual {
    pub fn new(check: impl Into<String>, seed: u64, value: Expr) -> Residual {
        Residual {
            check: check.into(),
            seed,
            value,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [seed {}]: {:?}", self.check, self.seed, self.value)
    }
}

/// Seed of trial `i` in a batch started from `base`. Trials are independent,
/// so a single failing trial can be replayed from its own seed.
pub fn trial_seed(base: u64, i: usize) -> u64 {
    base.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i as u64).rotate_left(17) ^ base
}

/// Random polynomial inputs for one trial.
pub struct Sampler {
    rng: rand_chacha::ChaCha8Rng,
    dim: usize,
    degree: u32,
}

impl Sampler {
    pub fn new(chart: &Chart, degree: u32, seed: u64) -> Sampler {
        Sampler {
            rng: rng_for(seed),
            dim: chart.dim(),
            degree,
        }
    }

    pub fn poly(&mut self) -> Expr {
        random_poly_with(&mut self.rng, self.dim, self.degree)
    }

    /// A polynomial that may also be zero or a small constant, so degenerate
    /// cases get exercised.
    pub fn poly_or_simple(&mut self) -> Expr {
        match self.rng.gen_range(0..8) {
            0 => Expr::zero(),
            1 => Expr::int(self.rng.gen_range(-2..=2)),
            _ => self.poly(),
        }
    }

    pub fn vector_field(&mut self, chart: &Chart) -> MultiVector {
        let comps = (0..chart.dim()).map(|_| self.poly_or_simple()).collect();
        MultiVector::from_vec(chart, comps).expect("dimension matches")
    }

    pub fn one_form(&mut self, chart: &Chart) -> DiffForm {
        let comps = (0..chart.dim()).map(|_| self.poly_or_simple()).collect();
        DiffForm::from_vec(chart, comps).expect("dimension matches")
    }

    pub fn multivector(&mut self, chart: &Chart, grade: usize) -> MultiVector {
        let comps = index_tuples(chart.dim(), grade)
            .into_iter()
            .map(|k| (k, self.poly_or_simple()))
            .collect::<Vec<_>>();
        MultiVector::from_components(chart, grade, comps).expect("valid tuples")
    }

    pub fn form(&mut self, chart: &Chart, grade: usize) -> DiffForm {
        let comps = index_tuples(chart.dim(), grade)
            .into_iter()
            .map(|k| (k, self.poly_or_simple()))
            .collect::<Vec<_>>();
        DiffForm::from_components(chart, grade, comps).expect("valid tuples")
    }
}

/// All strictly increasing tuples of length `k` below `n`.
pub fn index_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut Vec::new(), &mut out);
    out
}
