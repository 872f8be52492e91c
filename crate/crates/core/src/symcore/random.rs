//! Seeded random polynomials for property checks over "for all f, g, h" claims.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::{Monomial, Poly};
use super::{Chart, Expr, Rational};

/// All exponent vectors in `dim` variables of total degree at most `degree`.
pub fn monomials_up_to(dim: usize, degree: u32) -> Vec<Monomial> {
    fn rec(dim: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == dim {
            out.push(Monomial::from_exponents(prefix));
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(dim, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim, degree, &mut Vec::with_capacity(dim), &mut out);
    out.sort();
    out
}

/// Random polynomial drawn from an existing generator.
pub fn random_poly_with(rng: &mut impl Rng, dim: usize, degree: u32) -> Expr {
    let terms: Vec<(Monomial, Rational)> = monomials_up_to(dim, degree)
        .into_iter()
        .filter_map(|m| {
            if rng.gen_bool(0.5) {
                let mut c: i64 = rng.gen_range(-3..=3);
                if c == 0 {
                    c = 1;
                }
                Some((m, Rational::from_integer(c.into())))
            } else {
                None
            }
        })
        .collect();
    if terms.is_empty() {
        let c: i64 = rng.gen_range(1..=3);
        return Expr::int(c);
    }
    Expr::from_poly(Poly::from_terms(terms))
}

/// Deterministic polynomial for `seed`: roughly half of the monomials of
/// total degree at most `degree`, each with a nonzero coefficient in `-3..=3`.
/// Never the zero polynomial.
pub fn random_poly(chart: &Chart, degree: u32, seed: u64) -> Expr {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_poly_with(&mut rng, chart.dim(), degree)
}

/// The generator every randomized check in the crate uses.
pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
