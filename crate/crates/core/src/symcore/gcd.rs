//! Multivariate polynomial gcd over the rationals.
//!
//! Recursive primitive pseudo-remainder sequences: the polynomials are
//! viewed as univariate in their first occurring variable with coefficients
//! in the remaining ones, contents are split off recursively, and the
//! primitive parts are reduced by pseudo-division. The result is always
//! normalized to leading coefficient one.

use super::poly::{Monomial, Poly};
use super::Rational;
use num_traits::One;

/// Greatest common divisor, monic in graded-lex order. `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a.is_monomial() || b.is_monomial() {
        let (mono, other) = if a.is_monomial() { (a, b) } else { (b, a) };
        let m = mono.leading().unwrap().0.gcd(&other.monomial_content());
        return Poly::monomial(m, Rational::one());
    }
    if a == b {
        return a.monic();
    }
    // a variable present in only one operand: every common divisor is free
    // of it, so it divides each coefficient in that variable
    let width = a.width().max(b.width());
    if let Some(v) = (0..width).find(|&v| a.contains_var(v) != b.contains_var(v)) {
        let (has, lacks) = if a.contains_var(v) { (a, b) } else { (b, a) };
        let mut acc = lacks.monic();
        let mut coeffs = has.coeffs_in(v);
        // small coefficients first, they settle the gcd fastest
        coeffs.sort_by_key(|c| c.len());
        for c in coeffs.iter().filter(|c| !c.is_zero()) {
            if acc.is_one() {
                break;
            }
            acc = gcd(&acc, c);
        }
        return acc;
    }
    let Some(var) = first_var(a, b) else {
        return Poly::one();
    };

    let ca = content_in(a, var);
    let cb = content_in(b, var);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd(&ca, &cb);
    let g = primitive_prs(pa, pb, var);
    c.mul(&g).monic()
}

/// Gcd of the coefficients of `p` as a polynomial in `var`.
pub fn content_in(p: &Poly, var: usize) -> Poly {
    let mut coeffs = p.coeffs_in(var).into_iter().filter(|c| !c.is_zero());
    let Some(first) = coeffs.next() else {
        return Poly::zero();
    };
    let mut acc = first.monic();
    for c in coeffs {
        if acc.is_one() {
            break;
        }
        acc = gcd(&acc, &c);
    }
    acc
}

fn primitive_part(p: &Poly, var: usize) -> Poly {
    let c = content_in(p, var);
    p.div_exact(&c).expect("content divides")
}

fn first_var(a: &Poly, b: &Poly) -> Option<usize> {
    let width = a.width().max(b.width());
    (0..width).find(|&v| a.contains_var(v) || b.contains_var(v))
}

fn primitive_prs(pa: Poly, pb: Poly, var: usize) -> Poly {
    let (mut f, mut g) = if pa.degree_in(var) >= pb.degree_in(var) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    loop {
        if g.degree_in(var) == 0 {
            // g is a primitive polynomial free of var, i.e. a unit
            return Poly::one();
        }
        let r = pseudo_rem(&f, &g, var);
        if r.is_zero() {
            return g.monic();
        }
        f = g;
        g = primitive_part(&r, var);
    }
}

/// A nonzero multiple of the pseudo-remainder of `f` by `g` in `var`.
fn pseudo_rem(f: &Poly, g: &Poly, var: usize) -> Poly {
    let n = g.degree_in(var);
    let lc_g = g.lead_in(var);
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(var) >= n {
        let dr = r.degree_in(var);
        let lc_r = r.lead_in(var);
        let shift = Monomial::var(var, dr - n);
        let t = lc_r.mul(g).mul_monomial(&shift, &Rational::one());
        r = lc_g.mul(&r).sub(&t);
        let c = r.leading_coeff().cloned();
        if let Some(c) = c {
            // keep the rational coefficients small
            r = r.scale(&c.recip());
        }
    }
    r
}
