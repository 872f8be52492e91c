//! Rational functions in canonical form.
//!
//! An [`Expr`] is `numerator / denominator` with `gcd(numerator,
//! denominator) = 1` and a denominator whose leading coefficient (graded
//! lex, first coordinate most significant) is one. Two expressions are
//! mathematically equal exactly when they are structurally equal, which is
//! what every "vanishes identically" verdict in the crate relies on.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::gcd::gcd;
use super::poly::{Monomial, Poly};
use super::{Chart, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Expr {
    num: Poly,
    den: Poly,
}

impl Expr {
    pub fn zero() -> Expr {
        Expr {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Expr {
        Expr::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Expr {
        Expr {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn int(n: i64) -> Expr {
        Expr::constant(Rational::from_integer(n.into()))
    }

    /// The coordinate function with index `index`.
    pub fn var(index: usize) -> Expr {
        Expr {
            num: Poly::var(index),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Expr {
        Expr {
            num: p,
            den: Poly::one(),
        }
    }

    /// `num / den` in canonical form.
    pub fn from_parts(num: Poly, den: Poly) -> Result<Expr> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Expr::normalize(num, den))
    }

    fn normalize(num: Poly, den: Poly) -> Expr {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Expr::zero();
        }
        if let Some(c) = den.as_constant() {
            return Expr {
                num: if c.is_one() { num } else { num.scale(&c.recip()) },
                den: Poly::one(),
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coeff().cloned().expect("nonzero denominator");
        if lc.is_one() {
            Expr { num, den }
        } else {
            let inv = lc.recip();
            Expr {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Total degree of a polynomial expression; `None` for zero or a proper fraction.
    pub fn total_degree(&self) -> Option<u32> {
        if self.den.is_one() {
            self.num.total_degree()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rational) -> Expr {
        if c.is_zero() {
            return Expr::zero();
        }
        Expr {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<Expr> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Expr::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Expr) -> Result<Expr> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if other.den.is_one() {
            if let Some(c) = other.num.as_constant() {
                return Ok(self.scale(&c.recip()));
            }
        }
        Ok(self * &other.recip()?)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, exp: i64) -> Result<Expr> {
        let e = u32::try_from(exp.unsigned_abs())
            .map_err(|_| Error::Syntax { pos: 0, msg: "exponent too large".into() })?;
        let positive = Expr {
            num: self.num.pow(e),
            den: self.den.pow(e),
        };
        if exp >= 0 {
            Ok(positive)
        } else {
            positive.recip()
        }
    }

    /// Partial derivative with respect to the coordinate with index `var`.
    pub fn diff(&self, var: usize) -> Expr {
        let dn = self.num.diff(var);
        if self.den.is_one() {
            return Expr::from_poly(dn);
        }
        let dd = self.den.diff(var);
        if dd.is_zero() {
            return Expr::normalize(dn, self.den.clone());
        }
        let top = dn.mul(&self.den).sub(&self.num.mul(&dd));
        Expr::normalize(top, self.den.mul(&self.den))
    }

    /// Partial derivative by coordinate name.
    pub fn diff_by(&self, chart: &Chart, coord: &str) -> Result<Expr> {
        Ok(self.diff(chart.index(coord)?))
    }

    /// Exact value at a point given in chart order.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.eval(point) / d)
    }

    /// Value at a point given by coordinate names; every coordinate must be assigned.
    pub fn eval_named<S: AsRef<str>>(&self, chart: &Chart, values: &[(S, Rational)]) -> Result<Rational> {
        self.eval(&chart.point(values)?)
    }

    /// Renames coordinate indices, e.g. when embedding into a larger chart.
    pub fn map_vars(&self, map: impl Fn(usize) -> usize + Copy) -> Expr {
        Expr::normalize(self.num.map_vars(map), self.den.map_vars(map))
    }

    /// Printable form in the expression grammar, re-parseable on `chart`.
    pub fn display<'a>(&'a self, chart: &'a Chart) -> ExprDisplay<'a> {
        ExprDisplay { expr: self, chart }
    }

    pub fn to_string_on(&self, chart: &Chart) -> String {
        self.display(chart).to_string()
    }
}

pub struct ExprDisplay<'a> {
    expr: &'a Expr,
    chart: &'a Chart,
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial, chart: &Chart) -> fmt::Result {
    let mut first = true;
    for (i, e) in m.exponents().iter().enumerate() {
        if *e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        let name = chart.names().get(i).map(String::as_str).unwrap_or("?");
        if *e == 1 {
            f.write_str(name)?;
        } else {
            write!(f, "{name}^{e}")?;
        }
    }
    Ok(())
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &Poly, chart: &Chart) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if k == 0 {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        if m.is_one() {
            write_rational(f, &abs)?;
        } else {
            if !abs.is_one() {
                write_rational(f, &abs)?;
                f.write_str("*")?;
            }
            write_monomial(f, m, chart)?;
        }
    }
    Ok(())
}

impl fmt::Display for ExprDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.expr;
        if e.den.is_one() {
            return write_poly(f, &e.num, self.chart);
        }
        f.write_str("(")?;
        write_poly(f, &e.num, self.chart)?;
        f.write_str(")/(")?;
        write_poly(f, &e.den, self.chart)?;
        f.write_str(")")
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.num.width().max(self.den.width()).max(1);
        let names: Vec<String> = (0..width).map(|i| format!("x{i}")).collect();
        let chart = Chart::new(&names).expect("generated names are valid");
        write!(f, "{}", self.display(&chart))
    }
}

impl Default for Expr {
    fn default() -> Self {
        Expr::zero()
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Self {
        Expr::int(n)
    }
}

impl From<Rational> for Expr {
    fn from(c: Rational) -> Self {
        Expr::constant(c)
    }
}

fn add_impl(a: &Expr, b: &Expr, negate: bool) -> Expr {
    let combine = |x: &Poly, y: &Poly| if negate { x.sub(y) } else { x.add(y) };
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate { -b } else { b.clone() };
    }
    if a.den.is_one() && b.den.is_one() {
        return Expr::from_poly(combine(&a.num, &b.num));
    }
    if a.den == b.den {
        return Expr::normalize(combine(&a.num, &b.num), a.den.clone());
    }
    let g = gcd(&a.den, &b.den);
    let bd = b.den.div_exact(&g).expect("gcd divides");
    let ad = a.den.div_exact(&g).expect("gcd divides");
    let num = combine(&a.num.mul(&bd), &b.num.mul(&ad));
    Expr::normalize(num, a.den.mul(&bd))
}

fn mul_impl(a: &Expr, b: &Expr) -> Expr {
    if a.is_zero() || b.is_zero() {
        return Expr::zero();
    }
    if a.den.is_one() && b.den.is_one() {
        return Expr::from_poly(a.num.mul(&b.num));
    }
    // cross-cancel before multiplying; both inputs are already reduced
    let g1 = gcd(&a.num, &b.den);
    let g2 = gcd(&b.num, &a.den);
    let an = a.num.div_exact(&g1).expect("gcd divides");
    let bd = b.den.div_exact(&g1).expect("gcd divides");
    let bn = b.num.div_exact(&g2).expect("gcd divides");
    let ad = a.den.div_exact(&g2).expect("gcd divides");
    let den = ad.mul(&bd);
    let lc = den.leading_coeff().cloned().expect("nonzero denominator");
    let num = an.mul(&bn);
    if lc.is_one() {
        Expr { num, den }
    } else {
        let inv = lc.recip();
        Expr {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                $body(self, rhs)
            }
        }
        impl $trait<Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                $body(&self, &rhs)
            }
        }
        impl $trait<&Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                $body(&self, rhs)
            }
        }
        impl $trait<Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| add_impl(a, b, false));
forward_binop!(Sub, sub, |a, b| add_impl(a, b, true));
forward_binop!(Mul, mul, mul_impl);

impl std::iter::Sum for Expr {
    fn sum<I: Iterator<Item = Expr>>(iter: I) -> Expr {
        iter.fold(Expr::zero(), |acc, e| acc + e)
    }
}
