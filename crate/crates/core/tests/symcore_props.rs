mod common;

use common::strategies::{poly, rational_fn};
use common::*;
use jacobi_core::symcore::{parse, random_poly, rational};
use jacobi_core::{Error, Expr};
use proptest::prelude::*;

#[test]
fn parse_examples() {
    let c = r3();
    assert!(parse("0", &c).unwrap().is_zero());
    assert!(parse("x*y - y*x", &c).unwrap().is_zero());
    // (x²-1)·1 = (x+1)·(x-1), checked on the canonical parts
    let q = parse("(x^2-1)/(x-1)", &c).unwrap();
    let xp1 = parse("x+1", &c).unwrap();
    assert_eq!(q, xp1);
    let lhs = parse("x^2 - 1", &c).unwrap();
    assert_eq!(q.numer().mul(&parse("x - 1", &c).unwrap().numer().clone()), lhs.numer().clone());
}

#[test]
fn field_operation_examples() {
    let c = r3();
    let x = ex(&c, "x");
    assert!((&x + &(-&x)).is_zero());
    assert!((x.recip().unwrap() * &x).is_one());
    assert_eq!(ex(&c, "x^2 - 1").checked_div(&ex(&c, "x - 1")).unwrap(), ex(&c, "x + 1"));
    assert_eq!(x.checked_div(&Expr::zero()), Err(Error::DivisionByZero));
}

#[test]
fn diff_examples() {
    let c = r3();
    assert_eq!(ex(&c, "x^2*y").diff_by(&c, "x").unwrap(), ex(&c, "2*x*y"));
    assert!(ex(&c, "7/3").diff(0).is_zero());
    // x²·d(1/x)/dx + 1 ≡ 0
    let d = ex(&c, "1/x").diff(0);
    assert!((ex(&c, "x^2") * d + Expr::one()).is_zero());
    assert!(matches!(ex(&c, "x").diff_by(&c, "w"), Err(Error::UnknownCoordinate(_))));
}

#[test]
fn eval_examples() {
    let c = Chart2::xy();
    assert_eq!(ex(&c, "x + y").eval(&[rational(1, 1), rational(2, 1)]).unwrap(), rational(3, 1));
    assert_eq!(ex(&c, "1/x").eval(&[rational(0, 1), rational(5, 1)]), Err(Error::Pole));
    let q = ex(&c, "(x^2-1)/(x-1)");
    let p = [rational(2, 1), rational(0, 1)];
    assert_eq!(q.eval(&p).unwrap(), ex(&c, "x + 1").eval(&p).unwrap());
    assert_eq!(q.eval(&p).unwrap(), rational(3, 1));
    assert!(matches!(
        ex(&c, "x").eval_named(&c, &[("x", rational(1, 1))]),
        Err(Error::MissingCoordinate(_))
    ));
}

struct Chart2;
impl Chart2 {
    fn xy() -> jacobi_core::Chart {
        jacobi_core::Chart::new(&["x", "y"]).unwrap()
    }
}

#[test]
fn random_poly_contract() {
    let c = r3();
    for seed in 0..20 {
        assert!(random_poly(&c, 0, seed).as_constant().is_some());
        assert!(random_poly(&c, 2, seed).total_degree().unwrap_or(0) <= 2);
        assert_eq!(random_poly(&c, 3, seed), random_poly(&c, 3, seed));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(a in rational_fn(3), b in rational_fn(3), c in rational_fn(3)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.recip().unwrap()).is_one());
        }
    }

    #[test]
    fn leibniz_and_commuting_partials(a in rational_fn(3), b in rational_fn(3)) {
        for x in 0..3 {
            prop_assert_eq!((&a * &b).diff(x), a.diff(x) * &b + &a * &b.diff(x));
            for y in 0..3 {
                prop_assert_eq!(a.diff(x).diff(y), a.diff(y).diff(x));
            }
        }
    }

    #[test]
    fn eval_is_a_ring_morphism(a in poly(3, 3, 4), b in poly(3, 3, 4), p in prop::collection::vec(-5i64..=5, 3)) {
        let pt: Vec<_> = p.iter().map(|v| rational(*v, 1)).collect();
        prop_assert_eq!((&a * &b).eval(&pt).unwrap(), a.eval(&pt).unwrap() * b.eval(&pt).unwrap());
        prop_assert_eq!((&a + &b).eval(&pt).unwrap(), a.eval(&pt).unwrap() + b.eval(&pt).unwrap());
    }

    #[test]
    fn print_then_parse_is_identity(a in rational_fn(3)) {
        let c = r3();
        let printed = a.to_string_on(&c);
        let back = parse(&printed, &c).unwrap();
        prop_assert_eq!(back.to_string_on(&c), printed);
        prop_assert_eq!(back, a);
    }
}
