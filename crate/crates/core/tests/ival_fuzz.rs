//! Interval operations against a multiprecision oracle with directed
//! rounding.

mod common;

use common::intervals::{is_binary, violations, OPS};
use enclose::ival::{bisect_root, iv_arith, Interval, Op};
use proptest::prelude::*;

#[test]
fn operations_enclose_the_oracle() {
    let failures = violations(100_000, 0x1a2b_3c4d);
    assert!(failures.is_empty(), "{} failures, first: {}", failures.len(), failures[0]);
}

#[test]
fn exact_cases_are_points() {
    let one = Interval::point(1.0);
    assert_eq!(one + one, Interval::point(2.0));
    assert_eq!(Interval::point(4.0).sqrt().unwrap(), Interval::point(2.0));
    assert!(Interval::point(0.0).sin() == Interval::point(0.0));
    assert!(Interval::point(0.0).cos().contains(1.0));
}

fn finite_interval() -> impl Strategy<Value = Interval> {
    (-1.0e6f64..1.0e6, 0.0f64..1.0e3).prop_map(|(c, r)| Interval::new(c - r, c + r))
}

fn widen(x: Interval, l: f64, r: f64) -> Interval {
    Interval::new(x.lo() - l, x.hi() + r)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn widening_never_narrows(a in finite_interval(), b in finite_interval(), l in 0.0f64..10.0, r in 0.0f64..10.0, k in 0usize..8) {
        let op = OPS[k];
        let (a, b) = match op {
            Op::Sqrt => (Interval::new(a.lo().abs(), a.lo().abs() + a.width()), b),
            Op::Exp => (Interval::new(a.lo() / 1e4, a.hi() / 1e4), b),
            Op::Div if b.contains_zero() => (a, Interval::new(b.hi().abs() + 1.0, b.hi().abs() + 2.0 + b.width())),
            _ => (a, b),
        };
        let wa = match op {
            Op::Sqrt => Interval::new((a.lo() - l).max(0.0), a.hi() + r),
            _ => widen(a, l, r),
        };
        let wb = match op {
            Op::Div if b.is_positive() => Interval::new(b.lo() * (1.0 - l / 20.0), b.hi() + r),
            Op::Div => Interval::new(b.lo() - r, b.hi() * (1.0 - l / 20.0)),
            _ => widen(b, r, l),
        };
        let binary = is_binary(op);
        let narrow = iv_arith(op, a, binary.then_some(b)).unwrap();
        let wide = iv_arith(op, wa, binary.then_some(wb)).unwrap();
        prop_assert!(wide.encloses(narrow), "{:?}: {:?} not inside {:?}", op, narrow, wide);
    }

    #[test]
    fn bisection_meets_tolerance(c in -50.0f64..50.0, tol_exp in -12i32..-2) {
        let tol = 10f64.powi(tol_exp);
        let root = bisect_root(|x| x - Interval::point(c), Interval::new(c - 3.0, c + 5.0), tol).unwrap();
        prop_assert!(root.contains(c));
        prop_assert!(root.width() <= tol);
    }
}
