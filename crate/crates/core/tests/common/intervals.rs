//! Interval operations against a multiprecision oracle with directed
//! rounding.

use astro_float::{BigFloat, Consts, RoundingMode};
use enclose::ival::{iv_arith, Interval, Op};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ARITH_BITS: usize = 1024;
const TRANS_BITS: usize = 320;

struct Oracle {
    consts: Consts,
}

impl Oracle {
    fn new() -> Self {
        Self { consts: Consts::new().expect("constants cache") }
    }

    /// Lower and upper multiprecision bounds of `op(x, y)`.
    fn eval(&mut self, op: Op, x: f64, y: f64) -> (BigFloat, BigFloat) {
        let bx = BigFloat::from_f64(x, ARITH_BITS);
        let by = BigFloat::from_f64(y, ARITH_BITS);
        let run = |rm: RoundingMode, cc: &mut Consts| match op {
            Op::Add => bx.add(&by, ARITH_BITS, rm),
            Op::Sub => bx.sub(&by, ARITH_BITS, rm),
            Op::Mul => bx.mul(&by, ARITH_BITS, rm),
            Op::Div => bx.div(&by, ARITH_BITS, rm),
            Op::Sqrt => bx.sqrt(ARITH_BITS, rm),
            Op::Sin => bx.sin(TRANS_BITS, rm, cc),
            Op::Cos => bx.cos(TRANS_BITS, rm, cc),
            Op::Exp => bx.exp(TRANS_BITS, rm, cc),
        };
        let lo = run(RoundingMode::Down, &mut self.consts);
        let hi = run(RoundingMode::Up, &mut self.consts);
        (lo, hi)
    }
}

fn le(a: &BigFloat, b: &BigFloat) -> bool {
    matches!(a.cmp(b), Some(c) if c <= 0)
}

fn magnitude(rng: &mut ChaCha8Rng, lo_exp: i32, hi_exp: i32) -> f64 {
    let m: f64 = rng.random_range(1.0..10.0);
    m * 10f64.powi(rng.random_range(lo_exp..=hi_exp))
}

fn signed(rng: &mut ChaCha8Rng, lo_exp: i32, hi_exp: i32) -> f64 {
    let x = magnitude(rng, lo_exp, hi_exp);
    if rng.random_bool(0.5) {
        x
    } else {
        -x
    }
}

/// An interval around `c`: a point, a few ulps, or a relative spread.
fn around(rng: &mut ChaCha8Rng, c: f64) -> Interval {
    match rng.random_range(0..4) {
        0 => Interval::point(c),
        1 => {
            let k = rng.random_range(1..8);
            let (mut lo, mut hi) = (c, c);
            for _ in 0..k {
                lo = lo.next_down();
                hi = hi.next_up();
            }
            Interval::new(lo, hi)
        }
        _ => {
            let r = c.abs() * 10f64.powi(rng.random_range(-15..=0)) * rng.random::<f64>();
            Interval::new(c - r, c + r)
        }
    }
}

fn positive(rng: &mut ChaCha8Rng, lo_exp: i32, hi_exp: i32) -> Interval {
    let c = magnitude(rng, lo_exp, hi_exp);
    let x = around(rng, c);
    Interval::new(x.lo().max(c * 0.5), x.hi())
}

fn members(rng: &mut ChaCha8Rng, x: Interval) -> [f64; 3] {
    let t: f64 = rng.random();
    let inner = (x.lo() + t * (x.hi() - x.lo())).clamp(x.lo(), x.hi());
    [x.lo(), x.hi(), inner]
}

/// Operands for `op` within the ranges where the oracle is exact enough.
fn operands(rng: &mut ChaCha8Rng, op: Op) -> (Interval, Interval) {
    match op {
        Op::Add | Op::Sub | Op::Mul => {
            let (ca, cb) = (signed(rng, -100, 100), signed(rng, -100, 100));
            (around(rng, ca), around(rng, cb))
        }
        Op::Div => {
            let c = signed(rng, -100, 100);
            let a = around(rng, c);
            let b = positive(rng, -100, 100);
            (a, if rng.random_bool(0.5) { b } else { -b })
        }
        Op::Sqrt => (positive(rng, -100, 100), Interval::ZERO),
        Op::Sin | Op::Cos => {
            let c = rng.random_range(-1.0e4..1.0e4);
            let a = if rng.random_bool(0.1) {
                Interval::new(c, c + rng.random_range(0.0..7.0))
            } else {
                around(rng, c)
            };
            (a, Interval::ZERO)
        }
        Op::Exp => {
            let c = rng.random_range(-700.0..700.0);
            let a = around(rng, c);
            (Interval::new(a.lo().max(-740.0), a.hi().min(700.0)), Interval::ZERO)
        }
    }
}

pub const OPS: [Op; 8] = [Op::Add, Op::Sub, Op::Mul, Op::Div, Op::Sqrt, Op::Sin, Op::Cos, Op::Exp];

pub fn is_binary(op: Op) -> bool {
    matches!(op, Op::Add | Op::Sub | Op::Mul | Op::Div)
}

/// Sampled members of the operands whose exact image escapes the computed
/// enclosure, over `cases` random operations.
pub fn violations(cases: usize, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut oracle = Oracle::new();
    let mut failures = Vec::new();
    for case in 0..cases {
        let op = OPS[case % OPS.len()];
        let (a, b) = operands(&mut rng, op);
        let r = iv_arith(op, a, is_binary(op).then_some(b)).expect("valid operands");
        let xs = members(&mut rng, a);
        let ys = if is_binary(op) { members(&mut rng, b) } else { [0.0; 3] };
        for (i, &x) in xs.iter().enumerate() {
            let y = ys[if is_binary(op) { (i + case) % 3 } else { 0 }];
            let (lo, hi) = oracle.eval(op, x, y);
            let rlo = BigFloat::from_f64(r.lo(), ARITH_BITS);
            let rhi = BigFloat::from_f64(r.hi(), ARITH_BITS);
            if !(le(&rlo, &lo) && le(&hi, &rhi)) {
                failures.push(format!("{op:?} {a:?} {b:?} at ({x:e}, {y:e}) -> {r:?}"));
            }
        }
    }
    failures
}
