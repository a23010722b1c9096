//! Directed rounding of single `f64` operations.
//!
//! Each operation is computed in round-to-nearest and the exact rounding
//! error is recovered with an error-free transformation (TwoSum or FMA).
//! The sign of that error decides whether the nearest result already is the
//! correctly directed one or must be moved by one ulp. When the
//! transformation is not exact (underflow range) the result is widened
//! unconditionally.

const TINY: f64 = 1e-280;

#[inline]
fn directed(r: f64, err: f64) -> (f64, f64) {
    if r.is_nan() {
        return (r, r);
    }
    if r == f64::INFINITY {
        return (f64::MAX, r);
    }
    if r == f64::NEG_INFINITY {
        return (r, f64::MIN);
    }
    if err > 0.0 {
        (r, r.next_up())
    } else if err < 0.0 {
        (r.next_down(), r)
    } else {
        (r, r)
    }
}

#[inline]
fn widened(r: f64) -> (f64, f64) {
    if r.is_nan() || r.is_infinite() {
        return directed(r, 0.0);
    }
    (r.next_down(), r.next_up())
}

/// Returns `(round_down(a + b), round_up(a + b))`.
#[inline]
pub fn add(a: f64, b: f64) -> (f64, f64) {
    let r = a + b;
    if !r.is_finite() {
        return directed(r, 0.0);
    }
    let bb = r - a;
    let err = (a - (r - bb)) + (b - bb);
    directed(r, err)
}

/// Returns `(round_down(a - b), round_up(a - b))`.
#[inline]
pub fn sub(a: f64, b: f64) -> (f64, f64) {
    add(a, -b)
}

/// Returns `(round_down(a * b), round_up(a * b))`.
#[inline]
pub fn mul(a: f64, b: f64) -> (f64, f64) {
    let r = a * b;
    if a == 0.0 || b == 0.0 {
        return (r, r);
    }
    if !r.is_finite() {
        return directed(r, 0.0);
    }
    if r.abs() < TINY {
        return widened(r);
    }
    directed(r, a.mul_add(b, -r))
}

/// Returns `(round_down(a / b), round_up(a / b))`. `b` must be nonzero.
#[inline]
pub fn div(a: f64, b: f64) -> (f64, f64) {
    let q = a / b;
    if a == 0.0 {
        return (q, q);
    }
    if !q.is_finite() {
        return directed(q, 0.0);
    }
    if q.abs() < TINY || a.abs() < TINY {
        return widened(q);
    }
    let rem = (-q).mul_add(b, a);
    directed(q, rem * b.signum())
}

/// Returns `(round_down(sqrt x), round_up(sqrt x))` for `x >= 0`.
#[inline]
pub fn sqrt(x: f64) -> (f64, f64) {
    let s = x.sqrt();
    if x == 0.0 || x == f64::INFINITY {
        return (s, s);
    }
    if x < TINY {
        let (lo, hi) = widened(s);
        return (lo.max(0.0), hi);
    }
    directed(s, (-s).mul_add(s, x))
}
