//! Enclosures of pi, ln 2, exp, sin and cos.
//!
//! Point arguments are reduced against interval constants and the reduced
//! argument is fed to a Taylor polynomial evaluated in interval arithmetic,
//! with an explicit bound on the truncated tail.

use std::f64::consts::{LN_2, PI};

use super::{DomainError, Interval};

/// An enclosure of pi one ulp wide. `f64::consts::PI` is the nearest double
/// below pi.
pub fn pi_enclosure() -> Interval {
    Interval::new(PI, PI.next_up())
}

/// An enclosure of ln 2. `f64::consts::LN_2` lies below ln 2.
pub fn ln2_enclosure() -> Interval {
    Interval::new(LN_2, LN_2.next_up())
}

fn half_pi() -> Interval {
    pi_enclosure() * 0.5
}

// Two-part constants: the leading part has enough trailing zero bits that
// `k * HI` is exact for |k| < 2^20; the tail is enclosed by its neighbours.
const LN2_HI: f64 = 6.93147180369123816490e-01;
const LN2_LO: f64 = 1.90821492927058770002e-10;
const PIO2_HI: f64 = 1.57079632673412561417e+00;
const PIO2_LO: f64 = 6.07710050650619224932e-11;

/// Encloses `x - k*c` where `c = hi + lo` up to the enclosure of `lo`.
fn reduce(x: f64, k: f64, hi: f64, lo: f64, whole: Interval) -> Interval {
    if k.abs() < 1048576.0 {
        let tail = Interval::new(lo.next_down(), lo.next_up());
        (Interval::point(x) - Interval::point(k * hi)) - tail * k
    } else {
        Interval::point(x) - whole * k
    }
}

// Factorials 1/n! as intervals, n = 0..=N_TERMS.
const N_TERMS: usize = 28;

fn inv_factorials() -> &'static [Interval; N_TERMS + 1] {
    use std::sync::OnceLock;
    static T: OnceLock<[Interval; N_TERMS + 1]> = OnceLock::new();
    T.get_or_init(|| {
        let mut t = [Interval::ONE; N_TERMS + 1];
        for n in 1..=N_TERMS {
            t[n] = t[n - 1] / Interval::point(n as f64);
        }
        t
    })
}

/// `sum_j c_j x^j` by Horner, plus a tail of magnitude at most `tail`.
fn horner(x: Interval, coeffs: &[Interval], tail: f64) -> Interval {
    let mut acc = Interval::ZERO;
    for c in coeffs.iter().rev() {
        acc = acc * x + *c;
    }
    acc + Interval::new(-tail, tail)
}

fn exp_small(r: Interval) -> Interval {
    // |r| <= 0.35 + tiny; sum to degree 22, tail <= |r|^23/23! * e^|r|.
    let f = inv_factorials();
    let deg = 22;
    let m = r.mag();
    let tail = (m.powi(deg as i32 + 1) * f[deg + 1].hi() * 1.5).max(0.0) * (1.0 + 1e-10);
    horner(r, &f[..=deg], tail)
}

/// `sin(r)` for `|r| <= pi/4 + eps`.
fn sin_small(r: Interval) -> Interval {
    let f = inv_factorials();
    let mut coeffs = [Interval::ZERO; 26];
    for (j, c) in coeffs.iter_mut().enumerate() {
        if j % 2 == 1 {
            *c = if (j / 2) % 2 == 0 { f[j] } else { -f[j] };
        }
    }
    let m = r.mag();
    let tail = m.powi(27) * f[27].hi() * (1.0 + 1e-10);
    horner(r, &coeffs, tail).intersect(Interval::UNIT).unwrap_or(Interval::UNIT)
}

/// `cos(r)` for `|r| <= pi/4 + eps`.
fn cos_small(r: Interval) -> Interval {
    let f = inv_factorials();
    let mut coeffs = [Interval::ZERO; 27];
    for (j, c) in coeffs.iter_mut().enumerate() {
        if j % 2 == 0 {
            *c = if (j / 2) % 2 == 0 { f[j] } else { -f[j] };
        }
    }
    let m = r.mag();
    let tail = m.powi(28) * f[28].hi() * (1.0 + 1e-10);
    horner(r, &coeffs, tail).intersect(Interval::UNIT).unwrap_or(Interval::UNIT)
}

/// `sin(x + q*pi/2)` for a point `x`.
fn sin_shifted_point(x: f64, q: i64) -> Interval {
    if !x.is_finite() {
        return Interval::UNIT;
    }
    let k = (x / (PI / 2.0)).round();
    if k.abs() > 1e15 {
        return Interval::UNIT;
    }
    let r = reduce(x, k, PIO2_HI, PIO2_LO, half_pi());
    let quadrant = ((k as i64 + q) % 4 + 4) % 4;
    match quadrant {
        0 => sin_small(r),
        1 => cos_small(r),
        2 => -sin_small(r),
        _ => -cos_small(r),
    }
}

/// Hull of `sin(t + q*pi/2)` over `t` in `x`.
fn sin_shifted(x: Interval, q: i64) -> Interval {
    let (lo, hi) = (x.lo(), x.hi());
    if !(lo.is_finite() && hi.is_finite()) || hi - lo >= 6.3 {
        return Interval::UNIT;
    }
    let mut out = sin_shifted_point(lo, q).hull(sin_shifted_point(hi, q));
    if lo == hi {
        return out;
    }
    // Extrema of sin(t + q pi/2) sit at t = (j - q) pi/2 for odd j.
    let hp = half_pi();
    let j0 = (lo / (PI / 2.0)).floor() as i64 - 1;
    let j1 = (hi / (PI / 2.0)).ceil() as i64 + 1;
    for j in j0..=j1 {
        let jj = j + q;
        if jj.rem_euclid(2) != 1 {
            continue;
        }
        let c = hp * (j as f64);
        if c.overlaps(x) {
            let v = if jj.rem_euclid(4) == 1 { 1.0 } else { -1.0 };
            out = out.hull(Interval::point(v));
        }
    }
    out
}

impl Interval {
    pub fn sin(self) -> Interval {
        sin_shifted(self, 0)
    }

    pub fn cos(self) -> Interval {
        sin_shifted(self, 1)
    }

    /// Fails when the upper endpoint would overflow.
    pub fn exp(self) -> Result<Interval, DomainError> {
        if self.hi() > 709.0 {
            return Err(DomainError::Overflow);
        }
        let lo = exp_point(self.lo()).lo().max(0.0);
        Ok(Interval::new(lo, exp_point(self.hi()).hi()))
    }

    pub fn cosh(self) -> Result<Interval, DomainError> {
        let e = self.exp()?;
        let em = (-self).exp()?;
        let raw = (e + em) * 0.5;
        Ok(Interval::new(raw.lo().max(1.0), raw.hi().max(1.0)))
    }

    pub fn sinh(self) -> Result<Interval, DomainError> {
        let lo = Interval::point(self.lo());
        let hi = Interval::point(self.hi());
        let f = |t: Interval| -> Result<Interval, DomainError> {
            if t.mag() < 0.5 {
                // Series avoids cancellation near zero.
                let fct = inv_factorials();
                let mut c = [Interval::ZERO; 20];
                for (j, cj) in c.iter_mut().enumerate() {
                    if j % 2 == 1 {
                        *cj = fct[j];
                    }
                }
                let tail = t.mag().powi(21) * fct[21].hi() * 2.0;
                Ok(horner(t, &c, tail))
            } else {
                Ok((t.exp()? - (-t).exp()?) * 0.5)
            }
        };
        Ok(Interval::new(f(lo)?.lo(), f(hi)?.hi()))
    }
}

/// Reduces `s` to `[-1, 1]` modulo 2 (exact for `|s| < 2^52`).
fn reduce_mod2(s: f64) -> Option<f64> {
    (s.abs() < 4.0e15).then(|| s - 2.0 * (s / 2.0).round())
}

fn trig_pi_point(s: f64, cosine: bool) -> Interval {
    let Some(r) = reduce_mod2(s) else {
        return Interval::UNIT;
    };
    let exact = match (cosine, r) {
        (false, x) if x == 0.0 || x.abs() == 1.0 => Some(0.0),
        (false, x) if x == 0.5 => Some(1.0),
        (false, x) if x == -0.5 => Some(-1.0),
        (true, x) if x == 0.0 => Some(1.0),
        (true, x) if x.abs() == 1.0 => Some(-1.0),
        (true, x) if x.abs() == 0.5 => Some(0.0),
        _ => None,
    };
    if let Some(v) = exact {
        return Interval::point(v);
    }
    let arg = pi_enclosure() * r;
    if cosine {
        arg.cos()
    } else {
        arg.sin()
    }
}

fn trig_pi(x: Interval, cosine: bool) -> Interval {
    let (lo, hi) = (x.lo(), x.hi());
    if !(lo.is_finite() && hi.is_finite()) || hi - lo >= 2.0 {
        return Interval::UNIT;
    }
    let mut out = trig_pi_point(lo, cosine).hull(trig_pi_point(hi, cosine));
    // Extrema: cos(pi s) at integers, sin(pi s) at half-integers.
    let shift = if cosine { 0.0 } else { 0.5 };
    let mut n = (lo - shift).ceil();
    while n + shift <= hi {
        let even = (n / 2.0).fract() == 0.0;
        out = out.hull(Interval::point(if even { 1.0 } else { -1.0 }));
        n += 1.0;
    }
    out
}

impl Interval {
    /// `sin(pi * x)`, exact at multiples of 1/2.
    pub fn sin_pi(self) -> Interval {
        trig_pi(self, false)
    }

    /// `cos(pi * x)`, exact at multiples of 1/2.
    pub fn cos_pi(self) -> Interval {
        trig_pi(self, true)
    }
}

fn exp_point(x: f64) -> Interval {
    if x < -700.0 {
        // exp(-700) < 1e-304.
        return Interval::new(0.0, 1e-304);
    }
    let k = (x / LN_2).round();
    let r = reduce(x, k, LN2_HI, LN2_LO, ln2_enclosure());
    exp_small(r).scale_pow2(k as i32)
}

/// The operations of [`iv_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Sqrt,
    Sin,
    Cos,
    Exp,
}

/// Applies `op` to `a` (and `b` for binary operations).
pub fn iv_arith(op: Op, a: Interval, b: Option<Interval>) -> Result<Interval, DomainError> {
    let rhs = || b.ok_or(DomainError::MissingOperand);
    match op {
        Op::Add => Ok(a + rhs()?),
        Op::Sub => Ok(a - rhs()?),
        Op::Mul => Ok(a * rhs()?),
        Op::Div => a.try_div(rhs()?),
        Op::Sqrt => a.sqrt(),
        Op::Sin => Ok(a.sin()),
        Op::Cos => Ok(a.cos()),
        Op::Exp => a.exp(),
    }
}
