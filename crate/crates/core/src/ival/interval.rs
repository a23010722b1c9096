use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use super::round;
use super::DomainError;

/// A closed interval `[lo, hi]` of reals with `f64` endpoints.
///
/// Every operation returns an interval containing all exact results for
/// members of the operands. The upper endpoint may be `+inf` for bounds that
/// are only known from below.
#[derive(Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };
    /// `[-1, 1]`.
    pub const UNIT: Interval = Interval { lo: -1.0, hi: 1.0 };

    /// Builds `[lo, hi]`. Panics if `lo > hi` or either endpoint is NaN.
    pub fn new(lo: f64, hi: f64) -> Interval {
        assert!(lo <= hi, "invalid interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn try_new(lo: f64, hi: f64) -> Result<Interval, DomainError> {
        if lo <= hi {
            Ok(Interval { lo, hi })
        } else {
            Err(DomainError::InvalidBounds { lo, hi })
        }
    }

    pub const fn point(x: f64) -> Interval {
        Interval { lo: x, hi: x }
    }

    /// `[lo, +inf)`.
    pub fn at_least(lo: f64) -> Interval {
        Interval { lo, hi: f64::INFINITY }
    }

    pub fn hull_of(a: f64, b: f64) -> Interval {
        Interval { lo: a.min(b), hi: a.max(b) }
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn is_bounded(self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn is_point(self) -> bool {
        self.lo == self.hi
    }

    /// Upper bound on `hi - lo`.
    pub fn width(self) -> f64 {
        round::sub(self.hi, self.lo).1
    }

    /// Upper bound on the radius.
    pub fn rad(self) -> f64 {
        let m = self.mid();
        round::sub(self.hi, m).1.max(round::sub(m, self.lo).1)
    }

    pub fn mid(self) -> f64 {
        if !self.hi.is_finite() {
            return self.lo;
        }
        let m = 0.5 * self.lo + 0.5 * self.hi;
        m.clamp(self.lo, self.hi)
    }

    /// `max |x|` over the interval.
    pub fn mag(self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// `min |x|` over the interval.
    pub fn mig(self) -> f64 {
        if self.lo > 0.0 {
            self.lo
        } else if self.hi < 0.0 {
            -self.hi
        } else {
            0.0
        }
    }

    pub fn contains(self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(self) -> bool {
        self.contains(0.0)
    }

    pub fn encloses(self, other: Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(self, other: Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Every member of `self` is strictly below every member of `other`.
    pub fn strictly_below(self, other: Interval) -> bool {
        self.hi < other.lo
    }

    pub fn is_positive(self) -> bool {
        self.lo > 0.0
    }

    pub fn is_negative(self) -> bool {
        self.hi < 0.0
    }

    pub fn hull(self, other: Interval) -> Interval {
        Interval { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }

    pub fn intersect(self, other: Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn with_lo(self, lo: f64) -> Interval {
        Interval::new(lo, self.hi)
    }

    pub fn with_hi(self, hi: f64) -> Interval {
        Interval::new(self.lo, hi)
    }

    /// Widens by `r >= 0` on both sides.
    pub fn inflate(self, r: f64) -> Interval {
        Interval { lo: round::sub(self.lo, r).0, hi: round::add(self.hi, r).1 }
    }

    pub fn abs(self) -> Interval {
        Interval { lo: self.mig(), hi: self.mag() }
    }

    pub fn max(self, other: Interval) -> Interval {
        Interval { lo: self.lo.max(other.lo), hi: self.hi.max(other.hi) }
    }

    pub fn min(self, other: Interval) -> Interval {
        Interval { lo: self.lo.min(other.lo), hi: self.hi.min(other.hi) }
    }

    pub fn sqr(self) -> Interval {
        let (a, b) = (self.mig(), self.mag());
        Interval { lo: round::mul(a, a).0, hi: round::mul(b, b).1 }
    }

    pub fn powi(self, n: u32) -> Interval {
        match n {
            0 => Interval::ONE,
            1 => self,
            _ if n % 2 == 0 => self.sqr().powi(n / 2),
            _ => {
                let odd = |x: f64| Interval::point(x) * Interval::point(x).sqr().powi(n / 2);
                Interval { lo: odd(self.lo).lo, hi: odd(self.hi).hi }
            }
        }
    }

    pub fn sqrt(self) -> Result<Interval, DomainError> {
        if self.lo < 0.0 {
            return Err(DomainError::SqrtOfNegative { lo: self.lo });
        }
        Ok(Interval { lo: round::sqrt(self.lo).0, hi: round::sqrt(self.hi).1 })
    }

    pub fn recip(self) -> Result<Interval, DomainError> {
        Interval::ONE.try_div(self)
    }

    pub fn try_div(self, rhs: Interval) -> Result<Interval, DomainError> {
        if rhs.contains_zero() {
            return Err(DomainError::DivisionByZero { lo: rhs.lo, hi: rhs.hi });
        }
        let cands = [
            round::div(self.lo, rhs.lo),
            round::div(self.lo, rhs.hi),
            round::div(self.hi, rhs.lo),
            round::div(self.hi, rhs.hi),
        ];
        Ok(Self::from_candidates(&cands))
    }

    fn from_candidates(c: &[(f64, f64)]) -> Interval {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &(l, h) in c {
            lo = lo.min(l);
            hi = hi.max(h);
        }
        Interval { lo, hi }
    }

    /// Multiplies by an exact power of two.
    pub fn scale_pow2(self, k: i32) -> Interval {
        let s = 2f64.powi(k);
        self * Interval::point(s)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl From<f64> for Interval {
    fn from(x: f64) -> Self {
        Interval::point(x)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }
}

impl Add for Interval {
    type Output = Interval;
    #[inline]
    fn add(self, rhs: Interval) -> Interval {
        Interval { lo: round::add(self.lo, rhs.lo).0, hi: round::add(self.hi, rhs.hi).1 }
    }
}

impl Sub for Interval {
    type Output = Interval;
    #[inline]
    fn sub(self, rhs: Interval) -> Interval {
        Interval { lo: round::sub(self.lo, rhs.hi).0, hi: round::sub(self.hi, rhs.lo).1 }
    }
}

impl Mul for Interval {
    type Output = Interval;
    #[inline]
    fn mul(self, rhs: Interval) -> Interval {
        if self.lo >= 0.0 && rhs.lo >= 0.0 {
            return Interval {
                lo: round::mul(self.lo, rhs.lo).0,
                hi: round::mul(self.hi, rhs.hi).1,
            };
        }
        let cands = [
            round::mul(self.lo, rhs.lo),
            round::mul(self.lo, rhs.hi),
            round::mul(self.hi, rhs.lo),
            round::mul(self.hi, rhs.hi),
        ];
        Interval::from_candidates(&cands)
    }
}

/// Division. Panics when the divisor contains zero; use
/// [`Interval::try_div`] where that can happen.
impl Div for Interval {
    type Output = Interval;
    fn div(self, rhs: Interval) -> Interval {
        self.try_div(rhs).expect("interval division by an interval containing zero")
    }
}

macro_rules! scalar_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<f64> for Interval {
            type Output = Interval;
            #[inline]
            fn $m(self, rhs: f64) -> Interval {
                $tr::$m(self, Interval::point(rhs))
            }
        }
        impl $tr<Interval> for f64 {
            type Output = Interval;
            #[inline]
            fn $m(self, rhs: Interval) -> Interval {
                $tr::$m(Interval::point(self), rhs)
            }
        }
    )*};
}
scalar_ops!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign for Interval {
    fn add_assign(&mut self, rhs: Interval) {
        *self = *self + rhs;
    }
}

impl SubAssign for Interval {
    fn sub_assign(&mut self, rhs: Interval) {
        *self = *self - rhs;
    }
}

impl MulAssign for Interval {
    fn mul_assign(&mut self, rhs: Interval) {
        *self = *self * rhs;
    }
}

impl Sum for Interval {
    fn sum<I: Iterator<Item = Interval>>(iter: I) -> Interval {
        iter.fold(Interval::ZERO, |a, b| a + b)
    }
}
