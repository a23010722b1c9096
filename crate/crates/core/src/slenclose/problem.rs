use super::coeff::{CoefficientFn, Scale};
use super::SlError;
use crate::ival::Interval;

/// Boundary condition at one endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bc {
    Neumann,
    Dirichlet,
}

/// Conditions at the left and right endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoundaryCondition {
    pub left: Bc,
    pub right: Bc,
}

impl BoundaryCondition {
    pub const NEUMANN: Self = Self { left: Bc::Neumann, right: Bc::Neumann };
    pub const DIRICHLET: Self = Self { left: Bc::Dirichlet, right: Bc::Dirichlet };

    pub fn new(left: Bc, right: Bc) -> Self {
        Self { left, right }
    }

    /// Offset of the mode constant in the crude bounds: 0, ½ or 1 Dirichlet
    /// ends out of two.
    pub fn mode_offset(self) -> f64 {
        let d = [self.left, self.right].iter().filter(|&&b| b == Bc::Dirichlet).count();
        d as f64 * 0.5
    }
}

/// `Hf = −(a f′)′ + V f` on `domain` with the given endpoint conditions.
///
/// Coordinates (the domain and all piece boundaries) are stored in units of
/// `scale`.
#[derive(Clone, Debug)]
pub struct SlProblem {
    pub scale: Scale,
    pub domain: Interval,
    pub a: CoefficientFn,
    pub v: CoefficientFn,
    pub bc: BoundaryCondition,
}

impl SlProblem {
    pub fn new(
        scale: Scale,
        domain: Interval,
        a: CoefficientFn,
        v: CoefficientFn,
        bc: BoundaryCondition,
    ) -> Result<Self, SlError> {
        let p = Self { scale, domain, a, v, bc };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), SlError> {
        let (lo, hi) = (self.domain.lo(), self.domain.hi());
        if !(lo < hi) || !self.domain.is_bounded() {
            return Err(SlError::InvalidProblem(format!("empty or unbounded domain [{lo}, {hi}]")));
        }
        if !self.a.covers(lo, hi) {
            return Err(SlError::InvalidProblem("pieces of a do not cover the domain".into()));
        }
        if !self.v.covers(lo, hi) {
            return Err(SlError::InvalidProblem("pieces of V do not cover the domain".into()));
        }
        let ar = self.a.range(self.scale, lo, hi);
        if !ar.is_positive() {
            return Err(SlError::NonPositiveA { lower: ar.lo() });
        }
        Ok(())
    }

    /// Interior piece boundaries of `a`; the partition must contain them.
    pub fn jump_points(&self) -> Vec<f64> {
        self.a.breakpoints(self.domain.lo(), self.domain.hi())
    }

    /// The same operator restricted to `[lo, hi]` with the given conditions.
    pub fn restricted(&self, lo: f64, hi: f64, bc: BoundaryCondition) -> Self {
        Self { domain: Interval::new(lo, hi), bc, ..self.clone() }
    }

    /// Length in `x` units.
    pub fn length(&self) -> Interval {
        self.scale.to_x(Interval::point(self.domain.hi()) - Interval::point(self.domain.lo()))
    }
}

/// Ceilings `E_n = E + n(E′ − E)/N`, `0 ≤ n ≤ N + 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Schedule {
    pub e: f64,
    pub e_prime: f64,
    pub n: u32,
}

impl Schedule {
    pub fn new(e: f64, e_prime: f64, n: u32) -> Self {
        assert!(e < e_prime, "schedule needs E < E'");
        Self { e, e_prime, n }
    }

    /// `E_k`. With `N = 0` the two levels are `E` and `E′`. Levels past
    /// `N + 1` continue the same arithmetic progression.
    pub fn level(&self, k: u32) -> f64 {
        let steps = self.n.max(1) as f64;
        self.e + k as f64 * (self.e_prime - self.e) / steps
    }

    pub fn levels(&self) -> Vec<f64> {
        (0..=self.n + 1).map(|k| self.level(k)).collect()
    }
}
