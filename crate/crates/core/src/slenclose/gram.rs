use super::basis::Basis;
use super::legendre::{self as leg, Series};
use super::problem::{Bc, BoundaryCondition, SlProblem};
use super::SlError;
use crate::ival::{lambda_min_lower, round, Interval, IntervalMatrix};

/// `M0 = ⟨fᵢ, fⱼ⟩`, `M1 = ⟨Hfᵢ, fⱼ⟩`, `M2 = ⟨Hfᵢ, Hfⱼ⟩` for a test space.
#[derive(Clone, Debug)]
pub struct GramTriple {
    pub m0: IntervalMatrix,
    pub m1: IntervalMatrix,
    pub m2: IntervalMatrix,
    /// The test functions, when the triple came from [`assemble_gram`].
    pub basis: Option<Basis>,
}

impl GramTriple {
    /// A triple from given matrices. `M0` must be verifiably positive
    /// definite.
    pub fn from_matrices(m0: IntervalMatrix, m1: IntervalMatrix, m2: IntervalMatrix) -> Result<Self, SlError> {
        let n = m0.rows();
        let shapes = [&m0, &m1, &m2].iter().all(|m| m.rows() == n && m.cols() == n);
        if !shapes || n == 0 {
            return Err(SlError::InvalidProblem("Gram matrices must be square of equal size".into()));
        }
        if !(m0.is_symmetric() && m1.is_symmetric() && m2.is_symmetric()) {
            return Err(SlError::InvalidProblem("Gram matrices must be symmetric".into()));
        }
        check_pd(&m0)?;
        Ok(Self { m0, m1, m2, basis: None })
    }

    pub fn dim(&self) -> usize {
        self.m0.rows()
    }
}

fn check_pd(m0: &IntervalMatrix) -> Result<(), SlError> {
    match lambda_min_lower(m0) {
        Ok(l) if l > 0.0 => Ok(()),
        _ => Err(SlError::BasisDegenerate),
    }
}

/// Conditions on the cell: those of the problem at its own ends, Neumann at
/// interior cuts.
pub fn cell_conditions(p: &SlProblem, lo: f64, hi: f64) -> BoundaryCondition {
    BoundaryCondition::new(
        if lo == p.domain.lo() { p.bc.left } else { Bc::Neumann },
        if hi == p.domain.hi() { p.bc.right } else { Bc::Neumann },
    )
}

/// Symmetric accumulator over the upper triangle.
struct Acc {
    n: usize,
    data: Vec<Interval>,
}

impl Acc {
    fn new(n: usize) -> Self {
        Self { n, data: vec![Interval::ZERO; n * n] }
    }

    #[inline]
    fn add(&mut self, i: usize, j: usize, v: Interval) {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        self.data[a * self.n + b] += v;
    }

    fn finish(self) -> IntervalMatrix {
        let n = self.n;
        IntervalMatrix::from_fn(n, n, |i, j| {
            let (a, b) = if i <= j { (i, j) } else { (j, i) };
            self.data[a * n + b]
        })
    }
}

fn up_mul(a: f64, b: f64) -> f64 {
    round::mul(a, b).1
}

fn up_add(a: f64, b: f64) -> f64 {
    round::add(a, b).1
}

fn sqrt_up(x: Interval) -> f64 {
    round::sqrt(x.hi().max(0.0)).1
}

/// Largest `|ω| · half-width` (in `x`) allowed on one segment.
const MAX_PHASE: f64 = 4.0;

/// Smallest Taylor order whose trigonometric remainder factor
/// `κ^{J+1}/(J+1)!` is below `2^-70`.
fn trig_order(kappa: f64) -> usize {
    let mut term = 1.0f64;
    for j in 0..80 {
        term *= kappa / (j + 1) as f64;
        if term < 8e-22 {
            return j;
        }
    }
    80
}

/// Knots on `[lo, hi]`: the ends, every piece boundary of `a` and `V`, and
/// extra uniform cuts where trigonometric terms oscillate fast.
fn knots_for(p: &SlProblem, lo: f64, hi: f64) -> Vec<f64> {
    let mut cuts = vec![lo];
    let mut bp = p.v.breakpoints(lo, hi);
    bp.extend(p.a.breakpoints(lo, hi));
    bp.sort_by(f64::total_cmp);
    bp.dedup();
    cuts.extend(bp);
    cuts.push(hi);
    let omega = p.a.max_frequency().max(p.v.max_frequency());
    let s = p.scale.factor().hi();
    let mut out = vec![lo];
    for w in cuts.windows(2) {
        let phase = omega * 0.5 * (w[1] - w[0]) * s;
        let m = (phase / MAX_PHASE).ceil().max(1.0) as usize;
        for j in 1..m {
            let c = w[0] + (w[1] - w[0]) * j as f64 / m as f64;
            if c > *out.last().expect("nonempty") && c < w[1] {
                out.push(c);
            }
        }
        out.push(w[1]);
    }
    out
}

/// Gram matrices of the degree-`basis_degree` test space on `cell`.
///
/// The conditions at the cell ends are the problem's own at the domain ends
/// and Neumann elsewhere. On every segment the coefficients are replaced by
/// Taylor models; products with the test functions are formed exactly in
/// Legendre coefficients and integrated by orthogonality. Model remainders
/// enter through Cauchy–Schwarz bounds.
pub fn assemble_gram(p: &SlProblem, cell: Interval, basis_degree: usize) -> Result<GramTriple, SlError> {
    let (lo, hi) = (cell.lo(), cell.hi());
    if !(p.domain.lo() <= lo && lo < hi && hi <= p.domain.hi()) {
        return Err(SlError::InvalidProblem(format!("cell [{lo}, {hi}] outside the domain")));
    }
    if basis_degree < 4 {
        return Err(SlError::InvalidProblem("basis degree must be at least 4".into()));
    }
    let bc = cell_conditions(p, lo, hi);
    let knots = knots_for(p, lo, hi);
    let limits: Vec<(Interval, Interval)> = knots
        .iter()
        .map(|&k| (p.a.value_at(p.scale, k, true), p.a.value_at(p.scale, k, false)))
        .collect();
    if limits.iter().any(|(l, r)| !l.is_positive() || !r.is_positive()) {
        return Err(SlError::NonPositiveA { lower: 0.0 });
    }
    let basis = Basis::new(knots.clone(), basis_degree, bc, &limits);
    let n = basis.dim();
    let da = p.a.derivative();
    let s = p.scale.factor();

    let mut m0 = Acc::new(n);
    let mut m1 = Acc::new(n);
    let mut m2 = Acc::new(n);

    for seg in 0..basis.segments() {
        let (k0, k1) = (knots[seg], knots[seg + 1]);
        let cs = (Interval::point(k0) + Interval::point(k1)) * 0.5;
        let hs = (Interval::point(k1) - Interval::point(k0)) * 0.5;
        let jac = s * hs;
        let dt = jac.recip().expect("segment of positive length");
        let kappa = p.a.max_frequency().max(p.v.max_frequency()) * jac.hi();
        let order = trig_order(kappa);
        let [ta, tda, tv] = [&p.a, &da, &p.v].map(|c| {
            let ord = if c.has_trig() { order } else { 0 };
            c.taylor(p.scale, cs, hs, ord)
        });
        let pieces = basis.on_segment(seg);
        let rows: Vec<Row> = pieces
            .iter()
            .map(|&(i, f)| {
                let fx = leg::scale(&leg::deriv(f), dt);
                let fxx = leg::scale(&leg::deriv(&fx), dt);
                let afx = leg::mul_poly(&ta.coeffs, &fx);
                let vf = leg::mul_poly(&tv.coeffs, f);
                let hf = leg::sub(&leg::sub(&vf, &leg::mul_poly(&ta.coeffs, &fxx)), &leg::mul_poly(&tda.coeffs, &fx));
                let norm = |g: &[Interval]| sqrt_up(jac * leg::inner(g, g));
                let norms = [norm(f), norm(&fx), norm(&fxx), norm(&hf)];
                Row { index: i, f: f.clone(), fx, afx, vf, hf, norms }
            })
            .collect();
        let (ra, rda, rv) = (ta.remainder, tda.remainder, tv.remainder);
        let exact = ra == 0.0 && rda == 0.0 && rv == 0.0;
        for (ia, x) in rows.iter().enumerate() {
            // Remainder part of ‖Hf‖.
            let rx = up_add(up_add(up_mul(ra, x.norms[2]), up_mul(rda, x.norms[1])), up_mul(rv, x.norms[0]));
            for y in &rows[ia..] {
                let (bi, bj) = (x.index, y.index);
                m0.add(bi, bj, jac * leg::inner(&x.f, &y.f));
                m1.add(bi, bj, jac * (leg::inner(&x.afx, &y.fx) + leg::inner(&x.vf, &y.f)));
                m2.add(bi, bj, jac * leg::inner(&x.hf, &y.hf));
                if exact {
                    continue;
                }
                let ry = up_add(up_add(up_mul(ra, y.norms[2]), up_mul(rda, y.norms[1])), up_mul(rv, y.norms[0]));
                let e1 = up_add(up_mul(ra, up_mul(x.norms[1], y.norms[1])), up_mul(rv, up_mul(x.norms[0], y.norms[0])));
                let e2 = up_add(up_add(up_mul(x.norms[3], ry), up_mul(rx, y.norms[3])), up_mul(rx, ry));
                m1.add(bi, bj, Interval::new(-e1, e1));
                m2.add(bi, bj, Interval::new(-e2, e2));
            }
        }
    }
    let m0 = m0.finish();
    check_pd(&m0)?;
    Ok(GramTriple { m0, m1: m1.finish(), m2: m2.finish(), basis: Some(basis) })
}

/// Per-function data on one segment: `f`, `f′`, `a f′`, `V f`, the model part
/// of `H f`, and the norms `‖f‖, ‖f′‖, ‖f″‖, ‖H f‖` in `x`.
struct Row {
    index: usize,
    f: Series,
    fx: Series,
    afx: Series,
    vf: Series,
    hf: Series,
    norms: [f64; 4],
}
