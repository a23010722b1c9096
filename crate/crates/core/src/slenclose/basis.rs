use super::legendre::{from_ratios, scale, Series};
use super::problem::{Bc, BoundaryCondition};
use crate::ival::Interval;

/// One polynomial piece of a test function, as Legendre coefficients in the
/// local variable `t ∈ [-1, 1]` of segment `seg`.
#[derive(Clone, Debug)]
pub struct Component {
    pub seg: usize,
    pub coeffs: Series,
}

/// A piecewise polynomial test function, nonzero on one or two segments.
#[derive(Clone, Debug)]
pub struct BasisFn {
    pub comps: Vec<Component>,
}

/// Piecewise polynomials of degree `degree` between `knots`, continuous with
/// continuous flux `a f′` at interior knots and satisfying the cell's
/// boundary conditions, so every function lies in the operator domain.
///
/// Per knot there is a value function (`f = 1`, `f′ = 0`) and a flux function
/// (`f = 0`, `a f′` equal on both sides); a Neumann end keeps only the first,
/// a Dirichlet end only the second. Per segment there are `degree − 3`
/// bubbles with `f = f′ = 0` at both ends.
#[derive(Clone, Debug)]
pub struct Basis {
    pub knots: Vec<f64>,
    pub degree: usize,
    pub functions: Vec<BasisFn>,
}

// Cubic Hermite shapes in Legendre coefficients.
const H0: [(f64, f64); 4] = [(1.0, 2.0), (-3.0, 5.0), (0.0, 1.0), (1.0, 10.0)];
const H1: [(f64, f64); 4] = [(1.0, 2.0), (3.0, 5.0), (0.0, 1.0), (-1.0, 10.0)];
const K0: [(f64, f64); 4] = [(1.0, 6.0), (-1.0, 10.0), (-1.0, 6.0), (1.0, 10.0)];
const K1: [(f64, f64); 4] = [(-1.0, 6.0), (-1.0, 10.0), (1.0, 6.0), (1.0, 10.0)];

/// `Pⱼ − 2(2j+5)/(2j+7) Pⱼ₊₂ + (2j+3)/(2j+7) Pⱼ₊₄`, which vanishes with its
/// derivative at both ends.
fn bubble(j: usize) -> Series {
    let jf = j as f64;
    let mut c = vec![Interval::ZERO; j + 5];
    c[j] = Interval::ONE;
    c[j + 2] = -(Interval::point(2.0 * (2.0 * jf + 5.0)) / Interval::point(2.0 * jf + 7.0));
    c[j + 4] = Interval::point(2.0 * jf + 3.0) / Interval::point(2.0 * jf + 7.0);
    c
}

impl Basis {
    /// `a_limits[k]` holds `(a(k−), a(k+))` at knot `k`; only interior knots
    /// are used.
    pub fn new(knots: Vec<f64>, degree: usize, bc: BoundaryCondition, a_limits: &[(Interval, Interval)]) -> Self {
        assert!(knots.len() >= 2 && degree >= 4);
        let segs = knots.len() - 1;
        let half = |s: usize| (Interval::point(knots[s + 1]) - Interval::point(knots[s])) * 0.5;
        let one = |seg: usize, shape: &[(f64, f64)]| BasisFn { comps: vec![Component { seg, coeffs: from_ratios(shape) }] };
        let mut functions = Vec::new();
        functions.push(match bc.left {
            Bc::Neumann => one(0, &H0),
            Bc::Dirichlet => one(0, &K0),
        });
        for k in 1..segs {
            functions.push(BasisFn {
                comps: vec![
                    Component { seg: k - 1, coeffs: from_ratios(&H1) },
                    Component { seg: k, coeffs: from_ratios(&H0) },
                ],
            });
            // Slopes 1/h on the left and r/h′ on the right in x; equal flux
            // needs r = (h′/h) a(k−)/a(k+).
            let (am, ap) = a_limits[k];
            let r = (half(k) / half(k - 1)) * (am / ap);
            functions.push(BasisFn {
                comps: vec![
                    Component { seg: k - 1, coeffs: from_ratios(&K1) },
                    Component { seg: k, coeffs: scale(&from_ratios(&K0), r) },
                ],
            });
        }
        functions.push(match bc.right {
            Bc::Neumann => one(segs - 1, &H1),
            Bc::Dirichlet => one(segs - 1, &K1),
        });
        for s in 0..segs {
            for j in 0..=degree - 4 {
                functions.push(BasisFn { comps: vec![Component { seg: s, coeffs: bubble(j) }] });
            }
        }
        Self { knots, degree, functions }
    }

    pub fn dim(&self) -> usize {
        self.functions.len()
    }

    pub fn segments(&self) -> usize {
        self.knots.len() - 1
    }

    /// `(function index, coefficients)` of the pieces on segment `seg`.
    pub fn on_segment(&self, seg: usize) -> Vec<(usize, &Series)> {
        self.functions
            .iter()
            .enumerate()
            .flat_map(|(i, f)| f.comps.iter().filter(move |c| c.seg == seg).map(move |c| (i, &c.coeffs)))
            .collect()
    }
}
