use crate::ival::{pi_enclosure, Interval};

/// Unit of the coordinates stored in a problem.
///
/// With `Scale::Pi` a stored coordinate `u` stands for `x = πu`, so cells such
/// as `(0, π/4)` have exact endpoints and trigonometric terms are evaluated
/// as `cos(πωu)` without rounding the argument.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Scale {
    #[default]
    Unit,
    Pi,
}

impl Scale {
    /// `dx/du`.
    pub fn factor(self) -> Interval {
        match self {
            Scale::Unit => Interval::ONE,
            Scale::Pi => pi_enclosure(),
        }
    }

    /// `π / factor`.
    pub fn pi_ratio(self) -> Interval {
        match self {
            Scale::Unit => pi_enclosure(),
            Scale::Pi => Interval::ONE,
        }
    }

    pub fn to_x(self, u: Interval) -> Interval {
        match self {
            Scale::Unit => u,
            Scale::Pi => u * pi_enclosure(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrigKind {
    Sin,
    Cos,
}

/// One summand of a coefficient, as a function of `x`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Term {
    /// `coeff · x^degree`
    Poly { degree: u32, coeff: Interval },
    /// `coeff · sin(ωx)` or `coeff · cos(ωx)`
    Trig { kind: TrigKind, omega: f64, coeff: Interval },
}

impl Term {
    pub fn constant(c: f64) -> Term {
        Term::Poly { degree: 0, coeff: Interval::point(c) }
    }

    pub fn coeff(&self) -> Interval {
        match *self {
            Term::Poly { coeff, .. } | Term::Trig { coeff, .. } => coeff,
        }
    }

    /// Range over stored coordinates `u`.
    pub fn eval(&self, scale: Scale, u: Interval) -> Interval {
        match *self {
            Term::Poly { degree, coeff } => coeff * scale.to_x(u).powi(degree),
            Term::Trig { kind, omega, coeff } => coeff * trig(kind, scale, Interval::point(omega) * u),
        }
    }

    /// `d/dx` of the term.
    pub fn derivative(&self) -> Option<Term> {
        match *self {
            Term::Poly { degree: 0, .. } => None,
            Term::Poly { degree, coeff } => {
                Some(Term::Poly { degree: degree - 1, coeff: coeff * f64::from(degree) })
            }
            Term::Trig { omega, .. } if omega == 0.0 => None,
            Term::Trig { kind: TrigKind::Sin, omega, coeff } => {
                Some(Term::Trig { kind: TrigKind::Cos, omega, coeff: coeff * omega })
            }
            Term::Trig { kind: TrigKind::Cos, omega, coeff } => {
                Some(Term::Trig { kind: TrigKind::Sin, omega, coeff: -(coeff * omega) })
            }
        }
    }
}

/// `sin` or `cos` of `ω x` given `ω u`.
fn trig(kind: TrigKind, scale: Scale, wu: Interval) -> Interval {
    match (kind, scale) {
        (TrigKind::Sin, Scale::Unit) => wu.sin(),
        (TrigKind::Cos, Scale::Unit) => wu.cos(),
        (TrigKind::Sin, Scale::Pi) => wu.sin_pi(),
        (TrigKind::Cos, Scale::Pi) => wu.cos_pi(),
    }
}

/// The summands valid on `[from, to]` (stored coordinates).
#[derive(Clone, Debug, PartialEq)]
pub struct Piece {
    pub from: f64,
    pub to: f64,
    pub terms: Vec<Term>,
}

/// A piecewise Poly/Trig coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientFn {
    pub pieces: Vec<Piece>,
}

/// A polynomial in the local variable `ξ ∈ [-1, 1]` plus a uniform bound on
/// the remaining error.
#[derive(Clone, Debug)]
pub struct TaylorModel {
    pub coeffs: Vec<Interval>,
    pub remainder: f64,
}

impl TaylorModel {
    pub fn eval(&self, xi: Interval) -> Interval {
        self.coeffs.iter().rev().fold(Interval::ZERO, |acc, &c| acc * xi + c)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

impl CoefficientFn {
    pub fn new(pieces: Vec<Piece>) -> Self {
        Self { pieces }
    }

    pub fn single(from: f64, to: f64, terms: Vec<Term>) -> Self {
        Self { pieces: vec![Piece { from, to, terms }] }
    }

    pub fn constant(from: f64, to: f64, c: f64) -> Self {
        Self::single(from, to, vec![Term::constant(c)])
    }

    /// Pieces meeting `[lo, hi]` in more than a point.
    fn overlapping(&self, lo: f64, hi: f64) -> impl Iterator<Item = &Piece> {
        self.pieces.iter().filter(move |p| p.from < hi && lo < p.to)
    }

    /// The pieces cover `[lo, hi]` without gaps or overlaps.
    pub fn covers(&self, lo: f64, hi: f64) -> bool {
        let mut ps: Vec<&Piece> = self.pieces.iter().collect();
        ps.sort_by(|a, b| a.from.total_cmp(&b.from));
        !ps.is_empty()
            && ps[0].from <= lo
            && ps.last().is_some_and(|p| p.to >= hi)
            && ps.windows(2).all(|w| w[0].to == w[1].from)
            && ps.iter().all(|p| p.from < p.to)
    }

    /// Interior piece boundaries inside `(lo, hi)`.
    pub fn breakpoints(&self, lo: f64, hi: f64) -> Vec<f64> {
        let mut out: Vec<f64> = self
            .pieces
            .iter()
            .flat_map(|p| [p.from, p.to])
            .filter(|&b| lo < b && b < hi)
            .collect();
        out.sort_by(f64::total_cmp);
        out.dedup();
        out
    }

    /// Range over `[lo, hi]`.
    pub fn range(&self, scale: Scale, lo: f64, hi: f64) -> Interval {
        let mut out: Option<Interval> = None;
        for p in self.overlapping(lo, hi) {
            let u = Interval::new(p.from.max(lo), p.to.min(hi));
            let v: Interval = p.terms.iter().map(|t| t.eval(scale, u)).sum();
            out = Some(out.map_or(v, |o| o.hull(v)));
        }
        out.unwrap_or(Interval::ZERO)
    }

    /// One-sided limit at `u`: from the left when `left` is set.
    pub fn value_at(&self, scale: Scale, u: f64, left: bool) -> Interval {
        let piece = self
            .pieces
            .iter()
            .find(|p| if left { p.from < u && u <= p.to } else { p.from <= u && u < p.to })
            .or_else(|| self.pieces.iter().find(|p| p.from <= u && u <= p.to));
        piece.map_or(Interval::ZERO, |p| {
            p.terms.iter().map(|t| t.eval(scale, Interval::point(u))).sum()
        })
    }

    /// Piecewise `d/dx`.
    pub fn derivative(&self) -> Self {
        let pieces = self
            .pieces
            .iter()
            .map(|p| Piece {
                from: p.from,
                to: p.to,
                terms: p.terms.iter().filter_map(Term::derivative).collect(),
            })
            .collect();
        Self { pieces }
    }

    /// Taylor model on `[c − h, c + h]` in `ξ = (u − c)/h`, which must lie in
    /// a single piece. Trigonometric terms are expanded to degree `order`.
    /// `c` and `h` are enclosures of the exact centre and half-width.
    pub fn taylor(&self, scale: Scale, c: Interval, h: Interval, order: usize) -> TaylorModel {
        let piece = self.overlapping(c.mid(), c.mid()).next().or_else(|| self.pieces.first());
        let mut tm = TaylorModel { coeffs: vec![Interval::ZERO], remainder: 0.0 };
        let Some(piece) = piece else { return tm };
        let s = scale.factor();
        let xc = s * c;
        let xh = s * h;
        for t in &piece.terms {
            match *t {
                Term::Poly { degree, coeff } => {
                    // coeff · (xc + xh ξ)^k by the binomial theorem.
                    let k = degree as usize;
                    let mut binom = 1.0f64;
                    for j in 0..=k {
                        let c_j = coeff * binom * xc.powi((k - j) as u32) * xh.powi(j as u32);
                        add_coeff(&mut tm.coeffs, j, c_j);
                        binom = binom * (k - j) as f64 / (j + 1) as f64;
                    }
                }
                Term::Trig { kind, omega, coeff } => {
                    let w = Interval::point(omega);
                    let (s0, c0) = match scale {
                        Scale::Unit => ((w * c).sin(), (w * c).cos()),
                        Scale::Pi => ((w * c).sin_pi(), (w * c).cos_pi()),
                    };
                    let kappa = w * xh;
                    // Derivatives cycle through ±sin, ±cos of the centre angle.
                    let cycle = match kind {
                        TrigKind::Sin => [s0, c0, -s0, -c0],
                        TrigKind::Cos => [c0, -s0, -c0, s0],
                    };
                    let mut pow = Interval::ONE;
                    for j in 0..=order {
                        add_coeff(&mut tm.coeffs, j, coeff * pow * cycle[j % 4]);
                        pow = pow * kappa / ((j + 1) as f64);
                    }
                    tm.remainder = crate::ival::round::add(tm.remainder, (coeff.mag() * pow).hi()).1;
                }
            }
        }
        tm
    }

    /// Largest `|ω|` over trigonometric terms.
    pub fn max_frequency(&self) -> f64 {
        self.pieces
            .iter()
            .flat_map(|p| &p.terms)
            .map(|t| match *t {
                Term::Trig { omega, .. } => omega.abs(),
                Term::Poly { .. } => 0.0,
            })
            .fold(0.0, f64::max)
    }

    /// Highest polynomial degree.
    pub fn max_poly_degree(&self) -> usize {
        self.pieces
            .iter()
            .flat_map(|p| &p.terms)
            .map(|t| match *t {
                Term::Poly { degree, .. } => degree as usize,
                Term::Trig { .. } => 0,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn has_trig(&self) -> bool {
        self.pieces.iter().flat_map(|p| &p.terms).any(|t| matches!(t, Term::Trig { .. }))
    }
}

fn add_coeff(v: &mut Vec<Interval>, j: usize, c: Interval) {
    if v.len() <= j {
        v.resize(j + 1, Interval::ZERO);
    }
    v[j] += c;
}
