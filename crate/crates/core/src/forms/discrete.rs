use super::chain::FormChain;
use super::system::SystemFixture;
use super::FormsError;
use crate::ival::{Interval, IntervalMatrix};
use crate::slenclose::legendre::{deriv, inner, scale};
use crate::slenclose::{Basis, BoundaryCondition, GramTriple};

/// Linear finite elements with lumped mass for the fixture, as a form on
/// `Rⁿ` in mass-orthonormal coordinates. Each component has separate nodes
/// at `0−` and `0+`; the constraints glue `f₁` and then `f₂` there, so the
/// chain runs `A₁ ≤ K ≤ H`.
///
/// Both sides use the mesh width `1/cells_per_unit`, which must divide `α`
/// and `β`.
pub fn system_form_chain(fx: &SystemFixture, cells_per_unit: usize) -> Result<FormChain, FormsError> {
    let cells = |len: f64| {
        let c = len * cells_per_unit as f64;
        if cells_per_unit == 0 || (c - c.round()).abs() > 1e-9 || c.round() < 1.0 {
            Err(FormsError::InvalidFixture(format!("1/{cells_per_unit} does not divide {len}")))
        } else {
            Ok(c.round() as usize)
        }
    };
    let (nl, nr) = (cells(fx.left())?, cells(fx.beta)?);
    let nodes = nl + 1 + nr + 1;
    let h = Interval::point(1.0) / Interval::point(cells_per_unit as f64);
    let inv_h = Interval::point(cells_per_unit as f64);
    let weight = |node: usize| {
        let end = node == 0 || node == nl || node == nl + 1 || node == nodes - 1;
        if end {
            h * 0.5
        } else {
            h
        }
    };
    let idx = |comp: usize, node: usize| comp * nodes + node;
    let mut s = IntervalMatrix::zeros(2 * nodes, 2 * nodes);
    let add = |s: &mut IntervalMatrix, i: usize, j: usize, v: Interval| {
        let cur = s.get(i, j);
        s.set(i, j, cur + v);
    };
    for comp in 0..2 {
        for (first, count) in [(0, nl), (nl + 1, nr)] {
            for c in 0..count {
                let (a, b) = (idx(comp, first + c), idx(comp, first + c + 1));
                add(&mut s, a, a, inv_h);
                add(&mut s, b, b, inv_h);
                add(&mut s, a, b, -inv_h);
                add(&mut s, b, a, -inv_h);
            }
        }
    }
    for node in 0..nodes {
        let w = weight(node);
        if node <= nl {
            add(&mut s, idx(0, node), idx(0, node), w * fx.u);
        } else {
            for (c, d) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                add(&mut s, idx(c, node), idx(d, node), w * fx.v);
            }
        }
    }
    let root: Vec<Interval> = (0..nodes).map(|k| weight(k).sqrt().expect("positive weight")).collect();
    let mut a = IntervalMatrix::zeros(2 * nodes, 2 * nodes);
    for i in 0..2 * nodes {
        for j in 0..2 * nodes {
            let v = s.get(i, j);
            if v != Interval::ZERO {
                a.set(i, j, v / (root[i % nodes] * root[j % nodes]));
            }
        }
    }
    let a = a.symmetrized();
    // Equal weights at 0− and 0+, so gluing is e(0+) − e(0−) in scaled
    // coordinates.
    let glue = |comp: usize| {
        let mut c = vec![0.0; 2 * nodes];
        c[idx(comp, nl)] = -1.0;
        c[idx(comp, nl + 1)] = 1.0;
        c
    };
    FormChain::new(a, vec![glue(0), glue(1)])
}

/// Gram matrices `⟨fᵢ, fⱼ⟩`, `⟨Hfᵢ, fⱼ⟩`, `⟨Hfᵢ, Hfⱼ⟩` of the coupled operator
/// `H` for the test space of pairs of C¹ piecewise polynomials with Neumann
/// ends, `segments` uniform pieces on each side of 0.
pub fn system_gram(fx: &SystemFixture, segments: usize, degree: usize) -> Result<GramTriple, FormsError> {
    if segments == 0 || degree < 4 {
        return Err(FormsError::InvalidFixture("need at least one segment and degree 4".into()));
    }
    let mut knots: Vec<f64> = (0..segments).map(|k| fx.alpha + k as f64 * fx.left() / segments as f64).collect();
    knots.extend((0..=segments).map(|k| k as f64 * fx.beta / segments as f64));
    let limits = vec![(Interval::ONE, Interval::ONE); knots.len()];
    let basis = Basis::new(knots.clone(), degree, BoundaryCondition::NEUMANN, &limits);
    let m = basis.dim();
    let n = 2 * m;
    let mut m0 = IntervalMatrix::zeros(n, n);
    let mut m1 = IntervalMatrix::zeros(n, n);
    let mut m2 = IntervalMatrix::zeros(n, n);
    let add = |mat: &mut IntervalMatrix, i: usize, j: usize, v: Interval| {
        let cur = mat.get(i, j);
        mat.set(i, j, cur + v);
    };
    for seg in 0..basis.segments() {
        let right = knots[seg] >= 0.0;
        let z = Interval::ZERO;
        let pot = if right { [[fx.v, fx.v], [fx.v, fx.v]] } else { [[fx.u, z], [z, z]] };
        let pot2 = [0, 1].map(|c| [0, 1].map(|d| pot[c][0] * pot[0][d] + pot[c][1] * pot[1][d]));
        let half = (Interval::point(knots[seg + 1]) - Interval::point(knots[seg])) * 0.5;
        let dt = half.recip().expect("positive length");
        let pieces: Vec<_> = basis
            .on_segment(seg)
            .into_iter()
            .map(|(i, f)| {
                let d1 = scale(&deriv(f), dt);
                let d2 = scale(&deriv(&d1), dt);
                (i, f.clone(), d1, d2)
            })
            .collect();
        for (i, f, f1, f2) in &pieces {
            for (j, g, g1, g2) in &pieces {
                let i00 = half * inner(f, g);
                let i11 = half * inner(f1, g1);
                let i22 = half * inner(f2, g2);
                let mixed = half * (inner(f2, g) + inner(f, g2));
                for c in 0..2 {
                    for d in 0..2 {
                        let (r, s) = (c * m + i, d * m + j);
                        let mut v1 = pot[c][d] * i00;
                        let mut v2 = pot2[c][d] * i00 - pot[c][d] * mixed;
                        if c == d {
                            add(&mut m0, r, s, i00);
                            v1 += i11;
                            v2 += i22;
                        }
                        add(&mut m1, r, s, v1);
                        add(&mut m2, r, s, v2);
                    }
                }
            }
        }
    }
    Ok(GramTriple::from_matrices(m0.symmetrized(), m1.symmetrized(), m2.symmetrized())?)
}
