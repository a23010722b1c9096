use nalgebra::{DMatrix, SymmetricEigen};

use super::GraphError;
use crate::enclosure::EnclosureList;
use crate::ival::{verified_sym_eig, Interval, IntervalMatrix};
use crate::slenclose::RitzSpace;

/// Ritz space of a symmetric matrix: the first `k` floating point
/// eigenvectors of its midpoint with `XᵀX`, `XᵀAX` and `(AX)ᵀ(AX)` in
/// interval arithmetic.
pub(crate) fn matrix_ritz(a: &IntervalMatrix, k: usize) -> RitzSpace {
    let n = a.rows();
    let m = a.mid();
    let eig = SymmetricEigen::new((&m + m.transpose()) * 0.5);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let x = DMatrix::from_fn(n, k, |r, c| eig.eigenvectors[(r, order[c])]);
    let xi = IntervalMatrix::from_points(&x);
    let ax = a.matmul(&xi);
    let xt = xi.transpose();
    RitzSpace {
        values: order[..k].iter().map(|&i| eig.eigenvalues[i]).collect(),
        s0: xt.matmul(&xi).symmetrized(),
        s1: xt.matmul(&ax).symmetrized(),
        s2: ax.transpose().matmul(&ax).symmetrized(),
        vectors: x,
    }
}

/// Full verified spectrum of `a`, complete below `+∞`.
pub(crate) fn direct_list(a: &IntervalMatrix) -> Result<EnclosureList, GraphError> {
    let e = verified_sym_eig(a)?;
    Ok(EnclosureList::new(e.values, f64::INFINITY, f64::INFINITY))
}

/// Prior information about the first `k + 1` eigenvalues of the matrix to be
/// certified.
pub(crate) struct Prior {
    /// Lower bounds for indices `0..=k`.
    pub lower: Vec<f64>,
    /// Upper bounds for indices `0..k`.
    pub upper: Vec<f64>,
}

/// Enclosures of the first `k` eigenvalues of the positive semidefinite
/// matrix `a` from Rayleigh–Ritz upper bounds and Temple or Lehmann lower
/// bounds.
///
/// Lower bounds are improved from the top down; the shift for index `j` is
/// the current lower bound of index `j + 1`. Where Temple fails or stays
/// wider than `tol`, Lehmann blocks of two and three vectors are tried.
pub(crate) fn certify(a: &IntervalMatrix, prior: &Prior, tol: f64) -> Result<Vec<Interval>, GraphError> {
    let k = prior.upper.len();
    assert_eq!(prior.lower.len(), k + 1);
    if k == 0 {
        return Ok(Vec::new());
    }
    let rs = matrix_ritz(a, k);
    let rr = rs.rr()?;
    let mut upper: Vec<f64> = (0..k).map(|j| rr[j].hi().min(prior.upper[j])).collect();
    let mut lower: Vec<f64> = prior.lower.iter().map(|&l| l.max(0.0)).collect();
    if k == a.rows() {
        // A basis of the whole space: the Ritz pencil is congruent to `a`,
        // so its enclosures are two-sided.
        for j in 0..k {
            lower[j] = lower[j].max(rr[j].lo());
        }
    }
    for j in (0..k).rev() {
        let rho = lower[j + 1];
        if !rho.is_finite() {
            if j + 1 == a.rows() {
                // Every Rayleigh quotient bounds the top eigenvalue from below.
                lower[j] = lower[j].max(rs.quotients(j).0.lo());
            }
            continue;
        }
        if let Ok(t) = rs.temple(j, rho) {
            lower[j] = lower[j].max(t.lo());
        }
        if upper[j] - lower[j] <= tol {
            continue;
        }
        // Blocks of up to three vectors containing `j`, shifted below the
        // first index after the block.
        'blocks: for last in j..(j + 3).min(k) {
            let rho = lower[last + 1];
            if !rho.is_finite() {
                continue;
            }
            for first in (last.saturating_sub(2)..=j).rev() {
                if last == first {
                    continue;
                }
                if let Ok(bounds) = rs.lehmann(first, last + 1 - first, rho) {
                    for (i, l) in bounds.into_iter().enumerate() {
                        if let Some(l) = l {
                            lower[first + i] = lower[first + i].max(l);
                        }
                    }
                }
                if upper[j] - lower[j] <= tol {
                    break 'blocks;
                }
            }
        }
    }
    for j in 1..k {
        lower[j] = lower[j].max(lower[j - 1]);
    }
    for j in (0..k - 1).rev() {
        upper[j] = upper[j].min(upper[j + 1]);
    }
    (0..k)
        .map(|j| {
            if lower[j] <= upper[j] {
                Ok(Interval::new(lower[j], upper[j]))
            } else {
                Err(GraphError::Inconsistent { index: j, lower: lower[j], upper: upper[j] })
            }
        })
        .collect()
}

/// Index of the first entry among the first `count` (and below `ceiling`)
/// wider than `tol`.
pub(crate) fn first_unresolved(entries: &[Interval], count: usize, ceiling: f64, tol: f64) -> Option<usize> {
    entries.iter().take(count).position(|e| e.hi() < ceiling && e.width() > tol)
}
