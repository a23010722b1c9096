use super::FormsError;
use crate::enclosure::EnclosureList;
use crate::ival::{verified_gen_eig, verified_sym_eig, Interval, IntervalMatrix};

/// A quadratic form on `Rⁿ` and linear constraints, each cutting the domain
/// by one dimension.
#[derive(Clone, Debug)]
pub struct FormChain {
    pub ambient: IntervalMatrix,
    pub constraints: Vec<Vec<f64>>,
}

impl FormChain {
    pub fn new(ambient: IntervalMatrix, constraints: Vec<Vec<f64>>) -> Result<Self, FormsError> {
        if !ambient.is_square() || ambient.rows() == 0 || !ambient.is_symmetric() {
            return Err(FormsError::InvalidChain("ambient form must be square and symmetric".into()));
        }
        let n = ambient.rows();
        if constraints.iter().any(|c| c.len() != n) {
            return Err(FormsError::InvalidChain(format!("constraints must have length {n}")));
        }
        if constraints.len() >= n {
            return Err(FormsError::InvalidChain("too many constraints".into()));
        }
        null_basis(&constraints, n)?;
        Ok(Self { ambient, constraints })
    }
}

/// Enclosures of the form's eigenvalues on the ambient space and on each
/// successively constrained subspace.
///
/// The restriction to `{x : ⟨c₁, x⟩ = … = ⟨cᵢ, x⟩ = 0}` is represented by
/// the pencil `(BᵀAB, BᵀB)` for an elimination basis `B` of that subspace,
/// enclosed in interval arithmetic. Each restricted list is intersected with
/// the interlacing brackets `[λⱼ, λⱼ₊₁]` of the previous one.
pub fn chain_eigen_lists(c: &FormChain) -> Result<Vec<EnclosureList>, FormsError> {
    let n = c.ambient.rows();
    let first = verified_sym_eig(&c.ambient)?.values;
    let mut lists = vec![EnclosureList::new(first, f64::INFINITY, f64::INFINITY)];
    for i in 1..=c.constraints.len() {
        let b = null_basis(&c.constraints[..i], n)?;
        let bt = b.transpose();
        let a = bt.matmul(&c.ambient).matmul(&b).symmetrized();
        let m = bt.matmul(&b).symmetrized();
        let values = verified_gen_eig(&a, &m)?.values;
        let prev = lists.last().expect("nonempty");
        let entries = values
            .iter()
            .enumerate()
            .map(|(j, v)| {
                let bracket = Interval::new(prev.lower(j), prev.upper(j + 1).max(prev.lower(j)));
                v.intersect(bracket).ok_or(FormsError::NotInterlacing { step: i, index: j })
            })
            .collect::<Result<Vec<_>, _>>()?;
        lists.push(EnclosureList::new(entries, f64::INFINITY, f64::INFINITY));
    }
    Ok(lists)
}

/// Endpoint form of `λⱼ ≤ μⱼ ≤ λⱼ₊₁` for a codimension-one restriction:
/// `μⱼ.hi ≥ λⱼ.lo` and `μⱼ.lo ≤ λⱼ₊₁.hi` for every listed `j`.
pub fn interlaces(outer: &EnclosureList, inner: &EnclosureList) -> bool {
    inner.entries.iter().enumerate().all(|(j, m)| m.hi() >= outer.lower(j) && m.lo() <= outer.upper(j + 1))
}

/// Columns spanning the null space of the constraint rows, by interval
/// Gauss–Jordan elimination with pivots chosen on midpoints. Pivot columns
/// are eliminated, free columns carry the identity.
fn null_basis(rows: &[Vec<f64>], n: usize) -> Result<IntervalMatrix, FormsError> {
    let mut r: Vec<Vec<Interval>> = rows.iter().map(|row| row.iter().map(|&x| Interval::point(x)).collect()).collect();
    let mut pivots = Vec::with_capacity(r.len());
    for i in 0..r.len() {
        let col = (0..n)
            .filter(|c| !pivots.contains(c))
            .max_by(|&a, &b| r[i][a].mag().total_cmp(&r[i][b].mag()))
            .ok_or(FormsError::DependentConstraints { index: i })?;
        let p = r[i][col];
        if p.contains_zero() {
            return Err(FormsError::DependentConstraints { index: i });
        }
        for x in r[i].iter_mut() {
            *x = *x / p;
        }
        r[i][col] = Interval::ONE;
        for k in 0..r.len() {
            if k == i {
                continue;
            }
            let f = r[k][col];
            if f == Interval::ZERO {
                continue;
            }
            for c in 0..n {
                r[k][c] = r[k][c] - f * r[i][c];
            }
            r[k][col] = Interval::ZERO;
        }
        pivots.push(col);
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut b = IntervalMatrix::zeros(n, free.len());
    for (j, &f) in free.iter().enumerate() {
        b.set(f, j, Interval::ONE);
        for (i, &p) in pivots.iter().enumerate() {
            b.set(p, j, -r[i][f]);
        }
    }
    Ok(b)
}
