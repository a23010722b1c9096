use nalgebra::DMatrix;

use super::gram::GramTriple;
use super::SlError;
use crate::ival::{gen_vectors, verified_gen_eig, Interval, IntervalMatrix};

/// Ritz vectors of the pencil `(M1, M0)` with the Gram matrices projected
/// onto them.
#[derive(Clone, Debug)]
pub struct RitzSpace {
    /// Floating point Ritz values, increasing.
    pub values: Vec<f64>,
    /// Coefficients of the Ritz vectors in the basis (columns).
    pub vectors: DMatrix<f64>,
    pub s0: IntervalMatrix,
    pub s1: IntervalMatrix,
    pub s2: IntervalMatrix,
}

/// The first `k` Ritz vectors, computed in floating point and then treated
/// as exact test vectors.
pub fn ritz_vectors(g: &GramTriple, k: usize) -> Result<RitzSpace, SlError> {
    let n = g.dim();
    if k > n {
        return Err(SlError::BasisTooSmall { dim: n, needed: k });
    }
    let (d, x) = gen_vectors(&sym_mid(&g.m1), &sym_mid(&g.m0)).ok_or(SlError::BasisDegenerate)?;
    let xk = x.columns(0, k).into_owned();
    Ok(RitzSpace {
        values: d[..k].to_vec(),
        s0: g.m0.congruence(&xk),
        s1: g.m1.congruence(&xk),
        s2: g.m2.congruence(&xk),
        vectors: xk,
    })
}

fn sym_mid(m: &IntervalMatrix) -> DMatrix<f64> {
    let c = m.mid();
    (&c + c.transpose()) * 0.5
}

impl RitzSpace {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Enclosures of the Rayleigh–Ritz values; their upper ends bound the
    /// operator eigenvalues from above.
    pub fn rr(&self) -> Result<Vec<Interval>, SlError> {
        Ok(verified_gen_eig(&self.s1, &self.s0)?.values)
    }

    /// Rayleigh quotient and `‖Hx‖²/‖x‖²` of Ritz vector `i`.
    pub fn quotients(&self, i: usize) -> (Interval, Interval) {
        let n = self.s0.get(i, i);
        (self.s1.get(i, i) / n, self.s2.get(i, i) / n)
    }

    /// Temple bound for eigenvalue `i` given `rho ≤ λ_{i+1}`.
    pub fn temple(&self, i: usize, rho: f64) -> Result<Interval, SlError> {
        let (q, r) = self.quotients(i);
        temple_bound(q, r, rho)
    }

    /// Lehmann bounds for eigenvalues `i..i+k` given `rho ≤ λ_{i+k}`, in
    /// increasing index order. `None` where the pencil value is not
    /// verifiably negative.
    pub fn lehmann(&self, i: usize, k: usize, rho: f64) -> Result<Vec<Option<f64>>, SlError> {
        let idx: Vec<usize> = (i..i + k).collect();
        let (s0, s1, s2) = (self.s0.select(&idx), self.s1.select(&idx), self.s2.select(&idx));
        lehmann_pencil(&s0, &s1, &s2, rho)
    }
}

fn temple_bound(q: Interval, r: Interval, rho: f64) -> Result<Interval, SlError> {
    if !(q.hi() < rho) {
        return Err(SlError::GapViolated { q_hi: q.hi(), rho });
    }
    // r ≥ q² by Cauchy–Schwarz.
    let resid = r - q.sqr();
    let resid = Interval::new(resid.lo().max(0.0), resid.hi().max(0.0));
    Ok(q - resid / (Interval::point(rho) - q))
}

fn lehmann_pencil(
    s0: &IntervalMatrix,
    s1: &IntervalMatrix,
    s2: &IntervalMatrix,
    rho: f64,
) -> Result<Vec<Option<f64>>, SlError> {
    let r = Interval::point(rho);
    let a = s1.sub(&s0.scale(r)).symmetrized();
    let b = s2.sub(&s1.scale(2.0 * r)).add(&s0.scale(r.sqr())).symmetrized();
    let tau = verified_gen_eig(&a, &b).map_err(|e| match e {
        crate::ival::EigError::NotPositiveDefinite => SlError::NotPositiveDefinite,
        other => SlError::Eig(other),
    })?;
    let k = tau.values.len();
    // The j-th smallest τ bounds the j-th eigenvalue below ρ counted
    // downwards.
    let mut out = vec![None; k];
    for (j, t) in tau.values.iter().enumerate() {
        if t.hi() < 0.0 {
            out[k - 1 - j] = Some((r + Interval::point(t.hi()).recip().expect("negative")).lo());
        }
    }
    Ok(out)
}

/// Upper bounds for the first `k` eigenvalues by Rayleigh–Ritz on the test
/// space of `g`.
pub fn rr_upper(g: &GramTriple, k: usize) -> Result<Vec<Interval>, SlError> {
    ritz_vectors(g, k)?.rr()
}

/// Temple lower bound `(qρ − r)/(ρ − q)` for eigenvalue `test_vector_index`,
/// using the corresponding Ritz vector. `rho.lo()` must bound the next
/// eigenvalue from below.
pub fn temple_lower(g: &GramTriple, test_vector_index: usize, rho: Interval) -> Result<Interval, SlError> {
    ritz_vectors(g, test_vector_index + 1)?.temple(test_vector_index, rho.lo())
}

/// Lehmann lower bounds for the `k` eigenvalues just below `rho`, which must
/// bound from below the first eigenvalue not among them. The Ritz vectors
/// whose Ritz values lie below `rho` are used; bounds are returned in
/// increasing order.
pub fn lehmann_lower(g: &GramTriple, rho: Interval, k: usize) -> Result<Vec<Interval>, SlError> {
    let all = ritz_vectors(g, g.dim())?;
    let below = all.values.iter().take_while(|&&v| v < rho.lo()).count();
    if below < k {
        return Err(SlError::GapViolated {
            q_hi: all.values.get(below).copied().unwrap_or(f64::INFINITY),
            rho: rho.lo(),
        });
    }
    let bounds = lehmann_block(g, below - k, k, rho.lo())?;
    bounds
        .into_iter()
        .map(|b| b.map(Interval::at_least).ok_or(SlError::GapViolated { q_hi: rho.lo(), rho: rho.lo() }))
        .collect()
}

/// Lehmann bounds for eigenvalues `first..first + k` from the matching Ritz
/// vectors, given `rho ≤ λ_{first+k}`.
pub fn lehmann_block(g: &GramTriple, first: usize, k: usize, rho: f64) -> Result<Vec<Option<f64>>, SlError> {
    ritz_vectors(g, first + k)?.lehmann(first, k, rho)
}
