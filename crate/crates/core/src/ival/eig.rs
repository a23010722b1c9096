//! Verified enclosures of symmetric and symmetric-definite eigenvalues.
//!
//! A floating point eigendecomposition `X`, `D` is computed first and then
//! certified: with `E = XᵀAX − D` and `G = XᵀBX − I` in interval arithmetic
//! and `g = ‖G‖_F < 1`, Weyl and Ostrowski give for every index
//! `λ_i ∈ [d_i − ‖E‖_F, d_i + ‖E‖_F] · [1/(1+g), 1/(1−g)]`.
//! Each bound is then tightened by the Kato–Temple inequality when its
//! neighbours leave a gap around the Rayleigh quotient.

use nalgebra::{DMatrix, SymmetricEigen};

use super::matrix::{dot, norm_upper};
use super::{EigError, Interval, IntervalMatrix};

/// Enclosures of all eigenvalues, in increasing order.
#[derive(Clone, Debug)]
pub struct EigEnclosure {
    /// `values[i]` contains the `i`-th smallest eigenvalue of every member
    /// matrix (or pencil).
    pub values: Vec<Interval>,
    /// Entry `i` is disjoint from its neighbours, so it contains no other
    /// eigenvalue.
    pub verified: Vec<bool>,
    /// `[0, ‖G‖_F]`, the orthogonality defect of the approximate basis.
    pub defect: Interval,
    /// Upper bound on `‖E‖_F`.
    pub residual: f64,
}

impl EigEnclosure {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn mark_isolated(&mut self) {
        let n = self.values.len();
        self.verified = (0..n)
            .map(|i| {
                let left = i == 0 || self.values[i - 1].strictly_below(self.values[i]);
                let right = i + 1 == n || self.values[i].strictly_below(self.values[i + 1]);
                left && right
            })
            .collect();
    }
}

fn check_square_symmetric(a: &IntervalMatrix) -> Result<(), EigError> {
    if a.rows() == 0 {
        return Err(EigError::Empty);
    }
    if !a.is_symmetric() {
        return Err(EigError::NotSymmetric);
    }
    Ok(())
}

fn sorted_eigen(m: DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = m.nrows();
    let se = SymmetricEigen::new(m);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| se.eigenvalues[i].total_cmp(&se.eigenvalues[j]));
    let d = idx.iter().map(|&i| se.eigenvalues[i]).collect();
    let x = DMatrix::from_fn(n, n, |r, c| se.eigenvectors[(r, idx[c])]);
    (d, x)
}

fn sym_mid(a: &IntervalMatrix) -> DMatrix<f64> {
    let m = a.mid();
    (&m + m.transpose()) * 0.5
}

/// Ostrowski/Weyl step shared by the standard and generalized problems.
fn certify(
    a: &IntervalMatrix,
    b: Option<&IntervalMatrix>,
    d: &[f64],
    x: &DMatrix<f64>,
) -> Result<EigEnclosure, EigError> {
    let n = d.len();
    let xax = a.congruence(x);
    let xbx = match b {
        Some(b) => b.congruence(x),
        None => IntervalMatrix::identity(n).congruence(x),
    };
    let e_mat = IntervalMatrix::from_fn(n, n, |i, j| {
        if i == j {
            xax.get(i, j) - d[i]
        } else {
            xax.get(i, j)
        }
    });
    let g_mat = IntervalMatrix::from_fn(n, n, |i, j| {
        if i == j {
            xbx.get(i, j) - 1.0
        } else {
            xbx.get(i, j)
        }
    });
    let e = e_mat.frobenius_upper();
    let g = g_mat.frobenius_upper();
    if !(g < 1.0) || !e.is_finite() {
        return Err(EigError::VerificationFailed { defect: g });
    }
    let theta = Interval::new(1.0, 1.0)
        / Interval::new(
            super::round::sub(1.0, g).0.min(1.0),
            super::round::add(1.0, g).1,
        );
    let ee = Interval::new(-e, e);
    let values = d.iter().map(|&di| (Interval::point(di) + ee) * theta).collect();
    let mut out = EigEnclosure {
        values,
        verified: vec![false; n],
        defect: Interval::new(0.0, g),
        residual: e,
    };
    out.mark_isolated();
    Ok(out)
}

/// Kato–Temple refinement of already index-certified enclosures.
///
/// `lmin_b` is a verified lower bound on the smallest eigenvalue of `B`
/// (1 for the standard problem).
fn refine(
    enc: &mut EigEnclosure,
    a: &IntervalMatrix,
    b: Option<&IntervalMatrix>,
    x: &DMatrix<f64>,
    lmin_b: f64,
) {
    let n = enc.values.len();
    for i in 0..n {
        let alpha = if i == 0 { f64::NEG_INFINITY } else { enc.values[i - 1].hi() };
        let beta = if i + 1 == n { f64::INFINITY } else { enc.values[i + 1].lo() };
        if !(alpha < beta) {
            continue;
        }
        let xi: Vec<Interval> = (0..n).map(|r| Interval::point(x[(r, i)])).collect();
        let ax = a.mul_vec(&xi);
        let bx = match b {
            Some(b) => b.mul_vec(&xi),
            None => xi.clone(),
        };
        let xbx = dot(&xi, &bx);
        if !xbx.is_positive() {
            continue;
        }
        let q = dot(&xi, &ax) / xbx;
        if !(q.lo() > alpha && q.hi() < beta) {
            continue;
        }
        let r: Vec<Interval> = ax.iter().zip(&bx).map(|(&u, &v)| u - q * v).collect();
        let rn = norm_upper(&r);
        let eps2 = Interval::new(0.0, (Interval::point(rn).sqr() / (xbx * lmin_b)).hi());
        let lo = if beta.is_finite() { (q - eps2 / (beta - q)).lo() } else { q.lo() };
        let hi = if alpha.is_finite() { (q + eps2 / (q - alpha)).hi() } else { q.hi() };
        if let Some(v) = enc.values[i].intersect(Interval::new(lo.min(hi), hi)) {
            enc.values[i] = v;
        }
    }
    enc.mark_isolated();
}

/// Enclosures of the eigenvalues of every symmetric matrix in `a`.
pub fn verified_sym_eig(a: &IntervalMatrix) -> Result<EigEnclosure, EigError> {
    verified_sym_eig_vectors(a).map(|(e, _)| e)
}

/// As [`verified_sym_eig`], also returning the approximate eigenvectors
/// (columns, same order as the enclosures).
pub fn verified_sym_eig_vectors(
    a: &IntervalMatrix,
) -> Result<(EigEnclosure, DMatrix<f64>), EigError> {
    check_square_symmetric(a)?;
    let (d, x) = sorted_eigen(sym_mid(a));
    let mut enc = certify(a, None, &d, &x)?;
    refine(&mut enc, a, None, &x, 1.0);
    Ok((enc, x))
}

/// Enclosures of the eigenvalues of the pencil `(A, B)`, `B` positive
/// definite.
pub fn verified_gen_eig(a: &IntervalMatrix, b: &IntervalMatrix) -> Result<EigEnclosure, EigError> {
    verified_gen_eig_vectors(a, b).map(|(e, _)| e)
}

/// As [`verified_gen_eig`], also returning approximately `B`-orthonormal
/// eigenvectors.
pub fn verified_gen_eig_vectors(
    a: &IntervalMatrix,
    b: &IntervalMatrix,
) -> Result<(EigEnclosure, DMatrix<f64>), EigError> {
    check_square_symmetric(a)?;
    check_square_symmetric(b)?;
    if a.rows() != b.rows() {
        return Err(EigError::DimensionMismatch);
    }
    let lmin_b = lambda_min_lower(b)?;
    if !(lmin_b > 0.0) {
        return Err(EigError::NotPositiveDefinite);
    }
    let (d, x) = gen_vectors(&sym_mid(a), &sym_mid(b)).ok_or(EigError::NotPositiveDefinite)?;
    let mut enc = certify(a, Some(b), &d, &x)?;
    refine(&mut enc, a, Some(b), &x, lmin_b);
    Ok((enc, x))
}

/// A verified lower bound on the smallest eigenvalue of every member of `b`.
pub fn lambda_min_lower(b: &IntervalMatrix) -> Result<f64, EigError> {
    let n = b.rows();
    if n == 0 {
        return Err(EigError::Empty);
    }
    match verified_sym_eig(b) {
        Ok(e) => Ok(e.values[0].lo()),
        Err(EigError::VerificationFailed { .. }) => Err(EigError::NotPositiveDefinite),
        Err(err) => Err(err),
    }
}

/// Floating point eigenpairs of the pencil `(am, bm)` via Cholesky reduction;
/// eigenvectors are approximately `bm`-orthonormal.
pub fn gen_vectors(am: &DMatrix<f64>, bm: &DMatrix<f64>) -> Option<(Vec<f64>, DMatrix<f64>)> {
    let chol = nalgebra::Cholesky::new(bm.clone())?;
    let l = chol.l();
    let y = l.solve_lower_triangular(am)?;
    let c = l.solve_lower_triangular(&y.transpose())?;
    let c = (&c + c.transpose()) * 0.5;
    let (d, v) = sorted_eigen(c);
    let x = l.transpose().solve_upper_triangular(&v)?;
    Some((d, x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> IntervalMatrix {
        IntervalMatrix::from_rows(&[
            vec![1.0, -1.0, 0.0],
            vec![-1.0, 2.0, -1.0],
            vec![0.0, -1.0, 1.0],
        ])
    }

    #[test]
    fn identity_has_unit_eigenvalues() {
        let e = verified_sym_eig(&IntervalMatrix::identity(3)).unwrap();
        for v in &e.values {
            assert!(v.contains(1.0) && v.width() <= 1e-12);
        }
    }

    #[test]
    fn path_graph_spectrum() {
        let e = verified_sym_eig(&path3()).unwrap();
        for (v, t) in e.values.iter().zip([0.0, 1.0, 3.0]) {
            assert!(v.contains(t), "{v:?} vs {t}");
            assert!(v.width() < 1e-13);
        }
        assert!(e.verified.iter().all(|&b| b));
    }

    #[test]
    fn diagonal_pencil() {
        let a = IntervalMatrix::from_rows(&[vec![2.0, 0.0], vec![0.0, 8.0]]);
        let b = IntervalMatrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 2.0]]);
        let e = verified_gen_eig(&a, &b).unwrap();
        assert!(e.values[0].contains(2.0) && e.values[1].contains(4.0));
    }

    #[test]
    fn identity_pencil() {
        let a = IntervalMatrix::from_rows(&[vec![4.0, 1.0, 0.5], vec![1.0, 3.0, 0.2], vec![0.5, 0.2, 2.0]]);
        let e = verified_gen_eig(&a, &a).unwrap();
        assert!(e.values.iter().all(|v| v.contains(1.0)));
    }

    #[test]
    fn indefinite_b_is_rejected() {
        let a = IntervalMatrix::identity(2);
        let b = IntervalMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]);
        assert!(matches!(verified_gen_eig(&a, &b), Err(EigError::NotPositiveDefinite)));
    }

    #[test]
    fn asymmetric_input_is_rejected() {
        let a = IntervalMatrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]);
        assert!(matches!(verified_sym_eig(&a), Err(EigError::NotSymmetric)));
    }

    #[test]
    fn interval_matrix_covers_members() {
        let eps = 1e-3;
        let a = path3().map(|x| x.inflate(eps)).symmetrized();
        let e = verified_sym_eig(&a).unwrap();
        let shifted = IntervalMatrix::from_rows(&[
            vec![1.0 + eps, -1.0 - eps, eps],
            vec![-1.0 - eps, 2.0 - eps, -1.0 + eps],
            vec![eps, -1.0 + eps, 1.0 + eps],
        ]);
        let s = verified_sym_eig(&shifted).unwrap();
        for (big, small) in e.values.iter().zip(&s.values) {
            assert!(big.encloses(*small));
        }
    }
}
