//! Exact and floating point oracles for matrix spectra.

use enclose::ival::Interval;
use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn rat(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

/// Number of negative pivots of the symmetric elimination of `m`, or `None`
/// when a zero pivot makes the count inconclusive.
fn negative_pivots(mut m: Vec<Vec<BigRational>>) -> Option<usize> {
    let n = m.len();
    let mut negatives = 0;
    for k in 0..n {
        let p = m[k][k].clone();
        if p.is_zero() {
            return None;
        }
        if p.is_negative() {
            negatives += 1;
        }
        for i in k + 1..n {
            let f = &m[i][k] / &p;
            for j in k + 1..n {
                let d = &f * &m[k][j];
                m[i][j] -= d;
            }
        }
    }
    Some(negatives)
}

/// `#{λ < σ}` for the pencil `(a, b)`. When the elimination meets a zero
/// pivot, `σ` is moved by `step` and the count retried. `b` is positive
/// definite, so by Sylvester's law this is the inertia of `a − σb`.
fn count_below(a: &DMatrix<f64>, b: &DMatrix<f64>, sigma: f64, step: BigRational) -> usize {
    let n = a.nrows();
    let mut s = rat(sigma);
    loop {
        let m = (0..n)
            .map(|i| (0..n).map(|j| rat(a[(i, j)]) - &s * rat(b[(i, j)])).collect())
            .collect();
        if let Some(c) = negative_pivots(m) {
            return c;
        }
        s += &step;
    }
}

fn tiny() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(10).pow(40))
}

/// Checks that entry `i` of `values` holds eigenvalue `i` of `(a, b)`:
/// fewer than `i + 1` eigenvalues lie below its lower end and at least
/// `i + 1` lie at or below its upper end.
pub fn check_enclosures(a: &DMatrix<f64>, b: &DMatrix<f64>, values: &[Interval]) -> Result<(), String> {
    for (i, v) in values.iter().enumerate() {
        // `#{λ < lo}` is the count just below `lo`, `#{λ ≤ hi}` the count
        // just above `hi`.
        let below_lo = count_below(a, b, v.lo(), -tiny());
        let below_hi = count_below(a, b, v.hi(), tiny());
        if below_lo > i || below_hi < i + 1 {
            return Err(format!("entry {i} = {v:?}: {below_lo} below lo, {below_hi} below hi"));
        }
    }
    Ok(())
}

pub fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<f64> {
    let m = if rng.random_bool(0.3) {
        // Clustered spectrum through an approximate orthogonal similarity.
        let q = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0)).qr().q();
        let levels = [rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0)];
        let d = DMatrix::from_fn(n, n, |i, j| if i == j { levels[i % 2] + 1e-9 * i as f64 } else { 0.0 });
        &q * d * q.transpose()
    } else {
        DMatrix::from_fn(n, n, |_, _| rng.random_range(-10.0..10.0))
    };
    DMatrix::from_fn(n, n, |i, j| if i <= j { m[(i, j)] } else { m[(j, i)] })
}

pub fn random_spd(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<f64> {
    let c = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
    let m = &c * c.transpose() + DMatrix::identity(n, n) * 0.5;
    DMatrix::from_fn(n, n, |i, j| if i <= j { m[(i, j)] } else { m[(j, i)] })
}

/// Eigenvalues of `a` restricted to the orthogonal complement of the rows of
/// `c`, through the null eigenvectors of `cᵀc`.
pub fn restricted_spectrum(a: &DMatrix<f64>, c: &[Vec<f64>]) -> Vec<f64> {
    let n = a.nrows();
    let rows = DMatrix::from_fn(c.len(), n, |i, j| c[i][j]);
    let gram = rows.transpose() * rows;
    let eig = SymmetricEigen::new(gram);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let q = DMatrix::from_fn(n, n - c.len(), |i, j| eig.eigenvectors[(i, order[j])]);
    let r = q.transpose() * a * &q;
    let mut v: Vec<f64> = SymmetricEigen::new(r).eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

pub fn random_form(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<f64> {
    let m = DMatrix::from_fn(n, n, |_, _| rng.random_range(-5.0..5.0));
    DMatrix::from_fn(n, n, |i, j| if i <= j { m[(i, j)] } else { m[(j, i)] })
}
