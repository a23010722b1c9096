//! Interval arithmetic on Legendre coefficient vectors over `[-1, 1]`.
//!
//! Multiplication by `t` and differentiation act on coefficients with
//! nonnegative weights, so enclosure widths grow only additively. Inner
//! products follow from orthogonality, `∫ PₘPₙ = 2δₘₙ/(2n + 1)`.

use crate::ival::Interval;

pub type Series = Vec<Interval>;

fn ratio(a: f64, b: f64) -> Interval {
    Interval::point(a) / Interval::point(b)
}

/// Coefficients from exact rationals `num/den`.
pub fn from_ratios(terms: &[(f64, f64)]) -> Series {
    terms.iter().map(|&(n, d)| ratio(n, d)).collect()
}

/// `t · f`, using `t Pₘ = ((m + 1) Pₘ₊₁ + m Pₘ₋₁)/(2m + 1)`.
pub fn mul_t(f: &[Interval]) -> Series {
    let mut out = vec![Interval::ZERO; f.len() + 1];
    for (m, &c) in f.iter().enumerate() {
        if c == Interval::ZERO {
            continue;
        }
        let mf = m as f64;
        out[m + 1] += c * ratio(mf + 1.0, 2.0 * mf + 1.0);
        if m > 0 {
            out[m - 1] += c * ratio(mf, 2.0 * mf + 1.0);
        }
    }
    out
}

/// `d/dt f`, using `P′ₖ = Σ (2j + 1) Pⱼ` over `j < k` with `k − j` odd.
pub fn deriv(f: &[Interval]) -> Series {
    let n = f.len();
    if n <= 1 {
        return vec![Interval::ZERO];
    }
    // tail[j] = f[j+1] + f[j+3] + ...
    let mut tail = vec![Interval::ZERO; n + 1];
    for j in (0..n - 1).rev() {
        tail[j] = f[j + 1] + if j + 3 <= n { tail[j + 2] } else { Interval::ZERO };
    }
    (0..n - 1).map(|j| tail[j] * (2.0 * j as f64 + 1.0)).collect()
}

/// `p(t) · f` for `p` in monomial coefficients, by Horner's rule.
pub fn mul_poly(p: &[Interval], f: &[Interval]) -> Series {
    let mut acc: Series = vec![Interval::ZERO];
    for &c in p.iter().rev() {
        acc = mul_t(&acc);
        add_scaled(&mut acc, c, f);
    }
    acc
}

fn add_scaled(acc: &mut Series, c: Interval, f: &[Interval]) {
    if acc.len() < f.len() {
        acc.resize(f.len(), Interval::ZERO);
    }
    for (a, &x) in acc.iter_mut().zip(f) {
        *a += c * x;
    }
}

pub fn scale(f: &[Interval], s: Interval) -> Series {
    f.iter().map(|&x| x * s).collect()
}

pub fn sub(a: &[Interval], b: &[Interval]) -> Series {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| {
            let x = a.get(k).copied().unwrap_or(Interval::ZERO);
            let y = b.get(k).copied().unwrap_or(Interval::ZERO);
            x - y
        })
        .collect()
}

/// `∫₋₁¹ f g dt`.
pub fn inner(f: &[Interval], g: &[Interval]) -> Interval {
    f.iter()
        .zip(g)
        .enumerate()
        .map(|(k, (&a, &b))| a * b * ratio(2.0, 2.0 * k as f64 + 1.0))
        .sum()
}

/// Value at `t = ±1`.
#[cfg(test)]
pub fn at_end(f: &[Interval], right: bool) -> Interval {
    f.iter()
        .enumerate()
        .map(|(k, &c)| if right || k % 2 == 0 { c } else { -c })
        .sum()
}
