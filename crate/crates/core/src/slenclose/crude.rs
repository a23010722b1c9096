use super::problem::SlProblem;
use super::SlError;
use crate::enclosure::EnclosureList;
use crate::ival::Interval;

/// Bounds from freezing the coefficients at their extreme values.
///
/// With `a₀ ≤ a ≤ a₁`, `v₀ ≤ V ≤ v₁` and mode constant `m_i` (`i`, `i + ½` or
/// `i + 1` by the number of Dirichlet ends), the `i`-th eigenvalue lies in
/// `[a₀π²m_i²/L² + v₀, a₁π²m_i²/L² + v₁]`. Returns the entries with lower end
/// below `e_prime`; the first excluded lower end becomes `next_lower`.
///
/// Fails with [`SlError::NotDisjoint`] unless the gap conditions at the first
/// and last gap hold and every emitted entry, including the first excluded
/// one, is strictly separated from the next.
pub fn crude_enclosure(p: &SlProblem, e_prime: f64) -> Result<EnclosureList, SlError> {
    let (lo, hi) = (p.domain.lo(), p.domain.hi());
    let ar = p.a.range(p.scale, lo, hi);
    if !ar.is_positive() {
        return Err(SlError::NonPositiveA { lower: ar.lo() });
    }
    let vr = p.v.range(p.scale, lo, hi);
    // π²/L² with L measured in stored units.
    let du = Interval::point(hi) - Interval::point(lo);
    let k = (p.scale.pi_ratio() / du).sqr();
    let (a0, a1) = (Interval::point(ar.lo()), Interval::point(ar.hi()));
    let (v0, v1) = (Interval::point(vr.lo()), Interval::point(vr.hi()));
    let offset = p.bc.mode_offset();
    let entry = |i: usize| {
        let m2 = Interval::point(i as f64 + offset).sqr();
        let lo = a0 * k * m2 + v0;
        let hi = a1 * k * m2 + v1;
        Interval::new(lo.lo(), hi.hi())
    };

    let mut entries = Vec::new();
    let mut next = entry(0);
    while next.lo() < e_prime {
        entries.push(next);
        next = entry(entries.len());
        if entries.len() > 100_000 {
            return Err(SlError::InvalidProblem("crude bounds do not grow".into()));
        }
    }
    let last = entries.len();

    // The gap g(j) = lo_j − hi_{j−1} is concave in j, so positivity at the
    // ends of 1..=M covers the whole range. Checked numerically as well.
    let gap = |j: usize| entry(j).lo() - entry(j - 1).hi();
    let lemma = last == 0 || (gap(1) > 0.0 && gap(last.max(1)) > 0.0);
    let numeric = entries.iter().zip(entries.iter().skip(1).chain(std::iter::once(&next)))
        .all(|(a, b)| a.strictly_below(*b));
    if !(lemma && numeric) {
        let j = (1..=last.max(1)).find(|&j| gap(j) <= 0.0).unwrap_or(1);
        return Err(SlError::NotDisjoint { cell: (lo, hi), index: j - 1 });
    }
    Ok(EnclosureList::new(entries, e_prime, next.lo().max(e_prime)))
}
