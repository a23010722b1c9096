use crate::enclosure::{union_bounds, EnclosureList};
use crate::ival::Interval;

/// Rough enclosures for the operator obtained by rejoining two decoupled
/// halves.
///
/// With `σ` the merged eigenvalues of the halves, the joined eigenvalues
/// satisfy `σᵢ ≤ νᵢ ≤ σᵢ₊₁`, so entry `i` is `[σᵢ.lo, σᵢ₊₁.hi]`. These
/// entries generally overlap. The result is complete below the lower of the
/// two ceilings.
pub fn merge_interlace(left: &EnclosureList, right: &EnclosureList) -> EnclosureList {
    let ceiling = left.ceiling.min(right.ceiling);
    let total = left.len() + right.len();
    let sigma = union_bounds(&[left, right], total + 1);
    let count = sigma.iter().take(total).take_while(|s| s.0 < ceiling).count();
    let entries = (0..count)
        .map(|i| {
            let hi = sigma[i + 1].1;
            if hi.is_finite() {
                Interval::new(sigma[i].0, hi.max(sigma[i].0))
            } else {
                Interval::at_least(sigma[i].0)
            }
        })
        .collect();
    EnclosureList::new(entries, ceiling, sigma[count].0.max(ceiling))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn points(v: &[f64], ceiling: f64, next: f64) -> EnclosureList {
        EnclosureList::new(v.iter().map(|&x| Interval::point(x)).collect(), ceiling, next)
    }

    #[test]
    fn merged_lists_interlace() {
        let a = points(&[6.454, 22.450, 70.515], 78.75, 150.0);
        let b = points(&[1.364, 17.693, 65.503], 78.75, 150.0);
        let m = merge_interlace(&a, &b);
        let lows: Vec<f64> = m.entries.iter().map(|e| e.lo()).collect();
        assert_eq!(lows, vec![1.364, 6.454, 17.693, 22.450, 65.503, 70.515]);
        // The joined operator's eigenvalues lie in the brackets.
        for (e, nu) in m.entries.iter().zip([2.486, 9.173, 20.141, 40.057, 68.032]) {
            assert!(e.contains(nu));
        }
        assert_eq!(m.entries[5].hi(), f64::INFINITY);
    }

    #[test]
    fn empty_side_is_identity_on_bounds() {
        let a = points(&[1.0, 2.0], 5.0, 6.0);
        let e = EnclosureList::empty(5.0);
        let m = merge_interlace(&a, &e);
        assert_eq!(m.entries[0], Interval::new(1.0, 2.0));
    }
}
