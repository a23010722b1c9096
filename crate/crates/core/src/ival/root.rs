use super::{Interval, RootError};

/// Certified sign of an interval value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Positive,
    Unknown,
}

pub fn sign_of(v: Interval) -> Sign {
    if v.is_positive() {
        Sign::Positive
    } else if v.is_negative() {
        Sign::Negative
    } else {
        Sign::Unknown
    }
}

const MAX_STALLS: usize = 200;

/// Bisection on a certified sign change.
///
/// `f` is evaluated on point intervals and must return an enclosure of the
/// function value. A probe whose sign cannot be certified keeps the bracket;
/// other probe points are tried instead.
pub fn bisect_root<F>(f: F, bracket: Interval, tol: f64) -> Result<Interval, RootError>
where
    F: Fn(Interval) -> Interval,
{
    let (mut lo, mut hi) = (bracket.lo(), bracket.hi());
    let s_lo = sign_of(f(Interval::point(lo)));
    let s_hi = sign_of(f(Interval::point(hi)));
    if s_lo == Sign::Unknown || s_hi == Sign::Unknown || s_lo == s_hi {
        return Err(RootError::NoSignChange);
    }
    let mut stalls = 0;
    while hi - lo > tol {
        let probes = probe_points(lo, hi, stalls);
        let mut moved = false;
        for m in probes {
            if !(m > lo && m < hi) {
                continue;
            }
            match sign_of(f(Interval::point(m))) {
                Sign::Unknown => continue,
                s if s == s_lo => lo = m,
                _ => hi = m,
            }
            moved = true;
            break;
        }
        if !moved {
            stalls += 1;
            if stalls >= MAX_STALLS {
                return Err(RootError::StalledBeforeTol { best: Interval::new(lo, hi) });
            }
        }
        if lo.next_up() >= hi {
            break;
        }
    }
    let out = Interval::new(lo, hi);
    if out.width() > tol {
        return Err(RootError::StalledBeforeTol { best: out });
    }
    Ok(out)
}

fn probe_points(lo: f64, hi: f64, stalls: usize) -> Vec<f64> {
    let w = hi - lo;
    if stalls == 0 {
        return vec![lo + 0.5 * w, lo + 0.25 * w, lo + 0.75 * w];
    }
    // Spread further probes over the bracket.
    let k = stalls + 2;
    (1..k).map(|i| lo + w * (i as f64) / (k as f64)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_root_of_two() {
        let r = bisect_root(|x| x.sqr() - 2.0, Interval::new(1.0, 2.0), 1e-10).unwrap();
        assert!(r.contains(std::f64::consts::SQRT_2));
        assert!(r.width() <= 1e-10);
    }

    #[test]
    fn identity_root() {
        let r = bisect_root(|x| x, Interval::new(-1.0, 1.0), 1e-12).unwrap();
        assert!(r.contains(0.0));
    }

    #[test]
    fn same_sign_is_rejected() {
        let r = bisect_root(|x| x.sqr() + 1.0, Interval::new(-1.0, 1.0), 1e-6);
        assert!(matches!(r, Err(RootError::NoSignChange)));
    }

    #[test]
    fn undecidable_function_stalls() {
        let f = |x: Interval| {
            if x.lo() == -1.0 || x.lo() == 1.0 {
                x
            } else {
                Interval::new(-1.0, 1.0)
            }
        };
        let r = bisect_root(f, Interval::new(-1.0, 1.0), 1e-6);
        match r {
            Err(RootError::StalledBeforeTol { best }) => assert!(best.contains(0.0)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
