//! Decimal rendering of interval endpoints that never narrows the interval.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::ival::Interval;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Dir {
    Down,
    Up,
}

/// Shortest decimal that parses back to `x`, if its value is `≤ x`;
/// otherwise `x` truncated toward `−∞` to 20 significant digits.
pub fn render_down(x: f64) -> String {
    render(x, Dir::Down, None)
}

/// As [`render_down`], rounding toward `+∞`.
pub fn render_up(x: f64) -> String {
    render(x, Dir::Up, None)
}

/// `[lo, hi]` with `digits` significant digits, rounded outward.
pub fn render_interval(v: Interval, digits: usize) -> String {
    format!("[{}, {}]", render(v.lo(), Dir::Down, Some(digits)), render(v.hi(), Dir::Up, Some(digits)))
}

fn render(x: f64, dir: Dir, digits: Option<usize>) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x.is_nan() {
        return "nan".into();
    }
    let exact = BigRational::from_float(x).expect("finite");
    if digits.is_none() {
        let short = format!("{x:e}");
        let ok = match dir {
            Dir::Down => parse_exact(&short).is_some_and(|d| d <= exact),
            Dir::Up => parse_exact(&short).is_some_and(|d| d >= exact),
        };
        if ok {
            let (q, e) = parse_parts(&short).expect("own output");
            return assemble(&q, e);
        }
    }
    let sig = digits.unwrap_or(20).max(1);
    let k = decimal_exponent(&exact);
    let shift = sig as i32 - 1 - k;
    let scaled = &exact * pow10(shift);
    let q = match dir {
        Dir::Down => scaled.floor(),
        Dir::Up => scaled.ceil(),
    }
    .to_integer();
    assemble(&q, -shift)
}

/// `⌊log₁₀ |x|⌋` for nonzero `x`.
fn decimal_exponent(x: &BigRational) -> i32 {
    let a = x.abs();
    let mut k = a.numer().to_string().len() as i32 - a.denom().to_string().len() as i32;
    while pow10(k) > a {
        k -= 1;
    }
    while pow10(k + 1) <= a {
        k += 1;
    }
    k
}

fn pow10(k: i32) -> BigRational {
    let p = BigRational::from_integer(BigInt::from(10).pow(k.unsigned_abs()));
    if k >= 0 {
        p
    } else {
        p.recip()
    }
}

/// `q · 10^e` in positional or scientific notation.
fn assemble(q: &BigInt, e: i32) -> String {
    if q.is_zero() {
        return "0".into();
    }
    let neg = q.is_negative();
    let mut digits = q.abs().to_string();
    let mut e = e;
    while digits.len() > 1 && digits.ends_with('0') {
        digits.pop();
        e += 1;
    }
    let sign = if neg { "-" } else { "" };
    let point = digits.len() as i32 + e;
    let body = if (-5..=21).contains(&point) {
        if e >= 0 {
            format!("{digits}{}", "0".repeat(e as usize))
        } else if point > 0 {
            format!("{}.{}", &digits[..point as usize], &digits[point as usize..])
        } else {
            format!("0.{}{digits}", "0".repeat((-point) as usize))
        }
    } else if digits.len() == 1 {
        format!("{digits}e{}", point - 1)
    } else {
        format!("{}.{}e{}", &digits[..1], &digits[1..], point - 1)
    };
    format!("{sign}{body}")
}

/// `(q, e)` with value `q · 10^e` for a decimal literal such as `-1.25e-3`.
fn parse_parts(s: &str) -> Option<(BigInt, i32)> {
    let s = s.trim();
    let (neg, s) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let q: BigInt = format!("0{int}{frac}").parse().ok()?;
    Some((if neg { -q } else { q }, exp - frac.len() as i32))
}

/// Exact rational value of a decimal literal.
pub fn parse_exact(s: &str) -> Option<BigRational> {
    let (q, e) = parse_parts(s)?;
    Some(BigRational::from_integer(q) * pow10(e))
}

/// Tightest interval of doubles containing the decimal literal `s`.
pub fn decimal_interval(s: &str) -> Option<Interval> {
    let x: f64 = s.trim().parse().ok()?;
    if !x.is_finite() {
        return None;
    }
    let exact = parse_exact(s)?;
    let bin = BigRational::from_float(x)?;
    Some(match bin.cmp(&exact) {
        std::cmp::Ordering::Equal => Interval::point(x),
        std::cmp::Ordering::Less => Interval::new(x, x.next_up()),
        std::cmp::Ordering::Greater => Interval::new(x.next_down(), x),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_are_directed() {
        for x in [0.1, 1.0 / 3.0, 2.48604311, -7.25e-9, 1e300, 5e-324, 49.0 * 0.19806226, std::f64::consts::PI] {
            let (d, u) = (render_down(x), render_up(x));
            let ex = BigRational::from_float(x).unwrap();
            assert!(parse_exact(&d).unwrap() <= ex && parse_exact(&u).unwrap() >= ex, "{x} {d} {u}");
            assert_eq!(d.parse::<f64>().unwrap(), x, "{d}");
            assert_eq!(u.parse::<f64>().unwrap(), x, "{u}");
        }
    }

    #[test]
    fn short_forms() {
        assert_eq!(render_down(0.5), "0.5");
        assert_eq!(render_up(1500.0), "1500");
        assert_eq!(render_interval(Interval::new(1.0 / 3.0, 2.0 / 3.0), 3), "[0.333, 0.667]");
        assert_eq!(render_interval(Interval::new(-2.5, 0.125), 2), "[-2.5, 0.13]");
        assert_eq!(render_interval(Interval::new(1e-30, 1e-30), 2), "[1e-30, 1.1e-30]");
    }

    #[test]
    fn decimal_literals_are_enclosed() {
        let v = decimal_interval("0.1").unwrap();
        let ex = parse_exact("0.1").unwrap();
        assert!(BigRational::from_float(v.lo()).unwrap() < ex && BigRational::from_float(v.hi()).unwrap() > ex);
        assert_eq!(decimal_interval("0.25").unwrap(), Interval::point(0.25));
        assert!(decimal_interval("abc").is_none());
    }
}
