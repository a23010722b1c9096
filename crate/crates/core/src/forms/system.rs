use super::chain::interlaces;
use super::FormsError;
use crate::enclosure::EnclosureList;
use crate::ival::{bisect_root, pi_enclosure, sign_of, Interval, Sign};

/// Two-component Schrödinger system on `(α, β)` with Neumann ends and
/// potential `diag(u, 0)` on `(α, 0)`, `v [[1, 1], [1, 1]]` on `(0, β)`.
#[derive(Clone, Copy, Debug)]
pub struct SystemFixture {
    pub alpha: f64,
    pub beta: f64,
    pub u: Interval,
    pub v: Interval,
    /// Cutoff for the eigenvalues of the coupled operator.
    pub e: f64,
}

impl SystemFixture {
    pub fn new(alpha: f64, beta: f64, u: Interval, v: Interval, e: f64) -> Result<Self, FormsError> {
        if !(alpha < 0.0 && beta > 0.0) {
            return Err(FormsError::InvalidFixture("need α < 0 < β".into()));
        }
        if u.lo() < 0.0 || v.lo() < 0.0 || !u.is_bounded() || !v.is_bounded() {
            return Err(FormsError::InvalidFixture("potentials must be nonnegative".into()));
        }
        if !(e > 0.0 && e.is_finite()) {
            return Err(FormsError::InvalidFixture("cutoff must be positive".into()));
        }
        Ok(Self { alpha, beta, u, v, e })
    }

    pub(crate) fn left(&self) -> f64 {
        -self.alpha
    }
}

/// Eigenvalue lists of the operators in the chain `A₁ = H₁ ⊕ H₂ ≤ K ≤ H`.
#[derive(Clone, Debug)]
pub struct SystemLists {
    pub h1: EnclosureList,
    pub h2: EnclosureList,
    pub a1: EnclosureList,
    pub k: EnclosureList,
    pub h: EnclosureList,
}

/// `H` is listed below the cutoff `E`; `K` below `E` plus the next
/// eigenvalue, which bounds the top of `H` through interlacing; `A₁` up to
/// the index after the last `K` entry; `H₁` and `H₂` up to the top of `A₁`.
///
/// `H₁`, `H₂` and `A₁` have closed forms. The eigenvalues of `K` and `H` are
/// the zeros of determinants built from the fundamental solutions on each
/// side, matched at 0; they are located by certified sign changes on a grid
/// of step `E/1000` and refined by bisection. The `f₂` component of `K` on
/// `(α, 0)` decouples and contributes `m²π²/α²`.
pub fn system_fixture_lists(fx: &SystemFixture) -> Result<SystemLists, FormsError> {
    let e = fx.e;
    let step = e / 1000.0;
    let (la, lb) = (fx.left(), fx.beta);
    let pi2 = pi_enclosure().sqr();

    let h = if fx.v == Interval::ZERO {
        let mut r = scan_roots(|l| scalar_secular(fx, l), e, step)?;
        r.extend(neumann_values(la + lb, Interval::ZERO, e, pi2));
        sorted_below(r, e)
    } else {
        sorted_below(scan_roots(|l| coupled_secular(fx, l), e, step)?, e)
    };

    let mut hi = e;
    let k = loop {
        let decoupled = neumann_values(la, Interval::ZERO, hi, pi2);
        let mut all = if fx.v == Interval::ZERO {
            let mut r = scan_roots(|l| scalar_secular(fx, l), hi, step)?;
            r.extend(neumann_values(lb, Interval::ZERO, hi, pi2));
            r
        } else {
            scan_roots(|l| k_secular(fx, l), hi, step)?
        };
        all.extend(decoupled);
        sort(&mut all);
        if let Some(pos) = all.iter().position(|x| x.lo() >= e) {
            all.truncate(pos + 1);
            break all;
        }
        hi += e;
    };

    let need = k.len() + 1;
    let mut h1 = closed_spectrum(la, fx.u, need, pi2);
    let mut h2 = closed_spectrum(lb, fx.v * 2.0, need, pi2);
    let mut a1: Vec<Interval> = h1.iter().chain(&h2).copied().collect();
    sort(&mut a1);
    let a1_next = a1[need].lo();
    a1.truncate(need);
    let top = a1[need - 1].hi();
    let cut = |v: &mut Vec<Interval>| {
        let keep = v.iter().take_while(|x| x.lo() <= top).count();
        let next = v.get(keep).map_or(f64::INFINITY, |x| x.lo());
        v.truncate(keep);
        next
    };
    let (n1, n2) = (cut(&mut h1), cut(&mut h2));

    let h_list = EnclosureList::new(h, e, e);
    let k_next = k.last().map_or(e, |x| x.lo());
    let k_list = EnclosureList::new(k, k_next, k_next);
    let a1_list = EnclosureList::new(a1, a1_next, a1_next);
    if !interlaces(&a1_list, &k_list) {
        return Err(FormsError::NotInterlacing { step: 1, index: 0 });
    }
    if !interlaces(&k_list, &h_list) {
        return Err(FormsError::NotInterlacing { step: 2, index: 0 });
    }
    Ok(SystemLists {
        h1: EnclosureList::new(h1, n1, n1),
        h2: EnclosureList::new(h2, n2, n2),
        a1: a1_list,
        k: k_list,
        h: h_list,
    })
}

fn sort(v: &mut [Interval]) {
    v.sort_by(|a, b| a.mid().total_cmp(&b.mid()));
}

fn sorted_below(mut v: Vec<Interval>, e: f64) -> Vec<Interval> {
    sort(&mut v);
    v.retain(|x| x.lo() < e);
    v
}

/// `μ + n²π²/L²` below `hi`.
fn neumann_values(len: f64, mu: Interval, hi: f64, pi2: Interval) -> Vec<Interval> {
    let l2 = Interval::point(len).sqr();
    (0..)
        .map(|n| mu + pi2 * Interval::point((n * n) as f64) / l2)
        .take_while(|x| x.lo() < hi)
        .collect()
}

/// The first `count` values of `{n²π²/L²} ∪ {w + n²π²/L²}`.
fn closed_spectrum(len: f64, w: Interval, count: usize, pi2: Interval) -> Vec<Interval> {
    let l2 = Interval::point(len).sqr();
    let level = |n: usize| pi2 * Interval::point((n * n) as f64) / l2;
    let mut v: Vec<Interval> = (0..count).flat_map(|n| [level(n), w + level(n)]).collect();
    sort(&mut v);
    v.truncate(count);
    v
}

/// Solution of `y″ = −z y` with `y(0) = 1`, `y′(0) = 0`, and its derivative,
/// at distance `l`.
fn fundamental(z: Interval, l: f64) -> (Interval, Interval) {
    let li = Interval::point(l);
    if z.is_positive() {
        let w = z.sqrt().expect("positive");
        let t = w * li;
        (t.cos(), -(w * t.sin()))
    } else if z.is_negative() {
        let k = (-z).sqrt().expect("positive");
        let t = k * li;
        let (c, s) = (t.cosh().expect("moderate argument"), t.sinh().expect("moderate argument"));
        (c, k * s)
    } else {
        series(z, l)
    }
}

/// Power series in `z`, entire in `z`, for arguments straddling 0.
fn series(z: Interval, l: f64) -> (Interval, Interval) {
    let l2 = Interval::point(l).sqr();
    let x = z.mag() * l2.hi();
    let terms = (x.sqrt().ceil() as usize + 12).min(80);
    let mz = -z * l2;
    let (mut c, mut d) = (Interval::ONE, Interval::ZERO);
    // tc = (−z)^k l^{2k}/(2k)!, td = (−z)^k l^{2k−1}/(2k−1)!
    let mut tc = Interval::ONE;
    for k in 1..=terms {
        let kf = k as f64;
        let td = tc * mz / (Interval::point(l) * Interval::point(2.0 * kf - 1.0));
        tc = tc * mz / Interval::point((2.0 * kf - 1.0) * 2.0 * kf);
        c += tc;
        d += td;
    }
    // Ratios of later terms are below 1/2, so each tail is at most twice
    // the next term.
    let k = terms as f64 + 1.0;
    let next_c = tc.mag() * x / ((2.0 * k - 1.0) * 2.0 * k);
    let next_d = tc.mag() * x / (l * (2.0 * k - 1.0));
    (c.inflate(2.0 * next_c), d.inflate(2.0 * next_d))
}

fn side(fx: &SystemFixture, lam: Interval) -> [(Interval, Interval); 4] {
    let (la, lb) = (fx.left(), fx.beta);
    [
        fundamental(lam - fx.u, la),
        fundamental(lam, la),
        fundamental(lam - fx.v * 2.0, lb),
        fundamental(lam, lb),
    ]
}

/// Continuity of `f` and `f′` at 0 for both components, in the unknowns
/// of the left solutions and of `(f₁ ± f₂)/√2` on the right.
fn coupled_secular(fx: &SystemFixture, lam: Interval) -> Interval {
    let [(c1, d1), (c2, d2), (c3, d3), (c4, d4)] = side(fx, lam);
    let z = Interval::ZERO;
    det(&[
        [c1, z, -c3, -c4],
        [z, c2, -c3, c4],
        [d1, z, d3, d4],
        [z, d2, d3, -d4],
    ])
}

/// `f₁` and `f₁′` continuous at 0, `f₂′(0+) = 0`.
fn k_secular(fx: &SystemFixture, lam: Interval) -> Interval {
    let [(c1, d1), _, (c3, d3), (c4, d4)] = side(fx, lam);
    let z = Interval::ZERO;
    det3(&[[c1, -c3, -c4], [d1, d3, d4], [z, d3, -d4]])
}

/// `f₁` alone when the right potential vanishes: potential `u` on the
/// left, none on the right.
fn scalar_secular(fx: &SystemFixture, lam: Interval) -> Interval {
    let (cl, dl) = fundamental(lam - fx.u, fx.left());
    let (cr, dr) = fundamental(lam, fx.beta);
    cl * dr + cr * dl
}

fn det3(m: &[[Interval; 3]; 3]) -> Interval {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn det(m: &[[Interval; 4]; 4]) -> Interval {
    let mut total = Interval::ZERO;
    for col in 0..4 {
        if m[0][col] == Interval::ZERO {
            continue;
        }
        let mut minor = [[Interval::ZERO; 3]; 3];
        for r in 1..4 {
            let mut cc = 0;
            for c in 0..4 {
                if c != col {
                    minor[r - 1][cc] = m[r][c];
                    cc += 1;
                }
            }
        }
        let term = m[0][col] * det3(&minor);
        total = if col % 2 == 0 { total + term } else { total - term };
    }
    total
}

/// Zeros of `f` in `[0, hi)` at certified sign changes between grid points.
/// The grid starts one step below 0 so a simple zero at 0 is bracketed; the
/// operators are nonnegative, so enclosures are clipped at 0.
fn scan_roots(f: impl Fn(Interval) -> Interval, hi: f64, step: f64) -> Result<Vec<Interval>, FormsError> {
    let mut roots = Vec::new();
    let mut last: Option<(f64, Sign)> = None;
    let n = (hi / step).ceil() as usize + 1;
    for i in 0..=n {
        let x = (i as f64 * step - step).min(hi);
        let s = sign_of(f(Interval::point(x)));
        if s == Sign::Unknown {
            continue;
        }
        if let Some((x0, s0)) = last {
            if s0 != s {
                let tol = 1e-10 * x.abs().max(1.0);
                let r = bisect_root(&f, Interval::new(x0, x), tol)?;
                roots.push(Interval::new(r.lo().max(0.0), r.hi().max(0.0)));
            }
        }
        last = Some((x, s));
    }
    Ok(roots)
}
