use std::collections::{HashMap, VecDeque};

use super::{Graph, GraphError};
use crate::ival::Interval;

/// One path per ordered pair of vertices, with the constants a caller
/// claims for it: `|γ| ≤ αd` for every path and at most `βd|X|` paths
/// through every directed edge.
#[derive(Clone, Debug)]
pub struct PathFamily {
    n: usize,
    /// `paths[x * n + y]` runs from `x` to `y`; the diagonal holds `[x]`.
    paths: Vec<Vec<usize>>,
    pub alpha: f64,
    pub beta: f64,
    pub diameter: f64,
}

impl PathFamily {
    /// `paths` must have `n²` entries in row-major order of `(from, to)`.
    pub fn new(n: usize, paths: Vec<Vec<usize>>, alpha: f64, beta: f64, diameter: f64) -> Self {
        Self { n, paths, alpha, beta, diameter }
    }

    pub fn vertices(&self) -> usize {
        self.n
    }

    pub fn path(&self, x: usize, y: usize) -> &[usize] {
        &self.paths[x * self.n + y]
    }
}

/// Lower bounds on the first nonzero eigenvalue from a path family.
#[derive(Clone, Copy, Debug)]
pub struct PoincareBound {
    /// `1/(αβd²)` with the family's stated constants, when they are
    /// confirmed by the paths.
    pub stated: Option<Interval>,
    /// `|X|/(L C)` with `L` the longest path and `C` the largest number of
    /// paths through a directed edge, so `α` and `β` are the measured maxima.
    pub measured: Interval,
    /// `|X|/K` with `K = max_e Σ_{γ ∋ e} |γ|`.
    pub weighted: Interval,
    /// The largest of the three.
    pub bound: Interval,
}

impl PoincareBound {
    pub fn lower(&self) -> f64 {
        self.bound.lo()
    }
}

/// `μ₁ ≥ 1/(αβd²)` for the Laplacian of `g`, with the constants re-derived
/// from the paths.
///
/// For every ordered pair, `|φ(x) − φ(y)|² ≤ |γ| Σ_{e∈γ} b(e)|∂φ(e)|²` by
/// Cauchy–Schwarz; summing gives `|X| ‖φ − φ̄‖² ≤ K Q(φ)`.
pub fn poincare_bound(g: &Graph, pf: &PathFamily) -> Result<PoincareBound, GraphError> {
    let n = g.len();
    if pf.n != n || pf.paths.len() != n * n {
        return Err(GraphError::IncompleteFamily { from: 0, to: 0 });
    }
    let recip: Vec<Interval> = g.edges().iter().map(|e| e.weight.recip().expect("positive weight")).collect();
    // Directed edge (u, v) of undirected edge e is 2e when u < v.
    let mut count = vec![0u64; 2 * g.edges().len()];
    let mut weighted = vec![Interval::ZERO; 2 * g.edges().len()];
    let mut longest = Interval::ZERO;
    let mut scratch = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let p = pf.path(x, y);
            if x == y {
                continue;
            }
            if p.len() < 2 {
                return Err(GraphError::IncompleteFamily { from: x, to: y });
            }
            if p[0] != x || *p.last().expect("nonempty") != y {
                return Err(GraphError::DisconnectedPath { from: x, to: y });
            }
            scratch.clear();
            let mut len = Interval::ZERO;
            for w in p.windows(2) {
                let e = g.edge_index(w[0], w[1]).ok_or(GraphError::DisconnectedPath { from: x, to: y })?;
                let dir = 2 * e + usize::from(w[0] > w[1]);
                len += recip[e];
                scratch.push(dir);
            }
            longest = longest.max(len);
            for &d in &scratch {
                count[d] += 1;
                weighted[d] += len;
            }
        }
    }
    let size = Interval::point(n as f64);
    let congestion = count.iter().copied().max().unwrap_or(0) as f64;
    let k = weighted.iter().fold(Interval::ZERO, |m, &w| m.max(w));
    let ratio = |den: Interval| {
        if den.lo() > 0.0 {
            size / den
        } else {
            Interval::at_least(0.0)
        }
    };
    let measured = ratio(longest * Interval::point(congestion));
    let weighted = ratio(k);
    let stated = stated_bound(pf, longest, congestion, size);
    let mut bound = if weighted.lo() >= measured.lo() { weighted } else { measured };
    if let Some(s) = stated {
        if s.lo() > bound.lo() {
            bound = s;
        }
    }
    Ok(PoincareBound { stated, measured, weighted, bound })
}

fn stated_bound(pf: &PathFamily, longest: Interval, congestion: f64, size: Interval) -> Option<Interval> {
    let (a, b, d) = (Interval::point(pf.alpha), Interval::point(pf.beta), Interval::point(pf.diameter));
    let lengths_ok = (a * d).lo() >= longest.hi();
    let congestion_ok = (b * d * size).lo() >= congestion;
    let den = a * b * d.sqr();
    (lengths_ok && congestion_ok && den.lo() > 0.0).then(|| den.recip().expect("positive"))
}

/// Shortest paths from breadth-first or Dijkstra trees, one tree per source,
/// with `α = 1`, `β = C/(d|X|)` for the measured congestion `C`.
pub fn geodesic_paths(g: &Graph) -> Result<PathFamily, GraphError> {
    let n = g.len();
    let mut paths = vec![Vec::new(); n * n];
    let unit = g.edges().iter().all(|e| e.weight == Interval::ONE);
    for s in 0..n {
        let parent = if unit { bfs_parents(g, s) } else { dijkstra_parents(g, s) };
        for t in 0..n {
            let mut p = vec![t];
            let mut v = t;
            while v != s {
                v = parent[v].ok_or(GraphError::InvalidGraph("graph is disconnected".into()))?;
                p.push(v);
            }
            p.reverse();
            paths[s * n + t] = p;
        }
    }
    let d = g.diameter().ok_or(GraphError::InvalidGraph("graph is disconnected".into()))?.hi();
    let mut family = PathFamily::new(n, paths, 1.0, 0.0, d);
    // Fill in β from the measured congestion.
    let mut count: HashMap<(usize, usize), u64> = HashMap::new();
    for p in &family.paths {
        for w in p.windows(2) {
            *count.entry((w[0], w[1])).or_default() += 1;
        }
    }
    let c = count.values().copied().max().unwrap_or(0) as f64;
    if d > 0.0 {
        let beta = (Interval::point(c) / (Interval::point(d) * Interval::point(n as f64))).hi();
        family.beta = beta * (1.0 + 4.0 * f64::EPSILON);
    }
    Ok(family)
}

fn bfs_parents(g: &Graph, s: usize) -> Vec<Option<usize>> {
    let mut parent = vec![None; g.len()];
    let mut seen = vec![false; g.len()];
    seen[s] = true;
    let mut q = VecDeque::from([s]);
    while let Some(x) = q.pop_front() {
        for &(y, _) in g.neighbours(x) {
            if !seen[y] {
                seen[y] = true;
                parent[y] = Some(x);
                q.push_back(y);
            }
        }
    }
    parent
}

fn dijkstra_parents(g: &Graph, s: usize) -> Vec<Option<usize>> {
    let n = g.len();
    let mut dist = vec![f64::INFINITY; n];
    let mut parent = vec![None; n];
    let mut done = vec![false; n];
    dist[s] = 0.0;
    for _ in 0..n {
        let Some(x) = (0..n).filter(|&v| !done[v] && dist[v].is_finite()).min_by(|&a, &b| dist[a].total_cmp(&dist[b]))
        else {
            break;
        };
        done[x] = true;
        for &(y, e) in g.neighbours(x) {
            let c = dist[x] + 1.0 / g.edges()[e].weight.mid();
            if c < dist[y] {
                dist[y] = c;
                parent[y] = Some(x);
            }
        }
    }
    parent
}

/// The region `{(i, j) : 1 ≤ i ≤ n, 1 ≤ j ≤ f(i)}` with its L-shaped paths.
#[derive(Clone, Debug)]
pub struct Staircase {
    pub graph: Graph,
    pub family: PathFamily,
}

/// For `i ≤ i′` the path from `(i, j)` to `(i′, j′)` runs along row `j` to
/// column `i′` and then along that column; for `i > i′` it is the reverse of
/// the opposite path. Monotonicity of `f` keeps these inside the region. The
/// stated constants are the generic ones, `α d = n + f(n) − 2` and
/// `β d = max(n, f(n))`.
pub fn staircase_paths(n: usize, f: &[usize]) -> Result<Staircase, GraphError> {
    if n == 0 || f.len() != n {
        return Err(GraphError::InvalidGraph(format!("need {n} column heights, got {}", f.len())));
    }
    if let Some(i) = (0..n).find(|&i| f[i] == 0 || (i > 0 && f[i] < f[i - 1])) {
        return Err(GraphError::NotMonotone { index: i + 1 });
    }
    let pts: Vec<Vec<i64>> =
        (1..=n).flat_map(|i| (1..=f[i - 1]).map(move |j| vec![i as i64, j as i64])).collect();
    let graph = Graph::lattice(&pts)?;
    let index: HashMap<(usize, usize), usize> =
        pts.iter().enumerate().map(|(k, p)| ((p[0] as usize, p[1] as usize), k)).collect();
    let at = |i: usize, j: usize| index[&(i, j)];
    let size = pts.len();
    let mut paths = vec![Vec::new(); size * size];
    for (a, p) in pts.iter().enumerate() {
        for (b, q) in pts.iter().enumerate() {
            let (i, j, i2, j2) = (p[0] as usize, p[1] as usize, q[0] as usize, q[1] as usize);
            if i > i2 {
                continue;
            }
            let mut path: Vec<usize> = (i..=i2).map(|c| at(c, j)).collect();
            if j2 > j {
                path.extend((j + 1..=j2).map(|r| at(i2, r)));
            } else {
                path.extend((j2..j).rev().map(|r| at(i2, r)));
            }
            let mut back = path.clone();
            back.reverse();
            paths[a * size + b] = path;
            paths[b * size + a] = back;
        }
    }
    let fm = f[n - 1];
    let d = (n + fm - 2) as f64;
    let (alpha, beta) = if d > 0.0 { (1.0, n.max(fm) as f64 / d) } else { (0.0, 0.0) };
    Ok(Staircase { graph, family: PathFamily::new(size, paths, alpha, beta, d) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let g = Graph::grid(2, 1);
        let pf = PathFamily::new(2, vec![vec![0], vec![0, 1], vec![1, 0], vec![1]], 1.0, 1.0, 1.0);
        let b = poincare_bound(&g, &pf).unwrap();
        assert!(b.stated.unwrap().contains(1.0));
        assert!(b.lower() >= 1.0 && b.lower() <= 2.0);
    }

    #[test]
    fn bad_families_are_rejected() {
        let g = Graph::grid(3, 1);
        let mut paths = vec![Vec::new(); 9];
        for x in 0..3 {
            for y in 0..3 {
                let p: Vec<usize> = if x <= y { (x..=y).collect() } else { (y..=x).rev().collect() };
                paths[x * 3 + y] = p;
            }
        }
        let mut broken = paths.clone();
        broken[2] = vec![0, 2];
        assert!(matches!(
            poincare_bound(&g, &PathFamily::new(3, broken, 1.0, 1.0, 2.0)),
            Err(GraphError::DisconnectedPath { from: 0, to: 2 })
        ));
        paths[5].clear();
        assert!(matches!(
            poincare_bound(&g, &PathFamily::new(3, paths, 1.0, 1.0, 2.0)),
            Err(GraphError::IncompleteFamily { from: 1, to: 2 })
        ));
    }

    #[test]
    fn understated_constants_are_ignored() {
        let s = staircase_paths(3, &[3, 3, 3]).unwrap();
        let mut pf = s.family.clone();
        pf.beta /= 10.0;
        assert!(poincare_bound(&s.graph, &pf).unwrap().stated.is_none());
    }

    #[test]
    fn staircase_rejects_decreasing_heights() {
        assert!(matches!(staircase_paths(3, &[2, 1, 3]), Err(GraphError::NotMonotone { index: 2 })));
    }

    #[test]
    fn geodesics_on_a_grid() {
        let g = Graph::grid(3, 3);
        let pf = geodesic_paths(&g).unwrap();
        let b = poincare_bound(&g, &pf).unwrap();
        assert!(b.stated.is_some());
        // μ₁ = 2 − 2cos(π/3) = 1.
        assert!(b.lower() > 0.0 && b.lower() <= 1.0);
    }
}
