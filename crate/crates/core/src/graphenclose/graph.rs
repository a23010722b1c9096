use std::collections::{BTreeMap, HashMap, VecDeque};

use super::GraphError;
use crate::ival::{Interval, IntervalMatrix};

/// An undirected edge `{u, v}` with weight `b(u, v) = b(v, u)`. It stands for
/// both directed edges `(u, v)` and `(v, u)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: Interval,
}

/// A finite graph with positive symmetric edge weights.
///
/// Vertices are `0..n`; `labels[x]` are integer coordinates used for lattice
/// graphs and for input and output. Each undirected edge is stored once with
/// `u < v`.
#[derive(Clone, Debug)]
pub struct Graph {
    labels: Vec<Vec<i64>>,
    edges: Vec<Edge>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Vertices labelled `[0], [1], …`.
    pub fn new(n: usize, edges: &[(usize, usize, Interval)]) -> Result<Self, GraphError> {
        Self::with_labels((0..n as i64).map(|i| vec![i]).collect(), edges)
    }

    pub fn with_labels(labels: Vec<Vec<i64>>, edges: &[(usize, usize, Interval)]) -> Result<Self, GraphError> {
        let n = labels.len();
        let mut seen = HashMap::new();
        let mut list = Vec::with_capacity(edges.len());
        let mut adj = vec![Vec::new(); n];
        for &(a, b, w) in edges {
            if a >= n || b >= n {
                return Err(GraphError::InvalidGraph(format!("edge ({a}, {b}) leaves the vertex set")));
            }
            if a == b {
                return Err(GraphError::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            if !w.is_positive() || !w.is_bounded() {
                return Err(GraphError::InvalidGraph(format!("weight of edge ({a}, {b}) is not positive")));
            }
            let (u, v) = (a.min(b), a.max(b));
            if seen.insert((u, v), ()).is_some() {
                return Err(GraphError::InvalidGraph(format!("edge ({u}, {v}) listed twice")));
            }
            adj[u].push((v, list.len()));
            adj[v].push((u, list.len()));
            list.push(Edge { u, v, weight: w });
        }
        Ok(Self { labels, edges: list, adj })
    }

    /// The subgraph of `Z^N` on `points`, with unit weights on pairs at
    /// distance one.
    pub fn lattice(points: &[Vec<i64>]) -> Result<Self, GraphError> {
        let index: HashMap<&[i64], usize> = points.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        if index.len() != points.len() {
            return Err(GraphError::InvalidGraph("repeated lattice point".into()));
        }
        let mut edges = Vec::new();
        for (i, p) in points.iter().enumerate() {
            for r in 0..p.len() {
                let mut q = p.clone();
                q[r] += 1;
                if let Some(&j) = index.get(q.as_slice()) {
                    edges.push((i, j, Interval::ONE));
                }
            }
        }
        Self::with_labels(points.to_vec(), &edges)
    }

    /// The `k × m` grid `{(i, j) : 1 ≤ i ≤ k, 1 ≤ j ≤ m}`.
    pub fn grid(k: i64, m: i64) -> Self {
        let pts: Vec<Vec<i64>> = (1..=k).flat_map(|i| (1..=m).map(move |j| vec![i, j])).collect();
        Self::lattice(&pts).expect("grid points are distinct")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Vec<i64>] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &[i64] {
        &self.labels[x]
    }

    pub fn find(&self, label: &[i64]) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Both orientations of every edge.
    pub fn directed_edges(&self) -> impl Iterator<Item = (usize, usize, Interval)> + '_ {
        self.edges.iter().flat_map(|e| [(e.u, e.v, e.weight), (e.v, e.u, e.weight)])
    }

    /// `(neighbour, edge index)` pairs.
    pub fn neighbours(&self, x: usize) -> &[(usize, usize)] {
        &self.adj[x]
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.adj.get(a)?.iter().find(|&&(y, _)| y == b).map(|&(_, e)| e)
    }

    pub fn degree(&self, x: usize) -> usize {
        self.adj[x].len()
    }

    /// The graph on `verts` with the edges among them, and the map from new
    /// to old indices (which is `verts`).
    pub fn induced(&self, verts: &[usize]) -> Self {
        let pos: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges: Vec<(usize, usize, Interval)> = self
            .edges
            .iter()
            .filter_map(|e| Some((*pos.get(&e.u)?, *pos.get(&e.v)?, e.weight)))
            .collect();
        Self::with_labels(verts.iter().map(|&v| self.labels[v].clone()).collect(), &edges)
            .expect("subgraph of a valid graph")
    }

    /// The graph without the listed edges (given by endpoints).
    pub fn without_edges(&self, removed: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut drop = vec![false; self.edges.len()];
        for &(a, b) in removed {
            let e = self.edge_index(a, b).ok_or(GraphError::MissingEdge(a, b))?;
            drop[e] = true;
        }
        let keep: Vec<(usize, usize, Interval)> = self
            .edges
            .iter()
            .zip(&drop)
            .filter(|(_, &d)| !d)
            .map(|(e, _)| (e.u, e.v, e.weight))
            .collect();
        Self::with_labels(self.labels.clone(), &keep)
    }

    /// Connected components as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                for &(y, _) in &self.adj[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        members.push(y);
                        q.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Upper bound on the diameter, with edge length `1/b`. `None` if the
    /// graph is disconnected.
    pub fn diameter(&self) -> Option<Interval> {
        let mut d = Interval::ZERO;
        for s in 0..self.len() {
            let dist = self.distances(s);
            for x in dist {
                d = d.max(x?);
            }
        }
        Some(d)
    }

    /// Distances from `s` by Dijkstra on midpoint lengths, re-evaluated in
    /// interval arithmetic along the chosen tree. For unit weights they are
    /// exact.
    pub fn distances(&self, s: usize) -> Vec<Option<Interval>> {
        let n = self.len();
        let mut best: Vec<Option<Interval>> = vec![None; n];
        let mut queue: BTreeMap<(u64, usize), Interval> = BTreeMap::new();
        best[s] = Some(Interval::ZERO);
        queue.insert((0, s), Interval::ZERO);
        let mut done = vec![false; n];
        while let Some(((_, x), dx)) = queue.pop_first() {
            if done[x] {
                continue;
            }
            done[x] = true;
            for &(y, e) in &self.adj[x] {
                let cand = dx + self.edges[e].weight.recip().expect("positive weight");
                if best[y].is_none_or(|b| cand.mid() < b.mid()) {
                    best[y] = Some(cand);
                    queue.insert((cand.mid().to_bits(), y), cand);
                }
            }
        }
        best
    }
}

/// Matrix of the Dirichlet form `Q(f) = ½ Σ b(x, y) |f(x) − f(y)|²` over
/// directed edges: `Σ b` on the diagonal and `−b` off it.
pub fn laplacian(g: &Graph) -> IntervalMatrix {
    weighted_laplacian(g.len(), g.edges().iter().map(|e| (e.u, e.v, e.weight)))
}

pub(crate) fn weighted_laplacian(n: usize, edges: impl Iterator<Item = (usize, usize, Interval)>) -> IntervalMatrix {
    let mut a = IntervalMatrix::zeros(n, n);
    for (u, v, w) in edges {
        a.set(u, u, a.get(u, u) + w);
        a.set(v, v, a.get(v, v) + w);
        a.set_sym(u, v, a.get(u, v) - w);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_edges_and_degrees() {
        let g = Graph::grid(3, 3);
        assert_eq!(g.len(), 9);
        assert_eq!(g.edges().len(), 12);
        assert_eq!(g.degree(g.find(&[2, 2]).unwrap()), 4);
        assert_eq!(g.diameter().unwrap(), Interval::point(4.0));
    }

    #[test]
    fn rows_sum_to_zero() {
        let g = Graph::grid(4, 3);
        let a = laplacian(&g);
        for i in 0..g.len() {
            let s: Interval = (0..g.len()).map(|j| a.get(i, j)).sum();
            assert!(s.contains(0.0));
        }
    }

    #[test]
    fn invalid_edges_are_rejected() {
        assert!(Graph::new(2, &[(0, 0, Interval::ONE)]).is_err());
        assert!(Graph::new(2, &[(0, 1, Interval::ZERO)]).is_err());
        assert!(Graph::new(2, &[(0, 1, Interval::ONE), (1, 0, Interval::ONE)]).is_err());
    }

    #[test]
    fn removing_edges_splits_components() {
        let g = Graph::grid(2, 1);
        let h = g.without_edges(&[(0, 1)]).unwrap();
        assert_eq!(h.components().len(), 2);
        assert!(g.without_edges(&[(0, 0)]).is_err());
    }
}
