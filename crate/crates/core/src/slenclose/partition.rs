use super::crude::crude_enclosure;
use super::problem::{Bc, BoundaryCondition, SlProblem};
use super::SlError;
use crate::ival::Interval;

/// Ordered cell endpoints; `level` is the dyadic depth `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct Partition {
    pub points: Vec<f64>,
    pub level: u32,
}

impl Partition {
    pub fn cells(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.points.windows(2).map(|w| (w[0], w[1]))
    }
}

/// A node of the decoupling tree: the operator on `[lo, hi]` with Neumann
/// conditions at every cut.
#[derive(Clone, Debug)]
pub struct Node {
    pub lo: f64,
    pub hi: f64,
    pub bc: BoundaryCondition,
    pub depth: u32,
    pub children: Vec<Node>,
}

impl Node {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    fn split_at(&mut self, cut: f64) {
        let left = BoundaryCondition::new(self.bc.left, Bc::Neumann);
        let right = BoundaryCondition::new(Bc::Neumann, self.bc.right);
        let d = self.depth + 1;
        self.children = vec![
            Node { lo: self.lo, hi: cut, bc: left, depth: d, children: Vec::new() },
            Node { lo: cut, hi: self.hi, bc: right, depth: d, children: Vec::new() },
        ];
    }

    pub fn leaves(&self) -> Vec<&Node> {
        if self.is_leaf() {
            return vec![self];
        }
        self.children.iter().flat_map(Node::leaves).collect()
    }

    /// Number of nodes in the subtree.
    pub fn count(&self) -> usize {
        1 + self.children.iter().map(Node::count).sum::<usize>()
    }

    pub fn height(&self) -> u32 {
        self.children.iter().map(|c| c.height() + 1).max().unwrap_or(0)
    }
}

/// The uniform tree of depth `n`, with leaves split further at every jump
/// point of `a` that falls inside them.
pub fn build_tree(p: &SlProblem, n: u32) -> Node {
    let (lo, hi) = (p.domain.lo(), p.domain.hi());
    let mut root = Node { lo, hi, bc: p.bc, depth: 0, children: Vec::new() };
    let jumps = p.jump_points();
    grow(&mut root, n, &jumps);
    root
}

fn grow(node: &mut Node, n: u32, jumps: &[f64]) {
    if node.depth < n {
        node.split_at(0.5 * node.lo + 0.5 * node.hi);
    } else if let Some(&j) = jumps.iter().find(|&&j| node.lo < j && j < node.hi) {
        node.split_at(j);
    } else {
        return;
    }
    for c in &mut node.children {
        grow(c, n, jumps);
    }
}

fn points_of(root: &Node) -> Vec<f64> {
    let leaves = root.leaves();
    let mut pts: Vec<f64> = leaves.iter().map(|l| l.lo).collect();
    pts.push(root.hi);
    pts
}

/// Smallest depth at which every leaf has disjoint crude bounds below the
/// ceiling `ceiling(n, leaf_depth)`.
pub fn first_disjoint_level(
    p: &SlProblem,
    max_level: u32,
    ceiling: impl Fn(u32, u32) -> f64,
) -> Result<(u32, Node), SlError> {
    for n in 0..=max_level {
        let tree = build_tree(p, n);
        let ok = tree.leaves().iter().all(|leaf| {
            let sub = p.restricted(leaf.lo, leaf.hi, leaf.bc);
            crude_enclosure(&sub, ceiling(n, leaf.depth)).is_ok()
        });
        if ok {
            return Ok((n, tree));
        }
    }
    Err(SlError::DepthExceeded { max_level })
}

/// Smallest uniform subdivision (jump points added) on which the crude
/// bounds below `e_prime` are disjoint on every cell.
pub fn uniform_partition(p: &SlProblem, e_prime: f64, max_level: u32) -> Result<Partition, SlError> {
    let (n, tree) = first_disjoint_level(p, max_level, |_, _| e_prime)?;
    Ok(Partition { points: points_of(&tree), level: n })
}

/// The partition formed by the leaves of `tree`.
pub fn tree_partition(tree: &Node) -> Partition {
    Partition { points: points_of(tree), level: tree.height() }
}

/// A cut point in the middle half of `interval` at distance at least
/// `(β − α)/(4 max(P, 1))` from each of the `P` listed points.
///
/// Candidates lie on a grid of step `(β − α)/(8P)` across the middle half;
/// the leftmost admissible one is returned. If rounding leaves no candidate
/// admissible, the one farthest from all points is used.
pub fn adaptive_bisection_point(interval: Interval, critical_points: &[f64]) -> f64 {
    let (a, b) = (interval.lo(), interval.hi());
    let len = b - a;
    let pts: Vec<f64> = critical_points.iter().copied().filter(|x| x.is_finite()).collect();
    if pts.is_empty() {
        return 0.5 * a + 0.5 * b;
    }
    let p = pts.len() as f64;
    let need = len / (4.0 * p);
    let dist = |g: f64| pts.iter().fold(f64::INFINITY, |m, &x| m.min((g - x).abs()));
    let steps = 4 * pts.len();
    let grid = (0..=steps).map(|k| a + len / 4.0 + k as f64 * len / (8.0 * p));
    let mut best = (f64::NEG_INFINITY, 0.5 * a + 0.5 * b);
    for g in grid {
        let d = dist(g);
        if d >= need {
            return g;
        }
        if d > best.0 {
            best = (d, g);
        }
    }
    best.1
}
