use super::certify::direct_list;
use super::homotopy::{homotopy_enclose, Bridge, HomotopySchedule};
use super::poincare::{geodesic_paths, poincare_bound};
use super::{laplacian, Graph, GraphError, GraphOptions};
use crate::enclosure::EnclosureList;
use crate::ival::Interval;

/// A hierarchical partition of the vertex set: leaves are parts, inner nodes
/// join two subtrees.
#[derive(Clone, Debug)]
pub enum PartTree {
    Leaf(Vec<usize>),
    Join(Box<PartTree>, Box<PartTree>),
}

impl PartTree {
    pub fn join(a: PartTree, b: PartTree) -> Self {
        PartTree::Join(Box::new(a), Box::new(b))
    }

    /// Vertices in leaf order.
    pub fn vertices(&self) -> Vec<usize> {
        match self {
            PartTree::Leaf(v) => v.clone(),
            PartTree::Join(a, b) => {
                let mut v = a.vertices();
                v.extend(b.vertices());
                v
            }
        }
    }

    pub fn leaves(&self) -> Vec<&[usize]> {
        match self {
            PartTree::Leaf(v) => vec![v.as_slice()],
            PartTree::Join(a, b) => {
                let mut l = a.leaves();
                l.extend(b.leaves());
                l
            }
        }
    }
}

/// Parts up to this size fall back to a direct eigensolve when the path
/// bound does not establish class membership.
const DIRECT_LIMIT: usize = 400;

/// Result of a partition run.
#[derive(Clone, Debug)]
pub struct PartitionRun {
    /// `a b² / d(X)²`.
    pub ceiling: Interval,
    /// Certified lower bounds on the first nonzero eigenvalue of each leaf.
    pub leaf_gaps: Vec<f64>,
    /// Enclosures below the ceiling, in the vertex order of `PartTree::vertices`.
    pub list: EnclosureList,
}

/// Enclosures of every eigenvalue of `g` below `E = a b² d(X)⁻²`.
///
/// Each part must have `μ₁ ≥ a d(part)⁻²` and `d(part) ≤ d(X)/b`; then its
/// spectrum below `E` is a single zero. The parts are joined pairwise up the
/// tree by edge-weight homotopies, with sibling subtrees processed in
/// parallel.
pub fn partition_enclose(
    g: &Graph,
    parts: &PartTree,
    a: f64,
    b: f64,
    opts: &GraphOptions,
) -> Result<PartitionRun, GraphError> {
    let mut all = parts.vertices();
    all.sort_unstable();
    if all.len() != g.len() || all.iter().enumerate().any(|(i, &v)| i != v) {
        return Err(GraphError::InvalidGraph("parts do not partition the vertex set".into()));
    }
    let d = g.diameter().ok_or(GraphError::InvalidGraph("graph is disconnected".into()))?;
    if !(a > 0.0 && b > 0.0) || d.lo() <= 0.0 {
        return Err(GraphError::InvalidGraph("need a > 0, b > 0 and at least one edge".into()));
    }
    let (ai, bi) = (Interval::point(a), Interval::point(b));
    let ceiling = ai * bi.sqr() / d.sqr();
    let max_part = d / bi;
    let mut leaf_gaps = Vec::new();
    for (i, leaf) in parts.leaves().into_iter().enumerate() {
        let sub = g.induced(leaf);
        let dp = sub.diameter().ok_or(GraphError::ClassViolation {
            part: i,
            detail: "part is disconnected".into(),
        })?;
        if dp.hi() > max_part.lo() {
            return Err(GraphError::ClassViolation {
                part: i,
                detail: format!("diameter {} exceeds d(X)/b = {}", dp.hi(), max_part.lo()),
            });
        }
        let required = if dp.hi() > 0.0 { (ai / dp.sqr()).hi() } else { 0.0 };
        let gap = leaf_gap(&sub)?;
        if gap < required {
            return Err(GraphError::ClassViolation {
                part: i,
                detail: format!("first nonzero eigenvalue bound {gap} below a d⁻² = {required}"),
            });
        }
        leaf_gaps.push(gap);
    }
    let opts = GraphOptions { ceiling: ceiling.lo(), ..opts.clone() };
    let (_, list) = solve(g, parts, &opts, ceiling.lo(), &leaf_gaps, &mut 0)?;
    Ok(PartitionRun { ceiling, leaf_gaps, list: list.truncated(ceiling.lo()) })
}

/// Lower bound on `μ₁` of a connected part: the path bound, or a direct
/// eigensolve for small parts when that is better.
fn leaf_gap(sub: &Graph) -> Result<f64, GraphError> {
    if sub.len() == 1 {
        return Ok(f64::INFINITY);
    }
    let path = poincare_bound(sub, &geodesic_paths(sub)?)?.lower();
    if sub.len() > DIRECT_LIMIT {
        return Ok(path);
    }
    let direct = direct_list(&laplacian(sub))?;
    Ok(path.max(direct.lower(1)))
}

fn solve(
    g: &Graph,
    node: &PartTree,
    opts: &GraphOptions,
    ceiling: f64,
    gaps: &[f64],
    leaf: &mut usize,
) -> Result<(Vec<usize>, EnclosureList), GraphError> {
    match node {
        PartTree::Leaf(v) => {
            let gap = gaps[*leaf];
            *leaf += 1;
            Ok((v.clone(), EnclosureList::new(vec![Interval::ZERO], ceiling, gap.max(ceiling))))
        }
        PartTree::Join(l, r) => {
            let nl = l.leaves().len();
            let (mut li, mut ri) = (*leaf, *leaf + nl);
            *leaf += nl + r.leaves().len();
            let (left, right) = rayon::join(
                || solve(g, l, opts, ceiling, gaps, &mut li),
                || solve(g, r, opts, ceiling, gaps, &mut ri),
            );
            let ((vy, ly), (vz, lz)) = (left?, right?);
            let (y, z) = (g.induced(&vy), g.induced(&vz));
            let bridges = bridges_between(g, &vy, &vz);
            let run = homotopy_enclose(&y, &ly, &z, &lz, &bridges, &HomotopySchedule::default(), opts)?;
            let mut verts = vy;
            verts.extend(vz);
            Ok((verts, run.last().truncated(ceiling)))
        }
    }
}

fn bridges_between(g: &Graph, vy: &[usize], vz: &[usize]) -> Vec<Bridge> {
    let pos = |set: &[usize], v: usize| set.iter().position(|&x| x == v);
    g.edges()
        .iter()
        .filter_map(|e| {
            if let (Some(y), Some(z)) = (pos(vy, e.u), pos(vz, e.v)) {
                Some(Bridge { y, z, weight: e.weight })
            } else if let (Some(y), Some(z)) = (pos(vy, e.v), pos(vz, e.u)) {
                Some(Bridge { y, z, weight: e.weight })
            } else {
                None
            }
        })
        .collect()
}
