use std::fmt;

use super::crude::crude_enclosure;
use super::gram::assemble_gram;
use super::partition::{first_disjoint_level, tree_partition, Node, Partition};
use super::problem::{BoundaryCondition, Schedule, SlProblem};
use super::rrtl::ritz_vectors;
use super::SlError;
use crate::enclosure::{union_bounds, EnclosureList};
use crate::ival::Interval;

/// Parameters of [`hierarchical_enclose`].
#[derive(Clone, Debug)]
pub struct EncloseConfig {
    /// `E′ = ratio · E`.
    pub e_prime_ratio: f64,
    pub max_level: u32,
    /// Basis degrees tried in turn at each node until `target_width` is met.
    pub degrees: Vec<usize>,
    pub target_width: f64,
    /// Worker threads; `None` reads `ENCLOSE_THREADS` or uses the default pool.
    pub threads: Option<usize>,
    /// Use this subdivision level instead of the smallest admissible one.
    pub level: Option<u32>,
}

impl Default for EncloseConfig {
    fn default() -> Self {
        Self {
            e_prime_ratio: 9.0 / 8.0,
            max_level: 10,
            degrees: vec![16, 20, 24, 28, 32],
            target_width: 1e-6,
            threads: None,
            level: None,
        }
    }
}

/// The result at one node of the tree.
#[derive(Clone, Debug)]
pub struct NodeRecord {
    pub depth: u32,
    /// Position among the nodes of its depth, left to right.
    pub index: usize,
    pub cell: (f64, f64),
    pub bc: BoundaryCondition,
    pub leaf: bool,
    /// Basis degree of the accepted refinement.
    pub degree: Option<usize>,
    pub list: EnclosureList,
}

#[derive(Clone, Debug)]
pub struct SlRun {
    pub list: EnclosureList,
    pub schedule: Schedule,
    pub partition: Partition,
    /// All nodes, leaves first, ordered by decreasing depth.
    pub nodes: Vec<NodeRecord>,
}

/// Why and where the driver stopped.
#[derive(Clone, Debug)]
pub struct HaltReport {
    pub level: u32,
    pub node: usize,
    pub cell: (f64, f64),
    /// Indices of the two enclosures that could not be separated.
    pub pair: (usize, usize),
    pub bounds: (Interval, Interval),
    /// Nodes finished before the halt.
    pub nodes: Vec<NodeRecord>,
}

impl fmt::Display for HaltReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "halted at level {} node {} on [{}, {}]: enclosures {} {} and {} {} overlap",
            self.level,
            self.node,
            self.cell.0,
            self.cell.1,
            self.pair.0,
            self.bounds.0,
            self.pair.1,
            self.bounds.1
        )
    }
}

/// Counts of work done by a run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EffortReport {
    pub operators: usize,
    /// Enclosures kept per level (operators of one depth), root first.
    pub per_level: Vec<usize>,
    pub eigenvalues: usize,
    pub levels: usize,
}

/// Operators touched, eigenvalues kept per level and the number of levels.
pub fn effort_report(nodes: &[NodeRecord]) -> EffortReport {
    let levels = nodes.iter().map(|n| n.depth as usize + 1).max().unwrap_or(0);
    let mut per_level = vec![0; levels];
    for n in nodes {
        per_level[n.depth as usize] += n.list.len();
    }
    EffortReport { operators: nodes.len(), eigenvalues: per_level.iter().sum(), per_level, levels }
}

/// Certified enclosures of every eigenvalue of `p` below `e`.
///
/// Subdivides until the crude bounds separate on every cell, refines the
/// leaves, then rejoins cells pairwise up to the root. A node at depth `d`
/// is refined below the ceiling `E_d`; bounds for eigenvalues above it only
/// serve as shifts for the Temple–Lehmann bounds.
pub fn hierarchical_enclose(p: &SlProblem, e: f64, config: &EncloseConfig) -> Result<SlRun, SlError> {
    p.validate()?;
    if !(e.is_finite() && config.e_prime_ratio > 1.0) {
        return Err(SlError::InvalidProblem("need finite E and E' > E".into()));
    }
    let e_prime = if e > 0.0 { e * config.e_prime_ratio } else { e + (config.e_prime_ratio - 1.0) * e.abs().max(1.0) };
    let ceiling = |n: u32, depth: u32| Schedule::new(e, e_prime, n).level(depth + 1);
    let (n, tree) = match config.level {
        Some(n) => (n, super::partition::build_tree(p, n)),
        None => first_disjoint_level(p, config.max_level, ceiling)?,
    };
    let schedule = Schedule::new(e, e_prime, n);
    let threads = config
        .threads
        .or_else(|| std::env::var("ENCLOSE_THREADS").ok().and_then(|s| s.parse().ok()))
        .filter(|&t| t > 0);
    let ctx = Ctx { p, schedule, config };
    let run = || ctx.process(&tree, 0);
    let result = match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| SlError::InvalidProblem(e.to_string()))?
            .install(run),
        None => run(),
    };
    let (list, mut nodes) = result.map_err(|h| SlError::Halted(Box::new(h)))?;
    nodes.sort_by(|a, b| b.depth.cmp(&a.depth).then(a.index.cmp(&b.index)));
    Ok(SlRun { list, schedule, partition: tree_partition(&tree), nodes })
}

struct Ctx<'a> {
    p: &'a SlProblem,
    schedule: Schedule,
    config: &'a EncloseConfig,
}

/// Rough bracket `[lo, hi]` for an eigenvalue; `lo` also serves beyond the
/// candidates as a shift.
type Rough = (f64, f64);

impl Ctx<'_> {
    fn process(&self, node: &Node, index: usize) -> Result<(EnclosureList, Vec<NodeRecord>), HaltReport> {
        let ceiling = self.schedule.level(node.depth);
        let (rough, mut records) = if node.is_leaf() {
            let sub = self.p.restricted(node.lo, node.hi, node.bc);
            let crude = crude_enclosure(&sub, self.schedule.level(node.depth + 1)).map_err(|_| {
                self.halt(node, index, (0, 1), (Interval::ZERO, Interval::ZERO), Vec::new())
            })?;
            let mut rough: Vec<Rough> = crude.entries.iter().map(|e| (e.lo(), e.hi())).collect();
            rough.extend(std::iter::repeat((crude.next_lower, f64::INFINITY)).take(4));
            (rough, Vec::new())
        } else {
            let (l, r) = (&node.children[0], &node.children[1]);
            let (lr, rr) = rayon::join(|| self.process(l, 2 * index), || self.process(r, 2 * index + 1));
            let (ll, mut lrec) = lr?;
            let (rl, rrec) = rr?;
            lrec.extend(rrec);
            let total = ll.len() + rl.len() + 4;
            let sigma = union_bounds(&[&ll, &rl], total + 1);
            let rough = (0..total).map(|i| (sigma[i].0, sigma[i + 1].1)).collect();
            (rough, lrec)
        };
        let (list, degree) = self.refine(node, &rough, ceiling);
        let record = |list: EnclosureList| NodeRecord {
            depth: node.depth,
            index,
            cell: (node.lo, node.hi),
            bc: node.bc,
            leaf: node.is_leaf(),
            degree,
            list,
        };
        let bad = (0..list.len()).find(|&i| {
            let next_lo = list.entries.get(i + 1).map_or(list.next_lower, |e| e.lo());
            !(list.entries[i].hi() < next_lo)
        });
        if let Some(i) = bad {
            let next = list.entries.get(i + 1).copied().unwrap_or(Interval::at_least(list.next_lower));
            records.push(record(list.clone()));
            return Err(self.halt(node, index, (i, i + 1), (list.entries[i], next), records));
        }
        records.push(record(list.clone()));
        Ok((list, records))
    }

    fn halt(&self, node: &Node, index: usize, pair: (usize, usize), bounds: (Interval, Interval), nodes: Vec<NodeRecord>) -> HaltReport {
        HaltReport { level: node.depth, node: index, cell: (node.lo, node.hi), pair, bounds, nodes }
    }

    /// Accurate bounds below `ceiling` from the rough brackets.
    fn refine(&self, node: &Node, rough: &[Rough], ceiling: f64) -> (EnclosureList, Option<usize>) {
        let m = rough.iter().take_while(|r| r.0 < ceiling).count().min(rough.len() - 1);
        let fallback: Vec<(f64, f64)> = rough[..m].to_vec();
        let mut best: Option<(Vec<(f64, f64)>, usize, f64)> = None;
        if m > 0 {
            for &deg in &self.config.degrees {
                let Some(b) = self.rrtl(node, rough, m, deg) else { continue };
                let w = b.iter().map(|(l, u)| u - l).fold(0.0, f64::max);
                if best.as_ref().is_none_or(|x| w < x.2) {
                    best = Some((b, deg, w));
                }
                if w <= self.config.target_width {
                    break;
                }
            }
        }
        let (bounds, degree) = match best {
            Some((b, d, _)) => (b, Some(d)),
            None => (fallback, None),
        };
        let keep = bounds.iter().take_while(|b| b.0 < ceiling).count();
        let next = bounds.get(keep).map_or(rough[m].0, |b| b.0).max(ceiling);
        let entries = bounds[..keep].iter().map(|&(l, u)| Interval::new(l, u.max(l))).collect();
        (EnclosureList::new(entries, ceiling, next), degree)
    }

    /// Rayleigh–Ritz upper and Temple–Lehmann lower bounds for the first `m`
    /// eigenvalues with basis degree `deg`.
    fn rrtl(&self, node: &Node, rough: &[Rough], m: usize, deg: usize) -> Option<Vec<(f64, f64)>> {
        let g = assemble_gram(self.p, Interval::new(node.lo, node.hi), deg).ok()?;
        let k = (m + 2).min(g.dim());
        if k < m {
            return None;
        }
        let ritz = ritz_vectors(&g, k).ok()?;
        let rr = ritz.rr().ok()?;
        let mut upper: Vec<f64> = (0..m).map(|i| rr[i].hi().min(rough[i].1)).collect();
        let mut lower: Vec<f64> = (0..m).map(|i| rough[i].0).collect();
        let lower_at = |lower: &[f64], j: usize| if j < m { lower[j].max(rough[j].0) } else { rough[j.min(rough.len() - 1)].0 };
        for i in (0..m).rev() {
            let mut best = lower[i];
            let rho = lower_at(&lower, i + 1);
            if let Ok(t) = ritz.temple(i, rho) {
                best = best.max(t.lo());
            }
            for kb in 2..=3 {
                if upper[i] - best <= self.config.target_width || i + kb > ritz.len() {
                    break;
                }
                let rho_k = lower_at(&lower, i + kb);
                if let Ok(b) = ritz.lehmann(i, kb, rho_k) {
                    if let Some(v) = b[0] {
                        best = best.max(v);
                    }
                }
            }
            lower[i] = best;
        }
        for i in 1..m {
            lower[i] = lower[i].max(lower[i - 1]);
        }
        for i in (0..m.saturating_sub(1)).rev() {
            upper[i] = upper[i].min(upper[i + 1]);
        }
        if lower.iter().zip(&upper).any(|(l, u)| l > u) {
            return None;
        }
        Some(lower.into_iter().zip(upper).collect())
    }
}
