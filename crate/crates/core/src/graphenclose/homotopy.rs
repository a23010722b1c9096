use super::certify::{certify, first_unresolved, Prior};
use super::graph::weighted_laplacian;
use super::{Graph, GraphError, GraphHalt, GraphOptions};
use crate::enclosure::{union_bounds, EnclosureList};
use crate::ival::{Interval, IntervalMatrix};

/// Parameter values `0 = s₀ < s₁ < … < s_p = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomotopySchedule {
    s_values: Vec<f64>,
}

impl HomotopySchedule {
    pub fn new(s_values: Vec<f64>) -> Result<Self, GraphError> {
        let ok = s_values.len() >= 2
            && s_values[0] == 0.0
            && *s_values.last().expect("nonempty") == 1.0
            && s_values.windows(2).all(|w| w[0] < w[1]);
        if ok {
            Ok(Self { s_values })
        } else {
            Err(GraphError::InvalidSchedule(s_values))
        }
    }

    /// `0, 1/p, …, 1`.
    pub fn uniform(p: usize) -> Self {
        Self::new((0..=p).map(|i| i as f64 / p as f64).collect()).expect("p >= 1")
    }

    pub fn values(&self) -> &[f64] {
        &self.s_values
    }
}

impl Default for HomotopySchedule {
    fn default() -> Self {
        Self::new(vec![0.0, 0.25, 0.5, 1.0]).expect("valid")
    }
}

/// An edge joining vertex `y` of the first graph to vertex `z` of the
/// second.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bridge {
    pub y: usize,
    pub z: usize,
    pub weight: Interval,
}

#[derive(Clone, Debug)]
pub struct Stage {
    pub s: f64,
    pub list: EnclosureList,
}

/// Certified lists at every parameter value used, ending at `s = 1`.
#[derive(Clone, Debug)]
pub struct HomotopyRun {
    pub stages: Vec<Stage>,
}

impl HomotopyRun {
    pub fn last(&self) -> &EnclosureList {
        &self.stages.last().expect("at least one stage").list
    }
}

/// Enclosures for the Laplacian of `Y ∪ Z` joined by `bridges`, from lists
/// for `Y` and `Z`.
///
/// `A_s = L_F + s L_G`, with `F` the edges inside the parts and `G` the
/// bridges, has eigenvalues increasing in `s`. At `s = 0` the list is the
/// union of the two input lists. Each step takes its lower bounds from the
/// previous stage and certifies with Rayleigh–Ritz and Temple–Lehmann. A
/// step that leaves an entry wider than `opts.tolerance` is bisected, up to
/// `opts.max_steps` steps in total. Entries reaching `opts.ceiling` are not
/// required to be resolved.
pub fn homotopy_enclose(
    y: &Graph,
    ly: &EnclosureList,
    z: &Graph,
    lz: &EnclosureList,
    bridges: &[Bridge],
    schedule: &HomotopySchedule,
    opts: &GraphOptions,
) -> Result<HomotopyRun, GraphError> {
    let ny = y.len();
    let n = ny + z.len();
    for b in bridges {
        if b.y >= ny || b.z >= z.len() || !b.weight.is_positive() {
            return Err(GraphError::InvalidGraph(format!("bridge ({}, {}) is invalid", b.y, b.z)));
        }
    }
    let inner = weighted_laplacian(
        n,
        y.edges()
            .iter()
            .map(|e| (e.u, e.v, e.weight))
            .chain(z.edges().iter().map(|e| (e.u + ny, e.v + ny, e.weight))),
    );
    let cross = weighted_laplacian(n, bridges.iter().map(|b| (b.y, b.z + ny, b.weight)));
    let matrix = |s: f64| inner.add(&cross.scale(Interval::point(s)));
    let count = opts.count.unwrap_or(n).min(n);

    let total = (ly.len() + lz.len()).min(n);
    let bounds = union_bounds(&[ly, lz], total + 1);
    let start = EnclosureList::new(
        bounds[..total].iter().map(|&(lo, hi)| Interval::new(lo, hi.max(lo))).collect(),
        bounds[total].0,
        bounds[total].0,
    );
    let mut stages = vec![Stage { s: 0.0, list: start }];
    let mut pending: Vec<f64> = schedule.values()[1..].iter().rev().copied().collect();
    let mut steps = 0;
    while let Some(&target) = pending.last() {
        let prev = stages.last().expect("nonempty");
        let list = step(&matrix(target), &prev.list, opts.tolerance);
        let list = list?;
        steps += 1;
        let unresolved = first_unresolved(&list.entries, count, opts.ceiling, opts.tolerance);
        match unresolved {
            None => {
                pending.pop();
                stages.push(Stage { s: target, list });
            }
            Some(index) if steps >= opts.max_steps => {
                let bounds = list.entries[index];
                let step_index = stages.len();
                let mut partial: Vec<EnclosureList> = stages.into_iter().map(|s| s.list).collect();
                partial.push(list);
                return Err(GraphError::Halted(Box::new(GraphHalt { step: step_index, index, bounds, partial })));
            }
            Some(_) => pending.push(0.5 * (prev.s + target)),
        }
    }
    Ok(HomotopyRun { stages })
}

fn step(a: &IntervalMatrix, prev: &EnclosureList, tol: f64) -> Result<EnclosureList, GraphError> {
    let k = prev.len();
    let lower = (0..=k).map(|j| prev.lower(j)).collect();
    let upper = vec![f64::INFINITY; k];
    let entries = certify(a, &Prior { lower, upper }, tol)?;
    let next = entries.last().map_or(prev.next_lower, |e| e.lo().max(prev.next_lower));
    Ok(EnclosureList::new(entries, prev.ceiling.min(next), next))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphenclose::certify::direct_list;
    use crate::graphenclose::laplacian;

    #[test]
    fn schedule_validation() {
        assert!(HomotopySchedule::new(vec![0.0, 0.5, 1.0]).is_ok());
        assert!(HomotopySchedule::new(vec![0.0, 0.5, 0.5, 1.0]).is_err());
        assert!(HomotopySchedule::new(vec![0.1, 1.0]).is_err());
        assert_eq!(HomotopySchedule::uniform(2).values(), &[0.0, 0.5, 1.0]);
    }

    #[test]
    fn joining_two_paths() {
        let p = Graph::grid(3, 1);
        let l = direct_list(&laplacian(&p)).unwrap();
        let bridge = Bridge { y: 2, z: 0, weight: Interval::ONE };
        let run = homotopy_enclose(&p, &l, &p, &l, &[bridge], &HomotopySchedule::default(), &GraphOptions::default())
            .unwrap();
        let joined = direct_list(&laplacian(&Graph::grid(6, 1))).unwrap();
        for (e, x) in run.last().entries.iter().zip(&joined.entries) {
            assert!(e.overlaps(*x), "{e:?} {x:?}");
        }
        for w in run.stages.windows(2) {
            for (a, b) in w[0].list.entries.iter().zip(&w[1].list.entries) {
                assert!(a.lo() <= b.lo());
            }
        }
    }
}
