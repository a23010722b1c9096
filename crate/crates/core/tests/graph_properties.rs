//! Graph Laplacian invariants on random graphs and staircase regions.

use enclose::enclosure::EnclosureList;
use enclose::graphenclose::{
    edge_chain_enclose, geodesic_paths, homotopy_enclose, laplacian, partition_enclose, poincare_bound,
    staircase_paths, Bridge, Graph, GraphError, GraphOptions, HomotopySchedule, PartTree,
};
use enclose::ival::{verified_sym_eig, Interval};
use nalgebra::{DMatrix, SymmetricEigen};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Floating point spectrum of the midpoint Laplacian, ascending.
fn float_spectrum(g: &Graph) -> Vec<f64> {
    let m: DMatrix<f64> = laplacian(g).mid();
    let mut v: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

const SLACK: f64 = 1e-8;

fn holds(x: &Interval, v: f64) -> bool {
    x.lo() - SLACK <= v && v <= x.hi() + SLACK
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(density) {
                let w = [1.0, 0.5, 2.0, rng.random_range(0.25..3.0)][rng.random_range(0..4)];
                edges.push((u, v, Interval::point(w)));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

fn components(n: usize, edges: &[(usize, usize)]) -> usize {
    fn root(p: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    let mut parent: Vec<usize> = (0..n).collect();
    for &(u, v) in edges {
        let (a, b) = (root(&mut parent, u), root(&mut parent, v));
        parent[a] = b;
    }
    (0..n).filter(|&x| root(&mut parent, x) == x).count()
}

fn direct(g: &Graph) -> EnclosureList {
    let e = verified_sym_eig(&laplacian(g)).unwrap();
    EnclosureList::new(e.values, f64::INFINITY, f64::INFINITY)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn edge_removal_interlaces(seed in any::<u64>(), n in 2usize..=10, cuts in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, 0.5);
        prop_assume!(!g.edges().is_empty());
        let mut picked: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
        picked.shuffle(&mut rng);
        picked.truncate(cuts);
        let lists = edge_chain_enclose(&g, &picked, &GraphOptions::default()).unwrap();
        prop_assert_eq!(lists.len(), picked.len() + 1);
        for (i, w) in lists.windows(2).enumerate() {
            let (before, after) = (&w[0], &w[1]);
            for j in 0..after.len() {
                prop_assert!(after.lower(j) <= before.upper(j), "step {} index {}", i, j);
                if j + 1 < after.len() {
                    prop_assert!(before.lower(j) <= after.upper(j + 1), "step {} index {}", i, j);
                }
            }
        }
        let mut current = g.clone();
        for (i, list) in lists.iter().enumerate() {
            if i > 0 {
                current = current.without_edges(&picked[i - 1..i]).unwrap();
            }
            for (x, v) in list.entries.iter().zip(float_spectrum(&current)) {
                prop_assert!(holds(x, v), "list {} entry {:?} misses {}", i, x, v);
            }
        }
    }

    #[test]
    fn zero_multiplicity_counts_components(seed in any::<u64>(), n in 2usize..=10, cuts in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, 0.35);
        prop_assume!(!g.edges().is_empty());
        let mut picked: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
        picked.shuffle(&mut rng);
        picked.truncate(cuts);
        let lists = edge_chain_enclose(&g, &picked, &GraphOptions::default()).unwrap();
        let last = lists.last().unwrap();
        let kept: Vec<(usize, usize)> =
            g.edges().iter().map(|e| (e.u, e.v)).filter(|e| !picked.contains(e)).collect();
        let zeros = last.entries.iter().filter(|x| x.contains_zero()).count();
        prop_assert_eq!(zeros, components(n, &kept));
    }

    #[test]
    fn homotopy_lower_bounds_grow(seed in any::<u64>(), ny in 2usize..=6, nz in 2usize..=6, p in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let y = random_graph(&mut rng, ny, 0.6);
        let z = random_graph(&mut rng, nz, 0.6);
        let bridges: Vec<Bridge> = (0..rng.random_range(1..=3))
            .map(|_| Bridge { y: rng.random_range(0..ny), z: rng.random_range(0..nz), weight: Interval::ONE })
            .collect();
        let mut bridges = bridges;
        bridges.sort_by_key(|b| (b.y, b.z));
        bridges.dedup_by_key(|b| (b.y, b.z));
        let stages: Vec<(f64, EnclosureList)> = match homotopy_enclose(
            &y, &direct(&y), &z, &direct(&z), &bridges, &HomotopySchedule::uniform(p), &GraphOptions::default(),
        ) {
            Ok(run) => run.stages.into_iter().map(|s| (s.s, s.list)).collect(),
            Err(GraphError::Halted(h)) => h.partial.into_iter().map(|l| (f64::NAN, l)).collect(),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        for w in stages.windows(2) {
            prop_assert!(!(w[1].0 <= w[0].0), "parameters not increasing");
            for j in 0..w[0].1.len().min(w[1].1.len()) {
                prop_assert!(w[1].1.lower(j) >= w[0].1.lower(j), "index {} decreased", j);
            }
        }
        // Soundness at every certified parameter value.
        let mut edges: Vec<(usize, usize, Interval)> = y.edges().iter().map(|e| (e.u, e.v, e.weight)).collect();
        edges.extend(z.edges().iter().map(|e| (e.u + ny, e.v + ny, e.weight)));
        for (s, list) in stages.iter().filter(|(s, _)| s.is_finite() && *s > 0.0) {
            let mut all = edges.clone();
            all.extend(bridges.iter().map(|b| (b.y, b.z + ny, Interval::point(*s))));
            let joined = Graph::new(ny + nz, &all).unwrap();
            for (x, v) in list.entries.iter().zip(float_spectrum(&joined)) {
                prop_assert!(holds(x, v), "s = {}: {:?} misses {}", s, x, v);
            }
        }
    }

    #[test]
    fn lattice_degrees_are_bounded(seed in any::<u64>(), dim in 1usize..=4, size in 1usize..=40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pts: Vec<Vec<i64>> = (0..size).map(|_| (0..dim).map(|_| rng.random_range(0..4)).collect()).collect();
        pts.sort();
        pts.dedup();
        let g = Graph::lattice(&pts).unwrap();
        let a = laplacian(&g);
        for i in 0..g.len() {
            prop_assert!(a.get(i, i).hi() <= 2.0 * dim as f64);
            let row: f64 = (0..g.len()).map(|j| a.get(i, j).mid()).sum();
            prop_assert!(row.abs() < 1e-12);
        }
    }
}

fn random_heights(rng: &mut ChaCha8Rng, n: usize, max: usize) -> Vec<usize> {
    let mut f: Vec<usize> = (0..n).map(|_| rng.random_range(1..=max)).collect();
    f.sort_unstable();
    f
}

/// `μ₁` from a verified eigensolve; the Poincaré bound must not exceed it.
fn first_nonzero(g: &Graph) -> Interval {
    verified_sym_eig(&laplacian(g)).unwrap().values[1]
}

#[test]
fn poincare_bounds_on_random_staircases_are_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(20240611);
    for case in 0..1000 {
        let n = rng.random_range(1..=12);
        let f = random_heights(&mut rng, n, 12);
        if n * f[n - 1] < 2 || f.iter().sum::<usize>() < 2 {
            continue;
        }
        let st = staircase_paths(n, &f).unwrap();
        let b = poincare_bound(&st.graph, &st.family).unwrap();
        let mu1 = first_nonzero(&st.graph);
        assert!(b.bound.lo() <= mu1.hi(), "case {case}: f = {f:?}, bound {:?} above {mu1:?}", b.bound);
        if let Some(s) = b.stated {
            assert!(s.lo() <= mu1.hi(), "case {case}: stated {s:?} above {mu1:?}");
        }
    }
}

#[test]
fn poincare_bounds_on_grids_are_sound() {
    for (k, m) in [(2, 2), (3, 5), (6, 6), (4, 9), (10, 3)] {
        let g = Graph::grid(k, m);
        let b = poincare_bound(&g, &geodesic_paths(&g).unwrap()).unwrap();
        let mu1 = first_nonzero(&g);
        assert!(b.bound.lo() <= mu1.hi(), "{k}x{m}: {:?} above {mu1:?}", b.bound);
    }
}

#[test]
fn staircase_heights_must_not_decrease() {
    assert!(matches!(staircase_paths(3, &[2, 1, 3]), Err(GraphError::NotMonotone { index: 2 })));
}

#[test]
fn four_part_grid_matches_direct_solve() {
    let g = Graph::grid(12, 12);
    let quadrant = |di: i64, dj: i64| {
        let mut v: Vec<usize> = (1..=6)
            .flat_map(|i| (1..=6).map(move |j| (i + 6 * di, j + 6 * dj)))
            .map(|(i, j)| g.find(&[i, j]).unwrap())
            .collect();
        v.sort_unstable();
        PartTree::Leaf(v)
    };
    let tree =
        PartTree::join(PartTree::join(quadrant(0, 0), quadrant(0, 1)), PartTree::join(quadrant(1, 0), quadrant(1, 1)));
    let run = partition_enclose(&g, &tree, 20.0, 2.0, &GraphOptions::default()).unwrap();
    let e = run.ceiling.lo();
    let exact: Vec<f64> = float_spectrum(&g).into_iter().filter(|&v| v < e).collect();
    assert_eq!(exact.len(), 4);
    assert!(run.list.len() >= exact.len());
    for (x, v) in run.list.entries.iter().zip(&exact) {
        assert!(holds(x, *v) && x.width() <= 1e-5, "{x:?} misses {v}");
    }
}
