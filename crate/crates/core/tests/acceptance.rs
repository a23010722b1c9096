//! Acceptance criteria, one PASS/FAIL line each.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::intervals;
use common::matrices::{check_enclosures, random_form, random_symmetric, restricted_spectrum};
use enclose::cli::{preset, RunConfig};
use enclose::enclosure::EnclosureList;
use enclose::forms::{chain_eigen_lists, interlaces, system_fixture_lists, FormChain, SystemFixture};
use enclose::graphenclose::{
    edge_chain_enclose, homotopy_enclose, laplacian, poincare_bound, staircase_paths, Bridge, Graph, GraphOptions,
    HomotopyRun, HomotopySchedule,
};
use enclose::ival::{pi_enclosure, verified_sym_eig, Interval, IntervalMatrix};
use enclose::slenclose::{
    assemble_gram, crude_enclosure, effort_report, hierarchical_enclose, merge_interlace, rr_upper, temple_lower, Bc,
    BoundaryCondition, CoefficientFn, EncloseConfig, Scale, SlProblem, SlRun,
};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Outcome of one criterion: every check with a short description.
struct Criterion {
    checks: Vec<(bool, String)>,
    notes: Vec<String>,
}

impl Criterion {
    fn new() -> Self {
        Self { checks: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        self.checks.push((ok, what.into()));
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.0)
    }
}

/// `x` meets the printed value `p` given to `digits` decimals.
fn matches_printed(x: Interval, p: f64, digits: i32) -> bool {
    let h = 0.5 * 10f64.powi(-digits);
    x.lo() <= p + h && x.hi() >= p - h
}

fn within(x: Interval, p: f64, tol: f64) -> bool {
    x.lo() <= p + tol && x.hi() >= p - tol
}

fn sl_run(name: &str, threads: Option<usize>) -> (SlProblem, SlRun, Duration) {
    let cfg: RunConfig = preset(name).expect("bundled preset");
    let s = cfg.sl.as_ref().expect("sl section");
    let p = s.problem().expect("valid problem");
    let e = cfg.ceiling_value().expect("ceiling");
    let config = EncloseConfig { threads, ..EncloseConfig::default() };
    let t = Instant::now();
    let run = hierarchical_enclose(&p, e, &config).expect("certified run");
    (p, run, t.elapsed())
}

fn criterion_1(run: &SlRun, wall: Duration) -> Criterion {
    let mut c = Criterion::new();
    let l = &run.list;
    c.check(l.len() == 9, format!("{} enclosures below 70", l.len()));
    if let (Some(m0), Some(m8)) = (l.entries.first(), l.entries.get(8)) {
        c.check(m0.overlaps(Interval::new(2.4860431147, 2.4860431150)), format!("mu0 = {m0:?} meets 2.48604311[47, 50]"));
        c.check(m0.width() <= 1e-6, format!("mu0 width {:.2e}", m0.width()));
        c.check(m8.overlaps(Interval::new(68.031756, 68.031758)), format!("mu8 = {m8:?} meets 68.03175[6, 8]"));
    }
    c.check(wall.as_secs_f64() <= 60.0, format!("{:.2} s single-threaded", wall.as_secs_f64()));
    c
}

/// Crude bounds on the leaf cell `(0, w)` at the next ceiling of the schedule.
fn first_leaf(p: &SlProblem, run: &SlRun) -> Option<EnclosureList> {
    let n = run.nodes.iter().find(|n| n.leaf && n.cell.0 == 0.0)?;
    let sub = p.restricted(n.cell.0, n.cell.1, n.bc);
    crude_enclosure(&sub, run.schedule.level(n.depth + 1)).ok()
}

fn one_ulp_outward(x: Interval, lo: f64, hi: f64) -> bool {
    (x.lo() == lo || x.lo() == lo.next_down()) && (x.hi() == hi || x.hi() == hi.next_up())
}

fn criterion_2(p: &SlProblem, run: &SlRun) -> Criterion {
    let mut c = Criterion::new();
    let leaf = run.nodes.iter().find(|n| n.leaf && n.cell.0 == 0.0);
    c.check(leaf.is_some_and(|n| n.cell.1 == 0.25), "first leaf is (0, pi/4)");
    if let Some(list) = first_leaf(p, run) {
        for (i, (lo, hi)) in [(4.0, 8.0), (20.0, 24.0), (68.0, 72.0)].into_iter().enumerate() {
            let ok = list.entries.get(i).is_some_and(|&x| one_ulp_outward(x, lo, hi));
            c.check(ok, format!("crude {i} = {:?} is [{lo}, {hi}]", list.entries.get(i)));
        }
        c.check(list.len() == 3, format!("{} crude entries", list.len()));
    }
    let eff = effort_report(&run.nodes);
    c.check(eff.operators == 7, format!("{} operators", eff.operators));
    c.check(eff.levels == 3, format!("{} levels", eff.levels));
    c.check(eff.eigenvalues == 31, format!("{} eigenvalues", eff.eigenvalues));
    c
}

fn criterion_3(p: &SlProblem, run: &SlRun, wall: Duration) -> Criterion {
    let mut c = Criterion::new();
    let l = &run.list;
    let expected = [233.811, 408.795, 552.056, 678.679, 794.738, 906.461];
    c.check(l.len() == 6, format!("{} enclosures below 1000", l.len()));
    for (i, (x, p)) in l.entries.iter().zip(expected).enumerate() {
        c.check(within(*x, p, 5e-3), format!("mu{i} = {x:?} within 5e-3 of {p}"));
    }
    if let Some(m0) = l.entries.first() {
        c.check(m0.width() <= 1e-2, format!("mu0 width {:.2e}", m0.width()));
    }
    match first_leaf(p, run).and_then(|l| l.entries.first().copied()) {
        Some(x) => {
            let ends = (x.lo() - 157.91).abs() <= 5e-3 && (x.hi() - 282.91).abs() <= 5e-3;
            c.check(ends, format!("crude (0, 1/8) = {x:?} is [157.91, 282.91] to 2 decimals"));
            c.check(x.lo().floor() == 157.0 && x.hi().ceil() == 283.0, "rounds to 157 < mu0 < 283");
        }
        None => c.check(false, "no leaf on (0, 1/8)"),
    }
    let eff = effort_report(&run.nodes);
    c.check(eff.operators == 15, format!("{} operators", eff.operators));
    c.check(eff.levels == 4, format!("{} levels", eff.levels));
    c.check(eff.eigenvalues <= 42, format!("{} eigenvalues", eff.eigenvalues));
    c.check(wall.as_secs_f64() <= 120.0, format!("{:.2} s", wall.as_secs_f64()));
    c
}

fn criterion_4() -> Criterion {
    let mut c = Criterion::new();
    let table = [
        [0.0, 9.705, 9.705, 19.410, 36.898, 36.898],
        [0.0, 9.515, 9.705, 19.142, 33.499, 36.898],
        [0.0, 9.361, 9.574, 18.367, 30.187, 34.782],
        [0.0, 5.868, 9.540, 13.119, 23.836, 34.571],
        [0.0, 0.0, 9.095, 11.471, 23.049, 32.525],
    ];
    let g = Graph::grid(7, 7);
    let v = |i, j| g.find(&[i, j]).expect("grid vertex");
    let removed = [(v(1, 2), v(2, 2)), (v(2, 1), v(2, 2)), (v(1, 2), v(1, 3)), (v(2, 1), v(3, 1))];
    let opts = GraphOptions { count: Some(6), ..GraphOptions::default() };
    let lists = match edge_chain_enclose(&g, &removed, &opts) {
        Ok(l) => l,
        Err(e) => {
            c.check(false, e.to_string());
            return c;
        }
    };
    let mut matched = 0;
    for (r, (list, row)) in lists.iter().zip(&table).enumerate() {
        for (j, &p) in row.iter().enumerate() {
            let ok = list.entries.get(j).is_some_and(|&x| matches_printed(x * 49.0, p, 3));
            if ok {
                matched += 1;
            } else {
                c.check(false, format!("row {r} mu{j}: {:?} vs {p}", list.entries.get(j).map(|&x| x * 49.0)));
            }
        }
    }
    c.check(matched == 30, format!("{matched}/30 values to 3 decimals"));
    let interlacing = lists.windows(2).all(|w| interlaces(&w[1], &w[0]) || rank_one_interlace(&w[0], &w[1]));
    c.check(interlacing, "consecutive rows interlace");
    c
}

/// `λⱼ(after) ≤ λⱼ(before) ≤ λⱼ₊₁(after)` in endpoint form.
fn rank_one_interlace(before: &EnclosureList, after: &EnclosureList) -> bool {
    (0..after.len()).all(|j| {
        after.lower(j) <= before.upper(j) && (j + 1 >= after.len() || before.lower(j) <= after.upper(j + 1))
    })
}

struct Triangles {
    y: Graph,
    z: Graph,
    bridges: Vec<Bridge>,
}

fn triangles(h: i64) -> Triangles {
    let yp: Vec<Vec<i64>> = (1..h).flat_map(|x| (1..=x).map(move |r| vec![x, r])).collect();
    let zp: Vec<Vec<i64>> = (h..2 * h).flat_map(|x| (1..=2 * h - x).map(move |r| vec![x, r])).collect();
    let y = Graph::lattice(&yp).unwrap();
    let z = Graph::lattice(&zp).unwrap();
    let bridges = (1..h)
        .map(|r| Bridge { y: y.find(&[h - 1, r]).unwrap(), z: z.find(&[h, r]).unwrap(), weight: Interval::ONE })
        .collect();
    Triangles { y, z, bridges }
}

fn spectrum(g: &Graph) -> EnclosureList {
    EnclosureList::new(verified_sym_eig(&laplacian(g)).unwrap().values, f64::INFINITY, f64::INFINITY)
}

fn stage_at(run: &HomotopyRun, s: f64) -> Option<&EnclosureList> {
    run.stages.iter().find(|st| (st.s - s).abs() < 1e-12).map(|st| &st.list)
}

fn monotone(run: &HomotopyRun) -> bool {
    run.stages
        .windows(2)
        .all(|w| w[0].s < w[1].s && (0..w[0].list.len().min(w[1].list.len())).all(|j| w[1].list.lower(j) >= w[0].list.lower(j)))
}

fn criterion_5() -> Criterion {
    let mut c = Criterion::new();
    let t = triangles(8);
    c.check(t.y.len() == 28 && t.z.len() == 36 && t.bridges.len() == 7, "28 + 36 vertices, 7 joining edges");
    let (ly, lz) = (spectrum(&t.y), spectrum(&t.z));
    let opts = GraphOptions { count: Some(7), ..GraphOptions::default() };
    let rows = [
        (0.0, [0.0, 0.0, 0.12061, 0.15224, 0.25330, 0.32129, 0.46791]),
        (0.2, [0.0, 0.04705, 0.13054, 0.23249, 0.27273, 0.42485, 0.49950]),
        (1.0, [0.0, 0.07244, 0.13259, 0.27719, 0.33076, 0.51058, 0.60389]),
    ];
    let schedule = HomotopySchedule::new(vec![0.0, 0.2, 1.0]).unwrap();
    match homotopy_enclose(&t.y, &ly, &t.z, &lz, &t.bridges, &schedule, &opts) {
        Ok(run) => {
            let mut matched = 0;
            for (s, row) in rows {
                let Some(list) = stage_at(&run, s) else {
                    c.check(false, format!("no stage at s = {s}"));
                    continue;
                };
                for (j, p) in row.into_iter().enumerate() {
                    if list.entries.get(j).is_some_and(|&x| matches_printed(x, p, 5)) {
                        matched += 1;
                    } else {
                        c.check(false, format!("A_{s} mu{j}: {:?} vs {p}", list.entries.get(j)));
                    }
                }
            }
            c.check(matched == 21, format!("{matched}/21 table values to 5 decimals"));
            c.check(monotone(&run), format!("monotone over {} stages", run.stages.len()));
            c.note("A_0 mu5 compared with 0.32129, the union of the two triangle spectra; the table prints 0.32139");
        }
        Err(e) => c.check(false, e.to_string()),
    }
    let sequence = [0.0, 0.03153, 0.04705, 0.05559, 0.06085, 0.06439, 0.06693, 0.06882, 0.07030, 0.07148, 0.07244];
    match homotopy_enclose(&t.y, &ly, &t.z, &lz, &t.bridges, &HomotopySchedule::uniform(10), &opts) {
        Ok(run) => {
            let mut matched = 0;
            for (k, p) in sequence.into_iter().enumerate() {
                let s = k as f64 / 10.0;
                match stage_at(&run, s).and_then(|l| l.entries.get(1)) {
                    Some(&x) if matches_printed(x, p, 5) => matched += 1,
                    other => c.check(false, format!("mu1(A_{s}) = {other:?} vs {p}")),
                }
            }
            c.check(matched == 11, format!("{matched}/11 values of mu1(A_s) to 5 decimals"));
            c.check(monotone(&run), format!("monotone over {} stages", run.stages.len()));
        }
        Err(e) => c.check(false, e.to_string()),
    }
    c
}

fn criterion_6() -> Criterion {
    let mut c = Criterion::new();
    for n in [4usize, 8, 16] {
        let mut f = vec![1; n];
        f[n - 1] = n;
        let st = staircase_paths(n, &f).unwrap();
        let b = poincare_bound(&st.graph, &st.family).unwrap();
        let expected = Interval::ONE / Interval::point((n * (2 * n - 2)) as f64);
        match b.stated {
            Some(s) => c.check(s.overlaps(expected) && s.width() <= 1e-15, format!("n = {n}: stated {s:?} is 1/{}", n * (2 * n - 2))),
            None => c.check(false, format!("n = {n}: stated constants not confirmed")),
        }
        let mu1 = verified_sym_eig(&laplacian(&st.graph)).unwrap().values[1];
        c.check(b.bound.lo() <= mu1.hi(), format!("n = {n}: bound {:.6} <= mu1 {:.6}", b.bound.lo(), mu1.lo()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut sound = 0;
    let mut tested = 0;
    while tested < 1000 {
        let n = rng.random_range(1..=12);
        let mut f: Vec<usize> = (0..n).map(|_| rng.random_range(1..=12)).collect();
        f.sort_unstable();
        if f.iter().sum::<usize>() < 2 {
            continue;
        }
        tested += 1;
        let st = staircase_paths(n, &f).unwrap();
        let b = poincare_bound(&st.graph, &st.family).unwrap();
        let mu1 = verified_sym_eig(&laplacian(&st.graph)).unwrap().values[1];
        if b.bound.lo() <= mu1.hi() && b.stated.is_none_or(|s| s.lo() <= mu1.hi()) {
            sound += 1;
        }
    }
    c.check(sound == 1000, format!("{sound}/1000 random staircases below the oracle mu1"));
    c
}

fn criterion_7() -> Criterion {
    let mut c = Criterion::new();
    let fx = SystemFixture::new(-1.0, 2.0, Interval::point(100.0), Interval::point(50.0), 50.0).unwrap();
    let lists = match system_fixture_lists(&fx) {
        Ok(l) => l,
        Err(e) => {
            c.check(false, e.to_string());
            return c;
        }
    };
    let printed: [(&str, &EnclosureList, &[f64]); 5] = [
        ("H1", &lists.h1, &[0.0, 9.870, 39.478, 88.826]),
        ("H2", &lists.h2, &[0.0, 2.467, 9.870, 22.207, 39.478, 61.685, 88.826]),
        ("A1", &lists.a1, &[0.0, 0.0, 2.467, 9.870, 9.870, 22.207, 39.478, 39.478, 61.685, 88.826]),
        ("K", &lists.k, &[0.0, 0.468, 4.298, 9.870, 12.288, 24.757, 39.478, 41.865, 63.639]),
        ("H", &lists.h, &[0.449, 1.609, 4.735, 11.746, 17.747, 27.360, 41.177]),
    ];
    for (name, list, values) in printed {
        let ok = list.len() == values.len()
            && list.entries.iter().zip(values).all(|(&x, &p)| matches_printed(x, p, 3));
        c.check(ok, format!("{name}: {} values to 3 decimals", values.len()));
    }
    c.check(interlaces(&lists.a1, &lists.k), "A1 -> K interlaces");
    c.check(interlaces(&lists.k, &lists.h), "K -> H interlaces");
    c
}

fn constant_problem(a: f64, v: f64, l: f64, bc: BoundaryCondition) -> SlProblem {
    SlProblem::new(
        Scale::Unit,
        Interval::new(0.0, l),
        CoefficientFn::constant(0.0, l, a),
        CoefficientFn::constant(0.0, l, v),
        bc,
    )
    .unwrap()
}

fn constant_eigenvalue(a: f64, v: f64, l: f64, bc: BoundaryCondition, i: usize) -> Interval {
    let k = pi_enclosure() * (i as f64 + bc.mode_offset()) / Interval::point(l);
    Interval::point(a) * k.sqr() + Interval::point(v)
}

fn criterion_8() -> Criterion {
    let mut c = Criterion::new();
    let fuzz = intervals::violations(100_000, 0x5eed);
    c.check(fuzz.is_empty(), format!("interval fuzzing: {} violations in 1e5 cases", fuzz.len()));

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut bad = 0;
    for _ in 0..300 {
        let n = rng.random_range(1..=8);
        let a = random_symmetric(&mut rng, n);
        let e = verified_sym_eig(&IntervalMatrix::from_points(&a)).unwrap();
        if check_enclosures(&a, &DMatrix::identity(n, n), &e.values).is_err() {
            bad += 1;
        }
    }
    c.check(bad == 0, format!("verified_sym_eig: {bad} violations in 300 matrices against exact inertia"));

    let mut bad = 0;
    for _ in 0..500 {
        let (a, v, l) = (rng.random_range(0.5..3.0), rng.random_range(-5.0..5.0), rng.random_range(0.5..2.0));
        let t = rng.random_range(0.1..0.9);
        let m = rng.random_range(3..12);
        let nb = BoundaryCondition::NEUMANN;
        let half = |len: f64| {
            let e: Vec<Interval> = (0..m).map(|i| constant_eigenvalue(a, v, len, nb, i)).collect();
            EnclosureList::new(e, f64::INFINITY, constant_eigenvalue(a, v, len, nb, m).lo())
        };
        let merged = merge_interlace(&half(t * l), &half((1.0 - t) * l));
        for (i, x) in merged.entries.iter().enumerate() {
            let nu = constant_eigenvalue(a, v, l, nb, i);
            if !(x.lo() <= nu.hi() && (nu.lo() <= x.hi() || nu.hi() >= merged.ceiling)) {
                bad += 1;
            }
        }
    }
    c.check(bad == 0, format!("rejoining interlacing: {bad} violations in 500 constant-coefficient splits"));

    let mut bad = 0;
    for _ in 0..200 {
        let a = random_form(&mut rng, 6);
        let cons: Vec<Vec<f64>> = (0..3).map(|_| (0..6).map(|_| rng.random_range(-1.0..1.0)).collect()).collect();
        let lists = chain_eigen_lists(&FormChain::new(IntervalMatrix::from_points(&a), cons.clone()).unwrap()).unwrap();
        let chain_ok = lists.windows(2).all(|w| interlaces(&w[0], &w[1]));
        let oracle_ok = lists.iter().enumerate().all(|(i, l)| {
            l.entries
                .iter()
                .zip(restricted_spectrum(&a, &cons[..i]))
                .all(|(x, y)| within(*x, y, 1e-9 * (1.0 + y.abs())))
        });
        if !(chain_ok && oracle_ok) {
            bad += 1;
        }
    }
    c.check(bad == 0, format!("form chains: {bad} violations in 200 random 6x6 chains"));

    let mut bad = 0;
    let mut cases = 0;
    for _ in 0..60 {
        let (a, v, l) = (rng.random_range(0.5..3.0), rng.random_range(-5.0..5.0), rng.random_range(0.5..2.0));
        let side = |b: bool| if b { Bc::Dirichlet } else { Bc::Neumann };
        let bc = BoundaryCondition::new(side(rng.random_bool(0.5)), side(rng.random_bool(0.5)));
        let p = constant_problem(a, v, l, bc);
        let g = assemble_gram(&p, p.domain, rng.random_range(8..20)).unwrap();
        for j in 0..4 {
            let rho = Interval::point(constant_eigenvalue(a, v, l, bc, j + 1).lo() * (1.0 - 1e-9) - 1e-9);
            let rr = rr_upper(&g, j + 1).unwrap();
            if let Ok(t) = temple_lower(&g, j, rho) {
                cases += 1;
                if t.lo() > rr[j].hi() {
                    bad += 1;
                }
            }
        }
    }
    c.check(bad == 0 && cases > 0, format!("temple_lower <= rr_upper: {bad} violations in {cases} cases"));
    c
}

fn main() -> ExitCode {
    let (cos_p, cos_single, cos_wall) = sl_run("example-sl-cos", Some(1));
    let (airy_p, airy, airy_wall) = sl_run("example-sl-airy", None);
    let criteria: [(&str, Box<dyn Fn() -> Criterion>); 8] = [
        ("1 example-sl-cos enclosures", Box::new(|| criterion_1(&cos_single, cos_wall))),
        ("2 example-sl-cos crude bounds and effort", Box::new(|| criterion_2(&cos_p, &cos_single))),
        ("3 example-sl-airy enclosures, crude bound and effort", Box::new(|| criterion_3(&airy_p, &airy, airy_wall))),
        ("4 edge-removal chain on the 7x7 grid", Box::new(criterion_4)),
        ("5 homotopy joining two triangles", Box::new(criterion_5)),
        ("6 Poincare bounds on staircases", Box::new(criterion_6)),
        ("7 coupled system fixture", Box::new(criterion_7)),
        ("8 property suites", Box::new(criterion_8)),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let c = f();
        let passed = c.passed();
        if !passed {
            failed += 1;
        }
        let summary: Vec<&str> = c.checks.iter().filter(|x| x.0).map(|x| x.1.as_str()).collect();
        println!("{} {name}: {}", if passed { "PASS" } else { "FAIL" }, summary.join("; "));
        for (ok, what) in &c.checks {
            if !ok {
                println!("    failed: {what}");
            }
        }
        for n in &c.notes {
            println!("    note: {n}");
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
