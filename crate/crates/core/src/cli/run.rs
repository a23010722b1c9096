//! Dispatch of a configuration to the solvers.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::{
    vertex, ChainSection, FormsSection, Heights, HomotopySection, PartitionSection, PoincareSection, Problem,
    RunConfig, SlSection, SystemSection,
};
use super::report::{ReportRow, RunReport};
use super::CliError;
use crate::enclosure::EnclosureList;
use crate::forms::{chain_eigen_lists, system_fixture_lists, system_form_chain, FormChain, FormsError, SystemFixture};
use crate::graphenclose::{
    edge_chain_enclose, homotopy_enclose, partition_enclose, poincare_bound, staircase_paths, Bridge, Graph,
    GraphError, GraphOptions, HomotopySchedule, PartTree,
};
use crate::ival::{Interval, IntervalMatrix};
use crate::slenclose::{effort_report, hierarchical_enclose, EncloseConfig, NodeRecord, SlError};

/// Command-line settings that override the configuration.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub max_level: Option<u32>,
    pub basis_degree: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Certified,
    /// Stopped early; the reported enclosures are still rigorous.
    Halted,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Certified => 0,
            Status::Halted => 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: RunReport,
    pub status: Status,
}

/// Worker threads from the configuration or `ENCLOSE_THREADS`.
fn threads(cfg: &RunConfig) -> Option<usize> {
    cfg.threads.or_else(|| std::env::var("ENCLOSE_THREADS").ok().and_then(|s| s.parse().ok())).filter(|&t| t > 0)
}

pub fn run(cfg: &RunConfig, ov: &Overrides) -> Result<Outcome, CliError> {
    let problem = cfg.problem()?;
    let start = Instant::now();
    let go = || dispatch(cfg, ov, &problem);
    let mut out = match threads(cfg) {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::config("threads", e.to_string()))?
            .install(go)?,
        None => go()?,
    };
    out.report.wall = start.elapsed();
    if let Some(t) = &cfg.title {
        out.report.title = t.clone();
    }
    Ok(out)
}

fn dispatch(cfg: &RunConfig, ov: &Overrides, problem: &Problem) -> Result<Outcome, CliError> {
    match problem {
        Problem::Sl(s) => run_sl(cfg, ov, s),
        Problem::GraphChain(s) => run_chain(cfg, s),
        Problem::GraphHomotopy(s) => run_homotopy(cfg, s),
        Problem::GraphPartition(s) => run_partition(cfg, s),
        Problem::Poincare(s) => run_poincare(s),
        Problem::SystemFixture(s) => run_system(cfg, s),
        Problem::FormsDemo(s) => run_forms(s),
    }
}

fn certified(report: RunReport) -> Outcome {
    Outcome { report, status: Status::Certified }
}

/// Degrees tried in turn: the default ladder up to `max`, ending at `max`.
fn degree_ladder(max: usize) -> Vec<usize> {
    let mut d: Vec<usize> = EncloseConfig::default().degrees.into_iter().filter(|&x| x < max).collect();
    d.push(max);
    d
}

fn node_lines(nodes: &[NodeRecord]) -> Vec<String> {
    let e = effort_report(nodes);
    let per: Vec<String> = e.per_level.iter().map(usize::to_string).collect();
    let mut lines = vec![format!(
        "effort: {} operators, {} levels, {} eigenvalues (per level {})",
        e.operators,
        e.levels,
        e.eigenvalues,
        per.join(", ")
    )];
    for n in nodes {
        let kind = if n.leaf { "leaf" } else { "join" };
        let deg = n.degree.map_or("-".into(), |d| d.to_string());
        lines.push(format!(
            "  depth {} node {} [{}, {}] {kind} degree {deg}: {} enclosures",
            n.depth,
            n.index,
            n.cell.0,
            n.cell.1,
            n.list.len()
        ));
    }
    lines
}

fn run_sl(cfg: &RunConfig, ov: &Overrides, s: &SlSection) -> Result<Outcome, CliError> {
    let p = s.problem()?;
    let e = cfg.ceiling_value()?;
    let mut ec = EncloseConfig::default();
    if let Some(r) = s.e_prime_ratio {
        ec.e_prime_ratio = r;
    }
    if let Some(t) = cfg.tolerance {
        ec.target_width = t;
    }
    if let Some(m) = ov.max_level.or(cfg.max_level) {
        ec.max_level = m;
    }
    if let Some(d) = ov.basis_degree.or(cfg.basis_degree) {
        if d < 4 {
            return Err(CliError::config("basis-degree", "must be at least 4"));
        }
        ec.degrees = degree_ladder(d);
    }
    ec.threads = threads(cfg);
    ec.level = s.level;
    let mut report = RunReport::new(format!("eigenvalues below E = {e}"));
    match hierarchical_enclose(&p, e, &ec) {
        Ok(run) => {
            report.rows.push(ReportRow::from_list("H", &run.list, None));
            report.eigen_columns();
            report.notes.push(format!("subdivision level {}, max width {:.3e}", run.schedule.n, run.list.max_width()));
            report.effort = node_lines(&run.nodes);
            Ok(certified(report))
        }
        Err(SlError::Halted(h)) => {
            for n in &h.nodes {
                report.rows.push(ReportRow::from_list(format!("d{}#{}", n.depth, n.index), &n.list, None));
            }
            report.eigen_columns();
            report.effort = node_lines(&h.nodes);
            report.halted = Some(h.to_string());
            Ok(Outcome { report, status: Status::Halted })
        }
        Err(e) => Err(e.into()),
    }
}

fn graph_options(cfg: &RunConfig, count: Option<usize>) -> GraphOptions {
    let mut o = GraphOptions { count, ..Default::default() };
    if let Some(t) = cfg.tolerance {
        o.tolerance = t;
    }
    if let Some(c) = cfg.ceiling {
        o.ceiling = c;
    }
    o
}

fn halted_rows(report: &mut RunReport, lists: &[EnclosureList], label: impl Fn(usize) -> String, scale: Option<f64>) {
    for (i, l) in lists.iter().enumerate() {
        report.rows.push(ReportRow::from_list(label(i), l, scale));
    }
    report.eigen_columns();
}

fn scale_note(report: &mut RunReport, scale: Option<f64>) {
    if let Some(s) = scale {
        report.notes.push(format!("values multiplied by {s}"));
    }
}

fn run_chain(cfg: &RunConfig, s: &ChainSection) -> Result<Outcome, CliError> {
    let g = s.graph.build("graph-chain.graph")?;
    let removed = s
        .remove
        .iter()
        .map(|[a, b]| Ok((vertex(&g, a, "graph-chain.remove")?, vertex(&g, b, "graph-chain.remove")?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let opts = graph_options(cfg, s.count);
    let label = |i: usize| if i == 0 { "A".to_string() } else { format!("A_{i}") };
    let mut report = RunReport::new(format!("edge removal chain, {} vertices", g.len()));
    scale_note(&mut report, s.display_scale);
    match edge_chain_enclose(&g, &removed, &opts) {
        Ok(lists) => {
            halted_rows(&mut report, &lists, label, s.display_scale);
            Ok(certified(report))
        }
        Err(GraphError::Halted(h)) => {
            halted_rows(&mut report, &h.partial, label, s.display_scale);
            report.halted = Some(h.to_string());
            Ok(Outcome { report, status: Status::Halted })
        }
        Err(e) => Err(e.into()),
    }
}

/// The two sides of a split, as induced subgraphs with the edges between.
fn split_graph(g: &Graph, first: &[bool]) -> (Graph, Graph, Vec<Bridge>, Vec<usize>, Vec<usize>) {
    let ys: Vec<usize> = (0..g.len()).filter(|&v| first[v]).collect();
    let zs: Vec<usize> = (0..g.len()).filter(|&v| !first[v]).collect();
    let pos = |set: &[usize], v: usize| set.binary_search(&v).expect("vertex in its part");
    let bridges = g
        .edges()
        .iter()
        .filter(|e| first[e.u] != first[e.v])
        .map(|e| {
            let (y, z) = if first[e.u] { (e.u, e.v) } else { (e.v, e.u) };
            Bridge { y: pos(&ys, y), z: pos(&zs, z), weight: e.weight }
        })
        .collect();
    (g.induced(&ys), g.induced(&zs), bridges, ys, zs)
}

fn run_homotopy(cfg: &RunConfig, s: &HomotopySection) -> Result<Outcome, CliError> {
    let field = "graph-homotopy";
    let g = s.graph.build("graph-homotopy.graph")?;
    let first: Vec<bool> = match (&s.split, &s.part, s.graph.triangles) {
        (Some(sp), None, _) => {
            if g.labels().iter().any(|l| l.len() <= sp.axis) {
                return Err(CliError::config("graph-homotopy.split", "axis out of range"));
            }
            g.labels().iter().map(|l| l[sp.axis] < sp.below).collect()
        }
        (None, Some(part), _) => {
            let mut f = vec![false; g.len()];
            for label in part {
                f[vertex(&g, label, "graph-homotopy.part")?] = true;
            }
            f
        }
        (None, None, Some(h)) => g.labels().iter().map(|l| l[0] < h).collect(),
        _ => return Err(CliError::config(field, "set exactly one of split, part")),
    };
    if first.iter().all(|&b| b) || first.iter().all(|&b| !b) {
        return Err(CliError::config(field, "both parts must be nonempty"));
    }
    let schedule = match (&s.schedule, s.steps) {
        (Some(v), None) => HomotopySchedule::new(v.clone())?,
        (None, Some(p)) if p > 0 => HomotopySchedule::uniform(p),
        (None, None) => HomotopySchedule::default(),
        _ => return Err(CliError::config(field, "set at most one of schedule, steps (positive)")),
    };
    let (gy, gz, bridges, _, _) = split_graph(&g, &first);
    let mut opts = graph_options(cfg, s.count);
    if let Some(m) = s.max_steps {
        opts.max_steps = m;
    }
    let child = GraphOptions { count: None, ..opts.clone() };
    let ly = edge_chain_enclose(&gy, &[], &child)?.remove(0);
    let lz = edge_chain_enclose(&gz, &[], &child)?.remove(0);
    let mut report = RunReport::new(format!(
        "edge-weight homotopy, {} + {} vertices, {} joining edges",
        gy.len(),
        gz.len(),
        bridges.len()
    ));
    scale_note(&mut report, s.display_scale);
    match homotopy_enclose(&gy, &ly, &gz, &lz, &bridges, &schedule, &opts) {
        Ok(run) => {
            let shown: Vec<EnclosureList> = run.stages.iter().map(|st| head(&st.list, s.count)).collect();
            let labels: Vec<String> = run.stages.iter().map(|st| format!("A_{}", st.s)).collect();
            halted_rows(&mut report, &shown, |i| labels[i].clone(), s.display_scale);
            report.effort.push(format!("effort: {} homotopy stages", run.stages.len()));
            Ok(certified(report))
        }
        Err(GraphError::Halted(h)) => {
            let shown: Vec<EnclosureList> = h.partial.iter().map(|l| head(l, s.count)).collect();
            halted_rows(&mut report, &shown, |i| format!("stage {i}"), s.display_scale);
            report.halted = Some(h.to_string());
            Ok(Outcome { report, status: Status::Halted })
        }
        Err(e) => Err(e.into()),
    }
}

fn head(l: &EnclosureList, count: Option<usize>) -> EnclosureList {
    match count {
        Some(c) if c < l.len() => EnclosureList::new(l.entries[..c].to_vec(), l.entries[c].lo(), l.entries[c].lo()),
        _ => l.clone(),
    }
}

/// Balanced binary tree over the parts in order.
fn balanced(mut parts: Vec<PartTree>) -> PartTree {
    while parts.len() > 1 {
        let mut next = Vec::with_capacity(parts.len().div_ceil(2));
        let mut it = parts.into_iter();
        while let Some(a) = it.next() {
            next.push(match it.next() {
                Some(b) => PartTree::join(a, b),
                None => a,
            });
        }
        parts = next;
    }
    parts.pop().expect("at least one part")
}

fn run_partition(cfg: &RunConfig, s: &PartitionSection) -> Result<Outcome, CliError> {
    let field = "graph-partition";
    let g = s.graph.build("graph-partition.graph")?;
    let parts: Vec<Vec<usize>> = match (&s.blocks, &s.parts) {
        (Some([bx, by]), None) => {
            if *bx == 0 || *by == 0 || g.labels().iter().any(|l| l.len() != 2) {
                return Err(CliError::config("graph-partition.blocks", "needs positive counts and (i, j) labels"));
            }
            let range = |axis: usize| {
                let it = g.labels().iter().map(|l| l[axis]);
                (it.clone().min().expect("vertices"), it.max().expect("vertices"))
            };
            let (rx, ry) = (range(0), range(1));
            let block = |v: i64, (lo, hi): (i64, i64), k: usize| ((v - lo) as usize * k) / ((hi - lo) as usize + 1);
            let mut parts = vec![Vec::new(); bx * by];
            for (v, l) in g.labels().iter().enumerate() {
                parts[block(l[0], rx, *bx) * by + block(l[1], ry, *by)].push(v);
            }
            parts.retain(|p| !p.is_empty());
            parts
        }
        (None, Some(lists)) => lists
            .iter()
            .map(|p| p.iter().map(|l| vertex(&g, l, "graph-partition.parts")).collect())
            .collect::<Result<_, _>>()?,
        _ => return Err(CliError::config(field, "set exactly one of blocks, parts")),
    };
    let tree = balanced(parts.into_iter().map(PartTree::Leaf).collect());
    let opts = graph_options(cfg, None);
    let run = partition_enclose(&g, &tree, s.a, s.b, &opts)?;
    let mut report = RunReport::new(format!("hierarchical partition, {} vertices", g.len()));
    scale_note(&mut report, s.display_scale);
    report.rows.push(ReportRow::from_list("A", &run.list, s.display_scale));
    report.eigen_columns();
    report.notes.push(format!("complete below E = {}", run.ceiling.lo()));
    let gaps: Vec<String> = run.leaf_gaps.iter().map(|x| format!("{x:.6}")).collect();
    report.effort.push(format!("leaf gap lower bounds: {}", gaps.join(", ")));
    Ok(certified(report))
}

fn heights(f: &Heights, n: usize) -> Result<Vec<usize>, CliError> {
    match f {
        Heights::Named(s) if s == "degenerate" => {
            let mut f = vec![1; n];
            f[n - 1] = n;
            Ok(f)
        }
        Heights::Named(s) => Err(CliError::config("poincare.f", format!("unknown family '{s}'"))),
        Heights::List(v) => Ok(v.clone()),
    }
}

/// `μ₁` of the staircase graph by a direct verified eigensolve.
fn second_eigenvalue(g: &Graph) -> Result<Interval, CliError> {
    let opts = GraphOptions { count: Some(2), ..Default::default() };
    Ok(edge_chain_enclose(g, &[], &opts)?[0].entries[1])
}

fn run_poincare(s: &PoincareSection) -> Result<Outcome, CliError> {
    if s.n.is_empty() || s.n.contains(&0) {
        return Err(CliError::config("poincare.n", "need positive sizes"));
    }
    let mut report = RunReport::new("path-congestion lower bounds for mu1 of staircases");
    report.columns = ["stated", "measured", "weighted", "bound"].map(String::from).to_vec();
    if s.oracle {
        report.columns.push("mu1".into());
    }
    for &n in &s.n {
        let f = heights(&s.f, n)?;
        let st = staircase_paths(n, &f)?;
        let b = poincare_bound(&st.graph, &st.family)?;
        let mut entries = vec![b.stated, Some(b.measured), Some(b.weighted), Some(b.bound)];
        if s.oracle {
            let mu = second_eigenvalue(&st.graph)?;
            report.notes.push(format!("n = {n}: bound / mu1 in {}", super::decimal::render_interval(b.bound / mu, 6)));
            entries.push(Some(mu));
        }
        report.rows.push(ReportRow { label: format!("n={n}"), entries });
    }
    if let Some(count) = s.random {
        let max_n = s.max_n.unwrap_or(12).max(1);
        let mut rng = ChaCha8Rng::seed_from_u64(s.seed.unwrap_or(1));
        let (mut worst, mut best, mut violations) = (f64::INFINITY, 0.0f64, 0);
        for _ in 0..count {
            let n = rng.random_range(1..=max_n);
            let mut f: Vec<usize> = (0..n).map(|_| rng.random_range(1..=max_n)).collect();
            f.sort_unstable();
            let st = staircase_paths(n, &f)?;
            if st.graph.len() < 2 {
                continue;
            }
            let b = poincare_bound(&st.graph, &st.family)?;
            let mu = second_eigenvalue(&st.graph)?;
            if b.bound.lo() > mu.hi() {
                violations += 1;
            }
            let r = b.bound.mid() / mu.mid();
            worst = worst.min(r);
            best = best.max(r);
        }
        report.notes.push(format!(
            "{count} random staircases (n <= {max_n}): {violations} bounds above mu1; bound / mu1 from {worst:.4} to {best:.4}"
        ));
    }
    Ok(certified(report))
}

fn fixture(s: &SystemSection, e: f64) -> Result<SystemFixture, CliError> {
    Ok(SystemFixture::new(s.alpha, s.beta, s.u.interval("u")?, s.v.interval("v")?, e)?)
}

fn run_system(cfg: &RunConfig, s: &SystemSection) -> Result<Outcome, CliError> {
    let e = cfg.ceiling_value()?;
    let l = system_fixture_lists(&fixture(s, e)?)?;
    let mut report = RunReport::new(format!("two-component system on ({}, {}), E = {e}", s.alpha, s.beta));
    for (label, list) in [("H1", &l.h1), ("H2", &l.h2), ("A1", &l.a1), ("K", &l.k), ("H", &l.h)] {
        report.rows.push(ReportRow::from_list(label, list, None));
    }
    report.eigen_columns();
    report.notes.push("interlacing A1 -> K -> H verified".into());
    Ok(certified(report))
}

fn run_forms(s: &FormsSection) -> Result<Outcome, CliError> {
    let (chain, labels): (FormChain, Vec<String>) = match (&s.ambient, &s.fixture) {
        (Some(rows), None) => {
            let n = rows.len();
            if n == 0 || rows.iter().any(|r| r.len() != n) {
                return Err(CliError::config("forms-demo.ambient", "must be a nonempty square matrix"));
            }
            let mut a = IntervalMatrix::zeros(n, n);
            for (i, r) in rows.iter().enumerate() {
                for (j, &x) in r.iter().enumerate() {
                    a.set(i, j, Interval::point(x));
                }
            }
            let labels = (0..=s.constraints.len()).map(|i| if i == 0 { "ambient".into() } else { format!("c{i}") }).collect();
            (FormChain::new(a, s.constraints.clone())?, labels)
        }
        (None, Some(fx)) => {
            let cells = s.cells_per_unit.unwrap_or(8);
            (system_form_chain(&fixture(fx, 1.0)?, cells)?, vec!["A1".into(), "K".into(), "H".into()])
        }
        _ => return Err(CliError::config("forms-demo", "set exactly one of ambient, fixture")),
    };
    let lists = chain_eigen_lists(&chain)?;
    let mut report = RunReport::new("restrictions of a quadratic form");
    halted_rows(&mut report, &lists, |i| labels[i].clone(), None);
    report.notes.push("consecutive lists interlace".into());
    Ok(certified(report))
}

impl From<FormsError> for CliError {
    fn from(e: FormsError) -> Self {
        CliError::Solve(e.to_string())
    }
}
