//! Run configuration, read from TOML with one section per problem kind.

use std::path::PathBuf;

use serde::Deserialize;

use super::decimal::decimal_interval;
use super::edges::{parse_edge_list, parse_vertex};
use super::expr::parse_terms;
use super::CliError;
use crate::graphenclose::Graph;
use crate::ival::Interval;
use crate::slenclose::{Bc, BoundaryCondition, CoefficientFn, Piece, Scale, SlProblem};

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct RunConfig {
    pub title: Option<String>,
    /// `E`: eigenvalues below it are enclosed.
    pub ceiling: Option<f64>,
    pub tolerance: Option<f64>,
    pub basis_degree: Option<usize>,
    pub max_level: Option<u32>,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
    pub sl: Option<SlSection>,
    pub graph_chain: Option<ChainSection>,
    pub graph_homotopy: Option<HomotopySection>,
    pub graph_partition: Option<PartitionSection>,
    pub poincare: Option<PoincareSection>,
    pub system_fixture: Option<SystemSection>,
    pub forms_demo: Option<FormsSection>,
}

/// A number given either as a TOML float or as a decimal string; strings
/// are enclosed exactly.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Float(f64),
    Text(String),
}

impl Num {
    pub fn interval(&self, field: &str) -> Result<Interval, CliError> {
        match self {
            Num::Float(x) if x.is_finite() => Ok(Interval::point(*x)),
            Num::Float(x) => Err(CliError::config(field, format!("{x} is not finite"))),
            Num::Text(s) => decimal_interval(s).ok_or_else(|| CliError::config(field, format!("bad number '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct SlSection {
    pub domain: [f64; 2],
    #[serde(default)]
    pub scale: ScaleName,
    pub a: Option<Coefficient>,
    pub v: Coefficient,
    #[serde(default)]
    pub bc: BcSpec,
    pub e_prime_ratio: Option<f64>,
    /// Fixed subdivision level instead of the smallest admissible one.
    pub level: Option<u32>,
}

#[derive(Clone, Copy, Debug, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScaleName {
    #[default]
    Unit,
    Pi,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Expr(String),
    Pieces(Vec<PieceSpec>),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceSpec {
    pub from: f64,
    pub to: f64,
    pub expr: String,
}

#[derive(Clone, Copy, Debug, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BcName {
    #[default]
    Neumann,
    Dirichlet,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum BcSpec {
    Both(BcName),
    Ends([BcName; 2]),
}

impl Default for BcSpec {
    fn default() -> Self {
        BcSpec::Both(BcName::Neumann)
    }
}

/// Where a graph comes from; exactly one field is set.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct GraphSource {
    /// `k × m` grid with labels `(i, j)`, `1 ≤ i ≤ k`, `1 ≤ j ≤ m`.
    pub grid: Option<[i64; 2]>,
    /// Two lattice triangles of size `h` joined along `x = h − ½`.
    pub triangles: Option<i64>,
    pub edges: Option<String>,
    pub edge_file: Option<PathBuf>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ChainSection {
    pub graph: GraphSource,
    /// Edges to remove in order, as pairs of vertex labels.
    #[serde(default)]
    pub remove: Vec<[String; 2]>,
    pub count: Option<usize>,
    pub display_scale: Option<f64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Split {
    pub axis: usize,
    /// Vertices whose label coordinate is below this form the first part.
    pub below: i64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct HomotopySection {
    pub graph: GraphSource,
    pub split: Option<Split>,
    /// Explicit first part; the rest of the graph is the second.
    pub part: Option<Vec<String>>,
    pub schedule: Option<Vec<f64>>,
    /// Uniform schedule with this many steps.
    pub steps: Option<usize>,
    /// Steps allowed including bisections of failed steps.
    pub max_steps: Option<usize>,
    pub count: Option<usize>,
    pub display_scale: Option<f64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct PartitionSection {
    pub graph: GraphSource,
    /// Split two-coordinate labels into `bx × by` blocks of equal ranges.
    pub blocks: Option<[usize; 2]>,
    pub parts: Option<Vec<Vec<String>>>,
    pub a: f64,
    pub b: f64,
    pub display_scale: Option<f64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Heights {
    Named(String),
    List(Vec<usize>),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct PoincareSection {
    pub n: Vec<usize>,
    /// Column heights, or `"degenerate"` for `f = (1, …, 1, n)`.
    pub f: Heights,
    /// Also enclose `μ₁` and report `bound / μ₁`.
    #[serde(default)]
    pub oracle: bool,
    /// Number of random monotone staircases to test the bound on.
    pub random: Option<usize>,
    pub max_n: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct SystemSection {
    pub alpha: f64,
    pub beta: f64,
    pub u: Num,
    pub v: Num,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FormsSection {
    pub ambient: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pub constraints: Vec<Vec<f64>>,
    /// Finite element model of the system fixture instead of a matrix.
    pub fixture: Option<SystemSection>,
    pub cells_per_unit: Option<usize>,
}

/// The one problem a configuration describes.
#[derive(Clone, Debug)]
pub enum Problem {
    Sl(SlSection),
    GraphChain(ChainSection),
    GraphHomotopy(HomotopySection),
    GraphPartition(PartitionSection),
    Poincare(PoincareSection),
    SystemFixture(SystemSection),
    FormsDemo(FormsSection),
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn problem(&self) -> Result<Problem, CliError> {
        let mut found = Vec::new();
        if let Some(s) = &self.sl {
            found.push(Problem::Sl(s.clone()));
        }
        if let Some(s) = &self.graph_chain {
            found.push(Problem::GraphChain(s.clone()));
        }
        if let Some(s) = &self.graph_homotopy {
            found.push(Problem::GraphHomotopy(s.clone()));
        }
        if let Some(s) = &self.graph_partition {
            found.push(Problem::GraphPartition(s.clone()));
        }
        if let Some(s) = &self.poincare {
            found.push(Problem::Poincare(s.clone()));
        }
        if let Some(s) = &self.system_fixture {
            found.push(Problem::SystemFixture(s.clone()));
        }
        if let Some(s) = &self.forms_demo {
            found.push(Problem::FormsDemo(s.clone()));
        }
        if found.len() != 1 {
            return Err(CliError::config(
                "problem",
                format!("exactly one problem section is required, found {}", found.len()),
            ));
        }
        let p = found.pop().expect("one");
        if matches!(p, Problem::Sl(_) | Problem::SystemFixture(_)) {
            self.ceiling_value()?;
        }
        if let Some(c) = self.ceiling {
            if !(c > 0.0) {
                return Err(CliError::config("ceiling", "must be positive"));
            }
        }
        if let Some(t) = self.tolerance {
            if !(t > 0.0) {
                return Err(CliError::config("tolerance", "must be positive"));
            }
        }
        Ok(p)
    }

    /// `E`, required for Sturm–Liouville and system problems.
    pub fn ceiling_value(&self) -> Result<f64, CliError> {
        match self.ceiling {
            Some(c) if c > 0.0 && c.is_finite() => Ok(c),
            Some(_) => Err(CliError::config("ceiling", "must be positive and finite")),
            None => Err(CliError::config("ceiling", "missing")),
        }
    }
}

fn coefficient(c: &Coefficient, domain: (f64, f64), field: &str) -> Result<CoefficientFn, CliError> {
    let err = |e: String| CliError::config(field, e);
    match c {
        Coefficient::Expr(s) => Ok(CoefficientFn::single(domain.0, domain.1, parse_terms(s).map_err(err)?)),
        Coefficient::Pieces(ps) => {
            let pieces = ps
                .iter()
                .map(|p| Ok(Piece { from: p.from, to: p.to, terms: parse_terms(&p.expr).map_err(err)? }))
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(CoefficientFn::new(pieces))
        }
    }
}

impl SlSection {
    pub fn problem(&self) -> Result<SlProblem, CliError> {
        let [lo, hi] = self.domain;
        if !(lo < hi) {
            return Err(CliError::config("sl.domain", "need lo < hi"));
        }
        let scale = match self.scale {
            ScaleName::Unit => Scale::Unit,
            ScaleName::Pi => Scale::Pi,
        };
        let a = match &self.a {
            Some(c) => coefficient(c, (lo, hi), "sl.a")?,
            None => CoefficientFn::constant(lo, hi, 1.0),
        };
        let v = coefficient(&self.v, (lo, hi), "sl.v")?;
        let bc = |b: BcName| match b {
            BcName::Neumann => Bc::Neumann,
            BcName::Dirichlet => Bc::Dirichlet,
        };
        let bc = match self.bc {
            BcSpec::Both(b) => BoundaryCondition::new(bc(b), bc(b)),
            BcSpec::Ends([l, r]) => BoundaryCondition::new(bc(l), bc(r)),
        };
        SlProblem::new(scale, Interval::new(lo, hi), a, v, bc).map_err(|e| CliError::config("sl", e.to_string()))
    }
}

/// Lattice points of the two triangles `{y ≤ x < h}` and
/// `{h ≤ x < 2h, y ≤ 2h − x}` with positive coordinates.
pub fn triangle_points(h: i64) -> Vec<Vec<i64>> {
    let y = (1..h).flat_map(|x| (1..=x).map(move |r| vec![x, r]));
    let z = (h..2 * h).flat_map(move |x| (1..=2 * h - x).map(move |r| vec![x, r]));
    y.chain(z).collect()
}

impl GraphSource {
    pub fn build(&self, field: &str) -> Result<Graph, CliError> {
        let set = [self.grid.is_some(), self.triangles.is_some(), self.edges.is_some(), self.edge_file.is_some()];
        if set.iter().filter(|&&b| b).count() != 1 {
            return Err(CliError::config(field, "set exactly one of grid, triangles, edges, edge-file"));
        }
        let err = |e: String| CliError::config(field, e);
        if let Some([k, m]) = self.grid {
            if k < 1 || m < 1 {
                return Err(err("grid sides must be positive".into()));
            }
            return Ok(Graph::grid(k, m));
        }
        if let Some(h) = self.triangles {
            if h < 2 {
                return Err(err("triangle size must be at least 2".into()));
            }
            return Graph::lattice(&triangle_points(h)).map_err(|e| err(e.to_string()));
        }
        let text = match (&self.edges, &self.edge_file) {
            (Some(t), _) => t.clone(),
            (_, Some(p)) => std::fs::read_to_string(p).map_err(|e| err(format!("{}: {e}", p.display())))?,
            _ => unreachable!("one source is set"),
        };
        let g = parse_edge_list(&text).map_err(err)?;
        if g.len() < 2 {
            return Err(err("graph needs at least two vertices".into()));
        }
        Ok(g)
    }
}

/// Index of the vertex with the given label text.
pub fn vertex(g: &Graph, label: &str, field: &str) -> Result<usize, CliError> {
    let l = parse_vertex(label).map_err(|e| CliError::config(field, e))?;
    g.find(&l).ok_or_else(|| CliError::config(field, format!("no vertex {label}")))
}
