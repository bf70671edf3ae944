//! Job specifications, serialization and reports.
//!
//! A [`JobSpec`] describes one computation (restricted root system,
//! arrangement statistics, good gradings of a nilpotent, a classical pyramid,
//! a table reproduction or a picture). [`run`] evaluates it into a versioned
//! [`ResultDocument`] whose rationals are exact fraction strings, plus
//! optional Graphviz DOT and SVG side outputs. [`main_with_args`] is the
//! command-line front end used by the `lie-gradings` binary.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::{json, Value};
use thiserror::Error;

use crate::arrange::{arrangement_stats, chamber_orbits, ArrangeError, Arrangement, ArrangementStats};
use crate::exact::{floor_q, fmt_q, gcd_i64, qi, QMatrix, Rational};
use crate::fixtures::{self, AdjacencyFixture, TableRow};
use crate::grading::{
    display_order, oracle_check, perm_group_closure, AdjacencyGraph, Characteristic, GoodGradingPolytope,
    GradingAnalysis, GradingError, NilpotentDatum,
};
use crate::pyramids::{classical_oracle, ClassicalAnalysis, ClassicalNilpotent, ClassicalType, Partition, PyramidError};
use crate::restrict::{restricted_weyl, Budget, RestrictError, RestrictedRootSystem};
use crate::rootsys::{parse_type, CartanType, ChevalleyAlgebra, RootSystem, RootSystemError};

/// Serializes a rational as the exact fraction string `"num/den"`.
pub fn ser_q<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(x))
}

/// Serializes a slice of rationals as fraction strings.
pub fn ser_q_vec<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(fmt_q))
}

/// Serializes a list of rational vectors as nested fraction strings.
pub fn ser_q_vec_vec<S: Serializer>(v: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.iter().map(fmt_q).collect::<Vec<_>>()))
}

fn qs(v: &[Rational]) -> Vec<String> {
    v.iter().map(fmt_q).collect()
}

fn qss(m: &[Vec<Rational>]) -> Vec<Vec<String>> {
    m.iter().map(|r| qs(r)).collect()
}

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Failure of a job. [`CliError::exit_code`] maps it to the process status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("enumeration budget exceeded while computing {what} (partial count {partial})")]
    BudgetExceeded { what: String, partial: u128 },
    #[error("computation failed: {0}")]
    Compute(String),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    /// `2` for an exceeded budget, `1` for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::BudgetExceeded { .. } => 2,
            _ => 1,
        }
    }
}

impl From<RestrictError> for CliError {
    fn from(e: RestrictError) -> Self {
        match e {
            RestrictError::BudgetExceeded { what, partial } => CliError::BudgetExceeded { what, partial },
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<GradingError> for CliError {
    fn from(e: GradingError) -> Self {
        match e {
            GradingError::BudgetExceeded { what, partial } => CliError::BudgetExceeded { what, partial },
            GradingError::Restrict(r) => r.into(),
            GradingError::Exact(x) => CliError::Compute(x.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<PyramidError> for CliError {
    fn from(e: PyramidError) -> Self {
        match e {
            PyramidError::Grading(g) => g.into(),
            PyramidError::Exact(x) => CliError::Compute(x.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<ArrangeError> for CliError {
    fn from(e: ArrangeError) -> Self {
        match e {
            ArrangeError::Restrict(r) => r.into(),
            other => CliError::Compute(other.to_string()),
        }
    }
}

impl From<RootSystemError> for CliError {
    fn from(e: RootSystemError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<RenderError> for CliError {
    fn from(e: RenderError) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Failure to draw a picture.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("only 2-dimensional pictures can be drawn (dimension is {0})")]
    DimensionNot2(usize),
    #[error("the region is unbounded")]
    Unbounded,
}

// ---------------------------------------------------------------------------
// Job specification
// ---------------------------------------------------------------------------

/// What a job computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Restrict,
    Arrange,
    Grading,
    Pyramid,
    Tables,
    Render,
}

/// A root system with a node subset and, for gradings, labels on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootInput {
    pub kind: CartanType,
    pub rank: usize,
    /// The user's node labels read along the diagram (for `E_n`: the chain
    /// `1,3,4,…,n` of Bourbaki nodes, then the branch node `2`).
    pub order: Vec<usize>,
    /// `J` in the user's node labels.
    pub j: Vec<usize>,
    /// Labels on `J` (same order as `j`); `None` means all 2.
    pub labels: Option<Vec<i64>>,
}

/// A classical Lie algebra with the partition of a nilpotent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalInput {
    pub kind: ClassicalType,
    pub partition: Vec<usize>,
}

/// Which bundled table rows to reproduce.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TablesScope {
    /// A single system (`None`: every bundled system).
    pub system: Option<(CartanType, usize)>,
    /// A single row, by its Levi type (e.g. `A3+A2`).
    pub row: Option<String>,
    /// Rows whose published chamber count exceeds this are skipped.
    pub max_chambers: u64,
}

/// The input family of a job; exactly one per job.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JobInput {
    Root(RootInput),
    Classical(ClassicalInput),
    Tables(TablesScope),
}

/// Output destinations; `None` means "not requested".
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outputs {
    pub json: Option<PathBuf>,
    pub dot: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

/// A fully validated job.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    pub mode: Mode,
    pub input: JobInput,
    /// Include the integral good gradings and their classes.
    pub integral: bool,
    /// Include the adjacency graph (and in `tables`, the graph fixtures).
    pub graph: bool,
    pub outputs: Outputs,
    /// Maximum number of states of any enumeration.
    pub budget: usize,
    /// Seed for the sampled cross-check against the direct rank test; the
    /// check runs only when a seed is given.
    pub seed: Option<u64>,
}

impl JobSpec {
    fn budget(&self) -> Budget {
        Budget { states: self.budget }
    }

    /// A root-system job with default options.
    pub fn root(mode: Mode, kind: CartanType, rank: usize, j: &[usize]) -> Self {
        JobSpec {
            mode,
            input: JobInput::Root(RootInput {
                kind,
                rank,
                order: NodeOrder::bourbaki(rank).display_list(kind),
                j: j.to_vec(),
                labels: None,
            }),
            integral: false,
            graph: false,
            outputs: Outputs::default(),
            budget: Budget::default().states,
            seed: None,
        }
    }

    /// A classical pyramid job with default options.
    pub fn classical(kind: ClassicalType, partition: &[usize]) -> Self {
        JobSpec {
            mode: Mode::Pyramid,
            input: JobInput::Classical(ClassicalInput { kind, partition: partition.to_vec() }),
            integral: false,
            graph: false,
            outputs: Outputs::default(),
            budget: Budget::default().states,
            seed: None,
        }
    }
}

/// The user's numbering of Dynkin nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeOrder {
    /// User label (1-based) of each Bourbaki node (0-based index).
    user_of: Vec<usize>,
}

impl NodeOrder {
    pub fn bourbaki(rank: usize) -> Self {
        NodeOrder { user_of: (1..=rank).collect() }
    }

    /// Builds the numbering from the user's labels read along the diagram
    /// in [`display_order`].
    pub fn from_display_list(kind: CartanType, rank: usize, list: &[usize]) -> Result<Self, CliError> {
        let mut sorted = list.to_vec();
        sorted.sort_unstable();
        if sorted != (1..=rank).collect::<Vec<_>>() {
            return Err(CliError::Input(format!("--order must be a permutation of 1..{rank}, got {list:?}")));
        }
        let mut user_of = vec![0; rank];
        for (pos, &b) in display_order(kind, rank).iter().enumerate() {
            user_of[b] = list[pos];
        }
        Ok(NodeOrder { user_of })
    }

    /// The user's labels read along the diagram.
    pub fn display_list(&self, kind: CartanType) -> Vec<usize> {
        display_order(kind, self.user_of.len()).iter().map(|&b| self.user_of[b]).collect()
    }

    pub fn user(&self, bourbaki: usize) -> usize {
        self.user_of[bourbaki]
    }

    pub fn to_bourbaki(&self, user: usize) -> Option<usize> {
        self.user_of.iter().position(|&u| u == user)
    }
}

// ---------------------------------------------------------------------------
// Command line
// ---------------------------------------------------------------------------

/// Restricted root systems, good gradings and adjacency graphs in exact
/// arithmetic.
#[derive(Debug, Parser)]
#[command(name = "lie-gradings", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Restricted root system Φ^J: roots, Cartan matrix, chambers, W^J, h^J.
    Restrict(Flags),
    /// Arrangement statistics of Φ^J: characteristic polynomial, exponents.
    Arrange(Flags),
    /// Good-grading polytope and integral good gradings of a nilpotent.
    Grading(Flags),
    /// Classical nilpotent from its pyramid (--type sl|sp|so --partition).
    Pyramid(Flags),
    /// Reproduce bundled tables (--type E7 or --type E7:A3+A2 for one row).
    Tables(Flags),
    /// Draw a 2-dimensional good-grading polytope as SVG.
    Render(Flags),
}

impl Command {
    fn split(self) -> (Mode, Flags) {
        match self {
            Command::Restrict(f) => (Mode::Restrict, f),
            Command::Arrange(f) => (Mode::Arrange, f),
            Command::Grading(f) => (Mode::Grading, f),
            Command::Pyramid(f) => (Mode::Pyramid, f),
            Command::Tables(f) => (Mode::Tables, f),
            Command::Render(f) => (Mode::Render, f),
        }
    }
}

/// Flags shared by all subcommands; also the keys of a config file.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Root system (E7, or E with --rank 7), or sl/sp/so for pyramids.
    #[arg(long = "type")]
    pub root_type: Option<String>,
    #[arg(long)]
    pub rank: Option<usize>,
    /// Node labels read along the diagram, e.g. 3,4,2,5,6,7,1 for E7.
    #[arg(long)]
    pub order: Option<String>,
    /// Node subset J, in the numbering given by --order.
    #[arg(long = "J", allow_hyphen_values = true)]
    pub j: Option<String>,
    /// Labels (0 or 2) on the nodes of J, in the order of --J.
    #[arg(long)]
    pub labels: Option<String>,
    #[arg(long)]
    pub partition: Option<String>,
    /// Report the integral good gradings and their classes.
    #[arg(long)]
    pub integral: bool,
    /// Report the adjacency graph.
    #[arg(long)]
    pub graph: bool,
    #[arg(long, value_name = "OUT")]
    pub svg: Option<PathBuf>,
    #[arg(long, value_name = "OUT")]
    pub dot: Option<PathBuf>,
    #[arg(long, value_name = "OUT")]
    pub json: Option<PathBuf>,
    /// Maximum number of states of any enumeration.
    #[arg(long, value_name = "N")]
    pub budget: Option<usize>,
    #[arg(long, value_name = "N")]
    pub seed: Option<u64>,
    /// Flat `key = value` file with defaults for any of the flags above.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
}

impl Flags {
    /// Parses a flat `key = value` config (`#` starts a comment).
    pub fn from_config(text: &str) -> Result<Self, CliError> {
        let mut f = Flags::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| CliError::Input(format!("config line {}: expected key = value", n + 1)))?;
            let value = value.trim_matches('"').to_string();
            let num = |v: &str| -> Result<u64, CliError> {
                v.parse().map_err(|_| CliError::Input(format!("config line {}: {key} must be a number", n + 1)))
            };
            let flag = |v: &str| -> Result<bool, CliError> {
                match v {
                    "true" | "yes" | "1" => Ok(true),
                    "false" | "no" | "0" => Ok(false),
                    _ => Err(CliError::Input(format!("config line {}: {key} must be true or false", n + 1))),
                }
            };
            match key.trim_start_matches("--") {
                "type" => f.root_type = Some(value),
                "rank" => f.rank = Some(num(&value)? as usize),
                "order" => f.order = Some(value),
                "J" | "j" => f.j = Some(value),
                "labels" => f.labels = Some(value),
                "partition" => f.partition = Some(value),
                "integral" => f.integral = flag(&value)?,
                "graph" => f.graph = flag(&value)?,
                "svg" => f.svg = Some(value.into()),
                "dot" => f.dot = Some(value.into()),
                "json" => f.json = Some(value.into()),
                "budget" => f.budget = Some(num(&value)? as usize),
                "seed" => f.seed = Some(num(&value)?),
                other => return Err(CliError::Input(format!("config line {}: unknown key {other:?}", n + 1))),
            }
        }
        Ok(f)
    }

    /// Combines command-line flags with config defaults; the command line
    /// wins on conflict.
    pub fn merged_over(self, config: Flags) -> Flags {
        Flags {
            root_type: self.root_type.or(config.root_type),
            rank: self.rank.or(config.rank),
            order: self.order.or(config.order),
            j: self.j.or(config.j),
            labels: self.labels.or(config.labels),
            partition: self.partition.or(config.partition),
            integral: self.integral || config.integral,
            graph: self.graph || config.graph,
            svg: self.svg.or(config.svg),
            dot: self.dot.or(config.dot),
            json: self.json.or(config.json),
            budget: self.budget.or(config.budget),
            seed: self.seed.or(config.seed),
            config: self.config,
        }
    }
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, CliError> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| CliError::Input(format!("cannot parse {what} entry {t:?}"))))
        .collect()
}

fn parse_root_type(ty: &str, rank: Option<usize>) -> Result<(CartanType, usize), CliError> {
    let ty = ty.trim();
    if ty.len() == 1 {
        let kind: CartanType = ty.parse()?;
        let rank = rank.ok_or_else(|| CliError::Input(format!("--type {ty} needs --rank")))?;
        return Ok((kind, rank));
    }
    let (kind, r) = parse_type(ty)?;
    if let Some(given) = rank {
        if given != r {
            return Err(CliError::Input(format!("--type {ty} conflicts with --rank {given}")));
        }
    }
    Ok((kind, r))
}

fn is_classical(ty: &str) -> bool {
    matches!(ty.trim().to_ascii_lowercase().as_str(), "sl" | "sp" | "so")
}

impl JobSpec {
    /// Validates flags into a job.
    pub fn from_flags(mode: Mode, f: &Flags) -> Result<Self, CliError> {
        let budget = f.budget.unwrap_or(Budget::default().states);
        if budget == 0 {
            return Err(CliError::Input("--budget must be positive".into()));
        }
        let input = match mode {
            Mode::Tables => {
                let system = match f.root_type.as_deref().map(str::trim) {
                    None | Some("") | Some("all") => (None, None),
                    Some(t) => {
                        let (sys, row) = match t.split_once(':') {
                            Some((s, r)) => (s, Some(r.trim().to_string())),
                            None => (t, None),
                        };
                        (Some(parse_root_type(sys, f.rank)?), row)
                    }
                };
                if let Some((kind, rank)) = system.0 {
                    if fixtures::table(kind, rank).is_none() {
                        return Err(CliError::Input(format!("no bundled table for {kind}{rank}")));
                    }
                }
                JobInput::Tables(TablesScope {
                    system: system.0,
                    row: system.1,
                    max_chambers: (budget / 100).max(1) as u64,
                })
            }
            _ => {
                let ty = f.root_type.as_deref().ok_or_else(|| CliError::Input("--type is required".into()))?;
                if mode == Mode::Pyramid || (mode == Mode::Render && (is_classical(ty) || f.partition.is_some())) {
                    let kind: ClassicalType = ty.parse()?;
                    let part = f.partition.as_deref().ok_or_else(|| CliError::Input("--partition is required".into()))?;
                    let partition: Partition = part.parse()?;
                    partition.validate(kind)?;
                    JobInput::Classical(ClassicalInput { kind, partition: partition.0 })
                } else {
                    if f.partition.is_some() {
                        return Err(CliError::Input("--partition applies only to sl/sp/so pyramids".into()));
                    }
                    let (kind, rank) = parse_root_type(ty, f.rank)?;
                    RootSystem::build(kind, rank)?;
                    let order = match &f.order {
                        Some(o) => NodeOrder::from_display_list(kind, rank, &parse_list::<usize>(o, "--order")?)?,
                        None => NodeOrder::bourbaki(rank),
                    };
                    let j: Vec<usize> = match &f.j {
                        Some(s) => parse_list(s, "--J")?,
                        None => return Err(CliError::Input("--J is required (use --J \"\" for the empty set)".into())),
                    };
                    if let Some(bad) = j.iter().find(|&&u| order.to_bourbaki(u).is_none()) {
                        return Err(CliError::Input(format!("node {bad} is not in 1..{rank}")));
                    }
                    let distinct: BTreeSet<usize> = j.iter().copied().collect();
                    if distinct.len() != j.len() {
                        return Err(CliError::Input(format!("--J has repeated nodes: {j:?}")));
                    }
                    let labels = match &f.labels {
                        Some(s) => {
                            let l: Vec<i64> = parse_list(s, "--labels")?;
                            if l.len() != j.len() {
                                return Err(CliError::Input(format!(
                                    "--labels has {} entries but --J has {}",
                                    l.len(),
                                    j.len()
                                )));
                            }
                            Some(l)
                        }
                        None => None,
                    };
                    JobInput::Root(RootInput { kind, rank, order: order.display_list(kind), j, labels })
                }
            }
        };
        Ok(JobSpec {
            mode,
            input,
            integral: f.integral,
            graph: f.graph || f.dot.is_some(),
            outputs: Outputs { json: f.json.clone(), dot: f.dot.clone(), svg: f.svg.clone() },
            budget,
            seed: f.seed,
        })
    }
}

// ---------------------------------------------------------------------------
// Result document
// ---------------------------------------------------------------------------

/// Where the numbers came from and what was cut short.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub budget_exceeded: bool,
    /// Alternative algorithms used because the primary one was over budget.
    pub fallbacks: Vec<String>,
    pub notes: Vec<String>,
}

/// The versioned JSON result of a job.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub format: String,
    pub version: u32,
    pub generator: String,
    pub job: JobSpec,
    pub result: Value,
    pub provenance: Provenance,
}

impl ResultDocument {
    fn new(job: &JobSpec, result: Value, provenance: Provenance) -> Self {
        ResultDocument {
            format: "lie-gradings-result".into(),
            version: 1,
            generator: format!("lie-gradings {}", env!("CARGO_PKG_VERSION")),
            job: job.clone(),
            result,
            provenance,
        }
    }

    /// The document emitted when a job runs out of budget.
    pub fn partial(job: &JobSpec, what: &str, partial: u128) -> Self {
        ResultDocument::new(
            job,
            json!({ "incomplete": true, "stopped_at": what, "partial_count": partial.to_string() }),
            Provenance {
                budget_exceeded: true,
                fallbacks: vec![],
                notes: vec![format!("budget of {} states exceeded while computing {what}", job.budget)],
            },
        )
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }
}

/// A finished job: the document, optional side outputs and a short
/// human-readable summary.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub document: ResultDocument,
    pub dot: Option<String>,
    pub svg: Option<String>,
    pub summary: Vec<String>,
}

/// Evaluates a job.
pub fn run(spec: &JobSpec) -> Result<Outcome, CliError> {
    match (&spec.mode, &spec.input) {
        (Mode::Restrict, JobInput::Root(r)) => run_restrict(spec, r),
        (Mode::Arrange, JobInput::Root(r)) => run_arrange(spec, r),
        (Mode::Grading, JobInput::Root(r)) => run_grading(spec, r),
        (Mode::Render, JobInput::Root(r)) => run_grading(spec, r),
        (Mode::Pyramid, JobInput::Classical(c)) | (Mode::Render, JobInput::Classical(c)) => run_pyramid(spec, c),
        (Mode::Tables, JobInput::Tables(scope)) => run_tables(spec, scope),
        (mode, _) => Err(CliError::Input(format!("the input does not fit mode {mode:?}"))),
    }
}

// ---------------------------------------------------------------------------
// Root-system jobs
// ---------------------------------------------------------------------------

/// Restricted coordinates presented in the user's numbering: the nodes of
/// `I` sorted by user label.
struct Frame {
    order: NodeOrder,
    /// `perm[a]` is the internal position of the `a`-th user coordinate.
    perm: Vec<usize>,
    i_user: Vec<usize>,
}

impl Frame {
    fn new(rrs: &RestrictedRootSystem, order: NodeOrder) -> Self {
        let mut pos: Vec<usize> = (0..rrs.i().len()).collect();
        pos.sort_by_key(|&a| order.user(rrs.i()[a]));
        let i_user = pos.iter().map(|&a| order.user(rrs.i()[a])).collect();
        Frame { order, perm: pos, i_user }
    }

    fn vec<T: Clone>(&self, v: &[T]) -> Vec<T> {
        self.perm.iter().map(|&a| v[a].clone()).collect()
    }

    fn mat<T: Clone>(&self, m: &[Vec<T>]) -> Vec<Vec<T>> {
        self.perm.iter().map(|&a| self.perm.iter().map(|&b| m[a][b].clone()).collect()).collect()
    }

    fn users(&self, bourbaki: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = bourbaki.iter().map(|&b| self.order.user(b)).collect();
        v.sort_unstable();
        v
    }

    /// `2α1+4α2` style name of a restricted root (internal coordinates).
    fn name(&self, coeffs: &[i64]) -> String {
        let c = self.vec(coeffs);
        let mut s = String::new();
        for (k, &x) in c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let sign = if x < 0 { "-" } else if s.is_empty() { "" } else { "+" };
            let mag = if x.abs() == 1 { String::new() } else { x.abs().to_string() };
            let _ = write!(s, "{sign}{mag}α{}", self.i_user[k]);
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    fn root_json(&self, coeffs: &[i64]) -> Value {
        json!({ "coefficients": self.vec(coeffs), "name": self.name(coeffs) })
    }
}

fn setup_root(r: &RootInput) -> Result<(RootSystem, NodeOrder, Vec<usize>), CliError> {
    let rs = RootSystem::build(r.kind, r.rank)?;
    let order = NodeOrder::from_display_list(r.kind, r.rank, &r.order)?;
    let mut j0: Vec<usize> = r.j.iter().map(|&u| order.to_bourbaki(u).expect("validated")).collect();
    j0.sort_unstable();
    Ok((rs, order, j0))
}

fn stats_json(frame: &Frame, rrs: &RestrictedRootSystem, s: &ArrangementStats) -> Value {
    let base_names: Vec<String> = s.coxeter.base.0.iter().map(|&k| frame.name(rrs.root(k))).collect();
    json!({
        "hyperplanes": s.hyperplanes,
        "chambers": s.chambers,
        "restricted_weyl_order": s.restricted_weyl_order as u64,
        "levi_class_size": s.levi_class_size,
        "levi_class": s.levi_class.iter().map(|k| frame.users(k)).collect::<Vec<_>>(),
        "coxeter_h": s.coxeter_h,
        "coxeter_base": {
            "K": frame.users(&s.coxeter.k),
            "base": base_names,
            "standard": s.coxeter.standard,
            "cartan_matrix": qss(&rrs.restricted_cartan(&s.coxeter.base).to_rows()),
        },
        "exponents": s.exponents,
        "characteristic_polynomial": s.char_poly,
        "sommers_tested": s.sommers_tested,
    })
}

fn stats_provenance(s: &ArrangementStats) -> Provenance {
    Provenance { budget_exceeded: false, fallbacks: s.provenance.clone(), notes: vec![] }
}

fn stats_line(s: &ArrangementStats) -> String {
    format!(
        "|A^J| = {}, |C^J| = {}, |W^J| = {}, |K_J| = {}, h^J = {}, exponents {:?}",
        s.hyperplanes, s.chambers, s.restricted_weyl_order, s.levi_class_size, s.coxeter_h, s.exponents
    )
}

fn run_restrict(spec: &JobSpec, r: &RootInput) -> Result<Outcome, CliError> {
    let (rs, order, j0) = setup_root(r)?;
    let rrs = RestrictedRootSystem::new(&rs, &j0)?;
    let frame = Frame::new(&rrs, order);
    let budget = spec.budget();
    let stats = arrangement_stats(&rs, &j0, budget)?;
    let mut prov = stats_provenance(&stats);

    let chambers = rrs.all_chambers(budget)?;
    let weyl = match restricted_weyl(&rrs, budget.capped(crate::restrict::ORBIT_ATTEMPT_STATES)) {
        Ok(w) => w,
        Err(RestrictError::BudgetExceeded { .. }) => crate::restrict::restricted_weyl_from_chambers(&rrs, &chambers),
        Err(e) => return Err(e.into()),
    };
    let elements = match &weyl.elements {
        Some(e) => e.clone(),
        None => perm_group_closure(&weyl.generator_perms, rrs.len(), budget)?,
    };
    let signs: Vec<u128> = chambers.iter().map(|c| c.signs).collect();
    let orbits = chamber_orbits(&rrs, &signs, &elements);
    let regular = orbits.iter().all(|&o| o as u128 == weyl.order);
    let np = rrs.num_positive();
    let theta = rrs.restricted_highest_root();
    let result = json!({
        "type": format!("{}{}", r.kind, r.rank),
        "J": frame.users(&j0),
        "I": frame.i_user,
        "dim": rrs.dim(),
        "roots": rrs.len(),
        "positive_roots": (0..np).map(|k| frame.root_json(rrs.root(k))).collect::<Vec<_>>(),
        "highest_root": frame.root_json(&theta),
        "cartan_matrix": qss(&frame.mat(&standard_cartan(&rrs).to_rows())),
        "chambers": chambers.len(),
        "chamber_orbits": orbits,
        "regular_orbits": regular,
        "restricted_weyl": {
            "order": weyl.order as u64,
            "method": weyl.method,
            "orbit_size": weyl.orbit_size.map(|o| o as u64),
            "generators": weyl.generators.iter().map(|m| frame.mat(m)).collect::<Vec<_>>(),
        },
        "statistics": stats_json(&frame, &rrs, &stats),
        "checks": {
            "difference_closure": rrs.check_difference_closure(),
            "proportional_multiples": rrs.check_proportional_multiples(),
        },
    });
    if weyl.orbit_size.is_none() {
        prov.notes.push(format!("W^J obtained by: {}", weyl.method));
    }
    let svg = match &spec.outputs.svg {
        Some(_) => Some(render_arrangement_svg(
            &frame_functionals(&frame, &rrs.roots()[..np]),
            Some(restricted_metric(&frame, &rrs)?),
        )?),
        None => None,
    };
    let summary = vec![
        format!("{}{} J = {:?}: Φ^J has {} roots in dimension {}", r.kind, r.rank, r.j, rrs.len(), rrs.dim()),
        format!("θ^J = {}", frame.name(&theta)),
        format!("chambers {} in W^J-orbits {:?}", chambers.len(), orbits),
        stats_line(&stats),
    ];
    Ok(Outcome { document: ResultDocument::new(spec, result, prov), dot: None, svg, summary })
}

/// Restricted Cartan matrix of the standard base, in internal order.
fn standard_cartan(rrs: &RestrictedRootSystem) -> QMatrix {
    rrs.restricted_cartan(&rrs.standard_base())
}

fn frame_functionals(frame: &Frame, f: &[Vec<i64>]) -> Vec<Vec<i64>> {
    f.iter().map(|v| frame.vec(v)).collect()
}

fn run_arrange(spec: &JobSpec, r: &RootInput) -> Result<Outcome, CliError> {
    let (rs, order, j0) = setup_root(r)?;
    let rrs = RestrictedRootSystem::new(&rs, &j0)?;
    let frame = Frame::new(&rrs, order);
    let stats = arrangement_stats(&rs, &j0, spec.budget())?;
    let arr = Arrangement::restricted(&rrs);
    let result = json!({
        "type": format!("{}{}", r.kind, r.rank),
        "J": frame.users(&j0),
        "I": frame.i_user,
        "dim": arr.dim,
        "normals": frame_functionals(&frame, &arr.normals),
        "statistics": stats_json(&frame, &rrs, &stats),
        "identities": crate::arrange::check_identities(&stats).is_ok(),
    });
    let svg = match &spec.outputs.svg {
        Some(_) => Some(render_arrangement_svg(
            &frame_functionals(&frame, &arr.normals),
            Some(restricted_metric(&frame, &rrs)?),
        )?),
        None => None,
    };
    let summary = vec![
        format!("{}{} J = {:?}: χ(t) coefficients {:?}", r.kind, r.rank, r.j, stats.char_poly),
        stats_line(&stats),
    ];
    Ok(Outcome { document: ResultDocument::new(spec, result, stats_provenance(&stats)), dot: None, svg, summary })
}

/// Metric on point coordinates `p_i = α_i(p)`: the inverse of the Gram
/// matrix of the simple restricted roots.
fn restricted_metric(frame: &Frame, rrs: &RestrictedRootSystem) -> Result<[[f64; 2]; 2], CliError> {
    if rrs.dim() != 2 {
        return Err(RenderError::DimensionNot2(rrs.dim()).into());
    }
    let g = frame.mat(&rrs.schur_gram().to_rows());
    let inv = QMatrix::from_rows(&g).and_then(|m| m.inverse()).map_err(|e| CliError::Compute(e.to_string()))?;
    Ok(metric_2x2(&inv.to_rows()))
}

fn metric_2x2(m: &[Vec<Rational>]) -> [[f64; 2]; 2] {
    let f = |x: &Rational| x.to_f64().unwrap_or(0.0);
    [[f(&m[0][0]), f(&m[0][1])], [f(&m[1][0]), f(&m[1][1])]]
}

fn run_grading(spec: &JobSpec, r: &RootInput) -> Result<Outcome, CliError> {
    let (rs, order, _) = setup_root(r)?;
    let j_b: Vec<usize> = r.j.iter().map(|&u| order.to_bourbaki(u).expect("validated")).collect();
    let labels = r.labels.clone().unwrap_or_else(|| vec![2; j_b.len()]);
    let datum = NilpotentDatum::new(r.rank, &j_b, &labels)?;
    let budget = spec.budget();
    let g = GradingAnalysis::compute(&rs, &datum, budget)?;
    let rrs = &g.rrs;
    let frame = Frame::new(rrs, order);
    let kind = r.kind;
    let np = rrs.num_positive();
    let dec = &g.decomposition;

    let h_by_node: Vec<Value> = (0..r.rank)
        .map(|b| json!({ "node": frame.order.user(b), "value": fmt_q(&g.h_labels[b]) }))
        .collect();
    let roots: Vec<Value> = (0..np)
        .map(|k| {
            json!({
                "root": frame.root_json(rrs.root(k)),
                "d": dec.d[k],
                "multiplicities": dec.sequence(k),
                "reductive": dec.circ.contains(&k),
            })
        })
        .collect();
    let poly = &g.polytope;
    let mut result = json!({
        "type": format!("{}{}", kind, r.rank),
        "J": frame.users(&datum.j),
        "I": frame.i_user,
        "labelled_diagram": Characteristic(g.h_labels.clone()).display_commas(kind),
        "h_labels": h_by_node,
        "centralizer_dim": dec.centralizer_dim(),
        "restricted_roots": roots,
        "polytope": polytope_json(&frame, poly),
        "restricted_weyl": {
            "order": g.weyl.order as u64,
            "method": g.weyl.method,
            "generators": g.weyl.generators.iter().map(|m| frame.mat(m)).collect::<Vec<_>>(),
        },
        "components": {
            "simple_reductive_roots": g.components.simple_circ.iter().map(|&k| frame.root_json(rrs.root(k))).collect::<Vec<_>>(),
            "reductive_weyl_order": g.components.circ_weyl_order as u64,
            "component_group_order": g.components.z_order as u64,
            "we_order": g.components.we_order as u64,
        },
        "we_invariant": g.check_we_invariance(),
    });
    let mut summary = vec![
        format!("{}{} J = {:?} labels {:?}", kind, r.rank, r.j, labels),
        format!("labelled diagram {}", Characteristic(g.h_labels.clone()).display_commas(kind)),
        format!(
            "polytope in dimension {} with {} facets; |W_e| = {}, |W_e°| = {}, |Z_e| = {}",
            poly.dim,
            poly.facets.len(),
            g.components.we_order,
            g.components.circ_weyl_order,
            g.components.z_order
        ),
    ];
    let char_of = |p: &[Rational]| crate::grading::grading_characteristic(rrs, &g.h_labels, p);
    if spec.integral || spec.graph {
        let classes: Vec<Value> = g
            .classes
            .iter()
            .map(|c| {
                let ch = char_of(&c.representative);
                json!({
                    "representative": qs(&frame.vec(&c.representative)),
                    "size": c.members.len(),
                    "characteristic": ch.display(kind),
                    "characteristic_labels": qs(&ch.0),
                })
            })
            .collect();
        result["integral_points"] = json!(g.integral_points.iter().map(|p| qs(&frame.vec(p))).collect::<Vec<_>>());
        result["classes"] = json!(classes);
        summary.push(format!("{} integral good gradings in {} classes", g.integral_points.len(), g.classes.len()));
    }
    let mut dot = None;
    if spec.graph {
        result["graph"] = graph_json(&g.graph, kind, |p| qs(&frame.vec(p)));
        let name = format!("{}{} J={:?}", kind, r.rank, r.j);
        dot = Some(graph_to_dot(&name, &g.graph, kind));
        summary.push(format!("adjacency graph: {} nodes, {} edges", g.graph.nodes.len(), g.graph.edges.len()));
    }
    let mut prov = Provenance { fallbacks: g.provenance.clone(), ..Default::default() };
    if let Some(seed) = spec.seed {
        if datum.is_principal() {
            let alg = ChevalleyAlgebra::new(&rs);
            let samples = poly.sample_points(seed, 20, 40)?;
            let mut mismatches = 0usize;
            for p in &samples {
                let report = oracle_check(&alg, rrs, &datum, &g.h_labels, p)?;
                if report.good != poly.contains(p) {
                    mismatches += 1;
                }
            }
            result["oracle_check"] = json!({ "seed": seed, "points": samples.len(), "mismatches": mismatches });
            summary.push(format!("direct rank test on {} sample points: {mismatches} mismatches", samples.len()));
        } else {
            prov.notes.push("direct rank test skipped: it needs a principal-in-Levi nilpotent".into());
        }
    }
    let svg = match &spec.outputs.svg {
        Some(_) => Some(grading_svg(&g, &frame)?),
        None if spec.mode == Mode::Render => Some(grading_svg(&g, &frame)?),
        None => None,
    };
    Ok(Outcome { document: ResultDocument::new(spec, result, prov), dot, svg, summary })
}

fn grading_svg(g: &GradingAnalysis, frame: &Frame) -> Result<String, CliError> {
    let metric = restricted_metric(frame, &g.rrs)?;
    let poly = reframe_polytope(frame, &g.polytope)?;
    let points: Vec<Vec<Rational>> = g.integral_points.iter().map(|p| frame.vec(p)).collect();
    Ok(render_polytope_svg(&poly, &poly.functionals, &points, Some(metric))?)
}

fn reframe_polytope(frame: &Frame, poly: &GoodGradingPolytope) -> Result<GoodGradingPolytope, CliError> {
    Ok(GoodGradingPolytope::new(poly.dim, frame_functionals(frame, &poly.functionals), poly.bounds.clone())?)
}

fn polytope_json(frame: &Frame, poly: &GoodGradingPolytope) -> Value {
    json!({
        "dim": poly.dim,
        "constraints": poly.functionals.iter().zip(&poly.bounds)
            .map(|(f, b)| json!({ "functional": frame.vec(f), "bound": fmt_q(b) }))
            .collect::<Vec<_>>(),
        "facets": poly.facets.iter()
            .map(|f| json!({ "functional": frame.vec(&f.functional), "bound": fmt_q(&f.bound) }))
            .collect::<Vec<_>>(),
    })
}

fn graph_json(graph: &AdjacencyGraph, kind: CartanType, point: impl Fn(&[Rational]) -> Vec<String>) -> Value {
    json!({
        "nodes": graph.nodes.iter().map(|n| json!({
            "characteristic": n.characteristic.display(kind),
            "label": n.characteristic.display_commas(kind),
            "representative": point(&n.representative),
            "class_size": n.class_size,
            "dynkin": n.dynkin,
        })).collect::<Vec<_>>(),
        "edges": graph.edges,
        "connected": graph.is_connected(),
    })
}

// ---------------------------------------------------------------------------
// Classical jobs
// ---------------------------------------------------------------------------

fn run_pyramid(spec: &JobSpec, c: &ClassicalInput) -> Result<Outcome, CliError> {
    let partition = Partition::new(&c.partition)?;
    let a = ClassicalAnalysis::compute(c.kind, &partition, spec.budget())?;
    let cn = &a.nilpotent;
    let (ct, ct_rank) = cn.cartan_type();
    let mut result = json!({
        "type": c.kind.to_string(),
        "N": partition.total(),
        "partition": partition.0,
        "cartan_type": format!("{ct}{ct_rank}"),
        "pyramid": cn.pyramid.render().lines().map(str::to_string).collect::<Vec<_>>(),
        "e": cn.pyramid.format_e(),
        "h": cn.h,
        "row_lengths": cn.lambda_bar,
        "roots": cn.roots.iter().map(|r| json!({ "root": r.name, "functional": r.functional, "d": r.d })).collect::<Vec<_>>(),
        "coordinates": match c.kind {
            ClassicalType::Sl => "y_k = p_k - p_{k+1}",
            _ => "y_k = p_k",
        },
        "polytope": {
            "dim": cn.polytope.dim,
            "facets": cn.polytope.facets.iter()
                .map(|f| json!({ "functional": f.functional, "bound": fmt_q(&f.bound) }))
                .collect::<Vec<_>>(),
        },
        "we_generators": cn.we_generators,
        "we_order": a.we_order,
        "reductive_weyl_order": a.circ_weyl_order,
        "component_group_order": a.z_order,
    });
    let mut summary = vec![
        format!("{} {} (type {ct}{ct_rank})", c.kind, partition),
        format!("e = {}", cn.pyramid.format_e()),
        format!(
            "polytope in dimension {} with {} facets; |W_e| = {}, |Z_e| = {}",
            cn.polytope.dim,
            cn.polytope.facets.len(),
            a.we_order,
            a.z_order
        ),
    ];
    if spec.integral || spec.graph {
        result["integral_points"] = json!(a.integral_points.iter().map(|p| qs(p)).collect::<Vec<_>>());
        result["characteristics"] = json!(a.characteristics.iter().map(|ch| ch.display_commas(ct)).collect::<Vec<_>>());
        result["classes"] = json!(a
            .classes
            .iter()
            .map(|cl| json!({
                "representative": qs(&cl.representative),
                "size": cl.members.len(),
                "characteristic": a.characteristics[cl.members[0]].display_commas(ct),
            }))
            .collect::<Vec<_>>());
        summary.push(format!("{} integral good gradings in {} classes", a.integral_points.len(), a.classes.len()));
        for (p, ch) in a.integral_points.iter().zip(&a.characteristics) {
            summary.push(format!("  p = ({}) -> ({})", qs(p).join(","), ch.display_commas(ct)));
        }
    }
    let mut dot = None;
    if spec.graph {
        result["graph"] = graph_json(&a.graph, ct, qs);
        dot = Some(graph_to_dot(&format!("{} {}", c.kind, partition), &a.graph, ct));
    }
    let mut prov = Provenance::default();
    if c.kind == ClassicalType::So {
        prov.notes.push(
            "so: e is built from the pyramid with signs fixed by the invariant form; \
             entries touching the zero box carry coefficient 2 because that basis vector has square length 2"
                .into(),
        );
    }
    if let Some(seed) = spec.seed {
        let samples = cn.polytope.sample_points(seed, 20, 40)?;
        let mut mismatches = 0usize;
        for y in &samples {
            let report = classical_oracle(cn, &cn.from_coords(y))?;
            if report.good != cn.polytope.contains(y) {
                mismatches += 1;
            }
        }
        result["oracle_check"] = json!({ "seed": seed, "points": samples.len(), "mismatches": mismatches });
        summary.push(format!("direct rank test on {} sample points: {mismatches} mismatches", samples.len()));
    }
    let svg = if spec.outputs.svg.is_some() || spec.mode == Mode::Render {
        Some(classical_svg(&a)?)
    } else {
        None
    };
    Ok(Outcome { document: ResultDocument::new(spec, result, prov), dot, svg, summary })
}

/// Draws a 2-dimensional classical polytope with the metric induced by the
/// trace form, `|p|² = Σ λ̄_i p_i²`.
fn classical_svg(a: &ClassicalAnalysis) -> Result<String, CliError> {
    let cn: &ClassicalNilpotent = &a.nilpotent;
    if cn.polytope.dim != 2 {
        return Err(RenderError::DimensionNot2(cn.polytope.dim).into());
    }
    let p = cn.coords_to_p.to_rows();
    let mut m = vec![vec![Rational::zero(); 2]; 2];
    for (i, row) in p.iter().enumerate() {
        let w = qi(cn.lambda_bar[i] as i64);
        for a_ in 0..2 {
            for b in 0..2 {
                m[a_][b] = &m[a_][b] + &w * &row[a_] * &row[b];
            }
        }
    }
    let ys: Vec<Vec<Rational>> = a
        .integral_points
        .iter()
        .map(|pt| cn.to_coords(pt))
        .collect::<Result<_, _>>()?;
    let functionals: Vec<Vec<i64>> = cn.polytope.functionals.clone();
    Ok(render_polytope_svg(&cn.polytope, &functionals, &ys, Some(metric_2x2(&m)))?)
}

// ---------------------------------------------------------------------------
// Tables
// ---------------------------------------------------------------------------

/// The six tabulated invariants of one restricted root system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowValues {
    pub hyperplanes: usize,
    pub chambers: u64,
    pub restricted_weyl_order: u64,
    pub levi_class_size: usize,
    pub coxeter_h: i64,
    pub exponents: Vec<i64>,
}

impl RowValues {
    fn published(row: &TableRow) -> Self {
        RowValues {
            hyperplanes: row.hyperplanes,
            chambers: row.chambers,
            restricted_weyl_order: row.restricted_weyl_order as u64,
            levi_class_size: row.levi_class_size,
            coxeter_h: row.coxeter_h,
            exponents: row.exponents.to_vec(),
        }
    }

    fn computed(s: &ArrangementStats) -> Self {
        RowValues {
            hyperplanes: s.hyperplanes,
            chambers: s.chambers,
            restricted_weyl_order: s.restricted_weyl_order as u64,
            levi_class_size: s.levi_class_size,
            coxeter_h: s.coxeter_h,
            exponents: s.exponents.clone(),
        }
    }

    /// Which of the counting identities the values violate (empty when
    /// consistent).
    pub fn inconsistencies(&self) -> Vec<String> {
        let mut out = Vec::new();
        let sum: i64 = self.exponents.iter().sum();
        if sum != self.hyperplanes as i64 {
            out.push(format!("exponent sum {sum} ≠ {} hyperplanes", self.hyperplanes));
        }
        let prod: i64 = self.exponents.iter().map(|b| 1 + b).product();
        if prod as u64 != self.chambers {
            out.push(format!("Π(1+b) = {prod} ≠ {} chambers", self.chambers));
        }
        if self.restricted_weyl_order * self.levi_class_size as u64 != self.chambers {
            out.push(format!(
                "|W^J|·|K_J| = {} ≠ {} chambers",
                self.restricted_weyl_order * self.levi_class_size as u64,
                self.chambers
            ));
        }
        out
    }
}

impl std::fmt::Display for RowValues {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let e: Vec<String> = self.exponents.iter().map(|x| x.to_string()).collect();
        write!(
            f,
            "({},{},{},{},{},{{{}}})",
            self.hyperplanes,
            self.chambers,
            self.restricted_weyl_order,
            self.levi_class_size,
            self.coxeter_h,
            e.join(",")
        )
    }
}

/// Outcome of one comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Error,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
            Status::Error => "ERROR",
        })
    }
}

/// Comparison of one table row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowReport {
    pub system: String,
    pub levi: String,
    pub j: Vec<usize>,
    pub status: Status,
    pub published: RowValues,
    pub computed: Option<RowValues>,
    pub notes: Vec<String>,
}

impl std::fmt::Display for RowReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {} {:<10} published {}", self.status, self.system, self.levi, self.published)?;
        if let Some(c) = &self.computed {
            if *c != self.published {
                write!(f, " computed {c}")?;
            }
        }
        for n in &self.notes {
            write!(f, " [{n}]")?;
        }
        Ok(())
    }
}

/// Recomputes one bundled row and compares.
pub fn check_table_row(kind: CartanType, rank: usize, row: &TableRow, budget: Budget) -> RowReport {
    let published = RowValues::published(row);
    let mut notes: Vec<String> =
        published.inconsistencies().into_iter().map(|s| format!("published row inconsistent: {s}")).collect();
    let mut report = RowReport {
        system: format!("{kind}{rank}"),
        levi: row.levi.to_string(),
        j: row.j.to_vec(),
        status: Status::Error,
        published,
        computed: None,
        notes: vec![],
    };
    let rs = match RootSystem::build(kind, rank) {
        Ok(rs) => rs,
        Err(e) => {
            notes.push(e.to_string());
            report.notes = notes;
            return report;
        }
    };
    let j0: Vec<usize> = row.j.iter().map(|x| x - 1).collect();
    match arrangement_stats(&rs, &j0, budget) {
        Ok(s) => {
            let c = RowValues::computed(&s);
            report.status = if c == report.published { Status::Pass } else { Status::Fail };
            notes.extend(s.provenance.iter().cloned());
            report.computed = Some(c);
        }
        Err(ArrangeError::Restrict(RestrictError::BudgetExceeded { what, .. })) => {
            report.status = Status::Skipped;
            notes.push(format!("over budget ({what})"));
        }
        Err(e) => notes.push(e.to_string()),
    }
    report.notes = notes;
    report
}

/// Comparison of one published adjacency graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphReport {
    pub system: String,
    pub name: String,
    pub status: Status,
    pub published_nodes: Vec<String>,
    pub computed_nodes: Vec<String>,
    pub published_edges: Vec<(String, String)>,
    pub computed_edges: Vec<(String, String)>,
    pub published_dynkin: String,
    pub computed_dynkin: Option<String>,
    pub notes: Vec<String>,
}

impl std::fmt::Display for GraphReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {} {} graph: {} nodes / {} edges, Dynkin node {}",
            self.status,
            self.system,
            self.name,
            self.computed_nodes.len(),
            self.computed_edges.len(),
            self.computed_dynkin.as_deref().unwrap_or("-")
        )?;
        for n in &self.notes {
            write!(f, " [{n}]")?;
        }
        Ok(())
    }
}

/// Recomputes a bundled adjacency graph and compares node labels, edges
/// and the Dynkin node.
pub fn check_adjacency_fixture(fx: &AdjacencyFixture, budget: Budget) -> GraphReport {
    let mut published_nodes: Vec<String> = fx.nodes.iter().map(|s| s.to_string()).collect();
    published_nodes.sort();
    let mut published_edges: Vec<(String, String)> = fx
        .edges
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (fx.nodes[a].to_string(), fx.nodes[b].to_string());
            if x <= y {
                (x, y)
            } else {
                (y, x)
            }
        })
        .collect();
    published_edges.sort();
    let mut report = GraphReport {
        system: format!("{}{}", fx.kind, fx.rank),
        name: fx.name.to_string(),
        status: Status::Error,
        published_nodes,
        computed_nodes: vec![],
        published_edges,
        computed_edges: vec![],
        published_dynkin: fx.nodes[fx.dynkin].to_string(),
        computed_dynkin: None,
        notes: vec![],
    };
    let j0: Vec<usize> = fx.j.iter().map(|x| x - 1).collect();
    let computed = RootSystem::build(fx.kind, fx.rank)
        .map_err(CliError::from)
        .and_then(|rs| {
            let datum = NilpotentDatum::new(fx.rank, &j0, fx.labels)?;
            Ok(GradingAnalysis::compute(&rs, &datum, budget)?)
        });
    match computed {
        Ok(g) => {
            let (nodes, edges) = g.graph.canonical(fx.kind);
            report.computed_nodes = nodes;
            report.computed_edges = edges;
            report.computed_dynkin = g.graph.nodes.iter().find(|n| n.dynkin).map(|n| n.characteristic.display(fx.kind));
            let ok = report.computed_nodes == report.published_nodes
                && report.computed_edges == report.published_edges
                && report.computed_dynkin.as_deref() == Some(report.published_dynkin.as_str());
            report.status = if ok { Status::Pass } else { Status::Fail };
        }
        Err(CliError::BudgetExceeded { what, .. }) => {
            report.status = Status::Skipped;
            report.notes.push(format!("over budget ({what})"));
        }
        Err(e) => report.notes.push(e.to_string()),
    }
    report
}

/// Per-row pass/fail matrix against the bundled tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TablesReport {
    pub rows: Vec<RowReport>,
    pub graphs: Vec<GraphReport>,
}

impl TablesReport {
    pub fn count(&self, status: Status) -> usize {
        self.rows.iter().filter(|r| r.status == status).count()
            + self.graphs.iter().filter(|g| g.status == status).count()
    }
}

const BUNDLED_SYSTEMS: [(CartanType, usize); 5] =
    [(CartanType::G, 2), (CartanType::F, 4), (CartanType::E, 6), (CartanType::E, 7), (CartanType::E, 8)];

/// Reproduces the bundled table rows in `scope` (and, with `graphs`, the
/// adjacency-graph fixtures of the same systems).
pub fn tables_report(scope: &TablesScope, budget: Budget, graphs: bool) -> TablesReport {
    let systems: Vec<(CartanType, usize)> = match scope.system {
        Some(s) => vec![s],
        None => BUNDLED_SYSTEMS.to_vec(),
    };
    let mut rows = Vec::new();
    let mut graph_reports = Vec::new();
    for (kind, rank) in systems {
        for row in fixtures::table(kind, rank).unwrap_or(&[]) {
            if scope.row.as_deref().is_some_and(|name| name != row.levi) {
                continue;
            }
            if row.chambers > scope.max_chambers {
                let published = RowValues::published(row);
                let notes = vec![format!("{} chambers exceeds the row limit {}", row.chambers, scope.max_chambers)];
                rows.push(RowReport {
                    system: format!("{kind}{rank}"),
                    levi: row.levi.to_string(),
                    j: row.j.to_vec(),
                    status: Status::Skipped,
                    published,
                    computed: None,
                    notes,
                });
                continue;
            }
            rows.push(check_table_row(kind, rank, row, budget));
        }
        if graphs {
            for fx in fixtures::ADJACENCY_FIXTURES.iter().filter(|f| f.kind == kind && f.rank == rank) {
                if scope.row.as_deref().is_some_and(|name| name != fx.name) {
                    continue;
                }
                graph_reports.push(check_adjacency_fixture(fx, budget));
            }
        }
    }
    TablesReport { rows, graphs: graph_reports }
}

fn run_tables(spec: &JobSpec, scope: &TablesScope) -> Result<Outcome, CliError> {
    let report = tables_report(scope, spec.budget(), spec.graph);
    if report.rows.is_empty() && report.graphs.is_empty() {
        return Err(CliError::Input("no bundled rows match the requested scope".into()));
    }
    let mut summary: Vec<String> = report.rows.iter().map(|r| r.to_string()).collect();
    summary.extend(report.graphs.iter().map(|g| g.to_string()));
    summary.push(format!(
        "{} passed, {} failed, {} skipped, {} errors",
        report.count(Status::Pass),
        report.count(Status::Fail),
        report.count(Status::Skipped),
        report.count(Status::Error)
    ));
    let result = serde_json::to_value(&report).expect("reports serialize");
    Ok(Outcome { document: ResultDocument::new(spec, result, Provenance::default()), dot: None, svg: None, summary })
}

// ---------------------------------------------------------------------------
// DOT
// ---------------------------------------------------------------------------

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering of an adjacency graph. Node labels are the
/// characteristics joined with commas; the Dynkin grading is drawn bold and
/// carries `dynkin=true`.
pub fn graph_to_dot(name: &str, graph: &AdjacencyGraph, kind: CartanType) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "graph \"{}\" {{", dot_escape(name));
    let _ = writeln!(s, "  node [shape=box, fontname=\"monospace\"];");
    for (i, n) in graph.nodes.iter().enumerate() {
        let label = dot_escape(&n.characteristic.display_commas(kind));
        if n.dynkin {
            let _ = writeln!(
                s,
                "  n{i} [label=\"{label}\", class_size={}, dynkin=true, style=bold, penwidth=2];",
                n.class_size
            );
        } else {
            let _ = writeln!(s, "  n{i} [label=\"{label}\", class_size={}, dynkin=false];", n.class_size);
        }
    }
    for &(a, b) in &graph.edges {
        let _ = writeln!(s, "  n{a} -- n{b};");
    }
    s.push_str("}\n");
    s
}

// ---------------------------------------------------------------------------
// SVG
// ---------------------------------------------------------------------------

const CANVAS: f64 = 500.0;
const MARGIN: f64 = 30.0;

fn eval2(f: &[Rational; 2], y: &[Rational; 2]) -> Rational {
    &f[0] * &y[0] + &f[1] * &y[1]
}

/// Vertices of the closed polygon `{|f(y)| ≤ b}` in cyclic order.
fn polygon(poly: &GoodGradingPolytope) -> Result<Vec<[Rational; 2]>, RenderError> {
    let lines: Vec<([Rational; 2], Rational)> = poly
        .facets
        .iter()
        .flat_map(|f| {
            let n = [qi(f.functional[0]), qi(f.functional[1])];
            [(n.clone(), f.bound.clone()), (n, -f.bound.clone())]
        })
        .collect();
    let inside = |y: &[Rational; 2]| {
        poly.facets.iter().all(|f| {
            let n = [qi(f.functional[0]), qi(f.functional[1])];
            eval2(&n, y).abs() <= f.bound
        })
    };
    let mut verts: Vec<[Rational; 2]> = Vec::new();
    for a in 0..lines.len() {
        for b in a + 1..lines.len() {
            let (na, ca) = &lines[a];
            let (nb, cb) = &lines[b];
            let det = &na[0] * &nb[1] - &na[1] * &nb[0];
            if det.is_zero() {
                continue;
            }
            let v = [(ca * &nb[1] - &na[1] * cb) / &det, (&na[0] * cb - ca * &nb[0]) / &det];
            if inside(&v) && !verts.contains(&v) {
                verts.push(v);
            }
        }
    }
    if verts.len() < 3 {
        return Err(RenderError::Unbounded);
    }
    let f = |x: &Rational| x.to_f64().unwrap_or(0.0);
    let cx = verts.iter().map(|v| f(&v[0])).sum::<f64>() / verts.len() as f64;
    let cy = verts.iter().map(|v| f(&v[1])).sum::<f64>() / verts.len() as f64;
    verts.sort_by(|a, b| {
        let ta = (f(&a[1]) - cy).atan2(f(&a[0]) - cx);
        let tb = (f(&b[1]) - cy).atan2(f(&b[0]) - cx);
        ta.total_cmp(&tb)
    });
    Ok(verts)
}

/// Segment of `{f(y) = k}` inside a convex polygon, if it crosses the interior.
fn chord(verts: &[[Rational; 2]], f: &[Rational; 2], k: &Rational) -> Option<([Rational; 2], [Rational; 2])> {
    let mut hits: Vec<[Rational; 2]> = Vec::new();
    for i in 0..verts.len() {
        let a = &verts[i];
        let b = &verts[(i + 1) % verts.len()];
        let sa = eval2(f, a) - k;
        let sb = eval2(f, b) - k;
        if sa.is_zero() {
            if !hits.contains(a) {
                hits.push(a.clone());
            }
        } else if (sa.is_positive() && sb.is_negative()) || (sa.is_negative() && sb.is_positive()) {
            let t = &sa / (&sa - &sb);
            let p = [&a[0] + (&b[0] - &a[0]) * &t, &a[1] + (&b[1] - &a[1]) * &t];
            if !hits.contains(&p) {
                hits.push(p);
            }
        }
    }
    (hits.len() >= 2).then(|| (hits[0].clone(), hits[1].clone()))
}

/// Linear map to the plane realising `metric` (`|y|² = yᵀ M y`).
fn embed(metric: Option<[[f64; 2]; 2]>) -> impl Fn(&[f64; 2]) -> [f64; 2] {
    let [[a, b], [_, c]] = metric.unwrap_or([[1.0, 0.0], [0.0, 1.0]]);
    let s = a.sqrt();
    let t = (c - b * b / a).max(0.0).sqrt();
    move |y: &[f64; 2]| [s * y[0] + b / s * y[1], t * y[1]]
}

struct Viewport {
    scale: f64,
    ox: f64,
    oy: f64,
}

impl Viewport {
    fn fit(pts: &[[f64; 2]]) -> Self {
        let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for p in pts {
            x0 = x0.min(p[0]);
            x1 = x1.max(p[0]);
            y0 = y0.min(p[1]);
            y1 = y1.max(p[1]);
        }
        let span = (x1 - x0).max(y1 - y0).max(1e-9);
        let scale = (CANVAS - 2.0 * MARGIN) / span;
        Viewport {
            scale,
            ox: CANVAS / 2.0 - scale * (x0 + x1) / 2.0,
            oy: CANVAS / 2.0 + scale * (y0 + y1) / 2.0,
        }
    }

    fn px(&self, p: &[f64; 2]) -> (f64, f64) {
        (self.ox + self.scale * p[0], self.oy - self.scale * p[1])
    }
}

fn svg_header(title: &str) -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{CANVAS}\" height=\"{CANVAS}\" viewBox=\"0 0 {CANVAS} {CANVAS}\">\n\
         <title>{title}</title>\n\
         <rect x=\"0\" y=\"0\" width=\"{CANVAS}\" height=\"{CANVAS}\" fill=\"white\"/>\n"
    )
}

/// SVG 1.1 picture of a 2-dimensional polytope: its boundary, the affine
/// hyperplanes `{f(y) = k}` (`k ∈ ℤ`, `f` in `hyperplanes`) that cross it,
/// and the given points. `metric` is the inner product on coordinates used
/// to draw angles faithfully (identity when `None`).
pub fn render_polytope_svg(
    poly: &GoodGradingPolytope,
    hyperplanes: &[Vec<i64>],
    points: &[Vec<Rational>],
    metric: Option<[[f64; 2]; 2]>,
) -> Result<String, RenderError> {
    if poly.dim != 2 {
        return Err(RenderError::DimensionNot2(poly.dim));
    }
    let verts = polygon(poly)?;
    let to_f = |v: &[Rational]| [v[0].to_f64().unwrap_or(0.0), v[1].to_f64().unwrap_or(0.0)];
    let map = embed(metric);
    let screen: Vec<[f64; 2]> = verts.iter().map(|v| map(&to_f(v))).collect();
    let view = Viewport::fit(&screen);

    let mut seen: BTreeSet<(Vec<i64>, Rational)> = BTreeSet::new();
    let mut chords = Vec::new();
    for h in hyperplanes {
        if h.len() != 2 || h.iter().all(|&x| x == 0) {
            continue;
        }
        let g = gcd_i64(h[0], h[1]).abs();
        let f = [qi(h[0]), qi(h[1])];
        let vals: Vec<Rational> = verts.iter().map(|v| eval2(&f, v)).collect();
        let lo = vals.iter().min().expect("nonempty").clone();
        let hi = vals.iter().max().expect("nonempty").clone();
        let mut k: num_bigint::BigInt = floor_q(&lo) + 1;
        while Rational::from_integer(k.clone()) < hi {
            let kq = Rational::from_integer(k.clone());
            let key = (vec![h[0] / g, h[1] / g], &kq / qi(g));
            if seen.insert(key) {
                if let Some(seg) = chord(&verts, &f, &kq) {
                    chords.push(seg);
                }
            }
            k += 1;
        }
    }

    let mut s = svg_header("good grading polytope");
    let pts: Vec<String> = screen
        .iter()
        .map(|p| {
            let (x, y) = view.px(p);
            format!("{x:.3},{y:.3}")
        })
        .collect();
    let _ = writeln!(s, "<polygon points=\"{}\" fill=\"#eef3fb\" stroke=\"none\"/>", pts.join(" "));
    for (a, b) in &chords {
        let (x1, y1) = view.px(&map(&to_f(a)));
        let (x2, y2) = view.px(&map(&to_f(b)));
        let _ = writeln!(
            s,
            "<line x1=\"{x1:.3}\" y1=\"{y1:.3}\" x2=\"{x2:.3}\" y2=\"{y2:.3}\" stroke=\"#8a8a8a\" stroke-width=\"1\"/>"
        );
    }
    let _ = writeln!(
        s,
        "<polygon points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>",
        pts.join(" ")
    );
    for p in points {
        if p.len() != 2 {
            continue;
        }
        let (x, y) = view.px(&map(&to_f(p)));
        let origin = p.iter().all(|c| c.is_zero());
        let (r, fill) = if origin { (6.0, "black") } else { (5.0, "#c0392b") };
        let _ = writeln!(
            s,
            "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"{r}\" fill=\"{fill}\"><title>({})</title></circle>",
            qs(p).join(",")
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

/// SVG 1.1 picture of a central arrangement of lines in the plane.
pub fn render_arrangement_svg(normals: &[Vec<i64>], metric: Option<[[f64; 2]; 2]>) -> Result<String, RenderError> {
    if let Some(n) = normals.iter().find(|n| n.len() != 2) {
        return Err(RenderError::DimensionNot2(n.len()));
    }
    let map = embed(metric);
    // With the metric M, the line {f·y = 0} has direction M⁻¹-orthogonal
    // to f; the kernel direction (−f₁, f₀) is metric independent.
    let mut dirs: Vec<[f64; 2]> = normals
        .iter()
        .map(|n| {
            let d = map(&[-(n[1] as f64), n[0] as f64]);
            let len = (d[0] * d[0] + d[1] * d[1]).sqrt();
            [d[0] / len, d[1] / len]
        })
        .collect();
    dirs.dedup();
    let r = CANVAS / 2.0 - MARGIN;
    let c = CANVAS / 2.0;
    let mut s = svg_header("restricted arrangement");
    let _ = writeln!(s, "<circle cx=\"{c}\" cy=\"{c}\" r=\"{r}\" fill=\"#eef3fb\" stroke=\"none\"/>");
    for d in dirs {
        let _ = writeln!(
            s,
            "<line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"black\" stroke-width=\"1.5\"/>",
            c - r * d[0],
            c + r * d[1],
            c + r * d[0],
            c - r * d[1]
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |source| CliError::Io { path: path.display().to_string(), source };
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    std::fs::write(&tmp, contents).map_err(io)?;
    std::fs::rename(&tmp, path).map_err(io)
}

fn emit(spec: &JobSpec, outcome: &Outcome) -> Result<(), CliError> {
    match &spec.outputs.json {
        Some(path) => {
            write_atomic(path, &outcome.document.to_json())?;
            for line in &outcome.summary {
                println!("{line}");
            }
        }
        None if spec.mode != Mode::Render => {
            print!("{}", outcome.document.to_json());
            if spec.mode == Mode::Tables {
                for line in &outcome.summary {
                    eprintln!("{line}");
                }
            }
        }
        None => {}
    }
    if let (Some(path), Some(dot)) = (&spec.outputs.dot, &outcome.dot) {
        write_atomic(path, dot)?;
    }
    match (&spec.outputs.svg, &outcome.svg) {
        (Some(path), Some(svg)) => write_atomic(path, svg)?,
        (None, Some(svg)) if spec.mode == Mode::Render => print!("{svg}"),
        _ => {}
    }
    Ok(())
}

/// Parses arguments, runs the job and writes its outputs. Returns the
/// process exit code: 0 on success, 1 on input errors, 2 when a budget was
/// exceeded (a partial document flagged `budget_exceeded` is still written).
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let (mode, flags) = cli.command.split();
    let flags = match &flags.config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => match Flags::from_config(&text) {
                Ok(cfg) => flags.merged_over(cfg),
                Err(e) => {
                    eprintln!("error: {e}");
                    return 1;
                }
            },
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return 1;
            }
        },
        None => flags,
    };
    let spec = match JobSpec::from_flags(mode, &flags) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let result = run(&spec).and_then(|outcome| emit(&spec, &outcome));
    match result {
        Ok(()) => 0,
        Err(CliError::BudgetExceeded { what, partial }) => {
            eprintln!("error: enumeration budget exceeded while computing {what} (partial count {partial})");
            let doc = ResultDocument::partial(&spec, &what, partial);
            let written = match &spec.outputs.json {
                Some(path) => write_atomic(path, &doc.to_json()),
                None => {
                    print!("{}", doc.to_json());
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
            }
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flags(args: &[&str]) -> (Mode, Flags) {
        let mut v = vec!["lie-gradings"];
        v.extend_from_slice(args);
        Cli::try_parse_from(v).unwrap().command.split()
    }

    #[test]
    fn node_order_round_trip() {
        let o = NodeOrder::from_display_list(CartanType::E, 7, &[3, 4, 2, 5, 6, 7, 1]).unwrap();
        assert_eq!(o.to_bourbaki(1), Some(1));
        assert_eq!(o.to_bourbaki(3), Some(0));
        assert_eq!(o.to_bourbaki(2), Some(3));
        assert_eq!(o.display_list(CartanType::E), vec![3, 4, 2, 5, 6, 7, 1]);
        assert!(NodeOrder::from_display_list(CartanType::E, 7, &[1, 2, 3]).is_err());
    }

    #[test]
    fn config_values_yield_to_flags() {
        let cfg = Flags::from_config("# defaults\ntype = E6\nJ = 1,3\nbudget = 500\ngraph = true\n").unwrap();
        let (_, f) = flags(&["grading", "--type", "E7", "--J", "1,3,4,6,7"]);
        let m = f.merged_over(cfg);
        assert_eq!(m.root_type.as_deref(), Some("E7"));
        assert_eq!(m.j.as_deref(), Some("1,3,4,6,7"));
        assert_eq!(m.budget, Some(500));
        assert!(m.graph);
        assert!(Flags::from_config("colour = red").is_err());
    }

    #[test]
    fn empty_j_and_bad_inputs() {
        let (mode, f) = flags(&["restrict", "--type", "G2", "--J", ""]);
        let spec = JobSpec::from_flags(mode, &f).unwrap();
        match &spec.input {
            JobInput::Root(r) => assert!(r.j.is_empty()),
            other => panic!("{other:?}"),
        }
        let (mode, f) = flags(&["restrict", "--type", "G2", "--J", "3"]);
        assert_eq!(JobSpec::from_flags(mode, &f).unwrap_err().exit_code(), 1);
        let (mode, f) = flags(&["grading", "--type", "E6", "--J", "1,3", "--labels", "2"]);
        assert!(JobSpec::from_flags(mode, &f).is_err());
        let (mode, f) = flags(&["pyramid", "--type", "sp", "--partition", "3,2"]);
        assert!(JobSpec::from_flags(mode, &f).is_err());
    }

    #[test]
    fn documents_round_trip() {
        let spec = JobSpec::root(Mode::Restrict, CartanType::G, 2, &[1]);
        let doc = run(&spec).unwrap().document;
        let text = doc.to_json();
        let back: ResultDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let mut spec = JobSpec::root(Mode::Restrict, CartanType::E, 6, &[]);
        spec.budget = 10;
        let err = run(&spec).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn square_without_hyperplanes() {
        let poly = GoodGradingPolytope::new(2, vec![vec![1, 0], vec![0, 1]], vec![qi(1), qi(1)]).unwrap();
        let svg = render_polytope_svg(&poly, &[], &[vec![qi(0), qi(0)]], None).unwrap();
        assert_eq!(svg.matches("<line").count(), 0);
        assert_eq!(svg.matches("<circle").count(), 1);
        let svg = render_polytope_svg(&poly, &poly.functionals, &[], None).unwrap();
        // x = 0 and y = 0 cross the open square.
        assert_eq!(svg.matches("<line").count(), 2);
        let line = GoodGradingPolytope::new(1, vec![vec![1]], vec![qi(1)]).unwrap();
        assert_eq!(render_polytope_svg(&line, &[], &[], None), Err(RenderError::DimensionNot2(1)));
    }

    #[test]
    fn dot_marks_the_dynkin_node() {
        let a = ClassicalAnalysis::compute(ClassicalType::Sl, &"3,3,2".parse().unwrap(), Budget::default()).unwrap();
        let dot = graph_to_dot("sl8", &a.graph, CartanType::A);
        assert_eq!(dot.matches("dynkin=true").count(), 1);
        assert!(dot.contains("label=\"0,2,0,0,2,0,0\""));
    }
}
