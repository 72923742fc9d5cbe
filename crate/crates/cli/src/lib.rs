//! Command-line reports over the `nefmirror` library.
//!
//! Every subcommand produces a [`Report`]. Output is deterministic for fixed
//! arguments; timings are emitted only with `--timing`.

mod family;
mod geometry;
mod pf;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Compute(#[from] nefmirror::Error),
    #[error("cannot write {path}: {source}")]
    Output { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl Status {
    fn check(ok: bool) -> Self {
        if ok { Status::Pass } else { Status::Fail }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
    /// Written by `--out` in place of the report (a triangulation or a certificate).
    #[serde(skip)]
    pub artifact: Option<Value>,
}

impl Report {
    fn new(command: &str, inputs: Value, results: Value, status: Status) -> Self {
        Report { command: command.into(), inputs, results, status, timing_ms: None, artifact: None }
    }

    fn with_artifact(mut self, a: Value) -> Self {
        self.artifact = Some(a);
        self
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Fail => 1,
            _ => 0,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "nefmirror", version, about = "Exact reports on the (3,3) complete intersection and its mirror family")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print the report as one line of JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the report (or the command's artifact) to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Add wall-clock time to the report; makes output nondeterministic.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Args, Clone, Default)]
pub struct Source {
    /// Built-in object by name.
    #[arg(long)]
    pub builtin: Option<String>,
    /// JSON input file.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lattice polytopes and their duals.
    #[command(subcommand)]
    Polytope(PolytopeCmd),
    /// Nef-partitions of Δ and ∇.
    #[command(subcommand)]
    Nef(NefCmd),
    /// Normal and face fans.
    #[command(subcommand)]
    Fan(FanCmd),
    /// The triangulation τ(P).
    #[command(subcommand)]
    Triangulate(TriangulateCmd),
    /// Regularity of a triangulation.
    #[command(subcommand)]
    Projectivity(ProjectivityCmd),
    /// The mirror family over the toric variety of Π.
    #[command(subcommand)]
    Family(FamilyCmd),
    /// Picard–Fuchs operators and the periods.
    #[command(subcommand)]
    Pf(PfCmd),
}

#[derive(Debug, Subcommand)]
pub enum PolytopeCmd {
    /// Polar dual and reflexivity.
    Dual(Source),
    /// Lattice points.
    Points(Source),
    /// Minkowski sum of two built-in polytopes.
    Sum {
        #[arg(long, num_args = 2, default_values = ["delta1", "delta2"])]
        builtin: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum NefCmd {
    /// Dual nef-partition.
    Dual(Source),
    /// Nef-partition conditions.
    Check(Source),
}

#[derive(Debug, Subcommand)]
pub enum FanCmd {
    /// Normal fan of a polytope.
    Normal(Source),
    /// Face fan of a polytope.
    Face(Source),
    /// Normal fans of Δ and ∇ against the named cones and the face fan of P.
    Compare,
}

#[derive(Debug, Subcommand)]
pub enum TriangulateCmd {
    /// Glue τ(P) from its facet triangulations.
    Build,
    /// Check the triangulation axioms, maximality and volume.
    Verify(Source),
}

#[derive(Debug, Subcommand)]
pub enum ProjectivityCmd {
    /// Secondary-cone LP: heights with positive slack, or a witness.
    Check(Source),
}

#[derive(Debug, Subcommand)]
pub enum FamilyCmd {
    /// Rays of Π with the pulled-back nef divisors.
    Rays,
    /// Maximal cones of Π and their unimodularity.
    Cones,
    /// Jacobian rank at t = (ψ, …, ψ).
    Singular {
        #[arg(long, allow_hyphen_values = true)]
        psi: String,
    },
    /// Node certificates at every sixth root of unity.
    Odp,
    /// Affine chart presentations of named cones of Σ_∇.
    Patch {
        #[arg(long = "cone", default_values = ["U1", "C3,6"])]
        cones: Vec<String>,
        /// Specialize ψ; symbolic when omitted.
        #[arg(long, allow_hyphen_values = true)]
        psi: Option<String>,
    },
}

#[derive(Debug, Args, Clone)]
pub struct OpArgs {
    /// Built-in operator: L, L_psi or R.
    #[arg(long = "op", alias = "builtin")]
    pub op: Option<String>,
    /// Truncation order.
    #[arg(long, default_value_t = 64)]
    pub order: usize,
}

#[derive(Debug, Subcommand)]
pub enum PfCmd {
    /// L[Φ₀] = 0 and the two-term recursion.
    Annihilate(OpArgs),
    /// Indicial polynomial, residue matrix and Frobenius basis.
    Frobenius(OpArgs),
    /// Monodromy type at the origin of the operator's variable.
    Classify {
        #[command(flatten)]
        args: OpArgs,
        /// "z=0" or "psi=0".
        #[arg(long)]
        point: Option<String>,
    },
    /// Yukawa coupling against its differential equation.
    Yukawa {
        #[arg(long, default_value_t = 20)]
        order: usize,
    },
    /// Hodge–Deligne diamonds allowed at ψ = 0.
    Diamond,
}

pub fn run(cli: &Cli) -> CliResult<Report> {
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Polytope(c) => geometry::polytope(c),
        Command::Nef(c) => geometry::nef(c),
        Command::Fan(c) => geometry::fan(c),
        Command::Triangulate(c) => geometry::triangulate(c),
        Command::Projectivity(ProjectivityCmd::Check(s)) => geometry::projectivity(s),
        Command::Family(c) => family::run(c),
        Command::Pf(c) => pf::run(c),
    }?;
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

/// Renders the report for standard output.
pub fn render(report: &Report, json: bool) -> String {
    if json {
        return serde_json::to_string(report).expect("report serializes");
    }
    let status = serde_json::to_value(report.status).expect("status serializes");
    let mut out = format!("{}: {}\n", report.command, status.as_str().unwrap_or_default());
    if let Value::Object(map) = &report.results {
        for (k, v) in map {
            out.push_str(&format!("  {k}: {v}\n"));
        }
    }
    if let Some(t) = report.timing_ms {
        out.push_str(&format!("  timing_ms: {t}\n"));
    }
    out
}

/// Writes `--out`: the artifact when the command has one, else the report.
pub fn write_out(report: &Report, path: &PathBuf) -> CliResult<()> {
    let body = match &report.artifact {
        Some(a) => serde_json::to_string_pretty(a),
        None => serde_json::to_string_pretty(report),
    }
    .expect("JSON serializes");
    std::fs::write(path, body + "\n").map_err(|source| CliError::Output { path: path.clone(), source })
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("malformed JSON in {}: {e}", path.display())))
}
