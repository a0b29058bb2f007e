//! Command-line front end. Every command prints one JSON record per
//! invocation (or a plain listing with `--pretty`).
//!
//! Exit codes: 0 the property holds, 1 it fails (witness in the payload),
//! 2 usage or input error.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::{json, Value};

use crate::construct::{self, ConstructionId, CATALOG};
use crate::error::{Error, Result};
use crate::graphs::{build_hypercube, hypercube_index, is_resolving_general, Graph};
use crate::hypercube::{Dimension, Landmarks};
use crate::resolve::{distance_vector, is_minimal, is_resolving, is_resolving_fast, VerificationReport};
use crate::sample;
use crate::search::{self, SearchOptions};

pub const SCHEMA_VERSION: &str = "1";

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "mdim", version, about = "Resolving sets and metric dimension of hypercubes")]
pub struct Cli {
    /// Worker threads (default: MDIM_THREADS, else all cores).
    #[arg(long, global = true, env = "MDIM_THREADS")]
    pub threads: Option<usize>,

    /// Human-readable output instead of a JSON record.
    #[arg(long, global = true)]
    pub pretty: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check whether a landmark set resolves Q^n.
    Verify(VerifyArgs),
    /// List the members whose removal keeps the set resolving.
    Minimal(SetArgs),
    /// Print a named construction (or the catalog with --list).
    Construct(ConstructArgs),
    /// Metric dimension of Q^n by exhaustive search.
    Dimension(DimensionArgs),
    /// List every resolving set of a given size.
    Enumerate(EnumerateArgs),
    /// Check a landmark set on a graph read from an edge-list file.
    GraphVerify(GraphVerifyArgs),
    /// Write Q^n in the edge-list format.
    HypercubeEdges(HypercubeEdgesArgs),
    /// Randomised property checks.
    Property(PropertyArgs),
}

#[derive(Debug, Args)]
pub struct SetArgs {
    #[arg(long)]
    pub n: u32,
    /// Comma-separated vertices: binary strings or set notation like {2,3}.
    #[arg(long)]
    pub set: String,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub set: SetArgs,
    /// Use the level-class verifier.
    #[arg(long)]
    pub fast: bool,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, required_unless_present = "list")]
    pub name: Option<String>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub list: bool,
}

#[derive(Debug, Args)]
pub struct DimensionArgs {
    #[arg(long)]
    pub n: u32,
    /// Largest size searched exhaustively.
    #[arg(long)]
    pub max_k: Option<usize>,
    /// Allow exhaustive search beyond the n <= 8 guard.
    #[arg(long)]
    pub force: bool,
    /// Also reduce by coordinate permutations.
    #[arg(long)]
    pub symmetry: bool,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub k: usize,
    /// Include sets without the empty vertex (n <= 5).
    #[arg(long)]
    pub unrestricted: bool,
}

#[derive(Debug, Args)]
pub struct GraphVerifyArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Comma-separated 0-based vertex indices.
    #[arg(long)]
    pub set: String,
}

#[derive(Debug, Args)]
pub struct HypercubeEdgesArgs {
    #[arg(long)]
    pub n: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PropertyCheck {
    /// Resolving flag of S equals that of S + x.
    Translation,
    /// Resolving flag of S equals that of a coordinate-permuted S.
    Permutation,
    /// Level-class verifier agrees with the full verifier.
    FastOracle,
    /// BFS verifier on the materialised cube agrees with the bit verifier.
    GraphOracle,
    /// Lifting a resolving set to Q^(n+1) keeps it resolving.
    Lift,
}

#[derive(Debug, Args)]
pub struct PropertyArgs {
    #[arg(long, value_enum)]
    pub name: PropertyCheck,
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// What a command produced: exit code plus the text for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Serialize)]
struct OutputRecord<'a> {
    schema_version: &'static str,
    command: &'a str,
    inputs: Value,
    result: Value,
    elapsed_ms: u64,
}

/// A command's structured payload before it is wrapped into a record.
struct Payload {
    code: i32,
    inputs: Value,
    result: Value,
    /// Pre-rendered text for `--pretty`; falls back to a key listing.
    pretty: Option<String>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_HOLDS };
            let text = e.render().to_string();
            return if code == EXIT_HOLDS {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> Outcome {
    match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| dispatch(cli)),
            Err(e) => usage(&Error::InvalidArgument(format!("thread pool: {e}"))),
        },
        None => dispatch(cli),
    }
}

fn usage(e: &Error) -> Outcome {
    Outcome {
        code: EXIT_USAGE,
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}

fn dispatch(cli: &Cli) -> Outcome {
    let start = Instant::now();
    let (name, payload) = match &cli.command {
        Command::Verify(a) => ("verify", cmd_verify(a)),
        Command::Minimal(a) => ("minimal", cmd_minimal(a)),
        Command::Construct(a) => ("construct", cmd_construct(a)),
        Command::Dimension(a) => ("dimension", cmd_dimension(a)),
        Command::Enumerate(a) => ("enumerate", cmd_enumerate(a)),
        Command::GraphVerify(a) => ("graph-verify", cmd_graph_verify(a)),
        Command::HypercubeEdges(a) => {
            return match Dimension::new(a.n).and_then(build_hypercube) {
                Ok(g) => Outcome {
                    code: EXIT_HOLDS,
                    stdout: g.to_edge_list(),
                    stderr: String::new(),
                },
                Err(e) => usage(&e),
            };
        }
        Command::Property(a) => ("property", cmd_property(a)),
    };
    let payload = match payload {
        Ok(p) => p,
        Err(e) => return usage(&e),
    };
    let stdout = if cli.pretty {
        let mut s = payload
            .pretty
            .unwrap_or_else(|| render_pretty(&payload.result));
        if !s.ends_with('\n') {
            s.push('\n');
        }
        s
    } else {
        let record = OutputRecord {
            schema_version: SCHEMA_VERSION,
            command: name,
            inputs: payload.inputs,
            result: payload.result,
            elapsed_ms: start.elapsed().as_millis() as u64,
        };
        let mut s = serde_json::to_string(&record).expect("records serialize");
        s.push('\n');
        s
    };
    Outcome {
        code: payload.code,
        stdout,
        stderr: String::new(),
    }
}

fn render_pretty(v: &Value) -> String {
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k:<18} {s}"),
                other => format!("{k:<18} {other}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => other.to_string(),
    }
}

fn witness_json(report: &VerificationReport, s: &Landmarks) -> Value {
    let n = s.dimension();
    match report.witness {
        Some((u, v)) => json!({
            "u": u.to_binary(n),
            "v": v.to_binary(n),
            "distance_vector": distance_vector(u, s).entries(),
        }),
        None => Value::Null,
    }
}

fn parse_set(a: &SetArgs) -> Result<Landmarks> {
    let n = Dimension::new(a.n)?;
    Landmarks::parse(n, &a.set)
}

fn cmd_verify(a: &VerifyArgs) -> Result<Payload> {
    let s = parse_set(&a.set)?;
    let report = if a.fast {
        is_resolving_fast(&s)
    } else {
        is_resolving(&s)
    };
    Ok(Payload {
        code: if report.resolving { EXIT_HOLDS } else { EXIT_FAILS },
        inputs: json!({ "n": a.set.n, "set": s.to_binary_list(), "fast": a.fast }),
        result: json!({
            "resolving": report.resolving,
            "witness": witness_json(&report, &s),
            "vertices_checked": report.vertices_checked,
        }),
        pretty: None,
    })
}

fn cmd_minimal(a: &SetArgs) -> Result<Payload> {
    let s = parse_set(a)?;
    let n = s.dimension();
    let inputs = json!({ "n": a.n, "set": s.to_binary_list() });
    match is_minimal(&s) {
        Ok(m) => Ok(Payload {
            code: EXIT_HOLDS,
            inputs,
            result: json!({
                "resolving": true,
                "minimal": m.minimal,
                "removable": m.removable.iter().map(|v| v.to_binary(n)).collect::<Vec<_>>(),
            }),
            pretty: None,
        }),
        Err(Error::NotResolving) => {
            let report = is_resolving_fast(&s);
            Ok(Payload {
                code: EXIT_FAILS,
                inputs,
                result: json!({
                    "resolving": false,
                    "minimal": Value::Null,
                    "removable": Value::Null,
                    "witness": witness_json(&report, &s),
                    "message": "set does not resolve Q^n; minimality is undefined",
                }),
                pretty: None,
            })
        }
        Err(e) => Err(e),
    }
}

fn cmd_construct(a: &ConstructArgs) -> Result<Payload> {
    if a.list {
        let catalog: Vec<Value> = CATALOG
            .iter()
            .map(|e| {
                json!({
                    "name": e.name,
                    "parameters": e.parameters,
                    "size": e.size,
                    "provenance": e.provenance,
                })
            })
            .collect();
        let pretty = CATALOG
            .iter()
            .map(|e| format!("{:<14} {:<28} {:<28} {}", e.name, e.parameters, e.size, e.provenance))
            .collect::<Vec<_>>()
            .join("\n");
        return Ok(Payload {
            code: EXIT_HOLDS,
            inputs: json!({ "list": true }),
            result: json!({ "catalog": catalog }),
            pretty: Some(pretty),
        });
    }
    let name = a.name.as_deref().unwrap_or_default();
    let id: ConstructionId = name.parse()?;
    let s = construct::build(id, a.n, a.k)?;
    Ok(Payload {
        code: EXIT_HOLDS,
        inputs: json!({ "name": name, "n": a.n, "k": a.k }),
        result: json!({
            "n": s.dimension().get(),
            "size": s.len(),
            "set": s.to_binary_list(),
            "provenance": id.entry().provenance,
        }),
        pretty: Some(s.to_binary_list()),
    })
}

fn cmd_dimension(a: &DimensionArgs) -> Result<Payload> {
    let n = Dimension::new(a.n)?;
    let opts = SearchOptions {
        max_k: a.max_k.unwrap_or(usize::MAX),
        force: a.force,
        symmetry: a.symmetry,
    };
    let r = search::min_resolving_size_with(n, &opts)?;
    Ok(Payload {
        code: EXIT_HOLDS,
        inputs: json!({ "n": a.n, "max_k": a.max_k, "force": a.force, "symmetry": a.symmetry }),
        result: json!({
            "n": r.n.get(),
            "min_size": r.min_size,
            "example": r.example.to_binary_list(),
            "subsets_examined": r.subsets_examined,
            "exhaustive": r.exhaustive,
        }),
        pretty: None,
    })
}

fn cmd_enumerate(a: &EnumerateArgs) -> Result<Payload> {
    let n = Dimension::new(a.n)?;
    let sets: Vec<String> = search::find_all_min_sets(n, a.k, !a.unrestricted)?
        .map(|s| s.to_binary_list())
        .collect();
    Ok(Payload {
        code: EXIT_HOLDS,
        inputs: json!({ "n": a.n, "k": a.k, "normalize": !a.unrestricted }),
        pretty: Some(sets.join("\n")),
        result: json!({ "count": sets.len(), "sets": sets }),
    })
}

fn parse_indices(spec: &str) -> Result<Vec<usize>> {
    let mut offset = 0usize;
    spec.split(',')
        .enumerate()
        .map(|(i, tok)| {
            let here = offset;
            offset += tok.len() + 1;
            tok.trim().parse::<usize>().map_err(|_| Error::Parse {
                token: tok.trim().to_string(),
                position: i + 1,
                offset: here,
                reason: "expected a 0-based vertex index".into(),
            })
        })
        .collect()
}

fn cmd_graph_verify(a: &GraphVerifyArgs) -> Result<Payload> {
    let text = std::fs::read_to_string(&a.graph).map_err(|e| {
        Error::InvalidArgument(format!("cannot read {}: {e}", a.graph.display()))
    })?;
    let g = Graph::parse_edge_list(&text)?;
    let set = parse_indices(&a.set)?;
    let report = is_resolving_general(&g, &set)?;
    let witness = match report.witness {
        Some((u, v)) => json!({ "u": u.bits(), "v": v.bits() }),
        None => Value::Null,
    };
    Ok(Payload {
        code: if report.resolving { EXIT_HOLDS } else { EXIT_FAILS },
        inputs: json!({
            "graph": a.graph.display().to_string(),
            "vertex_count": g.vertex_count(),
            "set": set,
        }),
        result: json!({
            "resolving": report.resolving,
            "witness": witness,
            "vertices_checked": report.vertices_checked,
        }),
        pretty: None,
    })
}

/// First counterexample of a randomised check, described for the payload.
fn property_trial(check: PropertyCheck, n: Dimension, rng: &mut StdRng) -> Result<Option<Value>> {
    let size = rng.gen_range(1..=(n.get() as usize).max(1));
    Ok(match check {
        PropertyCheck::Translation => {
            let s = sample::random_landmarks(rng, n, size);
            let x = sample::random_vertex(rng, n);
            let t = s.translate(x)?;
            let (a, b) = (is_resolving(&s).resolving, is_resolving(&t).resolving);
            (a != b).then(|| json!({ "set": s.to_binary_list(), "x": x.to_binary(n) }))
        }
        PropertyCheck::Permutation => {
            let s = sample::random_landmarks(rng, n, size);
            let p = sample::random_permutation(rng, n);
            let t = s.permute(&p)?;
            (is_resolving(&s).resolving != is_resolving(&t).resolving)
                .then(|| json!({ "set": s.to_binary_list(), "permutation": p.images() }))
        }
        PropertyCheck::FastOracle => {
            let s = sample::random_landmarks(rng, n, size);
            let (slow, fast) = (is_resolving(&s), is_resolving_fast(&s));
            (slow.resolving != fast.resolving || slow.witness != fast.witness)
                .then(|| json!({ "set": s.to_binary_list() }))
        }
        PropertyCheck::GraphOracle => {
            let g = build_hypercube(n)?;
            let s = sample::random_landmarks(rng, n, size);
            let idx: Vec<usize> = s.members().iter().map(|&v| hypercube_index(v)).collect();
            let general = is_resolving_general(&g, &idx)?;
            let bits = is_resolving(&s);
            (general.resolving != bits.resolving || general.witness != bits.witness)
                .then(|| json!({ "set": s.to_binary_list() }))
        }
        PropertyCheck::Lift => {
            n.succ()?;
            let w = sample::random_resolving_set(rng, n);
            let lifted = construct::product_lift(&w)?;
            (!is_resolving(&lifted).resolving).then(|| json!({ "set": w.to_binary_list() }))
        }
    })
}

fn cmd_property(a: &PropertyArgs) -> Result<Payload> {
    let n = Dimension::new(a.n)?;
    let mut rng = StdRng::seed_from_u64(a.seed);
    let mut failures = 0usize;
    let mut first: Option<Value> = None;
    for _ in 0..a.trials {
        if let Some(c) = property_trial(a.name, n, &mut rng)? {
            failures += 1;
            first.get_or_insert(c);
        }
    }
    Ok(Payload {
        code: if failures == 0 { EXIT_HOLDS } else { EXIT_FAILS },
        inputs: json!({ "name": a.name, "n": a.n, "trials": a.trials, "seed": a.seed }),
        result: json!({
            "trials": a.trials,
            "failures": failures,
            "counterexample": first,
        }),
        pretty: None,
    })
}
