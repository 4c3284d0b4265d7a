//! `graphsep`: classify graph-diagonal states and emit checkable certificates.
//!
//! Exit codes: 0 biseparable, 1 genuinely multipartite entangled,
//! 2 inconclusive, 64 malformed input or usage, 65 invalid state or graph,
//! 66 unreadable input file, 69 unsupported graph or size, 70 internal
//! certificate failure, 74 output write failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use graphsep::classifier::canonical::{find_family_map, Family};
use graphsep::classifier::{verify_verdict, ComponentCertificate, CertificateKind, Decomposition};
use graphsep::oracle::{named_witnesses, oracle_crosscheck, OracleOptions, OracleReport};
use graphsep::ppt_mixture::{self, dual_witness, LpCertificate};
use graphsep::rational::{self, Rational};
use graphsep::threshold::{self, ThresholdReport};
use graphsep::{json, witness, Error, Graph, GraphDiagonalState, Verdict};
use serde_json::{json, Value};

const DEFAULT_MAX_QUBITS: usize = 6;

#[derive(Parser)]
#[command(name = "graphsep", version, about = "Genuine multipartite entanglement of graph-diagonal states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide GME or biseparability, with a certificate.
    Classify(ClassifyArgs),
    /// White-noise threshold of a graph and a verdict sweep.
    Threshold(ThresholdArgs),
    /// Print the biseparable decomposition or PPT mixture, if any.
    Decompose(ClassifyArgs),
    /// Print, validate and evaluate the catalogued witnesses of a graph.
    Witness(WitnessArgs),
    /// Solve the PPT-mixture linear program.
    Pptmix(PptmixArgs),
    /// Graph summary: cut ranks, equivalence class, optional dense cross-check.
    Graph(GraphArgs),
}

#[derive(Args, Clone)]
struct Input {
    /// Built-in graph name: C4, P5, R5, Y5, GHZ3, K4, ...
    #[arg(long, value_name = "NAME", group = "source")]
    builtin: Option<String>,
    /// State JSON file.
    #[arg(long, value_name = "FILE", group = "source")]
    state: Option<PathBuf>,
    /// Graph JSON file.
    #[arg(long, value_name = "FILE", group = "source")]
    graph: Option<PathBuf>,
    /// Mix the graph state with white noise at this weight.
    #[arg(long, value_name = "P")]
    white_noise: Option<String>,
}

#[derive(Args, Clone)]
struct Output {
    /// Exact rationals in the output (default).
    #[arg(long, conflicts_with = "float")]
    exact: bool,
    /// Render rationals as floating-point numbers.
    #[arg(long)]
    float: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    output: Output,
    /// Attach a dense cross-check of the graph.
    #[arg(long)]
    oracle: bool,
    /// Only mix over bipartitions with one Bell pair across the cut.
    #[arg(long)]
    restrict_1bp: bool,
    /// Write the witness here when the state is GME.
    #[arg(long, value_name = "FILE")]
    emit_witness: Option<PathBuf>,
    /// Write the decomposition here when one is found.
    #[arg(long, value_name = "FILE")]
    emit_decomposition: Option<PathBuf>,
}

#[derive(Args)]
struct ThresholdArgs {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    output: Output,
    /// Number of equal steps in the sweep over [0, 1]; 0 disables it.
    #[arg(long, default_value_t = 10)]
    points: usize,
}

#[derive(Args)]
struct WitnessArgs {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    output: Output,
    /// Only witnesses whose name starts with this.
    #[arg(long)]
    name: Option<String>,
}

#[derive(Args)]
struct PptmixArgs {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    output: Output,
    #[arg(long)]
    restrict_1bp: bool,
    /// Also write the problem in CPLEX LP format.
    #[arg(long, value_name = "FILE")]
    lp_file: Option<PathBuf>,
}

#[derive(Args)]
struct GraphArgs {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    output: Output,
    #[arg(long)]
    oracle: bool,
}

enum Failure {
    Lib(Error),
    Usage(String),
    NoInput(PathBuf, std::io::Error),
    Write(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 64,
            Failure::NoInput(..) => 66,
            Failure::Write(..) => 74,
            Failure::Lib(e) => match e {
                Error::Json(_) | Error::Parse(_) => 64,
                Error::InvalidState(_)
                | Error::InvalidGraph(_)
                | Error::InvalidBipartition(_)
                | Error::InvalidOperator(_)
                | Error::QubitOutOfRange { .. }
                | Error::SizeMismatch(..)
                | Error::OutOfRange(_)
                | Error::GraphMismatch(_) => 65,
                Error::TooManyQubits { .. } | Error::UnsupportedGraph(_) => 69,
                _ => 70,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Usage(m) => m.clone(),
            Failure::NoInput(p, e) => format!("cannot read {}: {e}", p.display()),
            Failure::Write(p, e) => format!("cannot write {}: {e}", p.display()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn max_qubits() -> CliResult<usize> {
    match std::env::var("GRAPHSEP_MAX_QUBITS") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("GRAPHSEP_MAX_QUBITS={v:?} is not a count"))),
        Err(_) => Ok(DEFAULT_MAX_QUBITS),
    }
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = fs::read_to_string(path).map_err(|e| Failure::NoInput(path.to_path_buf(), e))?;
    Ok(json::parse(&text)?)
}

fn write_json(path: &Path, v: &Value) -> CliResult<()> {
    fs::write(path, render(v)).map_err(|e| Failure::Write(path.to_path_buf(), e))
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

impl Input {
    fn graph(&self) -> CliResult<Graph> {
        let g = if let Some(name) = &self.builtin {
            Graph::builtin(name)?
        } else if let Some(path) = &self.graph {
            let v = read_json(path)?;
            json::graph_from_json(v.get("graph").unwrap_or(&v))?
        } else if let Some(path) = &self.state {
            json::state_from_json(&read_json(path)?)?.graph().clone()
        } else {
            return Err(Failure::Usage("give --builtin, --state or --graph".into()));
        };
        let max = max_qubits()?;
        if g.n() > max {
            return Err(Error::TooManyQubits { n: g.n(), max }.into());
        }
        Ok(g)
    }

    fn noise(&self) -> CliResult<Option<Rational>> {
        self.white_noise
            .as_deref()
            .map(|p| rational::parse_rational(p).map_err(Failure::from))
            .transpose()
    }

    fn state(&self) -> CliResult<GraphDiagonalState> {
        if let Some(path) = &self.state {
            if self.white_noise.is_some() {
                return Err(Failure::Usage("--white-noise applies to --builtin or --graph".into()));
            }
            let s = json::state_from_json(&read_json(path)?)?;
            let max = max_qubits()?;
            if s.n() > max {
                return Err(Error::TooManyQubits { n: s.n(), max }.into());
            }
            return Ok(s);
        }
        let g = self.graph()?;
        let p = self
            .noise()?
            .ok_or_else(|| Failure::Usage("--builtin and --graph need --white-noise".into()))?;
        Ok(GraphDiagonalState::white_noise(g, &p)?)
    }
}

impl Output {
    fn finish(&self, v: Value) -> Value {
        if self.float {
            floats(v)
        } else {
            v
        }
    }
}

/// Replaces every exact rational string by its nearest double.
fn floats(v: Value) -> Value {
    match v {
        Value::String(s) if s.contains('/') || s.parse::<i64>().is_ok() => {
            match rational::parse_rational(&s) {
                Ok(r) => json!(rational::to_f64(&r)),
                Err(_) => Value::String(s),
            }
        }
        Value::Array(items) => Value::Array(items.into_iter().map(floats).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, floats(v))).collect()),
        other => other,
    }
}

fn verdict_code(v: &Verdict) -> u8 {
    match v {
        Verdict::Biseparable { .. } => 0,
        Verdict::Gme { .. } => 1,
        Verdict::Inconclusive { .. } => 2,
    }
}

/// Exact threshold for white-noise input on graphs with a closed form.
fn known_threshold(g: &Graph) -> CliResult<Option<Rational>> {
    let named = ["C4", "Y5", "C5", "R5"]
        .iter()
        .any(|n| Graph::builtin(n).ok().as_ref() == Some(g));
    if !named && witness::star_center(g).is_none() {
        return Ok(None);
    }
    Ok(threshold::white_noise_threshold(g)?.exact)
}

fn oracle_json(r: &OracleReport) -> Value {
    json!({
        "consistent": r.is_consistent(1e-10),
        "max_deviation": r.max_deviation(),
        "partitions": r.partitions.iter().map(|p| json!({
            "partition": p.partition.to_string(),
            "cut_rank": p.cut_rank,
            "schmidt_rank": p.schmidt_rank,
            "invariants_hold": p.invariants_hold,
            "max_deviation": p.max_deviation,
        })).collect::<Vec<_>>(),
        "witnesses": r.witnesses.iter().map(|w| json!({
            "name": w.name,
            "valid": w.valid,
            "min_residual": w.min_residual,
        })).collect::<Vec<_>>(),
    })
}

fn restricted_verdict(s: &GraphDiagonalState) -> CliResult<Verdict> {
    let g = s.graph();
    let one_bp = g.one_bp_partitions();
    if one_bp.is_empty() {
        return Err(Error::UnsupportedGraph("no bipartition has cut rank one".into()).into());
    }
    Ok(match ppt_mixture::is_ppt_mixture(s, Some(&one_bp))? {
        LpCertificate::Feasible(dec) => {
            let mut decomposition = Decomposition::default();
            for (m, x) in dec.parts {
                decomposition.push_unnormalized(
                    g,
                    x,
                    ComponentCertificate {
                        kind: CertificateKind::Explicit,
                        partition: m,
                    },
                )?;
            }
            Verdict::Biseparable { decomposition }
        }
        LpCertificate::Infeasible(_) => Verdict::Inconclusive {
            reason: "no PPT mixture over cut-rank-one bipartitions".into(),
            ppt_mixture: None,
        },
    })
}

fn decide(args: &ClassifyArgs) -> CliResult<(GraphDiagonalState, Verdict)> {
    let s = args.input.state()?;
    let v = if args.restrict_1bp {
        restricted_verdict(&s)?
    } else {
        graphsep::classify(&s)?
    };
    verify_verdict(&v, &s)?;
    if let Some(path) = &args.emit_witness {
        if let Verdict::Gme { witness, .. } = &v {
            write_json(path, &json::witness_to_json(witness))?;
        }
    }
    if let Some(path) = &args.emit_decomposition {
        if let Some(d) = decomposition_json(&v, s.graph()) {
            write_json(path, &d)?;
        }
    }
    Ok((s, v))
}

fn decomposition_json(v: &Verdict, g: &Graph) -> Option<Value> {
    match v {
        Verdict::Biseparable { decomposition } => Some(json::decomposition_to_json(decomposition, g)),
        Verdict::Inconclusive {
            ppt_mixture: Some(d),
            ..
        } => Some(json::ppt_decomposition_to_json(d, g)),
        _ => None,
    }
}

fn classify_cmd(args: &ClassifyArgs) -> CliResult<(Value, u8)> {
    let (s, v) = decide(args)?;
    let g = s.graph();
    let threshold = if args.input.white_noise.is_some() {
        known_threshold(g)?
    } else {
        None
    };
    let mut out = json::verdict_to_json(&v, g, threshold.as_ref());
    if args.oracle {
        out["oracle"] = oracle_json(&oracle_crosscheck(g, &OracleOptions::default())?);
    }
    Ok((args.output.finish(out), verdict_code(&v)))
}

fn decompose_cmd(args: &ClassifyArgs) -> CliResult<(Value, u8)> {
    let (s, v) = decide(args)?;
    let out = match decomposition_json(&v, s.graph()) {
        Some(d) => json!({ "verdict": v.label(), "decomposition": d }),
        None => json::verdict_to_json(&v, s.graph(), None),
    };
    Ok((args.output.finish(out), verdict_code(&v)))
}

fn threshold_json(g: &Graph, r: &ThresholdReport) -> Value {
    let mut out = json!({
        "graph": json::graph_to_json(g),
        "lower": json::rational_to_json(&r.lower),
        "upper": json::rational_to_json(&r.upper),
        "rounds": r.rounds,
    });
    if let Some(t) = &r.exact {
        out["threshold"] = json::rational_to_json(t);
    }
    if let Some(w) = &r.witness {
        out["witness"] = Value::String(w.name().to_string());
    }
    out
}

fn threshold_cmd(args: &ThresholdArgs) -> CliResult<(Value, u8)> {
    let g = args.input.graph()?;
    let report = threshold::white_noise_threshold(&g)?;
    let mut out = threshold_json(&g, &report);
    if args.points > 0 {
        let points: Vec<Rational> = (0..=args.points)
            .map(|k| rational::rat(k as i64, args.points as i64))
            .collect();
        let rows = threshold::sweep(&g, &points)?;
        out["sweep"] = rows
            .iter()
            .map(|(p, label)| json!({ "p": json::rational_to_json(p), "verdict": label }))
            .collect();
    }
    Ok((args.output.finish(out), 0))
}

fn witness_cmd(args: &WitnessArgs) -> CliResult<(Value, u8)> {
    let state = if args.input.state.is_some() || args.input.white_noise.is_some() {
        Some(args.input.state()?)
    } else {
        None
    };
    let g = match &state {
        Some(s) => s.graph().clone(),
        None => args.input.graph()?,
    };
    let mut list = named_witnesses(&g)?;
    if let Some(prefix) = &args.name {
        list.retain(|w| w.name().starts_with(prefix.as_str()));
    }
    if list.is_empty() {
        return Err(Error::UnsupportedGraph("no catalogued witness matches".into()).into());
    }
    let mut detected = false;
    let mut items = Vec::new();
    for w in &list {
        let mut item = json::witness_to_json(w);
        item["valid"] = json!(witness::validate_witness(w)?.is_valid());
        if let Some(s) = &state {
            let value = w.evaluate(s)?;
            detected |= value < rational::zero();
            item["value"] = json::rational_to_json(&value);
        }
        items.push(item);
    }
    let code = match &state {
        None => 0,
        Some(_) if detected => 1,
        Some(_) => 2,
    };
    Ok((args.output.finish(json!({ "witnesses": items })), code))
}

fn pptmix_cmd(args: &PptmixArgs) -> CliResult<(Value, u8)> {
    let s = args.input.state()?;
    let g = s.graph();
    let partitions = if args.restrict_1bp {
        g.one_bp_partitions()
    } else {
        graphsep::Bipartition::all(g.n())
    };
    if let Some(path) = &args.lp_file {
        let text = ppt_mixture::lp_file(&s, &partitions)?;
        fs::write(path, text).map_err(|e| Failure::Write(path.clone(), e))?;
    }
    let cert = ppt_mixture::is_ppt_mixture(&s, Some(&partitions))?;
    ppt_mixture::verify_certificate(&cert, &s)?;
    let mut out = json!({ "certificate": json::lp_certificate_to_json(&cert, g) });
    let code = match &cert {
        LpCertificate::Feasible(_) => {
            out["feasible"] = json!(true);
            0
        }
        LpCertificate::Infeasible(f) => {
            out["feasible"] = json!(false);
            let w = dual_witness(f, g)?;
            out["witness"] = json::witness_to_json(&w);
            out["value"] = json::rational_to_json(&w.evaluate(&s)?);
            1
        }
    };
    Ok((args.output.finish(out), code))
}

fn graph_cmd(args: &GraphArgs) -> CliResult<(Value, u8)> {
    let g = args.input.graph()?;
    let family = find_family_map(&g)?.map(|m| match m.family {
        Family::Path4 => "path4".to_string(),
        Family::Star(n) => format!("star{n}"),
        Family::YGraph(n) => format!("y{n}"),
    });
    let cuts: Vec<Value> = graphsep::Bipartition::all(g.n())
        .iter()
        .map(|m| Ok(json!({ "partition": m.to_string(), "cut_rank": g.cut_rank(m)? })))
        .collect::<Result<_, Error>>()?;
    let mut out = json!({
        "graph": json::graph_to_json(&g),
        "connected": g.is_connected(),
        "family": family,
        "bipartitions": cuts,
    });
    if args.oracle {
        out["oracle"] = oracle_json(&oracle_crosscheck(&g, &OracleOptions::default())?);
    }
    Ok((args.output.finish(out), 0))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            e.print().ok();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Classify(a) => classify_cmd(a),
        Command::Threshold(a) => threshold_cmd(a),
        Command::Decompose(a) => decompose_cmd(a),
        Command::Witness(a) => witness_cmd(a),
        Command::Pptmix(a) => pptmix_cmd(a),
        Command::Graph(a) => graph_cmd(a),
    };
    match result {
        Ok((out, code)) => {
            print!("{}", render(&out));
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("graphsep: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
