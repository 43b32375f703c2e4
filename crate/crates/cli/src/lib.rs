//! Command-line front end: validate instances, solve weighted-sum and
//! lexicographic problems, list extreme points, enumerate supported flows,
//! run the brute-force classifier and generate named instances.
//!
//! Results are line-delimited records `key=value ...` with a fixed key order
//! per record kind, so identical inputs give byte-identical output. Each run
//! ends with a `kind=summary` record. Timing goes to stderr only.

use std::io::Write;
use std::ops::ControlFlow;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use moflow::format::{parse_instance, write_instance};
use moflow::instances::{self, RandomParams};
use moflow::multiobjective::supported_flows_with;
use moflow::network::Violation;
use moflow::oracle::{self, Label, Witness};
use moflow::rational;
use moflow::upper_image::compute_upper_image;
use moflow::{
    outcome, solve, solve_lexicographic, verify_optimal, EnumerationOptions, Error, FaceKind, Flow,
    Network, WeightVector,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SEMANTIC: i32 = 3;
pub const EXIT_CAP: i32 = 4;
pub const EXIT_INVARIANT: i32 = 5;

/// Environment variable overriding the default oracle flow cap.
pub const CAP_ENV: &str = "MOFLOW_ORACLE_CAP";

#[derive(Debug, Parser)]
#[command(name = "moflow", version, about = "Supported efficient flows of multi-objective integer min-cost-flow problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse an instance and check its semantic conditions.
    Validate { path: PathBuf },
    /// Solve one weighted-sum or lexicographic problem.
    Solve(SolveArgs),
    /// List the extreme points and facets of the upper image.
    Extreme {
        path: PathBuf,
        /// Print a preimage flow for every extreme point.
        #[arg(long)]
        flows: bool,
    },
    /// Enumerate every supported efficient flow.
    Supported(SupportedArgs),
    /// Brute-force classification of every feasible flow.
    Classify {
        path: PathBuf,
        /// Maximum number of flows to enumerate (default from MOFLOW_ORACLE_CAP or 200000).
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Write a named instance to stdout.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Debug, Args)]
struct SolveArgs {
    path: PathBuf,
    /// Weights `r1,...,rd` (rationals as p/q).
    #[arg(long, conflicts_with = "lex", required_unless_present = "lex")]
    lambda: Option<String>,
    /// Objective priority order `i1,...,id` (1-based).
    #[arg(long)]
    lex: Option<String>,
}

#[derive(Debug, Args)]
struct SupportedArgs {
    path: PathBuf,
    /// Stop after this many flows.
    #[arg(long)]
    limit: Option<usize>,
    /// Re-verify every emitted flow against its witness weight.
    #[arg(long)]
    check: bool,
    /// Worker threads for independent face runs; output order is unchanged.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    /// The tri-objective five-node example.
    Fig2,
    /// Star network with `C(2n-1, n)` flows sharing one outcome.
    Star {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
    },
    /// Seeded random connected feasible instance.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 5)]
        maxcost: i64,
        #[arg(long, default_value_t = 3)]
        maxcap: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Csv,
}

/// One output line: ordered key/value pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Record {
    pub fields: Vec<(&'static str, String)>,
}

impl Record {
    fn new(kind: &str) -> Self {
        Record {
            fields: vec![("kind", kind.to_string())],
        }
    }

    fn with(mut self, key: &'static str, value: impl ToString) -> Self {
        self.fields.push((key, value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| *k == key).map(|(_, v)| v.as_str())
    }

    pub fn to_line(&self) -> String {
        self.fields
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses a line produced by [`Record::to_line`].
    pub fn parse_line(line: &str) -> Option<Vec<(String, String)>> {
        line.split(' ')
            .map(|kv| kv.split_once('=').map(|(k, v)| (k.to_string(), v.to_string())))
            .collect()
    }
}

struct CliError {
    code: i32,
    message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse { .. } => EXIT_USAGE,
            Error::OracleCapExceeded { .. } => EXIT_CAP,
            Error::Invariant(_) | Error::NotOptimal => EXIT_INVARIANT,
            _ => EXIT_SEMANTIC,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CliResult<T> = Result<T, CliError>;

/// Text or CSV record sink. CSV mode writes data records only, with a header
/// taken from the first record; the summary goes to stderr.
struct Output<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    format: OutputFormat,
    csv_header: bool,
}

impl<'a> Output<'a> {
    fn new(out: &'a mut dyn Write, err: &'a mut dyn Write, format: OutputFormat) -> Self {
        Output {
            out,
            err,
            format,
            csv_header: false,
        }
    }

    fn emit(&mut self, record: &Record) -> CliResult<()> {
        match self.format {
            OutputFormat::Text => writeln!(self.out, "{}", record.to_line()).map_err(io_error),
            OutputFormat::Csv => {
                if !self.csv_header {
                    self.csv_header = true;
                    let header = csv_line(record.fields.iter().map(|(k, _)| *k))?;
                    self.out.write_all(&header).map_err(io_error)?;
                }
                let line = csv_line(record.fields.iter().map(|(_, v)| v.as_str()))?;
                self.out.write_all(&line).map_err(io_error)
            }
        }
    }

    fn summary(&mut self, record: &Record) -> CliResult<()> {
        match self.format {
            OutputFormat::Text => writeln!(self.out, "{}", record.to_line()).map_err(io_error),
            OutputFormat::Csv => writeln!(self.err, "{}", record.to_line()).map_err(io_error),
        }
    }
}

fn csv_line<'r>(fields: impl IntoIterator<Item = &'r str>) -> CliResult<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(fields).map_err(|e| io_error(e.into()))?;
    w.into_inner().map_err(|e| io_error(e.into_error()))
}

fn io_error(e: std::io::Error) -> CliError {
    CliError {
        code: EXIT_INVARIANT,
        message: format!("write failed: {e}"),
    }
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn read_instance(path: &PathBuf) -> CliResult<(Network, String)> {
    let bytes = std::fs::read(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes).map_err(|_| usage(format!("{}: not UTF-8", path.display())))?;
    let network = parse_instance(&text)?;
    Ok((network, digest(text.as_bytes())))
}

/// Reads and parses an instance and rejects semantic violations.
fn load(path: &PathBuf) -> CliResult<(Network, String)> {
    let (network, digest) = read_instance(path)?;
    network.validate().into_result()?;
    Ok((network, digest))
}

pub fn format_flow(flow: &Flow) -> String {
    flow.values()
        .iter()
        .enumerate()
        .map(|(a, v)| format!("{}:{v}", a + 1))
        .collect::<Vec<_>>()
        .join(",")
}

fn format_face(face: &FaceKind) -> String {
    let list = |v: &[usize]| v.iter().map(|u| (u + 1).to_string()).collect::<Vec<_>>().join("+");
    match face {
        FaceKind::Edge(i) => format!("edge:{}", i + 1),
        FaceKind::Facet(u) => format!("facet:{}", u + 1),
        FaceKind::SubFace(us) => format!("subface:{}", list(us)),
        FaceKind::Single => "single".to_string(),
    }
}

fn parse_rational_list(text: &str, what: &str) -> CliResult<Vec<rational::Rational>> {
    text.split(',')
        .map(|t| rational::parse(t.trim()).ok_or_else(|| usage(format!("invalid {what} component {t:?}"))))
        .collect()
}

fn violation_record(v: &Violation) -> Record {
    let r = Record::new("violation");
    match v {
        Violation::NegativeLowerBound { arc } => r.with("rule", "negative-lower-bound").with("arc", arc + 1),
        Violation::CapacityOrder { arc } => r.with("rule", "lower-above-upper").with("arc", arc + 1),
        Violation::SelfLoop { arc } => r.with("rule", "self-loop").with("arc", arc + 1),
        Violation::Unbalanced { sum } => r.with("rule", "unbalanced").with("sum", sum),
        Violation::Disconnected { components } => r.with("rule", "disconnected").with("components", components),
    }
}

fn cmd_validate(path: &PathBuf, out: &mut Output) -> CliResult<()> {
    let (network, digest) = read_instance(path)?;
    let report = network.validate();
    for v in &report.violations {
        out.emit(&violation_record(v))?;
    }
    out.summary(
        &Record::new("summary")
            .with("command", "validate")
            .with("instance", &digest)
            .with("nodes", network.node_count())
            .with("arcs", network.arc_count())
            .with("objectives", network.objectives())
            .with("valid", report.is_valid()),
    )?;
    if report.is_valid() {
        Ok(())
    } else {
        Err(CliError {
            code: EXIT_SEMANTIC,
            message: report.into_result().unwrap_err().to_string(),
        })
    }
}

fn cmd_solve(args: &SolveArgs, out: &mut Output) -> CliResult<()> {
    let (network, digest) = load(&args.path)?;
    let d = network.objectives();
    let record = if let Some(text) = &args.lambda {
        let components = parse_rational_list(text, "lambda")?;
        if components.len() != d {
            return Err(usage(format!("lambda needs {d} components, got {}", components.len())));
        }
        let weights = WeightVector::new(components).map_err(|e| usage(e.to_string()))?;
        let sol = solve(&network, &weights)?;
        let y = outcome(&network, &sol.flow)?;
        Record::new("optimal")
            .with("lambda", rational::format_list(weights.components()))
            .with("value", rational::format(&sol.objective_value))
            .with("outcome", rational::format_list(y.components()))
            .with("flow", format_flow(&sol.flow))
    } else {
        let text = args.lex.as_deref().expect("clap requires lambda or lex");
        let order: Vec<usize> = text
            .split(',')
            .map(|t| match t.trim().parse::<usize>() {
                Ok(k) if k >= 1 => Ok(k - 1),
                _ => Err(usage(format!("invalid objective index {t:?}"))),
            })
            .collect::<CliResult<_>>()?;
        let sol = solve_lexicographic(&network, &order).map_err(|e| match e {
            Error::InvalidWeight(m) => usage(m),
            other => other.into(),
        })?;
        let y = outcome(&network, &sol.flow)?;
        Record::new("lexmin")
            .with("order", text.replace(' ', ""))
            .with("outcome", rational::format_list(y.components()))
            .with("flow", format_flow(&sol.flow))
    };
    out.emit(&record)?;
    out.summary(&Record::new("summary").with("command", "solve").with("instance", digest))
}

fn cmd_extreme(path: &PathBuf, flows: bool, out: &mut Output) -> CliResult<()> {
    let (network, digest) = load(path)?;
    let image = compute_upper_image(&network)?;
    for (i, v) in image.vertices.iter().enumerate() {
        let mut r = Record::new("extreme")
            .with("index", i + 1)
            .with("outcome", rational::format_list(v.outcome.components()));
        if flows {
            r = r.with("flow", format_flow(&v.flow));
        }
        out.emit(&r)?;
    }
    for (u, f) in image.facets.iter().enumerate() {
        let vertices: Vec<String> = f.incident_vertices.iter().map(|v| (v + 1).to_string()).collect();
        out.emit(
            &Record::new("facet")
                .with("index", u + 1)
                .with("normal", rational::format_list(f.normal.components()))
                .with("offset", rational::format(&f.offset))
                .with("vertices", vertices.join(","))
                .with("nondominated", f.is_nondominated()),
        )?;
    }
    out.summary(
        &Record::new("summary")
            .with("command", "extreme")
            .with("instance", digest)
            .with("extremes", image.vertices.len())
            .with("facets", image.facets.len()),
    )
}

fn cmd_supported(args: &SupportedArgs, out: &mut Output) -> CliResult<()> {
    if args.jobs == 0 {
        return Err(usage("--jobs must be at least 1"));
    }
    let (network, digest) = load(&args.path)?;
    let started = Instant::now();
    let mut emitted = 0usize;
    let mut truncated = false;
    let mut failure: Option<CliError> = None;
    let summary = supported_flows_with(&network, EnumerationOptions { jobs: args.jobs }, &mut |sf| {
        if args.limit == Some(emitted) {
            truncated = true;
            return ControlFlow::Break(());
        }
        if args.check {
            let ok = sf.witness.is_strictly_positive()
                && matches!(verify_optimal(&network, &sf.witness, &sf.flow), Ok(o) if o.is_optimal());
            if !ok {
                failure = Some(CliError {
                    code: EXIT_INVARIANT,
                    message: format!("flow {} fails verification", format_flow(&sf.flow)),
                });
                return ControlFlow::Break(());
            }
        }
        let record = Record::new("supported")
            .with("face", format_face(&sf.face))
            .with("outcome", rational::format_list(sf.outcome.components()))
            .with("lambda", rational::format_list(sf.witness.components()))
            .with("flow", format_flow(&sf.flow));
        if let Err(e) = out.emit(&record) {
            failure = Some(e);
            return ControlFlow::Break(());
        }
        emitted += 1;
        ControlFlow::Continue(())
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let _ = writeln!(out.err, "elapsed_ms={:.3}", started.elapsed().as_secs_f64() * 1e3);
    out.summary(
        &Record::new("summary")
            .with("command", "supported")
            .with("instance", digest)
            .with("extremes", summary.extreme_points)
            .with("faces", summary.faces)
            .with("flows", emitted)
            .with("truncated", truncated)
            .with("checked", args.check),
    )
}

fn oracle_cap(explicit: Option<usize>) -> CliResult<usize> {
    if let Some(c) = explicit {
        return Ok(c);
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("{CAP_ENV} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(oracle::DEFAULT_CAP),
    }
}

fn cmd_classify(path: &PathBuf, cap: Option<usize>, out: &mut Output) -> CliResult<()> {
    let cap = oracle_cap(cap)?;
    let (network, digest) = load(path)?;
    let c = oracle::classify(&network, cap)?;
    for o in c.outcomes() {
        let witness = match &o.witness {
            Witness::Weight(w) => format!("lambda:{}", rational::format_list(w.components())),
            Witness::DominatedBy(y) => format!("dominated-by:{}", rational::format_list(y.components())),
            Witness::None => "none".to_string(),
        };
        out.emit(
            &Record::new("outcome")
                .with("label", o.label.as_str())
                .with("outcome", rational::format_list(o.outcome.components()))
                .with("flows", o.flows.len())
                .with("witness", witness),
        )?;
    }
    let labels = [
        Label::Supported,
        Label::WeaklySupportedOnly,
        Label::Unsupported,
        Label::Dominated,
    ];
    let mut summary = Record::new("summary")
        .with("command", "classify")
        .with("instance", digest)
        .with("flows", c.flows().len())
        .with("outcomes", c.outcomes().len());
    for (key, label) in ["supported", "weakly_supported_only", "unsupported", "dominated"]
        .into_iter()
        .zip(labels)
    {
        summary = summary.with(key, c.count(label));
    }
    summary = summary.with("supported_flows", c.flows_labelled(Label::Supported).len());
    out.summary(&summary)
}

fn cmd_gen(command: &GenCommand, out: &mut dyn Write) -> CliResult<()> {
    let text = match *command {
        GenCommand::Fig2 => write_instance(&instances::fig2(), instances::FIG2_COMMENTS),
        GenCommand::Star { n, d } => {
            if n == 0 || d == 0 {
                return Err(usage("star needs --n >= 1 and --d >= 1"));
            }
            let comment = format!("star instance n={n} d={d}");
            write_instance(&instances::star(n, d), &[&comment])
        }
        GenCommand::Random {
            n,
            m,
            d,
            maxcost,
            maxcap,
            seed,
        } => {
            if n == 0 || d == 0 || maxcost < 0 || maxcap < 0 {
                return Err(usage("random needs --n, --d >= 1 and non-negative --maxcost, --maxcap"));
            }
            let params = RandomParams {
                nodes: n,
                arcs: m,
                objectives: d,
                max_cost: maxcost,
                max_capacity: maxcap,
                seed,
            };
            let comment = format!("random instance n={n} m={m} d={d} maxcost={maxcost} maxcap={maxcap} seed={seed}");
            write_instance(&instances::random(params), &[&comment])
        }
    };
    out.write_all(text.as_bytes()).map_err(io_error)
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    let result = match &cli.command {
        Command::Validate { path } => cmd_validate(path, &mut Output::new(out, err, OutputFormat::Text)),
        Command::Solve(args) => cmd_solve(args, &mut Output::new(out, err, OutputFormat::Text)),
        Command::Extreme { path, flows } => cmd_extreme(path, *flows, &mut Output::new(out, err, OutputFormat::Text)),
        Command::Supported(args) => cmd_supported(args, &mut Output::new(out, err, args.format)),
        Command::Classify { path, cap, format } => cmd_classify(path, *cap, &mut Output::new(out, err, *format)),
        Command::Gen(g) => cmd_gen(g, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}
