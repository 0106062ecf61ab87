//! `symmetric`: analyze graphs, build families, enumerate small orders and
//! verify the distinguishing-number characterizations.
//!
//! Exit codes: 0 every requested check passed, 1 a verification failed,
//! 2 usage or parse error, 3 order beyond solver bounds, 4 I/O error.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use symmetric_core::{
    canonical_form, classify_graph, enumerate_graphs, instantiate_families, metric_dimension,
    parse_graph6, parse_graph6_lines, verify_bound, verify_construction, verify_theorem,
    write_graph6, ClassificationReport, Error, FamilyAlias, FamilySpec, Graph, TheoremId,
    VerifyReport, ENUMERATION_MAX_ORDER,
};

const EXPRESSION_HELP: &str = "\
Graph inputs are family expressions or graph6 lines.

Expression grammar:
  Kn  En  Pn  Cn        complete, empty, path, cycle on n vertices
  Tk                    broom tree: root with pendant paths of lengths 1..k (k >= 3)
  K(a,b,...)            complete multipartite
  C5'  House            the 5-cycle plus one chord
  co(X)                 complement
  U(X,Y,...)            disjoint union
  J(X,Y,...)            join
  m*X                   m disjoint copies of X
  X[P1,...,Pk]          blow-up: vertex i becomes part Pi (Ks clique or Es independent set)

Examples: C5, K(3,3), T4, J(K1,U(K1,2*K2)), co(U(K3,2*K1)), P4[K1,E2,K1,K1]";

#[derive(Parser)]
#[command(
    name = "symmetric",
    version,
    about = "Distinguishing number and metric dimension of small graphs"
)]
#[command(after_help = EXPRESSION_HELP)]
struct Cli {
    /// Worker threads (0 uses every core)
    #[arg(long, global = true, env = "SYMMETRIC_JOBS", default_value_t = 0)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report dim, D, diameter, twin structure, family-F membership and list matches
    Analyze {
        /// Family expressions or graph6 lines
        #[arg(required = true)]
        inputs: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run a check: bound, construction, Dn, Dn1, Dn2 or Dn3
    Verify {
        target: Target,
        /// Order or inclusive range such as 4..6
        #[arg(long)]
        n: Option<OrderRange>,
        /// Largest metric dimension for the construction check
        #[arg(long, default_value_t = 4)]
        max: usize,
        /// Read the graphs to scan from a graph6 file instead of enumerating
        #[arg(long)]
        graph6_file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// One row per isomorphism class with its D and dim
    Enumerate {
        /// Order or inclusive range such as 1..5
        #[arg(long)]
        n: OrderRange,
        /// Keep only graphs with this distinguishing number
        #[arg(long = "D", alias = "d")]
        distinguishing: Option<usize>,
        /// Keep only connected graphs with this metric dimension
        #[arg(long)]
        dim: Option<usize>,
        /// Keep only connected graphs
        #[arg(long)]
        connected: bool,
        /// Read graphs from a graph6 file instead of enumerating
        #[arg(long)]
        graph6_file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Print graph6 for an expression, or every list instance of a theorem at order n
    Construct {
        /// Family expression
        #[arg(required_unless_present = "theorem", conflicts_with = "theorem")]
        expression: Option<String>,
        /// Instantiate this list (Dn, Dn1, Dn2, Dn3)
        #[arg(long, requires = "n")]
        theorem: Option<TheoremId>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy)]
enum Target {
    Bound,
    Construction,
    Theorem(TheoremId),
}

impl std::str::FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "bound" => Ok(Target::Bound),
            "construction" => Ok(Target::Construction),
            _ => s
                .parse::<TheoremId>()
                .map(Target::Theorem)
                .map_err(|e| e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct OrderRange {
    lo: usize,
    hi: usize,
}

impl OrderRange {
    fn orders(self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl std::str::FromStr for OrderRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("invalid order {t:?}"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => {
                let b = b.strip_prefix('=').unwrap_or(b);
                (num(a)?, num(b)?)
            }
            None => {
                let n = num(s)?;
                (n, n)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s}"));
        }
        Ok(OrderRange { lo, hi })
    }
}

/// Failure classes, each with its own exit code.
#[derive(Debug)]
enum Failure {
    Usage(anyhow::Error),
    Bounds(anyhow::Error),
    Io(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Bounds(_) => 3,
            Failure::Io(_) => 4,
        }
    }

    fn message(&self) -> String {
        let e = match self {
            Failure::Usage(e) | Failure::Bounds(e) | Failure::Io(e) => e,
        };
        format!("{e:#}")
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::OrderOverflow(_) | Error::OrderTooLarge { .. } | Error::GroupTooLarge(_) => {
                Failure::Bounds(e.into())
            }
            _ => Failure::Usage(e.into()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.into())
    }
}

type Outcome<T = bool> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build_global()
    {
        eprintln!("error: worker pool: {e}");
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Analyze { inputs, format } => analyze(&inputs, format),
        Command::Verify {
            target,
            n,
            max,
            graph6_file,
            format,
        } => verify(target, n, max, graph6_file.as_deref(), format),
        Command::Enumerate {
            n,
            distinguishing,
            dim,
            connected,
            graph6_file,
            format,
        } => enumerate(
            n,
            distinguishing,
            dim,
            connected,
            graph6_file.as_deref(),
            format,
        ),
        Command::Construct {
            expression,
            theorem,
            n,
            format,
        } => construct(expression, theorem, n, format),
    }
}

fn emit(text: &str) -> Outcome<()> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        out.write_all(b"\n")?;
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Outcome<String> {
    serde_json::to_string_pretty(value).map_err(|e| Failure::Io(e.into()))
}

/// Family expression first, graph6 second.
fn parse_input(input: &str) -> Outcome<Graph> {
    let input = input.trim();
    match input.parse::<FamilySpec>() {
        Ok(spec) => Ok(spec.construct()?),
        Err(expr_err) => parse_graph6(input).map_err(|g6_err| {
            Failure::Usage(anyhow!(
                "{input:?} is neither an expression ({expr_err}) nor graph6 ({g6_err})"
            ))
        }),
    }
}

fn read_graph6_file(path: &Path) -> Outcome<Vec<Graph>> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::Io)?;
    parse_graph6_lines(&text).map_err(|e| Failure::Usage(anyhow!("{}: {e}", path.display())))
}

/// Graphs of every order in `range`, from the file when given, otherwise
/// from the internal generator.
fn load_graphs(range: OrderRange, file: Option<&Path>) -> Outcome<BTreeMap<usize, Vec<Graph>>> {
    let mut by_order: BTreeMap<usize, Vec<Graph>> =
        range.orders().map(|n| (n, Vec::new())).collect();
    match file {
        Some(path) => {
            for g in read_graph6_file(path)? {
                if let Some(bucket) = by_order.get_mut(&g.order()) {
                    bucket.push(g);
                }
            }
        }
        None => {
            if range.hi > ENUMERATION_MAX_ORDER {
                return Err(Failure::Bounds(anyhow!(
                    "order {} exceeds the internal enumeration bound {ENUMERATION_MAX_ORDER}; supply --graph6-file",
                    range.hi
                )));
            }
            for (n, bucket) in by_order.iter_mut() {
                *bucket = enumerate_graphs(*n, false)?;
            }
        }
    }
    Ok(by_order)
}

fn analyze(inputs: &[String], format: Format) -> Outcome {
    let graphs = inputs
        .iter()
        .map(|s| parse_input(s))
        .collect::<Outcome<Vec<_>>>()?;
    let reports = graphs
        .par_iter()
        .map(classify_graph)
        .collect::<Result<Vec<_>, _>>()?;
    match format {
        Format::Json if reports.len() == 1 => emit(&to_json(&reports[0])?)?,
        Format::Json => emit(&to_json(&reports)?)?,
        Format::Text => {
            let blocks: Vec<String> = reports.iter().map(analysis_text).collect();
            emit(&blocks.join("\n"))?;
        }
        Format::Csv => {
            let mut out = String::from("graph6,order,edges,D,dim,diameter,in_family_f,matches\n");
            for r in &reports {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    r.graph6,
                    r.order,
                    r.edges,
                    r.distinguishing_number,
                    opt(r.dim),
                    opt(r.diameter),
                    r.in_family_f,
                    r.matches
                        .iter()
                        .map(alias_label)
                        .collect::<Vec<_>>()
                        .join(" ")
                );
            }
            emit(&out)?;
        }
    }
    Ok(true)
}

fn opt(v: Option<usize>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn alias_label(a: &FamilyAlias) -> String {
    match a.t {
        Some(t) => format!("{}({})t={t}", a.theorem, a.entry),
        None => format!("{}({})", a.theorem, a.entry),
    }
}

fn analysis_text(r: &ClassificationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "graph6:       {}", r.graph6);
    let _ = writeln!(
        s,
        "order:        {} ({} edges, {})",
        r.order,
        r.edges,
        if r.connected {
            "connected"
        } else {
            "disconnected"
        }
    );
    let _ = writeln!(s, "D:            {}", r.distinguishing_number);
    match (r.dim, &r.resolving_witness) {
        (Some(d), Some(w)) => {
            let _ = writeln!(s, "dim:          {d} (witness {w:?})");
        }
        _ => {
            let _ = writeln!(s, "dim:          undefined (disconnected)");
        }
    }
    let _ = writeln!(
        s,
        "diameter:     {}",
        r.diameter.map_or("infinite".to_string(), |d| d.to_string())
    );
    let _ = writeln!(
        s,
        "twin classes: sizes {:?}, types {:?}, alpha {}",
        r.twins.class_sizes, r.twins.class_types, r.twins.alpha
    );
    let _ = writeln!(s, "family F:     {}", r.in_family_f);
    if r.matches.is_empty() {
        let _ = writeln!(s, "matches:      none");
    }
    for a in &r.matches {
        let _ = writeln!(
            s,
            "matches:      {} entry ({}) {} = {}",
            a.theorem, a.entry, a.notation, a.expression
        );
    }
    s
}

#[derive(Serialize)]
struct VerifyOutput {
    verdict: &'static str,
    reports: Vec<VerifyReport>,
}

fn verify(
    target: Target,
    n: Option<OrderRange>,
    max: usize,
    file: Option<&Path>,
    format: Format,
) -> Outcome {
    let reports = match target {
        Target::Construction => vec![verify_construction(max)?],
        Target::Bound => {
            let range = n.unwrap_or(OrderRange {
                lo: 1,
                hi: ENUMERATION_MAX_ORDER,
            });
            let graphs: Vec<Graph> = load_graphs(range, file)?.into_values().flatten().collect();
            vec![verify_bound(&graphs)?]
        }
        Target::Theorem(id) => {
            let range = n.unwrap_or(OrderRange {
                lo: id.min_order().max(4),
                hi: ENUMERATION_MAX_ORDER,
            });
            if range.lo < id.min_order() {
                return Err(Failure::Usage(anyhow!(
                    "{id} applies from order {}",
                    id.min_order()
                )));
            }
            load_graphs(range, file)?
                .into_iter()
                .map(|(order, graphs)| verify_theorem(id, order, &graphs))
                .collect::<Result<Vec<_>, _>>()?
        }
    };
    let passed = reports.iter().all(VerifyReport::passed);
    match format {
        Format::Json => emit(&to_json(&VerifyOutput {
            verdict: if passed { "PASS" } else { "FAIL" },
            reports,
        })?)?,
        Format::Text | Format::Csv => {
            let mut out = String::new();
            for r in &reports {
                let _ = writeln!(
                    out,
                    "{} {} orders {:?}: scanned {}, matches {}, mismatches {}, excluded {} ({} ms)",
                    if r.passed() { "PASS" } else { "FAIL" },
                    r.check,
                    r.orders,
                    r.graphs_scanned,
                    r.matches,
                    r.mismatches,
                    r.excluded.len(),
                    r.elapsed_ms
                );
                for c in &r.counterexamples {
                    let _ = writeln!(
                        out,
                        "  {} expected {}, got {} {}",
                        c.graph6, c.expected, c.actual, c.note
                    );
                }
            }
            emit(&out)?;
        }
    }
    Ok(passed)
}

#[derive(Serialize)]
struct Row {
    graph6: String,
    order: usize,
    connected: bool,
    #[serde(rename = "D")]
    distinguishing: usize,
    dim: Option<usize>,
}

fn enumerate(
    range: OrderRange,
    distinguishing: Option<usize>,
    dim: Option<usize>,
    connected_only: bool,
    file: Option<&Path>,
    format: Format,
) -> Outcome {
    let mut graphs: Vec<Graph> = Vec::new();
    for (_, mut bucket) in load_graphs(range, file)? {
        if file.is_some() {
            // One row per isomorphism class, in canonical-form order.
            let mut keyed = bucket
                .into_iter()
                .map(|g| canonical_form(&g).map(|f| (f, g)))
                .collect::<Result<Vec<_>, _>>()?;
            keyed.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
            keyed.dedup_by(|a, b| a.0 == b.0);
            bucket = keyed.into_iter().map(|(f, _)| f.to_graph()).collect();
        }
        graphs.extend(bucket);
    }
    let rows = graphs
        .par_iter()
        .filter(|g| !connected_only || g.is_connected())
        .map(|g| {
            let connected = g.is_connected();
            Ok(Row {
                graph6: write_graph6(g),
                order: g.order(),
                connected,
                distinguishing: symmetric_core::distinguishing_number(g)?,
                dim: if connected {
                    Some(metric_dimension(g)?.dim)
                } else {
                    None
                },
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let rows: Vec<Row> = rows
        .into_iter()
        .filter(|r| distinguishing.is_none_or(|d| r.distinguishing == d))
        .filter(|r| dim.is_none_or(|m| r.dim == Some(m)))
        .collect();
    match format {
        Format::Json => emit(&to_json(&rows)?)?,
        Format::Csv | Format::Text => {
            let mut out = String::from("graph6,order,connected,D,dim\n");
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.graph6,
                    r.order,
                    r.connected,
                    r.distinguishing,
                    opt(r.dim)
                );
            }
            emit(&out)?;
        }
    }
    Ok(true)
}

#[derive(Serialize)]
struct Constructed {
    graph6: String,
    order: usize,
    edges: usize,
    aliases: Vec<FamilyAlias>,
}

fn construct(
    expression: Option<String>,
    theorem: Option<TheoremId>,
    n: Option<usize>,
    format: Format,
) -> Outcome {
    let items: Vec<Constructed> = match (expression, theorem, n) {
        (Some(expr), _, _) => {
            let spec: FamilySpec = expr.parse()?;
            let g = spec.construct()?;
            vec![Constructed {
                graph6: write_graph6(&g),
                order: g.order(),
                edges: g.size(),
                aliases: Vec::new(),
            }]
        }
        (None, Some(id), Some(n)) => instantiate_families(id, n)?
            .iter()
            .map(|inst| Constructed {
                graph6: write_graph6(&inst.graph),
                order: inst.graph.order(),
                edges: inst.graph.size(),
                aliases: inst.aliases.clone(),
            })
            .collect(),
        _ => {
            return Err(Failure::Usage(anyhow!(
                "give an expression or --theorem with --n"
            )))
        }
    };
    match format {
        Format::Json => emit(&to_json(&items)?)?,
        Format::Text => {
            let mut out = String::new();
            for c in &items {
                let names: Vec<String> = c
                    .aliases
                    .iter()
                    .map(|a| format!("({}) {}", a.entry, a.expression))
                    .collect();
                if names.is_empty() {
                    let _ = writeln!(out, "{}", c.graph6);
                } else {
                    let _ = writeln!(out, "{}\t{}", c.graph6, names.join("; "));
                }
            }
            emit(&out)?;
        }
        Format::Csv => {
            let mut out = String::from("graph6,order,edges,aliases\n");
            for c in &items {
                let names: Vec<String> = c.aliases.iter().map(alias_label).collect();
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    c.graph6,
                    c.order,
                    c.edges,
                    names.join(" ")
                );
            }
            emit(&out)?;
        }
    }
    Ok(true)
}
