//! The `cgt` command line: group construction, component groups, terminal
//! chains, class graphs and binary-action checks, with cached run records.

pub mod record;

use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use sha2::Digest;
use serde::Serialize;

use crate::algebra::parse::parse_cycles;
use crate::algebra::Perm;
use crate::binary::related::DEFAULT_NODE_BUDGET;
use crate::binary::related::MAX_BOUNDED_DEGREE;
use crate::binary::{
    binary_bounded, stabilizer_filter, ti_binary_criterion, BinaryVerdict, CosetAction, FilterVerdict, TiVerdict,
};
use crate::catalog::{make_group, CatalogGroup, GroupSpec, InvolutionLabel, RootKind};
use crate::components::{
    class_graph, delta_infinity, transport, ClassGraphReport, ClassRegistry, ClassSet, Completeness,
    TransportMode, TransportOptions,
};
use crate::components::transport::DEFAULT_SAMPLES;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, OrbitBudget};
use record::{RunInputs, RunRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

const MAX_CENTRE_SCAN: u128 = 100_000;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Usage(_) | Error::Unsupported(_) | Error::Parse(_) => EXIT_USAGE,
        Error::Budget { .. } => EXIT_BUDGET,
        Error::Construction(_) | Error::Internal(_) => EXIT_INTERNAL,
        Error::Io(_) | Error::Json(_) => EXIT_IO,
    }
}

#[derive(Parser, Debug)]
#[command(name = "cgt", version, about = "Component groups of involutions and binary-action checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print the run record as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Neither read nor write the result cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Recompute and overwrite any cached result.
    #[arg(long, global = true)]
    pub recompute: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Det,
    Rand,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    #[arg(long, value_enum, default_value = "det")]
    pub mode: Mode,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Neighbour samples per class in randomized mode.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    /// Largest conjugacy class enumerated explicitly.
    #[arg(long, default_value_t = OrbitBudget::default().max_elements)]
    pub budget: usize,
    /// Stop sampling after this many seconds; results are then not cached.
    #[arg(long)]
    pub time_limit: Option<u64>,
}

impl RunArgs {
    fn options(&self) -> TransportOptions {
        let mode = match self.mode {
            Mode::Det => TransportMode::Deterministic,
            Mode::Rand => TransportMode::Randomized { samples: self.samples },
        };
        TransportOptions { mode, seed: self.seed, time_limit: self.time_limit.map(Duration::from_secs) }
    }

    fn inputs(&self, command: &str, group: &str) -> RunInputs {
        RunInputs {
            command: command.into(),
            group: group.into(),
            label: None,
            subgroup: None,
            method: None,
            mode: match self.mode {
                Mode::Det => "det".into(),
                Mode::Rand => "rand".into(),
            },
            samples: self.samples,
            seed: self.seed,
            budget: self.budget,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Ti,
    Bounded,
    Filter,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Order, degree and involution labels of a group.
    Group { group: String },
    /// Component group of an involution class.
    Delta {
        group: String,
        label: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Chain of component groups up to the terminal one.
    DeltaInf {
        group: String,
        label: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Graph on the classes of elements of order p.
    ClassGraph {
        group: String,
        /// Write the graph in DOT format to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Binarity of the action on cosets of a subgroup: `sylow:p`,
    /// `sylow-centre:p`, `root:long`, `root:short` or `gens:FILE`.
    Binary {
        group: String,
        #[arg(default_value = "root:long")]
        subgroup: String,
        #[arg(long, value_enum, default_value = "ti")]
        method: Method,
        /// Longest tuples examined by the bounded search.
        #[arg(long)]
        max_n: Option<usize>,
        #[command(flatten)]
        run: RunArgs,
    },
}

fn catalog(spec: &str) -> Result<CatalogGroup> {
    make_group(&spec.parse::<GroupSpec>()?)
}

fn registry<'a>(cat: &'a CatalogGroup, run: &RunArgs) -> ClassRegistry<'a> {
    let mut reg = ClassRegistry::for_catalog(cat);
    reg.set_seed(run.seed);
    reg.set_budget(OrbitBudget { max_elements: run.budget, ..OrbitBudget::default() });
    reg
}

/// A computed payload with its exit status and a human-readable summary.
pub struct Outcome {
    pub status: i32,
    pub result: Box<serde_json::value::RawValue>,
    pub summary: String,
}

fn outcome<T: Serialize>(status: i32, result: &T, summary: String) -> Result<Outcome> {
    let raw = serde_json::value::RawValue::from_string(serde_json::to_string(result)?)?;
    Ok(Outcome { status, result: raw, summary })
}

#[derive(Serialize)]
struct ErrorPayload {
    error: String,
}

fn partial(e: &Error) -> Result<Outcome> {
    outcome(exit_code(e), &ErrorPayload { error: e.to_string() }, format!("error: {e}"))
}

#[derive(Serialize)]
struct GroupOut {
    group: String,
    order: u128,
    degree: usize,
    characteristic: u32,
    labels: Vec<String>,
}

fn cmd_group(group: &str) -> Result<Outcome> {
    let cat = catalog(group)?;
    let out = GroupOut {
        group: cat.spec().to_string(),
        order: cat.group().order(),
        degree: cat.degree(),
        characteristic: cat.characteristic(),
        labels: cat.labels().iter().map(|l| l.to_string()).collect(),
    };
    let summary = format!(
        "{}: order {}, degree {}, involution classes: {}",
        out.group,
        out.order,
        out.degree,
        if out.labels.is_empty() { "-".into() } else { out.labels.join(", ") }
    );
    outcome(EXIT_OK, &out, summary)
}

#[derive(Serialize)]
struct DeltaOut {
    group_order: u128,
    label: String,
    delta_order: u128,
    abelian: bool,
    elementary_abelian: bool,
    completeness: Completeness,
    component_size: Option<u128>,
    transport_order: u128,
    delta_generators: Vec<String>,
    warnings: Vec<String>,
}

fn describe(order: u128, elementary: bool, abelian: bool, p: u32) -> String {
    let mut k = 0;
    let mut m = order;
    while m > 1 && m % p as u128 == 0 {
        m /= p as u128;
        k += 1;
    }
    match (elementary, abelian) {
        (true, _) if order > 1 => format!("elementary abelian {p}^{k}"),
        (_, true) => "abelian".into(),
        _ => "non-abelian".into(),
    }
}

fn cmd_delta(group: &str, label: &str, run: &RunArgs) -> Result<Outcome> {
    let cat = catalog(group)?;
    let label = InvolutionLabel::parse(label, cat.spec())?;
    let mut reg = registry(&cat, run);
    let s = cat.involution_rep(&label)?;
    let d = ClassSet::from_reps(&mut reg, std::slice::from_ref(&s))?;
    let r = match transport(&mut reg, &d, &s, &run.options()) {
        Ok(r) => r,
        Err(e @ Error::Budget { .. }) => return partial(&e),
        Err(e) => return Err(e),
    };
    let p = cat.characteristic();
    let mut warnings = r.warnings.clone();
    warnings.extend(reg.take_warnings());
    let out = DeltaOut {
        group_order: cat.group().order(),
        label: label.to_string(),
        delta_order: r.delta.order(),
        abelian: r.delta.is_abelian(),
        elementary_abelian: r.delta.is_elementary_abelian(p),
        completeness: r.completeness,
        component_size: r.component_size,
        transport_order: r.transport.order(),
        delta_generators: r.delta.generators().iter().map(|g| g.cycles_string()).collect(),
        warnings,
    };
    let summary = format!(
        "{} {}: |Δ| = {} ({}), {}{}",
        cat.spec(),
        out.label,
        out.delta_order,
        describe(out.delta_order, out.elementary_abelian, out.abelian, p),
        serde_json::to_value(out.completeness)?.as_str().unwrap_or("?"),
        if out.delta_order == out.group_order { ", Δ = G" } else { "" }
    );
    outcome(EXIT_OK, &out, summary)
}

#[derive(Serialize)]
struct ChainOut {
    group_order: u128,
    label: String,
    stages: Vec<crate::components::terminal::Stage>,
    terminal_order: u128,
    stable: bool,
    error: Option<String>,
    warnings: Vec<String>,
}

fn cmd_delta_inf(group: &str, label: &str, run: &RunArgs) -> Result<Outcome> {
    let cat = catalog(group)?;
    let label = InvolutionLabel::parse(label, cat.spec())?;
    let mut reg = registry(&cat, run);
    let s = cat.involution_rep(&label)?;
    let d = ClassSet::from_reps(&mut reg, std::slice::from_ref(&s))?;
    let chain = match delta_infinity(&mut reg, &s, &d, &run.options()) {
        Ok(c) => c,
        Err(e @ Error::Budget { .. }) => return partial(&e),
        Err(e) => return Err(e),
    };
    let mut warnings = chain.warnings.clone();
    warnings.extend(reg.take_warnings());
    let out = ChainOut {
        group_order: cat.group().order(),
        label: label.to_string(),
        stages: chain.stages.clone(),
        terminal_order: chain.terminal.order(),
        stable: chain.stable,
        error: chain.error.clone(),
        warnings,
    };
    let orders: Vec<String> = out.stages.iter().map(|s| s.delta_order.to_string()).collect();
    let mut summary = format!("{} {}: chain {}", cat.spec(), out.label, orders.join(" -> "));
    if out.terminal_order == out.group_order {
        summary.push_str(" (= G)");
    }
    if let Some(e) = &out.error {
        summary.push_str(&format!("; stopped: {e}"));
    }
    let status = if out.error.is_some() { EXIT_BUDGET } else { EXIT_OK };
    outcome(status, &out, summary)
}

#[derive(Serialize)]
struct GraphOut {
    #[serde(flatten)]
    report: ClassGraphReport,
    white: usize,
    dot: String,
}

fn cmd_class_graph(group: &str, run: &RunArgs) -> Result<Outcome> {
    let cat = catalog(group)?;
    let mut reg = registry(&cat, run);
    let report = class_graph(&mut reg, &run.options())?;
    let dot = report.to_dot();
    let mut summary = format!(
        "{}: {} classes, {} white, {} edges",
        cat.spec(),
        report.vertices.len(),
        report.white_count(),
        report.edges.len()
    );
    for v in &report.vertices {
        let order = v.delta_order.map(|o| o.to_string()).unwrap_or_else(|| "?".into());
        summary.push_str(&format!("\n  {} {}: |Δ| = {order}", if v.black { "black" } else { "white" }, v.label));
        if let Some(a) = &v.annotation {
            summary.push_str(&format!(" ({a})"));
        }
    }
    let white = report.white_count();
    outcome(EXIT_OK, &GraphOut { report, white, dot }, summary)
}

/// The subgroup named by `spec` (`sylow:p`, `sylow-centre:p`, `root:long`,
/// `root:short` or `gens:FILE`), with a canonical name.
pub fn subgroup(cat: &CatalogGroup, spec: &str) -> Result<(FiniteGroup, String)> {
    let (kind, arg) = spec.split_once(':').ok_or_else(|| Error::Parse(format!("bad subgroup spec '{spec}'")))?;
    let p = cat.characteristic();
    let check_p = || -> Result<()> {
        let q: u32 = arg.trim().parse().map_err(|_| Error::Parse(format!("bad prime in '{spec}'")))?;
        if q != p {
            return Err(Error::Unsupported(format!("only the defining characteristic {p} is supported")));
        }
        Ok(())
    };
    match kind.trim() {
        "sylow" => {
            check_p()?;
            Ok((cat.sylow()?, format!("sylow:{p}")))
        }
        "sylow-centre" | "sylow-center" => {
            check_p()?;
            Ok((centre(&cat.sylow()?)?, format!("sylow-centre:{p}")))
        }
        "root" => {
            let (k, name) = match arg.trim() {
                "long" => (RootKind::Long, "root:long"),
                "short" => (RootKind::Short, "root:short"),
                other => return Err(Error::Parse(format!("unknown root kind '{other}'"))),
            };
            Ok((cat.root_subgroup(k)?, name.into()))
        }
        "gens" => {
            let text = std::fs::read_to_string(arg)?;
            let mut gens = Vec::new();
            for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
                let g = parse_cycles(cat.degree(), line)?;
                cat.group().check_member(&g)?;
                gens.push(g);
            }
            let h = FiniteGroup::new(cat.degree(), gens)?;
            let canon: Vec<String> = h.generators().iter().map(Perm::encode_hex).collect();
            Ok((h, format!("gens:{}", canon.join(","))))
        }
        other => Err(Error::Parse(format!("unknown subgroup kind '{other}'"))),
    }
}

fn centre(p: &FiniteGroup) -> Result<FiniteGroup> {
    if p.order() > MAX_CENTRE_SCAN {
        return Err(Error::budget("Sylow subgroup elements", p.order() as u64, MAX_CENTRE_SCAN as u64));
    }
    let mut z = FiniteGroup::trivial(p.degree());
    let mut gens = Vec::new();
    for x in p.elements(MAX_CENTRE_SCAN)? {
        if !z.contains(&x) && p.generators().iter().all(|g| g.commutes_with(&x)) {
            gens.push(x);
            z = FiniteGroup::new(p.degree(), gens.clone())?;
        }
    }
    Ok(z)
}

#[derive(Serialize)]
#[serde(untagged)]
enum Verdict {
    Ti(TiVerdict),
    Bounded(BinaryVerdict),
    Filter(FilterVerdict),
}

#[derive(Serialize)]
struct BinaryOut {
    group_order: u128,
    subgroup_order: u128,
    degree: u128,
    method: &'static str,
    binary: Option<bool>,
    verdict: Verdict,
    warnings: Vec<String>,
}

fn cmd_binary(group: &str, sub: &str, method: Method, max_n: Option<usize>, run: &RunArgs) -> Result<Outcome> {
    let cat = catalog(group)?;
    let (h, canon) = subgroup(&cat, sub)?;
    let method_name = match method {
        Method::Ti => "ti",
        Method::Bounded => "bounded",
        Method::Filter => "filter",
    };
    let g = cat.group();
    let mut warnings = Vec::new();
    let (binary, verdict) = match method {
        Method::Ti => {
            let v = ti_binary_criterion(g, &h)?;
            match v {
                TiVerdict::NotTi => {
                    return Err(Error::Usage(format!("{canon} is not a TI-subgroup; try --method filter")))
                }
                TiVerdict::Binary { .. } => (Some(true), Verdict::Ti(v)),
                TiVerdict::NotBinary { .. } => (Some(false), Verdict::Ti(v)),
            }
        }
        Method::Bounded => {
            let index = g.order() / h.order();
            if index > MAX_BOUNDED_DEGREE as u128 {
                return Err(Error::Usage(format!(
                    "bounded search needs degree <= {MAX_BOUNDED_DEGREE}, the action has degree {index}"
                )));
            }
            let act = CosetAction::new(g, &h)?;
            let n = max_n.unwrap_or(act.degree());
            let v = binary_bounded(act.image(), n, DEFAULT_NODE_BUDGET)?;
            let b = match &v {
                BinaryVerdict::Violation { .. } => Some(false),
                BinaryVerdict::NoViolation { max_n } if *max_n == act.degree() => Some(true),
                _ => None,
            };
            (b, Verdict::Bounded(v))
        }
        Method::Filter => {
            let mut reg = registry(&cat, run);
            let v = stabilizer_filter(&mut reg, &h, &run.options())?;
            warnings.extend(reg.take_warnings());
            let b = match &v {
                FilterVerdict::Fail { .. } => Some(false),
                _ => None,
            };
            (b, Verdict::Filter(v))
        }
    };
    let out = BinaryOut {
        group_order: g.order(),
        subgroup_order: h.order(),
        degree: g.order() / h.order(),
        method: method_name,
        binary,
        verdict,
        warnings,
    };
    let word = match (&out.verdict, out.binary) {
        (_, Some(true)) => "binary".to_string(),
        (_, Some(false)) => "not binary".to_string(),
        (Verdict::Filter(FilterVerdict::Pass { .. }), None) => "filter passed (binarity not decided)".to_string(),
        (Verdict::Filter(FilterVerdict::Inconclusive { reason }), None) => format!("inconclusive: {reason}"),
        (Verdict::Bounded(BinaryVerdict::NoViolation { max_n }), None) => format!("no violation up to length {max_n}"),
        (Verdict::Bounded(BinaryVerdict::Inconclusive { reason }), None) => format!("inconclusive: {reason}"),
        _ => "undecided".to_string(),
    };
    let summary = format!("{} on cosets of {canon} (degree {}), {method_name}: {word}", cat.spec(), out.degree);
    outcome(EXIT_OK, &out, summary)
}

fn compute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Group { group } => cmd_group(group),
        Command::Delta { group, label, run } => cmd_delta(group, label, run),
        Command::DeltaInf { group, label, run } => cmd_delta_inf(group, label, run),
        Command::ClassGraph { group, run, .. } => cmd_class_graph(group, run),
        Command::Binary { group, subgroup, method, max_n, run } => cmd_binary(group, subgroup, *method, *max_n, run),
    }
}

/// Canonical inputs of the command, used as the cache key.
pub fn run_inputs(cli: &Cli) -> Result<RunInputs> {
    let canon_group = |g: &str| -> Result<(GroupSpec, String)> {
        let spec: GroupSpec = g.parse()?;
        let s = spec.to_string();
        Ok((spec, s))
    };
    Ok(match &cli.command {
        Command::Group { group } => RunInputs {
            command: "group".into(),
            group: canon_group(group)?.1,
            label: None,
            subgroup: None,
            method: None,
            mode: "det".into(),
            samples: 0,
            seed: 0,
            budget: 0,
        },
        Command::Delta { group, label, run } | Command::DeltaInf { group, label, run } => {
            let (spec, g) = canon_group(group)?;
            let name = if matches!(cli.command, Command::Delta { .. }) { "delta" } else { "delta-inf" };
            let mut i = run.inputs(name, &g);
            i.label = Some(InvolutionLabel::parse(label, &spec)?.to_string());
            i
        }
        Command::ClassGraph { group, run, .. } => run.inputs("class-graph", &canon_group(group)?.1),
        Command::Binary { group, subgroup, method, max_n, run } => {
            let mut i = run.inputs("binary", &canon_group(group)?.1);
            let sub = match subgroup.split_once(':') {
                Some(("gens", path)) => {
                    let text = std::fs::read_to_string(path)?;
                    format!("gens:{}", hex::encode(sha2::Sha256::digest(text.as_bytes())))
                }
                _ => subgroup.chars().filter(|c| !c.is_whitespace()).collect::<String>().replace("center", "centre"),
            };
            i.subgroup = Some(sub);
            let m = method.to_possible_value().expect("not skipped").get_name().to_string();
            i.method = Some(match max_n {
                Some(n) => format!("{m}:{n}"),
                None => m,
            });
            i
        }
    })
}

fn time_limited(cli: &Cli) -> bool {
    match &cli.command {
        Command::Group { .. } => false,
        Command::Delta { run, .. }
        | Command::DeltaInf { run, .. }
        | Command::ClassGraph { run, .. }
        | Command::Binary { run, .. } => run.time_limit.is_some(),
    }
}

/// Runs the parsed command, printing to `out` and `err`; returns the exit
/// code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match run_inner(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn run_inner(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    if let Some(n) = cli.threads {
        // Fails only if a pool already exists, which is harmless.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let inputs = run_inputs(cli)?;
    let use_cache = !cli.no_cache && !time_limited(cli);
    let dir = record::cache_dir();
    let cached = if use_cache && !cli.recompute { record::load(&dir, &inputs)? } else { None };
    let rec = match cached {
        Some(r) => r,
        None => {
            let start = Instant::now();
            let o = compute(cli)?;
            let rec = RunRecord {
                inputs,
                version: env!("CARGO_PKG_VERSION").into(),
                field_table_version: crate::algebra::field::FIELD_TABLE_VERSION,
                wall_clock_ms: start.elapsed().as_millis() as u64,
                status: o.status,
                summary: o.summary,
                result: o.result,
            };
            if use_cache {
                if let Err(e) = record::store(&dir, &rec) {
                    writeln!(err, "warning: could not write cache: {e}")?;
                }
            }
            rec
        }
    };
    if let Command::ClassGraph { dot: Some(path), .. } = &cli.command {
        #[derive(serde::Deserialize)]
        struct Dot {
            dot: String,
        }
        let d: Dot = serde_json::from_str(rec.result.get())?;
        std::fs::write(path, d.dot)?;
    }
    if cli.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&rec)?)?;
    } else {
        writeln!(out, "{}", rec.summary)?;
    }
    Ok(rec.status)
}
