//! `dpn`: Hilbert tables, fits, series, classification and witnesses from
//! the command line. Data goes to stdout, diagnostics to stderr.

mod spec;

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use dpn::arith::Prime;
use dpn::checks::{run_criterion, CriterionResult, CRITERIA};
use dpn::classify::{build_tk_simple, build_u, induced_splitting_count, maximal_ideal_data, tk_dimension_formulas};
use dpn::coeff::{FieldSpec, UniPoly};
use dpn::dring::{DOp, RingSpec};
use dpn::modrep::{field_from_name, mr_breakpoints, zoo, zoo_names, CyclicQuotient, ModuleRep, ZooEntry, ZooParams};
use dpn::series::fit_almost_polynomial;
use dpn::witness::{bernstein_witness_with, witness_batch, PolyRule};

use spec::SpecArgs;

#[derive(Parser, Debug)]
#[command(name = "dpn", version, about = "Differential operators on polynomial rings in characteristic p")]
struct Cli {
    /// Worker threads for parallel batches; defaults to all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Rule {
    Valuation,
    LeadingDigit,
}

impl From<Rule> for PolyRule {
    fn from(r: Rule) -> PolyRule {
        match r {
            Rule::Valuation => PolyRule::Valuation,
            Rule::LeadingDigit => PolyRule::LeadingDigit,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Hilbert function `dim F_i M` for `i = 0..=N`.
    Hilbert {
        #[command(flatten)]
        module: SpecArgs,
        #[arg(long = "N", default_value_t = 20)]
        level: usize,
        /// Count by exact rank instead of basis weights.
        #[arg(long)]
        rank: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Fit an almost polynomial to a Hilbert function.
    Fit {
        #[command(flatten)]
        module: SpecArgs,
        /// Fit a saved table (JSON array or `i,dim` CSV, `-` for stdin) instead of a module.
        #[arg(long)]
        dims: Option<String>,
        #[arg(long = "N", default_value_t = 60)]
        level: usize,
        /// Largest period exponent tried.
        #[arg(long, default_value_t = 3)]
        k_max: u32,
    },
    /// Closed-form Poincaré series of a module family.
    Poincare {
        #[command(flatten)]
        module: SpecArgs,
        /// Also expand this many terms.
        #[arg(long)]
        terms: Option<usize>,
    },
    /// Residue data, the simple module and the T_k table of a maximal ideal.
    Classify {
        /// Minimal polynomial; repeat once per variable.
        #[arg(long, required = true)]
        g: Vec<String>,
        #[arg(long, env = "DPN_P")]
        p: u32,
        #[arg(long, env = "DPN_FIELD")]
        field: Option<String>,
        /// Comma-separated `k_i`; defaults to `k(m)`.
        #[arg(long, value_delimiter = ',')]
        ks: Option<Vec<u32>>,
    },
    /// Walk an operator down to a nonzero scalar by commutators.
    Witness {
        /// Operator literal such as `x1^3*d1[2] + x2`.
        #[arg(long, required_unless_present = "random")]
        op: Option<String>,
        /// Witness this many random operators instead.
        #[arg(long, conflicts_with = "op")]
        random: Option<usize>,
        #[arg(long, env = "DPN_P")]
        p: u32,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, env = "DPN_FIELD")]
        field: Option<String>,
        #[arg(long, value_enum, default_value = "valuation")]
        rule: Rule,
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// List the module families.
    ZooList {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Breakpoints of the prescribed-growth construction.
    MrConstruct {
        /// Growth exponent `a/b` with `0 < a/b < 1`.
        #[arg(long)]
        r: String,
        #[arg(long, env = "DPN_P")]
        p: u32,
        #[arg(long, default_value_t = 3)]
        count: usize,
    },
    /// Run the acceptance criteria; exits 1 if any fails.
    CheckSuite {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Comma-separated criterion ids; defaults to all.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<u8>>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

impl Verb {
    fn name(&self) -> &'static str {
        match self {
            Verb::Hilbert { .. } => "hilbert",
            Verb::Fit { .. } => "fit",
            Verb::Poincare { .. } => "poincare",
            Verb::Classify { .. } => "classify",
            Verb::Witness { .. } => "witness",
            Verb::ZooList { .. } => "zoo-list",
            Verb::MrConstruct { .. } => "mr-construct",
            Verb::CheckSuite { .. } => "check-suite",
        }
    }
}

/// Usage problems exit 2, failed computations exit 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(dpn::Error),
    /// Already reported on stdout; only the exit code is left.
    Failed(String),
    /// The reader went away; stop quietly.
    Closed,
}

impl From<dpn::Error> for CliError {
    fn from(e: dpn::Error) -> CliError {
        CliError::Compute(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> CliError {
        match e.kind() {
            io::ErrorKind::BrokenPipe => CliError::Closed,
            _ => CliError::Compute(dpn::Error::Domain(format!("i/o: {e}"))),
        }
    }
}

type Outcome = Result<(), CliError>;

fn prime(p: u32) -> Result<Prime, CliError> {
    Prime::new(p).map_err(|e| CliError::Usage(e.to_string()))
}

/// Build a zoo module; malformed parameters are the caller's fault.
fn build(params: &ZooParams) -> Result<ZooEntry, CliError> {
    zoo(params).map_err(|e| match e {
        dpn::Error::Parameter(_) | dpn::Error::Parse { .. } => CliError::Usage(e.to_string()),
        other => CliError::Compute(other),
    })
}

/// `Fp(t)` by default exactly when a literal mentions `t`.
fn field_for(p: Prime, name: Option<&str>, literals: &[&str]) -> Result<FieldSpec, CliError> {
    match name {
        Some(n) => field_from_name(n, p).map_err(|e| CliError::Usage(e.to_string())),
        None if literals.iter().any(|s| s.contains('t')) => Ok(FieldSpec::rational(p)),
        None => Ok(FieldSpec::prime_field(p)),
    }
}

fn print_json<T: Serialize>(v: &T) -> Outcome {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v).map_err(|e| match e.io_error_kind() {
        Some(kind) => CliError::from(io::Error::from(kind)),
        None => CliError::Compute(dpn::Error::Domain(e.to_string())),
    })?;
    writeln!(out)?;
    Ok(())
}

fn dims_of(entry: &ZooEntry, level: usize, rank: bool) -> Result<Vec<u64>, CliError> {
    match &entry.rep {
        ModuleRep::Cyclic(c) => {
            let q = CyclicQuotient::new(c.ring(), c.generators().to_vec(), level, c.buffer().max(level))?;
            let h = q.hilbert()?;
            if !h.stabilized {
                eprintln!("warning: dims not stabilized at buffer {}; they are lower bounds", h.buffer);
            }
            Ok(h.dims)
        }
        rep if rank => Ok(rep.dims_by_rank(level)?),
        rep => Ok(rep.dims(level)?),
    }
}

fn hilbert(module: &SpecArgs, level: usize, rank: bool, format: Format) -> Outcome {
    let params = module.params(Some(level))?;
    let entry = build(&params)?;
    eprintln!("computing {} up to N = {level}", entry.name);
    let dims = dims_of(&entry, level, rank)?;
    match format {
        Format::Json => print_json(&dims),
        Format::Csv | Format::Text => {
            let mut w = csv::Writer::from_writer(io::stdout().lock());
            let io_err = |e: csv::Error| match e.into_kind() {
                csv::ErrorKind::Io(e) => CliError::from(e),
                other => CliError::Compute(dpn::Error::Domain(format!("{other:?}"))),
            };
            w.write_record(["i", "dim"]).map_err(io_err)?;
            for (i, d) in dims.iter().enumerate() {
                w.serialize((i, d)).map_err(io_err)?;
            }
            w.flush()?;
            Ok(())
        }
    }
}

/// A JSON array or an `i,dim` CSV table.
fn parse_dims(text: &str) -> Result<Vec<u64>, CliError> {
    if text.trim_start().starts_with('[') {
        return serde_json::from_str(text).map_err(|e| CliError::Usage(format!("bad dims array: {e}")));
    }
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let mut out = Vec::new();
    for row in r.deserialize::<(usize, u64)>() {
        let (i, d) = row.map_err(|e| CliError::Usage(format!("bad dims table: {e}")))?;
        if i != out.len() {
            return Err(CliError::Usage(format!("dims table skips index {}", out.len())));
        }
        out.push(d);
    }
    Ok(out)
}

fn read_source(src: &str) -> Result<String, CliError> {
    if src == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(src).map_err(|e| CliError::Usage(format!("cannot read {src:?}: {e}")))
    }
}

fn fit(module: &SpecArgs, dims: Option<&str>, level: usize, k_max: u32) -> Outcome {
    let (seq, p) = match dims {
        Some(src) => {
            let p = module.p.ok_or_else(|| CliError::Usage("fitting a table needs --p or DPN_P".into()))?;
            (parse_dims(&read_source(src)?)?, prime(p)?)
        }
        None => {
            let params = module.params(Some(level))?;
            let entry = build(&params)?;
            let p = prime(params.p.expect("checked by params"))?;
            (dims_of(&entry, level, false)?, p)
        }
    };
    let profile = fit_almost_polynomial(&seq, p, k_max)?;
    let mut v = serde_json::to_value(&profile).expect("plain data");
    if let Value::Object(m) = &mut v {
        m.insert("Dim".into(), json!(profile.degree));
    }
    print_json(&v)
}

fn poincare(module: &SpecArgs, terms: Option<usize>) -> Outcome {
    let params = module.params(None)?;
    let entry = build(&params)?;
    let series = entry.expected_series.as_ref().ok_or_else(|| {
        CliError::Compute(dpn::Error::Unsupported(format!("family {} has no closed-form series", params.family)))
    })?;
    let mut v = serde_json::to_value(series.report()?).expect("plain data");
    if let (Some(t), Value::Object(m)) = (terms, &mut v) {
        let coeffs: Vec<String> = series.expand_integers(t)?.iter().map(ToString::to_string).collect();
        m.insert("terms".into(), json!(coeffs));
    }
    print_json(&v)
}

fn classify(g: &[String], p: u32, field: Option<&str>, ks: Option<Vec<u32>>) -> Outcome {
    let p = prime(p)?;
    let literals: Vec<&str> = g.iter().map(String::as_str).collect();
    let field = field_for(p, field, &literals)?;
    let polys = g
        .iter()
        .map(|s| UniPoly::parse(s, &field).map_err(|e| CliError::Usage(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let data = maximal_ideal_data(&polys)?;
    let ks = ks.unwrap_or_else(|| data.k.clone());
    let u = build_u(&data)?;
    let mut out = json!({
        "ideal": data,
        "U": {
            "series": u.expected_series.report()?,
            "Dim": u.expected_dim,
            "multiplicity": u.expected_multiplicity.to_string(),
        },
        "induced_splitting_count": induced_splitting_count(&data),
        "ks": ks,
        "tk": tk_dimension_formulas(&ks, &data)?,
    });
    if data.n() == 1 {
        out["tk_simple"] = serde_json::to_value(build_tk_simple(ks[0], &data.g[0])?).expect("plain data");
    }
    print_json(&out)
}

#[allow(clippy::too_many_arguments)]
fn witness(
    op: Option<&str>,
    random: Option<usize>,
    p: u32,
    n: usize,
    field: Option<&str>,
    rule: PolyRule,
    max_degree: u32,
    seed: u64,
    format: Format,
) -> Outcome {
    let p = prime(p)?;
    let field = field_for(p, field, &op.into_iter().collect::<Vec<_>>())?;
    let ring = RingSpec::new(n, field).map_err(|e| CliError::Usage(e.to_string()))?;
    if let Some(count) = random {
        eprintln!("witnessing {count} random operators, seed {seed}");
        let report = witness_batch(&ring, count, max_degree, rule, seed);
        print_json(&report)?;
        return if report.passed() { Ok(()) } else { Err(CliError::Failed("batch had failures".into())) };
    }
    let literal = op.expect("clap requires --op without --random");
    let a = DOp::parse(literal, &ring).map_err(|e| CliError::Usage(e.to_string()))?;
    let chain = bernstein_witness_with(&a, rule)?;
    match format {
        Format::Text => Ok(writeln!(io::stdout(), "{chain}")?),
        _ => print_json(&chain),
    }
}

fn zoo_list(format: Format) -> Outcome {
    match format {
        Format::Json => {
            let v: Vec<Value> = zoo_names().iter().map(|(n, d)| json!({"family": n, "description": d})).collect();
            print_json(&v)
        }
        _ => {
            let mut out = io::stdout().lock();
            for (name, desc) in zoo_names() {
                writeln!(out, "{name:<16} {desc}")?;
            }
            Ok(())
        }
    }
}

fn mr_construct(r: &str, p: u32, count: usize) -> Outcome {
    let bad = || CliError::Usage(format!("r must look like a/b, got {r:?}"));
    let (a, b) = r.split_once('/').ok_or_else(bad)?;
    let ratio = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    let c = mr_breakpoints(ratio, prime(p)?, count).map_err(|e| CliError::Usage(e.to_string()))?;
    print_json(&c)
}

fn check_suite(seed: u64, only: Option<Vec<u8>>, format: Format) -> Outcome {
    let ids = only.unwrap_or_else(|| CRITERIA.iter().map(|c| c.0).collect());
    let mut results: Vec<CriterionResult> = Vec::new();
    for id in ids {
        eprintln!("criterion {id}");
        let r = run_criterion(id, seed).map_err(|e| CliError::Usage(e.to_string()))?;
        if !matches!(format, Format::Json) {
            writeln!(io::stdout(), "{r}")?;
        }
        results.push(r);
    }
    if matches!(format, Format::Json) {
        print_json(&results)?;
    }
    let failed: Vec<String> = results.iter().filter(|r| !r.passed).map(|r| r.id.to_string()).collect();
    eprintln!("{} of {} passed", results.len() - failed.len(), results.len());
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("failed criteria: {}", failed.join(", "))))
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.verb {
        Verb::Hilbert { module, level, rank, format } => hilbert(&module, level, rank, format),
        Verb::Fit { module, dims, level, k_max } => fit(&module, dims.as_deref(), level, k_max),
        Verb::Poincare { module, terms } => poincare(&module, terms),
        Verb::Classify { g, p, field, ks } => classify(&g, p, field.as_deref(), ks),
        Verb::Witness { op, random, p, n, field, rule, max_degree, seed, format } => {
            witness(op.as_deref(), random, p, n, field.as_deref(), rule.into(), max_degree, seed, format)
        }
        Verb::ZooList { format } => zoo_list(format),
        Verb::MrConstruct { r, p, count } => mr_construct(&r, p, count),
        Verb::CheckSuite { seed, only, format } => check_suite(seed, only, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("warning: could not size the worker pool: {e}");
        }
    }
    let verb = cli.verb.name();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            let mut cmd = Cli::command();
            cmd.build();
            if let Some(sub) = cmd.find_subcommand_mut(verb) {
                eprintln!("{}", sub.render_usage());
            }
            ExitCode::from(2)
        }
        Err(CliError::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(CliError::Closed) => ExitCode::SUCCESS,
        Err(CliError::Failed(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
    }
}
