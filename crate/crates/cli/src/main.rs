use std::fmt;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use smallcover::classifier::{
    classify, classify_all, invariant_tuple, n_formula, nt_nnt_formulas, ClassLabel, ClassRow,
};
use smallcover::cohomology::build_ring;
use smallcover::coloring::{dj_representatives, enumerate};
use smallcover::sector_ops::{canonical_form, format_trace, verify_reduction};
use smallcover::verify::{run_all, M_MAX_LIMIT};
use smallcover::Coloring;

/// Largest m accepted by `count`.
const COUNT_LIMIT: usize = 12;

#[derive(Parser)]
#[command(
    name = "smallcover",
    version,
    about = "Small covers over the prisms P3(m): enumerate, reduce, classify, count"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every valid coloring of P3(m), one per line
    Enumerate {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = UpTo::Raw)]
        up_to: UpTo,
        /// Print only the number of colorings
        #[arg(long)]
        count_only: bool,
    },
    /// Print the cohomology invariants of one coloring as JSON
    Invariants { spec: String },
    /// Reduce a coloring to its canonical form and print the move trace
    Canonical {
        spec: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print one row per homeomorphism class for m
    Classify {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Compare N(m) with the number of classes found by enumeration
    Count {
        #[arg(long, default_value_t = 3)]
        m_min: usize,
        #[arg(long, default_value_t = 8)]
        m_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the self-check suites for 3 <= m <= m_max
    Verify {
        #[arg(long, default_value_t = 6)]
        m_max: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum UpTo {
    Raw,
    Dj,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

/// A computed result contradicts an expected one.
#[derive(Debug)]
struct IntegrityFailure(String);

impl fmt::Display for IntegrityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "integrity failure: {}", self.0)
    }
}

impl std::error::Error for IntegrityFailure {}

/// Wrong flags or unusable input.
#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn integrity(msg: impl Into<String>) -> anyhow::Error {
    IntegrityFailure(msg.into()).into()
}

#[derive(Serialize)]
struct InvariantRecord {
    m: usize,
    trivial: bool,
    delta: usize,
    b_bar: [u64; 2],
    b_histogram: Vec<u64>,
    nm: Option<[usize; 2]>,
    orientable: bool,
    k_cap_h2: usize,
    betti: [usize; 4],
}

#[derive(Serialize)]
struct ClassRecord {
    label: String,
    representative: String,
    trivial: bool,
    delta: usize,
    b_bar: String,
    nm: String,
    orientable: bool,
    k_cap_h2: usize,
    orbits: usize,
}

impl From<&ClassRow> for ClassRecord {
    fn from(r: &ClassRow) -> Self {
        let t = &r.tuple;
        ClassRecord {
            label: r.label.to_string(),
            representative: r.representative.to_string(),
            trivial: t.trivial,
            delta: t.delta,
            b_bar: format!("{},{}", t.b_bar.0, t.b_bar.1),
            nm: t.nm.map(|(n, mm)| format!("{n},{mm}")).unwrap_or_default(),
            orientable: t.orientable,
            k_cap_h2: t.k_cap_h2,
            orbits: r.orbit_count,
        }
    }
}

#[derive(Serialize)]
struct ClassTable {
    m: usize,
    classes: usize,
    n_formula: usize,
    orbits: usize,
    rows: Vec<ClassRecord>,
}

#[derive(Serialize)]
struct CountRecord {
    m: usize,
    n: usize,
    n_t: Option<usize>,
    n_nt: Option<usize>,
    enumerated: usize,
    enumerated_t: usize,
    enumerated_nt: usize,
}

#[derive(Serialize)]
struct CanonicalRecord {
    input: String,
    class: String,
    canonical: String,
    trace: Vec<String>,
}

fn parse_spec(spec: &str) -> Result<Coloring> {
    spec.parse().map_err(|e| usage(format!("{e}")))
}

fn write_csv<T: Serialize>(rows: &[T], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_enumerate(m: usize, up_to: UpTo, count_only: bool, out: &mut impl Write) -> Result<()> {
    let colorings: Box<dyn Iterator<Item = Coloring>> = match up_to {
        UpTo::Raw => Box::new(enumerate(m)?),
        UpTo::Dj => Box::new(dj_representatives(m)?.into_iter()),
    };
    if count_only {
        writeln!(out, "{}", colorings.count())?;
    } else {
        for c in colorings {
            writeln!(out, "{c}")?;
        }
    }
    Ok(())
}

fn cmd_invariants(spec: &str, out: &mut impl Write) -> Result<()> {
    let c = parse_spec(spec)?;
    let t = invariant_tuple(&c)?;
    let ring = build_ring(&c)?;
    let report = ring.invariant_report()?;
    let rec = InvariantRecord {
        m: c.m(),
        trivial: t.trivial,
        delta: t.delta,
        b_bar: [t.b_bar.0, t.b_bar.1],
        b_histogram: report.b_histogram,
        nm: t.nm.map(|(n, mm)| [n, mm]),
        orientable: t.orientable,
        k_cap_h2: t.k_cap_h2,
        betti: ring.betti(),
    };
    writeln!(out, "{}", serde_json::to_string(&rec)?)?;
    Ok(())
}

fn cmd_canonical(spec: &str, format: Format, out: &mut impl Write) -> Result<()> {
    let c = parse_spec(spec)?;
    let red = canonical_form(&c)?;
    verify_reduction(&c, &red).map_err(|e| integrity(format!("trace does not replay: {e}")))?;
    let label = classify(&red.result)?;
    if classify(&c)? != label {
        return Err(integrity(format!("{c} and its canonical form {} are classified differently", red.result)));
    }
    let rec = CanonicalRecord {
        input: c.to_string(),
        class: label.to_string(),
        canonical: red.result.to_string(),
        trace: red.trace.iter().map(ToString::to_string).collect(),
    };
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(&rec)?)?,
        Format::Csv => return Err(usage("canonical supports --format text or json")),
        Format::Text => {
            writeln!(out, "class {}", rec.class)?;
            writeln!(out, "canonical {}", rec.canonical)?;
            writeln!(out, "trace {} moves", red.trace.len())?;
            write!(out, "{}", format_trace(&red.trace))?;
        }
    }
    Ok(())
}

fn cmd_classify(m: usize, format: Format, out: &mut impl Write) -> Result<()> {
    let rows = classify_all(m)?;
    let table = ClassTable {
        m,
        classes: rows.len(),
        n_formula: n_formula(m)?,
        orbits: rows.iter().map(|r| r.orbit_count).sum(),
        rows: rows.iter().map(ClassRecord::from).collect(),
    };
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&table)?)?,
        Format::Csv => write_csv(&table.rows, &mut *out)?,
        Format::Text => {
            for r in &table.rows {
                writeln!(
                    out,
                    "{:<14} {:<28} delta={} b_bar=({}) nm=({}) orientable={} k_cap_h2={} orbits={}",
                    r.label, r.representative, r.delta, r.b_bar, r.nm, r.orientable, r.k_cap_h2, r.orbits
                )?;
            }
        }
    }
    eprintln!("total: {} classes over {} orbits, N({m}) = {}", table.classes, table.orbits, table.n_formula);
    if table.classes != table.n_formula {
        return Err(integrity(format!("m={m}: {} classes but N(m) = {}", table.classes, table.n_formula)));
    }
    Ok(())
}

fn cmd_count(m_min: usize, m_max: usize, format: Format, out: &mut impl Write) -> Result<()> {
    if m_min < 3 || m_max > COUNT_LIMIT || m_min > m_max {
        return Err(usage(format!("need 3 <= m-min <= m-max <= {COUNT_LIMIT}")));
    }
    let mut records = Vec::new();
    let mut offending = Vec::new();
    for m in m_min..=m_max {
        eprintln!("counting m={m}");
        let labels: Vec<ClassLabel> = classify_all(m)?.into_iter().map(|r| r.label).collect();
        let enumerated_t = labels.iter().filter(|l| matches!(l, ClassLabel::Trivial(_))).count();
        let split = if m > 4 { Some(nt_nnt_formulas(m)?) } else { None };
        let rec = CountRecord {
            m,
            n: n_formula(m)?,
            n_t: split.map(|s| s.0),
            n_nt: split.map(|s| s.1),
            enumerated: labels.len(),
            enumerated_t,
            enumerated_nt: labels.iter().filter(|l| matches!(l, ClassLabel::Nontrivial(..))).count(),
        };
        let split_ok = split.is_none_or(|(t, nt)| (t, nt) == (rec.enumerated_t, rec.enumerated_nt));
        if rec.n != rec.enumerated || !split_ok {
            offending.push(m);
        }
        records.push(rec);
    }
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&records)?)?,
        Format::Csv => write_csv(&records, &mut *out)?,
        Format::Text => {
            let opt = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
            writeln!(out, "{:>3} {:>4} {:>4} {:>5} {:>11}", "m", "N", "N_t", "N_nt", "enumerated")?;
            for r in &records {
                writeln!(out, "{:>3} {:>4} {:>4} {:>5} {:>11}", r.m, r.n, opt(r.n_t), opt(r.n_nt), r.enumerated)?;
            }
        }
    }
    if !offending.is_empty() {
        return Err(integrity(format!("formula and enumeration disagree for m in {offending:?}")));
    }
    Ok(())
}

fn cmd_verify(m_max: usize, out: &mut impl Write) -> Result<()> {
    if !(3..=M_MAX_LIMIT).contains(&m_max) {
        return Err(usage(format!("--m-max must lie in 3..={M_MAX_LIMIT}")));
    }
    let reports = run_all(m_max)?;
    for r in &reports {
        let status = if r.passed { "PASS" } else { "FAIL" };
        writeln!(out, "{status} {:<14} {:>8.2}s {}", r.name, r.elapsed.as_secs_f64(), r.detail)?;
    }
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed).map(|r| r.name).collect();
    if !failed.is_empty() {
        return Err(integrity(format!("suites failed: {}", failed.join(", "))));
    }
    writeln!(out, "all {} suites passed for m <= {m_max}", reports.len())?;
    Ok(())
}

fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("SMALLCOVER_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| usage(format!("SMALLCOVER_THREADS={v:?} is not a number")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring the worker pool")?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    configure_threads()?;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cli.command {
        Command::Enumerate { m, up_to, count_only } => cmd_enumerate(m, up_to, count_only, &mut out)?,
        Command::Invariants { spec } => cmd_invariants(&spec, &mut out)?,
        Command::Canonical { spec, format } => cmd_canonical(&spec, format, &mut out)?,
        Command::Classify { m, format } => cmd_classify(m, format, &mut out)?,
        Command::Count { m_min, m_max, format } => cmd_count(m_min, m_max, format, &mut out)?,
        Command::Verify { m_max } => cmd_verify(m_max, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<IntegrityFailure>().is_some()
        || matches!(err.downcast_ref::<smallcover::Error>(), Some(smallcover::Error::Integrity(_)))
    {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
