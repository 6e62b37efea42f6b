use std::collections::BTreeSet;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use tevelev::crosscheck::{self, CheckResult, GridSpec, TevelevGrid, Verdict};
use tevelev::report::{compute, ComputationReport, ComputeError, EngineChoice, Kind};
use tevelev::{CurveClass, EngineId};

#[derive(Parser)]
#[command(name = "tevelev", version, about = "Tevelev degrees of blow-ups of projective space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one instance.
    Compute {
        #[arg(long)]
        r: i64,
        #[arg(long)]
        g: i64,
        #[arg(long)]
        d: i64,
        /// Comma-separated multiplicities; empty for no blown-up points.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        k: Vec<i64>,
        #[arg(long)]
        n: Option<i64>,
        #[arg(long, default_value = "both")]
        kind: Kind,
        #[arg(long, default_value = "auto")]
        engine: EngineChoice,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Compute newline-delimited JSON requests.
    Batch {
        #[arg(long)]
        input: PathBuf,
        /// Defaults to standard output.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        parallel: u32,
    },
    /// Scan a grid and compare engines.
    Crosscheck {
        /// One of l1-small, genus0-small, r2l2, qh-lemma.
        #[arg(long)]
        grid: Option<String>,
        /// Range flags for a custom grid, written `a..b` or `a`.
        #[arg(long = "r-range")]
        r_range: Option<String>,
        #[arg(long = "ell-range")]
        ell_range: Option<String>,
        #[arg(long = "g-range")]
        g_range: Option<String>,
        #[arg(long = "k-range")]
        k_range: Option<String>,
        #[arg(long = "d-range")]
        d_range: Option<String>,
        /// Comma-separated engine names; all applicable engines if absent.
        #[arg(long, value_delimiter = ',')]
        engines: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        parallel: u32,
    },
}

const EXIT_INCONSISTENT: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_IO: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute {
            r,
            g,
            d,
            k,
            n,
            kind,
            engine,
            format,
        } => cmd_compute(r, g, CurveClass::new(d, k), n, kind, engine, format),
        Command::Batch {
            input,
            output,
            parallel,
        } => cmd_batch(&input, output.as_deref(), parallel as usize),
        Command::Crosscheck {
            grid,
            r_range,
            ell_range,
            g_range,
            k_range,
            d_range,
            engines,
            format,
            parallel,
        } => {
            let ranges = [r_range, ell_range, g_range, k_range, d_range];
            cmd_crosscheck(grid.as_deref(), ranges, &engines, format, parallel as usize)
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_IO)
        }
    }
}

fn cmd_compute(
    r: i64,
    g: i64,
    beta: CurveClass,
    n: Option<i64>,
    kind: Kind,
    engine: EngineChoice,
    format: Format,
) -> io::Result<u8> {
    let report = match compute(r, g, beta, n, kind, engine) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(EXIT_INPUT);
        }
    };
    let mut out = io::stdout().lock();
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(&report)?)?,
        Format::Csv => write_report_csv(&mut out, &report)?,
        Format::Plain => write_report_plain(&mut out, &report)?,
    }
    if report.inconsistent() {
        eprintln!("error: engines disagree");
        return Ok(EXIT_INCONSISTENT);
    }
    Ok(0)
}

fn report_instance(rep: &ComputationReport) -> String {
    format!(
        "r={} g={} n={} d={} k=[{}]",
        rep.r,
        rep.g,
        rep.n,
        rep.d,
        rep.k.join(",")
    )
}

fn write_report_csv(out: &mut impl Write, rep: &ComputationReport) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["instance", "engine", "value", "verdict"])?;
    let instance = report_instance(rep);
    let verdict = rep.verdict.clone().unwrap_or_default();
    for (engine, value) in &rep.engines {
        w.write_record([instance.as_str(), engine, value, &verdict])?;
    }
    for (engine, err) in &rep.errors {
        w.write_record([instance.as_str(), engine, &format!("error: {err}"), &verdict])?;
    }
    w.flush()
}

fn write_report_plain(out: &mut impl Write, rep: &ComputationReport) -> io::Result<()> {
    writeln!(out, "{}", report_instance(rep))?;
    if rep.n_derived {
        writeln!(out, "n derived from the dimension constraint")?;
    }
    let reg = &rep.regime;
    writeln!(
        out,
        "balanced={} strong_inequality={} geometric_range={} virtual_range={} sae={:?}",
        reg.balanced, reg.strong_inequality, reg.geometric_range, reg.virtual_range, reg.sae
    )?;
    for (engine, value) in &rep.engines {
        writeln!(out, "  {engine:<22} {value}")?;
    }
    for (engine, err) in &rep.errors {
        writeln!(out, "  {engine:<22} error: {err}")?;
    }
    if let Some(v) = &rep.tev {
        writeln!(out, "tev = {v}")?;
    }
    if let Some(v) = &rep.vtev {
        writeln!(out, "vtev = {v}")?;
    }
    if let Some(v) = &rep.verdict {
        match &rep.reason {
            Some(why) => writeln!(out, "verdict: {v} ({why})")?,
            None => writeln!(out, "verdict: {v}")?,
        }
    }
    Ok(())
}

/// Integer field given either as a JSON number or a decimal string.
fn int_field(v: &Value, name: &str) -> Result<i64, String> {
    match v {
        Value::Number(x) => x.as_i64().ok_or_else(|| format!("{name}: not an integer")),
        Value::String(s) => s.trim().parse().map_err(|_| format!("{name}: not an integer")),
        _ => Err(format!("{name}: expected a number or a decimal string")),
    }
}

fn str_field<T: std::str::FromStr<Err = String>>(obj: &Map<String, Value>, name: &str) -> Result<Option<T>, String> {
    match obj.get(name) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => s.parse().map(Some).map_err(|e| format!("{name}: {e}")),
        Some(_) => Err(format!("{name}: expected a string")),
    }
}

struct Request {
    r: i64,
    g: i64,
    beta: CurveClass,
    n: Option<i64>,
    kind: Kind,
    engine: EngineChoice,
}

fn parse_request(line: &str) -> Result<Request, String> {
    let value: Value = serde_json::from_str(line).map_err(|e| format!("malformed JSON: {e}"))?;
    let obj = value.as_object().ok_or("expected a JSON object")?;
    let get = |name: &str| obj.get(name).ok_or_else(|| format!("missing field {name}"));
    let r = int_field(get("r")?, "r")?;
    let g = int_field(get("g")?, "g")?;
    let d = int_field(get("d")?, "d")?;
    let k = match get("k")? {
        Value::Array(items) => items
            .iter()
            .map(|x| int_field(x, "k"))
            .collect::<Result<Vec<_>, _>>()?,
        _ => return Err("k: expected an array".into()),
    };
    let n = match obj.get("n") {
        None | Some(Value::Null) => None,
        Some(v) => Some(int_field(v, "n")?),
    };
    // records written by compute carry n together with n_derived = true
    let n = if obj.get("n_derived") == Some(&Value::Bool(true)) {
        None
    } else {
        n
    };
    Ok(Request {
        r,
        g,
        beta: CurveClass::new(d, k),
        n,
        kind: str_field(obj, "kind")?.unwrap_or_default(),
        engine: str_field(obj, "engine")?.unwrap_or_default(),
    })
}

fn batch_record(line_no: usize, line: &str) -> (Value, bool) {
    let error = |msg: String| (json!({ "line": line_no.to_string(), "error": msg }), false);
    let req = match parse_request(line) {
        Ok(req) => req,
        Err(msg) => return error(msg),
    };
    match compute(req.r, req.g, req.beta, req.n, req.kind, req.engine) {
        Ok(rep) => {
            let bad = rep.inconsistent();
            (serde_json::to_value(&rep).expect("report serializes"), bad)
        }
        Err(e @ (ComputeError::Problem(_) | ComputeError::Regime(_))) => error(e.to_string()),
    }
}

fn cmd_batch(input: &std::path::Path, output: Option<&std::path::Path>, parallel: usize) -> io::Result<u8> {
    let reader = BufReader::new(File::open(input)?);
    let mut lines = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if !line.trim().is_empty() {
            lines.push((i + 1, line));
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallel)
        .build()
        .map_err(io::Error::other)?;
    let records: Vec<(Value, bool)> =
        pool.install(|| lines.par_iter().map(|(i, l)| batch_record(*i, l)).collect());
    let mut out: Box<dyn Write> = match output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let mut inconsistent = false;
    for (record, bad) in &records {
        writeln!(out, "{}", serde_json::to_string(record)?)?;
        inconsistent |= bad;
    }
    out.flush()?;
    Ok(if inconsistent { EXIT_INCONSISTENT } else { 0 })
}

fn parse_range<T: std::str::FromStr + Copy>(s: &str) -> Option<RangeInclusive<T>> {
    match s.split_once("..") {
        Some((a, b)) => Some(a.trim().parse().ok()?..=b.trim().trim_start_matches('=').parse().ok()?),
        None => {
            let v = s.trim().parse().ok()?;
            Some(v..=v)
        }
    }
}

fn custom_grid(ranges: [Option<String>; 5], engines: &[String]) -> Result<GridSpec, String> {
    let [r, ell, g, k, d] = ranges;
    fn req<T: std::str::FromStr + Copy>(v: Option<String>, name: &str) -> Result<RangeInclusive<T>, String> {
        let v = v.ok_or_else(|| format!("--{name}-range is required without --grid"))?;
        parse_range(&v).ok_or_else(|| format!("--{name}-range: cannot parse {v:?}"))
    }
    let engines = if engines.is_empty() {
        None
    } else {
        Some(
            engines
                .iter()
                .map(|e| e.parse::<EngineId>())
                .collect::<Result<BTreeSet<_>, _>>()?,
        )
    };
    Ok(GridSpec::Tevelev(TevelevGrid {
        r: req(r, "r")?,
        ell: req(ell, "ell")?,
        g: req(g, "g")?,
        k: req(k, "k")?,
        d: req(d, "d")?,
        engines,
    }))
}

fn cmd_crosscheck(
    grid: Option<&str>,
    ranges: [Option<String>; 5],
    engines: &[String],
    format: Format,
    parallel: usize,
) -> io::Result<u8> {
    let spec = match grid {
        Some(name) => match GridSpec::preset(name) {
            Some(spec) => spec,
            None => {
                eprintln!(
                    "error: unknown grid {name:?}; expected one of {}",
                    crosscheck::PRESETS.join(", ")
                );
                return Ok(EXIT_INPUT);
            }
        },
        None => match custom_grid(ranges, engines) {
            Ok(spec) => spec,
            Err(e) => {
                eprintln!("error: {e}");
                return Ok(EXIT_INPUT);
            }
        },
    };
    let results = crosscheck::run_grid(&spec, parallel);
    let summary = crosscheck::summarize(&results);
    let mut out = BufWriter::new(io::stdout().lock());
    match format {
        Format::Plain => {
            writeln!(out, "instances: {}", summary.total)?;
            writeln!(out, "agree: {}", summary.agree)?;
            writeln!(out, "skipped: {}", summary.skipped)?;
            writeln!(out, "disagreements: {}", summary.disagree)?;
            for res in results.iter().filter(|r| r.verdict == Verdict::Disagree) {
                writeln!(out, "DISAGREE {}", res.instance)?;
                for v in &res.values {
                    writeln!(out, "  {} = {}", v.engine, value_text(v))?;
                }
            }
        }
        Format::Json => {
            for res in &results {
                writeln!(out, "{}", serde_json::to_string(&result_json(res))?)?;
            }
            let tail = json!({
                "instances": summary.total.to_string(),
                "agree": summary.agree.to_string(),
                "skipped": summary.skipped.to_string(),
                "disagreements": summary.disagree.to_string(),
            });
            writeln!(out, "{}", serde_json::to_string(&tail)?)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(["instance", "engine", "value", "verdict"])?;
            for res in &results {
                let instance = res.instance.to_string();
                for v in &res.values {
                    w.write_record([instance.as_str(), &v.engine, &value_text(v), res.verdict.label()])?;
                }
            }
            w.flush()?;
        }
    }
    out.flush()?;
    Ok(if summary.disagree == 0 { 0 } else { EXIT_INCONSISTENT })
}

fn value_text(v: &crosscheck::EngineValue) -> String {
    match (&v.value, &v.error) {
        (Some(x), _) => x.to_string(),
        (None, Some(e)) => format!("error: {e}"),
        (None, None) => String::new(),
    }
}

fn result_json(res: &CheckResult) -> Value {
    let values: Map<String, Value> = res
        .values
        .iter()
        .map(|v| (v.engine.clone(), Value::String(value_text(v))))
        .collect();
    let mut obj = json!({
        "instance": res.instance.to_string(),
        "values": values,
        "verdict": res.verdict.label(),
    });
    if let Verdict::Skipped(why) = &res.verdict {
        obj["reason"] = Value::String(why.clone());
    }
    obj
}
