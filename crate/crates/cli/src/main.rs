use std::collections::BTreeSet;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use blockcensus_core::arith::{is_prime, is_prime_power, prime_divisors};
use blockcensus_core::bounds::{olsson_sweep, reflection_sweep, wreath_sweep};
use blockcensus_core::classes::{verify_class_counts, ClassType};
use blockcensus_core::classical::{verify_classical_census, verify_classical_p2};
use blockcensus_core::linear::{
    gl_block_census, gu_block_census, relevant_primes, sl_su_verify, Limits,
};
use blockcensus_core::symmetric::{verify_alt_census, verify_spin, verify_sym_census};
use blockcensus_core::tables::{verify_tables, TABLES_CSV};
use blockcensus_core::{ClassicalType, Error, Verdict, VerificationReport};
use clap::{error::ErrorKind, Args, CommandFactory, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

#[derive(Parser, Debug)]
#[command(
    name = "verify",
    version,
    about = "Block census verifier: one JSON line per block, summary last"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Jsonl)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Jsonl,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Blocks of symmetric groups.
    Sym(Grid),
    /// Blocks of alternating groups.
    Alt(Grid),
    /// Faithful blocks of double covers, by weight.
    Spin(Grid),
    /// GL_n(q) block census.
    Gl(Grid),
    /// GU_n(q) block census.
    Gu(Grid),
    /// SL_n(q) certificates.
    Sl(Grid),
    /// SU_n(q) certificates.
    Su(Grid),
    /// Unipotent blocks of classical groups.
    Classical(Grid),
    /// Unipotent class counts.
    Classes(Grid),
    /// Embedded exceptional-group tables.
    Tables(TableArgs),
    /// Multipartition, wreath and reflection-group bounds.
    Bounds(Grid),
    /// Every family with its default grid.
    All(Grid),
}

#[derive(Args, Debug, Clone, Default)]
struct Grid {
    #[arg(long)]
    max_n: Option<u32>,
    #[arg(long, value_delimiter = ',', value_parser = parse_prime)]
    primes: Option<Vec<u64>>,
    #[arg(long = "q-list", value_delimiter = ',', value_parser = parse_prime_power)]
    q_list: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',')]
    types: Option<Vec<String>>,
    #[arg(long)]
    s_max: Option<u32>,
    #[arg(long)]
    t_max: Option<u32>,
    #[arg(long)]
    max_w: Option<u32>,
    /// Lift the n <= 6, q <= 9 caps on GL/GU shape enumeration.
    #[arg(long)]
    no_caps: bool,
}

#[derive(Args, Debug, Clone, Default)]
struct TableArgs {
    /// Also write the embedded table data as CSV to this path.
    #[arg(long)]
    export: Option<PathBuf>,
}

fn parse_prime(s: &str) -> Result<u64, String> {
    let p: u64 = s
        .trim()
        .parse()
        .map_err(|_| format!("{s} is not an integer"))?;
    if is_prime(p) {
        Ok(p)
    } else {
        Err(format!("{p} is not prime"))
    }
}

fn parse_prime_power(s: &str) -> Result<u64, String> {
    let q: u64 = s
        .trim()
        .parse()
        .map_err(|_| format!("{s} is not an integer"))?;
    if is_prime_power(q) {
        Ok(q)
    } else {
        Err(format!("{q} is not a prime power"))
    }
}

fn usage(msg: impl std::fmt::Display) -> ! {
    Cli::command().error(ErrorKind::ValueValidation, msg).exit()
}

/// One pure unit of work; results are merged in job order.
#[derive(Clone, Debug)]
enum Job {
    Sym(u32, u32),
    Alt(u32, u32),
    Spin(u32, u32),
    Linear {
        n: u32,
        q: u64,
        p: u64,
        unitary: bool,
        special: bool,
    },
    Classical(ClassicalType, u32, u64, u64),
    ClassicalP2(ClassicalType, u32, u64),
    Classes(ClassType, u32),
    Tables,
    Olsson(u32, u32),
    Wreath(u32),
    Reflection(u32, u32),
}

impl Job {
    fn label(&self) -> String {
        match self {
            Job::Sym(n, p) => format!("sym n={n} p={p}"),
            Job::Alt(n, p) => format!("alt n={n} p={p}"),
            Job::Spin(p, w) => format!("spin p={p} max_w={w}"),
            Job::Linear {
                n,
                q,
                p,
                unitary,
                special,
            } => {
                let g = match (unitary, special) {
                    (false, false) => "GL",
                    (true, false) => "GU",
                    (false, true) => "SL",
                    (true, true) => "SU",
                };
                format!("{g}_{n}({q}) p={p}")
            }
            Job::Classical(t, n, q, p) => format!("{t}_{n}({q}) p={p}"),
            Job::ClassicalP2(t, n, q) => format!("{t}_{n}({q}) p=2"),
            Job::Classes(t, n) => format!("classes {t}_{n}"),
            Job::Tables => "tables".into(),
            Job::Olsson(s, t) => format!("olsson s<={s} t<={t}"),
            Job::Wreath(l) => format!("wreath ell<={l}"),
            Job::Reflection(d, w) => format!("reflection d<={d} w<={w}"),
        }
    }

    fn run(&self, limits: &Limits) -> Result<VerificationReport, Error> {
        match *self {
            Job::Sym(n, p) => verify_sym_census(n, p),
            Job::Alt(n, p) => verify_alt_census(n, p),
            Job::Spin(p, w) => verify_spin(p, w),
            Job::Linear {
                n,
                q,
                p,
                unitary,
                special,
            } => match (unitary, special) {
                (false, false) => gl_block_census(n, q, p, limits),
                (true, false) => gu_block_census(n, q, p, limits),
                (u, true) => sl_su_verify(n, q, p, u, limits),
            },
            Job::Classical(t, n, q, p) => verify_classical_census(t, n, q, p),
            Job::ClassicalP2(t, n, q) => verify_classical_p2(t, n, q),
            Job::Classes(t, n) => verify_class_counts(t, n),
            Job::Tables => verify_tables(),
            Job::Olsson(s, t) => Ok(olsson_sweep(s, t)),
            Job::Wreath(l) => wreath_sweep(&[2, 3, 5, 7], l),
            Job::Reflection(d, w) => Ok(reflection_sweep(d, w)),
        }
    }
}

fn primes_or(grid: &Grid, default: &[u64]) -> Vec<u64> {
    grid.primes.clone().unwrap_or_else(|| default.to_vec())
}

fn sym_jobs(grid: &Grid, alt: bool) -> Vec<Job> {
    let max_n = grid.max_n.unwrap_or(40);
    let mut jobs = Vec::new();
    for p in primes_or(grid, &[2, 3, 5, 7, 11]) {
        for n in 1..=max_n {
            jobs.push(if alt {
                Job::Alt(n, p as u32)
            } else {
                Job::Sym(n, p as u32)
            });
        }
    }
    jobs
}

fn spin_jobs(grid: &Grid) -> Vec<Job> {
    let max_w = grid.max_w.unwrap_or(30);
    primes_or(grid, &[3, 5, 7, 11])
        .into_iter()
        .filter(|&p| p != 2)
        .map(|p| Job::Spin(p as u32, max_w))
        .collect()
}

fn linear_jobs(grid: &Grid, unitary: bool, special: bool) -> Vec<Job> {
    let max_n = grid.max_n.unwrap_or(5);
    let q_list = grid.q_list.clone().unwrap_or_else(|| vec![2, 3, 4, 5]);
    if !grid.no_caps {
        let caps = Limits::default();
        if max_n > caps.max_n || q_list.iter().any(|&q| q > caps.max_q) {
            usage(format!(
                "n <= {} and q <= {} unless --no-caps is given",
                caps.max_n, caps.max_q
            ));
        }
    }
    let min_n = if special { 2 } else { 1 };
    let mut jobs = Vec::new();
    for &q in &q_list {
        for n in min_n..=max_n {
            for p in relevant_primes(n, q, unitary) {
                if grid.primes.as_ref().is_none_or(|ps| ps.contains(&p)) {
                    jobs.push(Job::Linear {
                        n,
                        q,
                        p,
                        unitary,
                        special,
                    });
                }
            }
        }
    }
    jobs
}

fn classical_order_primes(ty: ClassicalType, n: u32, q: u64) -> BTreeSet<u64> {
    let mut factors: Vec<u64> = (1..n).map(|i| q.pow(2 * i) - 1).collect();
    factors.push(match ty {
        ClassicalType::B | ClassicalType::C => q.pow(2 * n) - 1,
        ClassicalType::D => q.pow(n) - 1,
        ClassicalType::TwistedD => q.pow(n) + 1,
    });
    factors
        .into_iter()
        .flat_map(prime_divisors)
        .filter(|p| !q.is_multiple_of(*p))
        .collect()
}

fn classical_types(grid: &Grid) -> Vec<ClassicalType> {
    let names = grid
        .types
        .clone()
        .unwrap_or_else(|| ["B", "C", "D", "2D"].map(String::from).to_vec());
    names
        .iter()
        .map(|t| t.parse().unwrap_or_else(|e: Error| usage(e)))
        .collect()
}

fn classical_jobs(grid: &Grid) -> Vec<Job> {
    let max_n = grid.max_n.unwrap_or(6);
    let q_list = grid.q_list.clone().unwrap_or_else(|| vec![2, 3, 4, 5, 7]);
    let mut jobs = Vec::new();
    for ty in classical_types(grid) {
        for &q in &q_list {
            for n in 1..=max_n {
                let primes: Vec<u64> = match &grid.primes {
                    Some(ps) => ps.iter().copied().filter(|p| q % p != 0).collect(),
                    None => classical_order_primes(ty, n, q).into_iter().collect(),
                };
                for p in primes {
                    if p != 2 {
                        jobs.push(Job::Classical(ty, n, q, p));
                    }
                }
                let min_rank = match ty {
                    ClassicalType::B | ClassicalType::C => 2,
                    _ => 4,
                };
                let p2_wanted = grid.primes.as_ref().is_none_or(|ps| ps.contains(&2));
                if q % 2 == 1 && n >= min_rank && p2_wanted {
                    jobs.push(Job::ClassicalP2(ty, n, q));
                }
            }
        }
    }
    jobs
}

fn classes_jobs(grid: &Grid) -> Vec<Job> {
    let max_n = grid.max_n.unwrap_or(30);
    let names = grid
        .types
        .clone()
        .unwrap_or_else(|| ["B", "C", "D"].map(String::from).to_vec());
    let mut jobs = Vec::new();
    for t in names {
        let ty: ClassType = t.parse().unwrap_or_else(|e: Error| usage(e));
        jobs.extend((1..=max_n).map(|n| Job::Classes(ty, n)));
    }
    jobs
}

fn bounds_jobs(grid: &Grid) -> Vec<Job> {
    vec![
        Job::Olsson(grid.s_max.unwrap_or(12), grid.t_max.unwrap_or(40)),
        Job::Wreath(50),
        Job::Reflection(8, grid.max_w.unwrap_or(20)),
    ]
}

fn jobs_for(command: &Command) -> (&'static str, Vec<Job>) {
    match command {
        Command::Sym(g) => ("sym", sym_jobs(g, false)),
        Command::Alt(g) => ("alt", sym_jobs(g, true)),
        Command::Spin(g) => ("spin", spin_jobs(g)),
        Command::Gl(g) => ("gl", linear_jobs(g, false, false)),
        Command::Gu(g) => ("gu", linear_jobs(g, true, false)),
        Command::Sl(g) => ("sl", linear_jobs(g, false, true)),
        Command::Su(g) => ("su", linear_jobs(g, true, true)),
        Command::Classical(g) => ("classical", classical_jobs(g)),
        Command::Classes(g) => ("classes", classes_jobs(g)),
        Command::Tables(_) => ("tables", vec![Job::Tables]),
        Command::Bounds(g) => ("bounds", bounds_jobs(g)),
        Command::All(g) => {
            let mut jobs = sym_jobs(g, false);
            jobs.extend(sym_jobs(g, true));
            jobs.extend(spin_jobs(g));
            for (u, s) in [(false, false), (true, false), (false, true), (true, true)] {
                jobs.extend(linear_jobs(g, u, s));
            }
            jobs.extend(classical_jobs(g));
            jobs.extend(classes_jobs(g));
            jobs.push(Job::Tables);
            jobs.extend(bounds_jobs(g));
            ("all", jobs)
        }
    }
}

fn with_record(value: Value, record: &str) -> Value {
    let mut map = match value {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("value".into(), other);
            m
        }
    };
    map.insert("record".into(), Value::String(record.into()));
    Value::Object(map)
}

#[derive(Default)]
struct Tally {
    rows: usize,
    checks: usize,
    failed_checks: Vec<String>,
    by_verdict: [usize; 4],
    violations: Vec<Value>,
    errors: Vec<String>,
}

fn verdict_slot(v: Verdict) -> usize {
    match v {
        Verdict::Strict => 0,
        Verdict::Equal => 1,
        Verdict::Violation => 2,
        Verdict::BoundOnly => 3,
    }
}

fn collect(results: Vec<(String, Result<VerificationReport, Error>)>) -> (Vec<Value>, Tally) {
    let mut records = Vec::new();
    let mut tally = Tally::default();
    for (label, result) in results {
        let report = match result {
            Ok(r) => r,
            Err(e) => {
                tally.errors.push(format!("{label}: {e}"));
                records.push(json!({"record": "error", "job": label, "error": e.to_string()}));
                continue;
            }
        };
        for row in &report.rows {
            let value = with_record(serde_json::to_value(row).expect("rows serialize"), "block");
            tally.rows += 1;
            tally.by_verdict[verdict_slot(row.verdict())] += 1;
            if row.is_violation() {
                tally.violations.push(value.clone());
            }
            records.push(value);
        }
        for check in &report.checks {
            tally.checks += 1;
            if !check.holds {
                tally.failed_checks.push(check.name.clone());
            }
            records.push(with_record(
                serde_json::to_value(check).expect("checks serialize"),
                "check",
            ));
        }
    }
    (records, tally)
}

fn summary(command: &str, tally: &Tally) -> Value {
    let ok =
        tally.violations.is_empty() && tally.failed_checks.is_empty() && tally.errors.is_empty();
    json!({
        "record": "summary",
        "command": command,
        "rows": tally.rows,
        "strict": tally.by_verdict[0],
        "equal": tally.by_verdict[1],
        "violation": tally.by_verdict[2],
        "bound_only": tally.by_verdict[3],
        "checks": tally.checks,
        "failed_checks": tally.failed_checks,
        "errors": tally.errors,
        "violating_blocks": tally.violations,
        "status": if ok { "ok" } else { "fail" },
    })
}

fn cell(v: Option<&Value>) -> String {
    match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    }
}

fn write_csv(out: &mut dyn Write, records: &[Value]) -> io::Result<()> {
    let columns: BTreeSet<&String> = records
        .iter()
        .filter_map(Value::as_object)
        .flat_map(|m| m.keys())
        .collect();
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&columns)?;
    for r in records {
        let obj = r.as_object();
        w.write_record(columns.iter().map(|c| cell(obj.and_then(|m| m.get(*c)))))?;
    }
    w.flush()
}

fn write_jsonl(out: &mut dyn Write, records: &[Value]) -> io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut *out, r)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = match &cli.command {
        Command::Gl(g) | Command::Gu(g) | Command::Sl(g) | Command::Su(g) | Command::All(g)
            if g.no_caps =>
        {
            Limits::unlimited()
        }
        _ => Limits::default(),
    };
    if let Command::Tables(TableArgs { export: Some(path) }) = &cli.command {
        if let Err(e) = std::fs::write(path, TABLES_CSV) {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    let (name, jobs) = jobs_for(&cli.command);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        if j == 0 {
            usage("--jobs must be positive");
        }
        builder = builder.num_threads(j);
    }
    let pool = builder.build().expect("thread pool");
    let results: Vec<(String, Result<VerificationReport, Error>)> = pool.install(|| {
        jobs.par_iter()
            .map(|job| (job.label(), job.run(&limits)))
            .collect()
    });

    let (mut records, tally) = collect(results);
    let summary = summary(name, &tally);
    let ok = summary["status"] == "ok";
    records.push(summary);

    let mut sink: Box<dyn Write> = match &cli.out {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => {
                eprintln!("cannot create {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let written = match cli.format {
        Format::Jsonl => write_jsonl(&mut sink, &records),
        Format::Csv => write_csv(&mut sink, &records),
    };
    if let Err(e) = written {
        eprintln!("write failed: {e}");
        return ExitCode::from(1);
    }
    if !ok {
        for v in &tally.violations {
            eprintln!("violation: {v}");
        }
        for c in &tally.failed_checks {
            eprintln!("failed check: {c}");
        }
        for e in &tally.errors {
            eprintln!("error: {e}");
        }
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
