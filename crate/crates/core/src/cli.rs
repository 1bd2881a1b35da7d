//! Command-line front end.
//!
//! Exit codes: 0 when everything computed or verified, 1 when at least one
//! identity check failed, 2 on usage or validation errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::chars::character;
use crate::error::Error;
use crate::euler::{self, EulerTable};
use crate::exactnum::{format_rational, CycloElement};
use crate::grid::{stream_grid, CharacterSelection, Execution, GridSpec};
use crate::symmetry::{describe, CheckMode, Identity, Perturbation, VerificationReport, VerifyOptions, Witness};

/// Overrides the on-disk Euler table cache directory.
pub const CACHE_DIR_ENV: &str = "GENEULER_CACHE_DIR";

#[derive(Parser, Debug)]
#[command(name = "geneuler", version, about = "Generalized Euler numbers attached to Dirichlet characters")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for verification grids; 1 gives deterministic line order, 0 picks automatically.
    #[arg(long, default_value_t = 0, global = true)]
    jobs: usize,
    /// Read and write Euler tables in the on-disk cache.
    #[arg(long, global = true)]
    cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generalized higher-order Euler numbers E^(M)_{n,χ}, n = 0..=N.
    Numbers {
        #[arg(long)]
        modulus: u64,
        #[arg(long = "char")]
        character: usize,
        #[arg(long, default_value_t = 1)]
        order: u64,
        #[arg(long)]
        max_n: usize,
    },
    /// Coefficients of the polynomial E^(M)_{N,χ}(x).
    Poly {
        #[arg(long)]
        modulus: u64,
        #[arg(long = "char")]
        character: usize,
        #[arg(long, default_value_t = 1)]
        order: u64,
        #[arg(long)]
        n: usize,
    },
    /// Alternating power sum T_{K,χ}(U).
    Powersum {
        #[arg(long)]
        modulus: u64,
        #[arg(long = "char")]
        character: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        upper: u64,
    },
    /// Value tables of the characters mod D on 0..D-1.
    Chars {
        #[arg(long)]
        modulus: u64,
    },
    /// Verify an identity over a parameter grid, one report per line.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum IdentityArg {
    Theorem1,
    Theorem3,
    Corollary2,
    Eq4,
    Multiplication,
    Cross,
}

impl From<IdentityArg> for Identity {
    fn from(a: IdentityArg) -> Identity {
        match a {
            IdentityArg::Theorem1 => Identity::Theorem1,
            IdentityArg::Theorem3 => Identity::Theorem3,
            IdentityArg::Corollary2 => Identity::Corollary2,
            IdentityArg::Eq4 => Identity::Eq4,
            IdentityArg::Multiplication => Identity::Multiplication,
            IdentityArg::Cross => Identity::Cross,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Symbolic,
    Sample,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PerturbArg {
    None,
    OffByOneW,
    DropSign,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    identity: IdentityArg,
    /// Odd moduli, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    modulus: Vec<u64>,
    /// Character index or `all`.
    #[arg(long = "char", default_value = "all")]
    character: String,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    w1: Vec<u64>,
    #[arg(long, value_delimiter = ',', default_value = "3")]
    w2: Vec<u64>,
    /// Pair the w1 and w2 lists elementwise instead of taking their product.
    #[arg(long)]
    zip: bool,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    order: Vec<u64>,
    /// Largest index n (for eq4: largest k).
    #[arg(long)]
    max_n: usize,
    /// Multipliers n in E_k(nd) + E_k = 2 T_k(nd - 1); eq4 only.
    #[arg(long, value_delimiter = ',', default_value = "1,3,5")]
    multipliers: Vec<u64>,
    #[arg(long, value_enum, default_value_t = ModeArg::Symbolic)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = PerturbArg::None, hide = true)]
    perturb: PerturbArg,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(io::Error::other(e))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(io::Error::other(e))
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Entry point used by the binary.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut stdout = io::stdout();
    let mut stderr = io::stderr();
    run_with(args, &mut stdout, &mut stderr)
}

/// Like [`run`], with explicit output and error streams.
pub fn run_with<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let text = e.to_string();
            let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            let _ = writeln!(err, "{line}");
            return 2;
        }
    };
    let result = match &cli.output {
        Some(path) => match File::create(path) {
            Ok(file) => {
                let mut file = io::BufWriter::new(file);
                let r = execute(&cli, &mut file);
                r.and_then(|code| file.flush().map(|_| code).map_err(Failure::Io))
            }
            Err(e) => Err(Failure::Io(e)),
        },
        None => execute(&cli, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn execute(cli: &Cli, out: &mut (dyn Write + Send)) -> Outcome {
    let cache = cli.cache.then(cache_dir).flatten();
    match &cli.command {
        Command::Numbers {
            modulus,
            character: idx,
            order,
            max_n,
        } => {
            let chi = character(*modulus, *idx)?;
            if let Some(dir) = &cache {
                load_cached(dir, *modulus, *idx, *order);
            }
            let table = euler::euler_numbers(&chi, *order, *max_n);
            if let Some(dir) = &cache {
                store_cached(dir, &table)?;
            }
            write_numbers(cli.format, &table, out)?;
            Ok(0)
        }
        Command::Poly {
            modulus,
            character: idx,
            order,
            n,
        } => {
            let chi = character(*modulus, *idx)?;
            if let Some(dir) = &cache {
                load_cached(dir, *modulus, *idx, *order);
            }
            let poly = euler::euler_polynomial(&chi, *order, *n);
            if let Some(dir) = &cache {
                if let Some(t) = euler::cached_table(*modulus, *idx, *order) {
                    store_cached(dir, &t)?;
                }
            }
            let coeffs: Vec<CycloElement> = (0..=*n).map(|k| poly.coeff(k)).collect();
            match cli.format {
                Format::Json => {
                    let v = json!({
                        "modulus": modulus,
                        "character": idx,
                        "order": order,
                        "n": n,
                        "coeffs": coeffs,
                    });
                    writeln!(out, "{}", serde_json::to_string(&v)?)?;
                }
                Format::Csv => {
                    let mut w = csv_writer(out);
                    w.write_record(["modulus", "character", "order", "n", "degree", "coeff"])?;
                    for (k, c) in coeffs.iter().enumerate() {
                        w.write_record([
                            modulus.to_string(),
                            idx.to_string(),
                            order.to_string(),
                            n.to_string(),
                            k.to_string(),
                            csv_value(c),
                        ])?;
                    }
                    w.flush()?;
                }
                Format::Plain => writeln!(out, "{poly}")?,
            }
            Ok(0)
        }
        Command::Powersum {
            modulus,
            character: idx,
            k,
            upper,
        } => {
            let chi = character(*modulus, *idx)?;
            let value = euler::power_sum(&chi, *k, *upper);
            match cli.format {
                Format::Json => {
                    let v = json!({
                        "modulus": modulus,
                        "character": idx,
                        "k": k,
                        "upper": upper,
                        "value": value,
                    });
                    writeln!(out, "{}", serde_json::to_string(&v)?)?;
                }
                Format::Csv => {
                    let mut w = csv_writer(out);
                    w.write_record(["modulus", "character", "k", "upper", "value"])?;
                    w.write_record([
                        modulus.to_string(),
                        idx.to_string(),
                        k.to_string(),
                        upper.to_string(),
                        csv_value(&value),
                    ])?;
                    w.flush()?;
                }
                Format::Plain => writeln!(out, "{value}")?,
            }
            Ok(0)
        }
        Command::Chars { modulus } => {
            let chars = crate::chars::enumerate_characters(*modulus)?;
            if cli.format == Format::Csv {
                let mut header = vec!["modulus".to_string(), "index".to_string(), "order".to_string()];
                header.extend((0..*modulus).map(|a| format!("chi({a})")));
                let header: Vec<&str> = header.iter().map(String::as_str).collect();
                out.write_all(csv_line(&header)?.as_bytes())?;
            }
            for chi in &chars {
                match cli.format {
                    Format::Json => {
                        let v = json!({
                            "modulus": modulus,
                            "index": chi.index(),
                            "order": chi.order(),
                            "principal": chi.is_principal(),
                            "exponents": chi.exponents(),
                            "values": chi.value_table(),
                        });
                        writeln!(out, "{}", serde_json::to_string(&v)?)?;
                    }
                    Format::Csv => {
                        let mut fields = vec![modulus.to_string(), chi.index().to_string(), chi.order().to_string()];
                        fields.extend(chi.value_table().iter().map(csv_value));
                        let fields: Vec<&str> = fields.iter().map(String::as_str).collect();
                        out.write_all(csv_line(&fields)?.as_bytes())?;
                    }
                    Format::Plain => {
                        let values: Vec<String> = chi.value_table().iter().map(|c| c.to_string()).collect();
                        writeln!(out, "chi{} (order {}): {}", chi.index(), chi.order(), values.join(", "))?;
                    }
                }
            }
            Ok(0)
        }
        Command::Verify(args) => run_verify(cli, args, cache.as_deref(), out),
    }
}

fn parse_selection(s: &str) -> std::result::Result<CharacterSelection, Failure> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(CharacterSelection::All);
    }
    s.parse()
        .map(CharacterSelection::Index)
        .map_err(|_| Failure::Usage(format!("invalid character selection {s:?}; expected an index or `all`")))
}

fn run_verify(cli: &Cli, args: &VerifyArgs, cache: Option<&Path>, out: &mut (dyn Write + Send)) -> Outcome {
    let identity: Identity = args.identity.into();
    let weight_pairs = if args.zip {
        if args.w1.len() != args.w2.len() {
            return Err(Failure::Usage("--zip needs w1 and w2 lists of equal length".into()));
        }
        args.w1.iter().copied().zip(args.w2.iter().copied()).collect()
    } else {
        args.w1
            .iter()
            .flat_map(|&a| args.w2.iter().map(move |&b| (a, b)))
            .collect()
    };
    let spec = GridSpec {
        identity,
        moduli: args.modulus.clone(),
        characters: parse_selection(&args.character)?,
        weight_pairs,
        orders: args.order.clone(),
        max_n: args.max_n,
        multipliers: args.multipliers.clone(),
    };
    let tasks = spec.tasks()?;
    let opts = VerifyOptions {
        mode: match args.mode {
            ModeArg::Symbolic => CheckMode::Symbolic,
            ModeArg::Sample => CheckMode::Sample,
        },
        perturbation: match args.perturb {
            PerturbArg::None => Perturbation::None,
            PerturbArg::OffByOneW => Perturbation::OffByOneWeight,
            PerturbArg::DropSign => Perturbation::DropAlternatingSign,
        },
    };

    let orders_used: Vec<u64> = match identity {
        Identity::Eq4 | Identity::Corollary2 | Identity::Multiplication => vec![0, 1],
        _ => args.order.iter().flat_map(|&m| [m, m.saturating_sub(1)]).collect(),
    };
    let char_keys: Vec<(u64, usize)> = {
        let mut keys: Vec<(u64, usize)> = tasks
            .iter()
            .map(|t| match t {
                crate::grid::Task::Symmetry { params, .. } => {
                    (params.character().modulus(), params.character().index())
                }
                crate::grid::Task::Eq4 { chi, .. } => (chi.modulus(), chi.index()),
            })
            .collect();
        keys.dedup();
        keys
    };
    if let Some(dir) = cache {
        for &(d, i) in &char_keys {
            for &m in &orders_used {
                load_cached(dir, d, i, m);
            }
        }
    }

    let violations = Mutex::new(0usize);
    let write_error: Mutex<Option<io::Error>> = Mutex::new(None);
    let sink = Mutex::new(Sink::new(cli.format, out)?);
    let run = stream_grid(&tasks, &opts, Execution::from_jobs(cli.jobs), |_, report| {
        let report = report?;
        if report.is_violation() {
            *violations.lock().unwrap() += 1;
        }
        sink.lock().unwrap().emit(&report).map_err(|e| {
            write_error.lock().unwrap().get_or_insert(e);
            Error::Cancelled
        })
    });
    let found = *violations.lock().unwrap();
    let code = if found > 0 { 1 } else { 0 };
    if let Some(e) = write_error.into_inner().unwrap() {
        // a closed pipe (e.g. `| head`) is not an error for the caller
        return if e.kind() == io::ErrorKind::BrokenPipe {
            Ok(code)
        } else {
            Err(Failure::Io(e))
        };
    }
    run?;
    sink.into_inner().unwrap().finish()?;

    if let Some(dir) = cache {
        for &(d, i) in &char_keys {
            for &m in &orders_used {
                if let Some(t) = euler::cached_table(d, i, m) {
                    store_cached(dir, &t)?;
                }
            }
        }
    }
    Ok(code)
}

/// Writes reports one per line; each line is written in a single call.
struct Sink<'a> {
    format: Format,
    out: &'a mut (dyn Write + Send),
}

impl<'a> Sink<'a> {
    fn new(format: Format, out: &'a mut (dyn Write + Send)) -> io::Result<Self> {
        if format == Format::Csv {
            let header = csv_line(&[
                "identity",
                "modulus",
                "character",
                "w1",
                "w2",
                "order",
                "n",
                "k",
                "verdict",
                "observational",
                "witness",
            ])?;
            out.write_all(header.as_bytes())?;
        }
        Ok(Sink { format, out })
    }

    fn emit(&mut self, r: &VerificationReport) -> io::Result<()> {
        let line = match self.format {
            Format::Json => {
                let mut s = serde_json::to_string(r).map_err(io::Error::other)?;
                s.push('\n');
                s
            }
            Format::Csv => {
                let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
                let witness = match &r.witness {
                    Some(w) => serde_json::to_string(w).map_err(io::Error::other)?,
                    None => String::new(),
                };
                csv_line(&[
                    r.identity.name(),
                    &r.params.modulus.to_string(),
                    &r.params.character.to_string(),
                    &opt(r.params.w1),
                    &opt(r.params.w2),
                    &opt(r.params.order),
                    &r.params.n.to_string(),
                    &opt(r.params.k),
                    verdict_name(r),
                    if r.observational { "true" } else { "false" },
                    &witness,
                ])?
            }
            Format::Plain => plain_report(r),
        };
        self.out.write_all(line.as_bytes())?;
        self.out.flush()
    }

    fn finish(self) -> io::Result<()> {
        self.out.flush()
    }
}

fn verdict_name(r: &VerificationReport) -> &'static str {
    if r.is_equal() {
        "equal"
    } else {
        "unequal"
    }
}

fn plain_report(r: &VerificationReport) -> String {
    let p = &r.params;
    let mut s = format!("{} d={} chi={}", r.identity, p.modulus, p.character);
    if let (Some(w1), Some(w2)) = (p.w1, p.w2) {
        s += &format!(" w1={w1} w2={w2}");
    }
    if let Some(m) = p.order {
        s += &format!(" m={m}");
    }
    if let Some(k) = p.k {
        s += &format!(" k={k}");
    }
    s += &format!(" n={}: {}", p.n, verdict_name(r));
    if let Some(w) = &r.witness {
        s += &match w {
            Witness::Coefficient {
                check,
                x_degree,
                y_degree,
                lhs,
                rhs,
            } => format!(
                " [{check}] x^{x_degree} y^{y_degree}: {} vs {}",
                describe(lhs),
                describe(rhs)
            ),
            Witness::Sample { check, x, y, lhs, rhs } => format!(
                " [{check}] at x={}, y={}: {} vs {}",
                format_rational(x),
                format_rational(y),
                describe(lhs),
                describe(rhs)
            ),
            Witness::Value { check, lhs, rhs } => {
                format!(" [{check}] {} vs {}", describe(lhs), describe(rhs))
            }
        };
    }
    if let Some(note) = &r.note {
        s += &format!(" ({note})");
    }
    s.push('\n');
    s
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .quote_style(csv::QuoteStyle::NonNumeric)
        .from_writer(out)
}

fn csv_line(fields: &[&str]) -> io::Result<String> {
    let mut w = csv_writer(Vec::new());
    w.write_record(fields).map_err(io::Error::other)?;
    let bytes = w.into_inner().map_err(|e| io::Error::other(e.to_string()))?;
    String::from_utf8(bytes).map_err(io::Error::other)
}

/// Cyclotomic value flattened as `[c0,c1,...]`.
fn csv_value(c: &CycloElement) -> String {
    let parts: Vec<String> = c.coeffs().iter().map(format_rational).collect();
    format!("[{}]", parts.join(","))
}

fn write_numbers(format: Format, table: &EulerTable, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    #[derive(Serialize)]
    struct Row<'a> {
        modulus: u64,
        character: usize,
        order: u64,
        n: usize,
        value: &'a CycloElement,
    }
    match format {
        Format::Json => {
            for (n, value) in table.numbers.iter().enumerate() {
                let row = Row {
                    modulus: table.modulus,
                    character: table.index,
                    order: table.order,
                    n,
                    value,
                };
                writeln!(out, "{}", serde_json::to_string(&row)?)?;
            }
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["modulus", "character", "order", "n", "value"])?;
            for (n, value) in table.numbers.iter().enumerate() {
                w.write_record([
                    table.modulus.to_string(),
                    table.index.to_string(),
                    table.order.to_string(),
                    n.to_string(),
                    csv_value(value),
                ])?;
            }
            w.flush()?;
        }
        Format::Plain => {
            for (n, value) in table.numbers.iter().enumerate() {
                writeln!(out, "{n}\t{value}")?;
            }
        }
    }
    Ok(())
}

/// `$GENEULER_CACHE_DIR`, else `$XDG_CACHE_HOME/geneuler`, else `~/.cache/geneuler`.
pub fn cache_dir() -> Option<PathBuf> {
    if let Some(dir) = std::env::var_os(CACHE_DIR_ENV) {
        return Some(PathBuf::from(dir));
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME") {
        return Some(PathBuf::from(dir).join("geneuler"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("geneuler"))
}

fn cache_file(dir: &Path, modulus: u64, index: usize, order: u64) -> PathBuf {
    dir.join(format!("euler-d{modulus}-chi{index}-m{order}.json"))
}

/// Seed the in-memory cache from disk; unreadable files are ignored.
fn load_cached(dir: &Path, modulus: u64, index: usize, order: u64) {
    let path = cache_file(dir, modulus, index, order);
    let Ok(text) = std::fs::read_to_string(&path) else {
        return;
    };
    if let Ok(table) = serde_json::from_str::<EulerTable>(&text) {
        let consistent = table.modulus == modulus
            && table.index == index
            && table.order == order
            && table.numbers.len() == table.max_n + 1;
        if consistent {
            euler::seed_cache(table);
        }
    }
}

fn store_cached(dir: &Path, table: &EulerTable) -> io::Result<()> {
    let path = cache_file(dir, table.modulus, table.index, table.order);
    if let Ok(text) = std::fs::read_to_string(&path) {
        if let Ok(existing) = serde_json::from_str::<EulerTable>(&text) {
            if existing.max_n >= table.max_n {
                return Ok(());
            }
        }
    }
    std::fs::create_dir_all(dir)?;
    // write-then-rename so concurrent runs never observe a partial file
    let tmp = path.with_extension(format!("json.{}.tmp", std::process::id()));
    std::fs::write(&tmp, serde_json::to_string(table).map_err(io::Error::other)?)?;
    std::fs::rename(tmp, path)
}
