//! The `betti` command line.
//!
//! Exit codes: 0 success, 1 the engines disagree (compare), 2 invalid
//! arguments, 3 the job exceeds the cell budget.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::betti_formula::{betti_polynomial_with, h_rect, proj_dim_and_reg, x_homology, FormulaError};
use crate::exact_oracle::{
    cached_hilbert, cached_koszul_table, OracleError, OracleOptions, ResultCache, DEFAULT_CELL_BUDGET,
};
use crate::exec::Execution;
use crate::partitions::{gauss_polynomial, Partition};
use crate::rep_ring::{evaluate_dimensions, schur_dim, BettiTable, EquivariantPolynomial};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "betti", version, about = "Betti tables of thickenings of determinantal ideals")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Betti table from the closed formula.
    Formula(JobArgs),
    /// Betti table by exact Koszul homology.
    Oracle(JobArgs),
    /// Both engines on the same window, with a diff.
    Compare(JobArgs),
    /// Same as the three commands above, with the engine chosen by --mode.
    Job {
        #[arg(long, value_enum)]
        mode: Mode,
        #[command(flatten)]
        job: JobArgs,
    },
    /// Gauss polynomial of the r × s rectangle.
    Gauss { r: usize, s: usize },
    /// Dimension of the Schur functor S_λ(C^n), λ given as e.g. 3,3.
    Dim { lambda: String, n: usize },
    /// Terms of the linear complex on the r × s rectangle.
    Hrect(RectArgs),
    /// Homology of the linear complex on the r × s rectangle in degree k.
    Xhom {
        #[command(flatten)]
        rect: RectArgs,
        #[arg(short)]
        k: usize,
    },
    /// Hilbert function dim I_d of the ideal, d <= dmax.
    Hilbert {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        dmax: usize,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Projective dimension and regularity.
    Pdreg(IdealArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Formula,
    Oracle,
    Compare,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct IdealArgs {
    #[arg(short)]
    pub a: usize,
    #[arg(short)]
    pub b: usize,
    #[arg(short)]
    pub m: usize,
    #[arg(short)]
    pub n: usize,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct RectArgs {
    #[arg(short)]
    pub r: usize,
    #[arg(short)]
    pub s: usize,
    #[arg(short)]
    pub m: usize,
    #[arg(short)]
    pub n: usize,
}

#[derive(Args, Debug, Clone)]
pub struct EngineArgs {
    /// Result cache directory (default: $BETTI_CACHE_DIR).
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Largest matrix, in cells, the oracle may reduce.
    #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
    pub budget: u64,
    /// Run on one thread.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Args, Debug, Clone)]
pub struct JobArgs {
    #[command(flatten)]
    pub ideal: IdealArgs,
    #[arg(long)]
    pub max_i: Option<usize>,
    #[arg(long)]
    pub max_j: Option<usize>,
    /// Print Schur-functor labels instead of dimensions.
    #[arg(long)]
    pub equivariant: bool,
    #[command(flatten)]
    pub engine: EngineArgs,
}

/// A validated Betti-table job with `m >= n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobSpec {
    pub a: usize,
    pub b: usize,
    pub m: usize,
    pub n: usize,
    pub mode: Mode,
    pub max_i: Option<usize>,
    pub max_j: Option<usize>,
    pub format: Format,
    pub equivariant: bool,
    /// The input had `m < n`; labels are transposed back on output.
    pub transposed: bool,
}

impl JobSpec {
    pub fn new(mode: Mode, args: &JobArgs, format: Format) -> Result<JobSpec, CliError> {
        let IdealArgs { a, b, m, n } = args.ideal;
        check_ideal(a, b, m, n)?;
        if args.max_i == Some(0) || args.max_j == Some(0) {
            return Err(CliError::Invalid("--max-i and --max-j must be positive".into()));
        }
        if args.equivariant && mode == Mode::Oracle {
            return Err(CliError::Invalid("--equivariant needs the formula engine".into()));
        }
        Ok(JobSpec {
            a,
            b,
            m: m.max(n),
            n: m.min(n),
            mode,
            max_i: args.max_i,
            max_j: args.max_j,
            format,
            equivariant: args.equivariant,
            transposed: m < n,
        })
    }

    /// Window used by the oracle when no bounds are given: every homological
    /// degree of an ideal in `mn` variables, internal degree up to `ab + mn`.
    pub fn window(&self) -> (usize, usize) {
        let mn = self.m * self.n;
        (self.max_i.unwrap_or(mn - 1), self.max_j.unwrap_or(self.a * self.b + mn))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Budget(_) => EXIT_BUDGET,
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::BudgetExceeded { .. } => {
                CliError::Budget(format!("{e}; lower --max-i/--max-j or raise --budget"))
            }
            OracleError::InvalidParameters(_) => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<FormulaError> for CliError {
    fn from(e: FormulaError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

fn check_ideal(a: usize, b: usize, m: usize, n: usize) -> Result<(), CliError> {
    if a == 0 || b == 0 || m == 0 || n == 0 {
        return Err(CliError::Invalid(format!(
            "a, b, m, n must be positive (got a={a}, b={b}, m={m}, n={n})"
        )));
    }
    if a > m.min(n) {
        return Err(CliError::Invalid(format!("a={a} exceeds min(m, n)={}", m.min(n))));
    }
    Ok(())
}

/// Text written by one invocation.
#[derive(Debug, Default)]
struct Output {
    out: String,
    err: String,
    code: i32,
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let result = match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_INVALID
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    let output = result.unwrap_or_else(|e| Output {
        err: format!("error: {e}\n"),
        code: e.exit_code(),
        ..Output::default()
    });
    let _ = stdout.write_all(output.out.as_bytes());
    let _ = stderr.write_all(output.err.as_bytes());
    output.code
}

fn execute(cli: &Cli) -> Result<Output, CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Formula(job) => cmd_betti(&JobSpec::new(Mode::Formula, job, format)?, &job.engine),
        Command::Oracle(job) => cmd_betti(&JobSpec::new(Mode::Oracle, job, format)?, &job.engine),
        Command::Compare(job) => cmd_betti(&JobSpec::new(Mode::Compare, job, format)?, &job.engine),
        Command::Job { mode, job } => cmd_betti(&JobSpec::new(*mode, job, format)?, &job.engine),
        Command::Gauss { r, s } => Ok(ok(cmd_gauss(*r, *s, format))),
        Command::Dim { lambda, n } => cmd_dim(lambda, *n, format).map(ok),
        Command::Hrect(rect) => Ok(ok(cmd_hrect(rect, format))),
        Command::Xhom { rect, k } => Ok(ok(cmd_xhom(rect, *k, format))),
        Command::Hilbert { ideal, dmax, engine } => cmd_hilbert(ideal, *dmax, engine, format).map(ok),
        Command::Pdreg(ideal) => cmd_pdreg(ideal, format).map(ok),
    }
}

fn ok(out: String) -> Output {
    Output { out, ..Output::default() }
}

fn exec_of(engine: &EngineArgs) -> Execution {
    if engine.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    }
}

fn cache_of(engine: &EngineArgs) -> Option<ResultCache> {
    match &engine.cache_dir {
        Some(dir) => Some(ResultCache::new(dir)),
        None => ResultCache::from_env(),
    }
}

fn cmd_betti(spec: &JobSpec, engine: &EngineArgs) -> Result<Output, CliError> {
    let mut output = Output::default();
    if spec.transposed {
        output.err.push_str(&format!(
            "note: m < n, computing with m={} n={}; labels are transposed back\n",
            spec.m, spec.n
        ));
    }
    let exec = exec_of(engine);
    let formula = if spec.mode == Mode::Oracle {
        None
    } else {
        Some(betti_polynomial_with(spec.a, spec.b, spec.m, spec.n, exec)?)
    };
    // in formula mode the window defaults to the whole (finite) table
    let window = match (spec.mode, spec.max_i, spec.max_j) {
        (Mode::Formula, None, None) => None,
        (Mode::Formula, max_i, max_j) => Some((max_i.unwrap_or(usize::MAX), max_j.unwrap_or(usize::MAX))),
        _ => Some(spec.window()),
    };
    let formula = formula.map(|p| match window {
        Some((max_i, max_j)) => restrict_terms(&p, max_i, max_j),
        None => p,
    });
    let formula_table = formula.as_ref().map(|p| evaluate_dimensions(p, spec.m, spec.n));
    // labels in the caller's orientation
    let formula = formula.map(|p| if spec.transposed { p.transposed() } else { p });
    let oracle_table = if spec.mode == Mode::Formula {
        None
    } else {
        let (max_i, max_j) = spec.window();
        let options = OracleOptions {
            exec,
            cell_budget: Some(engine.budget),
            ..OracleOptions::default()
        };
        let cache = cache_of(engine);
        Some(cached_koszul_table(cache.as_ref(), spec.a, spec.b, spec.m, spec.n, max_i, max_j, &options)?)
    };

    let diff = match (&formula_table, &oracle_table) {
        (Some(f), Some(o)) => Some(table_diff(f, o)),
        _ => None,
    };
    if diff.as_ref().is_some_and(|d| !d.is_empty()) {
        output.code = EXIT_MISMATCH;
    }

    output.out = match spec.format {
        Format::Json => {
            let mut doc = serde_json::Map::new();
            doc.insert("a".into(), json!(spec.a));
            doc.insert("b".into(), json!(spec.b));
            doc.insert("m".into(), json!(if spec.transposed { spec.n } else { spec.m }));
            doc.insert("n".into(), json!(if spec.transposed { spec.m } else { spec.n }));
            doc.insert("mode".into(), json!(spec.mode));
            let window_json = match (spec.mode, window) {
                (Mode::Formula, None) => serde_json::Value::Null,
                (Mode::Formula, Some(_)) => json!({ "max_i": spec.max_i, "max_j": spec.max_j }),
                (_, _) => {
                    let (max_i, max_j) = spec.window();
                    json!({ "max_i": max_i, "max_j": max_j })
                }
            };
            doc.insert("window".into(), window_json);
            if let Some(t) = &formula_table {
                doc.insert("formula".into(), json!(t));
            }
            if spec.equivariant {
                if let Some(p) = &formula {
                    doc.insert("terms".into(), json!(p));
                }
            }
            if let Some(t) = &oracle_table {
                doc.insert("oracle".into(), json!(t));
            }
            if let Some(d) = &diff {
                let records: Vec<_> = d
                    .iter()
                    .map(|&(i, j, f, o)| json!({ "i": i, "j": j, "formula": f, "oracle": o }))
                    .collect();
                doc.insert("diff".into(), json!(records));
                doc.insert("agree".into(), json!(d.is_empty()));
            }
            let mut s = serde_json::to_string_pretty(&serde_json::Value::Object(doc)).expect("plain data");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::new();
            if spec.equivariant {
                s.push_str("i,j,row,col,mult\n");
                for (key, mult) in formula.as_ref().expect("equivariant needs the formula").terms() {
                    let _ = writeln!(
                        s,
                        "{},{},\"{}\",\"{}\",{mult}",
                        key.wdeg, key.zdeg, key.label.row, key.label.col
                    );
                }
            } else {
                match (&formula_table, &oracle_table) {
                    (Some(f), Some(o)) => {
                        s.push_str("i,j,formula,oracle\n");
                        let mut cells: Vec<(usize, usize)> = f.entries().map(|(k, _)| k).collect();
                        cells.extend(o.entries().map(|(k, _)| k));
                        cells.sort_unstable();
                        cells.dedup();
                        for (i, j) in cells {
                            let _ = writeln!(s, "{i},{j},{},{}", f.get(i, j), o.get(i, j));
                        }
                    }
                    (Some(t), None) | (None, Some(t)) => {
                        s.push_str("i,j,value\n");
                        for ((i, j), v) in t.entries() {
                            let _ = writeln!(s, "{i},{j},{v}");
                        }
                    }
                    (None, None) => unreachable!(),
                }
            }
            s
        }
        Format::Pretty => {
            let mut s = String::new();
            let mut section = |title: &str, body: String| {
                if spec.mode == Mode::Compare {
                    let _ = writeln!(s, "{title}:");
                }
                s.push_str(&body);
            };
            if let Some(p) = &formula {
                if spec.equivariant {
                    section("formula", pretty_terms(p));
                } else {
                    section("formula", pretty_table(formula_table.as_ref().expect("evaluated")));
                }
            }
            if let Some(t) = &oracle_table {
                section("oracle", pretty_table(t));
            }
            if let Some(d) = &diff {
                let (max_i, max_j) = spec.window();
                if d.is_empty() {
                    let _ = writeln!(s, "agree on i <= {max_i}, j <= {max_j}");
                } else {
                    let _ = writeln!(s, "differ on i <= {max_i}, j <= {max_j}:");
                    for (i, j, f, o) in d {
                        let _ = writeln!(s, "  ({i},{j}): formula {f}, oracle {o}");
                    }
                }
            }
            s
        }
    };
    Ok(output)
}

fn restrict_terms(p: &EquivariantPolynomial, max_i: usize, max_j: usize) -> EquivariantPolynomial {
    let mut out = EquivariantPolynomial::new();
    for (key, mult) in p.terms() {
        if key.wdeg <= max_i && key.zdeg <= max_j {
            out.add_term(key.label.clone(), key.zdeg, key.wdeg, mult);
        }
    }
    out
}

/// Cells where the tables differ, as `(i, j, left, right)`.
pub fn table_diff(left: &BettiTable, right: &BettiTable) -> Vec<(usize, usize, u64, u64)> {
    let mut cells: Vec<(usize, usize)> = left.entries().map(|(k, _)| k).collect();
    cells.extend(right.entries().map(|(k, _)| k));
    cells.sort_unstable();
    cells.dedup();
    cells
        .into_iter()
        .filter_map(|(i, j)| {
            let (l, r) = (left.get(i, j), right.get(i, j));
            (l != r).then_some((i, j, l, r))
        })
        .collect()
}

/// Betti table with rows indexed by `j - i` and columns by `i`; zeros print
/// as `-`.
pub fn pretty_table(t: &BettiTable) -> String {
    if t.is_empty() {
        return "(zero)\n".to_string();
    }
    let max_i = t.entries().map(|((i, _), _)| i).max().unwrap_or(0);
    let rows: Vec<usize> = t.entries().map(|((i, j), _)| j - i).collect();
    let (lo, hi) = (*rows.iter().min().unwrap(), *rows.iter().max().unwrap());
    let cell = |i: usize, r: usize| match t.get(i, i + r) {
        0 => "-".to_string(),
        v => v.to_string(),
    };
    let width = (0..=max_i)
        .flat_map(|i| (lo..=hi).map(move |r| (i, r)))
        .map(|(i, r)| cell(i, r).len())
        .chain((0..=max_i).map(|i| i.to_string().len()))
        .max()
        .unwrap_or(1);
    let label_width = format!("{hi}:").len();
    let mut s = format!("{:label_width$}", "");
    for i in 0..=max_i {
        let _ = write!(s, " {i:>width$}");
    }
    s.push('\n');
    for r in lo..=hi {
        let _ = write!(s, "{:<label_width$}", format!("{r}:"));
        for i in 0..=max_i {
            let _ = write!(s, " {:>width$}", cell(i, r));
        }
        s.push('\n');
    }
    s
}

/// Labeled terms grouped by row `j - i`, then by column `i`.
pub fn pretty_terms(p: &EquivariantPolynomial) -> String {
    if p.is_empty() {
        return "(zero)\n".to_string();
    }
    let mut cells: std::collections::BTreeMap<(usize, usize), Vec<String>> = Default::default();
    for (key, mult) in p.terms() {
        let label = if mult == 1 { key.label.to_string() } else { format!("{mult}×{}", key.label) };
        cells.entry((key.zdeg - key.wdeg, key.wdeg)).or_default().push(label);
    }
    let mut s = String::new();
    let mut current = None;
    for ((r, i), labels) in cells {
        if current != Some(r) {
            let _ = writeln!(s, "j-i={r}:");
            current = Some(r);
        }
        let _ = writeln!(s, "  i={i} j={}: {}", i + r, labels.join(" + "));
    }
    s
}

fn cmd_gauss(r: usize, s: usize, format: Format) -> String {
    let g = gauss_polynomial(r, s);
    let degree = g.degree().unwrap_or(0);
    let coefficients: Vec<i64> = (0..=degree).map(|k| g.coeff(k)).collect();
    match format {
        Format::Pretty => format!("{g}\n"),
        Format::Json => json_line(&json!({ "r": r, "s": s, "polynomial": g.to_string(), "coefficients": coefficients })),
        Format::Csv => {
            let mut out = "degree,coefficient\n".to_string();
            for (k, c) in coefficients.iter().enumerate() {
                let _ = writeln!(out, "{k},{c}");
            }
            out
        }
    }
}

fn cmd_dim(lambda: &str, n: usize, format: Format) -> Result<String, CliError> {
    let lambda: Partition = lambda
        .parse()
        .map_err(|e| CliError::Invalid(format!("bad partition {lambda:?}: {e}")))?;
    let dim = schur_dim(&lambda, n);
    Ok(match format {
        Format::Pretty => format!("{dim}\n"),
        Format::Json => json_line(&json!({ "partition": lambda, "n": n, "dim": dim })),
        Format::Csv => format!("partition,n,dim\n\"{lambda}\",{n},{dim}\n"),
    })
}

fn cmd_hrect(rect: &RectArgs, format: Format) -> String {
    let p = h_rect(rect.r, rect.s, rect.m, rect.n);
    match format {
        Format::Pretty => pretty_terms(&p),
        Format::Json => json_line(&json!(p)),
        Format::Csv => {
            let mut s = "i,j,row,col,mult\n".to_string();
            for (key, mult) in p.terms() {
                let _ = writeln!(s, "{},{},\"{}\",\"{}\",{mult}", key.wdeg, key.zdeg, key.label.row, key.label.col);
            }
            s
        }
    }
}

fn cmd_xhom(rect: &RectArgs, k: usize, format: Format) -> String {
    let summands = x_homology(rect.r, rect.s, rect.m, rect.n, k);
    match format {
        Format::Pretty => {
            if summands.is_empty() {
                return "0\n".to_string();
            }
            let terms: Vec<String> = summands
                .iter()
                .map(|h| {
                    let ideal = format!("I_{}x{}", h.rect_r, h.rect_s);
                    if h.multiplicity == 1 { ideal } else { format!("{}×{ideal}", h.multiplicity) }
                })
                .collect();
            format!("{}\n", terms.join(" + "))
        }
        Format::Json => {
            let records: Vec<_> = summands
                .iter()
                .map(|h| json!({ "r": h.rect_r, "s": h.rect_s, "multiplicity": h.multiplicity }))
                .collect();
            json_line(&json!(records))
        }
        Format::Csv => {
            let mut s = "r,s,multiplicity\n".to_string();
            for h in summands {
                let _ = writeln!(s, "{},{},{}", h.rect_r, h.rect_s, h.multiplicity);
            }
            s
        }
    }
}

fn cmd_hilbert(ideal: &IdealArgs, dmax: usize, engine: &EngineArgs, format: Format) -> Result<String, CliError> {
    let IdealArgs { a, b, m, n } = *ideal;
    if a == 0 || b == 0 || m == 0 || n == 0 {
        return Err(CliError::Invalid("a, b, m, n must be positive".into()));
    }
    let cache = cache_of(engine);
    let values = cached_hilbert(cache.as_ref(), a, b, m.max(n), m.min(n), dmax, exec_of(engine))?;
    Ok(match format {
        Format::Pretty => {
            let mut s = String::new();
            for (d, v) in values.iter().enumerate() {
                let _ = writeln!(s, "{d} {v}");
            }
            s
        }
        Format::Json => {
            let records: Vec<_> = values.iter().enumerate().map(|(d, v)| json!({ "d": d, "value": v })).collect();
            json_line(&json!(records))
        }
        Format::Csv => {
            let mut s = "d,value\n".to_string();
            for (d, v) in values.iter().enumerate() {
                let _ = writeln!(s, "{d},{v}");
            }
            s
        }
    })
}

fn cmd_pdreg(ideal: &IdealArgs, format: Format) -> Result<String, CliError> {
    let IdealArgs { a, b, m, n } = *ideal;
    check_ideal(a, b, m, n)?;
    let (pd, reg) = proj_dim_and_reg(a, b, m.max(n), m.min(n))?;
    Ok(match format {
        Format::Pretty => format!("pd={pd} reg={reg}\n"),
        Format::Json => json_line(&json!({ "pd": pd, "reg": reg })),
        Format::Csv => format!("pd,reg\n{pd},{reg}\n"),
    })
}

fn json_line(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data");
    s.push('\n');
    s
}
