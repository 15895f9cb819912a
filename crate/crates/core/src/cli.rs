//! Command-line front end.
//!
//! Every subcommand emits one table with the columns `alpha,method,value`,
//! plus `n` for `constants` and a leading `instance` for `verify`. JSON output
//! wraps the same rows as `{"command": ..., "rows": [...]}`, with the
//! infinite order written as the string `"inf"`.
//!
//! Exit codes: 0 on success, 1 when certification finds a violation or a
//! computation fails, 2 for usage and input errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Serialize, Serializer};

use crate::applications::{filter_report, FilterSpec};
use crate::bounds::{bc_constant, thm1_constant};
use crate::domain::Order;
use crate::error::Error;
use crate::parse::{parse_alpha_grid, parse_counts, parse_grid_csv, parse_order, parse_powers, parse_taps};
use crate::report::BoundReport;
use crate::verify::{
    certify_instance, certify_repi, random_corpus, Certification, CorpusInstance, Law, DEFAULT_SPACING,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "repi", version, about = "Rényi entropy power inequality bounds and checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form constants over an order grid: one `thm1` row per `n` and a `bc` row (n = inf).
    Constants {
        #[command(flatten)]
        alphas: AlphaArgs,
        /// Summand counts, comma separated.
        #[arg(long, default_value = "2,3,10")]
        n: String,
    },
    /// Lower bounds on the entropy power of the sum for given summand powers.
    Compare {
        /// Entropy powers, comma separated.
        #[arg(long)]
        powers: String,
        #[command(flatten)]
        alphas: AlphaArgs,
    },
    /// Lower bounds on the entropy gain of an FIR filter, in nats.
    Filter {
        /// Tap determinants, comma separated; signs are ignored by the bounds.
        #[arg(long)]
        taps: String,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[command(flatten)]
        alphas: AlphaArgs,
    },
    /// Certify the inequalities numerically on gridded densities.
    Verify {
        #[arg(long, value_enum, default_value_t = Corpus::Random)]
        corpus: Corpus,
        #[command(flatten)]
        alphas: AlphaArgs,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of random instances.
        #[arg(long, default_value_t = 200)]
        instances: usize,
        /// `x,f` CSV density files certified together; overrides --corpus.
        #[arg(long)]
        density: Vec<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct AlphaArgs {
    /// A single order, `inf` allowed.
    #[arg(long, conflicts_with = "alpha_grid")]
    pub alpha: Option<String>,
    /// `a,b,...`, `lin:START:STOP:COUNT` or `log:START:STOP:COUNT`.
    #[arg(long)]
    pub alpha_grid: Option<String>,
}

impl AlphaArgs {
    fn orders(&self, default: &str) -> Result<Vec<Order>, Error> {
        match (&self.alpha, &self.alpha_grid) {
            (Some(a), _) => Ok(vec![parse_order(a)?]),
            (None, Some(g)) => parse_alpha_grid(g),
            (None, None) => parse_alpha_grid(default),
        }
    }

    fn is_set(&self) -> bool {
        self.alpha.is_some() || self.alpha_grid.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Corpus {
    /// Seeded mixtures of Gaussians, uniforms and shifted exponentials.
    Random,
    /// Two Uniform[0,1]; default order inf.
    TwoUniforms,
    /// Two standard Gaussians; default orders 1.1, 2, 10.
    TwoGaussians,
    /// Uniform[0,1] and a standard Gaussian; default order 2.
    UniformGaussian,
}

/// A summand count, or the `n -> inf` column.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Count {
    Finite(usize),
    Infinite,
}

impl std::fmt::Display for Count {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Count::Finite(n) => write!(f, "{n}"),
            Count::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Count::Finite(n) => s.serialize_u64(*n as u64),
            Count::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<usize>,
    pub alpha: Order,
    pub method: &'static str,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<Count>,
}

impl Row {
    fn new(alpha: Order, method: &'static str, value: f64) -> Self {
        Self {
            instance: None,
            alpha,
            method,
            value,
            n: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub command: &'static str,
    pub rows: Vec<Row>,
    #[serde(skip)]
    pub violations: Vec<String>,
}

/// Failure of a command, with the exit code it maps to.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Compute(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Compute(_) => EXIT_VIOLATION,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidOrder(_)
            | Error::InvalidInput(_)
            | Error::DimensionMismatch { .. }
            | Error::Degenerate
            | Error::SpacingMismatch(..)
            | Error::ZeroDensity
            | Error::Parse(_) => CliError::Usage(e.to_string()),
            _ => CliError::Compute(e),
        }
    }
}

const DEFAULT_GRID: &str = "log:1.01:10000:200";

/// Runs one command and builds its table.
pub fn execute(command: &Command) -> Result<Table, CliError> {
    match command {
        Command::Constants { alphas, n } => constants(&alphas.orders(DEFAULT_GRID)?, &parse_counts(n)?),
        Command::Compare { powers, alphas } => {
            let powers = parse_powers(powers)?;
            let mut rows = Vec::new();
            for order in alphas.orders(DEFAULT_GRID)? {
                let r = BoundReport::compute(&powers, order)?;
                let lb = r.lower_bounds;
                for (method, value) in [("bc", lb.bc), ("thm1", lb.thm1), ("thm2", lb.thm2), ("bv", lb.bv)] {
                    rows.push(Row::new(order, method, value));
                }
            }
            Ok(table("compare", rows))
        }
        Command::Filter { taps, dim, alphas } => {
            let taps = parse_taps(taps)?;
            let mut rows = Vec::new();
            for order in alphas.orders("2")? {
                let r = filter_report(&FilterSpec::new(taps.clone(), *dim, order)?)?;
                for (method, value) in [("thm2", r.thm2), ("thm1", r.thm1), ("bc", r.bc), ("bv", r.bv)] {
                    rows.push(Row::new(order, method, value));
                }
                if let Some(g) = r.gaussian {
                    rows.push(Row::new(order, "gaussian", g));
                }
            }
            Ok(table("filter", rows))
        }
        Command::Verify {
            corpus,
            alphas,
            seed,
            instances,
            density,
        } => verify(*corpus, alphas, *seed, *instances, density),
    }
}

fn table(command: &'static str, rows: Vec<Row>) -> Table {
    Table {
        command,
        rows,
        violations: Vec::new(),
    }
}

fn constants(orders: &[Order], counts: &[usize]) -> Result<Table, CliError> {
    let mut rows = Vec::new();
    for &order in orders {
        for &n in counts {
            rows.push(Row {
                n: Some(Count::Finite(n)),
                ..Row::new(order, "thm1", thm1_constant(order, n)?)
            });
        }
        rows.push(Row {
            n: Some(Count::Infinite),
            ..Row::new(order, "bc", bc_constant(order))
        });
    }
    Ok(table("constants", rows))
}

fn verify(
    corpus: Corpus,
    alphas: &AlphaArgs,
    seed: u64,
    instances: usize,
    density: &[PathBuf],
) -> Result<Table, CliError> {
    let mut certs: Vec<Certification> = Vec::new();
    if !density.is_empty() {
        if density.len() < 2 {
            return Err(CliError::Usage("--density needs at least two files".into()));
        }
        let grids = density
            .iter()
            .map(|p| {
                let text = fs::read_to_string(p).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
                parse_grid_csv(&text).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        for order in alphas.orders("2")? {
            certs.push(certify_repi(&grids, order)?);
        }
    } else {
        let cases: Vec<CorpusInstance> = match corpus {
            Corpus::Random => {
                if alphas.is_set() {
                    return Err(CliError::Usage(
                        "the random corpus draws its own orders; drop --alpha".into(),
                    ));
                }
                random_corpus(seed, instances)
            }
            Corpus::TwoUniforms => named(alphas, "inf", vec![Law::unit_uniform(), Law::unit_uniform()])?,
            Corpus::TwoGaussians => named(
                alphas,
                "1.1,2,10",
                vec![Law::standard_gaussian(), Law::standard_gaussian()],
            )?,
            Corpus::UniformGaussian => named(alphas, "2", vec![Law::unit_uniform(), Law::standard_gaussian()])?,
        };
        if cases.is_empty() {
            return Err(CliError::Usage("corpus is empty".into()));
        }
        for case in &cases {
            certs.push(certify_instance(case, DEFAULT_SPACING)?);
        }
    }

    let mut rows = Vec::new();
    let mut violations = Vec::new();
    for (i, c) in certs.iter().enumerate() {
        for (method, value) in [
            ("ratio", c.ratio),
            ("bc", c.bc),
            ("thm1", c.thm1),
            ("thm2", c.thm2),
            ("bv", c.bv_ratio),
        ] {
            rows.push(Row {
                instance: Some(i),
                ..Row::new(c.order, method, value)
            });
        }
        violations.extend(c.violations.iter().map(|v| format!("instance {i}: {v}")));
    }
    Ok(Table {
        command: "verify",
        rows,
        violations,
    })
}

fn named(alphas: &AlphaArgs, default: &str, laws: Vec<Law>) -> Result<Vec<CorpusInstance>, CliError> {
    Ok(alphas
        .orders(default)?
        .into_iter()
        .map(|order| CorpusInstance {
            order,
            laws: laws.clone(),
        })
        .collect())
}

/// Renders `table` in the requested format.
pub fn render(table: &Table, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, table)?;
            out.write_all(b"\n")
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(out);
            let with_instance = table.rows.iter().any(|r| r.instance.is_some());
            let with_n = table.rows.iter().any(|r| r.n.is_some());
            let mut header = vec!["alpha", "method", "value"];
            if with_instance {
                header.insert(0, "instance");
            }
            if with_n {
                header.push("n");
            }
            w.write_record(&header)?;
            for r in &table.rows {
                let mut rec = Vec::with_capacity(header.len());
                if with_instance {
                    rec.push(r.instance.map(|i| i.to_string()).unwrap_or_default());
                }
                rec.push(r.alpha.to_string());
                rec.push(r.method.to_string());
                rec.push(r.value.to_string());
                if with_n {
                    rec.push(r.n.map(|n| n.to_string()).unwrap_or_default());
                }
                w.write_record(&rec)?;
            }
            w.flush()
        }
    }
}

/// Runs the parsed command line, writing to `--out` or `stdout`, and reports
/// problems on `stderr`. Returns the process exit code.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let table = match execute(&cli.command) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    let written = match &cli.out {
        Some(path) => fs::File::create(path).and_then(|mut f| render(&table, cli.format, &mut f)),
        None => render(&table, cli.format, stdout),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_USAGE;
    }
    if !table.violations.is_empty() {
        for v in &table.violations {
            let _ = writeln!(stderr, "violation: {v}");
        }
        return EXIT_VIOLATION;
    }
    EXIT_OK
}
