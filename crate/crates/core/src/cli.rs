//! Command-line front end.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cache;
use crate::constraints::ConstraintProfile;
use crate::error::Error;
use crate::genus2::{compute, Genus2Report};
use crate::gw0::GwTable;

#[derive(Debug, Parser)]
#[command(
    name = "g2enum",
    version,
    about = "Genus-two curve counts in P^2 and P^3 through points and lines"
)]
pub struct Cli {
    /// Genus-zero cache file, loaded before and rewritten after the run.
    #[arg(long, global = true, env = "G2ENUM_CACHE")]
    pub cache: Option<PathBuf>,

    /// Print cache statistics to stderr.
    #[arg(long, global = true)]
    pub stats: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count curves of one degree; in P^3, omitted constraints mean every
    /// admissible (points, lines) pair.
    Compute(ComputeArgs),
    /// Tabulate a range of degrees (P^2) or all constraints of one degree (P^3).
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Ambient {
    P2,
    P3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Include node counts, Chern pairings and component numbers.
    #[arg(long)]
    pub show_intermediates: bool,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[arg(value_enum)]
    pub ambient: Ambient,
    #[arg(long, allow_negative_numbers = true)]
    pub degree: i64,
    #[arg(long)]
    pub points: Option<u32>,
    #[arg(long)]
    pub lines: Option<u32>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub ambient: Ambient,
    /// Largest degree for P^2 tables.
    #[arg(long)]
    pub max_degree: Option<u32>,
    /// Degree for P^3 tables.
    #[arg(long, allow_negative_numbers = true)]
    pub degree: Option<i64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// A failed run: message plus process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Consistency(_) => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

/// Output of a successful run.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
}

pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let table = GwTable::new();
    if let Some(path) = &cli.cache {
        if path.exists() {
            cache::load(&table, path)?;
        }
    }
    table.reset_stats();

    let (profiles, output) = match &cli.command {
        Command::Compute(args) => (compute_profiles(args)?, &args.output),
        Command::Table(args) => (table_profiles(args)?, &args.output),
    };
    let reports = profiles
        .iter()
        .map(|p| compute(&table, p))
        .collect::<Result<Vec<_>, _>>()?;

    if let Some(path) = &cli.cache {
        cache::store(&table, path)?;
    }

    let mut out = Outcome {
        stdout: render(&reports, output),
        stderr: String::new(),
    };
    for r in &reports {
        for w in &r.warnings {
            let _ = writeln!(
                out.stderr,
                "warning: P^{} d={} ({},{}): {w}",
                r.ambient, r.degree, r.points, r.lines
            );
        }
    }
    if cli.stats {
        let s = table.stats();
        let _ = writeln!(
            out.stderr,
            "cache: {} entries, {} hits, {} misses",
            s.entries, s.hits, s.misses
        );
    }
    Ok(out)
}

fn compute_profiles(args: &ComputeArgs) -> Result<Vec<ConstraintProfile>, Failure> {
    let d = args.degree;
    match args.ambient {
        Ambient::P2 => {
            if args.lines.is_some_and(|q| q != 0) {
                return Err(usage("line constraints are only available in P^3"));
            }
            let p = args.points.unwrap_or((3 * d - 2).max(0) as u32);
            Ok(vec![ConstraintProfile::new(2, d, p, 0)?])
        }
        Ambient::P3 => {
            let budget = 4 * d - 3;
            let pair = match (args.points, args.lines) {
                (None, None) => return Ok(ConstraintProfile::all_p3(d)?),
                (Some(p), Some(q)) => (p, q),
                (Some(p), None) => (p, u32::try_from(budget - 2 * p as i64).unwrap_or(u32::MAX)),
                (None, Some(q)) => {
                    let rest = budget - q as i64;
                    if rest < 0 || rest % 2 != 0 {
                        return Err(Error::Unbalanced(format!(
                            "2p+q must equal 4d-3 = {budget} (got q={q})"
                        ))
                        .into());
                    }
                    ((rest / 2) as u32, q)
                }
            };
            Ok(vec![ConstraintProfile::new(3, d, pair.0, pair.1)?])
        }
    }
}

fn table_profiles(args: &TableArgs) -> Result<Vec<ConstraintProfile>, Failure> {
    match args.ambient {
        Ambient::P2 => {
            let max = args
                .max_degree
                .ok_or_else(|| usage("table p2 needs --max-degree"))?;
            (1..=max as i64)
                .map(|d| ConstraintProfile::plane(d).map_err(Failure::from))
                .collect()
        }
        Ambient::P3 => {
            let d = args
                .degree
                .ok_or_else(|| usage("table p3 needs --degree"))?;
            Ok(ConstraintProfile::all_p3(d)?)
        }
    }
}

const COLUMNS: [&str; 7] = ["ambient", "degree", "points", "lines", "rt", "cr", "n2"];

fn row(r: &Genus2Report) -> [String; 7] {
    [
        format!("p{}", r.ambient),
        r.degree.to_string(),
        r.points.to_string(),
        r.lines.to_string(),
        r.rt.to_string(),
        r.cr.to_string(),
        r.n2.to_string(),
    ]
}

pub fn render(reports: &[Genus2Report], output: &OutputArgs) -> String {
    match output.format {
        Format::Table => render_table(reports, output.show_intermediates),
        Format::Csv => render_csv(reports, output.show_intermediates),
        Format::Json => render_json(reports, output.show_intermediates),
    }
}

fn render_table(reports: &[Genus2Report], intermediates: bool) -> String {
    let rows: Vec<_> = reports.iter().map(row).collect();
    let widths: Vec<usize> = (0..COLUMNS.len())
        .map(|i| {
            rows.iter()
                .map(|r| r[i].len())
                .chain([COLUMNS[i].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: Vec<&str>| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        format!("| {} |\n", padded.join(" | "))
    };
    let mut out = line(COLUMNS.to_vec());
    let rule: Vec<String> = widths
        .iter()
        .map(|w| format!("{}:", "-".repeat(w + 1)))
        .collect();
    out.push_str(&format!("|{}|\n", rule.join("|")));
    for r in &rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    if intermediates {
        for r in reports {
            let _ = writeln!(
                out,
                "\np{} d={} points={} lines={}",
                r.ambient, r.degree, r.points, r.lines
            );
            for (k, v) in &r.intermediates {
                let _ = writeln!(out, "  {k} = {v}");
            }
        }
    }
    out
}

fn render_csv(reports: &[Genus2Report], intermediates: bool) -> String {
    let extra: Vec<String> = if intermediates {
        let mut keys: Vec<String> = reports
            .iter()
            .flat_map(|r| r.intermediates.keys().cloned())
            .collect();
        keys.sort();
        keys.dedup();
        keys
    } else {
        Vec::new()
    };
    let mut out = COLUMNS.join(",");
    for k in &extra {
        out.push(',');
        out.push_str(k);
    }
    out.push('\n');
    for r in reports {
        let mut cells: Vec<String> = row(r).to_vec();
        for k in &extra {
            cells.push(
                r.intermediates
                    .get(k)
                    .map(|v| v.to_string())
                    .unwrap_or_default(),
            );
        }
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn render_json(reports: &[Genus2Report], intermediates: bool) -> String {
    let strip = |r: &Genus2Report| {
        let mut r = r.clone();
        if !intermediates {
            r.intermediates.clear();
        }
        r
    };
    let text = if reports.len() == 1 {
        serde_json::to_string_pretty(&strip(&reports[0]))
    } else {
        serde_json::to_string_pretty(&reports.iter().map(strip).collect::<Vec<_>>())
    };
    let mut text = text.expect("reports serialize");
    text.push('\n');
    text
}
