//! Argument definitions and command dispatch.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use ratcurve_core::{ConstraintTuple, CountQuery, CuspRoute, Engine, InvariantKey, Singularity};
use serde::Serialize;
use thiserror::Error;

use crate::cache::{self, CacheError};
use crate::golden;
use crate::selftest::{self, Level};
use crate::table::{self, Mismatch};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_RANGE: i32 = 3;
pub const EXIT_BALANCE: i32 = 4;
pub const EXIT_GOLDEN: i32 = 5;

/// Exact genus-0 Gromov-Witten invariants of projective spaces and counts of
/// rational curves with a cusp, a triple point or a tacnode.
#[derive(Debug, Parser)]
#[command(name = "ratcurve", version)]
pub struct Cli {
    /// Level-0 memo file, loaded before and rewritten after the command.
    #[arg(long, global = true, env = "RC_COUNT_CACHE")]
    pub cache: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// A primary invariant, or one with a single descendant insertion.
    Invariant {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        /// Codimensions of the primary insertions, comma separated.
        #[arg(long, value_delimiter = ',')]
        insertions: Vec<u32>,
        /// Power of psi at the descendant point.
        #[arg(long, requires = "at")]
        psi: Option<u32>,
        /// Codimension of the class at the descendant point.
        #[arg(long, requires = "psi")]
        at: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Count curves with one singular point through general linear subspaces.
    Singular {
        #[arg(long = "type", value_enum)]
        kind: Kind,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        /// Defaults to 3d-2 in P^2 and 0 otherwise.
        #[arg(long)]
        points: Option<u32>,
        #[arg(long, default_value_t = 0)]
        lines: u32,
        #[arg(long, default_value_t = 0)]
        planes: u32,
        /// Evaluation route for cusps.
        #[arg(long, value_enum, default_value_t = Route::A)]
        route: Route,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Recompute a published table and check it against the embedded values.
    Table {
        #[arg(long)]
        id: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the built-in consistency checks.
    Selftest {
        #[arg(long, value_enum, default_value_t = SelftestLevel::Quick)]
        level: SelftestLevel,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Cusp,
    Triple,
    Tacnode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Route {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SelftestLevel {
    Quick,
    Full,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Engine(#[from] ratcurve_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error(
        "table {} disagrees with the published value at d={} {}: computed {}, expected {}",
        .0.table, .0.d, .0.mu, .0.computed, .0.expected
    )]
    Golden(Mismatch),
    #[error("{0} of {1} self-checks failed")]
    Selftest(usize, usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Engine(ratcurve_core::Error::Balance { .. }) => EXIT_BALANCE,
            CliError::Engine(ratcurve_core::Error::NotACount { .. }) => EXIT_FAILURE,
            CliError::Engine(_) => EXIT_RANGE,
            CliError::Usage(_) => EXIT_PARSE,
            CliError::Golden(_) => EXIT_GOLDEN,
            CliError::Selftest(..) => EXIT_FAILURE,
        }
    }
}

/// What happened to the cache file during one run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CacheReport {
    pub path: Option<String>,
    /// `none`, `cold`, `warm` or `rejected`.
    pub status: String,
    pub loaded: String,
    pub stored: String,
}

/// Run-dependent counters. Everything outside this object is deterministic.
#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub ms: String,
    pub evaluations: String,
    pub memo_hits: String,
}

/// Machine-readable result of `invariant` and `singular`. Numbers are
/// decimal strings.
#[derive(Clone, Debug, Serialize)]
pub struct QueryOutput {
    pub query: BTreeMap<&'static str, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub raw: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divisor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<String>,
    pub timing: Timing,
    pub cache: CacheReport,
}

#[derive(Serialize)]
struct TableOutput {
    table: String,
    title: &'static str,
    entries: Vec<table::JsonEntry>,
    matches: bool,
    timing: Timing,
    cache: CacheReport,
}

/// Everything a command produced, rendered once the cache has been written.
enum Rendered {
    Query(QueryOutput, Format),
    Table {
        text: String,
        json: Option<TableOutput>,
        mismatch: Option<Mismatch>,
    },
    Selftest(Vec<selftest::CheckOutcome>),
}

/// Runs one parsed command line and returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let engine = Engine::new();
    let mut report = CacheReport {
        path: cli.cache.as_ref().map(|p| p.display().to_string()),
        status: "none".into(),
        loaded: "0".into(),
        stored: "0".into(),
    };
    if let Some(path) = &cli.cache {
        match cache::load(path) {
            Ok(entries) => {
                report.status = "warm".into();
                report.loaded = entries.len().to_string();
                engine.preload(entries);
            }
            Err(CacheError::Io(e)) if e.kind() == std::io::ErrorKind::NotFound => {
                report.status = "cold".into();
            }
            Err(e) => {
                let _ = writeln!(
                    err,
                    "warning: ignoring cache {}: {e}; recomputing from scratch",
                    path.display()
                );
                report.status = "rejected".into();
            }
        }
    }

    let started = Instant::now();
    let result = execute(&engine, &cli.command);
    let elapsed = started.elapsed();

    if let Some(path) = &cli.cache {
        match cache::save(&engine, path) {
            Ok(n) => report.stored = n.to_string(),
            Err(e) => {
                let _ = writeln!(
                    err,
                    "warning: could not write cache {}: {e}",
                    path.display()
                );
            }
        }
    }
    let stats = engine.stats();
    let timing = Timing {
        ms: elapsed.as_millis().to_string(),
        evaluations: stats.evaluations.to_string(),
        memo_hits: stats.memo_hits.to_string(),
    };

    let outcome = result.and_then(|r| emit(r, timing, report, out));
    let _ = out.flush();
    match outcome {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(engine: &Engine, command: &Command) -> Result<Rendered, CliError> {
    match *command {
        Command::Invariant {
            n,
            d,
            ref insertions,
            psi,
            at,
            format,
        } => {
            no_csv(format)?;
            let descendant = psi.zip(at);
            let value = match descendant {
                Some(point) => engine.descendant_invariant(n, d, point, insertions)?,
                None => engine.primary_invariant(n, d, insertions)?,
            };
            let key = InvariantKey::new(n, d, descendant, insertions);
            let mut query = BTreeMap::new();
            query.insert("command", "invariant".to_string());
            query.insert("key", key.to_string());
            Ok(Rendered::Query(
                QueryOutput {
                    query,
                    value: Some(value.to_string()),
                    raw: None,
                    divisor: None,
                    count: None,
                    timing: placeholder_timing(),
                    cache: CacheReport::default(),
                },
                format,
            ))
        }
        Command::Singular {
            kind,
            n,
            d,
            points,
            lines,
            planes,
            route,
            format,
        } => {
            no_csv(format)?;
            let points = points.unwrap_or(if n == 2 { (3 * d).saturating_sub(2) } else { 0 });
            let mu = ConstraintTuple::from_counts(n, points, lines, planes)?;
            let singularity = match kind {
                Kind::Cusp => Singularity::Cusp,
                Kind::Triple => Singularity::TriplePoint,
                Kind::Tacnode => Singularity::Tacnode,
            };
            let result = match (kind, route) {
                (Kind::Cusp, Route::B) => engine.cusp_count(n, d, &mu, CuspRoute::B)?,
                (_, Route::B) => {
                    return Err(CliError::Usage(
                        "--route applies only to --type cusp".into(),
                    ))
                }
                _ => engine.singular_count(&CountQuery {
                    singularity,
                    n,
                    d,
                    mu,
                })?,
            };
            let mut query = BTreeMap::new();
            query.insert("command", "singular".to_string());
            query.insert("type", singularity.to_string());
            query.insert("n", n.to_string());
            query.insert("d", d.to_string());
            query.insert("points", points.to_string());
            query.insert("lines", lines.to_string());
            query.insert("planes", planes.to_string());
            if kind == Kind::Cusp {
                query.insert(
                    "route",
                    if route == Route::A { "a" } else { "b" }.to_string(),
                );
            }
            Ok(Rendered::Query(
                QueryOutput {
                    query,
                    value: None,
                    raw: Some(result.raw.to_string()),
                    divisor: Some(result.divisor.to_string()),
                    count: Some(result.count.to_string()),
                    timing: placeholder_timing(),
                    cache: CacheReport::default(),
                },
                format,
            ))
        }
        Command::Table { id, format } => {
            let t = golden::table(id).ok_or_else(|| {
                ratcurve_core::Error::OutOfRange(format!("table id {id} is not in 1..5"))
            })?;
            let entries = table::compute(engine, t)?;
            let mismatch = table::first_mismatch(t, &entries);
            let text = match format {
                Format::Text => table::render_text(t, &entries),
                Format::Csv => table::render_csv(t, &entries),
                Format::Json => String::new(),
            };
            let json = (format == Format::Json).then(|| TableOutput {
                table: t.id.to_string(),
                title: t.title,
                entries: table::json_entries(&entries),
                matches: mismatch.is_none(),
                timing: placeholder_timing(),
                cache: CacheReport::default(),
            });
            Ok(Rendered::Table {
                text,
                json,
                mismatch,
            })
        }
        Command::Selftest { level } => {
            let level = match level {
                SelftestLevel::Quick => Level::Quick,
                SelftestLevel::Full => Level::Full,
            };
            Ok(Rendered::Selftest(selftest::run(engine, level)))
        }
    }
}

fn no_csv(format: Format) -> Result<(), CliError> {
    if format == Format::Csv {
        return Err(CliError::Usage(
            "csv output is only available for tables".into(),
        ));
    }
    Ok(())
}

fn placeholder_timing() -> Timing {
    Timing {
        ms: String::new(),
        evaluations: String::new(),
        memo_hits: String::new(),
    }
}

fn json_line(value: &impl Serialize) -> String {
    // serializing plain strings and maps cannot fail
    serde_json::to_string_pretty(value).expect("serializable output") + "\n"
}

fn emit(
    r: Rendered,
    timing: Timing,
    cache: CacheReport,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let text = match r {
        Rendered::Query(mut q, format) => {
            q.timing = timing;
            q.cache = cache;
            match format {
                Format::Json => json_line(&q),
                _ => {
                    let mut s: String =
                        q.query.iter().map(|(k, v)| format!("{k}: {v}\n")).collect();
                    for (label, v) in [
                        ("value", &q.value),
                        ("raw", &q.raw),
                        ("divisor", &q.divisor),
                        ("count", &q.count),
                    ] {
                        if let Some(v) = v {
                            s += &format!("{label}: {v}\n");
                        }
                    }
                    s
                }
            }
        }
        Rendered::Table {
            text,
            json,
            mismatch,
        } => {
            let s = match json {
                Some(mut j) => {
                    j.timing = timing;
                    j.cache = cache;
                    json_line(&j)
                }
                None => text,
            };
            let _ = out.write_all(s.as_bytes());
            return match mismatch {
                Some(m) => Err(CliError::Golden(m)),
                None => Ok(()),
            };
        }
        Rendered::Selftest(outcomes) => {
            let mut s = String::new();
            let failed = outcomes.iter().filter(|o| o.failure.is_some()).count();
            for o in &outcomes {
                match &o.failure {
                    None => s += &format!("PASS {}\n", o.name),
                    Some(why) => s += &format!("FAIL {}: {why}\n", o.name),
                }
            }
            s += &format!(
                "{} of {} checks passed\n",
                outcomes.len() - failed,
                outcomes.len()
            );
            let _ = out.write_all(s.as_bytes());
            return if failed == 0 {
                Ok(())
            } else {
                Err(CliError::Selftest(failed, outcomes.len()))
            };
        }
    };
    let _ = out.write_all(text.as_bytes());
    Ok(())
}
