//! The `dn` command line. [`run`] takes its streams as arguments so tests can
//! drive it in-process.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::arith::{chi_formula, triangular_k};
use crate::bounds::{attainable_union, extremal_family, verify_union_bound};
use crate::coloring::{column_coverage_witness, optimal_coloring, path_cover, verify_coloring, ColoringCertificate};
use crate::convex::build_dn;
use crate::io::{
    emit_certificate, emit_thrackles, parse_any, parse_certificate, parse_thrackles, render_chords, render_polyomino,
    render_thrackle_chords, AnyDocument, ThrackleSet,
};
use crate::oracle::{chromatic_number_exact, ChromaticResult, SmallGraph};
use crate::thrackle::{common_edge, decompose};

/// Largest `n` with `C(n, 2) <= 64`, the limit of the bitset oracle.
const ORACLE_MAX_N: u32 = 11;

#[derive(Debug, Parser)]
#[command(name = "dn", version, about = "Colorings of convex segment disjointness graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
    Svg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Style {
    Polyomino,
    Chords,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the chromatic number of D_N.
    Chi { n: u64 },
    /// Emit the optimal coloring of D_N.
    Color {
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Check a coloring certificate; exit 0 iff it is a proper coloring.
    Verify { file: PathBuf },
    /// Exact chromatic number of D_N by branch and bound (N <= 11).
    Oracle {
        n: u32,
        /// Give up after this many seconds and report an interval.
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Star family of K maximal thrackles meeting the union bound.
    Extremal {
        n: u32,
        k: u32,
        /// Also write the family as a thrackle-set document.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Shared edge of the two maximal thrackles in a thrackle-set document.
    CommonEdge { file: PathBuf },
    /// List the generating paths restricted to N points.
    Paths { n: u32 },
    /// Run the invariant checks for every n in a range; prints JSON.
    Census { n_min: u32, n_max: u32 },
    /// Render a certificate or thrackle-set document as SVG.
    Render {
        file: PathBuf,
        #[arg(long, value_enum)]
        style: Style,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure of a subcommand: exit code 1 with a message.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = std::result::Result<bool, Failure>;

/// Parse `args` (including the program name) and run. Returns the exit code:
/// 0 on success, 1 on invalid input or a refuted check, 2 on usage errors.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    2
                }
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Chi { n } => {
            writeln!(out, "{}", chi_formula(n)?)?;
            Ok(true)
        }
        Command::Color { n, out: file, format } => {
            let cert = optimal_coloring(n)?;
            let text = match format {
                Format::Json => emit_certificate(&cert, None),
                Format::Text => certificate_text(&cert),
                Format::Svg => render_polyomino(&cert),
            };
            emit(&text, file.as_deref(), out)
        }
        Command::Verify { file } => verify(&file, out),
        Command::Oracle { n, budget } => oracle(n, budget, out),
        Command::Extremal { n, k, out: file } => extremal(n, k, file.as_deref(), out),
        Command::CommonEdge { file } => {
            let set = parse_thrackles(&read(&file)?).map_err(|e| located(&file, e))?;
            let [t1, t2] = set.thrackles.as_slice() else {
                return Err(Failure(format!("expected exactly 2 thrackles, found {}", set.thrackles.len())));
            };
            let t1 = decompose(set.n, t1).map_err(|e| Failure(format!("thrackles[0]: {e}")))?;
            let t2 = decompose(set.n, t2).map_err(|e| Failure(format!("thrackles[1]: {e}")))?;
            match common_edge(&t1, &t2) {
                Ok(s) => {
                    writeln!(out, "{s}")?;
                    Ok(true)
                }
                Err(e) => {
                    writeln!(err, "precondition violated: {e}")?;
                    Ok(false)
                }
            }
        }
        Command::Paths { n } => {
            for p in path_cover(n)? {
                let cells: Vec<String> = p.cells.iter().map(ToString::to_string).collect();
                let flag = if p.maximal { "maximal" } else { "partial" };
                writeln!(out, "P_{} {flag} {}", p.index, cells.join(" "))?;
            }
            Ok(true)
        }
        Command::Census { n_min, n_max } => census(n_min, n_max, out),
        Command::Render { file, style, out: target } => {
            let doc = parse_any(&read(&file)?).map_err(|e| located(&file, e))?;
            let svg = match (doc, style) {
                (AnyDocument::Certificate(c), Style::Polyomino) => render_polyomino(&c),
                (AnyDocument::Certificate(c), Style::Chords) => render_chords(&c),
                (AnyDocument::Thrackles(t), Style::Polyomino) => {
                    let classes = t.thrackles.iter().map(|e| e.iter().copied().collect()).collect();
                    render_polyomino(&ColoringCertificate::new(t.n, classes))
                }
                (AnyDocument::Thrackles(t), Style::Chords) => render_thrackle_chords(&t),
            };
            emit(&svg, target.as_deref(), out)
        }
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn located(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure(format!("{}: {e}", path.display()))
}

fn emit(text: &str, file: Option<&Path>, out: &mut dyn Write) -> Outcome {
    match file {
        Some(path) => fs::write(path, text).map_err(|e| located(path, e))?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(true)
}

fn certificate_text(cert: &ColoringCertificate) -> String {
    let mut text = format!("n = {}, {} classes\n", cert.n, cert.color_count());
    for (c, class) in cert.classes.iter().enumerate() {
        let cells: Vec<String> = class.iter().map(ToString::to_string).collect();
        let label = cert.class_labels.get(c).copied().unwrap_or(0);
        text.push_str(&format!("class {c} (P_{label}): {}\n", cells.join(" ")));
    }
    text
}

fn verify(file: &Path, out: &mut dyn Write) -> Outcome {
    let cert = parse_certificate(&read(file)?).map_err(|e| located(file, e))?;
    let verdict = verify_coloring(&cert)?;
    if verdict.is_valid() {
        let cells: usize = cert.classes.iter().map(Vec::len).sum();
        writeln!(out, "valid: {} classes, {cells} cells, n = {}", cert.color_count(), cert.n)?;
        return Ok(true);
    }
    for s in &verdict.uncovered {
        writeln!(out, "uncovered cell {s}")?;
    }
    for c in &verdict.conflicts {
        writeln!(out, "class {}: {} and {} are disjoint", c.class, c.first, c.second)?;
    }
    writeln!(out, "invalid: {} uncovered, {} conflicts", verdict.uncovered.len(), verdict.conflicts.len())?;
    Ok(false)
}

fn oracle(n: u32, budget: Option<f64>, out: &mut dyn Write) -> Outcome {
    if n > ORACLE_MAX_N {
        return Err(Failure(format!("the oracle handles n <= {ORACLE_MAX_N}, got {n}")));
    }
    let budget = match budget {
        Some(s) if !(s.is_finite() && s >= 0.0) => return Err(Failure(format!("invalid budget {s}"))),
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    let g = SmallGraph::from_dn(&build_dn(n))?;
    match chromatic_number_exact(&g, budget) {
        ChromaticResult::Exact(k) => writeln!(out, "{k}")?,
        ChromaticResult::Bounds { lower, upper } => writeln!(out, "[{lower}, {upper}]")?,
    }
    Ok(true)
}

fn extremal(n: u32, k: u32, file: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let family = extremal_family(n, k)?;
    for (i, t) in family.members().iter().enumerate() {
        let edges: Vec<String> = t.edges().iter().map(ToString::to_string).collect();
        writeln!(out, "T{} {}", i + 1, edges.join(" "))?;
    }
    let report = verify_union_bound(&family)?;
    let target = attainable_union(u64::from(n), u64::from(k))?;
    writeln!(out, "union {} bound {} attainable {target}", report.union_edges, report.bound)?;
    if let Some(path) = file {
        let set = ThrackleSet { n, thrackles: family.members().iter().map(|t| t.edges().clone()).collect() };
        fs::write(path, emit_thrackles(&set)).map_err(|e| located(path, e))?;
    }
    Ok(report.union_edges as u64 == target)
}

#[derive(Serialize)]
struct CensusRow {
    n: u32,
    chi: u64,
    formula_agrees: bool,
    classes: usize,
    coverage_valid: bool,
    columns_witnessed: bool,
    maximal_paths: usize,
    partial_paths: usize,
    /// Only for `n <= 11`; `null` above.
    oracle: Option<String>,
    ok: bool,
}

#[derive(Serialize)]
struct Census {
    n_min: u32,
    n_max: u32,
    all_ok: bool,
    rows: Vec<CensusRow>,
}

fn census_row(n: u32) -> std::result::Result<CensusRow, Failure> {
    let chi = chi_formula(u64::from(n))?;
    let formula_agrees = u64::from(n) - triangular_k(u64::from(n)).unwrap_or(0) == chi;
    let cert = optimal_coloring(n)?;
    let coverage_valid = verify_coloring(&cert)?.is_valid();
    let columns_witnessed = (2..=n).all(|j| column_coverage_witness(n, j).is_ok());
    let cover = path_cover(n)?;
    let maximal_paths = cover.iter().filter(|p| p.maximal).count();
    let (oracle, oracle_ok) = if n <= ORACLE_MAX_N {
        let g = SmallGraph::from_dn(&build_dn(n))?;
        let r = chromatic_number_exact(&g, Some(Duration::from_secs(30)));
        let text = match r {
            ChromaticResult::Exact(k) => k.to_string(),
            ChromaticResult::Bounds { lower, upper } => format!("[{lower}, {upper}]"),
        };
        (Some(text), r.contains(chi as usize))
    } else {
        (None, true)
    };
    let ok = formula_agrees && cert.color_count() as u64 == chi && coverage_valid && columns_witnessed && oracle_ok;
    Ok(CensusRow {
        n,
        chi,
        formula_agrees,
        classes: cert.color_count(),
        coverage_valid,
        columns_witnessed,
        maximal_paths,
        partial_paths: cover.len() - maximal_paths,
        oracle,
        ok,
    })
}

fn census(n_min: u32, n_max: u32, out: &mut dyn Write) -> Outcome {
    if n_min > n_max {
        return Err(Failure(format!("empty range {n_min}..={n_max}")));
    }
    let rows = (n_min..=n_max).map(census_row).collect::<std::result::Result<Vec<_>, _>>()?;
    let all_ok = rows.iter().all(|r| r.ok);
    let report = Census { n_min, n_max, all_ok, rows };
    writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    Ok(all_ok)
}
