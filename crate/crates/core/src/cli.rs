/*!
Command-line front end.

[`run`] parses the arguments, performs one verb and returns the process
exit status. Output goes to the two writers passed in, so the whole CLI
can be driven from tests.

| status | meaning                                                        |
|--------|----------------------------------------------------------------|
| 0      | success                                                        |
| 1      | `verify`: the code is not identifying                          |
| 2      | a verified code misses its certified bound                     |
| 3      | a graph or code file is malformed                              |
| 4      | the graph has closed twins                                     |
| 5      | the graph has a triangle where triangle-freeness is required   |
| 6      | the graph is not connected                                     |
| 7      | the exact search ran out of its node budget                    |
| 8      | invalid arguments or inputs outside a verb's domain            |
| 9      | internal error: a construction failed its own checks           |
| 10     | a file could not be read or written                            |

`report` returns 0 when every instance succeeds, and otherwise the status
of the first failing instance in file-name order.
*/

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::codecheck::{violations, Violation};
use crate::constructor::{
    bound_report, construct_near_triangle_free, construct_triangle_free, Certificate, ConstructError, ConstructOptions,
};
use crate::edgelist::{parse_code, write_code};
use crate::exact::{gamma_id_exact, ExactError, MAX_EXACT_ORDER};
use crate::families::{in_f_delta, make_family, random_triangle_free, FamilyId};
use crate::{parse_edge_list, write_edge_list, Graph};

/// Exit statuses; see the module documentation.
pub mod exit {
    pub const OK: i32 = 0;
    pub const NOT_IDENTIFYING: i32 = 1;
    pub const BOUND_MISSED: i32 = 2;
    pub const PARSE: i32 = 3;
    pub const NOT_IDENTIFIABLE: i32 = 4;
    pub const NOT_TRIANGLE_FREE: i32 = 5;
    pub const NOT_CONNECTED: i32 = 6;
    pub const BUDGET: i32 = 7;
    pub const USAGE: i32 = 8;
    pub const INTERNAL: i32 = 9;
    pub const IO: i32 = 10;
}

/// Exact identification numbers in `report` are computed below this order
/// unless `--slow` is given.
pub const REPORT_EXACT_BELOW: usize = 16;

#[derive(Parser, Debug)]
#[command(name = "idcode", version, about = "Identifying codes in graphs")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Check a code against a graph and list its violations.
    Verify {
        graph: PathBuf,
        /// File of whitespace-separated code vertex ids.
        #[arg(long)]
        code: PathBuf,
        /// Compare the code with the bound for this maximum degree instead
        /// of the graph's own.
        #[arg(long)]
        delta: Option<usize>,
    },
    /// Compute a minimum identifying code.
    Exact {
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a certified code of a connected triangle-free graph.
    Construct {
        graph: PathBuf,
        /// Order up to which subproblems fall back to exact search.
        #[arg(long)]
        fallback: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a certified code of a graph with a few triangles, after
    /// greedily deleting edges to make it triangle-free.
    NearConstruct {
        graph: PathBuf,
        #[arg(long)]
        fallback: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write an exceptional graph and its optimal code. `all` writes every
    /// member of F_3 and needs `--out`.
    Family {
        /// T0..T11, P4, C4, C7, Star<k> or all.
        id: String,
        /// Directory for `<id>.edges` and `<id>.code`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a random connected triangle-free graph.
    Random {
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Target edge count; defaults to n.
        #[arg(long)]
        edges: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Construct codes for every `*.edges` file in a directory and tabulate
    /// them against their bounds.
    Report {
        dir: PathBuf,
        #[arg(long)]
        fallback: Option<usize>,
        /// Also compute exact identification numbers from order 16 up.
        #[arg(long)]
        slow: bool,
        /// CSV output path.
        #[arg(long, default_value = "report.csv")]
        out: PathBuf,
    },
}

/// A failure with its exit status.
struct Failure {
    status: i32,
    message: String,
}

impl Failure {
    fn new(status: i32, message: impl Into<String>) -> Failure {
        Failure { status, message: message.into() }
    }
}

type Outcome = Result<i32, Failure>;

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::new(exit::IO, format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    parse_edge_list(&read(path)?).map_err(|e| Failure::new(exit::PARSE, format!("{}: {e}", path.display())))
}

/// Writes `text` to `path`, or to `out` when there is no path.
fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| io_failure(p, e)),
        None => out.write_all(text.as_bytes()).map_err(|e| io_failure(Path::new("<stdout>"), e)),
    }
}

fn construct_status(e: &ConstructError) -> i32 {
    match e {
        ConstructError::BoundMissed(_) => exit::BOUND_MISSED,
        ConstructError::NotIdentifiable(..) => exit::NOT_IDENTIFIABLE,
        ConstructError::NotTriangleFree(..) => exit::NOT_TRIANGLE_FREE,
        ConstructError::NotConnected => exit::NOT_CONNECTED,
        ConstructError::EmptyGraph | ConstructError::DeltaTooSmall(_) | ConstructError::InvalidDeletionSet(_) => {
            exit::USAGE
        }
        ConstructError::NotVerified(_) | ConstructError::InvariantViolated(_) => exit::INTERNAL,
    }
}

fn exact_status(e: &ExactError) -> i32 {
    match e {
        ExactError::NotIdentifiable(..) => exit::NOT_IDENTIFIABLE,
        ExactError::BudgetExceeded { .. } => exit::BUDGET,
        _ => exit::USAGE,
    }
}

fn options(fallback: Option<usize>) -> ConstructOptions {
    let mut opts = ConstructOptions::default();
    if let Some(f) = fallback {
        opts.fallback_threshold = f;
    }
    opts
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit status.
///
/// # Examples
///
/// ```
/// let (mut out, mut err) = (Vec::new(), Vec::new());
/// let status = idcode::cli::run(["idcode", "family", "T0"], &mut out, &mut err);
/// assert_eq!(status, 0);
/// assert!(String::from_utf8(out).unwrap().contains("4 3\n"));
/// ```
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
                exit::USAGE
            } else {
                let _ = out.write_all(rendered.as_bytes());
                exit::OK
            };
        }
    };
    let result = match cli.verb {
        Verb::Verify { graph, code, delta } => verify(&graph, &code, delta, out),
        Verb::Exact { graph, out: path } => exact(&graph, path.as_deref(), out),
        Verb::Construct { graph, fallback, out: path } => {
            construct(&graph, path.as_deref(), out, err, |g| construct_triangle_free(g, &options(fallback)))
        }
        Verb::NearConstruct { graph, fallback, out: path } => {
            construct(&graph, path.as_deref(), out, err, |g| construct_near_triangle_free(g, None, &options(fallback)))
        }
        Verb::Family { id, out: path } => family(&id, path.as_deref(), out),
        Verb::Random { n, seed, edges, out: path } => random(n, seed, edges, path.as_deref(), out),
        Verb::Report { dir, fallback, slow, out: path } => report(&dir, &options(fallback), slow, &path, out),
    };
    match result {
        Ok(status) => status,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.status
        }
    }
}

fn verify(graph: &Path, code: &Path, delta: Option<usize>, out: &mut dyn Write) -> Outcome {
    let g = read_graph(graph)?;
    let c = parse_code(&read(code)?).map_err(|e| Failure::new(exit::PARSE, format!("{}: {e}", code.display())))?;
    g.check_vertices(&c).map_err(|e| Failure::new(exit::USAGE, e.to_string()))?;
    let found = violations(&g, &c, &g.vertex_set());
    let mut text = String::new();
    for v in &found {
        match v {
            Violation::Undominated(a) => writeln!(text, "undominated {a}"),
            Violation::Unseparated(a, b) => writeln!(text, "unseparated {a} {b}"),
        }
        .expect("writing to a String cannot fail");
    }
    if found.is_empty() {
        let d = delta.unwrap_or(g.max_degree());
        let extra = if g.is_triangle_free() && in_f_delta(&g, d).is_some() { 1 } else { 0 };
        let r = bound_report(d, g.order(), c.len(), extra);
        writeln!(text, "identifying, size {}; delta {d}: {} vs {} (slack {})", c.len(), r.lhs, r.rhs, r.slack)
            .expect("writing to a String cannot fail");
    }
    emit(&text, None, out)?;
    Ok(if found.is_empty() { exit::OK } else { exit::NOT_IDENTIFYING })
}

fn exact(graph: &Path, path: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let g = read_graph(graph)?;
    let r = gamma_id_exact(&g, None).map_err(|e| Failure::new(exact_status(&e), e.to_string()))?;
    emit(&toml::to_string(&r).expect("exact results serialize to TOML"), path, out)?;
    Ok(exit::OK)
}

fn construct(
    graph: &Path,
    path: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
    build: impl FnOnce(&Graph) -> Result<Certificate, ConstructError>,
) -> Outcome {
    let g = read_graph(graph)?;
    match build(&g) {
        Ok(cert) => {
            emit(&cert.to_toml(), path, out)?;
            Ok(exit::OK)
        }
        Err(ConstructError::BoundMissed(cert)) => {
            emit(&cert.to_toml(), path, out)?;
            let _ = writeln!(err, "error: {}", ConstructError::BoundMissed(cert.clone()));
            Ok(exit::BOUND_MISSED)
        }
        Err(e) => Err(Failure::new(construct_status(&e), e.to_string())),
    }
}

fn manifest_line(id: FamilyId) -> Result<(String, String, String), Failure> {
    let entry = make_family(id).map_err(|e| Failure::new(exit::USAGE, e.to_string()))?;
    let line =
        format!("{id}\tn={}\tm={}\tdelta={}\tgamma={}\n", entry.order, entry.graph.size(), entry.delta, entry.gamma);
    Ok((write_edge_list(&entry.graph), write_code(&entry.optimal_code), line))
}

fn family(id: &str, dir: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let ids = if id.eq_ignore_ascii_case("all") {
        if dir.is_none() {
            return Err(Failure::new(exit::USAGE, "`family all` needs --out <dir>"));
        }
        FamilyId::f3()
    } else {
        vec![id.parse::<FamilyId>().map_err(|e| Failure::new(exit::USAGE, e.to_string()))?]
    };
    for id in ids {
        let (edges, code, line) = manifest_line(id)?;
        match dir {
            Some(d) => {
                fs::create_dir_all(d).map_err(|e| io_failure(d, e))?;
                emit(&edges, Some(&d.join(format!("{id}.edges"))), out)?;
                emit(&code, Some(&d.join(format!("{id}.code"))), out)?;
                emit(&line, None, out)?;
            }
            None => emit(&format!("# {}# code: {code}{edges}", line.replace('\t', " ")), None, out)?,
        }
    }
    Ok(exit::OK)
}

fn random(n: usize, seed: u64, edges: Option<usize>, path: Option<&Path>, out: &mut dyn Write) -> Outcome {
    if n == 0 {
        return Err(Failure::new(exit::USAGE, "n must be at least 1"));
    }
    let g = random_triangle_free(n, edges.unwrap_or(n), seed);
    emit(&write_edge_list(&g), path, out)?;
    Ok(exit::OK)
}

/// One `report` row. Fields that do not apply are left empty.
#[derive(Serialize, Debug, Default)]
struct Row {
    file: String,
    n: Option<usize>,
    m: Option<usize>,
    delta: Option<usize>,
    family: Option<String>,
    t: Option<usize>,
    code_size: Option<usize>,
    bound_num: Option<u64>,
    bound_den: Option<u64>,
    slack: Option<i64>,
    gamma_exact: Option<usize>,
    status: String,
    #[serde(skip)]
    exit: i32,
}

fn report_row(path: &Path, opts: &ConstructOptions, slow: bool) -> Row {
    let mut row =
        Row { file: path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default(), ..Row::default() };
    let g = match read_graph(path) {
        Ok(g) => g,
        Err(f) => {
            row.status = f.message;
            row.exit = f.status;
            return row;
        }
    };
    row.n = Some(g.order());
    row.m = Some(g.size());
    row.delta = Some(g.max_degree());
    let built = if g.is_triangle_free() || g.max_degree() < 3 {
        construct_triangle_free(&g, opts)
    } else {
        construct_near_triangle_free(&g, None, opts)
    };
    let cert = match built {
        Ok(cert) => {
            row.status = "ok".to_string();
            Some(cert)
        }
        Err(ConstructError::BoundMissed(cert)) => {
            row.status = "bound missed".to_string();
            row.exit = exit::BOUND_MISSED;
            Some(*cert)
        }
        Err(e) => {
            row.status = e.to_string();
            row.exit = construct_status(&e);
            None
        }
    };
    if let Some(cert) = cert {
        row.family = cert.family.map(|f| f.to_string());
        row.t = cert.triangle_deletion.as_ref().map(|d| d.t);
        row.code_size = Some(cert.code.len());
        row.bound_num = Some(cert.bound_num);
        row.bound_den = Some(cert.bound_den);
        row.slack = Some(cert.slack());
    }
    if (g.order() < REPORT_EXACT_BELOW || slow) && g.order() <= MAX_EXACT_ORDER {
        row.gamma_exact = gamma_id_exact(&g, None).ok().map(|r| r.size);
    }
    row
}

fn cell<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_else(|| "-".to_string())
}

fn report(dir: &Path, opts: &ConstructOptions, slow: bool, csv_path: &Path, out: &mut dyn Write) -> Outcome {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| io_failure(dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "edges"))
        .collect();
    files.sort();
    let rows: Vec<Row> = files.par_iter().map(|p| report_row(p, opts, slow)).collect();

    let mut writer = csv::Writer::from_path(csv_path).map_err(|e| Failure::new(exit::IO, e.to_string()))?;
    for row in &rows {
        writer.serialize(row).map_err(|e| Failure::new(exit::IO, e.to_string()))?;
    }
    writer.flush().map_err(|e| io_failure(csv_path, e))?;

    let header = ["file", "n", "m", "delta", "family", "t", "code", "bound", "slack", "gamma", "status"];
    let table: Vec<[String; 11]> = rows
        .iter()
        .map(|r| {
            let bound = match (r.bound_num, r.bound_den) {
                (Some(a), Some(b)) => format!("{a}/{b}"),
                _ => "-".to_string(),
            };
            [
                r.file.clone(),
                cell(&r.n),
                cell(&r.m),
                cell(&r.delta),
                cell(&r.family),
                cell(&r.t),
                cell(&r.code_size),
                bound,
                cell(&r.slack),
                cell(&r.gamma_exact),
                r.status.clone(),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for line in &table {
        for (w, c) in widths.iter_mut().zip(line) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut text = String::new();
    let render = |cells: &[String], text: &mut String| {
        let padded: Vec<String> = cells.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
        writeln!(text, "{}", padded.join("  ").trim_end()).expect("writing to a String cannot fail");
    };
    render(&header.map(String::from), &mut text);
    for line in &table {
        render(line, &mut text);
    }
    emit(&text, None, out)?;
    Ok(rows.iter().map(|r| r.exit).find(|&s| s != exit::OK).unwrap_or(exit::OK))
}
