//! `squares` — generate plane-graph instances, solve for the clique number
//! of the square, verify the big-clique characterization over instance
//! directories, and run square colorings.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
//! Reports are JSON with bytewise-sorted keys and a schema version field
//! "v"; timings (`elapsed_ms`) are reported but not meant for golden
//! comparisons.  Set SQUARES_LOG=info (or debug) for progress logging.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use squares_core::big_clique::{
    omega_square_structured, verify_characterization, CharacterizationStatus, SolveReport,
};
use squares_core::clique_core::{max_clique_exact, CliqueError, DEFAULT_BUDGET};
use squares_core::generators::{
    hub_triangulation, parse_rotation, random_triangulation, serialize_rotation, sparsify,
    wegner_even, wegner_odd, wegner_perturbed, GenSeed,
};
use squares_core::square_ops::{square_of_plane, SimpleGraph};
use squares_core::structure_checks::{
    contraction_color, degeneracy_order, greedy_square_color, light_vertex_witness,
    verify_square_coloring, ColoringResult,
};
use squares_core::PlaneGraph;

#[derive(Parser)]
#[command(
    name = "squares",
    version,
    about = "Big cliques in squares of plane graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit an instance in rotation format.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Compute the clique number of the square of one instance.
    Solve(SolveArgs),
    /// Batch-verify a directory of rotation files.
    Verify(VerifyArgs),
    /// Color the square of one or more instances, with validation.
    Color(ColorArgs),
}

#[derive(Subcommand)]
enum Family {
    /// Extremal graph of even maximum degree 2s (order 3s+1).
    Wegner {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extremal graph of odd maximum degree D (order floor(3D/2)+1).
    WegnerOdd {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random plane triangulation on n vertices.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Wegner graph with pendant vertices attached (max degree preserved).
    Perturbed {
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 0)]
        pendants: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random triangulation with each edge kept with probability `keep`.
    Sparse {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        keep: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random triangulation with vertex 0 pumped to the given degree.
    Hub {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SolveArgs {
    /// Rotation-format input file.
    #[arg(long)]
    input: PathBuf,
    /// Degree budget; defaults to max(19, Δ(G)).
    #[arg(long)]
    d: Option<usize>,
    /// Node-expansion budget for the exact solver.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Run the uncapped exact oracle on the square instead of the
    /// structured solver.
    #[arg(long)]
    exact: bool,
    /// Treat the input as an edge-list simple graph and run the exact
    /// clique search on it directly (no squaring; implies --exact).
    #[arg(long)]
    edges: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Directory of rotation-format files (*.rot is not required; every
    /// regular file is read).
    #[arg(long)]
    dir: PathBuf,
    /// Degree budget; defaults to max(19, Δ(G)) per instance.
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads for batch verification.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ColorArgs {
    /// Single rotation-format input file.
    #[arg(long, conflicts_with = "dir")]
    input: Option<PathBuf>,
    /// Directory of rotation-format files.
    #[arg(long)]
    dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    method: Method,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    Greedy,
    Contraction,
    Both,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("SQUARES_LOG")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Generate { family } => {
            let (text, out) = generate(family)?;
            emit(&text, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve(args) => solve(args),
        Command::Verify(args) => verify(args),
        Command::Color(args) => color(args),
    }
}

fn generate(family: Family) -> Result<(String, Option<PathBuf>)> {
    let (graph, out) = match family {
        Family::Wegner { s, out } => (wegner_even(s).0, out),
        Family::WegnerOdd { d, out } => (wegner_odd(d).0, out),
        Family::Random { n, seed, out } => (random_triangulation(GenSeed { seed, n }), out),
        Family::Perturbed {
            s,
            pendants,
            seed,
            out,
        } => (wegner_perturbed(s, pendants, seed)?.0, out),
        Family::Sparse { n, keep, seed, out } => {
            let tri = random_triangulation(GenSeed { seed, n });
            (sparsify(&tri, keep, seed), out)
        }
        Family::Hub {
            n,
            delta,
            seed,
            out,
        } => (hub_triangulation(n, delta, seed), out),
    };
    Ok((serialize_rotation(&graph), out))
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_graph(path: &Path) -> Result<PlaneGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_rotation(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn instance_name(path: &Path) -> String {
    path.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn default_budget_d(g: &PlaneGraph, flag: Option<usize>) -> Result<usize> {
    let d = flag.unwrap_or_else(|| g.max_degree().max(19));
    if d < 19 || g.max_degree() > d {
        return Err(anyhow!(
            "degree budget D = {d} must satisfy 19 <= D and Δ(G) = {} <= D",
            g.max_degree()
        ));
    }
    Ok(d)
}

fn render_solve_text(r: &SolveReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("instance: {}\n", r.instance));
    out.push_str(&format!("D: {}  threshold: {}\n", r.d, r.threshold));
    out.push_str(&format!(
        "omega: {}  applicable: {}\n",
        r.omega, r.applicable
    ));
    match r.triple {
        Some([x, y, z]) => out.push_str(&format!("triple: {x} {y} {z}\n")),
        None => out.push_str("triple: none\n"),
    }
    if let (Some(bound), Some(slack)) = (r.bound, r.slack) {
        out.push_str(&format!("bound: {bound}  slack: {slack}\n"));
    }
    out.push_str(&format!("S: {:?}\n", r.s));
    out
}

fn exact_report(
    name: String,
    host: &SimpleGraph,
    d: usize,
    budget: u64,
    start: Instant,
) -> Result<Result<SolveReport, ExitCode>> {
    let cert = match max_clique_exact(host, budget) {
        Ok(cert) => cert,
        Err(CliqueError::BudgetExceeded { .. }) => {
            eprintln!("error: node-expansion budget exceeded");
            return Ok(Err(ExitCode::from(1)));
        }
        Err(e) => return Err(e.into()),
    };
    Ok(Ok(SolveReport {
        d,
        applicable: cert.size() >= d + 20,
        bound: None,
        elapsed_ms: start.elapsed().as_millis() as u64,
        instance: name,
        omega: cert.size(),
        partition_sizes: None,
        slack: None,
        threshold: d + 20,
        triple: None,
        s: cert.members,
        v: SolveReport::SCHEMA_VERSION,
    }))
}

fn solve(args: SolveArgs) -> Result<ExitCode> {
    let name = instance_name(&args.input);
    let start = Instant::now();
    if args.edges {
        let text = fs::read_to_string(&args.input)
            .with_context(|| format!("reading {}", args.input.display()))?;
        let host = squares_core::square_ops::parse_edge_list(&text)
            .map_err(|e| anyhow!("{}: {e}", args.input.display()))?;
        let d = args.d.unwrap_or_else(|| host.max_degree().max(19));
        if d < 19 {
            return Err(anyhow!("degree budget D = {d} must be at least 19"));
        }
        let report = match exact_report(name, &host, d, args.budget, start)? {
            Ok(report) => report,
            Err(code) => return Ok(code),
        };
        let text = match args.format {
            Format::Json => format!("{}\n", serde_json::to_string(&report)?),
            Format::Text => render_solve_text(&report),
        };
        emit(&text, args.out.as_deref())?;
        return Ok(ExitCode::SUCCESS);
    }
    let g = load_graph(&args.input)?;
    let d = default_budget_d(&g, args.d)?;
    let report = if args.exact {
        let square = square_of_plane(&g);
        match exact_report(name, &square, d, args.budget, start)? {
            Ok(report) => report,
            Err(code) => return Ok(code),
        }
    } else {
        match omega_square_structured(&g, d, args.budget) {
            Ok(res) => {
                SolveReport::from_omega(&name, &g, d, &res, start.elapsed().as_millis() as u64)
            }
            Err(squares_core::big_clique::BigCliqueError::Clique(
                CliqueError::BudgetExceeded { .. },
            )) => {
                eprintln!("error: node-expansion budget exceeded");
                return Ok(ExitCode::from(1));
            }
            Err(e) => return Err(e.into()),
        }
    };
    let text = match args.format {
        Format::Json => format!("{}\n", serde_json::to_string(&report)?),
        Format::Text => render_solve_text(&report),
    };
    emit(&text, args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

/// Per-instance outcome of `verify`: the characterization report plus the
/// supporting structural checks.
#[derive(Serialize)]
struct VerifyRecord {
    characterization: Option<SolveReport>,
    degeneracy_k: Option<usize>,
    error: Option<String>,
    greedy_colors: Option<usize>,
    instance: String,
    light_vertex_case: Option<u8>,
    /// omega - (floor(3Δ/2) + 1); negative when the clique bound has room.
    omega_slack: Option<i64>,
    status: String,
}

#[derive(Serialize)]
struct VerifySummary {
    fail: usize,
    max_omega_slack: Option<i64>,
    not_applicable: usize,
    parse_errors: usize,
    pass: usize,
    total: usize,
}

#[derive(Serialize)]
struct BatchReport {
    records: Vec<VerifyRecord>,
    summary: VerifySummary,
    v: u32,
}

fn verify_one(path: &Path, d_flag: Option<usize>, budget: u64) -> VerifyRecord {
    let name = instance_name(path);
    let fail = |msg: String| VerifyRecord {
        characterization: None,
        degeneracy_k: None,
        error: Some(msg),
        greedy_colors: None,
        instance: name.clone(),
        light_vertex_case: None,
        omega_slack: None,
        status: "ERROR".to_string(),
    };
    let g = match load_graph(path) {
        Ok(g) => g,
        Err(e) => return fail(format!("{e:#}")),
    };
    let d = match default_budget_d(&g, d_flag) {
        Ok(d) => d,
        Err(e) => return fail(format!("{e:#}")),
    };
    let start = Instant::now();
    let ch = match verify_characterization(&g, d, budget) {
        Ok(ch) => ch,
        Err(e) => return fail(format!("{e}")),
    };
    let elapsed = start.elapsed().as_millis() as u64;
    log::info!("{name}: omega={} status={:?}", ch.omega, ch.status);

    let delta = g.max_degree();
    let simple = SimpleGraph::from_plane(&g);
    let mut ok = true;

    let peel = degeneracy_order(&simple);
    if peel.k > 5 {
        ok = false;
    }
    let greedy = greedy_square_color(&simple);
    if greedy.count > 9 * delta + 1 || !verify_square_coloring(&simple, &greedy.colors) {
        ok = false;
    }
    let witness = light_vertex_witness(&g).ok().filter(|w| w.validate(&g));
    if witness.is_none() {
        ok = false;
    }
    let status = match (ch.status, ok) {
        (CharacterizationStatus::Pass, true) => "PASS",
        (CharacterizationStatus::NotApplicable, true) => "NOT-APPLICABLE",
        _ => "FAIL",
    };
    VerifyRecord {
        omega_slack: Some(ch.omega as i64 - (3 * delta / 2 + 1) as i64),
        characterization: Some(SolveReport::from_characterization(&name, d, &ch, elapsed)),
        degeneracy_k: Some(peel.k),
        error: None,
        greedy_colors: Some(greedy.count),
        instance: name,
        light_vertex_case: witness.map(|w| w.case),
        status: status.to_string(),
    }
}

fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let mut files: Vec<PathBuf> = fs::read_dir(&args.dir)
        .with_context(|| format!("reading directory {}", args.dir.display()))?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.is_file())
        .collect();
    files.sort();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.max(1))
        .build()
        .context("building worker pool")?;
    let mut records: Vec<VerifyRecord> = pool.install(|| {
        use rayon::prelude::*;
        files
            .par_iter()
            .map(|p| verify_one(p, args.d, args.budget))
            .collect()
    });
    records.sort_by(|a, b| a.instance.cmp(&b.instance));

    let count = |s: &str| records.iter().filter(|r| r.status == s).count();
    let summary = VerifySummary {
        fail: count("FAIL"),
        max_omega_slack: records.iter().filter_map(|r| r.omega_slack).max(),
        not_applicable: count("NOT-APPLICABLE"),
        parse_errors: count("ERROR"),
        pass: count("PASS"),
        total: records.len(),
    };
    let code = if summary.parse_errors > 0 {
        ExitCode::from(2)
    } else if summary.fail > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    };
    let report = BatchReport {
        records,
        summary,
        v: SolveReport::SCHEMA_VERSION,
    };
    let text = match args.format {
        Format::Json => format!("{}\n", serde_json::to_string(&report)?),
        Format::Text => {
            let mut out = String::new();
            for r in &report.records {
                out.push_str(&format!(
                    "{:<40} {}{}\n",
                    r.instance,
                    r.status,
                    r.error
                        .as_deref()
                        .map(|e| format!(" ({e})"))
                        .unwrap_or_default()
                ));
            }
            out.push_str(&format!(
                "total {} | pass {} | not-applicable {} | fail {} | errors {}\n",
                report.summary.total,
                report.summary.pass,
                report.summary.not_applicable,
                report.summary.fail,
                report.summary.parse_errors
            ));
            out
        }
    };
    emit(&text, args.out.as_deref())?;
    Ok(code)
}

#[derive(Serialize)]
struct ColorRecord {
    count: usize,
    instance: String,
    max_degree: usize,
    method: String,
    proper: bool,
    /// greedy: count <= 9Δ+1; contraction: count <= 2Δ+19 when Δ >= 13
    /// (null when the bound does not apply).
    within_bound: Option<bool>,
}

#[derive(Serialize)]
struct ColorReport {
    records: Vec<ColorRecord>,
    v: u32,
}

fn color_record(name: &str, g: &PlaneGraph, result: &ColoringResult, greedy: bool) -> ColorRecord {
    let simple = SimpleGraph::from_plane(g);
    let delta = simple.max_degree();
    let within_bound = if greedy {
        Some(result.count <= 9 * delta + 1)
    } else if delta >= 13 {
        Some(result.count <= 2 * delta + 19)
    } else {
        None
    };
    ColorRecord {
        count: result.count,
        instance: name.to_string(),
        max_degree: delta,
        method: if greedy {
            "greedy_square"
        } else {
            "contraction"
        }
        .to_string(),
        proper: verify_square_coloring(&simple, &result.colors),
        within_bound,
    }
}

fn color(args: ColorArgs) -> Result<ExitCode> {
    let files: Vec<PathBuf> = match (&args.input, &args.dir) {
        (Some(f), None) => vec![f.clone()],
        (None, Some(dir)) => {
            let mut fs_: Vec<PathBuf> = fs::read_dir(dir)
                .with_context(|| format!("reading directory {}", dir.display()))?
                .filter_map(|e| e.ok())
                .map(|e| e.path())
                .filter(|p| p.is_file())
                .collect();
            fs_.sort();
            fs_
        }
        _ => return Err(anyhow!("exactly one of --input and --dir is required")),
    };
    let mut records = Vec::new();
    for path in &files {
        let g = load_graph(path)?;
        let name = instance_name(path);
        if args.method != Method::Contraction {
            let res = greedy_square_color(&SimpleGraph::from_plane(&g));
            records.push(color_record(&name, &g, &res, true));
        }
        if args.method != Method::Greedy {
            let res = contraction_color(&g).map_err(|e| anyhow!("{name}: {e}"))?;
            records.push(color_record(&name, &g, &res, false));
        }
    }
    let failed = records
        .iter()
        .any(|r| !r.proper || r.within_bound == Some(false));
    let report = ColorReport {
        records,
        v: SolveReport::SCHEMA_VERSION,
    };
    let text = match args.format {
        Format::Json => format!("{}\n", serde_json::to_string(&report)?),
        Format::Text => report
            .records
            .iter()
            .map(|r| {
                format!(
                    "{:<40} {:<13} colors {:>4}  proper {}  within_bound {:?}\n",
                    r.instance, r.method, r.count, r.proper, r.within_bound
                )
            })
            .collect(),
    };
    emit(&text, args.out.as_deref())?;
    Ok(if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}
