//! Command-line toolkit for spiral-chain 3-coloring of plane graphs that
//! contain no 4-cycles and no 5-cycles.
//!
//! Exit codes, uniform across subcommands:
//!   0 — success
//!   1 — input is a valid embedding but contains forbidden short cycles
//!   2 — malformed input: unreadable file, bad JSON, invalid embedding,
//!       or an unusable parameter (clap argument errors also exit 2)
//!   3 — coloring failure: the heuristic hit an impasse, or a verified
//!       assignment violates an edge

mod bench;
mod dot;
mod hunt;

use std::fs;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use spiralcolor::coloring::{color, verify_total, Color, ColoringOutcome};
use spiralcolor::generators::{gadget_by_name, gadget_names, gen_random_g6, Instance};
use spiralcolor::graph::{find_short_cycles, short_cycles_in, GraphJson, PlanarGraph};
use spiralcolor::oracle::{exact_3color, DEFAULT_NODE_BUDGET};
use spiralcolor::spiral::{decompose, default_start, Orientation, SpiralDecomposition};

const EXIT_OK: u8 = 0;
const EXIT_NOT_G6: u8 = 1;
const EXIT_MALFORMED: u8 = 2;
const EXIT_COLORING: u8 = 3;

/// A command's terminal error: exit code plus a message for stderr.
struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

type CmdResult = Result<u8, Failure>;

#[derive(Parser)]
#[command(
    name = "spiralcolor",
    version,
    about = "Spiral-chain decomposition and greedy 3-coloring of plane graphs \
             without 4- or 5-cycles, with an exact oracle and a falsification harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a graph file: embedding validity, Euler count, forbidden cycles
    Validate {
        /// Graph or instance JSON file
        #[arg(long, short)]
        input: PathBuf,
        /// Also treat 6-cycles as forbidden during the cycle scan
        #[arg(long)]
        strict_g6: bool,
    },
    /// Compute the spiral-chain decomposition and print it as JSON
    Decompose {
        #[arg(long, short)]
        input: PathBuf,
        /// Start vertex (must lie on the outer face); defaults to the
        /// smallest outer-face vertex
        #[arg(long)]
        start: Option<usize>,
        /// Scan direction: "cw" or "ccw"
        #[arg(long, default_value = "cw")]
        orientation: Orientation,
    },
    /// Decompose and color; print the outcome as JSON
    Color {
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long)]
        start: Option<usize>,
        #[arg(long, default_value = "cw")]
        orientation: Orientation,
        /// Include the full step-by-step trace in the outcome JSON
        #[arg(long)]
        trace: bool,
    },
    /// Check a color assignment against a graph's edges
    Verify {
        #[arg(long, short)]
        input: PathBuf,
        /// JSON file holding either a bare array of color ranks (1..3) or an
        /// outcome object with a "colors" field
        #[arg(long)]
        colors: PathBuf,
    },
    /// Decide exact 3-colorability by exhaustive search
    Oracle {
        #[arg(long, short)]
        input: PathBuf,
        /// Abort after this many color assignments
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        oracle_budget: u64,
    },
    /// Generate instances: named gadgets or seeded random graphs
    Gen {
        /// Emit a named gadget instead of a random instance
        #[arg(long, conflicts_with_all = ["n", "attach_probability", "seed", "count", "out_dir"])]
        gadget: Option<String>,
        /// List the available gadget names and exit
        #[arg(long, conflicts_with = "gadget")]
        list_gadgets: bool,
        /// Vertex count of the generated graph
        #[arg(long, default_value_t = 30)]
        n: usize,
        /// Probability of growing by triangle apex rather than path insertion
        #[arg(long, default_value_t = 0.3)]
        attach_probability: f64,
        /// RNG seed (corpus mode uses seed, seed+1, ...)
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Generate this many instances at consecutive seeds
        #[arg(long)]
        count: Option<u64>,
        /// Write instances plus a manifest into this directory instead of stdout
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Run a randomized falsification campaign over seeded instances
    Hunt {
        /// Number of seeds to test
        #[arg(long, default_value_t = 100)]
        instances: u64,
        /// First seed of the block
        #[arg(long, default_value_t = 0)]
        seed_start: u64,
        /// Per-seed vertex counts are drawn from 6..=n-max
        #[arg(long, default_value_t = 40)]
        n_max: usize,
        /// Start vertices swept per instance
        #[arg(long, value_enum, default_value = "default")]
        starts: StartSweep,
        /// Scan directions swept per start
        #[arg(long, value_enum, default_value = "both")]
        orientations: OrientationSweep,
        /// Node budget for each exact-search classification
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        oracle_budget: u64,
        /// Worker threads (record stream is identical for any value)
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Write NDJSON records here instead of stdout (summary always goes
        /// to stderr)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Measure decompose+color wall time across instance sizes
    Bench {
        /// Instance sizes to measure
        #[arg(long, value_delimiter = ',', default_values_t = [100usize, 1000, 10000])]
        sizes: Vec<usize>,
        /// Timed repetitions per size (fastest run is reported)
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.3)]
        attach_probability: f64,
        #[arg(long, value_enum, default_value = "human")]
        format: OutputFormat,
    },
    /// Render a decomposed (optionally colored) graph as Graphviz DOT
    ExportDot {
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long)]
        start: Option<usize>,
        #[arg(long, default_value = "cw")]
        orientation: Orientation,
        /// Skip coloring: label chains only, no fills
        #[arg(long)]
        chains_only: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StartSweep {
    /// Only the default start (smallest outer-face vertex)
    Default,
    /// Every distinct outer-face vertex
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientationSweep {
    Cw,
    Ccw,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Human,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { input, strict_g6 } => cmd_validate(&input, strict_g6),
        Command::Decompose { input, start, orientation } => {
            cmd_decompose(&input, start, orientation)
        }
        Command::Color { input, start, orientation, trace } => {
            cmd_color(&input, start, orientation, trace)
        }
        Command::Verify { input, colors } => cmd_verify(&input, &colors),
        Command::Oracle { input, oracle_budget } => cmd_oracle(&input, oracle_budget),
        Command::Gen { gadget, list_gadgets, n, attach_probability, seed, count, out_dir } => {
            cmd_gen(gadget.as_deref(), list_gadgets, n, attach_probability, seed, count, out_dir)
        }
        Command::Hunt {
            instances,
            seed_start,
            n_max,
            starts,
            orientations,
            oracle_budget,
            workers,
            out,
        } => cmd_hunt(instances, seed_start, n_max, starts, orientations, oracle_budget, workers, out),
        Command::Bench { sizes, reps, seed, attach_probability, format } => {
            cmd_bench(&sizes, reps, seed, attach_probability, format)
        }
        Command::ExportDot { input, start, orientation, chains_only } => {
            cmd_export_dot(&input, start, orientation, chains_only)
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

// ---------------------------------------------------------------------------
// Input loading
// ---------------------------------------------------------------------------

/// Reads and builds a graph from a JSON file. Accepts both the bare graph
/// shape and full instance files (extra fields are ignored).
fn load_graph(path: &Path) -> Result<PlanarGraph, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| fail(EXIT_MALFORMED, format!("cannot read {}: {e}", path.display())))?;
    let gj: GraphJson = serde_json::from_str(&text)
        .map_err(|e| fail(EXIT_MALFORMED, format!("malformed graph JSON in {}: {e}", path.display())))?;
    PlanarGraph::from_graph_json(gj)
        .map_err(|e| fail(EXIT_MALFORMED, format!("invalid embedding in {}: {e}", path.display())))
}

/// Validates an explicit start vertex, or picks the default.
fn resolve_start(g: &PlanarGraph, start: Option<usize>) -> Result<usize, Failure> {
    match start {
        None => Ok(default_start(g)),
        Some(s) if s >= g.n() => {
            Err(fail(EXIT_MALFORMED, format!("start vertex {s} is out of range (n = {})", g.n())))
        }
        Some(s) if !g.on_outer_face(s) => {
            Err(fail(EXIT_MALFORMED, format!("start vertex {s} is not on the outer face")))
        }
        Some(s) => Ok(s),
    }
}

fn build_decomposition(
    g: &PlanarGraph,
    start: Option<usize>,
    orientation: Orientation,
) -> Result<SpiralDecomposition, Failure> {
    let start = resolve_start(g, start)?;
    decompose(g, start, orientation)
        .map_err(|e| fail(EXIT_MALFORMED, format!("decomposition failed: {e}")))
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

fn cmd_validate(input: &Path, strict_g6: bool) -> CmdResult {
    let text = fs::read_to_string(input)
        .map_err(|e| fail(EXIT_MALFORMED, format!("cannot read {}: {e}", input.display())))?;
    let gj: GraphJson = serde_json::from_str(&text)
        .map_err(|e| fail(EXIT_MALFORMED, format!("malformed graph JSON in {}: {e}", input.display())))?;
    let g = match PlanarGraph::from_graph_json(gj) {
        Ok(g) => g,
        Err(e) => {
            println!("embedding: invalid — {e}");
            return Ok(EXIT_MALFORMED);
        }
    };
    let v = g.n();
    let e = g.edge_count();
    let f = g.faces().len();
    println!("embedding: valid");
    println!("vertices: {v}");
    println!("edges: {e}");
    println!("faces: {f}");
    println!("euler: {v} - {e} + {f} = {}", v as i64 - e as i64 + f as i64);
    println!("outer_face_length: {}", g.outer_face().len());
    let scan = if strict_g6 { "4-, 5-, and 6-cycles" } else { "4- and 5-cycles" };
    println!("cycle_scan: {scan}");
    let report = short_cycles_in(g.adjacency(), strict_g6);
    println!("forbidden_cycles: {}", report.cycles.len());
    for cycle in &report.cycles {
        println!("  {cycle:?}");
    }
    if report.is_empty() {
        println!("G6: yes");
        Ok(EXIT_OK)
    } else {
        println!("G6: no");
        Ok(EXIT_NOT_G6)
    }
}

fn cmd_decompose(input: &Path, start: Option<usize>, orientation: Orientation) -> CmdResult {
    let g = load_graph(input)?;
    let d = build_decomposition(&g, start, orientation)?;
    println!("{}", d.to_json());
    Ok(EXIT_OK)
}

fn cmd_color(input: &Path, start: Option<usize>, orientation: Orientation, trace: bool) -> CmdResult {
    let g = load_graph(input)?;
    let report = find_short_cycles(&g);
    if !report.is_empty() {
        return Err(fail(
            EXIT_NOT_G6,
            format!(
                "input contains {} forbidden 4-/5-cycle(s); run `validate` for the list",
                report.cycles.len()
            ),
        ));
    }
    let d = build_decomposition(&g, start, orientation)?;
    let outcome = color(&g, &d).expect("freshly built decomposition is valid");
    println!("{}", outcome.to_json(trace));
    if outcome.is_success() {
        Ok(EXIT_OK)
    } else {
        Ok(EXIT_COLORING)
    }
}

#[derive(Serialize)]
struct VerifyJson {
    proper: bool,
    violations: Vec<(usize, usize)>,
}

fn cmd_verify(input: &Path, colors_path: &Path) -> CmdResult {
    let g = load_graph(input)?;
    let text = fs::read_to_string(colors_path)
        .map_err(|e| fail(EXIT_MALFORMED, format!("cannot read {}: {e}", colors_path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| fail(EXIT_MALFORMED, format!("malformed JSON in {}: {e}", colors_path.display())))?;
    let ranks = match &value {
        serde_json::Value::Array(items) => items.clone(),
        serde_json::Value::Object(map) => match map.get("colors") {
            Some(serde_json::Value::Array(items)) => items.clone(),
            Some(serde_json::Value::Null) | None => {
                return Err(fail(
                    EXIT_MALFORMED,
                    format!("{} holds no total coloring to verify", colors_path.display()),
                ));
            }
            Some(_) => {
                return Err(fail(
                    EXIT_MALFORMED,
                    format!("\"colors\" in {} is not an array", colors_path.display()),
                ));
            }
        },
        _ => {
            return Err(fail(
                EXIT_MALFORMED,
                format!("{} must be a rank array or an object with a \"colors\" array", colors_path.display()),
            ));
        }
    };
    let mut colors = Vec::with_capacity(ranks.len());
    for (i, item) in ranks.iter().enumerate() {
        let rank = item
            .as_u64()
            .and_then(|r| u8::try_from(r).ok())
            .and_then(Color::from_rank)
            .ok_or_else(|| {
                fail(EXIT_MALFORMED, format!("entry {i} is not a color rank in 1..=3: {item}"))
            })?;
        colors.push(rank);
    }
    let violations = verify_total(&g, &colors)
        .map_err(|e| fail(EXIT_MALFORMED, format!("coloring does not fit the graph: {e}")))?;
    let out = VerifyJson { proper: violations.is_empty(), violations };
    println!("{}", serde_json::to_string(&out).expect("verify report serializes"));
    if out.proper {
        Ok(EXIT_OK)
    } else {
        Ok(EXIT_COLORING)
    }
}

fn cmd_oracle(input: &Path, oracle_budget: u64) -> CmdResult {
    let g = load_graph(input)?;
    let outcome = exact_3color(g.adjacency(), oracle_budget);
    println!("{}", outcome.to_json());
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct ManifestEntry {
    seed: u64,
    file: String,
}

#[derive(Serialize)]
struct ManifestParams {
    n: usize,
    attach_probability: f64,
    seed_start: u64,
    count: u64,
}

#[derive(Serialize)]
struct Manifest {
    generator: &'static str,
    version: &'static str,
    params: ManifestParams,
    instances: Vec<ManifestEntry>,
}

fn cmd_gen(
    gadget: Option<&str>,
    list_gadgets: bool,
    n: usize,
    attach_probability: f64,
    seed: u64,
    count: Option<u64>,
    out_dir: Option<PathBuf>,
) -> CmdResult {
    if list_gadgets {
        for name in gadget_names() {
            println!("{name}");
        }
        return Ok(EXIT_OK);
    }
    if let Some(name) = gadget {
        let inst = gadget_by_name(name).ok_or_else(|| {
            fail(
                EXIT_MALFORMED,
                format!("unknown gadget {name:?}; try --list-gadgets for the catalog"),
            )
        })?;
        println!("{}", inst.to_json());
        return Ok(EXIT_OK);
    }
    if !(0.0..=1.0).contains(&attach_probability) {
        return Err(fail(
            EXIT_MALFORMED,
            format!("attach probability {attach_probability} is outside [0, 1]"),
        ));
    }
    let count = count.unwrap_or(1);
    let gen_one = |s: u64| -> Result<Instance, Failure> {
        gen_random_g6(n, attach_probability, s)
            .map_err(|e| fail(EXIT_MALFORMED, format!("generation failed at seed {s}: {e}")))
    };
    match out_dir {
        None => {
            // Stream to stdout: one JSON line per instance.
            for i in 0..count {
                let inst = gen_one(seed + i)?;
                println!("{}", inst.to_json());
            }
            Ok(EXIT_OK)
        }
        Some(dir) => {
            fs::create_dir_all(&dir).map_err(|e| {
                fail(EXIT_MALFORMED, format!("cannot create {}: {e}", dir.display()))
            })?;
            let mut entries = Vec::with_capacity(count as usize);
            for i in 0..count {
                let s = seed + i;
                let inst = gen_one(s)?;
                let file = format!("instance_{s}.json");
                fs::write(dir.join(&file), format!("{}\n", inst.to_json())).map_err(|e| {
                    fail(EXIT_MALFORMED, format!("cannot write {}: {e}", dir.join(&file).display()))
                })?;
                entries.push(ManifestEntry { seed: s, file });
            }
            let manifest = Manifest {
                generator: "random_g6",
                version: env!("CARGO_PKG_VERSION"),
                params: ManifestParams { n, attach_probability, seed_start: seed, count },
                instances: entries,
            };
            let path = dir.join("manifest.json");
            let body = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
            fs::write(&path, format!("{body}\n"))
                .map_err(|e| fail(EXIT_MALFORMED, format!("cannot write {}: {e}", path.display())))?;
            eprintln!("wrote {count} instance(s) and manifest.json to {}", dir.display());
            Ok(EXIT_OK)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_hunt(
    instances: u64,
    seed_start: u64,
    n_max: usize,
    starts: StartSweep,
    orientations: OrientationSweep,
    oracle_budget: u64,
    workers: usize,
    out: Option<PathBuf>,
) -> CmdResult {
    if n_max < 6 {
        return Err(fail(EXIT_MALFORMED, format!("--n-max must be at least 6, got {n_max}")));
    }
    let cfg = hunt::HuntConfig {
        instances,
        seed_start,
        n_max,
        sweep_all_starts: matches!(starts, StartSweep::All),
        orientations: match orientations {
            OrientationSweep::Cw => vec![Orientation::Clockwise],
            OrientationSweep::Ccw => vec![Orientation::Counterclockwise],
            OrientationSweep::Both => Orientation::BOTH.to_vec(),
        },
        oracle_budget,
        workers,
    };
    let summary = match out {
        Some(path) => {
            let file = fs::File::create(&path).map_err(|e| {
                fail(EXIT_MALFORMED, format!("cannot create {}: {e}", path.display()))
            })?;
            let mut writer = BufWriter::new(file);
            hunt::run_hunt(&cfg, &mut writer)
                .map_err(|e| fail(EXIT_MALFORMED, format!("hunt failed: {e}")))?
        }
        None => {
            let stdout = std::io::stdout();
            let mut writer = BufWriter::new(stdout.lock());
            hunt::run_hunt(&cfg, &mut writer)
                .map_err(|e| fail(EXIT_MALFORMED, format!("hunt failed: {e}")))?
        }
    };
    eprintln!("{}", serde_json::to_string(&summary).expect("summary serializes"));
    Ok(EXIT_OK)
}

fn cmd_bench(
    sizes: &[usize],
    reps: usize,
    seed: u64,
    attach_probability: f64,
    format: OutputFormat,
) -> CmdResult {
    let report = bench::run_bench(sizes, reps, seed, attach_probability)
        .map_err(|e| fail(EXIT_MALFORMED, e.to_string()))?;
    match format {
        OutputFormat::Json => {
            println!("{}", serde_json::to_string(&report).expect("bench report serializes"));
        }
        OutputFormat::Human => {
            for p in &report.points {
                println!(
                    "n={:<8} best {:.6}s   worst {:.6}s   outcome: {}   ({} reps)",
                    p.n, p.seconds, p.max_seconds, p.status, reps.max(1)
                );
            }
            match report.exponent {
                Some(x) => println!("fitted log-log exponent: {x:.3}"),
                None => println!("fitted log-log exponent: n/a (need at least two sizes)"),
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_export_dot(
    input: &Path,
    start: Option<usize>,
    orientation: Orientation,
    chains_only: bool,
) -> CmdResult {
    let g = load_graph(input)?;
    let d = build_decomposition(&g, start, orientation)?;
    if chains_only {
        print!("{}", dot::to_dot(&g, &d, None));
        return Ok(EXIT_OK);
    }
    let outcome = color(&g, &d).expect("freshly built decomposition is valid");
    match outcome {
        ColoringOutcome::Success { colors, .. } => {
            print!("{}", dot::to_dot(&g, &d, Some(&colors)));
            Ok(EXIT_OK)
        }
        ColoringOutcome::Failure { certificate, .. } => Err(fail(
            EXIT_COLORING,
            format!(
                "coloring failed at vertex {}; re-run with --chains-only for an uncolored export",
                certificate.blocked
            ),
        )),
    }
}
