//! Subcommand implementations. Each returns an exit status; output goes to
//! the supplied writer so tests can capture it.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use rainbow_cactus::generator::{generate, GenSpec};
use rainbow_cactus::invariants::{check_seed, SeedFailure};
use rainbow_cactus::oracle::{
    brute_force_src, verify_strong_rainbow, OracleError, DEFAULT_MAX_EDGES,
};
use rainbow_cactus::report::{
    coloring_from_map, palette_from_env, render_dot, AnalysisReport, ColorMap, ColoringReport,
};
use rainbow_cactus::solver::{strong_rainbow_coloring, SolveError, SrcResult};
use rainbow_cactus::{
    build_graph, parse_edge_list, src_formula, Analysis, EdgeColoring, Graph, Solver,
    SolverRegistry,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_REJECTED: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "rainbow-cactus",
    version,
    about = "Strong rainbow connection of odd cactus graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decompose a graph and report its structure and src as JSON.
    Analyze {
        path: PathBuf,
        /// Include segments and the black-white partition.
        #[arg(long)]
        full: bool,
    },
    /// Compute an optimal strong rainbow coloring.
    Color {
        path: PathBuf,
        /// Emit Graphviz DOT.
        #[arg(long)]
        dot: bool,
        /// Emit JSON (the default when --dot is absent).
        #[arg(long)]
        json: bool,
        /// Solver to use; see `solvers`.
        #[arg(long, default_value = "segment-coloring")]
        solver: String,
    },
    /// Check that a coloring strongly rainbow connects a graph.
    Verify { graph: PathBuf, coloring: PathBuf },
    /// Exhaustive src on a small graph, compared with the closed form.
    Oracle {
        path: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_EDGES)]
        max_edges: usize,
    },
    /// Print a random odd cactus as an edge list.
    Generate(GenerateArgs),
    /// Run the invariant suite over generated instances.
    Selftest {
        #[arg(long, default_value_t = 200)]
        seeds: u64,
        #[arg(long, default_value_t = 30)]
        max_n: usize,
        #[arg(long, default_value = "segment-coloring")]
        solver: String,
    },
    /// List registered solvers.
    Solvers,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub vertices: usize,
    /// Comma-separated odd cycle lengths.
    #[arg(long, value_delimiter = ',', default_value = "3,5,7")]
    pub cycles: Vec<usize>,
    #[arg(long, default_value_t = 0.3)]
    pub pendant_prob: f64,
}

pub fn load_graph(path: &Path) -> Result<Graph> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let pairs = parse_edge_list(&text).with_context(|| format!("{}", path.display()))?;
    build_graph(&pairs).with_context(|| format!("{}", path.display()))
}

fn json_line(out: &mut dyn Write, value: &impl serde::Serialize) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let registry = SolverRegistry::with_builtins();
    match cli.command {
        Command::Analyze { path, full } => analyze(&path, full, out),
        Command::Color {
            path,
            dot,
            json,
            solver,
        } => {
            let solver = lookup(&registry, &solver)?;
            color(&path, dot, json, solver, out)
        }
        Command::Verify { graph, coloring } => verify(&graph, &coloring, out),
        Command::Oracle { path, max_edges } => oracle(&path, max_edges, out),
        Command::Generate(args) => {
            let g = generate(&GenSpec {
                seed: args.seed,
                target_vertices: args.vertices,
                cycle_lengths: args.cycles,
                pendant_probability: args.pendant_prob,
            })?;
            write!(out, "{g}")?;
            Ok(EXIT_OK)
        }
        Command::Selftest {
            seeds,
            max_n,
            solver,
        } => {
            let solver = lookup(&registry, &solver)?;
            selftest(seeds, max_n, solver, out)
        }
        Command::Solvers => {
            for s in registry.iter() {
                writeln!(out, "{:<22} {}", s.name(), s.summary())?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn lookup<'a>(registry: &'a SolverRegistry, name: &str) -> Result<&'a dyn Solver> {
    registry.get(name).ok_or_else(|| {
        anyhow!(
            "unknown solver {name:?}; known: {}",
            registry.names().join(", ")
        )
    })
}

pub fn analyze(path: &Path, full: bool, out: &mut dyn Write) -> Result<i32> {
    let an = Analysis::new(load_graph(path)?);
    json_line(out, &AnalysisReport::new(&an, full, None))?;
    Ok(if an.classification.is_odd_cactus() {
        EXIT_OK
    } else {
        EXIT_REJECTED
    })
}

pub fn color(
    path: &Path,
    dot: bool,
    json: bool,
    solver: &dyn Solver,
    out: &mut dyn Write,
) -> Result<i32> {
    let an = Analysis::new(load_graph(path)?);
    let base = match strong_rainbow_coloring(&an) {
        Ok(res) => res,
        Err(SolveError::NotOddCactus(r)) => {
            eprintln!("rejected: {r:?}");
            return Ok(EXIT_REJECTED);
        }
        Err(e) => return Err(e.into()),
    };
    let res = if solver.name() == "segment-coloring" {
        base
    } else {
        let sol = solver.solve(&an)?;
        let coloring = sol
            .coloring
            .ok_or_else(|| anyhow!("solver {} does not produce a coloring", solver.name()))?;
        SrcResult {
            src: sol.src,
            coloring,
            ..base
        }
    };
    if json || !dot {
        json_line(out, &ColoringReport::new(&an.graph, &res))?;
    }
    if dot {
        write!(
            out,
            "{}",
            render_dot(&an.graph, &res.coloring, &palette_from_env())
        )?;
    }
    Ok(EXIT_OK)
}

/// Accepts either a full `color` report or a bare `{"u,v": color}` map.
pub fn load_coloring(g: &Graph, path: &Path) -> Result<EdgeColoring> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("{} is not JSON", path.display()))?;
    let map_value = match value.get("coloring") {
        Some(inner) if inner.is_object() => inner.clone(),
        _ => value,
    };
    let map: ColorMap = serde_json::from_value(map_value)
        .with_context(|| format!("{} is not an edge-to-color map", path.display()))?;
    if map.len() != g.edge_count() {
        bail!(
            "coloring has {} edges, graph has {}",
            map.len(),
            g.edge_count()
        );
    }
    let colors = coloring_from_map(g, &map).map_err(|e| anyhow!(e))?;
    EdgeColoring::from_colors(colors).map_err(|e| anyhow!("invalid coloring: {e}"))
}

pub fn verify(graph: &Path, coloring: &Path, out: &mut dyn Write) -> Result<i32> {
    let an = Analysis::new(load_graph(graph)?);
    let c = load_coloring(&an.graph, coloring)?;
    let outcome = verify_strong_rainbow(&an.graph, &c, an.classification.is_odd_cactus())?;
    match outcome.witness {
        None => {
            writeln!(out, "OK k={}", c.k())?;
            Ok(EXIT_OK)
        }
        Some(w) => {
            let g = &an.graph;
            let path: Vec<String> = w
                .path
                .vertices
                .iter()
                .map(|&v| g.label(v).to_string())
                .collect();
            writeln!(
                out,
                "FAIL pair={},{} path={} repeated_color={}",
                g.label(w.u),
                g.label(w.v),
                path.join("-"),
                w.repeated_color
            )?;
            Ok(EXIT_VERIFY)
        }
    }
}

#[derive(Debug, serde::Serialize)]
struct OracleSummary {
    src_bruteforce: usize,
    colorings_checked: u64,
}

pub fn oracle(path: &Path, max_edges: usize, out: &mut dyn Write) -> Result<i32> {
    let an = Analysis::new(load_graph(path)?);
    let found = match brute_force_src(&an.graph, max_edges) {
        Ok(f) => f,
        Err(e @ OracleError::TooLarge { .. }) => bail!("{e}; raise --max-edges to override"),
        Err(e) => return Err(e.into()),
    };
    let formula = src_formula(&an).ok();
    let verdict = match formula {
        Some(f) if f == found.src => format!("formula={f} AGREE"),
        Some(f) => format!("formula={f} DISAGREE"),
        None => "formula=N/A (rejected)".to_string(),
    };
    writeln!(out, "bruteforce={} {verdict}", found.src)?;
    let summary = OracleSummary {
        src_bruteforce: found.src,
        colorings_checked: found.colorings_checked,
    };
    writeln!(out, "{}", serde_json::to_string(&summary)?)?;
    Ok(match formula {
        Some(f) if f != found.src => EXIT_VERIFY,
        _ => EXIT_OK,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelftestOutcome {
    pub instances: u64,
    /// Sorted by seed.
    pub failures: Vec<SeedFailure>,
}

/// Seeds `0..seeds`, checked concurrently, reported in seed order.
pub fn run_selftest(seeds: u64, max_n: usize, solver: &dyn Solver) -> SelftestOutcome {
    let mut failures: Vec<SeedFailure> = (0..seeds)
        .into_par_iter()
        .filter_map(|seed| check_seed(seed, max_n, solver).err())
        .collect();
    failures.sort_by_key(|f| f.seed);
    SelftestOutcome {
        instances: seeds,
        failures,
    }
}

pub fn selftest(seeds: u64, max_n: usize, solver: &dyn Solver, out: &mut dyn Write) -> Result<i32> {
    if max_n < 2 {
        bail!("--max-n must be at least 2");
    }
    if seeds == 0 {
        eprintln!("warning: no instances tested");
        writeln!(out, "selftest: 0 instances")?;
        return Ok(EXIT_OK);
    }
    let outcome = run_selftest(seeds, max_n, solver);
    match outcome.failures.first() {
        None => {
            writeln!(
                out,
                "selftest: {} instances, all invariants hold",
                outcome.instances
            )?;
            Ok(EXIT_OK)
        }
        Some(f) => {
            writeln!(
                out,
                "selftest: {} of {} instances failed; first seed={} invariant={}",
                outcome.failures.len(),
                outcome.instances,
                f.seed,
                f.failure.invariant
            )?;
            writeln!(out, "  {}", f.failure.detail)?;
            Ok(EXIT_VERIFY)
        }
    }
}
