//! The `brmatch` command line.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::CutLine;
use crate::hamsandwich::{find_ham_sandwich_cut, ham_sandwich_matching, side_counts, CutTree};
use crate::instance::{format_point_set, parse_matching, parse_point_set, random_point_set};
use crate::matching::{crossing_count, verify_transformation, BRMatching, Edge, PointSet, TransformationSequence};
use crate::oracle::{build_transformation_graph, distance_and_diameter, lower_bound_instance, DEFAULT_LIMIT};
use crate::svg;
use crate::transform::{eliminate_traced, ReductionReport, TransformOptions, TransformPlanner, Trace};

#[derive(Parser, Debug)]
#[command(name = "brmatch", version, about = "Transformations between bichromatic plane matchings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Output {
    /// Write the JSON report here instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Write SVG renderings into this directory.
    #[arg(long, value_name = "DIR")]
    pub svg: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Ham-sandwich cut of a point set.
    HsCut {
        points: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Ham-sandwich matching and its cut tree.
    HsMatching {
        points: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Transformation between two matchings.
    Transform {
        points: PathBuf,
        from: PathBuf,
        to: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Remove all crossings of a matching with the ham-sandwich cut.
    Eliminate {
        points: PathBuf,
        matching: PathBuf,
        /// Include a dump of every subdivision in the report.
        #[arg(long)]
        dumps: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Enumerate all matchings and measure the transformation graph.
    Oracle {
        points: PathBuf,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: usize,
        /// Also write the graph as an adjacency list.
        #[arg(long, value_name = "PATH")]
        adjacency: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Generate a point set.
    Gen {
        /// Number of points of each color.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Coordinates are drawn from [-range, range].
        #[arg(long, default_value_t = 100)]
        range: i64,
        /// Emit the convex alternating instance used for lower bounds.
        #[arg(long)]
        lower_bound: bool,
        /// Write the point file here instead of standard output.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    })
}

fn read_points(path: &Path) -> Result<PointSet> {
    parse_point_set(&read(path)?)
}

fn emit(out: &Output, report: &impl Serialize) -> Result<String> {
    let mut text = serde_json::to_string_pretty(report).expect("reports serialize");
    text.push('\n');
    match &out.json {
        Some(p) => {
            fs::write(p, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn write_svgs(out: &Output, points: &PointSet, frames: &[(String, &BRMatching, Option<&CutLine>)]) -> Result<()> {
    let Some(dir) = &out.svg else { return Ok(()) };
    fs::create_dir_all(dir)?;
    for (name, m, cut) in frames {
        fs::write(dir.join(format!("{name}.svg")), svg::render(points, m, *cut, name))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct Side {
    blue: usize,
    red: usize,
}

#[derive(Serialize)]
struct CutReport {
    cut: CutLine,
    left: Side,
    right: Side,
}

#[derive(Serialize)]
struct HsReport<'a> {
    matching: &'a BRMatching,
    depth: usize,
    cuts: Vec<&'a CutLine>,
    tree: &'a CutTree,
}

#[derive(Serialize)]
struct SequenceReport {
    n: usize,
    length: usize,
    bound: usize,
    verify: bool,
    steps: Vec<Vec<Edge>>,
    /// Crossings of each step with the root ham-sandwich cut.
    crossings: Vec<usize>,
    root_cut: CutLine,
}

#[derive(Serialize)]
struct EliminateReport {
    n: usize,
    cut: CutLine,
    length: usize,
    bound: usize,
    verify: bool,
    steps: Vec<Vec<Edge>>,
    crossings: Vec<usize>,
    reductions: Vec<ReductionReport>,
}

#[derive(Serialize)]
struct OracleReport {
    n: usize,
    matchings: usize,
    compatible_pairs: usize,
    diameter: usize,
    bound: usize,
    matching_list: Vec<Vec<Edge>>,
    adjacency: Vec<Vec<usize>>,
    /// Pairs where the algorithm's length is at least the distance.
    pairs_checked: usize,
    algorithm_at_least_distance: bool,
    longest_algorithm_sequence: usize,
}

fn sequence_parts(points: &PointSet, seq: &TransformationSequence, cut: &CutLine) -> (Vec<Vec<Edge>>, Vec<usize>) {
    let steps = seq.steps().iter().map(|m| m.edges().to_vec()).collect();
    let crossings = seq.steps().iter().map(|m| crossing_count(points, m, cut)).collect();
    (steps, crossings)
}

/// Runs one command; returns what goes to standard output.
pub fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::HsCut { points, out } => {
            let p = read_points(&points)?;
            let cut = find_ham_sandwich_cut(&p)?;
            let c = side_counts(&p, &p.ids(), &cut);
            let report = CutReport {
                left: Side {
                    blue: c.left_blue,
                    red: c.left_red,
                },
                right: Side {
                    blue: c.right_blue,
                    red: c.right_red,
                },
                cut,
            };
            write_svgs(&out, &p, &[("hs-cut".into(), &BRMatching::from_edges(vec![]), Some(&report.cut))])?;
            emit(&out, &report)
        }
        Command::HsMatching { points, out } => {
            let p = read_points(&points)?;
            let h = ham_sandwich_matching(&p)?;
            write_svgs(&out, &p, &[("hs-matching".into(), &h.matching, h.tree.cut())])?;
            emit(
                &out,
                &HsReport {
                    matching: &h.matching,
                    depth: h.tree.depth(),
                    cuts: h.tree.cuts(),
                    tree: &h.tree,
                },
            )
        }
        Command::Transform { points, from, to, out } => {
            let p = read_points(&points)?;
            let a = parse_matching(&read(&from)?, &p)?;
            let b = parse_matching(&read(&to)?, &p)?;
            let mut planner = TransformPlanner::new(&p)?;
            let seq = planner.between(&a, &b)?;
            let root = find_root_cut(planner.ham_sandwich().tree.cut(), &p)?;
            let (steps, crossings) = sequence_parts(&p, &seq, &root);
            let frames: Vec<_> = seq
                .steps()
                .iter()
                .enumerate()
                .map(|(i, m)| (format!("step-{i:03}"), m, Some(&root)))
                .collect();
            write_svgs(&out, &p, &frames)?;
            emit(
                &out,
                &SequenceReport {
                    n: p.n(),
                    length: seq.len(),
                    bound: 2 * p.n(),
                    verify: verify_transformation(&p, &seq).ok,
                    steps,
                    crossings,
                    root_cut: root,
                },
            )
        }
        Command::Eliminate {
            points,
            matching,
            dumps,
            out,
        } => {
            let p = read_points(&points)?;
            let m = parse_matching(&read(&matching)?, &p)?;
            let cut = find_ham_sandwich_cut(&p)?;
            let mut trace = Trace::default();
            let opts = TransformOptions {
                verify: true,
                keep_dumps: dumps,
            };
            let seq = eliminate_traced(&p, &m, &cut, opts, &mut trace)?;
            let (steps, crossings) = sequence_parts(&p, &seq, &cut);
            let frames: Vec<_> = seq
                .steps()
                .iter()
                .enumerate()
                .map(|(i, m)| (format!("step-{i:03}"), m, Some(&cut)))
                .collect();
            write_svgs(&out, &p, &frames)?;
            emit(
                &out,
                &EliminateReport {
                    n: p.n(),
                    length: seq.len(),
                    bound: p.n() / 2,
                    verify: verify_transformation(&p, &seq).ok,
                    steps,
                    crossings,
                    reductions: trace.reductions,
                    cut,
                },
            )
        }
        Command::Oracle {
            points,
            limit,
            adjacency,
            out,
        } => {
            if limit == 0 {
                return Err(Error::Validation("--limit must be at least 1".into()));
            }
            let p = read_points(&points)?;
            let g = build_transformation_graph(&p, limit)?;
            let d = distance_and_diameter(&g)?;
            if let Some(path) = adjacency {
                fs::write(path, g.to_adjacency_text())?;
            }
            let mut planner = TransformPlanner::new(&p)?;
            let mut ok = true;
            let mut longest = 0;
            let mut pairs = 0;
            for i in 0..g.len() {
                for j in i + 1..g.len() {
                    let len = planner.between(&g.nodes[i], &g.nodes[j])?.len();
                    ok &= len >= d.dist[i][j];
                    longest = longest.max(len);
                    pairs += 1;
                }
            }
            emit(
                &out,
                &OracleReport {
                    n: p.n(),
                    matchings: g.len(),
                    compatible_pairs: g.edge_count(),
                    diameter: d.diameter,
                    bound: 2 * p.n(),
                    matching_list: g.nodes.iter().map(|m| m.edges().to_vec()).collect(),
                    adjacency: g.adjacency.clone(),
                    pairs_checked: pairs,
                    algorithm_at_least_distance: ok,
                    longest_algorithm_sequence: longest,
                },
            )
        }
        Command::Gen {
            n,
            seed,
            range,
            lower_bound,
            out,
        } => {
            let p = if lower_bound {
                lower_bound_instance(n)?
            } else {
                if range < 1 {
                    return Err(Error::Validation("--range must be positive".into()));
                }
                random_point_set(n, seed, range)?
            };
            let text = format_point_set(&p);
            match out {
                Some(path) => {
                    fs::write(path, &text)?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
    }
}

/// The ham-sandwich cut at the root of the tree; a single pair has none, so
/// fall back to a fresh cut.
fn find_root_cut(root: Option<&CutLine>, p: &PointSet) -> Result<CutLine> {
    match root {
        Some(c) => Ok(c.clone()),
        None => find_ham_sandwich_cut(p),
    }
}

/// Parses arguments, runs, prints; returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
