//! Command-line surface over the library: power constructions, refinement
//! comparisons, exact cospectrality, generators, and the verification
//! harness.
//!
//! Exit codes: 0 when everything passed (or a conditional's hypothesis
//! was not met), 1 when a verification check failed, 2 for usage, format,
//! I/O, or budget errors.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use wlspectra::generators::{self, cfi_pair, cfi_pair_with_twist, random_graph, GeneratorError};
use wlspectra::graph::Graph;
use wlspectra::harness::{
    compare_graphs, least_distinguishing_dimension, verify_entrywise, verify_props,
    verify_theorem1, Budget, HarnessError, Outcome, VerificationReport, DEFAULT_MAX_DIMENSION,
    DEFAULT_SEED, REPORT_SCHEMA,
};
use wlspectra::io::{parse_edge_list, parse_graph6, write_edge_list, write_graph6, FormatError};
use wlspectra::powers::{
    kth_power_with_budget, restricted_power_with_budget, sym_power_with_budget, PowersError,
    DEFAULT_VERTEX_BUDGET,
};
use wlspectra::spectra::{approx_eigenvalues, char_poly, SpectraError};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Harness(#[from] HarnessError),
    #[error(transparent)]
    Powers(#[from] PowersError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Graph6,
    Edgelist,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PowerKind {
    Full,
    Restricted,
    Symmetric,
}

#[derive(Parser)]
#[command(
    name = "wlspectra",
    version,
    about = "Graph powers, higher-dimensional refinement, and exact cospectrality"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by report-producing commands.
#[derive(Args)]
struct ReportArgs {
    /// Report format on stdout (or at --output)
    #[arg(long, value_enum, default_value_t = OutputMode::Json)]
    out: OutputMode,
    /// Write the report to a file instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Vertex/tuple allocation budget
    #[arg(long, default_value_t = DEFAULT_VERTEX_BUDGET)]
    budget_vertices: usize,
    /// Attach wall-clock timings to the report (makes output
    /// non-reproducible byte for byte)
    #[arg(long)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Construct the k-th, restricted k-th, or symmetric k-th power
    Power {
        /// Input graph: a path, `-` for stdin, or `named:<name>`
        #[arg(long)]
        input: String,
        /// Input format (default: detect)
        #[arg(long, value_enum)]
        format: Option<GraphFormat>,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum)]
        kind: PowerKind,
        /// Output file (default: stdout)
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = GraphFormat::Graph6)]
        out_format: GraphFormat,
        #[arg(long, default_value_t = DEFAULT_VERTEX_BUDGET)]
        budget_vertices: usize,
    },
    /// Run the refinement on two graphs and compare round histograms
    Wl {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, value_enum)]
        format: Option<GraphFormat>,
        /// Refinement dimension (tuple length)
        #[arg(long)]
        dim: usize,
        /// Stop after this many rounds even without a verdict
        #[arg(long)]
        max_rounds: Option<usize>,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Decide exact cospectrality of two graphs
    Cospectral {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, value_enum)]
        format: Option<GraphFormat>,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Generate graphs and hard pairs
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Verify the conditional identities on concrete instances
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// A graph from the named corpus
    Named {
        /// complete(n) | cycle(n) | path(n) | star(n) | petersen |
        /// shrikhande | rook4x4 | k4
        #[arg(long)]
        name: String,
        #[arg(long, value_enum, default_value_t = GraphFormat::Graph6)]
        out_format: GraphFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// A plain/twisted gadget pair over a base graph
    Cfi {
        /// Base graph: a path, `-`, or `named:<name>`
        #[arg(long)]
        base: String,
        #[arg(long, value_enum)]
        format: Option<GraphFormat>,
        /// Twist edge `u,v` (default: the smallest base edge)
        #[arg(long)]
        twist_edge: Option<String>,
        #[arg(long, value_enum, default_value_t = GraphFormat::Graph6)]
        out_format: GraphFormat,
        /// Write the plain graph here (default: first stdout line)
        #[arg(long)]
        output_plain: Option<PathBuf>,
        /// Write the twisted graph here (default: second stdout line)
        #[arg(long)]
        output_twisted: Option<PathBuf>,
        /// Write the vertex-map manifest (JSON) to this path, `-` for
        /// stdout
        #[arg(long)]
        manifest: Option<String>,
        /// Also search for the least distinguishing dimension up to this
        /// cap (default cap when the flag is bare) and print the report
        #[arg(long)]
        measure_dimension: Option<Option<usize>>,
        #[arg(long, default_value_t = DEFAULT_VERTEX_BUDGET)]
        budget_vertices: usize,
    },
    /// A seeded uniform random graph
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = GraphFormat::Graph6)]
        out_format: GraphFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Refinement equivalence implies cospectral powers (all three kinds)
    Thm1 {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, value_enum)]
        format: Option<GraphFormat>,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Equal round colors force equal walk counts, entry by entry
    Entrywise {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, value_enum)]
        format: Option<GraphFormat>,
        #[arg(long)]
        k: usize,
        /// Largest walk exponent (default: min(20, 2*diameter*k))
        #[arg(long)]
        max_r: Option<usize>,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Quotient structure: path lifting and both trace formulas
    Props {
        #[arg(long)]
        input: String,
        #[arg(long, value_enum)]
        format: Option<GraphFormat>,
        #[arg(long)]
        k: usize,
        /// Largest walk exponent (default: min(20, 2*diameter*k))
        #[arg(long)]
        max_r: Option<usize>,
        #[command(flatten)]
        report: ReportArgs,
    },
}

#[derive(Serialize)]
struct CospectralReport {
    schema: u32,
    left_vertices: usize,
    right_vertices: usize,
    cospectral: bool,
    left_char_poly: Vec<String>,
    right_char_poly: Vec<String>,
    left_display: String,
    right_display: String,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Power {
            input,
            format,
            k,
            kind,
            output,
            out_format,
            budget_vertices,
        } => {
            if k == 0 {
                return Err(CliError::Usage("k must be at least 1".to_string()));
            }
            let g = load_graph(&input, format)?;
            let result = match kind {
                PowerKind::Full => kth_power_with_budget(&g, k, budget_vertices)?,
                PowerKind::Restricted => restricted_power_with_budget(&g, k, budget_vertices)?,
                PowerKind::Symmetric => sym_power_with_budget(&g, k, budget_vertices)?,
            };
            emit(&render_graph(&result, out_format)?, output.as_deref())?;
            Ok(true)
        }
        Command::Wl {
            left,
            right,
            format,
            dim,
            max_rounds,
            report,
        } => {
            if dim == 0 {
                return Err(CliError::Usage("dimension must be at least 1".to_string()));
            }
            let g = load_graph(&left, format)?;
            let h = load_graph(&right, format)?;
            let cmp = compare_graphs(&g, &h, dim, max_rounds, Budget::new(report.budget_vertices))?;
            let body = match report.out {
                OutputMode::Json => cmp.to_json(),
                OutputMode::Text => render_wl_text(&cmp),
            };
            emit(&body, report.output.as_deref())?;
            Ok(true)
        }
        Command::Cospectral {
            left,
            right,
            format,
            report,
        } => {
            let g = load_graph(&left, format)?;
            let h = load_graph(&right, format)?;
            let cp_g = char_poly(&g)?;
            let cp_h = char_poly(&h)?;
            let verdict = g.vertex_count() == h.vertex_count() && cp_g == cp_h;
            let summary = CospectralReport {
                schema: REPORT_SCHEMA,
                left_vertices: g.vertex_count(),
                right_vertices: h.vertex_count(),
                cospectral: verdict,
                left_char_poly: cp_g.coeffs().iter().map(|c| c.to_string()).collect(),
                right_char_poly: cp_h.coeffs().iter().map(|c| c.to_string()).collect(),
                left_display: cp_g.to_string(),
                right_display: cp_h.to_string(),
            };
            let body = match report.out {
                OutputMode::Json => {
                    let mut s = serde_json::to_string_pretty(&summary).expect("serializes");
                    s.push('\n');
                    s
                }
                OutputMode::Text => {
                    format!(
                        "cospectral: {}\nleft:  {}\nright: {}\napproximate spectra (floating point, never used for the decision):\n  left:  {:?}\n  right: {:?}\n",
                        verdict,
                        summary.left_display,
                        summary.right_display,
                        approx_eigenvalues(&g),
                        approx_eigenvalues(&h)
                    )
                }
            };
            emit(&body, report.output.as_deref())?;
            Ok(true)
        }
        Command::Gen { what } => run_gen(what),
        Command::Verify { what } => run_verify(what),
    }
}

fn run_gen(cmd: GenCommand) -> Result<bool, CliError> {
    match cmd {
        GenCommand::Named {
            name,
            out_format,
            output,
        } => {
            let g = generators::named(&name)?;
            emit(&render_graph(&g, out_format)?, output.as_deref())?;
            Ok(true)
        }
        GenCommand::Random {
            n,
            p,
            seed,
            out_format,
            output,
        } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(CliError::Usage(format!("p must be in [0,1], got {p}")));
            }
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
            let g = random_graph(n, p, &mut rng);
            emit(&render_graph(&g, out_format)?, output.as_deref())?;
            Ok(true)
        }
        GenCommand::Cfi {
            base,
            format,
            twist_edge,
            out_format,
            output_plain,
            output_twisted,
            manifest,
            measure_dimension,
            budget_vertices,
        } => {
            let base_graph = load_graph(&base, format)?;
            let pair = match twist_edge {
                Some(arg) => {
                    let (u, v) = parse_edge_arg(&arg)?;
                    cfi_pair_with_twist(&base_graph, (u, v))?
                }
                None => cfi_pair(&base_graph)?,
            };
            let plain = render_graph(&pair.plain, out_format)?;
            let twisted = render_graph(&pair.twisted, out_format)?;
            match output_plain.as_deref() {
                Some(path) => std::fs::write(path, &plain)?,
                None => print!("{plain}"),
            }
            match output_twisted.as_deref() {
                Some(path) => std::fs::write(path, &twisted)?,
                None => print!("{twisted}"),
            }
            if let Some(dest) = manifest {
                let mut body =
                    serde_json::to_string_pretty(&pair.manifest()).expect("manifest serializes");
                body.push('\n');
                if dest == "-" {
                    print!("{body}");
                } else {
                    std::fs::write(dest, body)?;
                }
            }
            if let Some(cap) = measure_dimension {
                let cap = cap.unwrap_or(DEFAULT_MAX_DIMENSION);
                let report = least_distinguishing_dimension(
                    &pair.plain,
                    &pair.twisted,
                    cap,
                    Budget::new(budget_vertices),
                )?;
                print!("{}", report.to_json());
            }
            Ok(true)
        }
    }
}

fn run_verify(cmd: VerifyCommand) -> Result<bool, CliError> {
    let started = Instant::now();
    let (mut report, args) = match cmd {
        VerifyCommand::Thm1 {
            left,
            right,
            format,
            k,
            report,
        } => {
            if k == 0 {
                return Err(CliError::Usage("k must be at least 1".to_string()));
            }
            let g = load_graph(&left, format)?;
            let h = load_graph(&right, format)?;
            (
                verify_theorem1(&g, &h, k, Budget::new(report.budget_vertices))?,
                report,
            )
        }
        VerifyCommand::Entrywise {
            left,
            right,
            format,
            k,
            max_r,
            report,
        } => {
            if k == 0 || max_r == Some(0) {
                return Err(CliError::Usage("k and max-r must be at least 1".to_string()));
            }
            let g = load_graph(&left, format)?;
            let h = load_graph(&right, format)?;
            let max_r = max_r.unwrap_or_else(|| default_exponent_range(&g, k));
            (
                verify_entrywise(&g, &h, k, max_r, Budget::new(report.budget_vertices))?,
                report,
            )
        }
        VerifyCommand::Props {
            input,
            format,
            k,
            max_r,
            report,
        } => {
            if k == 0 || max_r == Some(0) {
                return Err(CliError::Usage("k and max-r must be at least 1".to_string()));
            }
            let g = load_graph(&input, format)?;
            let max_r = max_r.unwrap_or_else(|| default_exponent_range(&g, k));
            (
                verify_props(&g, k, max_r, Budget::new(report.budget_vertices))?,
                report,
            )
        }
    };
    if args.timings {
        let mut timings = BTreeMap::new();
        timings.insert("total_s".to_string(), started.elapsed().as_secs_f64());
        report.timings = Some(timings);
    }
    let body = match args.out {
        OutputMode::Json => report.to_json(),
        OutputMode::Text => render_report_text(&report),
    };
    emit(&body, args.output.as_deref())?;
    Ok(report.pass)
}

/// Default exponent range for trace verifications: twice the base
/// diameter per walked coordinate, capped at 20.
fn default_exponent_range(g: &Graph, k: usize) -> usize {
    (2 * g.diameter() * k).clamp(1, 20)
}

/// Loads a graph argument: `named:<name>`, `-` for stdin, or a file path.
/// Without an explicit format, a leading digit means edge-list text and
/// anything else is graph6 (digits sit below the graph6 byte range).
fn load_graph(arg: &str, format: Option<GraphFormat>) -> Result<Graph, CliError> {
    if let Some(name) = arg.strip_prefix("named:") {
        return Ok(generators::named(name)?);
    }
    let text = if arg == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        std::fs::read_to_string(arg)?
    };
    let format = format.unwrap_or_else(|| match text.trim_start().bytes().next() {
        Some(b) if b.is_ascii_digit() => GraphFormat::Edgelist,
        _ => GraphFormat::Graph6,
    });
    let graph = match format {
        GraphFormat::Graph6 => parse_graph6(&text)?,
        GraphFormat::Edgelist => parse_edge_list(&text)?,
    };
    Ok(graph)
}

fn render_graph(g: &Graph, format: GraphFormat) -> Result<String, CliError> {
    Ok(match format {
        GraphFormat::Graph6 => {
            let mut s = write_graph6(g)?;
            s.push('\n');
            s
        }
        GraphFormat::Edgelist => write_edge_list(g),
    })
}

fn parse_edge_arg(arg: &str) -> Result<(usize, usize), CliError> {
    let err = || CliError::Usage(format!("twist edge must look like `u,v`, got {arg:?}"));
    let (u, v) = arg.split_once(',').ok_or_else(err)?;
    Ok((
        u.trim().parse().map_err(|_| err())?,
        v.trim().parse().map_err(|_| err())?,
    ))
}

fn emit(body: &str, output: Option<&std::path::Path>) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, body)?,
        None => print!("{body}"),
    }
    Ok(())
}

fn render_wl_text(report: &wlspectra::harness::WlComparisonReport) -> String {
    let mut s = format!(
        "dimension {} on graphs with {} / {} vertices\n",
        report.dimension, report.left_vertices, report.right_vertices
    );
    for round in &report.rounds {
        s.push_str(&format!(
            "round {:>3}: classes {:>6} / {:>6} (joint {:>6})  histograms {}\n",
            round.round,
            round.left_classes,
            round.right_classes,
            round.joint_classes,
            if round.histograms_match {
                "match"
            } else {
                "DIFFER"
            }
        ));
    }
    match report.first_difference {
        Some(r) => s.push_str(&format!("distinguished at round {r}\n")),
        None if report.distinguished => s.push_str("distinguished (different orders)\n"),
        None => s.push_str(&format!(
            "not distinguished; stable from round {}\n",
            report.stable_round.unwrap_or(0)
        )),
    }
    s
}

fn render_report_text(report: &VerificationReport) -> String {
    let mut s = format!("{}\n", report.instance);
    for check in &report.checks {
        let tag = match check.outcome {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::HypothesisNotMet => "HYPOTHESIS-NOT-MET",
            Outcome::Skipped => "SKIPPED",
        };
        s.push_str(&format!("  [{tag}] {:?} {}", check.claim, check.name));
        if let Some(detail) = &check.detail {
            s.push_str(&format!("  ({detail})"));
        }
        s.push('\n');
    }
    s.push_str(&format!(
        "overall: {}\n",
        if report.pass { "PASS" } else { "FAIL" }
    ));
    s
}
