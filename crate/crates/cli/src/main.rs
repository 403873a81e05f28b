use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use incidence_centrality::centrality::{
    analyze, hypergraph_centralities_with, vertex_centrality, Aggregation, AnalysisConfig,
    CentralityReport,
};
use incidence_centrality::error::{
    CentralityError, ExperimentError, GraphError, IoError, OracleError, SpectralError,
};
use incidence_centrality::experiments::{
    generate_cycle, generate_er, generate_grid_motif, generate_path, load_karate, run_equivalence,
    run_grid_experiment_with, ExperimentResult, GraphSource,
};
use incidence_centrality::io::{
    edge_csv, read_edgelist, read_hyperedgelist, report_to_dot, report_to_json, vertex_csv,
    write_output, VertexNaming,
};
use incidence_centrality::oracles::{
    check_resistance_sum_identity, current_flow_closeness, effective_resistance, ResistanceMatrix,
};
use incidence_centrality::spectral::{
    compact_svd, IdentityLike, RegularizationConfig, RegularizationMode,
};
use incidence_centrality::{build_incidence, DirectedGraph};
use log::{debug, info};

const EXIT_IO: u8 = 3;
const EXIT_GRAPH: u8 = 4;
const EXIT_SPECTRAL: u8 = 5;
const EXIT_CENTRALITY: u8 = 6;
const EXIT_ORACLE: u8 = 7;
const EXIT_EXPERIMENT: u8 = 8;
const EXIT_CHECK_FAILED: u8 = 9;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Edgelist,
    Hyperedgelist,
}

#[derive(Debug, Clone, Copy, PartialEq, ValueEnum)]
enum Mode {
    /// Vertex, edge and (with --alpha) hub/authority scores.
    Centrality,
    /// Vertex and hyperedge scores from a hyperedge list.
    Hypergraph,
    /// Correlate normalized vertex scores with current-flow closeness.
    Equivalence,
    /// Planted hub/authority recovery on the built-in 4x4 grid.
    Grid,
    /// Compare SVD quantities against dense pseudoinverse oracles.
    OracleCheck,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RegMode {
    Matrix,
    Tikhonov,
    None,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Shape {
    Aligned,
    Diagonal,
}

#[derive(Debug, Clone, Copy, PartialEq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Naming {
    Auto,
    Index,
    Label,
}

/// Spectral centralities from the SVD of incidence matrices.
#[derive(Debug, Parser)]
#[command(name = "svdcent", version)]
struct Args {
    /// Input file, or a built-in graph: karate, grid, path:N, cycle:N, er:N:P:SEED.
    #[arg(short, long, default_value = "karate")]
    input: String,

    #[arg(long, value_enum, default_value_t = Format::Edgelist)]
    format: Format,

    /// How vertex tokens in the input file are read.
    #[arg(long, value_enum, default_value_t = Naming::Auto)]
    vertex_names: Naming,

    #[arg(short, long, value_enum, default_value_t = Mode::Centrality)]
    mode: Mode,

    #[arg(long, default_value_t = 0.99)]
    lambda: f64,

    #[arg(long, default_value_t = 1e-8)]
    tau: f64,

    /// Weight of the vertex score in hub/authority blending; omitted means no
    /// hub/authority scores.
    #[arg(long)]
    alpha: Option<f64>,

    /// Keep only the top k singular triplets.
    #[arg(long)]
    rank_k: Option<usize>,

    #[arg(long, value_enum, default_value_t = RegMode::Matrix)]
    reg_mode: RegMode,

    #[arg(long, value_enum, default_value_t = Shape::Aligned)]
    identity_like: Shape,

    /// Blend raw centralities instead of normalized scores into hub/authority.
    #[arg(long)]
    raw_aggregation: bool,

    /// Output file (stdout if omitted). CSV output to a file also writes the
    /// edge table next to it as `<stem>_edges.csv`.
    #[arg(short, long)]
    output: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    output_format: OutputFormat,
}

#[derive(Debug)]
enum CliError {
    Io(IoError),
    Graph(GraphError),
    Spectral(SpectralError),
    Centrality(CentralityError),
    Oracle(OracleError),
    Experiment(ExperimentError),
    Usage(String),
    CheckFailed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(IoError::Graph { .. }) => EXIT_GRAPH,
            CliError::Io(_) => EXIT_IO,
            CliError::Graph(_) => EXIT_GRAPH,
            CliError::Spectral(_) => EXIT_SPECTRAL,
            CliError::Centrality(_) => EXIT_CENTRALITY,
            CliError::Oracle(_) => EXIT_ORACLE,
            CliError::Experiment(_) => EXIT_EXPERIMENT,
            CliError::Usage(_) => 2,
            CliError::CheckFailed(_) => EXIT_CHECK_FAILED,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(e @ IoError::Graph { .. }) => write!(f, "graph: {e}"),
            CliError::Io(e) => write!(f, "input/output: {e}"),
            CliError::Graph(e) => write!(f, "graph: {e}"),
            CliError::Spectral(e) => write!(f, "spectral: {e}"),
            CliError::Centrality(e) => write!(f, "centrality: {e}"),
            CliError::Oracle(e) => write!(f, "oracle: {e}"),
            CliError::Experiment(e) => write!(f, "experiment: {e}"),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::CheckFailed(m) => write!(f, "oracle check failed: {m}"),
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        CliError::Io(e)
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Graph(e)
    }
}

impl From<SpectralError> for CliError {
    fn from(e: SpectralError) -> Self {
        CliError::Spectral(e)
    }
}

impl From<CentralityError> for CliError {
    fn from(e: CentralityError) -> Self {
        match e {
            CentralityError::Spectral(s) => CliError::Spectral(s),
            other => CliError::Centrality(other),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::Oracle(e)
    }
}

impl From<ExperimentError> for CliError {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::Graph(g) => CliError::Graph(g),
            ExperimentError::Spectral(s) => CliError::Spectral(s),
            ExperimentError::Centrality(c) => c.into(),
            ExperimentError::Oracle(o) => CliError::Oracle(o),
            other => CliError::Experiment(other),
        }
    }
}

fn regularization(args: &Args) -> Result<RegularizationConfig, CliError> {
    let cfg = RegularizationConfig {
        mode: match args.reg_mode {
            RegMode::Matrix => RegularizationMode::MatrixLevel,
            RegMode::Tikhonov => RegularizationMode::Tikhonov,
            RegMode::None => RegularizationMode::None,
        },
        lambda: args.lambda,
        tau: args.tau,
        identity_like: match args.identity_like {
            Shape::Aligned => IdentityLike::Aligned,
            Shape::Diagonal => IdentityLike::Diagonal,
        },
    };
    cfg.validate()?;
    Ok(cfg)
}

fn naming(args: &Args) -> VertexNaming {
    match args.vertex_names {
        Naming::Auto => VertexNaming::Auto,
        Naming::Index => VertexNaming::Index,
        Naming::Label => VertexNaming::Label,
    }
}

fn parse_builtin(name: &str) -> Result<Option<GraphSource>, CliError> {
    let parts: Vec<&str> = name.split(':').collect();
    let bad = || CliError::Usage(format!("malformed built-in graph `{name}`"));
    let source = match parts.as_slice() {
        ["karate"] => GraphSource::Karate,
        ["grid"] => GraphSource::GridMotif,
        ["path", n] => GraphSource::Path { n: n.parse().map_err(|_| bad())? },
        ["cycle", n] => GraphSource::Cycle { n: n.parse().map_err(|_| bad())? },
        ["er", n, p, seed] => GraphSource::ErdosRenyi {
            n: n.parse().map_err(|_| bad())?,
            p: p.parse().map_err(|_| bad())?,
            seed: seed.parse().map_err(|_| bad())?,
        },
        ["path" | "cycle" | "er", ..] => return Err(bad()),
        _ => return Ok(None),
    };
    Ok(Some(source))
}

/// Resolves `--input` to a graph, preferring an existing file over a built-in name.
fn load_graph(args: &Args) -> Result<(DirectedGraph, GraphSource), CliError> {
    let path = Path::new(&args.input);
    if !path.exists() {
        if let Some(source) = parse_builtin(&args.input)? {
            info!("using built-in graph {source:?}");
            let g = match &source {
                GraphSource::Karate => load_karate(),
                GraphSource::GridMotif => generate_grid_motif(),
                GraphSource::Path { n } => generate_path(*n)?,
                GraphSource::Cycle { n } => generate_cycle(*n)?,
                GraphSource::ErdosRenyi { n, p, seed } => generate_er(*n, *p, *seed)?,
                GraphSource::Custom { .. } => unreachable!(),
            };
            return Ok((g, source));
        }
    }
    let g = read_edgelist(path, naming(args))?;
    info!("read {} vertices, {} edges from {}", g.vertex_count(), g.edge_count(), path.display());
    Ok((g, GraphSource::Custom { description: args.input.clone() }))
}

fn emit_report(args: &Args, report: &CentralityReport) -> Result<(), CliError> {
    match args.output_format {
        OutputFormat::Json => write_output(args.output.as_deref(), &(report_to_json(report)? + "\n"))?,
        OutputFormat::Dot => write_output(args.output.as_deref(), &report_to_dot(report))?,
        OutputFormat::Csv => match &args.output {
            Some(path) => {
                write_output(Some(path), &vertex_csv(report))?;
                let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                let edges = path.with_file_name(format!("{stem}_edges.csv"));
                write_output(Some(&edges), &edge_csv(report))?;
            }
            None => write_output(None, &format!("{}\n{}", vertex_csv(report), edge_csv(report)))?,
        },
    }
    Ok(())
}

fn emit_experiment(args: &Args, result: &ExperimentResult) -> Result<(), CliError> {
    if args.output_format != OutputFormat::Json {
        return Err(CliError::Usage("experiment modes only support --output-format json".into()));
    }
    let text = serde_json::to_string_pretty(result).map_err(IoError::from)?;
    write_output(args.output.as_deref(), &(text + "\n"))?;
    Ok(())
}

fn run_centrality(args: &Args) -> Result<(), CliError> {
    let (g, _) = load_graph(args)?;
    let cfg = AnalysisConfig {
        regularization: regularization(args)?,
        alpha: args.alpha,
        truncation: args.rank_k,
        aggregation: if args.raw_aggregation { Aggregation::Raw } else { Aggregation::Normalized },
        rank_tol: None,
    };
    let report = analyze(&g, &cfg)?;
    debug!("numerical rank {}", report.params.numerical_rank);
    emit_report(args, &report)
}

fn run_hypergraph(args: &Args) -> Result<(), CliError> {
    let h = read_hyperedgelist(Path::new(&args.input), naming(args))?;
    info!("read {} vertices, {} hyperedges", h.vertex_count(), h.hyperedge_count());
    let report = hypergraph_centralities_with(&h, &regularization(args)?, args.rank_k, None)?;
    emit_report(args, &report)
}

fn run_equivalence_mode(args: &Args) -> Result<(), CliError> {
    let (g, source) = load_graph(args)?;
    let result = run_equivalence(&g, source, &regularization(args)?)?;
    info!("pearson rho = {}", result.metrics["pearson_rho"]);
    emit_experiment(args, &result)
}

fn run_grid_mode(args: &Args) -> Result<(), CliError> {
    let alpha = args
        .alpha
        .ok_or_else(|| CliError::Usage("--mode grid requires --alpha".into()))?;
    let result = run_grid_experiment_with(alpha, &regularization(args)?)?;
    emit_experiment(args, &result)
}

/// Resistances, the resistance-sum identity and the closeness ranking, each
/// checked against the dense pseudoinverse oracle.
fn run_oracle_check(args: &Args) -> Result<(), CliError> {
    let (g, _) = load_graph(args)?;
    let n = g.vertex_count();
    let d = compact_svd(&build_incidence(&g)?, None)?;
    let oracle = ResistanceMatrix::from_graph(&g);
    let mut max_diff = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let a = effective_resistance(&d, i, j)?;
            let b = oracle.get(i, j);
            let diff = if a.is_infinite() || b.is_infinite() {
                if a == b { 0.0 } else { f64::INFINITY }
            } else {
                (a - b).abs()
            };
            max_diff = max_diff.max(diff);
        }
    }
    let mut lines = vec![format!("resistance max_abs_diff {max_diff:.3e}")];
    let mut failures = Vec::new();
    if max_diff > 1e-8 {
        failures.push("resistance");
    }
    if g.is_connected() && n >= 2 {
        let identity = check_resistance_sum_identity(&d)?.into_iter().fold(0.0, f64::max);
        lines.push(format!("identity max_residual {identity:.3e}"));
        if identity > 1e-8 * n as f64 {
            failures.push("identity");
        }
        let c_v = vertex_centrality(&d, &RegularizationConfig::unregularized());
        let cfc = current_flow_closeness(&g)?;
        let mut disagreements = 0usize;
        for i in 0..n {
            for j in 0..n {
                if (c_v[i] - c_v[j]).abs() > 1e-10 && (c_v[i] < c_v[j]) != (cfc[i] > cfc[j]) {
                    disagreements += 1;
                }
            }
        }
        lines.push(format!("ranking disagreements {disagreements}"));
        if disagreements > 0 {
            failures.push("ranking");
        }
    } else {
        lines.push("identity skipped (disconnected)".into());
    }
    lines.push(if failures.is_empty() { "status ok".into() } else { "status failed".into() });
    write_output(args.output.as_deref(), &(lines.join("\n") + "\n"))?;
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::CheckFailed(failures.join(", ")))
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Args::parse();
    debug!("{args:?}");
    let result = match args.mode {
        Mode::Centrality if matches!(args.format, Format::Hyperedgelist) => run_hypergraph(&args),
        Mode::Centrality => run_centrality(&args),
        Mode::Hypergraph => run_hypergraph(&args),
        Mode::Equivalence => run_equivalence_mode(&args),
        Mode::Grid => run_grid_mode(&args),
        Mode::OracleCheck => run_oracle_check(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("svdcent: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
