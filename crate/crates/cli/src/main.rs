use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use percolab::decomposition::decompose;
use percolab::expansion::{certify, ExpansionMode, DEFAULT_EXHAUSTIVE_LIMIT};
use percolab::harness::{acceptance, emit_report, run_experiment, ExperimentConfig, ReportFormat};
use percolab::io::{parse_edge_list, parse_pairing, read_to_string, write_configuration, write_file, write_outcome};
use percolab::pairing::{project, sample_configuration, sample_simple_regular, DegreeSequence};
use percolab::percolation::{apply_deletion, choose_deletion_set, DeletionParams};
use percolab::theory::{predictions, ModelParams};
use percolab::Multigraph;

const EXIT_ASSERTION: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "percolab", version, about = "Vertex percolation on random regular graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a d-regular pairing (simple unless --multigraph).
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        multigraph: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Delete each bucket of a configuration file independently.
    Percolate {
        #[command(flatten)]
        rate: Rate,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decompose a configuration, outcome or edge-list file and print JSON.
    Analyze {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Size bound for isolated trees.
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
        format: InputFormat,
    },
    /// Certify the vertex expansion of a graph file.
    #[command(group(ArgGroup::new("mode").required(true).args(["exact", "bounds"])))]
    Expansion {
        /// Exhaustive search, up to --limit vertices.
        #[arg(long)]
        exact: bool,
        /// Spectral lower and combinatorial upper bounds.
        #[arg(long)]
        bounds: bool,
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_LIMIT)]
        limit: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
        format: InputFormat,
    },
    /// Print the predicted quantities for (n, d, alpha, eta).
    Theory {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        alpha: f64,
        /// Defaults to alpha.
        #[arg(long)]
        eta: Option<f64>,
        /// Run lengths to predict degree-2 path counts for.
        #[arg(long, value_delimiter = ',')]
        paths: Vec<u32>,
    },
    /// Run an experiment from a config file and write CSV and JSON reports.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run the acceptance suite.
    Verify,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Rate {
    /// Deletion probability n^-alpha.
    #[arg(long)]
    alpha: Option<f64>,
    /// Deletion probability given directly.
    #[arg(long)]
    p: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormat {
    Auto,
    Pairing,
    Edges,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(command: Command) -> percolab::Result<ExitCode> {
    match command {
        Command::Sample { n, d, seed, multigraph, output } => {
            let config = if multigraph {
                sample_configuration(&DegreeSequence::regular(n, d)?, seed)?
            } else {
                sample_simple_regular(n, d, seed)?.configuration
            };
            emit(output.as_deref(), &write_configuration(&config))?;
        }
        Command::Percolate { rate, seed, input, output } => {
            let parsed = parse_pairing(&read_to_string(&input)?)?;
            let n = parsed.configuration.bucket_count();
            let params = match (rate.alpha, rate.p) {
                (Some(a), _) => DeletionParams::with_alpha(n, a, seed),
                (_, Some(p)) => DeletionParams::with_probability(n, p, seed),
                _ => unreachable!("clap requires one of --alpha and --p"),
            };
            let outcome = apply_deletion(&parsed.configuration, &choose_deletion_set(&params)?)?;
            emit(output.as_deref(), &write_outcome(&outcome))?;
        }
        Command::Analyze { input, output, k, format } => {
            let (g, census) = load_graph(&input, format)?;
            let dec = decompose(&g, k);
            let comps = &dec.components;
            let json = serde_json::json!({
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "census": census,
                "component_count": comps.count(),
                "connected": comps.is_connected(),
                "max_isolated_tree_size": comps.max_isolated_tree(),
                "trees_within_bound": comps.all_trees_within_bound,
                "decomposition": dec.report(),
            });
            emit(output.as_deref(), &pretty(&json)?)?;
        }
        Command::Expansion { exact, bounds: _, input, limit, seed, format } => {
            let (g, _) = load_graph(&input, format)?;
            let mode = if exact { ExpansionMode::Exact } else { ExpansionMode::Bounds };
            let cert = certify(&g, mode, limit, seed)?;
            emit(None, &pretty(&cert)?)?;
        }
        Command::Theory { n, d, alpha, eta, paths } => {
            let params = ModelParams::new(n, d, alpha, eta.unwrap_or(alpha))?;
            emit(None, &pretty(&predictions(&params, &paths)?)?)?;
        }
        Command::Experiment { config, output } => {
            let cfg = ExperimentConfig::from_toml_str(&read_to_string(&config)?)?;
            let report = run_experiment(&cfg)?;
            let written = emit_report(&report, &output, &[ReportFormat::Csv, ReportFormat::Structured])?;
            println!("{} of {} trials completed", report.completed, cfg.trials);
            for f in &report.failures {
                println!("trial {} (seed {}) failed: {}", f.trial, f.seed, f.error);
            }
            for a in &report.assertions {
                println!("regime {:?} {}: {:.3}", a.regime, a.name, a.fraction);
            }
            for path in written {
                println!("wrote {}", path.display());
            }
        }
        Command::Verify => {
            let results = acceptance::run_all(|r| {
                println!("{r}");
                let _ = std::io::stdout().flush();
            });
            let failed = results.iter().filter(|r| !r.pass).count();
            println!("{} passed, {} failed", results.len() - failed, failed);
            if failed > 0 {
                return Ok(ExitCode::from(EXIT_ASSERTION));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Reads a graph, projecting pairings. The census comes back when the file
/// is a percolation outcome.
fn load_graph(path: &Path, format: InputFormat) -> percolab::Result<(Multigraph, Option<Vec<usize>>)> {
    let text = read_to_string(path)?;
    let edges = match format {
        InputFormat::Edges => true,
        InputFormat::Pairing => false,
        InputFormat::Auto => text.lines().any(|l| l.trim_start().starts_with("# vertices")),
    };
    if edges {
        return Ok((parse_edge_list(&text)?, None));
    }
    match parse_pairing(&text) {
        Ok(p) => Ok((project(&p.configuration), p.census)),
        Err(e) if matches!(format, InputFormat::Auto) => parse_edge_list(&text).map(|g| (g, None)).map_err(|_| e),
        Err(e) => Err(e),
    }
}

fn pretty<T: serde::Serialize + ?Sized>(value: &T) -> percolab::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn emit(path: Option<&Path>, contents: &str) -> percolab::Result<()> {
    match path {
        Some(p) => write_file(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}
