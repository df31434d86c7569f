//! Thin CLI over the genspace library. Subcommands are pure pipeline stages
//! over the documented file formats; `run` executes the full experiment.
//!
//! Exit codes: 0 success, 1 config error, 2 data error, 3 numerical failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use genspace::config::{ExperimentConfig, Game};
use genspace::corpus::{self, default_mario_mapping, loderunner_alphabet, LevelCorpus};
use genspace::dimred::{Algorithm, Projection, TsneConfig};
use genspace::encode::{encode_categorical, encode_onehot};
use genspace::experiment::{evaluate_projection, run_experiment};
use genspace::metrics::{bc_profile, read_bc_csv, write_bc_csv, BcKind};
use genspace::report::{find_extreme_pairs, write_scatter, PlotSpec};
use genspace::Error;

#[derive(Parser)]
#[command(name = "genspace", version, about = "Compress tile-based level corpora into 2D and score BC preservation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full experiment from a config file
    Run(RunArgs),
    /// Parse and validate a corpus, print its stats
    Ingest(IngestArgs),
    /// Fit one projection and dump it to CSV (and optionally SVG)
    Compress(CompressArgs),
    /// Correlate an existing projection dump against a BC dump
    Evaluate(EvaluateArgs),
    /// Re-render a scatter plot from a projection dump
    Plot(PlotArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Experiment config (TOML)
    #[arg(long)]
    config: PathBuf,
    /// Override the configured run count
    #[arg(long)]
    runs: Option<usize>,
    /// Override the configured sample size
    #[arg(long)]
    sample_size: Option<usize>,
    /// Override the configured base seed
    #[arg(long)]
    base_seed: Option<u64>,
    /// Override the configured worker count
    #[arg(long)]
    workers: Option<usize>,
    /// Override the configured algorithms (comma separated)
    #[arg(long, value_delimiter = ',')]
    algorithms: Option<Vec<Algorithm>>,
    /// Override the output directory (also via GENSPACE_OUTPUT_DIR)
    #[arg(long)]
    output_dir: Option<PathBuf>,
}

#[derive(Args)]
struct CorpusArgs {
    /// Game: mario, boxoban, loderunner or synthetic
    #[arg(long)]
    game: Game,
    /// Corpus directory (unused for synthetic)
    #[arg(long)]
    path: Option<PathBuf>,
    /// Mario raw→simplified mapping config
    #[arg(long)]
    mapping: Option<PathBuf>,
    /// Alphabet config for VGLC-style corpora
    #[arg(long)]
    alphabet: Option<PathBuf>,
}

#[derive(Args)]
struct IngestArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Also dump per-level behavioral characteristics to this CSV
    #[arg(long)]
    bc_out: Option<PathBuf>,
}

#[derive(Args)]
struct CompressArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[arg(long)]
    algorithm: Algorithm,
    /// Stratified sample size before fitting
    #[arg(long)]
    sample_size: Option<usize>,
    /// Seed for sampling and t-SNE
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Projection CSV output path
    #[arg(long)]
    output: PathBuf,
    /// Optional scatter SVG output path
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Projection CSV produced by `compress` (or `run`)
    #[arg(long)]
    projection: PathBuf,
    /// BC dump produced by `ingest --bc-out`
    #[arg(long)]
    bcs: PathBuf,
    /// Restrict to one BC (default: all present in the dump)
    #[arg(long)]
    bc: Option<BcKind>,
}

#[derive(Args)]
struct PlotArgs {
    /// Projection CSV to re-render
    #[arg(long)]
    projection: PathBuf,
    /// SVG output path
    #[arg(long)]
    output: PathBuf,
    /// Annotate the most proximal and most distant pair
    #[arg(long, default_value_t = true)]
    annotate_extremes: bool,
}

fn parse_corpus(args: &CorpusArgs) -> genspace::Result<LevelCorpus> {
    match args.game {
        Game::Synthetic => {
            genspace::synthgen::generate_density_corpus(&genspace::synthgen::SynthSpec::default())
        }
        Game::Mario => {
            let path = require_path(&args.path)?;
            let mapping = match &args.mapping {
                Some(p) => {
                    let text = std::fs::read_to_string(p)
                        .map_err(|e| Error::Config(format!("cannot read {}: {e}", p.display())))?;
                    corpus::load_symbol_mapping(&text, &p.display().to_string())?
                }
                None => default_mario_mapping(),
            };
            corpus::parse_mario(&path, &mapping)
        }
        Game::Boxoban => corpus::parse_boxoban(&require_path(&args.path)?),
        Game::Loderunner => {
            let path = require_path(&args.path)?;
            let alphabet = match &args.alphabet {
                Some(p) => {
                    let text = std::fs::read_to_string(p)
                        .map_err(|e| Error::Config(format!("cannot read {}: {e}", p.display())))?;
                    corpus::TileAlphabet::from_config(&text, &p.display().to_string())?
                }
                None => loderunner_alphabet(),
            };
            corpus::parse_vglc(&path, &alphabet)
        }
    }
}

fn require_path(path: &Option<PathBuf>) -> genspace::Result<PathBuf> {
    path.clone()
        .ok_or_else(|| Error::Config("--path is required for this game".into()))
}

fn cmd_run(args: RunArgs) -> genspace::Result<()> {
    let mut cfg = ExperimentConfig::from_file(&args.config)?;
    if let Some(r) = args.runs {
        cfg.runs = r;
    }
    if let Some(s) = args.sample_size {
        cfg.sample_size = Some(s);
    }
    if let Some(b) = args.base_seed {
        cfg.base_seed = b;
    }
    if let Some(w) = args.workers {
        cfg.workers = w;
    }
    if let Some(a) = args.algorithms {
        cfg.algorithms = a;
    }
    if let Some(o) = args.output_dir {
        cfg.output_dir = o;
    } else if let Ok(env_dir) = std::env::var("GENSPACE_OUTPUT_DIR") {
        cfg.output_dir = PathBuf::from(env_dir);
    }
    cfg.validate()?;
    let report = run_experiment(&cfg)?;
    print!("{}", report.to_table());
    println!("artifacts written to {}", cfg.output_dir.display());
    Ok(())
}

fn cmd_ingest(args: IngestArgs) -> genspace::Result<()> {
    let corpus = parse_corpus(&args.corpus)?;
    println!(
        "{} levels, {}×{}, {} symbols",
        corpus.len(),
        corpus.height(),
        corpus.width(),
        corpus.alphabet().len()
    );
    for (set, count) in corpus.sets() {
        println!("  {set}: {count} levels");
    }
    if let Some(out) = args.bc_out {
        let profile = args.corpus.game.default_bc_profile();
        let bcs = bc_profile(&corpus, &profile)?;
        write_bc_csv(&bcs, &out)?;
        println!("BC dump written to {}", out.display());
    }
    Ok(())
}

fn cmd_compress(args: CompressArgs) -> genspace::Result<()> {
    let corpus = parse_corpus(&args.corpus)?;
    let sampled = match args.sample_size {
        Some(s) if s < corpus.len() => corpus::sample_stratified(&corpus, s, args.seed)?,
        _ => corpus,
    };
    let onehot = encode_onehot(&sampled)?;
    let categorical = encode_categorical(&sampled)?;
    let tsne = TsneConfig {
        seed: args.seed,
        ..TsneConfig::default()
    };
    let projection =
        genspace::experiment::fit_algorithm(args.algorithm, &onehot, &categorical, &tsne)?;
    projection.write_csv(&args.output)?;
    println!("projection written to {}", args.output.display());
    if let Some(svg) = args.svg {
        let spec = PlotSpec {
            projection: &projection,
            set_palette: None,
            annotate_extremes: true,
            title: format!("{} {}", args.corpus.game, args.algorithm),
        };
        write_scatter(&spec, &svg)?;
        println!("scatter written to {}", svg.display());
    }
    Ok(())
}

fn cmd_evaluate(args: EvaluateArgs) -> genspace::Result<()> {
    let projection = Projection::read_csv(&args.projection)?;
    let bcs = read_bc_csv(&args.bcs)?;
    let results = evaluate_projection(&projection, &bcs)?;
    for (bc, rho, p) in results {
        if args.bc.map_or(true, |want| want == bc) {
            println!("{bc}\trho={rho}\tp={p}");
        }
    }
    Ok(())
}

fn cmd_plot(args: PlotArgs) -> genspace::Result<()> {
    let projection = Projection::read_csv(&args.projection)?;
    let spec = PlotSpec {
        projection: &projection,
        set_palette: None,
        annotate_extremes: args.annotate_extremes,
        title: args
            .projection
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default(),
    };
    write_scatter(&spec, &args.output)?;
    if projection.len() >= 2 {
        let e = find_extreme_pairs(&projection);
        println!(
            "closest: {} ↔ {} (d={:.4})",
            e.closest.0, e.closest.1, e.closest.2
        );
        println!(
            "farthest: {} ↔ {} (d={:.4})",
            e.farthest.0, e.farthest.1, e.farthest.2
        );
    }
    println!("plot written to {}", args.output.display());
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Ingest(args) => cmd_ingest(args),
        Command::Compress(args) => cmd_compress(args),
        Command::Evaluate(args) => cmd_evaluate(args),
        Command::Plot(args) => cmd_plot(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
