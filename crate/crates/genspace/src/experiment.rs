//! Config-driven orchestration of the full pipeline:
//! sample → encode → reduce (per algorithm, per run) → BCs → correlate →
//! aggregate → report.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::config::{ExperimentConfig, Game};
use crate::correlate::{
    pair_count, pairwise_bc_difference, pairwise_projection_distance, spearman, CorrelationReport,
};
use crate::corpus::{
    self, default_mario_mapping, loderunner_alphabet, sample_stratified, LevelCorpus,
};
use crate::dimred::{fit_mca, fit_pca, fit_svd, fit_tsne, Algorithm, Projection, TsneConfig};
use crate::encode::{encode_categorical, encode_onehot, DesignMatrix};
use crate::metrics::{bc_profile, BcKind, BcVector};
use crate::report::{write_scatter, PlotSpec};
use crate::{Error, Result};

/// Load the corpus named by the config.
pub fn load_corpus(cfg: &ExperimentConfig) -> Result<LevelCorpus> {
    match cfg.game {
        Game::Synthetic => {
            let s = &cfg.synthetic;
            crate::synthgen::generate_density_corpus(&crate::synthgen::SynthSpec {
                height: s.height,
                width: s.width,
                n_levels: s.n_levels,
                density_range: [s.density_lo, s.density_hi],
                seed: cfg.base_seed,
                ..Default::default()
            })
        }
        Game::Mario => {
            let path = cfg.corpus_path.as_ref().unwrap();
            let mapping = match &cfg.mario_mapping_path {
                Some(p) => {
                    let text = fs::read_to_string(p).map_err(|e| Error::io(p, e))?;
                    corpus::load_symbol_mapping(&text, &p.display().to_string())?
                }
                None => default_mario_mapping(),
            };
            corpus::parse_mario(path, &mapping)
        }
        Game::Boxoban => corpus::parse_boxoban(cfg.corpus_path.as_ref().unwrap()),
        Game::Loderunner => {
            let path = cfg.corpus_path.as_ref().unwrap();
            let alphabet = match &cfg.alphabet_path {
                Some(p) => {
                    let text = fs::read_to_string(p).map_err(|e| Error::io(p, e))?;
                    corpus::TileAlphabet::from_config(&text, &p.display().to_string())?
                }
                None => loderunner_alphabet(),
            };
            corpus::parse_vglc(path, &alphabet)
        }
    }
}

/// Fit one algorithm on prepared encodings.
pub fn fit_algorithm(
    algorithm: Algorithm,
    onehot: &DesignMatrix,
    categorical: &DesignMatrix,
    tsne: &TsneConfig,
) -> Result<Projection> {
    match algorithm {
        Algorithm::Pca => fit_pca(onehot),
        Algorithm::Svd => fit_svd(onehot),
        Algorithm::Mca => fit_mca(categorical),
        Algorithm::Tsne => fit_tsne(onehot, tsne),
    }
}

/// Correlate an existing projection against BC vectors. The BC list is
/// realigned to the projection's row order by level id, so both pair series
/// share one canonical ordering; a missing id is an error, never a silent
/// misalignment.
pub fn evaluate_projection(
    projection: &Projection,
    bcs: &[BcVector],
) -> Result<Vec<(BcKind, f64, f64)>> {
    let by_id: BTreeMap<&str, &BcVector> =
        bcs.iter().map(|b| (b.level_id.as_str(), b)).collect();
    let aligned: Vec<BcVector> = projection
        .row_ids
        .iter()
        .map(|id| {
            by_id
                .get(id.as_str())
                .map(|b| (*b).clone())
                .ok_or_else(|| Error::MissingBc {
                    bc: "any".to_string(),
                    level_id: id.clone(),
                })
        })
        .collect::<Result<_>>()?;
    let kinds: Vec<BcKind> = aligned
        .first()
        .map(|b| b.values.keys().copied().collect())
        .unwrap_or_default();
    let distances = pairwise_projection_distance(projection);
    let mut out = Vec::new();
    for kind in kinds {
        let diffs = pairwise_bc_difference(&aligned, kind)?;
        let (rho, p) = spearman(&distances, &diffs)?;
        out.push((kind, rho, p));
    }
    Ok(out)
}

struct RunData {
    run: usize,
    onehot: DesignMatrix,
    categorical: DesignMatrix,
    bcs: Vec<BcVector>,
}

/// Execute the full experiment; artifacts land in `cfg.output_dir`.
/// On failure a manifest marking the run incomplete is left behind.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<CorrelationReport> {
    cfg.validate()?;
    fs::create_dir_all(&cfg.output_dir).map_err(|e| Error::io(&cfg.output_dir, e))?;
    match run_experiment_inner(cfg) {
        Ok(report) => {
            write_manifest(cfg, "complete", None)?;
            Ok(report)
        }
        Err(e) => {
            // keep partial artifacts, but mark the output as incomplete
            let _ = write_manifest(cfg, "incomplete", Some(&e.to_string()));
            Err(e)
        }
    }
}

fn run_experiment_inner(cfg: &ExperimentConfig) -> Result<CorrelationReport> {
    let corpus = load_corpus(cfg)?;
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let n_effective = cfg.sample_size.unwrap_or(corpus.len()).min(corpus.len());
    if pair_count(n_effective) > cfg.pair_cap {
        log::warn!(
            "{} levels produce {} pairs, above the configured cap {}; this run may take hours",
            n_effective,
            pair_count(n_effective),
            cfg.pair_cap
        );
    }
    let profile = {
        let mut p = cfg.game.default_bc_profile();
        p.pipe_as_solid = cfg.pipe_as_solid;
        p
    };

    // per-run data built sequentially, deterministically
    let mut run_data = Vec::with_capacity(cfg.runs);
    for k in 0..cfg.runs {
        let sampled = match cfg.sample_size {
            Some(s) if s < corpus.len() => sample_stratified(&corpus, s, cfg.base_seed + k as u64)?,
            _ => corpus.clone(),
        };
        run_data.push(RunData {
            run: k,
            onehot: encode_onehot(&sampled)?,
            categorical: encode_categorical(&sampled)?,
            bcs: bc_profile(&sampled, &profile)?,
        });
    }

    // task grid: runs × algorithms, executed by `workers` threads pulling
    // indexed tasks; results merge by index so parallelism never reorders
    let tasks: Vec<(usize, Algorithm)> = run_data
        .iter()
        .flat_map(|rd| cfg.algorithms.iter().map(move |&a| (rd.run, a)))
        .collect();
    let results: Mutex<Vec<Option<Result<Vec<(BcKind, f64, f64)>>>>> =
        Mutex::new((0..tasks.len()).map(|_| None).collect());
    let next: AtomicUsize = AtomicUsize::new(0);

    std::thread::scope(|scope| {
        for _ in 0..cfg.workers.min(tasks.len()) {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, Ordering::SeqCst);
                if idx >= tasks.len() {
                    break;
                }
                let (run, algorithm) = tasks[idx];
                let rd = &run_data[run];
                let outcome = run_one_task(cfg, rd, algorithm);
                results.lock().unwrap()[idx] = Some(outcome);
            });
        }
    });

    let mut per_cell: BTreeMap<(Algorithm, BcKind), Vec<(usize, f64, f64)>> = BTreeMap::new();
    for (idx, outcome) in results.into_inner().unwrap().into_iter().enumerate() {
        let (run, algorithm) = tasks[idx];
        for (bc, rho, p) in outcome.expect("every task ran")? {
            per_cell
                .entry((algorithm, bc))
                .or_default()
                .push((run, rho, p));
        }
    }
    let report = CorrelationReport::assemble(cfg.game.name(), per_cell)?;
    report.write(&cfg.output_dir)?;
    Ok(report)
}

fn run_one_task(
    cfg: &ExperimentConfig,
    rd: &RunData,
    algorithm: Algorithm,
) -> Result<Vec<(BcKind, f64, f64)>> {
    let tsne_cfg = TsneConfig {
        seed: cfg.base_seed + rd.run as u64,
        ..cfg.tsne.clone()
    };
    let projection = fit_algorithm(algorithm, &rd.onehot, &rd.categorical, &tsne_cfg)?;

    let stem = format!("{}_{}_run{}", cfg.game.name(), algorithm.name(), rd.run);
    projection.write_csv(&cfg.output_dir.join(format!("{stem}.csv")))?;
    let spec = PlotSpec {
        projection: &projection,
        set_palette: None,
        annotate_extremes: true,
        title: stem.clone(),
    };
    write_scatter(&spec, &cfg.output_dir.join(format!("{stem}.svg")))?;

    evaluate_projection(&projection, &rd.bcs)
}

fn write_manifest(cfg: &ExperimentConfig, status: &str, error: Option<&str>) -> Result<()> {
    let path = cfg.output_dir.join("manifest.txt");
    let mut text = format!(
        "status={status}\ngame={}\nruns={}\nbase_seed={}\nalgorithms={}\n",
        cfg.game,
        cfg.runs,
        cfg.base_seed,
        cfg.algorithms
            .iter()
            .map(|a| a.name())
            .collect::<Vec<_>>()
            .join(",")
    );
    if let Some(e) = error {
        text.push_str(&format!("error={e}\n"));
    }
    fs::write(&path, text).map_err(|e| Error::io(&path, e))
}

pub fn read_manifest_status(dir: &Path) -> Result<String> {
    let path = dir.join("manifest.txt");
    let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    Ok(text
        .lines()
        .find_map(|l| l.strip_prefix("status="))
        .unwrap_or("unknown")
        .to_string())
}
