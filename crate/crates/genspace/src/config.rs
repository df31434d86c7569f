//! Experiment configuration: a single TOML file, every field defaulted
//! except `corpus_path` (which only the synthetic game can omit).

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;

use crate::dimred::{Algorithm, TsneConfig};
use crate::metrics::BcProfile;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Game {
    Mario,
    Boxoban,
    Loderunner,
    Synthetic,
}

impl Game {
    pub fn name(&self) -> &'static str {
        match self {
            Game::Mario => "mario",
            Game::Boxoban => "boxoban",
            Game::Loderunner => "loderunner",
            Game::Synthetic => "synthetic",
        }
    }

    /// Table-derived BC set for each game.
    pub fn default_bc_profile(&self) -> BcProfile {
        match self {
            Game::Mario => BcProfile::mario(),
            Game::Boxoban => BcProfile::sokoban(),
            Game::Loderunner => BcProfile::loderunner(),
            Game::Synthetic => BcProfile::synthetic(),
        }
    }
}

impl fmt::Display for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Game {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mario" => Ok(Game::Mario),
            "boxoban" => Ok(Game::Boxoban),
            "loderunner" => Ok(Game::Loderunner),
            "synthetic" => Ok(Game::Synthetic),
            other => Err(Error::Config(format!("unknown game '{other}'"))),
        }
    }
}

/// Parameters of the synthetic density corpus used when `game = "synthetic"`.
#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SyntheticConfig {
    pub height: usize,
    pub width: usize,
    pub n_levels: usize,
    pub density_lo: f64,
    pub density_hi: f64,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        SyntheticConfig {
            height: 12,
            width: 12,
            n_levels: 300,
            density_lo: 0.1,
            density_hi: 0.9,
        }
    }
}

fn algorithm_de<'de, D>(de: D) -> std::result::Result<Vec<Algorithm>, D::Error>
where
    D: serde::Deserializer<'de>,
{
    let names: Vec<String> = Vec::deserialize(de)?;
    names
        .iter()
        .map(|n| n.parse::<Algorithm>().map_err(serde::de::Error::custom))
        .collect()
}

fn default_algorithms() -> Vec<Algorithm> {
    Algorithm::ALL.to_vec()
}

fn default_runs() -> usize {
    10
}

fn default_workers() -> usize {
    1
}

fn default_pair_cap() -> usize {
    10_000_000
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

fn default_pipe_as_solid() -> bool {
    true
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "default_game")]
    pub game: Game,
    /// Corpus directory. Required for every game except `synthetic`.
    #[serde(default)]
    pub corpus_path: Option<PathBuf>,
    #[serde(default = "default_algorithms", deserialize_with = "algorithm_de")]
    pub algorithms: Vec<Algorithm>,
    /// Stratified sample size per run. Unset = use the whole corpus.
    #[serde(default)]
    pub sample_size: Option<usize>,
    #[serde(default = "default_runs")]
    pub runs: usize,
    #[serde(default)]
    pub base_seed: u64,
    /// Whether pipe tiles count as solid for linearity/contiguity.
    #[serde(default = "default_pipe_as_solid")]
    pub pipe_as_solid: bool,
    #[serde(default)]
    pub tsne: TsneConfig,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default = "default_workers")]
    pub workers: usize,
    /// Warn when n·(n−1)/2 exceeds this; unguarded full corpora are a footgun.
    #[serde(default = "default_pair_cap")]
    pub pair_cap: usize,
    /// Raw→simplified Mario symbol mapping file; defaults to the built-in map.
    #[serde(default)]
    pub mario_mapping_path: Option<PathBuf>,
    /// Alphabet config for VGLC-style corpora; defaults to the Lode Runner set.
    #[serde(default)]
    pub alphabet_path: Option<PathBuf>,
    #[serde(default)]
    pub synthetic: SyntheticConfig,
}

fn default_game() -> Game {
    Game::Synthetic
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        toml::from_str("").expect("empty config uses all defaults")
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::Config("runs must be at least 1".into()));
        }
        if self.algorithms.is_empty() {
            return Err(Error::Config("algorithms must be non-empty".into()));
        }
        if self.workers == 0 {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        if self.game != Game::Synthetic && self.corpus_path.is_none() {
            return Err(Error::Config(format!(
                "corpus_path is required for game '{}'",
                self.game
            )));
        }
        self.tsne.validate()
    }
}
