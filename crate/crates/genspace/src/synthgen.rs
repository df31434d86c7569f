//! Synthetic fixture corpora with controllable latent structure, for
//! desk-scale end-to-end validation without external corpora.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{binary_alphabet, LevelCorpus, LevelGrid, TileAlphabet};
use crate::{Error, Result};

/// A named base level that cluster generation mutates.
#[derive(Debug, Clone)]
pub struct ClusterTemplate {
    pub name: String,
    pub cells: Vec<u8>,
}

#[derive(Debug, Clone)]
pub struct SynthSpec {
    pub height: usize,
    pub width: usize,
    pub alphabet: TileAlphabet,
    pub n_levels: usize,
    /// Per-level solid-tile probability is drawn uniformly from this range.
    pub density_range: [f64; 2],
    pub cluster_templates: Vec<ClusterTemplate>,
    /// Per-cell flip probability for cluster generation.
    pub mutation_rate: f64,
    pub seed: u64,
}

impl Default for SynthSpec {
    fn default() -> Self {
        SynthSpec {
            height: 12,
            width: 12,
            alphabet: binary_alphabet(),
            n_levels: 300,
            density_range: [0.1, 0.9],
            cluster_templates: Vec::new(),
            mutation_rate: 0.05,
            seed: 0,
        }
    }
}

impl SynthSpec {
    fn validate(&self) -> Result<()> {
        if self.n_levels == 0 {
            return Err(Error::Config("n_levels must be at least 1".into()));
        }
        let [lo, hi] = self.density_range;
        if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo > hi {
            return Err(Error::Config(format!(
                "density_range [{lo}, {hi}] must satisfy 0 <= lo <= hi <= 1"
            )));
        }
        Ok(())
    }

    /// Per-level RNG so thread count can never change the output.
    fn level_rng(&self, k: usize) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(
            self.seed
                .wrapping_mul(0x9e3779b97f4a7c15)
                .wrapping_add(k as u64),
        )
    }
}

/// Level k draws a solid density ρ_k uniformly from the range; each cell is
/// solid with probability ρ_k, empty otherwise. Deterministic per seed.
pub fn generate_density_corpus(spec: &SynthSpec) -> Result<LevelCorpus> {
    spec.validate()?;
    let empty = (0..spec.alphabet.len())
        .find(|&i| spec.alphabet.role(i) == crate::corpus::Role::Empty)
        .expect("alphabet invariant guarantees an empty role") as u8;
    let solid = (0..spec.alphabet.len())
        .find(|&i| spec.alphabet.role(i) == crate::corpus::Role::Solid)
        .ok_or_else(|| Error::Config("density generation needs a solid-role symbol".into()))?
        as u8;
    let set_label = "synthetic-density";
    let mut levels = Vec::with_capacity(spec.n_levels);
    for k in 0..spec.n_levels {
        let mut rng = spec.level_rng(k);
        let [lo, hi] = spec.density_range;
        let density = if hi > lo { rng.gen_range(lo..=hi) } else { lo };
        let cells: Vec<u8> = (0..spec.height * spec.width)
            .map(|_| {
                if rng.gen_bool(density) {
                    solid
                } else {
                    empty
                }
            })
            .collect();
        levels.push(LevelGrid::new(
            cells,
            spec.height,
            spec.width,
            set_label.to_string(),
            format!("{set_label}/lvl{k:05}"),
        ));
    }
    LevelCorpus::new(spec.alphabet.clone(), levels)
}

/// Each level copies one template (round-robin) then flips each cell to a
/// uniformly random other symbol with the mutation rate. The template name
/// becomes the set label.
pub fn generate_cluster_corpus(spec: &SynthSpec) -> Result<LevelCorpus> {
    spec.validate()?;
    if spec.cluster_templates.is_empty() {
        return Err(Error::Config("cluster_templates must be non-empty".into()));
    }
    if !(0.0..=0.5).contains(&spec.mutation_rate) {
        return Err(Error::Config("mutation_rate must lie in [0, 0.5]".into()));
    }
    let n_symbols = spec.alphabet.len() as u8;
    for t in &spec.cluster_templates {
        if t.cells.len() != spec.height * spec.width {
            return Err(Error::Config(format!(
                "template '{}' has {} cells, expected {}",
                t.name,
                t.cells.len(),
                spec.height * spec.width
            )));
        }
    }
    let mut levels = Vec::with_capacity(spec.n_levels);
    for k in 0..spec.n_levels {
        let template = &spec.cluster_templates[k % spec.cluster_templates.len()];
        let mut rng = spec.level_rng(k);
        let cells: Vec<u8> = template
            .cells
            .iter()
            .map(|&c| {
                if spec.mutation_rate > 0.0 && rng.gen_bool(spec.mutation_rate) {
                    // uniform over the other symbols
                    let offset = rng.gen_range(1..n_symbols);
                    (c + offset) % n_symbols
                } else {
                    c
                }
            })
            .collect();
        levels.push(LevelGrid::new(
            cells,
            spec.height,
            spec.width,
            template.name.clone(),
            format!("{}/lvl{k:05}", template.name),
        ));
    }
    LevelCorpus::new(spec.alphabet.clone(), levels)
}
