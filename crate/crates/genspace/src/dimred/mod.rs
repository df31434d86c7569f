//! The four reducers. Each consumes a [`DesignMatrix`](crate::encode::DesignMatrix)
//! and emits a [`Projection`] holding the two most explanatory dimensions.

mod mca;
mod pca;
mod svd;
mod tsne;

pub use mca::{fit_mca, indicator_matrix, standardized_residuals, CaDecomposition};
pub use pca::fit_pca;
pub use svd::fit_svd;
pub use tsne::{calibrate_perplexity, fit_tsne, fit_tsne_traced, symmetrize, TsneConfig, TsneTrace};

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::linalg::TruncatedSvd;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    Pca,
    Svd,
    Mca,
    Tsne,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Pca, Algorithm::Svd, Algorithm::Mca, Algorithm::Tsne];

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Pca => "pca",
            Algorithm::Svd => "svd",
            Algorithm::Mca => "mca",
            Algorithm::Tsne => "tsne",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pca" => Ok(Algorithm::Pca),
            "svd" => Ok(Algorithm::Svd),
            "mca" => Ok(Algorithm::Mca),
            "tsne" | "t-sne" => Ok(Algorithm::Tsne),
            other => Err(Error::Config(format!("unknown algorithm '{other}'"))),
        }
    }
}

/// Per-level 2D coordinates produced by one reducer on one run.
#[derive(Debug, Clone)]
pub struct Projection {
    pub coords: Vec<[f64; 2]>,
    pub algorithm: Algorithm,
    /// RNG seed, t-SNE only.
    pub seed: Option<u64>,
    /// Per-component explained variance/inertia, descending. Absent for t-SNE.
    pub explained: Option<[f64; 2]>,
    pub row_ids: Vec<String>,
    pub set_labels: Vec<String>,
}

impl Projection {
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub(crate) fn check_finite(&self, algorithm: &'static str) -> Result<()> {
        for (i, c) in self.coords.iter().enumerate() {
            if !c[0].is_finite() || !c[1].is_finite() {
                return Err(Error::Numerical {
                    algorithm,
                    iteration: 0,
                    message: format!("non-finite coordinate for row {i}"),
                });
            }
        }
        Ok(())
    }

    /// Dump as delimited text: level_id, set_label, x, y, algorithm, seed.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut out = String::from("level_id,set_label,x,y,algorithm,seed\n");
        for i in 0..self.coords.len() {
            let seed = self.seed.map(|s| s.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                self.row_ids[i],
                self.set_labels[i],
                self.coords[i][0],
                self.coords[i][1],
                self.algorithm,
                seed
            ));
        }
        fs::write(path, out).map_err(|e| Error::io(path, e))
    }

    /// Read a projection dump written by [`Projection::write_csv`].
    pub fn read_csv(path: &Path) -> Result<Projection> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let fname = path.display().to_string();
        let mut lines = text.lines().enumerate();
        let header = lines.next().map(|(_, l)| l).ok_or_else(|| Error::Parse {
            file: fname.clone(),
            line: 1,
            message: "empty projection file".into(),
        })?;
        if header != "level_id,set_label,x,y,algorithm,seed" {
            return Err(Error::Parse {
                file: fname,
                line: 1,
                message: "unrecognized projection header".into(),
            });
        }
        let mut coords = Vec::new();
        let mut row_ids = Vec::new();
        let mut set_labels = Vec::new();
        let mut algorithm = None;
        let mut seed = None;
        for (lineno, line) in lines {
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 6 {
                return Err(Error::Parse {
                    file: fname,
                    line: lineno + 1,
                    message: format!("expected 6 fields, found {}", fields.len()),
                });
            }
            let parse_f = |s: &str| {
                s.parse::<f64>().map_err(|_| Error::Parse {
                    file: fname.clone(),
                    line: lineno + 1,
                    message: format!("bad float '{s}'"),
                })
            };
            row_ids.push(fields[0].to_string());
            set_labels.push(fields[1].to_string());
            coords.push([parse_f(fields[2])?, parse_f(fields[3])?]);
            algorithm = Some(fields[4].parse::<Algorithm>()?);
            seed = if fields[5].is_empty() {
                None
            } else {
                Some(fields[5].parse::<u64>().map_err(|_| Error::Parse {
                    file: fname.clone(),
                    line: lineno + 1,
                    message: format!("bad seed '{}'", fields[5]),
                })?)
            };
        }
        if coords.is_empty() {
            return Err(Error::EmptyInput("projection file has no rows"));
        }
        Ok(Projection {
            coords,
            algorithm: algorithm.unwrap(),
            seed,
            explained: None,
            row_ids,
            set_labels,
        })
    }
}

/// Relative threshold under which a trailing singular value counts as zero.
pub(crate) fn rank_below_two(singular: &[f64]) -> bool {
    singular.len() < 2 || singular[0] <= 0.0 || singular[1] <= 1e-9 * singular[0]
}

/// Flip each component so that its largest-magnitude loading (entry of the
/// corresponding right-singular vector) is positive. Stabilizes plots and
/// baselines; distances are unaffected.
pub(crate) fn apply_sign_convention(coords: &mut [[f64; 2]], svd: &TruncatedSvd) {
    for k in 0..2 {
        let mut best = 0usize;
        let mut best_abs = -1.0f64;
        for i in 0..svd.v.rows() {
            let a = svd.v.at(i, k).abs();
            if a > best_abs + 1e-15 {
                best_abs = a;
                best = i;
            }
        }
        if svd.v.at(best, k) < 0.0 {
            for c in coords.iter_mut() {
                c[k] = -c[k];
            }
        }
    }
}

/// Scale left singular vectors by the singular values: coords = U·Σ (top 2).
pub(crate) fn principal_coords(svd: &TruncatedSvd, n: usize) -> Vec<[f64; 2]> {
    (0..n)
        .map(|i| {
            [
                svd.u.at(i, 0) * svd.singular[0],
                svd.u.at(i, 1) * svd.singular[1],
            ]
        })
        .collect()
}
