//! Exact (non-approximated) t-SNE with perplexity calibration by binary
//! search, early exaggeration and a two-stage momentum schedule.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::Deserialize;

use crate::encode::DesignMatrix;
use crate::linalg::Mat;
use crate::{Error, Result};

use super::{Algorithm, Projection};

const P_FLOOR: f64 = 1e-12;
// converge the bandwidth search essentially to machine precision; the
// contract only requires 1e-5 bits, but 64 bisections cost nothing
const ENTROPY_TOL_BITS: f64 = 1e-10;
const MAX_SEARCH_ITERS: usize = 64;

/// t-SNE hyperparameters. The defaults are fixed so runs are reproducible
/// without any external library: perplexity 30, 1000 iterations, learning
/// rate 200, early exaggeration 12 for the first 250 iterations, momentum
/// 0.5→0.8 switching at iteration 250, Gaussian init with σ = 1e-4.
#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TsneConfig {
    pub perplexity: f64,
    pub iterations: usize,
    pub learning_rate: f64,
    pub early_exaggeration: f64,
    pub exaggeration_iters: usize,
    pub momentum_initial: f64,
    pub momentum_final: f64,
    pub momentum_switch_iter: usize,
    pub seed: u64,
}

impl Default for TsneConfig {
    fn default() -> Self {
        TsneConfig {
            perplexity: 30.0,
            iterations: 1000,
            learning_rate: 200.0,
            early_exaggeration: 12.0,
            exaggeration_iters: 250,
            momentum_initial: 0.5,
            momentum_final: 0.8,
            momentum_switch_iter: 250,
            seed: 0,
        }
    }
}

impl TsneConfig {
    pub fn validate(&self) -> Result<()> {
        if self.perplexity <= 0.0 {
            return Err(Error::Config("tsne perplexity must be positive".into()));
        }
        if self.learning_rate <= 0.0 {
            return Err(Error::Config("tsne learning rate must be positive".into()));
        }
        if self.early_exaggeration <= 0.0 {
            return Err(Error::Config("tsne early exaggeration must be positive".into()));
        }
        if self.exaggeration_iters > self.iterations {
            return Err(Error::Config(
                "tsne exaggeration_iters must not exceed iterations".into(),
            ));
        }
        for m in [self.momentum_initial, self.momentum_final] {
            if !(0.0..1.0).contains(&m) {
                return Err(Error::Config("tsne momentum must lie in [0, 1)".into()));
            }
        }
        Ok(())
    }

    /// Effective perplexity for n points: clamped to ⌊(n−1)/3⌋ when too
    /// large for the corpus (small sets like Lode Runner's 150 levels).
    fn effective_perplexity(&self, n: usize) -> f64 {
        let cap = ((n - 1) / 3) as f64;
        if self.perplexity >= (n as f64 - 1.0) / 3.0 {
            log::warn!(
                "perplexity {} too large for n={n}; clamped to {cap}",
                self.perplexity
            );
            cap
        } else {
            self.perplexity
        }
    }
}

/// KL divergence trace points used by validation.
#[derive(Debug, Clone, Copy)]
pub struct TsneTrace {
    /// KL(P‖Q) right after the early-exaggeration phase ends.
    pub kl_post_exaggeration: f64,
    /// KL(P‖Q) at the final iteration.
    pub kl_final: f64,
}

/// Squared Euclidean distances between design-matrix rows.
fn squared_distances(x: &DesignMatrix) -> Mat {
    let n = x.n_rows();
    let mut d2 = Mat::zeros(n, n);
    for i in 0..n {
        let ri = x.row(i);
        for j in (i + 1)..n {
            let rj = x.row(j);
            let d: f64 = ri
                .iter()
                .zip(rj)
                .map(|(a, b)| {
                    let t = a - b;
                    t * t
                })
                .sum();
            *d2.at_mut(i, j) = d;
            *d2.at_mut(j, i) = d;
        }
    }
    d2
}

/// For each row of a squared-distance matrix, binary-search the Gaussian
/// bandwidth σ_i so the Shannon entropy of p_{·|i} equals log₂(perplexity).
/// Returns the row-stochastic conditional matrix and the σ vector.
pub fn calibrate_perplexity(d2: &Mat, perplexity: f64) -> Result<(Mat, Vec<f64>)> {
    let n = d2.rows();
    assert_eq!(d2.cols(), n, "squared-distance matrix must be square");
    let target = perplexity.log2();
    let mut p = Mat::zeros(n, n);
    let mut sigmas = vec![0.0; n];

    for i in 0..n {
        let row: Vec<f64> = (0..n).filter(|&j| j != i).map(|j| d2.at(i, j)).collect();
        let lo = row.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = row.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if hi - lo <= 1e-12 * (hi.abs() + 1.0) {
            // entropy is log2(n-1) for every bandwidth; nothing to search
            let flat = ((n - 1) as f64).log2();
            if (flat - target).abs() > 1e-3 {
                return Err(Error::Calibration {
                    row: i,
                    message: "all distances identical; entropy cannot reach target".into(),
                });
            }
            let val = 1.0 / (n - 1) as f64;
            for j in 0..n {
                if j != i {
                    *p.at_mut(i, j) = val;
                }
            }
            sigmas[i] = f64::INFINITY;
            continue;
        }

        let mut beta = 1.0f64;
        let mut beta_min = 0.0f64;
        let mut beta_max = f64::INFINITY;
        let mut probs = vec![0.0; n];
        for _ in 0..MAX_SEARCH_ITERS {
            // shift by the row minimum so exponentials stay in range
            let mut sum = 0.0;
            for j in 0..n {
                probs[j] = if j == i {
                    0.0
                } else {
                    (-beta * (d2.at(i, j) - lo)).exp()
                };
                sum += probs[j];
            }
            let mut entropy_bits = 0.0;
            for j in 0..n {
                if j != i && probs[j] > 0.0 {
                    let q = probs[j] / sum;
                    entropy_bits -= q * q.log2();
                }
            }
            let diff = entropy_bits - target;
            if diff.abs() <= ENTROPY_TOL_BITS {
                break;
            }
            if diff > 0.0 {
                // too much entropy: narrow the Gaussian
                beta_min = beta;
                beta = if beta_max.is_finite() {
                    (beta + beta_max) / 2.0
                } else {
                    beta * 2.0
                };
            } else {
                beta_max = beta;
                beta = (beta + beta_min) / 2.0;
            }
            for v in probs.iter_mut() {
                *v = 0.0;
            }
        }
        let mut sum = 0.0;
        for j in 0..n {
            probs[j] = if j == i {
                0.0
            } else {
                (-beta * (d2.at(i, j) - lo)).exp()
            };
            sum += probs[j];
        }
        for j in 0..n {
            *p.at_mut(i, j) = probs[j] / sum;
        }
        sigmas[i] = (1.0 / (2.0 * beta)).sqrt();
    }
    Ok((p, sigmas))
}

/// Symmetrize conditionals: p_ij = (p_{j|i} + p_{i|j}) / (2n), floored at 1e-12.
pub fn symmetrize(p_cond: &Mat) -> Mat {
    let n = p_cond.rows();
    Mat::from_fn(n, n, |i, j| {
        if i == j {
            0.0
        } else {
            ((p_cond.at(i, j) + p_cond.at(j, i)) / (2.0 * n as f64)).max(P_FLOOR)
        }
    })
}

fn kl_divergence(p: &Mat, q: &Mat) -> f64 {
    let n = p.rows();
    let mut kl = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                kl += p.at(i, j) * (p.at(i, j) / q.at(i, j)).ln();
            }
        }
    }
    kl
}

/// Exact t-SNE. Deterministic for a fixed seed: coords, not just shape,
/// are bit-identical across runs and thread counts.
pub fn fit_tsne(x: &DesignMatrix, cfg: &TsneConfig) -> Result<Projection> {
    fit_tsne_traced(x, cfg).map(|(p, _)| p)
}

pub fn fit_tsne_traced(x: &DesignMatrix, cfg: &TsneConfig) -> Result<(Projection, TsneTrace)> {
    cfg.validate()?;
    let n = x.n_rows();
    if n < 10 {
        return Err(Error::Config(format!("tsne requires n >= 10, got {n}")));
    }
    let perplexity = cfg.effective_perplexity(n);

    let d2 = squared_distances(x);
    let (p_cond, _sigmas) = calibrate_perplexity(&d2, perplexity)?;
    let p = symmetrize(&p_cond);

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let init = Normal::new(0.0, 1e-4).expect("valid stddev");
    let mut y: Vec<[f64; 2]> = (0..n)
        .map(|_| [init.sample(&mut rng), init.sample(&mut rng)])
        .collect();
    let mut velocity = vec![[0.0f64; 2]; n];

    let mut q = Mat::zeros(n, n);
    let mut num = Mat::zeros(n, n);
    let mut kl_post_exaggeration = f64::NAN;
    let mut kl_final = f64::NAN;

    for iter in 0..cfg.iterations {
        // Student-t kernel in the low-dimensional space
        let mut z_sum = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                let dx = y[i][0] - y[j][0];
                let dy = y[i][1] - y[j][1];
                let v = 1.0 / (1.0 + dx * dx + dy * dy);
                *num.at_mut(i, j) = v;
                *num.at_mut(j, i) = v;
                z_sum += 2.0 * v;
            }
        }
        for i in 0..n {
            for j in 0..n {
                *q.at_mut(i, j) = if i == j {
                    0.0
                } else {
                    (num.at(i, j) / z_sum).max(P_FLOOR)
                };
            }
        }

        let exaggeration = if iter < cfg.exaggeration_iters {
            cfg.early_exaggeration
        } else {
            1.0
        };
        let momentum = if iter < cfg.momentum_switch_iter {
            cfg.momentum_initial
        } else {
            cfg.momentum_final
        };

        for i in 0..n {
            let mut g = [0.0f64; 2];
            for j in 0..n {
                if i == j {
                    continue;
                }
                let coeff = 4.0 * (exaggeration * p.at(i, j) - q.at(i, j)) * num.at(i, j);
                g[0] += coeff * (y[i][0] - y[j][0]);
                g[1] += coeff * (y[i][1] - y[j][1]);
            }
            velocity[i][0] = momentum * velocity[i][0] - cfg.learning_rate * g[0];
            velocity[i][1] = momentum * velocity[i][1] - cfg.learning_rate * g[1];
        }
        let mut mean = [0.0f64; 2];
        for i in 0..n {
            y[i][0] += velocity[i][0];
            y[i][1] += velocity[i][1];
            mean[0] += y[i][0];
            mean[1] += y[i][1];
        }
        mean[0] /= n as f64;
        mean[1] /= n as f64;
        for yi in y.iter_mut() {
            yi[0] -= mean[0];
            yi[1] -= mean[1];
        }

        let track_kl = iter + 1 == cfg.exaggeration_iters
            || iter + 1 == cfg.iterations
            || iter % 50 == 0;
        if track_kl {
            let kl = kl_divergence(&p, &q);
            if !kl.is_finite() {
                return Err(Error::Numerical {
                    algorithm: "tsne",
                    iteration: iter,
                    message: "KL divergence became non-finite".into(),
                });
            }
            if iter + 1 == cfg.exaggeration_iters {
                kl_post_exaggeration = kl;
            }
            if iter + 1 == cfg.iterations {
                kl_final = kl;
            }
        }
    }

    let proj = Projection {
        coords: y,
        algorithm: Algorithm::Tsne,
        seed: Some(cfg.seed),
        explained: None,
        row_ids: x.row_ids().to_vec(),
        set_labels: x.row_sets().to_vec(),
    };
    proj.check_finite("tsne")?;
    Ok((
        proj,
        TsneTrace {
            kl_post_exaggeration,
            kl_final,
        },
    ))
}
