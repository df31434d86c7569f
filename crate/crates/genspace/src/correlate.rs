//! Pairwise series over all unordered level pairs, Spearman's rank
//! correlation with two-sided p-values, and multi-run aggregation.
//!
//! Pair order is fixed: (i, j) with i < j, lexicographic. Both series in a
//! correlation must come from the same level ordering; misalignment would
//! silently destroy the correlation.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::dimred::{Algorithm, Projection};
use crate::metrics::{BcKind, BcVector};
use crate::{Error, Result};

/// Number of unordered pairs for n items.
pub fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Fill a pair series chunk by chunk from a per-pair value function.
/// Exactly one output vector is materialized regardless of chunk size.
pub fn pair_series_chunked(
    n: usize,
    chunk: usize,
    mut f: impl FnMut(usize, usize) -> f64,
) -> Vec<f64> {
    let m = pair_count(n);
    let mut out = Vec::with_capacity(m);
    let mut buf = Vec::with_capacity(chunk.max(1));
    for i in 0..n {
        for j in (i + 1)..n {
            buf.push(f(i, j));
            if buf.len() == chunk {
                out.append(&mut buf);
            }
        }
    }
    out.append(&mut buf);
    out
}

/// Euclidean distance in 2D for every unordered pair of projected levels.
pub fn pairwise_projection_distance(p: &Projection) -> Vec<f64> {
    let coords = &p.coords;
    pair_series_chunked(coords.len(), 4096, |i, j| {
        let dx = coords[i][0] - coords[j][0];
        let dy = coords[i][1] - coords[j][1];
        (dx * dx + dy * dy).sqrt()
    })
}

/// |v_i − v_j| of one BC for every unordered pair, same canonical order.
pub fn pairwise_bc_difference(bcs: &[BcVector], bc: BcKind) -> Result<Vec<f64>> {
    let values: Vec<f64> = bcs
        .iter()
        .map(|b| {
            b.get(bc).ok_or_else(|| Error::MissingBc {
                bc: bc.name().to_string(),
                level_id: b.level_id.clone(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(pair_series_chunked(values.len(), 4096, |i, j| {
        (values[i] - values[j]).abs()
    }))
}

/// Midranks (1-based): tied values share the average of their rank span.
pub fn midranks(values: &[f64]) -> Vec<f64> {
    let m = values.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
    let mut ranks = vec![0.0; m];
    let mut i = 0;
    while i < m {
        let mut j = i;
        while j + 1 < m && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = avg;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman's ρ with a two-sided p-value from the t approximation
/// t = ρ·√((m−2)/(1−ρ²)) against Student's t with m−2 degrees of freedom.
/// ρ = ±1 maps to p = 0 exactly.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    assert_eq!(x.len(), y.len(), "series lengths must match");
    let m = x.len();
    if m < 3 {
        return Err(Error::Config(format!(
            "spearman requires at least 3 pairs, got {m}"
        )));
    }
    let rx = midranks(x);
    let ry = midranks(y);
    let rho = pearson(&rx, &ry)?;
    let p = if rho.abs() >= 1.0 - 1e-15 {
        0.0
    } else {
        let df = (m - 2) as f64;
        let t = rho * (df / (1.0 - rho * rho)).sqrt();
        student_t_two_sided_p(t, df)
    };
    Ok((rho, p))
}

fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    let m = x.len() as f64;
    let mx = x.iter().sum::<f64>() / m;
    let my = y.iter().sum::<f64>() / m;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (a, b) in x.iter().zip(y) {
        let dx = a - mx;
        let dy = b - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx <= 0.0 || syy <= 0.0 {
        return Err(Error::UndefinedCorrelation);
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Two-sided tail probability of Student's t, via the regularized
/// incomplete beta function: p = I_{df/(df+t²)}(df/2, 1/2).
pub fn student_t_two_sided_p(t: f64, df: f64) -> f64 {
    let x = df / (df + t * t);
    regularized_incomplete_beta(df / 2.0, 0.5, x)
}

/// Regularized incomplete beta I_x(a, b) via Lentz's continued fraction.
pub fn regularized_incomplete_beta(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let front =
        (ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * (1.0 - x).ln()).exp();
    // the continued fraction converges fast only on one side of the split
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_cf(a, b, x) / a
    } else {
        1.0 - front * beta_cf(b, a, 1.0 - x) / b
    }
}

fn beta_cf(a: f64, b: f64, x: f64) -> f64 {
    const MAX_ITER: usize = 300;
    const EPS: f64 = 1e-15;
    const FPMIN: f64 = 1e-300;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < FPMIN {
        d = FPMIN;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

/// Lanczos approximation of ln Γ(x), x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    const COEF: [f64; 6] = [
        76.18009172947146,
        -86.50532032941677,
        24.01409824083091,
        -1.231739572450155,
        0.1208650973866179e-2,
        -0.5395239384953e-5,
    ];
    let y = x;
    let tmp = x + 5.5;
    let tmp = tmp - (x + 0.5) * tmp.ln();
    let mut ser = 1.000000000190015;
    let mut y = y;
    for c in COEF {
        y += 1.0;
        ser += c / y;
    }
    -tmp + (2.5066282746310005 * ser / x).ln()
}

/// Mean and population standard deviation of ρ and p over runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunAggregate {
    pub mean_rho: f64,
    pub std_rho: f64,
    pub mean_p: f64,
    pub std_p: f64,
}

pub fn aggregate_runs(per_run: &[(f64, f64)]) -> Result<RunAggregate> {
    if per_run.is_empty() {
        return Err(Error::EmptyInput("no runs to aggregate"));
    }
    let n = per_run.len() as f64;
    let mean_rho = per_run.iter().map(|(r, _)| r).sum::<f64>() / n;
    let mean_p = per_run.iter().map(|(_, p)| p).sum::<f64>() / n;
    let std_rho = (per_run
        .iter()
        .map(|(r, _)| (r - mean_rho).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    let std_p = (per_run
        .iter()
        .map(|(_, p)| (p - mean_p).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    Ok(RunAggregate {
        mean_rho,
        std_rho,
        mean_p,
        std_p,
    })
}

/// Per-(algorithm, BC) correlation rows plus their aggregates.
#[derive(Debug, Clone)]
pub struct CorrelationReport {
    pub game: String,
    pub rows: Vec<ReportRow>,
}

#[derive(Debug, Clone)]
pub struct ReportRow {
    pub algorithm: Algorithm,
    pub bc: BcKind,
    /// (run_id, rho, p) per run, ordered by run id.
    pub runs: Vec<(usize, f64, f64)>,
    pub aggregate: RunAggregate,
}

impl CorrelationReport {
    /// Assemble from per-run results keyed by (algorithm, bc), sorted
    /// deterministically.
    pub fn assemble(
        game: &str,
        per_run: BTreeMap<(Algorithm, BcKind), Vec<(usize, f64, f64)>>,
    ) -> Result<CorrelationReport> {
        let mut rows = Vec::new();
        for ((algorithm, bc), mut runs) in per_run {
            runs.sort_by_key(|(run, _, _)| *run);
            let pairs: Vec<(f64, f64)> = runs.iter().map(|(_, r, p)| (*r, *p)).collect();
            let aggregate = aggregate_runs(&pairs)?;
            rows.push(ReportRow {
                algorithm,
                bc,
                runs,
                aggregate,
            });
        }
        Ok(CorrelationReport {
            game: game.to_string(),
            rows,
        })
    }

    /// Delimited dump: one line per (algorithm, bc, run) plus aggregate lines.
    pub fn to_delimited(&self) -> String {
        let mut out = String::from("game,algorithm,bc,run,rho,p\n");
        for row in &self.rows {
            for (run, rho, p) in &row.runs {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    self.game, row.algorithm, row.bc, run, rho, p
                )
                .unwrap();
            }
            writeln!(
                out,
                "{},{},{},aggregate,{}±{},{}±{}",
                self.game,
                row.algorithm,
                row.bc,
                row.aggregate.mean_rho,
                row.aggregate.std_rho,
                row.aggregate.mean_p,
                row.aggregate.std_p
            )
            .unwrap();
        }
        out
    }

    /// Aligned human-readable table: rows are BCs, columns are algorithms,
    /// each cell rho mean±std over p mean±std.
    pub fn to_table(&self) -> String {
        let mut algorithms: Vec<Algorithm> = self.rows.iter().map(|r| r.algorithm).collect();
        algorithms.sort();
        algorithms.dedup();
        let mut bcs: Vec<BcKind> = self.rows.iter().map(|r| r.bc).collect();
        bcs.sort();
        bcs.dedup();

        let cell = |alg: Algorithm, bc: BcKind| -> String {
            self.rows
                .iter()
                .find(|r| r.algorithm == alg && r.bc == bc)
                .map(|r| {
                    format!(
                        "{:.3}±{:.3} (p {:.3}±{:.3})",
                        r.aggregate.mean_rho,
                        r.aggregate.std_rho,
                        r.aggregate.mean_p,
                        r.aggregate.std_p
                    )
                })
                .unwrap_or_else(|| "-".to_string())
        };

        let mut widths: Vec<usize> = algorithms
            .iter()
            .map(|a| a.name().len().max(8))
            .collect();
        for (k, &alg) in algorithms.iter().enumerate() {
            for &bc in &bcs {
                widths[k] = widths[k].max(cell(alg, bc).len());
            }
        }
        let bc_w = bcs
            .iter()
            .map(|b| b.name().len())
            .max()
            .unwrap_or(2)
            .max(self.game.len());

        let mut out = String::new();
        write!(out, "{:<bc_w$}", self.game).unwrap();
        for (k, alg) in algorithms.iter().enumerate() {
            write!(out, "  {:<w$}", alg.name(), w = widths[k]).unwrap();
        }
        out.push('\n');
        for &bc in &bcs {
            write!(out, "{:<bc_w$}", bc.name()).unwrap();
            for (k, &alg) in algorithms.iter().enumerate() {
                write!(out, "  {:<w$}", cell(alg, bc), w = widths[k]).unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        let csv = dir.join("report.csv");
        fs::write(&csv, self.to_delimited()).map_err(|e| Error::io(&csv, e))?;
        let table = dir.join("report.txt");
        fs::write(&table, self.to_table()).map_err(|e| Error::io(&table, e))
    }
}
