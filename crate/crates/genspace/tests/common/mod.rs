//! Independent oracles used by the acceptance suite. Everything here is
//! implemented from first principles, separately from the library code it
//! checks: a one-sided Jacobi SVD, a covariance eigensolver route for PCA,
//! a direct correspondence-analysis pipeline, counting-based midranks,
//! a quadrature-based Student-t tail, and the classic perplexity search.

#![allow(dead_code)]

/// One-sided (Hestenes) Jacobi SVD on a column-major copy of A (n×d).
/// Returns (singular values desc, U columns, V columns).
pub fn jacobi_svd_oracle(a: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let n = a.len();
    let d = a[0].len();
    // b[j] is the j-th column
    let mut b: Vec<Vec<f64>> = (0..d).map(|j| (0..n).map(|i| a[i][j]).collect()).collect();
    let mut v: Vec<Vec<f64>> = (0..d)
        .map(|j| (0..d).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let dot = |x: &[f64], y: &[f64]| -> f64 { x.iter().zip(y).map(|(p, q)| p * q).sum() };
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..d {
            for q in (p + 1)..d {
                let alpha = dot(&b[p], &b[p]);
                let beta = dot(&b[q], &b[q]);
                let gamma = dot(&b[p], &b[q]);
                if gamma.abs() <= 1e-15 * (alpha * beta).sqrt().max(1e-300) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..n {
                    let bp = b[p][i];
                    let bq = b[q][i];
                    b[p][i] = c * bp - s * bq;
                    b[q][i] = s * bp + c * bq;
                }
                for i in 0..d {
                    let vp = v[p][i];
                    let vq = v[q][i];
                    v[p][i] = c * vp - s * vq;
                    v[q][i] = s * vp + c * vq;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut cols: Vec<(f64, Vec<f64>, Vec<f64>)> = (0..d)
        .map(|j| {
            let norm = dot(&b[j], &b[j]).sqrt();
            let u = if norm > 1e-300 {
                b[j].iter().map(|x| x / norm).collect()
            } else {
                vec![0.0; n]
            };
            (norm, u, v[j].clone())
        })
        .collect();
    cols.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap());
    let sv = cols.iter().map(|c| c.0).collect();
    let u = cols.iter().map(|c| c.1.clone()).collect();
    let vv = cols.iter().map(|c| c.2.clone()).collect();
    (sv, u, vv)
}

/// PCA oracle: eigendecompose the d×d covariance of the centered data
/// (via the one-sided Jacobi SVD of the symmetric covariance), then score
/// the centered rows on the top-2 eigenvectors.
pub fn pca_oracle(x: &[Vec<f64>]) -> (Vec<[f64; 2]>, [f64; 2]) {
    let n = x.len();
    let d = x[0].len();
    let mut means = vec![0.0; d];
    for row in x {
        for (m, v) in means.iter_mut().zip(row) {
            *m += v;
        }
    }
    for m in &mut means {
        *m /= n as f64;
    }
    let xc: Vec<Vec<f64>> = x
        .iter()
        .map(|row| row.iter().zip(&means).map(|(v, m)| v - m).collect())
        .collect();
    let mut cov = vec![vec![0.0; d]; d];
    for row in &xc {
        for i in 0..d {
            for j in 0..d {
                cov[i][j] += row[i] * row[j] / (n as f64 - 1.0);
            }
        }
    }
    let (eigvals, _, eigvecs) = jacobi_svd_oracle(&cov);
    let coords: Vec<[f64; 2]> = xc
        .iter()
        .map(|row| {
            [
                row.iter().zip(&eigvecs[0]).map(|(a, b)| a * b).sum(),
                row.iter().zip(&eigvecs[1]).map(|(a, b)| a * b).sum(),
            ]
        })
        .collect();
    (coords, [eigvals[0], eigvals[1]])
}

/// Correspondence-analysis oracle on an explicit indicator matrix:
/// masses → standardized residuals → SVD → row principal coordinates.
pub fn ca_oracle(indicator: &[Vec<f64>]) -> Vec<[f64; 2]> {
    let n = indicator.len();
    let m = indicator[0].len();
    let grand: f64 = indicator.iter().flatten().sum();
    let r: Vec<f64> = indicator
        .iter()
        .map(|row| row.iter().sum::<f64>() / grand)
        .collect();
    let c: Vec<f64> = (0..m)
        .map(|j| indicator.iter().map(|row| row[j]).sum::<f64>() / grand)
        .collect();
    let s: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let p = indicator[i][j] / grand;
                    (p - r[i] * c[j]) / (r[i] * c[j]).sqrt()
                })
                .collect()
        })
        .collect();
    let (sv, u, _) = jacobi_svd_oracle(&s);
    (0..n)
        .map(|i| {
            [
                u[0][i] * sv[0] / r[i].sqrt(),
                u[1][i] * sv[1] / r[i].sqrt(),
            ]
        })
        .collect()
}

/// Build an indicator matrix over observed categories, fresh implementation.
pub fn indicator_oracle(categorical: &[Vec<usize>]) -> Vec<Vec<f64>> {
    let n = categorical.len();
    let d = categorical[0].len();
    let mut columns: Vec<Vec<usize>> = Vec::new();
    for j in 0..d {
        let mut cats: Vec<usize> = (0..n).map(|i| categorical[i][j]).collect();
        cats.sort_unstable();
        cats.dedup();
        columns.push(cats);
    }
    let total: usize = columns.iter().map(|c| c.len()).sum();
    let mut z = vec![vec![0.0; total]; n];
    for i in 0..n {
        let mut offset = 0;
        for j in 0..d {
            let k = columns[j]
                .iter()
                .position(|&c| c == categorical[i][j])
                .unwrap();
            z[i][offset + k] = 1.0;
            offset += columns[j].len();
        }
    }
    z
}

/// O(m²) counting midranks: rank_i = #less + (#equal + 1)/2.
pub fn midranks_counting(values: &[f64]) -> Vec<f64> {
    values
        .iter()
        .map(|&v| {
            let less = values.iter().filter(|&&w| w < v).count() as f64;
            let equal = values.iter().filter(|&&w| w == v).count() as f64;
            less + (equal + 1.0) / 2.0
        })
        .collect()
}

/// Two-sided Student-t tail by numerical integration. With x = √df·tan(u)
/// the kernel (1 + x²/df)^(−(df+1)/2) dx becomes √df·cos(u)^(df−1) du, so
/// p = ∫_{u0}^{π/2} cos^(df−1) / ∫_0^{π/2} cos^(df−1), u0 = atan(|t|/√df).
pub fn t_two_sided_quadrature(t: f64, df: f64) -> f64 {
    let u0 = (t.abs() / df.sqrt()).atan();
    let f = |u: f64| u.cos().powf(df - 1.0);
    let tail = simpson(f, u0, std::f64::consts::FRAC_PI_2, 40_000);
    let half = simpson(f, 0.0, std::f64::consts::FRAC_PI_2, 40_000);
    tail / half
}

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = if n % 2 == 0 { n } else { n + 1 };
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + k as f64 * h);
    }
    acc * h / 3.0
}

/// Textbook Spearman: counting midranks + explicit Pearson + quadrature t tail.
pub fn spearman_oracle(x: &[f64], y: &[f64]) -> (f64, f64) {
    let rx = midranks_counting(x);
    let ry = midranks_counting(y);
    let m = x.len() as f64;
    let mx = rx.iter().sum::<f64>() / m;
    let my = ry.iter().sum::<f64>() / m;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (a, b) in rx.iter().zip(&ry) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    let rho = sxy / (sxx * syy).sqrt();
    let p = if rho.abs() >= 1.0 - 1e-15 {
        0.0
    } else {
        let df = m - 2.0;
        let t = rho * (df / (1.0 - rho * rho)).sqrt();
        t_two_sided_quadrature(t, df)
    };
    (rho, p)
}

/// Literal reference implementation of the classic t-SNE bandwidth search:
/// natural-log entropy, beta doubling/halving bracket, then bisection.
pub fn perplexity_search_oracle(d2: &[Vec<f64>], perplexity: f64) -> Vec<Vec<f64>> {
    let n = d2.len();
    let target = perplexity.ln();
    let mut p = vec![vec![0.0; n]; n];
    for i in 0..n {
        let mut beta = 1.0;
        let mut beta_min = f64::NEG_INFINITY;
        let mut beta_max = f64::INFINITY;
        let shift = (0..n)
            .filter(|&j| j != i)
            .map(|j| d2[i][j])
            .fold(f64::INFINITY, f64::min);
        let hbeta = |beta: f64| -> (f64, Vec<f64>) {
            let mut row = vec![0.0; n];
            let mut sum = 0.0;
            for j in 0..n {
                if j != i {
                    row[j] = (-(d2[i][j] - shift) * beta).exp();
                    sum += row[j];
                }
            }
            let mut h = 0.0;
            for j in 0..n {
                if j != i {
                    row[j] /= sum;
                    if row[j] > 0.0 {
                        h -= row[j] * row[j].ln();
                    }
                }
            }
            (h, row)
        };
        let (mut h, mut row) = hbeta(beta);
        for _ in 0..64 {
            if (h - target).abs() < 1e-12 {
                break;
            }
            if h > target {
                beta_min = beta;
                beta = if beta_max.is_finite() {
                    (beta + beta_max) / 2.0
                } else {
                    beta * 2.0
                };
            } else {
                beta_max = beta;
                beta = if beta_min.is_finite() {
                    (beta + beta_min) / 2.0
                } else {
                    beta / 2.0
                };
            }
            let r = hbeta(beta);
            h = r.0;
            row = r.1;
        }
        p[i] = row;
    }
    p
}
