//! Minimal dense linear algebra: a row-major matrix, a cyclic Jacobi
//! eigensolver for symmetric matrices, and a truncated SVD that routes
//! through the smaller of the two Gram matrices (n×n vs d×d).

/// Row-major dense matrix of f64.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    data: Vec<f64>,
    rows: usize,
    cols: usize,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            data: vec![0.0; rows * cols],
            rows,
            cols,
        }
    }

    pub fn from_vec(data: Vec<f64>, rows: usize, cols: usize) -> Self {
        assert_eq!(data.len(), rows * cols);
        Mat { data, rows, cols }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { data, rows, cols }
    }

    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum()
    }

    /// Gram matrix X·Xᵀ (rows × rows).
    pub fn gram_rows(&self) -> Mat {
        let n = self.rows;
        let mut g = Mat::zeros(n, n);
        for i in 0..n {
            let ri = self.row(i);
            for j in i..n {
                let rj = self.row(j);
                let dot: f64 = ri.iter().zip(rj).map(|(a, b)| a * b).sum();
                *g.at_mut(i, j) = dot;
                *g.at_mut(j, i) = dot;
            }
        }
        g
    }

    /// Gram matrix Xᵀ·X (cols × cols).
    pub fn gram_cols(&self) -> Mat {
        let d = self.cols;
        let mut g = Mat::zeros(d, d);
        for row in 0..self.rows {
            let r = self.row(row);
            for i in 0..d {
                let ri = r[i];
                if ri == 0.0 {
                    continue;
                }
                for j in i..d {
                    *g.at_mut(i, j) += ri * r[j];
                }
            }
        }
        for i in 0..d {
            for j in 0..i {
                *g.at_mut(i, j) = g.at(j, i);
            }
        }
        g
    }
}

/// Eigendecomposition of a symmetric matrix via cyclic Jacobi rotations.
/// Returns eigenvalues in descending order with matching eigenvector columns.
pub fn jacobi_eigh(a: &Mat) -> (Vec<f64>, Mat) {
    assert_eq!(a.rows, a.cols, "jacobi_eigh needs a square matrix");
    let n = a.rows;
    let mut m = a.clone();
    let mut v = Mat::identity(n);
    let scale = a.frobenius_sq().sqrt().max(1.0);
    let tol = 1e-15 * scale;
    let max_sweeps = 64;

    for _ in 0..max_sweeps {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                off += m.at(i, j).abs();
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m.at(p, q);
                if apq.abs() <= 1e-18 * scale {
                    continue;
                }
                let app = m.at(p, p);
                let aqq = m.at(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                // smaller-angle root for numerical stability
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m.at(k, p);
                    let mkq = m.at(k, q);
                    *m.at_mut(k, p) = c * mkp - s * mkq;
                    *m.at_mut(k, q) = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m.at(p, k);
                    let mqk = m.at(q, k);
                    *m.at_mut(p, k) = c * mpk - s * mqk;
                    *m.at_mut(q, k) = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v.at(k, p);
                    let vkq = v.at(k, q);
                    *v.at_mut(k, p) = c * vkp - s * vkq;
                    *v.at_mut(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m.at(j, j).partial_cmp(&m.at(i, i)).unwrap());
    let eigvals: Vec<f64> = order.iter().map(|&i| m.at(i, i)).collect();
    let eigvecs = Mat::from_fn(n, n, |i, j| v.at(i, order[j]));
    (eigvals, eigvecs)
}

/// Truncated SVD X ≈ U_k Σ_k V_kᵀ, top-k components.
pub struct TruncatedSvd {
    /// Top-k singular values, descending.
    pub singular: Vec<f64>,
    /// n×k left singular vectors.
    pub u: Mat,
    /// d×k right singular vectors.
    pub v: Mat,
    /// ‖X‖²_F = Σ over all σ², the explained-inertia denominator.
    pub total_sq: f64,
}

/// Compute the top-k SVD by eigendecomposing the smaller Gram matrix:
/// X·Xᵀ when n ≤ d, Xᵀ·X otherwise. Identical results either way.
pub fn truncated_svd(x: &Mat, k: usize) -> TruncatedSvd {
    let (n, d) = (x.rows, x.cols);
    let k = k.min(n).min(d);
    let total_sq = x.frobenius_sq();
    let sigma_floor = 1e-12 * total_sq.sqrt().max(1.0);

    if n <= d {
        let (eigvals, eigvecs) = jacobi_eigh(&x.gram_rows());
        let singular: Vec<f64> = eigvals[..k].iter().map(|&l| l.max(0.0).sqrt()).collect();
        let u = Mat::from_fn(n, k, |i, j| eigvecs.at(i, j));
        let mut v = Mat::zeros(d, k);
        for j in 0..k {
            if singular[j] <= sigma_floor {
                continue;
            }
            for col in 0..d {
                let mut acc = 0.0;
                for row in 0..n {
                    acc += x.at(row, col) * u.at(row, j);
                }
                *v.at_mut(col, j) = acc / singular[j];
            }
        }
        TruncatedSvd {
            singular,
            u,
            v,
            total_sq,
        }
    } else {
        let (eigvals, eigvecs) = jacobi_eigh(&x.gram_cols());
        let singular: Vec<f64> = eigvals[..k].iter().map(|&l| l.max(0.0).sqrt()).collect();
        let v = Mat::from_fn(d, k, |i, j| eigvecs.at(i, j));
        let mut u = Mat::zeros(n, k);
        for j in 0..k {
            if singular[j] <= sigma_floor {
                continue;
            }
            for row in 0..n {
                let mut acc = 0.0;
                let xr = x.row(row);
                for col in 0..d {
                    acc += xr[col] * v.at(col, j);
                }
                *u.at_mut(row, j) = acc / singular[j];
            }
        }
        TruncatedSvd {
            singular,
            u,
            v,
            total_sq,
        }
    }
}
