//! Multiple correspondence analysis on the categorical design matrix.
//!
//! The indicator matrix is built internally (never-observed categories are
//! dropped, since their column mass would make D_c^(−1/2) singular), then
//! standard correspondence analysis runs on it: masses, standardized
//! residuals, thin SVD, row principal coordinates D_r^(−1/2)·U·Σ.

use crate::encode::{DesignMatrix, EncodingKind};
use crate::linalg::{truncated_svd, Mat};
use crate::{Error, Result};

use super::{apply_sign_convention, rank_below_two, Algorithm, Projection};

/// Expand a categorical matrix into indicators over the observed categories
/// of each variable (cell position), in (variable, category) order.
pub fn indicator_matrix(x: &DesignMatrix) -> Mat {
    let (n, d) = (x.n_rows(), x.n_cols());
    // observed categories per variable, ascending
    let mut cats: Vec<Vec<usize>> = Vec::with_capacity(d);
    for j in 0..d {
        let mut seen: Vec<usize> = (0..n).map(|i| x.get(i, j) as usize).collect();
        seen.sort_unstable();
        seen.dedup();
        cats.push(seen);
    }
    let offsets: Vec<usize> = cats
        .iter()
        .scan(0usize, |acc, c| {
            let o = *acc;
            *acc += c.len();
            Some(o)
        })
        .collect();
    let total: usize = cats.iter().map(|c| c.len()).sum();
    let mut z = Mat::zeros(n, total);
    for i in 0..n {
        for j in 0..d {
            let v = x.get(i, j) as usize;
            let k = cats[j].binary_search(&v).expect("observed category");
            *z.at_mut(i, offsets[j] + k) = 1.0;
        }
    }
    z
}

/// Masses and standardized residuals of an indicator (or any nonnegative)
/// matrix: S = D_r^(−1/2)·(P − r·cᵀ)·D_c^(−1/2) with P = Z / grand total.
pub struct CaDecomposition {
    pub residuals: Mat,
    pub row_masses: Vec<f64>,
    pub col_masses: Vec<f64>,
}

pub fn standardized_residuals(z: &Mat) -> CaDecomposition {
    let (n, m) = (z.rows(), z.cols());
    let grand: f64 = z.data().iter().sum();
    let mut row_masses = vec![0.0; n];
    let mut col_masses = vec![0.0; m];
    for i in 0..n {
        for j in 0..m {
            let p = z.at(i, j) / grand;
            row_masses[i] += p;
            col_masses[j] += p;
        }
    }
    let residuals = Mat::from_fn(n, m, |i, j| {
        let p = z.at(i, j) / grand;
        (p - row_masses[i] * col_masses[j]) / (row_masses[i] * col_masses[j]).sqrt()
    });
    CaDecomposition {
        residuals,
        row_masses,
        col_masses,
    }
}

/// MCA row principal coordinates of a categorical design matrix.
/// explained[k] = σ_k² / Σ_j σ_j² (share of total inertia).
pub fn fit_mca(x: &DesignMatrix) -> Result<Projection> {
    if x.kind() != EncodingKind::Categorical {
        return Err(Error::Config(
            "mca consumes the categorical design matrix".into(),
        ));
    }
    let n = x.n_rows();
    if n < 3 {
        return Err(Error::Config(format!("mca requires n >= 3, got {n}")));
    }
    let z = indicator_matrix(x);
    let ca = standardized_residuals(&z);
    let svd = truncated_svd(&ca.residuals, 2);
    if rank_below_two(&svd.singular) {
        return Err(Error::DegenerateRank { algorithm: "mca" });
    }
    let mut coords: Vec<[f64; 2]> = (0..n)
        .map(|i| {
            let scale = 1.0 / ca.row_masses[i].sqrt();
            [
                scale * svd.u.at(i, 0) * svd.singular[0],
                scale * svd.u.at(i, 1) * svd.singular[1],
            ]
        })
        .collect();
    apply_sign_convention(&mut coords, &svd);

    // total inertia is the squared Frobenius norm of the residual matrix
    let explained = [
        svd.singular[0] * svd.singular[0] / svd.total_sq,
        svd.singular[1] * svd.singular[1] / svd.total_sq,
    ];

    let proj = Projection {
        coords,
        algorithm: Algorithm::Mca,
        seed: None,
        explained: Some(explained),
        row_ids: x.row_ids().to_vec(),
        set_labels: x.row_sets().to_vec(),
    };
    proj.check_finite("mca")?;
    Ok(proj)
}
