//! Truncated SVD of the raw (uncentered) design matrix.

use crate::encode::DesignMatrix;
use crate::linalg::{truncated_svd, Mat};
use crate::{Error, Result};

use super::{apply_sign_convention, principal_coords, rank_below_two, Algorithm, Projection};

/// Thin SVD of the raw matrix; coords = U·Σ (first two components).
/// Identical to PCA except the columns are not centered first.
/// explained[k] = σ_k²/(n−1), the variance of the k-th coordinate column
/// around zero.
pub fn fit_svd(x: &DesignMatrix) -> Result<Projection> {
    let n = x.n_rows();
    if n < 3 {
        return Err(Error::Config(format!("svd requires n >= 3, got {n}")));
    }
    let mat = Mat::from_vec(x.values().to_vec(), n, x.n_cols());
    let svd = truncated_svd(&mat, 2);
    if rank_below_two(&svd.singular) {
        return Err(Error::DegenerateRank { algorithm: "svd" });
    }
    let mut coords = principal_coords(&svd, n);
    apply_sign_convention(&mut coords, &svd);

    let denom = (n - 1) as f64;
    let explained = [
        svd.singular[0] * svd.singular[0] / denom,
        svd.singular[1] * svd.singular[1] / denom,
    ];

    let proj = Projection {
        coords,
        algorithm: Algorithm::Svd,
        seed: None,
        explained: Some(explained),
        row_ids: x.row_ids().to_vec(),
        set_labels: x.row_sets().to_vec(),
    };
    proj.check_finite("svd")?;
    Ok(proj)
}
