//! Principal component analysis: thin SVD of the column-centered matrix.

use crate::encode::DesignMatrix;
use crate::linalg::{truncated_svd, Mat};
use crate::{Error, Result};

use super::{apply_sign_convention, principal_coords, rank_below_two, Algorithm, Projection};

/// Mean-center the columns of X, take the thin SVD of the centered matrix,
/// and return coords = U·Σ (first two components). explained[k] = σ_k²/(n−1).
pub fn fit_pca(x: &DesignMatrix) -> Result<Projection> {
    let (n, d) = (x.n_rows(), x.n_cols());
    if n < 3 {
        return Err(Error::Config(format!("pca requires n >= 3, got {n}")));
    }
    if d < 2 {
        return Err(Error::Config(format!("pca requires d >= 2, got {d}")));
    }

    let mut means = vec![0.0f64; d];
    for i in 0..n {
        for (m, v) in means.iter_mut().zip(x.row(i)) {
            *m += v;
        }
    }
    for m in &mut means {
        *m /= n as f64;
    }
    let centered = Mat::from_fn(n, d, |i, j| x.get(i, j) - means[j]);

    let svd = truncated_svd(&centered, 2);
    if rank_below_two(&svd.singular) {
        return Err(Error::DegenerateRank { algorithm: "pca" });
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
        algorithm: Algorithm::Pca,
        seed: None,
        explained: Some(explained),
        row_ids: x.row_ids().to_vec(),
        set_labels: x.row_sets().to_vec(),
    };
    proj.check_finite("pca")?;
    Ok(proj)
}
