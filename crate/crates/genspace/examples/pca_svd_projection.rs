//! Compress a corpus to 2D with PCA and truncated SVD and compare the
//! explained variance of the leading components.
//!
//! Run with: cargo run --example pca_svd_projection

use genspace::dimred::{fit_pca, fit_svd};
use genspace::encode::encode_onehot;
use genspace::synthgen::{generate_density_corpus, SynthSpec};

fn main() -> genspace::Result<()> {
    let corpus = generate_density_corpus(&SynthSpec::default())?;
    let onehot = encode_onehot(&corpus)?;

    for (name, projection) in [("PCA", fit_pca(&onehot)?), ("SVD", fit_svd(&onehot)?)] {
        let [e1, e2] = projection.explained.expect("linear reducers report explained variance");
        println!("{name}: component variances {e1:.3} / {e2:.3}");
        for (id, [x, y]) in projection.row_ids.iter().zip(&projection.coords).take(3) {
            println!("  {id}: ({x:+.3}, {y:+.3})");
        }
    }
    Ok(())
}
