//! The full question the toolkit answers, end to end: does a 2D compression
//! of a corpus preserve a behavioral characteristic? Projects a density
//! corpus with PCA and correlates pairwise projected distances against
//! pairwise empty-space differences with Spearman's ρ.
//!
//! Run with: cargo run --example correlate_pipeline

use genspace::correlate::{pairwise_bc_difference, pairwise_projection_distance, spearman};
use genspace::dimred::fit_pca;
use genspace::encode::encode_onehot;
use genspace::metrics::{bc_profile, BcKind, BcProfile};
use genspace::synthgen::{generate_density_corpus, SynthSpec};

fn main() -> genspace::Result<()> {
    let corpus = generate_density_corpus(&SynthSpec::default())?;
    let projection = fit_pca(&encode_onehot(&corpus)?)?;
    let bcs = bc_profile(&corpus, &BcProfile::synthetic())?;

    let distances = pairwise_projection_distance(&projection);
    println!("{} levels -> {} pairs", corpus.len(), distances.len());
    for bc in [BcKind::EmptySpace, BcKind::Linearity, BcKind::Contiguity] {
        let differences = pairwise_bc_difference(&bcs, bc)?;
        let (rho, p) = spearman(&distances, &differences)?;
        println!("{bc:12} rho = {rho:+.3}  (p = {p:.2e})");
    }
    Ok(())
}
