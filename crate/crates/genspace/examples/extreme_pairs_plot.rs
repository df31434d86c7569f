//! Render a colorized scatter plot of a projection (SVG), annotate its most
//! proximal and most distant level pair, and dump those levels as tilemaps.
//!
//! Run with: cargo run --example extreme_pairs_plot

use genspace::dimred::fit_pca;
use genspace::encode::encode_onehot;
use genspace::report::{default_role_palette, find_extreme_pairs, write_level_tilemap, write_scatter, PlotSpec};
use genspace::synthgen::{generate_density_corpus, SynthSpec};
use std::path::Path;

fn main() -> genspace::Result<()> {
    let corpus = generate_density_corpus(&SynthSpec::default())?;
    let projection = fit_pca(&encode_onehot(&corpus)?)?;

    let extremes = find_extreme_pairs(&projection);
    println!(
        "closest pair:  {} and {} (distance {:.4})",
        extremes.closest.0, extremes.closest.1, extremes.closest.2
    );
    println!(
        "farthest pair: {} and {} (distance {:.4})",
        extremes.farthest.0, extremes.farthest.1, extremes.farthest.2
    );

    let out = Path::new("target/extreme_pairs");
    std::fs::create_dir_all(out).expect("create output directory");
    let spec = PlotSpec {
        projection: &projection,
        set_palette: None,
        annotate_extremes: true,
        title: "synthetic density corpus, PCA".into(),
    };
    write_scatter(&spec, &out.join("scatter.svg"))?;

    let palette = default_role_palette();
    for id in [&extremes.farthest.0, &extremes.farthest.1] {
        let level = corpus
            .levels()
            .iter()
            .find(|l| l.level_id() == id)
            .expect("extreme pair ids come from the corpus");
        let name = id.replace('/', "_");
        write_level_tilemap(level, corpus.alphabet(), &palette, &out.join(format!("{name}.svg")))?;
    }
    println!("wrote scatter + tilemaps to {}", out.display());
    Ok(())
}
