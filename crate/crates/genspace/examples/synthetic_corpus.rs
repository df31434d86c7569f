//! Generate the two built-in synthetic corpora: a density sweep (levels of
//! varying solid-tile density) and a two-template cluster corpus.
//!
//! Run with: cargo run --example synthetic_corpus

use genspace::synthgen::{generate_cluster_corpus, generate_density_corpus, ClusterTemplate, SynthSpec};

fn main() -> genspace::Result<()> {
    let density = generate_density_corpus(&SynthSpec {
        n_levels: 6,
        height: 6,
        width: 6,
        ..SynthSpec::default()
    })?;
    println!("density corpus: {} levels", density.len());
    for level in density.levels().iter().take(2) {
        println!("--- {} ---\n{}", level.level_id(), level.to_text(density.alphabet()));
    }

    let rooms: Vec<u8> = (0..36)
        .map(|i| u8::from(i / 6 == 0 || i / 6 == 5 || i % 6 == 0 || i % 6 == 5))
        .collect();
    let stripes: Vec<u8> = (0..36).map(|i| ((i % 6) % 2) as u8).collect();
    let clusters = generate_cluster_corpus(&SynthSpec {
        n_levels: 4,
        height: 6,
        width: 6,
        mutation_rate: 0.1,
        cluster_templates: vec![
            ClusterTemplate { name: "rooms".into(), cells: rooms },
            ClusterTemplate { name: "stripes".into(), cells: stripes },
        ],
        ..SynthSpec::default()
    })?;
    println!("cluster corpus: {} levels over sets {:?}", clusters.len(), clusters.sets());
    for level in clusters.levels() {
        println!("--- {} ---\n{}", level.level_id(), level.to_text(clusters.alphabet()));
    }
    Ok(())
}
