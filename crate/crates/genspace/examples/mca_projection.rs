//! Project a two-generator corpus with multiple correspondence analysis and
//! show that the generators occupy separate regions of the plane.
//!
//! Run with: cargo run --example mca_projection

use genspace::dimred::fit_mca;
use genspace::encode::encode_categorical;
use genspace::synthgen::{generate_cluster_corpus, ClusterTemplate, SynthSpec};

fn main() -> genspace::Result<()> {
    let solid = vec![1u8; 144];
    let checker: Vec<u8> = (0..144).map(|i| ((i / 12 + i % 12) % 2) as u8).collect();
    let corpus = generate_cluster_corpus(&SynthSpec {
        n_levels: 60,
        mutation_rate: 0.08,
        cluster_templates: vec![
            ClusterTemplate { name: "solid".into(), cells: solid },
            ClusterTemplate { name: "checker".into(), cells: checker },
        ],
        ..SynthSpec::default()
    })?;

    let projection = fit_mca(&encode_categorical(&corpus)?)?;
    let [i1, i2] = projection.explained.expect("MCA reports inertia shares");
    println!("inertia shares: {:.1}% / {:.1}%", 100.0 * i1, 100.0 * i2);

    for set in ["solid", "checker"] {
        let pts: Vec<&[f64; 2]> = projection
            .coords
            .iter()
            .zip(&projection.set_labels)
            .filter(|(_, label)| label.as_str() == set)
            .map(|(c, _)| c)
            .collect();
        let n = pts.len() as f64;
        let cx = pts.iter().map(|c| c[0]).sum::<f64>() / n;
        let cy = pts.iter().map(|c| c[1]).sum::<f64>() / n;
        println!("{set}: {} levels, centroid ({cx:+.3}, {cy:+.3})", pts.len());
    }
    Ok(())
}
