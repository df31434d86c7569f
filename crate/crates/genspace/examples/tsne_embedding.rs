//! Embed a clustered corpus with exact t-SNE and report the KL divergence
//! before and after the fine-tuning phase.
//!
//! Run with: cargo run --release --example tsne_embedding

use genspace::dimred::{fit_tsne_traced, TsneConfig};
use genspace::encode::encode_onehot;
use genspace::synthgen::{generate_cluster_corpus, ClusterTemplate, SynthSpec};

fn main() -> genspace::Result<()> {
    let empty = vec![0u8; 144];
    let walls: Vec<u8> = (0..144).map(|i| u8::from(i % 12 < 6)).collect();
    let corpus = generate_cluster_corpus(&SynthSpec {
        n_levels: 90,
        mutation_rate: 0.1,
        cluster_templates: vec![
            ClusterTemplate { name: "open".into(), cells: empty },
            ClusterTemplate { name: "walled".into(), cells: walls },
        ],
        ..SynthSpec::default()
    })?;

    let cfg = TsneConfig {
        perplexity: 20.0,
        iterations: 500,
        seed: 1,
        ..TsneConfig::default()
    };
    let (embedding, trace) = fit_tsne_traced(&encode_onehot(&corpus)?, &cfg)?;
    println!(
        "KL divergence: {:.4} after early exaggeration, {:.4} at the end",
        trace.kl_post_exaggeration, trace.kl_final
    );
    for (id, [x, y]) in embedding.row_ids.iter().zip(&embedding.coords).take(4) {
        println!("  {id}: ({x:+.2}, {y:+.2})");
    }
    Ok(())
}
