//! Turn a corpus into the two design matrices the reducers consume:
//! categorical (one column per cell) and one-hot (one column per
//! cell/tile-type pair), then invert the encoding.
//!
//! Run with: cargo run --example encode_levels

use genspace::encode::{decode, encode_categorical, encode_onehot};
use genspace::synthgen::{generate_density_corpus, SynthSpec};

fn main() -> genspace::Result<()> {
    let corpus = generate_density_corpus(&SynthSpec {
        n_levels: 3,
        height: 4,
        width: 5,
        ..SynthSpec::default()
    })?;

    let categorical = encode_categorical(&corpus)?;
    let onehot = encode_onehot(&corpus)?;
    println!(
        "categorical: {}×{} (H·W columns)",
        categorical.n_rows(),
        categorical.n_cols()
    );
    println!(
        "one-hot:     {}×{} (H·W·T columns)",
        onehot.n_rows(),
        onehot.n_cols()
    );

    println!("first categorical row: {:?}", categorical.row(0));
    let block: Vec<f64> = onehot.row(0)[..3 * corpus.alphabet().len()].to_vec();
    println!("first three one-hot blocks of row 0: {block:?}");

    // Both encodings carry enough structure to reconstruct the levels.
    for matrix in [&categorical, &onehot] {
        let levels = decode(matrix, corpus.alphabet())?;
        assert_eq!(levels[0].cells(), corpus.levels()[0].cells());
    }
    println!("decode(encode(corpus)) reproduces every level");
    Ok(())
}
