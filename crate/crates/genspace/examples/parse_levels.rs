//! Parse a small hand-written corpus from text, print its stats and the
//! per-level behavioral characteristics.
//!
//! Run with: cargo run --example parse_levels

use genspace::corpus::{mario_alphabet, LevelCorpus, LevelGrid};
use genspace::metrics::{bc_profile, BcProfile};

const LEVELS: [(&str, &str); 3] = [
    (
        "flat",
        "--------\n\
         --------\n\
         ---E----\n\
         XXXXXXXX\n",
    ),
    (
        "pipes",
        "--------\n\
         --PP----\n\
         --PP--E-\n\
         XXXXXXXX\n",
    ),
    (
        "rewards",
        "--R--R--\n\
         --------\n\
         -E----E-\n\
         XXXXXXXX\n",
    ),
];

fn main() -> genspace::Result<()> {
    let alphabet = mario_alphabet();
    let grids = LEVELS
        .iter()
        .map(|(name, text)| {
            let cells = text
                .lines()
                .flat_map(|row| row.chars())
                .map(|c| alphabet.index_of(c).expect("symbol in alphabet") as u8)
                .collect();
            LevelGrid::new(cells, 4, 8, "demo".into(), format!("demo/{name}"))
        })
        .collect();
    let corpus = LevelCorpus::new(alphabet, grids)?;

    println!(
        "{} levels, {}×{}, {} tile types",
        corpus.len(),
        corpus.height(),
        corpus.width(),
        corpus.alphabet().len()
    );
    for vector in bc_profile(&corpus, &BcProfile::mario())? {
        print!("{:14}", vector.level_id);
        for (bc, value) in &vector.values {
            print!("  {bc}={value}");
        }
        println!();
    }
    Ok(())
}
