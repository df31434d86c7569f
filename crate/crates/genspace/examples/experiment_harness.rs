//! Run the whole config-driven experiment harness in-process: multiple
//! seeded runs, all four reducers, parallel workers, CSV/SVG artifacts and
//! an aggregated correlation report.
//!
//! Run with: cargo run --release --example experiment_harness

use genspace::config::ExperimentConfig;
use genspace::experiment::run_experiment;

const CONFIG: &str = r#"
game = "synthetic"
algorithms = ["pca", "svd", "mca"]
runs = 3
sample_size = 100
base_seed = 11
workers = 2
output_dir = "target/experiment_demo"

[synthetic]
height = 10
width = 10
n_levels = 150
"#;

fn main() -> genspace::Result<()> {
    let cfg = ExperimentConfig::from_toml(CONFIG)?;
    let report = run_experiment(&cfg)?;
    print!("{}", report.to_table());
    println!("artifacts written to {}", cfg.output_dir.display());
    Ok(())
}
