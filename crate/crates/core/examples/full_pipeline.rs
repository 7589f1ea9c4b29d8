//! Run every stage on the bundled fixture and list the report files.
//!
//! cargo run --example full_pipeline [REPORT_DIR]

use std::path::{Path, PathBuf};

use ackmine::pipeline::{run_pipeline, PipelineConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut config = PipelineConfig::from_path(&dir.join("config.toml"))?;
    config.report_dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("ackmine-example-report"));

    let manifest = run_pipeline(&config)?;
    println!("{:?}: {:?}", manifest.status, manifest.counts.disambiguation);
    for f in &manifest.outputs {
        println!("{}", config.report_dir.join(f).display());
    }
    Ok(())
}
