//! Runs the full construction pipeline for one seed and prints the
//! per-stage wall-clock breakdown plus the JSON report.
//!
//! Usage: `cargo run --release --example run_one -- [seed]`

use std::time::Instant;

use ulrich::pipeline::{run_pipeline, PipelineConfig};

fn main() {
    let seed: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);
    let cfg = PipelineConfig {
        seed,
        progress: true,
        ..PipelineConfig::default()
    };
    let t0 = Instant::now();
    match run_pipeline(&cfg) {
        Ok(run) => {
            eprintln!("total: {:.1?}s", t0.elapsed().as_secs_f64());
            println!("{}", run.report.to_json_string());
            eprintln!(
                "verdict: {} (artifacts: {})",
                if run.report.verdict() { "pass" } else { "fail" },
                run.artifacts.is_some()
            );
        }
        Err(e) => {
            eprintln!("error after {:.1?}s: {e}", t0.elapsed().as_secs_f64());
            std::process::exit(1);
        }
    }
}
