//! Runs both pipelines on random graphs and reports any disagreement.
//!
//! cargo run --example cross_check -- [seed] [trials] [max_vertices] [max_label]

use std::time::Instant;

use artin_kernels::fuzz::{fuzz, FuzzConfig};

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("numeric argument")).collect();
    let defaults = FuzzConfig::default();
    let config = FuzzConfig {
        seed: args.first().copied().unwrap_or(defaults.seed),
        trials: args.get(1).map_or(defaults.trials, |&t| t as usize),
        max_vertices: args.get(2).map_or(defaults.max_vertices, |&v| v as usize),
        max_label: args.get(3).map_or(defaults.max_label, |&l| l as i64),
    };
    let start = Instant::now();
    let summary = fuzz(&config);
    println!(
        "{} trials, {} failing, {:.1}s",
        summary.trials,
        summary.failures.len(),
        start.elapsed().as_secs_f64()
    );
    for failure in &summary.failures {
        println!("{}", serde_json::to_string(failure).expect("failures serialize"));
    }
}
