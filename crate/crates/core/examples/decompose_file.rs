//! Reads a graph with a character from JSON or DOT and prints the report.
//!
//! cargo run --example decompose_file -- path/to/input.json [json]
//!
//! Without a path, a small DOT graph is decomposed instead.

use artin_kernels::io::{parse_input, to_json_input};
use artin_kernels::report::{decompose, emit_report, JobSpec, OutputFormat};

const SAMPLE: &str = "graph {
    a [n=1]; b [n=2]; c [n=2]; d [n=3];
    a -- b -- c -- a;
    c -- d;
}";

fn main() -> artin_kernels::Result<()> {
    let mut args = std::env::args().skip(1);
    let bytes = match args.next() {
        Some(path) => std::fs::read(&path).map_err(|e| artin_kernels::Error::Argument(format!("{path}: {e}")))?,
        None => SAMPLE.as_bytes().to_vec(),
    };
    let format = match args.next().as_deref() {
        Some(f) => f.parse()?,
        None => OutputFormat::Text,
    };
    let (graph, chi) = parse_input(&bytes)?;
    if bytes == SAMPLE.as_bytes() {
        print!("{}", to_json_input(&graph, &chi, Some("sample")));
    }
    let report = decompose(&graph, &chi, &JobSpec::default(), &bytes)?;
    print!("{}", emit_report(&report, format));
    std::process::exit(report.exit_code());
}
