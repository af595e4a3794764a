use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use artin_kernels::fixtures::check_goldens;
use artin_kernels::fuzz::{fuzz, FuzzConfig};
use artin_kernels::report::{emit_report, exit_code_for, run, JobSpec, Method, OutputFormat};
use artin_kernels::{Error, Result};
use clap::{Args, Parser, Subcommand};

/// Module structure of the homology of Artin kernels over K[t±1].
#[derive(Parser)]
#[command(name = "artin-kernels", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose the homology of one graph with a character.
    Decompose(DecomposeArgs),
    /// Same as `decompose --method both`; exits with 2 if the pipelines disagree.
    Check(DecomposeArgs),
    /// Compare the bundled fixtures against their expected reports.
    Fixtures(FixturesArgs),
    /// Cross-check both pipelines on random graphs.
    Fuzz(FuzzArgs),
}

#[derive(Args)]
struct DecomposeArgs {
    /// Input file, JSON or DOT.
    #[arg(long)]
    input: PathBuf,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value = "text")]
    format: OutputFormat,
    #[arg(long, default_value = "both")]
    method: Method,
    #[arg(long)]
    max_degree: Option<usize>,
    /// Torsion orders to report, comma separated.
    #[arg(long = "d", value_delimiter = ',')]
    d: Option<Vec<u64>>,
    /// Run the direct pipeline on resonant or otherwise non-standard characters.
    #[arg(long)]
    allow_resonant: bool,
}

#[derive(Args)]
struct FixturesArgs {
    /// Directory holding `<name>.json` and `<name>.expected.json`.
    #[arg(long, default_value = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures"))]
    input: PathBuf,
    /// Regenerate the input and expected files instead of checking them.
    #[arg(long)]
    write: bool,
}

#[derive(Args)]
struct FuzzArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, alias = "vertices", default_value_t = 7)]
    max_vertices: usize,
    #[arg(long, default_value_t = 12)]
    max_label: i64,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value = "text")]
    format: OutputFormat,
}

fn write_out(path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Argument(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Error::Argument(e.to_string())),
    }
}

fn decompose(args: DecomposeArgs, method: Method) -> Result<i32> {
    let job = JobSpec {
        input: args.input,
        max_degree: args.max_degree,
        d_filter: args.d,
        method,
        allow_resonant: args.allow_resonant,
        format: args.format,
        seed: 0,
    };
    let report = run(&job)?;
    write_out(args.output.as_ref(), &emit_report(&report, job.format))?;
    Ok(report.exit_code())
}

fn fixtures(args: FixturesArgs) -> Result<i32> {
    let outcomes = check_goldens(&args.input, args.write)?;
    for o in &outcomes {
        println!("{} {}: {}", if o.passed { "ok  " } else { "FAIL" }, o.name, o.detail);
    }
    Ok(if outcomes.iter().all(|o| o.passed) { 0 } else { 2 })
}

fn run_fuzz(args: FuzzArgs) -> Result<i32> {
    let summary = fuzz(&FuzzConfig {
        seed: args.seed,
        trials: args.trials,
        max_vertices: args.max_vertices,
        max_label: args.max_label,
    });
    let text = match args.format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&summary).expect("summaries serialize");
            s.push('\n');
            s
        }
        OutputFormat::Text => {
            let mut s = format!("{} trials, {} failing\n", summary.trials, summary.failures.len());
            for f in &summary.failures {
                s.push_str(&format!("trial {}: n = {:?}, edges {:?}\n", f.trial, f.character, f.edges));
                for line in &f.findings {
                    s.push_str(&format!("  {line}\n"));
                }
            }
            s
        }
    };
    write_out(args.output.as_ref(), &text)?;
    Ok(if summary.failures.is_empty() { 0 } else { 2 })
}

fn main() -> ExitCode {
    // Exit code 2 is reserved for disagreements, so usage errors map to 1.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(u8::from(e.use_stderr()));
        }
    };
    let result = match cli.command {
        Command::Decompose(a) => {
            let method = a.method;
            decompose(a, method)
        }
        Command::Check(a) => decompose(a, Method::Both),
        Command::Fixtures(a) => fixtures(a),
        Command::Fuzz(a) => run_fuzz(a),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e) as u8)
        }
    }
}
