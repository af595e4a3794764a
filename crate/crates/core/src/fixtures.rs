//! The five worked examples shipped with the crate, as in-memory values.
//!
//! The same graphs are stored as JSON under `fixtures/` together with their
//! expected reports.

use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{Character, SimplicialGraph};
use crate::io::{parse_input, to_json_input};
use crate::report::{decompose, emit_report, JobSpec, Method, OutputFormat};

fn build(names: &[&str], edges: &[(&str, &str)], labels: &[i64]) -> (SimplicialGraph, Character) {
    let g = SimplicialGraph::new(names.iter().copied(), edges.iter().copied()).expect("fixture graph is valid");
    (g, Character::new(labels.to_vec()))
}

/// Linear tree on four vertices with labels `(18, 4, 12, 9)`.
pub fn tree() -> (SimplicialGraph, Character) {
    build(
        &["v0", "v1", "v2", "v3"],
        &[("v0", "v1"), ("v0", "v2"), ("v2", "v3")],
        &[18, 4, 12, 9],
    )
}

/// Path `v1 – v2 – v3 – v4` with the resonant labels `(1, 0, 2, 2)`.
pub fn resonant() -> (SimplicialGraph, Character) {
    build(
        &["v1", "v2", "v3", "v4"],
        &[("v1", "v2"), ("v2", "v3"), ("v3", "v4")],
        &[1, 0, 2, 2],
    )
}

/// A triangle of label-2 vertices with a label-1 pendant edge at each corner.
pub fn kite() -> (SimplicialGraph, Character) {
    build(
        &["v0", "v1", "v2", "v3", "v4", "v5"],
        &[("v0", "v1"), ("v0", "v2"), ("v1", "v2"), ("v0", "v3"), ("v1", "v4"), ("v2", "v5")],
        &[2, 2, 2, 1, 1, 1],
    )
}

/// Hexagon `v0 v4 v1 v3 v2 v5` with the inner triangle `v3 v4 v5`; four 2-simplices.
pub fn triangle() -> (SimplicialGraph, Character) {
    build(
        &["v0", "v1", "v2", "v3", "v4", "v5"],
        &[
            ("v0", "v4"),
            ("v4", "v1"),
            ("v1", "v3"),
            ("v3", "v2"),
            ("v2", "v5"),
            ("v5", "v0"),
            ("v4", "v3"),
            ("v3", "v5"),
            ("v5", "v4"),
        ],
        &[1, 1, 1, 2, 2, 2],
    )
}

/// Square `v0 v1 v2 v3` around the triangle `v4 v5 v6`, triangulated into eight 2-simplices.
pub fn block3() -> (SimplicialGraph, Character) {
    build(
        &["v0", "v1", "v2", "v3", "v4", "v5", "v6"],
        &[
            ("v0", "v1"),
            ("v1", "v2"),
            ("v2", "v3"),
            ("v3", "v0"),
            ("v4", "v5"),
            ("v5", "v6"),
            ("v6", "v4"),
            ("v0", "v4"),
            ("v4", "v1"),
            ("v1", "v6"),
            ("v6", "v2"),
            ("v2", "v5"),
            ("v5", "v3"),
            ("v3", "v4"),
        ],
        &[1, 1, 1, 1, 2, 2, 2],
    )
}

/// All fixtures by name, in a fixed order.
pub fn all() -> Vec<(&'static str, (SimplicialGraph, Character))> {
    vec![
        ("tree", tree()),
        ("resonant", resonant()),
        ("kite", kite()),
        ("triangle", triangle()),
        ("block3", block3()),
    ]
}

/// One-line description stored in the fixture's input file.
pub fn description(name: &str) -> Option<&'static str> {
    Some(match name {
        "tree" => "Tree on four vertices, labels 18, 4, 12, 9; H_1 has torsion at every divisor of a label",
        "resonant" => "Path with one zero label; only the direct pipeline applies",
        "kite" => "Triangle with a pendant edge at each corner. H_2 has free rank 0: the Euler characteristic \
                   forces it, although a free summand is sometimes displayed for this example",
        "triangle" => "Hexagon around a triangle of label-2 vertices; Jordan blocks of size 2 in H_2",
        "block3" => "Triangulated square around a triangle of label-2 vertices; a Jordan block of size 3 in H_2",
        _ => return None,
    })
}

/// The job each fixture's golden report is produced with: the resonant
/// fixture runs only the direct pipeline, the others run both.
pub fn job_for(name: &str) -> JobSpec {
    let resonant = name == "resonant";
    JobSpec {
        method: if resonant { Method::Direct } else { Method::Both },
        allow_resonant: resonant,
        format: OutputFormat::Json,
        ..JobSpec::default()
    }
}

/// The report for a fixture input file's bytes.
pub fn golden_report(name: &str, input: &[u8]) -> Result<String> {
    let (g, chi) = parse_input(input)?;
    let job = job_for(name);
    Ok(emit_report(&decompose(&g, &chi, &job, input)?, OutputFormat::Json))
}

#[derive(Clone, Debug)]
pub struct GoldenOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Checks every `<name>.json` in `dir` against the in-memory fixture and
/// every `<name>.expected.json` against a freshly generated report. With
/// `write`, both files are regenerated instead.
pub fn check_goldens(dir: &Path, write: bool) -> Result<Vec<GoldenOutcome>> {
    let io_err = |path: &Path, e: std::io::Error| Error::parse(path.display().to_string(), e.to_string());
    let mut out = Vec::new();
    for (name, (g, chi)) in all() {
        let input_path = dir.join(format!("{name}.json"));
        let golden_path = dir.join(format!("{name}.expected.json"));
        if write {
            let input = to_json_input(&g, &chi, description(name));
            std::fs::write(&input_path, &input).map_err(|e| io_err(&input_path, e))?;
            let report = golden_report(name, input.as_bytes())?;
            std::fs::write(&golden_path, report).map_err(|e| io_err(&golden_path, e))?;
            out.push(GoldenOutcome {
                name,
                passed: true,
                detail: "written".into(),
            });
            continue;
        }
        let input = std::fs::read(&input_path).map_err(|e| io_err(&input_path, e))?;
        let expected = std::fs::read_to_string(&golden_path).map_err(|e| io_err(&golden_path, e))?;
        let (pg, pchi) = parse_input(&input)?;
        let (passed, detail) = if (pg.vertices(), pchi.values()) != (g.vertices(), chi.values())
            || !pg.edges().eq(g.edges())
        {
            (false, "input file differs from the built-in fixture".to_string())
        } else {
            match golden_report(name, &input) {
                Ok(actual) if actual == expected => (true, "matches".to_string()),
                Ok(actual) => (false, first_difference(&expected, &actual)),
                Err(e) => (false, e.to_string()),
            }
        };
        out.push(GoldenOutcome { name, passed, detail });
    }
    Ok(out)
}

fn first_difference(expected: &str, actual: &str) -> String {
    let mut lines = expected.lines().zip(actual.lines()).enumerate();
    match lines.find(|(_, (a, b))| a != b) {
        Some((i, (a, b))) => format!("line {}: expected {:?}, got {:?}", i + 1, a.trim(), b.trim()),
        None => "reports differ in length".to_string(),
    }
}
