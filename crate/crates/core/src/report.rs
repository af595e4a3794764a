//! Jobs, reports and their serialization: runs one or both pipelines on an
//! input, compares them, and renders the result as JSON or text.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::complex::build_flag_complex;
use crate::direct::{decompose_all, DirectOptions, ModuleDecomposition, Route};
use crate::error::{Error, Result};
use crate::formulas::{formula_decomposition, FormulaDegree};
use crate::graph::{candidate_torsion_orders, classify_character, Character, CharacterClass, SimplicialGraph};
use crate::io::parse_input;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Direct,
    Formulas,
    #[default]
    Both,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Method::Direct),
            "formulas" => Ok(Method::Formulas),
            "both" => Ok(Method::Both),
            _ => Err(Error::Argument(format!("unknown method {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::Argument(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct JobSpec {
    pub input: PathBuf,
    /// Highest homology degree reported; defaults to `dim F + 1`.
    pub max_degree: Option<usize>,
    /// Torsion orders to report; defaults to the candidate orders and 1.
    pub d_filter: Option<Vec<u64>>,
    pub method: Method,
    pub allow_resonant: bool,
    pub format: OutputFormat,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Agreement,
    Mismatch,
}

#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub input_sha256: String,
    pub vertices: Vec<String>,
    pub character: Vec<i64>,
    pub class: CharacterClass,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub method: Method,
    pub orders: Vec<u64>,
    pub direct: Option<Vec<ModuleDecomposition>>,
    pub formulas: Option<Vec<FormulaDegree>>,
    pub agreement: Option<Verdict>,
    pub mismatches: Vec<String>,
    pub provenance: Provenance,
}

impl Report {
    /// 0 on success, 2 when the pipelines disagree.
    pub fn exit_code(&self) -> i32 {
        if self.agreement == Some(Verdict::Mismatch) {
            2
        } else {
            0
        }
    }

    /// Per-degree summary: the direct decomposition when present, otherwise
    /// what the formulas determine. Orders whose exponents the formulas leave
    /// open are listed separately.
    pub fn degrees(&self) -> Vec<(ModuleDecomposition, Vec<u64>)> {
        if let Some(direct) = &self.direct {
            return direct
                .iter()
                .map(|m| {
                    let mut m = m.clone();
                    m.torsion.retain(|d, _| self.orders.contains(d));
                    (m, Vec::new())
                })
                .collect();
        }
        self.formulas
            .iter()
            .flatten()
            .map(|fd| {
                let mut torsion = BTreeMap::new();
                if fd.semisimple_rank > 0 && self.orders.contains(&1) {
                    torsion.insert(1, vec![fd.semisimple_rank]);
                }
                let mut open = Vec::new();
                for (&d, p) in &fd.profiles {
                    match &p.exponents {
                        Some(v) if !v.is_empty() => {
                            torsion.insert(d, v.clone());
                        }
                        Some(_) => {}
                        None => open.push(d),
                    }
                }
                let m = ModuleDecomposition {
                    degree: fd.degree,
                    free_rank: fd.free_rank,
                    torsion,
                    remainder_factors: Vec::new(),
                };
                (m, open)
            })
            .collect()
    }
}

/// Error-to-exit-code contract: consistency violations are 2, everything else 1.
pub fn exit_code_for(error: &Error) -> i32 {
    match error {
        Error::Consistency(_) => 2,
        _ => 1,
    }
}

/// Reads the input file and runs the job on it.
pub fn run(job: &JobSpec) -> Result<Report> {
    let bytes = std::fs::read(&job.input)
        .map_err(|e| Error::parse(job.input.display().to_string(), e.to_string()))?;
    let (graph, chi) = parse_input(&bytes)?;
    decompose(&graph, &chi, job, &bytes)
}

/// Runs the pipelines selected by `job` on an in-memory input. `source` is hashed into the provenance.
pub fn decompose(graph: &SimplicialGraph, chi: &Character, job: &JobSpec, source: &[u8]) -> Result<Report> {
    let class = classify_character(graph, chi)?;
    let standard = class == CharacterClass::NonResonantSurjective;
    if !standard {
        if job.method != Method::Direct {
            return Err(Error::Unsupported(format!(
                "{} character unsupported by formula pipeline",
                class_name(class)
            )));
        }
        if !job.allow_resonant {
            return Err(Error::Unsupported(format!(
                "{} character; pass the override to use the direct pipeline",
                class_name(class)
            )));
        }
    }
    let mut orders: Vec<u64> = if standard {
        candidate_torsion_orders(chi)?
    } else {
        let mut all: Vec<u64> = chi
            .values()
            .iter()
            .map(|n| n.unsigned_abs())
            .filter(|&n| n > 0)
            .flat_map(|n| (2..=n).filter(move |d| n % d == 0))
            .collect();
        all.sort_unstable();
        all.dedup();
        all
    };
    orders.insert(0, 1);
    if let Some(filter) = &job.d_filter {
        orders.retain(|d| filter.contains(d));
    }

    let f = build_flag_complex(graph, None);
    let direct = match job.method {
        Method::Direct | Method::Both => Some(decompose_all(
            &f,
            chi,
            job.max_degree,
            DirectOptions {
                allow_any_character: job.allow_resonant,
                route: Route::Cokernel,
            },
        )?),
        Method::Formulas => None,
    };
    let formulas = match job.method {
        Method::Formulas | Method::Both => {
            let higher: Vec<u64> = orders.iter().copied().filter(|&d| d >= 2).collect();
            Some(formula_decomposition(&f, chi, &higher, job.max_degree)?)
        }
        Method::Direct => None,
    };
    let (agreement, mismatches) = match (&direct, &formulas) {
        (Some(d), Some(fm)) => {
            let diffs = compare(d, fm, &orders);
            let verdict = if diffs.is_empty() { Verdict::Agreement } else { Verdict::Mismatch };
            (Some(verdict), diffs)
        }
        _ => (None, Vec::new()),
    };
    Ok(Report {
        method: job.method,
        orders,
        direct,
        formulas,
        agreement,
        mismatches,
        provenance: Provenance {
            input_sha256: hex_digest(source),
            vertices: graph.vertices().to_vec(),
            character: chi.values().to_vec(),
            class,
        },
    })
}

fn class_name(class: CharacterClass) -> &'static str {
    match class {
        CharacterClass::NonResonantSurjective => "non-resonant surjective",
        CharacterClass::Resonant => "resonant",
        CharacterClass::NonPositive => "non-positive",
        CharacterClass::NonSurjective => "non-surjective",
    }
}

fn hex_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// Every statistic the formula pipeline produces, checked against the direct decomposition.
pub fn compare(direct: &[ModuleDecomposition], formulas: &[FormulaDegree], orders: &[u64]) -> Vec<String> {
    let mut out = Vec::new();
    if direct.len() != formulas.len() {
        out.push(format!("{} direct degrees against {} formula degrees", direct.len(), formulas.len()));
    }
    for (m, fd) in direct.iter().zip(formulas) {
        let h = m.degree;
        let mut check = |what: &str, a: usize, b: usize| {
            if a != b {
                out.push(format!("H_{h} {what}: direct {a}, formulas {b}"));
            }
        };
        check("free rank", m.free_rank, fd.free_rank);
        if orders.contains(&1) {
            check("(t − 1)-part", m.summand_count(1), fd.semisimple_rank);
            check("(t − 1) block size", m.exponents(1).len(), usize::from(fd.semisimple_rank > 0));
        }
        for (&d, p) in &fd.profiles {
            let exps = m.exponents(d);
            let mut check = |what: &str, a: usize, b: usize| {
                if a != b {
                    out.push(format!("H_{h} d={d} {what}: direct {a}, formulas {b}"));
                }
            };
            check("weighted sum", m.weighted_sum(d), p.weighted_sum);
            check("summand count", m.summand_count(d), p.summand_count);
            check("top block count", exps.get(h).copied().unwrap_or(0), p.top_count);
            check("largest block", exps.len(), p.max_exponent);
            if let Some(&r) = exps.get(p.max_exponent.wrapping_sub(1)) {
                if r < p.max_exponent_count {
                    out.push(format!("H_{h} d={d}: {r} largest blocks, formulas need at least {}", p.max_exponent_count));
                }
            }
            if let Some(v) = &p.exponents {
                if v.as_slice() != exps {
                    out.push(format!("H_{h} d={d} exponents: direct {exps:?}, formulas {v:?}"));
                }
            }
        }
        for &d in m.torsion.keys() {
            if d >= 2 && orders.contains(&d) && !fd.profiles.contains_key(&d) {
                out.push(format!("H_{h}: direct torsion at d={d} has no formula profile"));
            }
        }
    }
    out
}

fn torsion_json(m: &ModuleDecomposition) -> Value {
    let mut t = Map::new();
    for (d, v) in &m.torsion {
        t.insert(d.to_string(), json!(v));
    }
    Value::Object(t)
}

/// Deterministic serialization; JSON keys appear in a fixed order.
pub fn emit_report(report: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&report_json(report)).expect("reports serialize");
            s.push('\n');
            s
        }
        OutputFormat::Text => report_text(report),
    }
}

pub fn report_json(report: &Report) -> Value {
    let mut degrees = Map::new();
    for (m, open) in report.degrees() {
        let mut entry = Map::new();
        entry.insert("free_rank".into(), json!(m.free_rank));
        entry.insert("torsion".into(), torsion_json(&m));
        if !open.is_empty() {
            entry.insert("undetermined".into(), json!(open));
        }
        if !m.remainder_factors.is_empty() {
            entry.insert("remainder_factors".into(), json!(m.remainder_factors));
        }
        degrees.insert(m.degree.to_string(), Value::Object(entry));
    }
    let mut root = Map::new();
    root.insert("degrees".into(), Value::Object(degrees));
    root.insert("method".into(), json!(report.method));
    root.insert("agreement".into(), json!(report.agreement));
    if let Some(fm) = &report.formulas {
        let mut profiles = Map::new();
        for fd in fm.iter().filter(|fd| !fd.profiles.is_empty()) {
            let per_d: Map<String, Value> = fd
                .profiles
                .iter()
                .map(|(d, p)| (d.to_string(), serde_json::to_value(p).expect("profiles serialize")))
                .collect();
            profiles.insert(fd.degree.to_string(), Value::Object(per_d));
        }
        root.insert("profiles".into(), Value::Object(profiles));
    }
    if !report.mismatches.is_empty() {
        root.insert("mismatches".into(), json!(report.mismatches));
    }
    root.insert("provenance".into(), serde_json::to_value(&report.provenance).expect("provenance serializes"));
    Value::Object(root)
}

/// `(K[t±1]/Φ1)^3 ⊕ (K[t±1]/Φ6^2) ⊕ …`, or `0`.
pub fn module_text(m: &ModuleDecomposition) -> String {
    let mut parts = Vec::new();
    match m.free_rank {
        0 => {}
        1 => parts.push("K[t±1]".to_string()),
        r => parts.push(format!("K[t±1]^{r}")),
    }
    for (d, exps) in &m.torsion {
        for (j, &count) in exps.iter().enumerate().filter(|(_, &c)| c > 0) {
            let power = if j == 0 { String::new() } else { format!("^{}", j + 1) };
            let summand = format!("(K[t±1]/Φ{d}{power})");
            parts.push(if count == 1 { summand } else { format!("{summand}^{count}") });
        }
    }
    for p in &m.remainder_factors {
        parts.push(format!("(K[t±1]/({p}))"));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ⊕ ")
    }
}

fn report_text(report: &Report) -> String {
    let mut s = String::new();
    let p = &report.provenance;
    let _ = writeln!(s, "vertices: {}", p.vertices.join(" "));
    let _ = writeln!(
        s,
        "character: {}",
        p.character.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
    );
    for (m, open) in report.degrees() {
        let _ = write!(s, "H_{} = {}", m.degree, module_text(&m));
        if !open.is_empty() {
            let list: Vec<String> = open.iter().map(u64::to_string).collect();
            let _ = write!(s, "  [exponents undetermined at d = {}]", list.join(", "));
        }
        s.push('\n');
    }
    if let Some(fm) = &report.formulas {
        for fd in fm {
            for (d, pr) in &fd.profiles {
                if pr.summand_count == 0 {
                    continue;
                }
                let _ = writeln!(
                    s,
                    "  H_{} d={d}: {} blocks, Σ j·r_j = {}, largest {} (×{}), size-{} blocks {}",
                    fd.degree,
                    pr.summand_count,
                    pr.weighted_sum,
                    pr.max_exponent,
                    pr.max_exponent_count,
                    fd.degree + 1,
                    pr.top_count
                );
            }
        }
    }
    match report.agreement {
        Some(Verdict::Agreement) => s.push_str("pipelines agree\n"),
        Some(Verdict::Mismatch) => {
            s.push_str("PIPELINES DISAGREE\n");
            for line in &report.mismatches {
                let _ = writeln!(s, "  {line}");
            }
        }
        None => {}
    }
    s
}
