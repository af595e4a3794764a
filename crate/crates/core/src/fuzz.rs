//! Random connected graphs with random non-resonant characters, and the
//! self-checks run on each of them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complex::build_flag_complex;
use crate::direct::{decompose_all, structural_violations, DirectOptions};
use crate::error::Result;
use crate::formulas::formula_decomposition;
use crate::graph::{candidate_torsion_orders, even_reduction, Character, SimplicialGraph};
use crate::report::compare;

#[derive(Clone, Debug)]
pub struct FuzzConfig {
    pub seed: u64,
    pub trials: usize,
    pub max_vertices: usize,
    pub max_label: i64,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            seed: 0,
            trials: 200,
            max_vertices: 7,
            max_label: 12,
        }
    }
}

/// A connected graph on `1..=max_vertices` vertices with labels in
/// `1..=max_label` whose gcd is 1. Edges beyond a random spanning tree are
/// added with a per-case density.
pub fn random_case(rng: &mut impl Rng, max_vertices: usize, max_label: i64) -> (SimplicialGraph, Character) {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let density: f64 = rng.gen_range(0.0..1.0);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for a in 0..n {
        for b in a + 1..n {
            if !edges.contains(&(a, b)) && rng.gen_bool(density) {
                edges.push((a, b));
            }
        }
    }
    let graph = SimplicialGraph::from_indices(n, edges).expect("generated edges are valid");
    let max_label = max_label.max(1);
    loop {
        let chi = Character::new((0..n).map(|_| rng.gen_range(1..=max_label)).collect());
        if chi.gcd() == 1 {
            return (graph, chi);
        }
    }
}

pub fn random_cases(config: &FuzzConfig) -> Vec<(SimplicialGraph, Character)> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    (0..config.trials)
        .map(|_| random_case(&mut rng, config.max_vertices, config.max_label))
        .collect()
}

/// Problems found on one case, grouped by the kind of check.
#[derive(Clone, Debug, Default, Serialize)]
pub struct CaseFindings {
    pub pipeline: Vec<String>,
    pub reduction: Vec<String>,
    pub structure: Vec<String>,
    /// Formula profiles with nonzero torsion whose exponent vector was determined, and those left open.
    pub resolved: usize,
    pub unresolved: usize,
}

impl CaseFindings {
    pub fn is_clean(&self) -> bool {
        self.pipeline.is_empty() && self.reduction.is_empty() && self.structure.is_empty()
    }
}

/// Formula pipeline against the direct pipeline, direct exponents at `d`
/// against those of the even reduction at 2, and the structural constraints.
pub fn check_case(graph: &SimplicialGraph, chi: &Character) -> Result<CaseFindings> {
    let f = build_flag_complex(graph, None);
    let orders = candidate_torsion_orders(chi)?;
    let direct = decompose_all(&f, chi, None, DirectOptions::default())?;
    let formulas = formula_decomposition(&f, chi, &orders, None)?;
    let mut all_orders = vec![1];
    all_orders.extend(&orders);
    let mut findings = CaseFindings {
        pipeline: compare(&direct, &formulas, &all_orders),
        ..CaseFindings::default()
    };
    for p in formulas.iter().flat_map(|fd| fd.profiles.values()).filter(|p| p.summand_count > 0) {
        if p.exponents.is_some() {
            findings.resolved += 1;
        } else {
            findings.unresolved += 1;
        }
    }
    for &d in &orders {
        let rho = even_reduction(chi, d)?;
        let reduced = decompose_all(&f, &rho, None, DirectOptions::default())?;
        for (a, b) in direct.iter().zip(&reduced) {
            if a.exponents(d) != b.exponents(2) {
                findings.reduction.push(format!(
                    "H_{} d={d}: {:?} but the reduction has {:?} at 2",
                    a.degree,
                    a.exponents(d),
                    b.exponents(2)
                ));
            }
        }
    }
    for m in &direct {
        findings.structure.extend(structural_violations(m, chi));
    }
    Ok(findings)
}

#[derive(Clone, Debug, Serialize)]
pub struct FuzzFailure {
    pub trial: usize,
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub character: Vec<i64>,
    pub findings: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FuzzSummary {
    pub trials: usize,
    pub failures: Vec<FuzzFailure>,
}

pub fn fuzz(config: &FuzzConfig) -> FuzzSummary {
    let mut failures = Vec::new();
    for (trial, (g, chi)) in random_cases(config).into_iter().enumerate() {
        let findings = match check_case(&g, &chi) {
            Ok(c) if c.is_clean() => continue,
            Ok(c) => [c.pipeline, c.reduction, c.structure].concat(),
            Err(e) => vec![e.to_string()],
        };
        failures.push(FuzzFailure {
            trial,
            vertices: g.vertex_count(),
            edges: g.edges().collect(),
            character: chi.values().to_vec(),
            findings,
        });
    }
    FuzzSummary {
        trials: config.trials,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_cases_are_valid() {
        let cases = random_cases(&FuzzConfig {
            trials: 50,
            ..FuzzConfig::default()
        });
        for (g, chi) in &cases {
            assert!(g.is_connected());
            assert!(g.vertex_count() <= 7);
            assert_eq!(chi.gcd(), 1);
            assert!(chi.values().iter().all(|&n| (1..=12).contains(&n)));
        }
        let again = random_cases(&FuzzConfig {
            trials: 50,
            ..FuzzConfig::default()
        });
        assert_eq!(cases, again);
    }

    #[test]
    fn small_fuzz_run_is_clean() {
        let summary = fuzz(&FuzzConfig {
            seed: 7,
            trials: 10,
            max_vertices: 5,
            max_label: 6,
        });
        assert!(summary.failures.is_empty(), "{:#?}", summary.failures);
    }
}
