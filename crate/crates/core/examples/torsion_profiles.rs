//! Recovers torsion statistics from ranks of rational matrices alone and
//! compares them with the Smith normal form computation.
//!
//! cargo run --example torsion_profiles

use artin_kernels::complex::build_flag_complex;
use artin_kernels::direct::homology_module;
use artin_kernels::fixtures;
use artin_kernels::formulas::{anti_invariant_homology, solve_exponents, torsion_profile, ExponentSolution};
use artin_kernels::graph::even_reduction;

fn main() -> artin_kernels::Result<()> {
    for (name, (graph, chi)) in fixtures::all() {
        if chi.is_resonant() {
            continue;
        }
        let f = build_flag_complex(&graph, None);
        let rho = even_reduction(&chi, 2)?;
        println!("{name}: anti-invariant homology {:?}", anti_invariant_homology(&f, &rho)?);
        for k in 0..=f.dim() {
            let p = torsion_profile(&f, &chi, k, 2)?;
            if p.summand_count == 0 {
                continue;
            }
            let solved = match solve_exponents(&p)? {
                ExponentSolution::Determined(v) => format!("{v:?}"),
                ExponentSolution::Undetermined { candidates } => format!("one of {candidates}"),
            };
            let direct = homology_module(&f, &chi, k)?;
            println!(
                "  H_{} at Φ2: {} blocks, Σ j·r_j = {}, largest {}; exponents {solved}, direct {:?}",
                k + 1,
                p.summand_count,
                p.weighted_sum,
                p.max_exponent,
                direct.exponents(2)
            );
        }
    }
    Ok(())
}
