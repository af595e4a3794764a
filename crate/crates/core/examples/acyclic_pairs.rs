//! Finds a minimal-weight acyclic pair and checks that its weight is the
//! weighted exponent sum of the corresponding torsion.
//!
//! cargo run --example acyclic_pairs

use artin_kernels::acyclic::{exhaustive_pairs, fitting_weight, is_acyclic, minimal_acyclic_pair};
use artin_kernels::complex::build_flag_complex;
use artin_kernels::fixtures;
use artin_kernels::formulas::weighted_exponent_sum;
use artin_kernels::graph::derive_weight;

fn main() -> artin_kernels::Result<()> {
    let (graph, chi) = fixtures::kite();
    let f = build_flag_complex(&graph, None);
    let w = derive_weight(&chi, 2)?;
    for k in 0..f.dim() {
        let pair = minimal_acyclic_pair(&f, &w, k)?;
        let names = |m: isize, idx: &[usize]| -> Vec<String> {
            idx.iter().map(|&i| format!("{:?}", f.simplices(m)[i].vertices())).collect()
        };
        println!("k = {k}");
        println!("  K = {}", names(k + 1, &pair.k_simplices).join(" "));
        println!("  L = {}", names(k, &pair.l_simplices).join(" "));
        println!("  acyclic: {}", is_acyclic(&f, k, &pair.k_simplices, &pair.l_simplices)?);
        println!(
            "  fitting weight {}, weighted exponent sum {}",
            fitting_weight(&f, &w, &pair),
            weighted_exponent_sum(&f, &w, k)?
        );
        if let Some(all) = exhaustive_pairs(&f, &w, k, pair.size()) {
            println!("  {} pairs of this size, minimal weight {:?}", all.pairs, all.min_weight);
        }
    }
    Ok(())
}
