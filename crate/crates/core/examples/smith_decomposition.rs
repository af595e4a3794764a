//! Computes the homology modules directly: twisted boundary matrices over
//! Q[t], their Smith normal form, and the cyclotomic factors of the
//! invariant factors.
//!
//! cargo run --example smith_decomposition

use artin_kernels::algebra::{factor_cyclotomic, smith_normal_form};
use artin_kernels::complex::build_flag_complex;
use artin_kernels::direct::{decompose_all, twisted_boundary, DirectOptions};
use artin_kernels::fixtures;
use artin_kernels::graph::candidate_torsion_orders;
use artin_kernels::report::module_text;

fn main() -> artin_kernels::Result<()> {
    let (graph, chi) = fixtures::tree();
    let f = build_flag_complex(&graph, None);
    let orders = candidate_torsion_orders(&chi)?;

    let boundary = twisted_boundary(&f, &chi, 2)?;
    let snf = smith_normal_form(&boundary.normalized());
    println!("twisted ∂_2 is {}×{} of rank {}", boundary.row_count(), boundary.col_count(), snf.rank);
    for p in snf.nontrivial_factors() {
        let factored = factor_cyclotomic(p, &orders);
        let parts: Vec<String> = factored
            .multiplicities
            .iter()
            .map(|(d, m)| if *m == 1 { format!("Φ{d}") } else { format!("Φ{d}^{m}") })
            .collect();
        println!("  {p} = {}", parts.join(" · "));
    }

    for m in decompose_all(&f, &chi, None, DirectOptions::default())? {
        println!("H_{} = {}", m.degree, module_text(&m));
    }
    Ok(())
}
