//! Builds the flag complex of a graph and walks its weight filtration.
//!
//! cargo run --example flag_complex

use artin_kernels::complex::{boundary_matrix, build_flag_complex, filtration_level};
use artin_kernels::fixtures;
use artin_kernels::graph::derive_weight;

fn main() -> artin_kernels::Result<()> {
    let (graph, chi) = fixtures::block3();
    let f = build_flag_complex(&graph, None);
    println!("dimension {}", f.dim());
    for m in 0..=f.dim() {
        println!("  {} simplices of dimension {m}", f.count(m));
    }
    println!("reduced Euler characteristic {}", f.reduced_euler_characteristic());
    for m in 1..=f.dim() {
        let b = boundary_matrix(&f, m);
        println!("∂_{m}: {}×{} of rank {}", b.rows(), b.cols(), b.rank());
    }

    // Vertices whose label is even get weight 1; F^m_j keeps the simplices of
    // the m-skeleton with at most j of them.
    let w = derive_weight(&chi, 2)?;
    println!("weights {:?}", w.weights());
    for j in 0..=3 {
        let level = filtration_level(&f, &w, 2, j)?;
        let s = &level.subcomplex;
        println!(
            "F^2_{j}: {} triangles, reduced Betti numbers {:?}",
            s.count(2),
            (0..=2).map(|i| s.reduced_betti(i)).collect::<Vec<_>>()
        );
    }
    Ok(())
}
