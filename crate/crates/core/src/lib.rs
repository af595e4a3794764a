//! Homology of Artin kernels of right-angled Artin groups as modules over
//! `Q[t^{±1}]`.
//!
//! Given a graph `Γ` and positive integer labels `n_v` on its vertices, the
//! crate computes the homology of the infinite cyclic cover of the toric
//! complex of `Γ` determined by the labels: free rank and, for every
//! cyclotomic polynomial `Φ_d`, the multiplicities of the blocks
//! `Q[t^{±1}]/Φ_d^j`. Two independent pipelines are provided:
//!
//! * [`direct`] builds the twisted boundary matrices and takes Smith normal
//!   forms over `Q[t]`;
//! * [`formulas`] reads the same statistics off the weight filtration of the
//!   flag complex and the double cover of an even character, using only
//!   rational ranks.
//!
//! [`acyclic`] constructs the minimal acyclic pairs that certify the Fitting
//! valuations, and [`report`] runs and compares the pipelines.
//!
//! ```
//! use artin_kernels::{complex::build_flag_complex, direct::homology_module, fixtures};
//!
//! let (graph, chi) = fixtures::tree();
//! let f = build_flag_complex(&graph, None);
//! let h1 = homology_module(&f, &chi, 0).unwrap();
//! assert_eq!(h1.exponents(6), &[0, 1]);
//! ```

pub mod acyclic;
pub mod algebra;
pub mod complex;
pub mod direct;
pub mod error;
pub mod fixtures;
pub mod formulas;
pub mod fuzz;
pub mod graph;
pub mod io;
pub mod report;

pub use error::{Error, Result};
