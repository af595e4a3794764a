//! Homology of the infinite cyclic cover as a `Q[t^{±1}]`-module, computed
//! directly from Smith normal forms of the twisted boundary matrices.
//!
//! Chain degree `j` of the cover has one free generator per (j−1)-simplex of
//! the flag complex, so `∂^χ_1` is the row `(t^{n_v} − 1)_v` and `H_{k+1}` is
//! built from the k-simplices.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::algebra::{
    factor_cyclotomic, smith_normal_form, smith_normal_form_with_transforms, ExactPoly, LaurentClass, PolyMatrix,
    Rational,
};
use crate::complex::{boundary_matrix, FlagComplex, Simplex};
use crate::error::{Error, Result};
use crate::graph::{Character, CharacterClass};

/// `∂^χ_j : C_j → C_{j−1}` with columns indexed by (j−1)-simplices and rows by (j−2)-simplices.
#[derive(Clone, Debug)]
pub struct TwistedBoundary {
    pub degree: usize,
    pub matrix: Vec<Vec<LaurentClass>>,
    pub rows: Vec<Simplex>,
    pub cols: Vec<Simplex>,
}

pub fn twisted_boundary(f: &FlagComplex, chi: &Character, degree: usize) -> Result<TwistedBoundary> {
    if chi.len() != f.vertex_count() {
        return Err(Error::Structure("character and complex have different vertex counts".into()));
    }
    let m = degree as isize - 1;
    let rows = f.simplices(m - 1).to_vec();
    let cols = f.simplices(m).to_vec();
    let mut matrix = vec![vec![LaurentClass::zero(); cols.len()]; rows.len()];
    for c in 0..cols.len() {
        for (r, v, sign) in f.boundary_column(m, c) {
            let entry = LaurentClass::t_pow_minus_one(chi.value(v));
            matrix[r][c] = entry.scale(&Rational::from_integer(sign.into()));
        }
    }
    Ok(TwistedBoundary {
        degree,
        matrix,
        rows,
        cols,
    })
}

impl TwistedBoundary {
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols.len()
    }

    /// Smallest power of `t` present among the nonzero entries.
    pub fn min_shift(&self) -> i64 {
        self.matrix
            .iter()
            .flatten()
            .filter(|e| !e.is_zero())
            .map(|e| e.shift)
            .min()
            .unwrap_or(0)
    }

    /// The matrix multiplied by the unit `t^k`; requires every entry to become a polynomial.
    pub fn to_poly_matrix(&self, k: i64) -> Result<PolyMatrix> {
        let data = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|e| e.times_t_pow(k)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix::from_rows(data, self.cols.len()))
    }

    /// Polynomial matrix differing from `∂^χ` by a unit scalar `t^k`.
    pub fn normalized(&self) -> PolyMatrix {
        self.to_poly_matrix(-self.min_shift()).expect("shift chosen to clear negative powers")
    }
}

/// `H_{degree} ≅ Λ^{free_rank} ⊕ ⨁_d ⨁_j (Λ/Φ_d^j)^{r_j(d)}` with `Λ = Q[t^{±1}]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleDecomposition {
    pub degree: usize,
    pub free_rank: usize,
    /// `d ↦ (r_1(d), r_2(d), …)`, trailing zeros trimmed; orders without torsion are absent.
    pub torsion: BTreeMap<u64, Vec<usize>>,
    /// Invariant-factor content not explained by cyclotomic polynomials of the tested orders.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub remainder_factors: Vec<String>,
}

impl ModuleDecomposition {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty() && self.remainder_factors.is_empty()
    }

    pub fn exponents(&self, d: u64) -> &[usize] {
        self.torsion.get(&d).map_or(&[], Vec::as_slice)
    }

    /// Number of summands `Σ_j r_j(d)`.
    pub fn summand_count(&self, d: u64) -> usize {
        self.exponents(d).iter().sum()
    }

    /// `Σ_j j · r_j(d)`.
    pub fn weighted_sum(&self, d: u64) -> usize {
        self.exponents(d).iter().enumerate().map(|(i, r)| (i + 1) * r).sum()
    }

    /// `Q`-dimension of the torsion part.
    pub fn torsion_dimension(&self) -> usize {
        self.torsion
            .iter()
            .map(|(&d, _)| self.weighted_sum(d) * crate::algebra::cyclotomic(d).degree().unwrap_or(0))
            .sum()
    }
}

/// Which presentation of `H_{k+1}` the Smith normal form is applied to.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Route {
    /// Torsion from the invariant factors of `∂^χ_{k+2}` (the cokernel `C/Z` is free,
    /// so the torsion of `Z/B` is that of `C/B`), ranks from both boundaries.
    #[default]
    Cokernel,
    /// A free basis of `ker ∂^χ_{k+1}` from Smith transforms, and the image of
    /// `∂^χ_{k+2}` rewritten in that basis.
    Kernel,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DirectOptions {
    /// Accept resonant, non-positive and non-surjective characters.
    pub allow_any_character: bool,
    pub route: Route,
}

/// Decomposition of `H_{k+1}` for `k ≥ −1`, rejecting characters outside the
/// non-resonant surjective class.
pub fn homology_module(f: &FlagComplex, chi: &Character, k: isize) -> Result<ModuleDecomposition> {
    homology_module_with(f, chi, k, DirectOptions::default())
}

pub fn homology_module_with(
    f: &FlagComplex,
    chi: &Character,
    k: isize,
    options: DirectOptions,
) -> Result<ModuleDecomposition> {
    let class = character_class(f, chi)?;
    if class != CharacterClass::NonResonantSurjective && !options.allow_any_character {
        return Err(Error::Unsupported(format!(
            "character class {class:?} needs the explicit override"
        )));
    }
    if k < -1 {
        return Err(Error::Argument(format!("homology index k = {k} is below −1")));
    }
    let degree = (k + 1) as usize;
    let lower = twisted_boundary(f, chi, degree)?;
    let upper = twisted_boundary(f, chi, degree + 1)?;
    let (free_rank, factors) = match options.route {
        Route::Cokernel => {
            let rank_lower = smith_normal_form(&lower.normalized()).rank;
            let upper_snf = smith_normal_form(&upper.normalized());
            let free = f.count(k) - rank_lower - upper_snf.rank;
            (free, upper_snf.invariant_factors)
        }
        Route::Kernel => kernel_route(&lower, &upper)?,
    };

    let orders = torsion_orders(chi);
    let mut counts: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    let mut remainder_factors = Vec::new();
    for p in factors.iter().filter(|p| !p.is_constant()) {
        let fact = factor_cyclotomic(p, &orders);
        for (&d, &mult) in &fact.multiplicities {
            let v = counts.entry(d).or_default();
            if v.len() < mult {
                v.resize(mult, 0);
            }
            v[mult - 1] += 1;
        }
        if !fact.is_complete() {
            remainder_factors.push(fact.remainder.to_string());
        }
    }
    let decomposition = ModuleDecomposition {
        degree,
        free_rank,
        torsion: counts,
        remainder_factors,
    };
    if class == CharacterClass::NonResonantSurjective {
        if !decomposition.remainder_factors.is_empty() {
            return Err(Error::Consistency(format!(
                "H_{degree} has non-cyclotomic torsion {:?}",
                decomposition.remainder_factors
            )));
        }
        if decomposition.exponents(1).len() > 1 {
            return Err(Error::Consistency(format!("H_{degree} has a non-semisimple (t − 1)-part")));
        }
    }
    Ok(decomposition)
}

fn kernel_route(lower: &TwistedBoundary, upper: &TwistedBoundary) -> Result<(usize, Vec<ExactPoly>)> {
    let n = lower.col_count();
    let snf = smith_normal_form_with_transforms(&lower.normalized());
    let tr = snf.transforms.expect("transforms requested");
    let kernel_rank = n - snf.rank;
    // The columns of `right` past the rank span ker ∂; coordinates of a chain
    // in that basis are the matching rows of `right⁻¹` applied to it.
    let coords = tr.right_inverse.mul(&upper.normalized());
    if (0..snf.rank).any(|i| coords.row_slice(i).iter().any(|p| !p.is_zero())) {
        return Err(Error::Consistency("boundary image leaves the kernel".into()));
    }
    let image = smith_normal_form(&coords.rows_from(snf.rank));
    Ok((kernel_rank - image.rank, image.invariant_factors))
}

fn character_class(f: &FlagComplex, chi: &Character) -> Result<CharacterClass> {
    if chi.len() != f.vertex_count() {
        return Err(Error::Structure(format!(
            "character has {} values but the complex has {} vertices",
            chi.len(),
            f.vertex_count()
        )));
    }
    Ok(if chi.is_resonant() {
        CharacterClass::Resonant
    } else if chi.values().iter().any(|&n| n < 0) {
        CharacterClass::NonPositive
    } else if chi.gcd() != 1 {
        CharacterClass::NonSurjective
    } else {
        CharacterClass::NonResonantSurjective
    })
}

/// Divisors `≥ 2` of the nonzero labels.
fn torsion_orders(chi: &Character) -> Vec<u64> {
    let mut out = BTreeSet::new();
    for n in chi.values().iter().map(|n| n.unsigned_abs()).filter(|&n| n > 0) {
        out.extend((2..=n).filter(|d| n % d == 0));
    }
    out.into_iter().collect()
}

/// Decompositions of `H_0, …, H_{max_degree}` (default `dim F + 1`).
pub fn decompose_all(
    f: &FlagComplex,
    chi: &Character,
    max_degree: Option<usize>,
    options: DirectOptions,
) -> Result<Vec<ModuleDecomposition>> {
    let top = max_degree.unwrap_or((f.dim() + 1).max(0) as usize);
    (0..=top).map(|deg| homology_module_with(f, chi, deg as isize - 1, options)).collect()
}

/// `dim H̃_k(F; Q)`, which equals the free rank of `H_{k+1}` for non-resonant characters.
pub fn free_rank_check(f: &FlagComplex, k: isize) -> usize {
    f.full().reduced_betti(k)
}

/// `rank ∂_{k+1}`, the number of `Λ/(t − 1)` summands of `H_{k+1}`.
pub fn t_minus_1_part(f: &FlagComplex, k: isize) -> usize {
    boundary_matrix(f, k + 1).rank()
}

/// Violations of the structural constraints on `H_{k+1}` for a non-resonant character:
/// only cyclotomic torsion of orders dividing a label, a semisimple `(t − 1)`-part,
/// and no block longer than `k + 2`.
pub fn structural_violations(m: &ModuleDecomposition, chi: &Character) -> Vec<String> {
    let mut out = Vec::new();
    if !m.remainder_factors.is_empty() {
        out.push(format!("H_{}: non-cyclotomic factors {:?}", m.degree, m.remainder_factors));
    }
    for (&d, exps) in &m.torsion {
        if !chi.values().iter().any(|&n| n.unsigned_abs() % d == 0) {
            out.push(format!("H_{}: torsion at order {d} dividing no label", m.degree));
        }
        let bound = if d == 1 { 1 } else { m.degree + 1 };
        if exps.len() > bound {
            out.push(format!("H_{}: block of size {} at order {d} exceeds {bound}", m.degree, exps.len()));
        }
    }
    out
}
