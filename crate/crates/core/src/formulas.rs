//! Torsion statistics of the `Φ_d`-primary part of `H_{k+1}` obtained from the
//! weight filtration of the flag complex and from the double cover of the
//! even reduction, using only rational linear algebra.
//!
//! For a fixed order `d` the weight function `ω = ω_d` filters the complex as
//! `F^m_j = F^{m−1} ∪ {m-simplices of weight ≤ j}`. The cycle-rank numbers
//! `c_{k,i,j}` count the `Φ_d`-blocks born at filtration level `≤ j` that are
//! still alive at level `i − 1`; the exponent of a block is its lifetime.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::linalg::{intersection_basis, span_rank};
use crate::algebra::{rational, QMatrix, QVector};
use crate::complex::{
    boundary_matrix, build_flag_complex, filtration_level, relative_betti as subcomplex_relative_betti, simplex_weight,
    FlagComplex,
};
use crate::error::{Error, Result};
use crate::graph::{derive_weight, even_reduction, Character, SimplicialGraph, WeightFunction};

/// `h̃_i(F^m_j)`.
pub fn filtration_betti(f: &FlagComplex, w: &WeightFunction, i: isize, m: isize, j: usize) -> Result<usize> {
    Ok(filtration_level(f, w, m, j)?.subcomplex.reduced_betti(i))
}

/// `dim H̃_i(F^{k+1}, F^k_j)`.
pub fn relative_betti(f: &FlagComplex, w: &WeightFunction, i: isize, k: isize, j: usize) -> Result<usize> {
    let a = filtration_level(f, w, k, j)?;
    let x = f.skeleton(k + 1);
    Ok(subcomplex_relative_betti(&x, &a.subcomplex, i))
}

/// `Σ_j j · r_{k,j}(d)`, read off the filtration as
/// `Σ_{j=0}^{k+1} h̃_k(F^{k+1}_j) − (k+2) h̃_k(F) + Σ_{j=0}^{k} dim H̃_{k+1}(F^{k+1}, F^k_j) − (k+1) dim H̃_{k+1}(F^{k+1}, F^k)`.
pub fn weighted_exponent_sum(f: &FlagComplex, w: &WeightFunction, k: isize) -> Result<usize> {
    if k < -1 {
        return Err(Error::Argument(format!("weighted exponent sum needs k ≥ −1, got {k}")));
    }
    let top = (k + 1) as usize;
    let mut total: i64 = 0;
    for j in 0..=top {
        total += filtration_betti(f, w, k, k + 1, j)? as i64;
    }
    total -= (k + 2) as i64 * f.full().reduced_betti(k) as i64;
    for j in 0..top {
        total += relative_betti(f, w, k + 1, k, j)? as i64;
    }
    total -= (k + 1) as i64 * relative_betti(f, w, k + 1, k, top)? as i64;
    usize::try_from(total).map_err(|_| Error::Consistency(format!("negative weighted exponent sum {total} at k = {k}")))
}

/// The even-character chain complex evaluated at `t = −1`.
///
/// `matrices[j]` is the map from chain degree `j` (the (j−1)-simplices) to
/// degree `j − 1`; index 0 is an empty placeholder.
#[derive(Clone, Debug)]
pub struct AntiInvariantComplex {
    pub matrices: Vec<QMatrix>,
    chain_ranks: Vec<usize>,
}

fn check_even(f: &FlagComplex, rho: &Character) -> Result<()> {
    if rho.len() != f.vertex_count() {
        return Err(Error::Structure("character and complex have different vertex counts".into()));
    }
    if rho.values().iter().any(|&n| n != 1 && n != 2) {
        return Err(Error::Argument("even character must take values in {1, 2}".into()));
    }
    Ok(())
}

pub fn anti_invariant_complex(f: &FlagComplex, rho: &Character) -> Result<AntiInvariantComplex> {
    check_even(f, rho)?;
    let top = (f.dim() + 1).max(0) as usize;
    let mut matrices = vec![QMatrix::zeros(0, 1)];
    for j in 1..=top + 1 {
        let m = j as isize - 1;
        let mut a = QMatrix::zeros(f.count(m - 1), f.count(m));
        for c in 0..f.count(m) {
            for (r, v, sign) in f.boundary_column(m, c) {
                // t^{ρ(v)} − 1 at t = −1.
                if rho.value(v) == 1 {
                    a.set(r, c, rational(-2 * sign));
                }
            }
        }
        matrices.push(a);
    }
    let chain_ranks = (0..=top).map(|j| f.count(j as isize - 1)).collect();
    Ok(AntiInvariantComplex { matrices, chain_ranks })
}

impl AntiInvariantComplex {
    /// `dim H^-_j` for chain degrees `j = 0, …, dim F + 1`.
    pub fn homology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.matrices.iter().map(QMatrix::rank).collect();
        self.chain_ranks
            .iter()
            .enumerate()
            .map(|(j, &n)| n - ranks[j] - ranks[j + 1])
            .collect()
    }
}

pub fn anti_invariant_homology(f: &FlagComplex, rho: &Character) -> Result<Vec<usize>> {
    Ok(anti_invariant_complex(f, rho)?.homology_dims())
}

fn check_nonconstant(rho: &Character) -> Result<()> {
    if !(rho.values().contains(&1) && rho.values().contains(&2)) {
        return Err(Error::Argument("even character must take both values 1 and 2".into()));
    }
    Ok(())
}

/// `ℓ_k = dim H^-_{k+1} − h̃_k(F) − ℓ_{k−1}`, the number of `Φ_d`-summands of `H_{k+1}`.
pub fn summand_count(f: &FlagComplex, rho: &Character, k: isize, lower: usize) -> Result<usize> {
    check_nonconstant(rho)?;
    let dims = anti_invariant_homology(f, rho)?;
    summand_from_dims(f, &dims, k, lower)
}

fn summand_from_dims(f: &FlagComplex, dims: &[usize], k: isize, lower: usize) -> Result<usize> {
    let anti = usize::try_from(k + 1).ok().and_then(|j| dims.get(j)).copied().unwrap_or(0);
    let value = anti as i64 - f.full().reduced_betti(k) as i64 - lower as i64;
    usize::try_from(value).map_err(|_| Error::Consistency(format!("negative summand count {value} at k = {k}")))
}

/// `ℓ_0, …, ℓ_{dim F}` by the recursion from `ℓ_{−1} = 0`.
pub fn summand_counts(f: &FlagComplex, rho: &Character) -> Result<Vec<usize>> {
    check_nonconstant(rho)?;
    let dims = anti_invariant_homology(f, rho)?;
    let mut out = Vec::new();
    let mut lower = 0;
    for k in 0..=f.dim().max(0) {
        lower = summand_from_dims(f, &dims, k, lower)?;
        out.push(lower);
    }
    Ok(out)
}

/// Closed form `ℓ_k = Σ_{i=0}^{k} (−1)^{k−i} dim H^-_{i+1}`, valid when `h̃_i(F) = 0` for all `i ≤ k`.
pub fn summand_count_acyclic(f: &FlagComplex, rho: &Character, k: isize) -> Result<usize> {
    check_nonconstant(rho)?;
    if (0..=k).any(|i| f.full().reduced_betti(i) != 0) {
        return Err(Error::Argument(format!("the flag complex is not {k}-acyclic")));
    }
    let dims = anti_invariant_homology(f, rho)?;
    let total: i64 = (0..=k)
        .map(|i| {
            let d = dims.get((i + 1) as usize).copied().unwrap_or(0) as i64;
            if (k - i) % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .sum();
    usize::try_from(total).map_err(|_| Error::Consistency(format!("negative summand count {total} at k = {k}")))
}

/// Cycle and boundary spaces of the k-chains, tagged with simplex weights.
struct CycleSpaces {
    dim: usize,
    boundary_columns: Vec<(usize, QVector)>,
    lower: QMatrix,
    weights: Vec<usize>,
    all_boundaries: Vec<QVector>,
}

impl CycleSpaces {
    fn new(f: &FlagComplex, w: &WeightFunction, k: isize) -> Self {
        let up = boundary_matrix(f, k + 1);
        let boundary_columns: Vec<(usize, QVector)> = f
            .simplices(k + 1)
            .iter()
            .zip(up.columns())
            .map(|(s, col)| (simplex_weight(s, w), col))
            .collect();
        let all_boundaries = boundary_columns.iter().map(|(_, c)| c.clone()).collect();
        CycleSpaces {
            dim: f.count(k),
            boundary_columns,
            lower: boundary_matrix(f, k),
            weights: f.simplices(k).iter().map(|s| simplex_weight(s, w)).collect(),
            all_boundaries,
        }
    }

    /// `Z_k(F^k_j)` embedded in the k-chains.
    fn cycles(&self, j: usize) -> Vec<QVector> {
        let cols: Vec<usize> = (0..self.dim).filter(|&c| self.weights[c] <= j).collect();
        let rows: Vec<usize> = (0..self.lower.rows()).collect();
        self.lower
            .select(&rows, &cols)
            .kernel_basis()
            .into_iter()
            .map(|v| {
                let mut full = vec![rational(0); self.dim];
                for (x, &c) in v.into_iter().zip(&cols) {
                    full[c] = x;
                }
                full
            })
            .collect()
    }

    /// `B_k(F^{k+1}_j)`, spanned by boundaries of (k+1)-simplices of weight `≤ j`.
    fn boundaries(&self, j: usize) -> Vec<QVector> {
        self.boundary_columns
            .iter()
            .filter(|(wt, _)| *wt <= j)
            .map(|(_, c)| c.clone())
            .collect()
    }

    /// Rank of `ker(H̃_k(F^k_j) → H̃_k(F)) → H̃_k(F^{k+1}_{i−1})`.
    fn c(&self, i: usize, j: usize) -> usize {
        let dying = intersection_basis(self.dim, &self.cycles(j), &self.all_boundaries);
        let killed = self.boundaries(i - 1);
        let mut both = dying;
        both.extend(killed.iter().cloned());
        span_rank(self.dim, &both) - span_rank(self.dim, &killed)
    }
}

/// `c_{k,i,j}` for `0 ≤ j < i ≤ k + 3`.
pub fn c_rank(f: &FlagComplex, w: &WeightFunction, k: isize, i: usize, j: usize) -> Result<usize> {
    if k < 0 {
        return Err(Error::Argument(format!("cycle ranks need k ≥ 0, got {k}")));
    }
    if i <= j {
        return Err(Error::Argument(format!("c_{{k,i,j}} needs i > j, got i = {i}, j = {j}")));
    }
    if i as isize > k + 3 {
        return Err(Error::Argument(format!("filtration index {} exceeds {}", i - 1, k + 2)));
    }
    Ok(CycleSpaces::new(f, w, k).c(i, j))
}

/// `r_{k,k+2}(d) = c_{k,k+2,0}`, the number of blocks of the largest possible size.
pub fn top_jordan_count(f: &FlagComplex, w: &WeightFunction, k: isize) -> Result<usize> {
    c_rank(f, w, k, (k + 2) as usize, 0)
}

/// Largest `i − j` with `c_{k,i,j} ≠ 0`, or 0 when there is no `Φ_d`-torsion.
///
/// A block born at level `j` and dying at level `i − 1` has exponent `i − j`;
/// the bound is `i − j`, not `i − j + 1`.
pub fn max_exponent(f: &FlagComplex, w: &WeightFunction, k: isize) -> Result<usize> {
    Ok(exponent_bounds(f, w, k)?.0)
}

/// Largest exponent `a` together with `max_j c_{k,j+a,j}`, a lower bound for `r_{k,a}(d)`.
fn exponent_bounds(f: &FlagComplex, w: &WeightFunction, k: isize) -> Result<(usize, usize)> {
    if k < 0 {
        return Err(Error::Argument(format!("exponents need k ≥ 0, got {k}")));
    }
    let spaces = CycleSpaces::new(f, w, k);
    let top = (k + 2) as usize;
    for a in (1..=top).rev() {
        let best = (0..=top - a).map(|j| spaces.c(j + a, j)).max().unwrap_or(0);
        if best > 0 {
            return Ok((a, best));
        }
    }
    Ok((0, 0))
}

/// Dimension of the `(t + 1)`-primary part of `H_1` for a connected graph and
/// an even character, with the number of its blocks of exponent 2.
pub fn h1_even_summary(g: &SimplicialGraph, rho: &Character) -> Result<(usize, usize)> {
    if !g.is_connected() {
        return Err(Error::Unsupported(
            "the H_1 summary needs a connected graph; use the direct pipeline".into(),
        ));
    }
    let f = build_flag_complex(g, Some(1));
    check_even(&f, rho)?;
    check_nonconstant(rho)?;
    let w = derive_weight(rho, 2)?;
    let components = |j| filtration_betti(&f, &w, 0, 1, j).map(|b| b + 1);
    let dimension = components(0)? + components(1)? - 2 - w.total();
    // Reduced 0-cycles on the weight-0 vertices, modulo B_0(Γ_1).
    let spaces = CycleSpaces::new(&f, &w, 0);
    let killed = spaces.boundaries(1);
    let mut both = spaces.cycles(0);
    both.extend(killed.iter().cloned());
    let blocks = span_rank(spaces.dim, &both) - span_rank(spaces.dim, &killed);
    Ok((dimension, blocks))
}

/// Statistics of the `Φ_d`-primary part of `H_{k+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionProfile {
    pub k: isize,
    pub d: u64,
    pub weighted_sum: usize,
    pub summand_count: usize,
    pub top_count: usize,
    pub max_exponent: usize,
    /// Lower bound on the number of blocks of size `max_exponent`.
    pub max_exponent_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExponentSolution {
    Determined(Vec<usize>),
    /// More than one exponent vector fits the statistics.
    Undetermined { candidates: usize },
}

/// The exponent vectors `(r_1, …, r_{k+2})` with `Σ r = ℓ`, `Σ j r_j = weighted_sum`,
/// `r_{k+2} = top_count`, no block beyond `max_exponent`, and at least
/// `max_exponent_count` blocks of that size.
pub fn solve_exponents(profile: &TorsionProfile) -> Result<ExponentSolution> {
    let slots = (profile.k + 2).max(0) as usize;
    let a = profile.max_exponent;
    if a > slots || (a == 0) != (profile.summand_count == 0) {
        return Err(Error::Consistency(format!("inconsistent profile {profile:?}")));
    }
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut r = vec![0usize; slots];
    enumerate(profile, &mut r, 0, profile.summand_count, profile.weighted_sum, &mut found);
    match found.len() {
        0 => Err(Error::Consistency(format!("no exponent vector fits {profile:?}"))),
        1 => {
            let mut v = found.pop().expect("one solution");
            while v.last() == Some(&0) {
                v.pop();
            }
            Ok(ExponentSolution::Determined(v))
        }
        n => Ok(ExponentSolution::Undetermined { candidates: n }),
    }
}

fn enumerate(p: &TorsionProfile, r: &mut Vec<usize>, pos: usize, left: usize, weight: usize, out: &mut Vec<Vec<usize>>) {
    let slots = r.len();
    if pos == slots {
        if left == 0 && weight == 0 {
            out.push(r.clone());
        }
        return;
    }
    let size = pos + 1;
    let (lo, hi) = if size == slots {
        (p.top_count, p.top_count)
    } else if size > p.max_exponent {
        (0, 0)
    } else if size == p.max_exponent {
        (p.max_exponent_count.max(1), left)
    } else {
        (0, left)
    };
    if size > p.max_exponent && size == slots && p.top_count != 0 {
        return;
    }
    for x in lo..=hi.min(left) {
        if x * size > weight {
            break;
        }
        r[pos] = x;
        enumerate(p, r, pos + 1, left - x, weight - x * size, out);
    }
    r[pos] = 0;
}

/// All statistics of the `Φ_d`-part of `H_{k+1}` for a non-resonant character.
pub fn torsion_profile(f: &FlagComplex, chi: &Character, k: isize, d: u64) -> Result<TorsionProfile> {
    let rho = even_reduction(chi, d)?;
    let w = derive_weight(chi, d)?;
    let counts = summand_counts(f, &rho)?;
    let summand_count = usize::try_from(k).ok().and_then(|i| counts.get(i)).copied().unwrap_or(0);
    profile_from_parts(f, &w, k, d, summand_count)
}

fn profile_from_parts(f: &FlagComplex, w: &WeightFunction, k: isize, d: u64, summand_count: usize) -> Result<TorsionProfile> {
    let (max_exponent, max_exponent_count) = exponent_bounds(f, w, k)?;
    let mut profile = TorsionProfile {
        k,
        d,
        weighted_sum: weighted_exponent_sum(f, w, k)?,
        summand_count,
        top_count: top_jordan_count(f, w, k)?,
        max_exponent,
        max_exponent_count,
        exponents: None,
    };
    if let ExponentSolution::Determined(v) = solve_exponents(&profile)? {
        profile.exponents = Some(v);
    }
    Ok(profile)
}

/// What the formula pipeline reports for `H_{k+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaDegree {
    pub degree: usize,
    pub free_rank: usize,
    /// Number of `Λ/(t − 1)` summands.
    pub semisimple_rank: usize,
    pub profiles: BTreeMap<u64, TorsionProfile>,
}

/// Formula-pipeline statistics for `H_0, …, H_{max_degree}` at the given orders `d ≥ 2`.
pub fn formula_decomposition(
    f: &FlagComplex,
    chi: &Character,
    orders: &[u64],
    max_degree: Option<usize>,
) -> Result<Vec<FormulaDegree>> {
    let top = max_degree.unwrap_or((f.dim() + 1).max(0) as usize);
    let mut per_order = Vec::new();
    for &d in orders.iter().filter(|&&d| d >= 2) {
        let rho = even_reduction(chi, d)?;
        per_order.push((d, derive_weight(chi, d)?, summand_counts(f, &rho)?));
    }
    let mut out = Vec::new();
    for degree in 0..=top {
        let k = degree as isize - 1;
        let mut profiles = BTreeMap::new();
        if k >= 0 {
            for (d, w, counts) in &per_order {
                let ell = counts.get(k as usize).copied().unwrap_or(0);
                profiles.insert(*d, profile_from_parts(f, w, k, *d, ell)?);
            }
        }
        out.push(FormulaDegree {
            degree,
            free_rank: f.full().reduced_betti(k),
            semisimple_rank: boundary_matrix(f, k + 1).rank(),
            profiles,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn setup(fx: (SimplicialGraph, Character), d: u64) -> (FlagComplex, WeightFunction, Character) {
        let (g, chi) = fx;
        let f = build_flag_complex(&g, None);
        (f, derive_weight(&chi, d).unwrap(), even_reduction(&chi, d).unwrap())
    }

    #[test]
    fn block3_filtration_betti() {
        let (f, w, _) = setup(fixtures::block3(), 2);
        let b = |i, m, j| filtration_betti(&f, &w, i, m, j).unwrap();
        assert_eq!((b(1, 2, 0), b(1, 2, 1), b(1, 2, 2)), (8, 4, 1));
        assert_eq!((b(1, 1, 0), b(1, 1, 1), b(0, 1, 0)), (1, 5, 3));
        assert_eq!(b(1, 2, 3), f.full().reduced_betti(1));
    }

    #[test]
    fn relative_betti_values() {
        let (f, w, _) = setup(fixtures::kite(), 2);
        assert_eq!(relative_betti(&f, &w, 1, 0, 0).unwrap(), 3);
        let (tf, tw, _) = setup(fixtures::triangle(), 2);
        assert_eq!(relative_betti(&tf, &tw, 1, 0, 0).unwrap(), 6);
        // The pair (F^{k+1}, F^{k+1}) has no relative homology.
        let x = tf.skeleton(1);
        assert_eq!(crate::complex::relative_betti(&x, &x, 1), 0);
    }

    #[test]
    fn relative_euler_characteristic() {
        for (_, (g, chi)) in fixtures::all().into_iter().filter(|(n, _)| *n != "resonant") {
            let f = build_flag_complex(&g, None);
            let w = derive_weight(&chi, 2).unwrap();
            for k in 0..=f.dim() {
                for j in 0..=(k + 1) as usize {
                    let a = filtration_level(&f, &w, k, j).unwrap().subcomplex;
                    let x = f.skeleton(k + 1);
                    let sign = |i: isize| if i.rem_euclid(2) == 0 { 1 } else { -1 };
                    let cells: i64 = (-1..=k + 1).map(|i| sign(i) * (x.count(i) - a.count(i)) as i64).sum();
                    let homology: i64 = (-1..=k + 1)
                        .map(|i| sign(i) * crate::complex::relative_betti(&x, &a, i) as i64)
                        .sum();
                    assert_eq!(cells, homology);
                }
            }
        }
    }

    #[test]
    fn weighted_sums() {
        let (f, w, _) = setup(fixtures::tree(), 6);
        assert_eq!(weighted_exponent_sum(&f, &w, 0).unwrap(), 2);
        let (f, w, _) = setup(fixtures::block3(), 2);
        assert_eq!(weighted_exponent_sum(&f, &w, 1).unwrap(), 3);
        let (f, w, _) = setup(fixtures::kite(), 2);
        assert_eq!(weighted_exponent_sum(&f, &w, 1).unwrap(), 1);
        assert_eq!(weighted_exponent_sum(&f, &w, 0).unwrap(), 4);
    }

    #[test]
    fn anti_invariant_dims() {
        let (f, _, rho) = setup(fixtures::block3(), 2);
        assert_eq!(anti_invariant_homology(&f, &rho).unwrap(), vec![0, 0, 1, 1]);
        let (kf, _, krho) = setup(fixtures::kite(), 2);
        assert_eq!(anti_invariant_homology(&kf, &krho).unwrap()[1], 2);
        let ones = Character::new(vec![1; 7]);
        let shifted: Vec<usize> = (0..=f.dim() + 1).map(|j| f.full().reduced_betti(j - 1)).collect();
        assert_eq!(anti_invariant_homology(&f, &ones).unwrap(), shifted);
        assert!(anti_invariant_homology(&f, &Character::new(vec![1, 3, 1, 1, 1, 1, 1])).is_err());
        let cx = anti_invariant_complex(&f, &rho).unwrap();
        for j in 1..cx.matrices.len() - 1 {
            assert!(cx.matrices[j].mul(&cx.matrices[j + 1]).is_zero());
        }
    }

    /// `H_*(T^{ρ_2})` from the explicit chain complex over `Q[Z/2]`, where `t` acts as the deck involution.
    fn double_cover_dims(f: &FlagComplex, rho: &Character) -> Vec<usize> {
        let top = (f.dim() + 1) as usize;
        let mut ranks = vec![0usize; top + 2];
        for j in 1..=top {
            let m = j as isize - 1;
            let mut a = QMatrix::zeros(2 * f.count(m - 1), 2 * f.count(m));
            for c in 0..f.count(m) {
                for (r, v, sign) in f.boundary_column(m, c) {
                    if rho.value(v) == 1 {
                        // (g − 1) on the regular representation.
                        for (x, y, e) in [(0, 0, -1), (0, 1, 1), (1, 0, 1), (1, 1, -1)] {
                            a.set(2 * r + x, 2 * c + y, rational(sign * e));
                        }
                    }
                }
            }
            ranks[j] = a.rank();
        }
        (0..=top).map(|j| 2 * f.count(j as isize - 1) - ranks[j] - ranks[j + 1]).collect()
    }

    #[test]
    fn double_cover_splits_into_invariant_and_anti_invariant_parts() {
        for (name, (g, chi)) in fixtures::all() {
            if name == "resonant" {
                continue;
            }
            let f = build_flag_complex(&g, None);
            for d in crate::graph::candidate_torsion_orders(&chi).unwrap() {
                let Ok(rho) = even_reduction(&chi, d) else { continue };
                let anti = anti_invariant_homology(&f, &rho).unwrap();
                let total = double_cover_dims(&f, &rho);
                for (j, (&t, &a)) in total.iter().zip(&anti).enumerate() {
                    assert_eq!(t, a + f.count(j as isize - 1), "{name} d={d} degree {j}");
                }
            }
        }
    }

    #[test]
    fn summand_counts_and_closed_form() {
        let (f, _, rho) = setup(fixtures::kite(), 2);
        assert_eq!(summand_count(&f, &rho, 0, 0).unwrap(), 2);
        let (bf, _, brho) = setup(fixtures::block3(), 2);
        assert_eq!(summand_counts(&bf, &brho).unwrap(), vec![0, 1, 0]);
        assert_eq!(summand_count(&bf, &brho, 1, 0).unwrap(), 1);
        assert_eq!(summand_count_acyclic(&bf, &brho, 1).unwrap(), 1);
        assert!(summand_count(&bf, &Character::new(vec![1; 7]), 0, 0).is_err());
    }

    #[test]
    fn jordan_statistics() {
        let (kf, kw, _) = setup(fixtures::kite(), 2);
        assert_eq!(top_jordan_count(&kf, &kw, 0).unwrap(), 2);
        assert_eq!(c_rank(&kf, &kw, 0, 2, 0).unwrap(), 2);
        let (bf, bw, _) = setup(fixtures::block3(), 2);
        assert_eq!(top_jordan_count(&bf, &bw, 1).unwrap(), 1);
        assert_eq!(max_exponent(&bf, &bw, 1).unwrap(), 3);
        let (tf, tw, _) = setup(fixtures::triangle(), 2);
        assert_eq!(top_jordan_count(&tf, &tw, 0).unwrap(), 0);
        assert_eq!(c_rank(&tf, &tw, 0, 2, 0).unwrap(), 0);
        assert_eq!(max_exponent(&tf, &tw, 1).unwrap(), 2);
        let (rf, rw, _) = setup(fixtures::tree(), 2);
        assert_eq!(max_exponent(&rf, &rw, 0).unwrap(), 1);
        assert!(c_rank(&rf, &rw, 0, 1, 1).is_err());
    }

    #[test]
    fn first_homology_summary() {
        let summary = |(g, chi): (SimplicialGraph, Character)| h1_even_summary(&g, &chi).unwrap();
        assert_eq!(summary(fixtures::kite()), (4, 2));
        assert_eq!(summary(fixtures::triangle()), (2, 0));
        assert_eq!(summary(fixtures::block3()).0, 0);
        let g = SimplicialGraph::from_indices(3, [(0, 1)]).unwrap();
        assert!(h1_even_summary(&g, &Character::new(vec![1, 2, 1])).is_err());
    }

    fn profile(k: isize, ell: usize, sum: usize, top: usize, max: usize) -> TorsionProfile {
        TorsionProfile {
            k,
            d: 2,
            weighted_sum: sum,
            summand_count: ell,
            top_count: top,
            max_exponent: max,
            max_exponent_count: 1,
            exponents: None,
        }
    }

    #[test]
    fn solving_exponents() {
        let det = |v: &[usize]| ExponentSolution::Determined(v.to_vec());
        assert_eq!(solve_exponents(&profile(0, 2, 4, 2, 2)).unwrap(), det(&[0, 2]));
        assert_eq!(solve_exponents(&profile(1, 1, 3, 1, 3)).unwrap(), det(&[0, 0, 1]));
        assert_eq!(solve_exponents(&profile(1, 1, 2, 0, 2)).unwrap(), det(&[0, 1]));
        assert_eq!(solve_exponents(&profile(0, 0, 0, 0, 0)).unwrap(), det(&[]));
        assert!(solve_exponents(&profile(0, 2, 5, 2, 2)).is_err());
        // (1, 2, 1) and (2, 0, 2) both fit four blocks of total size 8.
        assert_eq!(
            solve_exponents(&profile(2, 4, 8, 0, 3)).unwrap(),
            ExponentSolution::Undetermined { candidates: 2 }
        );
    }

    #[test]
    fn profiles_on_worked_examples() {
        let (g, chi) = fixtures::kite();
        let f = build_flag_complex(&g, None);
        let p = torsion_profile(&f, &chi, 0, 2).unwrap();
        assert_eq!(p.exponents, Some(vec![0, 2]));
        let (g, chi) = fixtures::block3();
        let f = build_flag_complex(&g, None);
        assert_eq!(torsion_profile(&f, &chi, 1, 2).unwrap().exponents, Some(vec![0, 0, 1]));
        let (g, chi) = fixtures::triangle();
        let f = build_flag_complex(&g, None);
        assert_eq!(torsion_profile(&f, &chi, 1, 2).unwrap().exponents, Some(vec![0, 1]));
        let (g, chi) = fixtures::tree();
        let f = build_flag_complex(&g, None);
        let p6 = torsion_profile(&f, &chi, 0, 6).unwrap();
        assert_eq!((p6.weighted_sum, p6.summand_count, p6.exponents), (2, 1, Some(vec![0, 1])));
    }
}
