//! Acyclic pairs `(K, L)`: a set `K` of (k+1)-simplices and a set `L` of
//! k-simplices such that the incidence minor with columns `K` and rows the
//! k-simplices outside `L` is square and nonsingular.
//!
//! A pair of maximal size `rk ∂_{k+1}` and minimal weight certifies the
//! largest Fitting valuation, `ω(K) + ω(L) − ω(F̃^k) = Σ_j j · r_{k,j}(d)`.

use serde::Serialize;

use crate::algebra::linalg::span_rank;
use crate::algebra::{rational, EchelonBasis, QVector};
use crate::complex::{boundary_matrix, simplex_weight, FlagComplex};
use crate::error::{Error, Result};
use crate::graph::WeightFunction;

/// Simplices are stored as positions in the lexicographic order of their dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AcyclicPair {
    pub k: isize,
    pub k_simplices: Vec<usize>,
    pub l_simplices: Vec<usize>,
}

impl AcyclicPair {
    pub fn size(&self) -> usize {
        self.k_simplices.len()
    }
}

fn check_shape(f: &FlagComplex, k: isize, kk: &[usize], ll: &[usize]) -> Result<()> {
    if k < -1 {
        return Err(Error::Argument(format!("degree {k} below −1")));
    }
    let out_of_range = kk.iter().any(|&s| s >= f.count(k + 1)) || ll.iter().any(|&t| t >= f.count(k));
    if out_of_range {
        return Err(Error::Argument("simplex index out of range".into()));
    }
    if f.count(k) - ll.len().min(f.count(k)) != kk.len() || ll.len() > f.count(k) {
        return Err(Error::Argument(format!(
            "minor is not square: {} columns against {} rows",
            kk.len(),
            f.count(k) as isize - ll.len() as isize
        )));
    }
    Ok(())
}

fn complement(n: usize, subset: &[usize]) -> Vec<usize> {
    let mut keep = vec![true; n];
    for &i in subset {
        keep[i] = false;
    }
    (0..n).filter(|&i| keep[i]).collect()
}

/// `det M_{K,L} ≠ 0`.
pub fn is_acyclic(f: &FlagComplex, k: isize, kk: &[usize], ll: &[usize]) -> Result<bool> {
    check_shape(f, k, kk, ll)?;
    let rows = complement(f.count(k), ll);
    Ok(kk.is_empty() || !boundary_matrix(f, k + 1).select(&rows, kk).determinant().eq(&rational(0)))
}

/// The two homological conditions: `H̃_{k+1}(F^k ∪ K) = 0`, and the inclusion
/// `F^{k−1} ∪ L → F^k ∪ K` inducing an isomorphism on `H̃_k`.
pub fn acyclicity_conditions(f: &FlagComplex, k: isize, kk: &[usize], ll: &[usize]) -> Result<(bool, bool)> {
    check_shape(f, k, kk, ll)?;
    let n = f.count(k);
    let up = boundary_matrix(f, k + 1);
    let image: Vec<QVector> = kk.iter().map(|&c| up.column(c)).collect();
    let no_top_cycles = span_rank(n, &image) == kk.len();

    // Cycles supported on L, embedded in all k-chains.
    let down = boundary_matrix(f, k);
    let all_rows: Vec<usize> = (0..down.rows()).collect();
    let l_cycles: Vec<QVector> = down
        .select(&all_rows, ll)
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let mut full = vec![rational(0); n];
            for (x, &t) in v.into_iter().zip(ll) {
                full[t] = x;
            }
            full
        })
        .collect();
    let cycle_rank = n - down.rank();
    let mut both = l_cycles.clone();
    both.extend(image.iter().cloned());
    let combined = span_rank(n, &both);
    let injective = combined == span_rank(n, &l_cycles) + span_rank(n, &image);
    let surjective = combined == cycle_rank;
    Ok((no_top_cycles, injective && surjective))
}

pub fn is_acyclic_homological(f: &FlagComplex, k: isize, kk: &[usize], ll: &[usize]) -> Result<bool> {
    let (a, b) = acyclicity_conditions(f, k, kk, ll)?;
    Ok(a && b)
}

fn weight_order(f: &FlagComplex, w: &WeightFunction, m: isize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..f.count(m)).collect();
    idx.sort_by_key(|&i| simplex_weight(&f.simplices(m)[i], w));
    idx
}

/// Greedy pair of size `rk ∂_{k+1}` and minimal weight: `K` collects independent
/// boundary columns in weight order, then `L` collects k-simplices in weight
/// order whose unit vectors stay independent of `im ∂_{k+1}`. Ties go to the
/// lexicographically smaller simplex.
pub fn minimal_acyclic_pair(f: &FlagComplex, w: &WeightFunction, k: isize) -> Result<AcyclicPair> {
    if k < -1 {
        return Err(Error::Argument(format!("degree {k} below −1")));
    }
    let n = f.count(k);
    let up = boundary_matrix(f, k + 1);
    let mut basis = EchelonBasis::new(n);
    let mut k_simplices = Vec::new();
    for c in weight_order(f, w, k + 1) {
        if basis.insert(&up.column(c)) {
            k_simplices.push(c);
        }
    }
    let mut l_simplices = Vec::new();
    for t in weight_order(f, w, k) {
        let mut e = vec![rational(0); n];
        e[t] = rational(1);
        if basis.insert(&e) {
            l_simplices.push(t);
        }
    }
    k_simplices.sort_unstable();
    l_simplices.sort_unstable();
    Ok(AcyclicPair {
        k,
        k_simplices,
        l_simplices,
    })
}

/// `ω(K) + ω(L) − ω(F̃^k)`, the `s`-valuation of `det M^χ_{K,L}` localized at `Φ_d`.
pub fn fitting_weight(f: &FlagComplex, w: &WeightFunction, pair: &AcyclicPair) -> i64 {
    let wk: usize = pair.k_simplices.iter().map(|&s| simplex_weight(&f.simplices(pair.k + 1)[s], w)).sum();
    let wl: usize = pair.l_simplices.iter().map(|&t| simplex_weight(&f.simplices(pair.k)[t], w)).sum();
    wk as i64 + wl as i64 - crate::complex::total_weight(f, w, pair.k) as i64
}

/// One exchange step: drop some `σ ∈ K` and add some `τ ∉ L` so that the pair stays acyclic.
pub fn shrink_pair(f: &FlagComplex, pair: &AcyclicPair) -> Result<Option<AcyclicPair>> {
    for (i, _) in pair.k_simplices.iter().enumerate() {
        let mut kk = pair.k_simplices.clone();
        kk.remove(i);
        for t in complement(f.count(pair.k), &pair.l_simplices) {
            let mut ll = pair.l_simplices.clone();
            ll.push(t);
            ll.sort_unstable();
            if is_acyclic(f, pair.k, &kk, &ll)? {
                return Ok(Some(AcyclicPair {
                    k: pair.k,
                    k_simplices: kk,
                    l_simplices: ll,
                }));
            }
        }
    }
    Ok(None)
}

/// Largest `#F̃^{k+1}` for which the exhaustive search runs.
pub const EXHAUSTIVE_LIMIT: usize = 20;

/// Result of an exhaustive search over acyclic pairs of one size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExhaustiveResult {
    pub size: usize,
    pub pairs: usize,
    pub min_weight: Option<i64>,
}

fn combinations(n: usize, r: usize, mut visit: impl FnMut(&[usize])) {
    if r > n {
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        visit(&idx);
        let Some(i) = (0..r).rev().find(|&i| idx[i] != i + n - r) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    (0..r.min(n - r)).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    let p = a as u128 * b as u128;
    let s = (p as u64 & PRIME) + (p >> 61) as u64;
    let s = if s >= PRIME { s - PRIME } else { s };
    if s >= PRIME {
        s - PRIME
    } else {
        s
    }
}

fn sub_mod(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + PRIME - b
    }
}

fn inv_mod(a: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a, PRIME - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        e >>= 1;
    }
    acc
}

/// Columns of `∂_{k+1}` reduced modulo a 61-bit prime. Each column has
/// `k + 2` entries `±1`, so by Hadamard's inequality a minor of size `s` is
/// at most `(k + 2)^{s/2}` in absolute value; while that stays below the
/// prime, minors vanish modulo it exactly when they vanish over `Q`.
struct ModularColumns {
    columns: Vec<Vec<u64>>,
}

impl ModularColumns {
    fn new(f: &FlagComplex, k: isize, max_size: usize) -> Option<Self> {
        if max_size as f64 * ((k + 2) as f64).log2() >= 120.0 {
            return None;
        }
        let mut columns = vec![vec![0u64; f.count(k)]; f.count(k + 1)];
        for (c, column) in columns.iter_mut().enumerate() {
            for (row, _, sign) in f.boundary_column(k + 1, c) {
                column[row] = if sign > 0 { 1 } else { PRIME - 1 };
            }
        }
        Some(ModularColumns { columns })
    }

    /// The chosen columns restricted to `rows`, as vectors indexed by column.
    fn restricted(&self, cols: &[usize], rows: &[usize]) -> Vec<Vec<u64>> {
        cols.iter().map(|&c| rows.iter().map(|&r| self.columns[c][r]).collect()).collect()
    }

    /// The rows of the chosen columns, as vectors indexed by row.
    fn transposed(&self, cols: &[usize]) -> Vec<Vec<u64>> {
        let n = self.columns.first().map_or(0, Vec::len);
        (0..n).map(|r| cols.iter().map(|&c| self.columns[c][r]).collect()).collect()
    }
}

/// Echelon basis modulo the prime; each stored vector is zero at the pivots
/// of the vectors stored before it and 1 at its own pivot.
#[derive(Default)]
struct ModBasis {
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModBasis {
    /// Pushes `v` if it is independent of the basis.
    fn push(&mut self, v: &[u64]) -> bool {
        let mut v = v.to_vec();
        for (p, b) in &self.rows {
            let factor = v[*p];
            if factor != 0 {
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = sub_mod(*x, mul_mod(factor, y));
                }
            }
        }
        let Some(p) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(v[p]);
        for x in &mut v {
            *x = mul_mod(*x, inv);
        }
        self.rows.push((p, v));
        true
    }

    fn pop(&mut self) {
        self.rows.pop();
    }
}

fn is_independent(vectors: &[Vec<u64>]) -> bool {
    let mut basis = ModBasis::default();
    vectors.iter().all(|v| basis.push(v))
}

/// Calls `visit` on every independent `size`-subset of `vectors`, in
/// lexicographic order, pruning dependent prefixes.
fn independent_subsets(vectors: &[Vec<u64>], size: usize, visit: &mut impl FnMut(&[usize])) {
    fn extend(
        vectors: &[Vec<u64>],
        size: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        basis: &mut ModBasis,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if chosen.len() == size {
            visit(chosen);
            return;
        }
        for c in start..vectors.len() {
            if vectors.len() - c < size - chosen.len() {
                return;
            }
            if basis.push(&vectors[c]) {
                chosen.push(c);
                extend(vectors, size, c + 1, chosen, basis, visit);
                chosen.pop();
                basis.pop();
            }
        }
    }
    extend(vectors, size, 0, &mut Vec::new(), &mut ModBasis::default(), visit);
}

/// Above this many candidate minors the maximal-size search splits into
/// separate searches over `K` and over `L`.
const JOINT_SEARCH_LIMIT: u128 = 200_000;

/// Every acyclic pair with `#K = size`, by checking minors.
///
/// For `size = rk ∂_{k+1}` the pair is acyclic exactly when the columns `K`
/// span `im ∂_{k+1}` and the rows outside `L` restrict that image
/// isomorphically, so the two sets can be searched independently once the
/// joint search gets too large. Returns `None` when `#F̃^{k+1}` exceeds
/// [`EXHAUSTIVE_LIMIT`] or a smaller size would need the joint search at scale.
pub fn exhaustive_pairs(f: &FlagComplex, w: &WeightFunction, k: isize, size: usize) -> Option<ExhaustiveResult> {
    let (nk1, nk) = (f.count(k + 1), f.count(k));
    if nk1 > EXHAUSTIVE_LIMIT {
        return None;
    }
    let wt1: Vec<i64> = f.simplices(k + 1).iter().map(|s| simplex_weight(s, w) as i64).collect();
    let wt0: Vec<i64> = f.simplices(k).iter().map(|s| simplex_weight(s, w) as i64).collect();
    let columns = ModularColumns::new(f, k, size)?;
    // ω(K) + ω(L) − ω(F̃^k) = ω(K) − ω(rows outside L).
    let weight_k = |kk: &[usize]| kk.iter().map(|&c| wt1[c]).sum::<i64>();
    let weight_rows = |rows: &[usize]| rows.iter().map(|&r| wt0[r]).sum::<i64>();
    let mut result = ExhaustiveResult {
        size,
        pairs: 0,
        min_weight: None,
    };
    let mut record = |count: usize, value: i64| {
        result.pairs += count;
        result.min_weight = Some(result.min_weight.map_or(value, |m: i64| m.min(value)));
    };

    if binomial(nk1, size) * binomial(nk, size) <= JOINT_SEARCH_LIMIT {
        independent_subsets(&columns.columns, size, &mut |kk| {
            combinations(nk, size, |rows| {
                if is_independent(&columns.restricted(kk, rows)) {
                    record(1, weight_k(kk) - weight_rows(rows));
                }
            });
        });
        return Some(result);
    }
    if size != boundary_matrix(f, k + 1).rank() {
        return None;
    }
    let mut bases = 0usize;
    let mut best_k: Option<(i64, Vec<usize>)> = None;
    independent_subsets(&columns.columns, size, &mut |kk| {
        bases += 1;
        let wk = weight_k(kk);
        if best_k.as_ref().is_none_or(|(b, _)| wk < *b) {
            best_k = Some((wk, kk.to_vec()));
        }
    });
    let Some((wk, basis)) = best_k else {
        return Some(result);
    };
    let mut row_sets = 0usize;
    let mut best_rows: Option<i64> = None;
    independent_subsets(&columns.transposed(&basis), size, &mut |rows| {
        row_sets += 1;
        let wr = weight_rows(rows);
        best_rows = Some(best_rows.map_or(wr, |b: i64| b.max(wr)));
    });
    if let Some(wr) = best_rows {
        record(bases * row_sets, wk - wr);
    }
    Some(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_flag_complex;
    use crate::fixtures;
    use crate::graph::derive_weight;

    #[test]
    fn tree_pairs() {
        let (g, chi) = fixtures::tree();
        let f = build_flag_complex(&g, None);
        for v in 0..4 {
            let l = vec![v];
            assert!(is_acyclic(&f, 0, &[0, 1, 2], &l).unwrap());
            assert!(is_acyclic_homological(&f, 0, &[0, 1, 2], &l).unwrap());
        }
        assert!(is_acyclic(&f, 0, &[0, 1], &[0]).is_err());
        // No triangles: K = ∅ needs L to be every edge.
        assert!(is_acyclic(&f, 1, &[], &[0, 1, 2]).unwrap());
        let w = derive_weight(&chi, 6).unwrap();
        let pair = minimal_acyclic_pair(&f, &w, 0).unwrap();
        assert_eq!(pair.size(), 3);
        assert_eq!(fitting_weight(&f, &w, &pair), 2);
        let oracle = exhaustive_pairs(&f, &w, 0, 3).unwrap();
        assert_eq!((oracle.pairs, oracle.min_weight), (4, Some(2)));
    }

    #[test]
    fn cycle_in_k_is_not_acyclic() {
        let (g, _) = fixtures::kite();
        let f = build_flag_complex(&g, Some(1));
        // The three triangle edges form a 1-cycle, so their boundary columns are dependent.
        let tri: Vec<usize> = (0..f.count(1))
            .filter(|&e| f.simplices(1)[e].vertices().iter().all(|&v| v < 3))
            .collect();
        assert_eq!(tri.len(), 3);
        let ll: Vec<usize> = (0..3).collect();
        assert!(!is_acyclic(&f, 0, &tri, &ll).unwrap());
        assert!(!acyclicity_conditions(&f, 0, &tri, &ll).unwrap().0);
    }

    #[test]
    fn minimal_pairs_match_weighted_sums() {
        let cases = [(fixtures::kite(), 0isize, 4i64), (fixtures::kite(), 1, 1), (fixtures::block3(), 1, 3)];
        for ((g, chi), k, expected) in cases {
            let f = build_flag_complex(&g, None);
            let w = derive_weight(&chi, 2).unwrap();
            let pair = minimal_acyclic_pair(&f, &w, k).unwrap();
            assert_eq!(pair.size(), boundary_matrix(&f, k + 1).rank());
            assert!(is_acyclic(&f, k, &pair.k_simplices, &pair.l_simplices).unwrap());
            assert_eq!(fitting_weight(&f, &w, &pair), expected);
        }
        let (g, chi) = fixtures::kite();
        let f = build_flag_complex(&g, None);
        let w = derive_weight(&chi, 2).unwrap();
        assert_eq!(exhaustive_pairs(&f, &w, 0, 5).unwrap().min_weight, Some(4));
        assert_eq!(exhaustive_pairs(&f, &w, 0, 6).unwrap().pairs, 0);
    }

    #[test]
    fn modular_independence_matches_rational_rank() {
        let (g, _) = fixtures::block3();
        let f = build_flag_complex(&g, None);
        let up = boundary_matrix(&f, 2);
        let m = ModularColumns::new(&f, 1, 8).unwrap();
        let mut found = 0;
        independent_subsets(&m.columns, 4, &mut |kk| {
            found += 1;
            let cols: Vec<QVector> = kk.iter().map(|&c| up.column(c)).collect();
            assert_eq!(span_rank(f.count(1), &cols), 4);
        });
        let mut expected = 0;
        combinations(f.count(2), 4, |kk| {
            let cols: Vec<QVector> = kk.iter().map(|&c| up.column(c)).collect();
            expected += usize::from(span_rank(f.count(1), &cols) == 4);
            let rows = [0, 3, 5, 9];
            let minor = up.select(&rows, kk).rank() == 4;
            assert_eq!(is_independent(&m.restricted(kk, &rows)), minor);
        });
        assert_eq!(found, expected);
        assert!(ModularColumns::new(&f, 1, 80).is_none());
    }

    #[test]
    fn zero_weights_give_zero() {
        let (g, _) = fixtures::triangle();
        let f = build_flag_complex(&g, None);
        let w = WeightFunction::zero(6);
        for k in 0..=1 {
            let pair = minimal_acyclic_pair(&f, &w, k).unwrap();
            assert_eq!(fitting_weight(&f, &w, &pair), 0);
        }
    }

    #[test]
    fn exchange_and_drop_bound() {
        for ((g, chi), k) in [(fixtures::tree(), 0isize), (fixtures::kite(), 0), (fixtures::kite(), 1)] {
            let f = build_flag_complex(&g, None);
            let w = derive_weight(&chi, 2).unwrap();
            let pair = minimal_acyclic_pair(&f, &w, k).unwrap();
            let smaller = shrink_pair(&f, &pair).unwrap().expect("maximal pairs shrink");
            assert_eq!(smaller.size() + 1, pair.size());
            let mut weights = Vec::new();
            for s in 0..=pair.size() {
                weights.push(exhaustive_pairs(&f, &w, k, s).unwrap().min_weight.unwrap());
            }
            for s in 1..weights.len() {
                let drop = weights[s] - weights[s - 1];
                assert!((0..=k as i64 + 2).contains(&drop), "size {s}: {weights:?}");
            }
        }
    }
}
