//! Flag complexes of graphs, their incidence matrices, subcomplexes, and the
//! weight filtration `F^m_j = F^{m-1} ∪ {m-simplices of weight ≤ j}`.
//!
//! Every complex carries the empty simplex in dimension −1, so all homology
//! computed here is reduced homology.

use std::collections::HashMap;
use std::fmt;

use crate::algebra::QMatrix;
use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, WeightFunction};

/// Strictly increasing vertex indices; the empty simplex has dimension −1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Structure("simplex with a repeated vertex".into()));
        }
        Ok(Simplex(vertices))
    }

    pub fn empty() -> Self {
        Simplex(Vec::new())
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// `σ ∖ {vertex at position i}`.
    pub fn facet(&self, i: usize) -> Simplex {
        let mut v = self.0.clone();
        v.remove(i);
        Simplex(v)
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Incidence number `⟨σ|τ⟩`: `(−1)^s` when `τ = σ ∖ {v_i}`, where `s` counts
/// the vertices of `τ` that come after `v_i`; zero when `τ` is not a facet.
/// A vertex has incidence `+1` with the empty simplex.
pub fn incidence(sigma: &Simplex, tau: &Simplex) -> i8 {
    if sigma.0.len() != tau.0.len() + 1 {
        return 0;
    }
    let Some(i) = (0..sigma.0.len()).find(|&i| sigma.0[i] != *tau.0.get(i).unwrap_or(&usize::MAX)) else {
        return 0;
    };
    if sigma.0[..i] != tau.0[..i] || sigma.0[i + 1..] != tau.0[i..] {
        return 0;
    }
    let later = sigma.0.len() - 1 - i;
    if later.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sign of the facet obtained by removing position `i` from a simplex with
/// `len` vertices.
pub(crate) fn facet_sign(len: usize, i: usize) -> i64 {
    if (len - 1 - i).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All cliques of a graph, graded by dimension and ordered lexicographically.
#[derive(Clone, Debug)]
pub struct FlagComplex {
    vertex_count: usize,
    /// `levels[m + 1]` holds the m-simplices.
    levels: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

/// Builds the flag complex of `graph`, truncated to dimension `max_dim` when given.
pub fn build_flag_complex(graph: &SimplicialGraph, max_dim: Option<usize>) -> FlagComplex {
    let n = graph.vertex_count();
    let mut levels: Vec<Vec<Simplex>> = vec![vec![Simplex::empty()]];
    let mut stack: Vec<usize> = Vec::new();

    fn extend(
        graph: &SimplicialGraph,
        stack: &mut Vec<usize>,
        start: usize,
        max_len: usize,
        levels: &mut Vec<Vec<Simplex>>,
    ) {
        for v in start..graph.vertex_count() {
            if !stack.iter().all(|&u| graph.adjacent(u, v)) {
                continue;
            }
            stack.push(v);
            if levels.len() <= stack.len() {
                levels.push(Vec::new());
            }
            levels[stack.len()].push(Simplex(stack.clone()));
            if stack.len() < max_len {
                extend(graph, stack, v + 1, max_len, levels);
            }
            stack.pop();
        }
    }

    let max_len = max_dim.map_or(n, |d| d + 1);
    if max_len > 0 {
        extend(graph, &mut stack, 0, max_len, &mut levels);
    }
    for level in &mut levels {
        level.sort();
    }
    let index = levels
        .iter()
        .map(|l| l.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
        .collect();
    FlagComplex {
        vertex_count: n,
        levels,
        index,
    }
}

impl FlagComplex {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Top dimension; −1 for the complex of the empty graph.
    pub fn dim(&self) -> isize {
        self.levels.len() as isize - 2
    }

    /// The m-simplices (`m ≥ −1`), empty outside the range.
    pub fn simplices(&self, m: isize) -> &[Simplex] {
        usize::try_from(m + 1)
            .ok()
            .and_then(|i| self.levels.get(i))
            .map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, m: isize) -> usize {
        self.simplices(m).len()
    }

    pub fn position(&self, s: &Simplex) -> Option<usize> {
        self.index.get((s.dim() + 1) as usize)?.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.position(s).is_some()
    }

    /// Reduced Euler characteristic `Σ (−1)^m #m-simplices`, from `m = −1`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        (-1..=self.dim())
            .map(|m| if m.rem_euclid(2) == 0 { 1 } else { -1 } * self.count(m) as i64)
            .sum()
    }

    /// Nonzero entries `(row, sign)` of column `sigma` of the k-th boundary
    /// matrix, where `sigma` is the `col`-th k-simplex.
    pub(crate) fn boundary_column(&self, k: isize, col: usize) -> Vec<(usize, usize, i64)> {
        let sigma = &self.simplices(k)[col];
        let len = sigma.0.len();
        (0..len)
            .map(|i| {
                let face = sigma.facet(i);
                let row = self.position(&face).expect("flag complexes are closed under faces");
                (row, sigma.0[i], facet_sign(len, i))
            })
            .collect()
    }

    pub fn full(&self) -> Subcomplex<'_> {
        Subcomplex {
            complex: self,
            members: self.levels.iter().map(|l| vec![true; l.len()]).collect(),
        }
    }

    pub fn skeleton(&self, m: isize) -> Subcomplex<'_> {
        self.filtered(|s| s.dim() <= m)
    }

    /// The subcomplex of simplices satisfying `keep`. The caller guarantees face closure.
    pub fn filtered(&self, keep: impl Fn(&Simplex) -> bool) -> Subcomplex<'_> {
        Subcomplex {
            complex: self,
            members: self.levels.iter().map(|l| l.iter().map(&keep).collect()).collect(),
        }
    }

    /// Relabels the vertices by `order` (old indices in their new positions)
    /// and rebuilds the simplex orderings.
    pub fn vertex_relabel_map(order: &[usize]) -> Vec<usize> {
        let mut new_of_old = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_of_old[old] = new;
        }
        new_of_old
    }
}

/// Integer incidence matrix of `∂_k`: rows are the (k−1)-simplices (the empty
/// simplex when `k = 0`), columns the k-simplices. Out-of-range `k` yields an
/// empty matrix of the right shape.
pub fn boundary_matrix(f: &FlagComplex, k: isize) -> QMatrix {
    let rows = f.count(k - 1);
    let cols = f.count(k);
    let mut entries = vec![vec![0i64; cols]; rows];
    for c in 0..cols {
        for (r, _, sign) in f.boundary_column(k, c) {
            entries[r][c] = sign;
        }
    }
    QMatrix::from_i64(rows, cols, |i, j| entries[i][j])
}

pub fn simplex_weight(sigma: &Simplex, w: &WeightFunction) -> usize {
    sigma.0.iter().map(|&v| w.weight(v) as usize).sum()
}

/// `ω(F̃^k)`, the summed weight of all k-simplices.
pub fn total_weight(f: &FlagComplex, w: &WeightFunction, k: isize) -> usize {
    f.simplices(k).iter().map(|s| simplex_weight(s, w)).sum()
}

/// A face-closed subset of a flag complex, stored as a membership mask.
#[derive(Clone, Debug)]
pub struct Subcomplex<'a> {
    complex: &'a FlagComplex,
    members: Vec<Vec<bool>>,
}

impl<'a> Subcomplex<'a> {
    pub fn complex(&self) -> &'a FlagComplex {
        self.complex
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.complex
            .position(s)
            .is_some_and(|i| self.members[(s.dim() + 1) as usize][i])
    }

    pub fn contains_index(&self, m: isize, i: usize) -> bool {
        usize::try_from(m + 1)
            .ok()
            .and_then(|l| self.members.get(l))
            .is_some_and(|l| l[i])
    }

    /// Positions (within the ambient complex) of the m-simplices present.
    pub fn indices(&self, m: isize) -> Vec<usize> {
        (0..self.complex.count(m)).filter(|&i| self.contains_index(m, i)).collect()
    }

    pub fn count(&self, m: isize) -> usize {
        self.indices(m).len()
    }

    pub fn is_subcomplex_of(&self, other: &Subcomplex<'_>) -> bool {
        self.members
            .iter()
            .zip(&other.members)
            .all(|(a, b)| a.iter().zip(b).all(|(&x, &y)| !x || y))
    }

    pub fn is_face_closed(&self) -> bool {
        (0..=self.complex.dim()).all(|m| {
            self.indices(m).into_iter().all(|i| {
                let s = &self.complex.simplices(m)[i];
                (0..s.0.len()).all(|p| self.contains(&s.facet(p)))
            })
        })
    }

    /// Reduced Betti number `h̃_i`.
    pub fn reduced_betti(&self, i: isize) -> usize {
        relative_chain_betti(self.complex, |m, idx| self.contains_index(m, idx), i)
    }
}

/// `dim H̃_i(X, A)` for subcomplexes `A ⊆ X`, via the quotient of augmented chain complexes.
pub fn relative_betti(x: &Subcomplex<'_>, a: &Subcomplex<'_>, i: isize) -> usize {
    assert!(std::ptr::eq(x.complex, a.complex), "subcomplexes of different complexes");
    relative_chain_betti(x.complex, |m, idx| x.contains_index(m, idx) && !a.contains_index(m, idx), i)
}

fn relative_chain_betti(f: &FlagComplex, present: impl Fn(isize, usize) -> bool, i: isize) -> usize {
    let cells: Vec<usize> = (0..f.count(i)).filter(|&c| present(i, c)).collect();
    if cells.is_empty() {
        return 0;
    }
    let below: Vec<usize> = (0..f.count(i - 1)).filter(|&c| present(i - 1, c)).collect();
    let above: Vec<usize> = (0..f.count(i + 1)).filter(|&c| present(i + 1, c)).collect();
    let rank_out = boundary_matrix(f, i).select(&below, &cells).rank();
    let rank_in = boundary_matrix(f, i + 1).select(&cells, &above).rank();
    cells.len() - rank_out - rank_in
}

/// A level `F^m_j` of the weight filtration.
#[derive(Clone, Debug)]
pub struct FiltrationLevel<'a> {
    pub subcomplex: Subcomplex<'a>,
    pub m: isize,
    pub j: usize,
}

/// `F^m_j = F^{m−1} ∪ {m-simplices σ with ω(σ) ≤ j}`, for `−1 ≤ m ≤ dim F`
/// and `0 ≤ j ≤ m + 1`.
pub fn filtration_level<'a>(f: &'a FlagComplex, w: &WeightFunction, m: isize, j: usize) -> Result<FiltrationLevel<'a>> {
    if m < -1 || m > f.dim().max(-1) + 1 {
        return Err(Error::Argument(format!("filtration dimension {m} outside the complex")));
    }
    if j as isize > m + 1 {
        return Err(Error::Argument(format!("filtration weight bound {j} exceeds {}", m + 1)));
    }
    let subcomplex = f.filtered(|s| s.dim() < m || (s.dim() == m && simplex_weight(s, w) <= j));
    Ok(FiltrationLevel { subcomplex, m, j })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn clique_counts() {
        let tree = build_flag_complex(&fixtures::tree().0, None);
        assert_eq!((tree.count(0), tree.count(1), tree.count(2)), (4, 3, 0));
        let kite = build_flag_complex(&fixtures::kite().0, None);
        assert_eq!((kite.count(0), kite.count(1), kite.count(2), kite.count(3)), (6, 6, 1, 0));
        let empty = build_flag_complex(&SimplicialGraph::from_indices(0, []).unwrap(), None);
        assert_eq!(empty.count(-1), 1);
        assert_eq!(empty.dim(), -1);
        let k4 = SimplicialGraph::from_indices(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let truncated = build_flag_complex(&k4, Some(1));
        assert_eq!((truncated.count(1), truncated.count(2)), (6, 0));
        assert_eq!(build_flag_complex(&k4, None).count(3), 1);
    }

    #[test]
    fn block3_matches_brute_force_cliques() {
        let (g, _) = fixtures::block3();
        let f = build_flag_complex(&g, None);
        let n = g.vertex_count();
        let mut counts = vec![0usize; n + 1];
        for mask in 1u32..(1 << n) {
            let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| g.adjacent(a, b))) {
                counts[vs.len()] += 1;
            }
        }
        assert_eq!(counts[1..5], [7, 14, 8, 0]);
        for m in 0..4 {
            assert_eq!(f.count(m), counts[(m + 1) as usize]);
        }
    }

    #[test]
    fn incidence_signs() {
        let s = |v: &[usize]| Simplex::new(v.to_vec()).unwrap();
        assert_eq!(incidence(&s(&[0, 1]), &s(&[0])), 1);
        assert_eq!(incidence(&s(&[0, 1]), &s(&[1])), -1);
        assert_eq!(incidence(&s(&[0, 1]), &s(&[2])), 0);
        assert_eq!(incidence(&s(&[0, 1]), &s(&[0, 2])), 0);
        assert_eq!(incidence(&s(&[0, 1, 2]), &s(&[0, 2])), -1);
        assert_eq!(incidence(&s(&[0, 1, 2]), &s(&[1, 2])), 1);
        assert_eq!(incidence(&s(&[0, 1, 2]), &s(&[0, 1])), 1);
        assert_eq!(incidence(&s(&[3]), &Simplex::empty()), 1);
    }

    #[test]
    fn boundary_matrices() {
        let tree = build_flag_complex(&fixtures::tree().0, None);
        let aug = boundary_matrix(&tree, 0);
        assert_eq!((aug.rows(), aug.cols()), (1, 4));
        assert!((0..4).all(|j| aug.get(0, j) == &crate::algebra::rational(1)));
        let d1 = boundary_matrix(&tree, 1);
        assert_eq!((d1.rows(), d1.cols(), d1.rank()), (4, 3, 3));
        let out = boundary_matrix(&tree, 5);
        assert_eq!((out.rows(), out.cols()), (0, 0));
        let past_top = boundary_matrix(&tree, 2);
        assert_eq!((past_top.rows(), past_top.cols()), (3, 0));

        let tri = build_flag_complex(&fixtures::triangle().0, None);
        for k in 0..=tri.dim() {
            let prod = boundary_matrix(&tri, k).mul(&boundary_matrix(&tri, k + 1));
            assert!(prod.is_zero(), "∂_{k}∂_{} ≠ 0", k + 1);
        }
        assert_eq!(boundary_matrix(&tri, 2).rank(), 4);
    }

    #[test]
    fn weights() {
        let (g, chi) = fixtures::block3();
        let f = build_flag_complex(&g, None);
        let w = crate::graph::derive_weight(&chi, 2).unwrap();
        let delta = Simplex::new(vec![4, 5, 6]).unwrap();
        assert!(f.contains(&delta));
        assert_eq!(simplex_weight(&delta, &w), 3);
        assert_eq!(simplex_weight(&Simplex::empty(), &w), 0);

        let (kg, kchi) = fixtures::kite();
        let kf = build_flag_complex(&kg, None);
        let kw = crate::graph::derive_weight(&kchi, 2).unwrap();
        assert_eq!(simplex_weight(&Simplex::new(vec![0, 3]).unwrap(), &kw), 1);
        assert_eq!(total_weight(&kf, &kw, 0), 3);
        assert_eq!(total_weight(&kf, &WeightFunction::zero(6), 1), 0);

        let (tg, tchi) = fixtures::tree();
        let tf = build_flag_complex(&tg, None);
        assert_eq!(total_weight(&tf, &crate::graph::derive_weight(&tchi, 6).unwrap(), 0), 2);
    }

    #[test]
    fn filtration_levels() {
        let (g, chi) = fixtures::block3();
        let f = build_flag_complex(&g, None);
        let w = crate::graph::derive_weight(&chi, 2).unwrap();
        let gamma0 = filtration_level(&f, &w, 1, 0).unwrap();
        assert_eq!((gamma0.subcomplex.count(0), gamma0.subcomplex.count(1)), (7, 4));
        let f21 = filtration_level(&f, &w, 2, 1).unwrap();
        assert_eq!((f21.subcomplex.count(1), f21.subcomplex.count(2)), (14, 4));
        let full1 = filtration_level(&f, &w, 1, 2).unwrap();
        assert_eq!(full1.subcomplex.count(1), 14);
        assert!(filtration_level(&f, &w, 1, 3).is_err());
        for m in 0..=2 {
            for j in 0..=(m + 1) as usize {
                let lvl = filtration_level(&f, &w, m, j).unwrap();
                assert!(lvl.subcomplex.is_face_closed());
                if j > 0 {
                    let prev = filtration_level(&f, &w, m, j - 1).unwrap();
                    assert!(prev.subcomplex.is_subcomplex_of(&lvl.subcomplex));
                }
            }
        }
    }

    #[test]
    fn euler_characteristic_matches_betti_numbers() {
        for (g, _) in [fixtures::tree(), fixtures::kite(), fixtures::triangle(), fixtures::block3()] {
            let f = build_flag_complex(&g, None);
            let full = f.full();
            let alt: i64 = (-1..=f.dim())
                .map(|i| if i.rem_euclid(2) == 0 { 1 } else { -1 } * full.reduced_betti(i) as i64)
                .sum();
            assert_eq!(alt, f.reduced_euler_characteristic());
        }
    }
}
