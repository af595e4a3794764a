//! Input graphs, integer characters on their vertices, and the weight
//! functions a character induces for each candidate torsion order.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_integer::Integer;

use crate::error::{Error, Result};

/// A finite simplicial graph with a fixed total order on its vertices.
///
/// The declaration order of the vertices is the order used for every
/// incidence sign downstream, so two graphs that differ only in vertex order
/// produce boundary matrices that differ by signs and permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialGraph {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    adjacency: Vec<Vec<bool>>,
    edges: BTreeSet<(usize, usize)>,
}

impl SimplicialGraph {
    pub fn new<S, E>(vertices: impl IntoIterator<Item = S>, edges: impl IntoIterator<Item = (E, E)>) -> Result<Self>
    where
        S: Into<String>,
        E: AsRef<str>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::Structure(format!("duplicate vertex {v:?}")));
            }
        }
        let n = vertices.len();
        let mut graph = SimplicialGraph {
            vertices,
            index,
            adjacency: vec![vec![false; n]; n],
            edges: BTreeSet::new(),
        };
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let ia = graph.require(a)?;
            let ib = graph.require(b)?;
            if ia == ib {
                return Err(Error::Structure(format!("self-loop at vertex {a:?}")));
            }
            let key = (ia.min(ib), ia.max(ib));
            if !graph.edges.insert(key) {
                return Err(Error::Structure(format!("duplicate edge {{{a:?}, {b:?}}}")));
            }
            graph.adjacency[ia][ib] = true;
            graph.adjacency[ib][ia] = true;
        }
        Ok(graph)
    }

    /// Graph on vertices `0..n` named by their index, from index pairs.
    pub fn from_indices(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let edges: Vec<(String, String)> = edges
            .into_iter()
            .map(|(a, b)| {
                let name = |i: usize| names.get(i).cloned().unwrap_or_else(|| format!("#{i}"));
                (name(a), name(b))
            })
            .collect();
        SimplicialGraph::new(names.clone(), edges)
    }

    fn require(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::Structure(format!("unknown vertex {name:?}")))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Edges as index pairs `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a][b]
    }

    pub fn connected_components(&self) -> usize {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                for (w, &adjacent) in self.adjacency[v].iter().enumerate() {
                    if adjacent && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components() <= 1
    }

    /// The same graph with vertices re-declared in the order `order`
    /// (a permutation of `0..n`, giving old indices in their new positions).
    pub fn reordered(&self, order: &[usize]) -> Result<SimplicialGraph> {
        check_permutation(order, self.vertex_count())?;
        let names: Vec<String> = order.iter().map(|&i| self.vertices[i].clone()).collect();
        let edges: Vec<(String, String)> = self
            .edges()
            .map(|(a, b)| (self.vertices[a].clone(), self.vertices[b].clone()))
            .collect();
        SimplicialGraph::new(names, edges)
    }
}

fn check_permutation(order: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if order.len() != n {
        return Err(Error::Argument(format!("permutation of length {} for {n} vertices", order.len())));
    }
    for &i in order {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return Err(Error::Argument("vertex order is not a permutation".into()));
        }
    }
    Ok(())
}

/// A rank-one character `v ↦ n_v`, stored in the vertex order of its graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Character {
    values: Vec<i64>,
}

impl Character {
    pub fn new(values: Vec<i64>) -> Self {
        Character { values }
    }

    /// Builds the character of `graph` from a vertex-name map, requiring
    /// exactly one value per vertex.
    pub fn from_map(graph: &SimplicialGraph, map: &BTreeMap<String, i64>) -> Result<Self> {
        for name in map.keys() {
            if graph.vertex_index(name).is_none() {
                return Err(Error::Structure(format!("character assigns a value to unknown vertex {name:?}")));
            }
        }
        let values = graph
            .vertices()
            .iter()
            .map(|v| {
                map.get(v)
                    .copied()
                    .ok_or_else(|| Error::Structure(format!("character has no value for vertex {v:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Character { values })
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, v: usize) -> i64 {
        self.values[v]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn check_domain(&self, graph: &SimplicialGraph) -> Result<()> {
        if self.values.len() != graph.vertex_count() {
            return Err(Error::Structure(format!(
                "character has {} values but the graph has {} vertices",
                self.values.len(),
                graph.vertex_count()
            )));
        }
        Ok(())
    }

    pub fn is_resonant(&self) -> bool {
        self.values.contains(&0)
    }

    pub fn gcd(&self) -> i64 {
        self.values.iter().fold(0i64, |acc, &n| acc.gcd(&n))
    }

    /// Values permuted along with a vertex reordering (see [`SimplicialGraph::reordered`]).
    pub fn reordered(&self, order: &[usize]) -> Result<Character> {
        check_permutation(order, self.values.len())?;
        Ok(Character::new(order.iter().map(|&i| self.values[i]).collect()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum CharacterClass {
    NonResonantSurjective,
    /// Some `n_v = 0`.
    Resonant,
    /// All values nonzero but `gcd ≠ 1`.
    NonSurjective,
    /// Some `n_v < 0`.
    NonPositive,
}

/// Classifies `chi`. Precedence when several defects apply:
/// resonant, then non-positive, then non-surjective.
pub fn classify_character(graph: &SimplicialGraph, chi: &Character) -> Result<CharacterClass> {
    chi.check_domain(graph)?;
    Ok(if chi.is_resonant() {
        CharacterClass::Resonant
    } else if chi.values.iter().any(|&n| n < 0) {
        CharacterClass::NonPositive
    } else if chi.gcd() != 1 {
        CharacterClass::NonSurjective
    } else {
        CharacterClass::NonResonantSurjective
    })
}

/// Indicator of the vertices whose label is divisible by `order`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightFunction {
    weights: Vec<u8>,
    order: u64,
}

impl WeightFunction {
    /// A weight function given directly by its 0/1 values. `order` is recorded
    /// as 2, the order at which an even character carries these weights.
    pub fn from_weights(weights: Vec<u8>) -> Result<Self> {
        if weights.iter().any(|&w| w > 1) {
            return Err(Error::Argument("vertex weights must be 0 or 1".into()));
        }
        Ok(WeightFunction { weights, order: 2 })
    }

    pub fn zero(n: usize) -> Self {
        WeightFunction { weights: vec![0; n], order: 2 }
    }

    pub fn weights(&self) -> &[u8] {
        &self.weights
    }

    pub fn weight(&self, v: usize) -> u8 {
        self.weights[v]
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn total(&self) -> usize {
        self.weights.iter().map(|&w| w as usize).sum()
    }

    pub fn reordered(&self, order: &[usize]) -> Result<WeightFunction> {
        check_permutation(order, self.weights.len())?;
        Ok(WeightFunction {
            weights: order.iter().map(|&i| self.weights[i]).collect(),
            order: self.order,
        })
    }
}

pub fn derive_weight(chi: &Character, d: u64) -> Result<WeightFunction> {
    if d < 2 {
        return Err(Error::Argument(format!("torsion order must be at least 2, got {d}")));
    }
    let weights = chi
        .values
        .iter()
        .map(|&n| u8::from(n.unsigned_abs() % d == 0))
        .collect();
    Ok(WeightFunction { weights, order: d })
}

/// The even character with value 2 on the vertices whose label `d` divides and
/// 1 elsewhere. It carries the same weight function at order 2 as `chi` at `d`.
pub fn even_reduction(chi: &Character, d: u64) -> Result<Character> {
    let weight = derive_weight(chi, d)?;
    if !weight.weights.is_empty() && weight.weights.iter().all(|&w| w == 1) {
        return Err(Error::Unsupported(format!(
            "{d} divides every label, so the character is not surjective"
        )));
    }
    Ok(Character::new(weight.weights.iter().map(|&w| 1 + i64::from(w)).collect()))
}

/// Orders `d ≥ 2` dividing at least one label; torsion at any other `d > 1` vanishes.
pub fn candidate_torsion_orders(chi: &Character) -> Result<Vec<u64>> {
    if chi.is_resonant() {
        return Err(Error::Unsupported(
            "resonant character: every order divides a zero label".into(),
        ));
    }
    let mut orders = BTreeSet::new();
    for &n in &chi.values {
        let n = n.unsigned_abs();
        let mut d = 1;
        while d * d <= n {
            if n % d == 0 {
                orders.insert(d);
                orders.insert(n / d);
            }
            d += 1;
        }
    }
    orders.remove(&1);
    Ok(orders.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree() -> (SimplicialGraph, Character) {
        let g = SimplicialGraph::new(["v0", "v1", "v2", "v3"], [("v0", "v1"), ("v0", "v2"), ("v2", "v3")]).unwrap();
        (g, Character::new(vec![18, 4, 12, 9]))
    }

    #[test]
    fn classify_examples() {
        let (g, chi) = tree();
        assert_eq!(classify_character(&g, &chi).unwrap(), CharacterClass::NonResonantSurjective);
        let res = Character::new(vec![1, 0, 2, 2]);
        assert_eq!(classify_character(&g, &res).unwrap(), CharacterClass::Resonant);
        let edge = SimplicialGraph::from_indices(2, [(0, 1)]).unwrap();
        assert_eq!(
            classify_character(&edge, &Character::new(vec![2, 4])).unwrap(),
            CharacterClass::NonSurjective
        );
        assert_eq!(
            classify_character(&edge, &Character::new(vec![0, 4])).unwrap(),
            CharacterClass::Resonant
        );
        assert_eq!(
            classify_character(&edge, &Character::new(vec![-1, 2])).unwrap(),
            CharacterClass::NonPositive
        );
        assert!(matches!(
            classify_character(&edge, &Character::new(vec![1])),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn weights_and_reductions() {
        let (_, chi) = tree();
        assert_eq!(derive_weight(&chi, 6).unwrap().weights(), &[1, 0, 1, 0]);
        assert_eq!(derive_weight(&chi, 2).unwrap().weights(), &[1, 1, 1, 0]);
        assert_eq!(derive_weight(&chi, 19).unwrap().weights(), &[0, 0, 0, 0]);
        assert!(derive_weight(&chi, 1).is_err());
        assert_eq!(even_reduction(&chi, 6).unwrap().values(), &[2, 1, 2, 1]);
        assert_eq!(even_reduction(&chi, 4).unwrap().values(), &[1, 2, 2, 1]);
        assert_eq!(even_reduction(&chi, 7).unwrap().values(), &[1, 1, 1, 1]);
        assert!(even_reduction(&Character::new(vec![2, 4]), 2).is_err());
    }

    #[test]
    fn candidate_orders() {
        let (_, chi) = tree();
        assert_eq!(candidate_torsion_orders(&chi).unwrap(), vec![2, 3, 4, 6, 9, 12, 18]);
        assert!(candidate_torsion_orders(&Character::new(vec![1, 1, 1])).unwrap().is_empty());
        assert_eq!(candidate_torsion_orders(&Character::new(vec![2, 3])).unwrap(), vec![2, 3]);
        assert!(candidate_torsion_orders(&Character::new(vec![1, 0])).is_err());
    }

    #[test]
    fn graph_validation() {
        assert!(SimplicialGraph::new(["a"], [("a", "a")]).is_err());
        assert!(SimplicialGraph::new(["a", "b"], [("a", "b"), ("b", "a")]).is_err());
        assert!(SimplicialGraph::new(["a", "b"], [("a", "c")]).is_err());
        assert!(SimplicialGraph::new(["a", "a"], Vec::<(&str, &str)>::new()).is_err());
        let two = SimplicialGraph::from_indices(2, []).unwrap();
        assert_eq!(two.connected_components(), 2);
    }

    #[test]
    fn reduction_preserves_weight() {
        let (_, chi) = tree();
        for d in candidate_torsion_orders(&chi).unwrap() {
            let rho = even_reduction(&chi, d).unwrap();
            assert_eq!(derive_weight(&rho, 2).unwrap().weights(), derive_weight(&chi, d).unwrap().weights());
            let values: BTreeSet<i64> = rho.values().iter().copied().collect();
            assert_eq!(values, BTreeSet::from([1, 2]));
        }
    }
}
