//! Pure simplicial complexes, their dual-graph diameters, and the
//! pseudomanifold / normality predicates.
//!
//! A complex is given by its facets: `d`-element subsets of `n` vertex
//! labels, so the complex is `(d-1)`-dimensional. The dual graph has one
//! node per facet and an edge whenever two facets share a ridge (`d-1`
//! common labels).

use std::collections::BTreeSet;
use std::collections::HashMap;

use super::{graph_diameter, GeometryError};

/// A pure `(d-1)`-dimensional simplicial complex on labels `0..n`.
///
/// Construction enforces the shape invariants: every facet has exactly `d`
/// distinct labels below `n`, facets are pairwise distinct, and every label
/// occurs in at least one facet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PureComplex {
    d: usize,
    n: usize,
    facets: Vec<BTreeSet<usize>>,
}

impl PureComplex {
    pub fn new(d: usize, n: usize, facets: Vec<Vec<usize>>) -> Result<Self, GeometryError> {
        if d == 0 || n < d {
            return Err(GeometryError::InvalidInstance(format!(
                "need n >= d >= 1 labels, got d = {d}, n = {n}"
            )));
        }
        if facets.is_empty() {
            return Err(GeometryError::InvalidInstance("a complex needs at least one facet".into()));
        }
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut used = vec![false; n];
        for (i, facet) in facets.iter().enumerate() {
            if let Some(&label) = facet.iter().find(|&&v| v >= n) {
                return Err(GeometryError::InvalidInstance(format!(
                    "facet {i} uses label {label}, but labels must be below {n}"
                )));
            }
            let set: BTreeSet<usize> = facet.iter().copied().collect();
            if set.len() != d {
                return Err(GeometryError::InvalidInstance(format!(
                    "facet {i} has {} distinct labels, expected {d}",
                    set.len()
                )));
            }
            for &v in &set {
                used[v] = true;
            }
            if !seen.insert(set) {
                return Err(GeometryError::InvalidInstance(format!("facet {i} is a duplicate")));
            }
        }
        if let Some(label) = used.iter().position(|&u| !u) {
            return Err(GeometryError::InvalidInstance(format!(
                "label {label} appears in no facet"
            )));
        }
        let facets = facets.into_iter().map(|f| f.into_iter().collect()).collect();
        Ok(PureComplex { d, n, facets })
    }

    /// Facet size; the complex is `(d-1)`-dimensional.
    pub fn facet_size(&self) -> usize {
        self.d
    }

    /// Number of vertex labels — the `n` parameter of the Σ sequences.
    pub fn label_count(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[BTreeSet<usize>] {
        &self.facets
    }

    fn share_ridge(&self, i: usize, j: usize) -> bool {
        self.facets[i].intersection(&self.facets[j]).count() == self.d - 1
    }

    fn dual_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adjacency = vec![Vec::new(); self.facets.len()];
        for i in 0..self.facets.len() {
            for j in i + 1..self.facets.len() {
                if self.share_ridge(i, j) {
                    adjacency[i].push(j);
                    adjacency[j].push(i);
                }
            }
        }
        adjacency
    }
}

/// Exact diameter of the dual graph (facets joined across ridges).
pub fn dual_diameter(c: &PureComplex) -> Result<u64, GeometryError> {
    graph_diameter(&c.dual_adjacency()).ok_or(GeometryError::Disconnected("dual"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct ComplexPredicates {
    pub is_pure: bool,
    pub is_pseudomanifold_without_boundary: bool,
    pub is_normal: bool,
}

/// Recomputes the structural predicates from the stored facets.
///
/// - pure: every facet has exactly `d` labels, facets are distinct, and every
///   label occurs (re-checked, though construction already enforces it);
/// - pseudomanifold without boundary: every ridge lies in exactly two facets;
/// - normal: for every face, including the empty one, the facets containing
///   it induce a connected subgraph of the dual graph. (The empty face makes
///   normality include connectivity of the whole complex.)
pub fn complex_predicates(c: &PureComplex) -> ComplexPredicates {
    let distinct: BTreeSet<&BTreeSet<usize>> = c.facets.iter().collect();
    let mut used = vec![false; c.n];
    for facet in &c.facets {
        for &v in facet {
            used[v] = true;
        }
    }
    let is_pure = c.facets.iter().all(|f| f.len() == c.d)
        && distinct.len() == c.facets.len()
        && used.iter().all(|&u| u);

    let mut ridge_count: HashMap<BTreeSet<usize>, usize> = HashMap::new();
    for facet in &c.facets {
        for &drop in facet {
            let mut ridge = facet.clone();
            ridge.remove(&drop);
            *ridge_count.entry(ridge).or_insert(0) += 1;
        }
    }
    let is_pseudomanifold_without_boundary = ridge_count.values().all(|&count| count == 2);

    let adjacency = c.dual_adjacency();
    let mut faces: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for facet in &c.facets {
        let elems: Vec<usize> = facet.iter().copied().collect();
        for mask in 0..1u32 << elems.len() {
            faces.insert(
                elems.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect(),
            );
        }
    }
    let is_normal = faces.iter().all(|face| {
        let star: Vec<usize> =
            (0..c.facets.len()).filter(|&i| face.is_subset(&c.facets[i])).collect();
        induced_connected(&adjacency, &star)
    });

    ComplexPredicates { is_pure, is_pseudomanifold_without_boundary, is_normal }
}

/// Whether the subgraph induced on `nodes` is connected (true when empty or
/// a single node).
fn induced_connected(adjacency: &[Vec<usize>], nodes: &[usize]) -> bool {
    let Some(&start) = nodes.first() else { return true };
    let in_set: BTreeSet<usize> = nodes.iter().copied().collect();
    let mut visited = BTreeSet::new();
    visited.insert(start);
    let mut queue = vec![start];
    while let Some(u) = queue.pop() {
        for &v in &adjacency[u] {
            if in_set.contains(&v) && visited.insert(v) {
                queue.push(v);
            }
        }
    }
    visited.len() == nodes.len()
}

/// Boundary of the `d`-simplex: all `d`-subsets of `d+1` labels. The dual
/// graph is complete.
pub fn simplex_boundary(d: usize) -> PureComplex {
    let facets: Vec<Vec<usize>> =
        (0..=d).map(|skip| (0..=d).filter(|&v| v != skip).collect()).collect();
    PureComplex::new(d, d + 1, facets).expect("simplex boundary is well-formed")
}

/// Boundary of the `d`-dimensional cross-polytope: `2^d` facets on `2d`
/// labels (label `i` is the positive end of axis `i`, label `d+i` the
/// negative end). For `d = 3` this is the octahedron; its dual graph is the
/// `d`-cube graph.
pub fn cross_polytope_boundary(d: usize) -> PureComplex {
    let facets: Vec<Vec<usize>> = (0..1u32 << d)
        .map(|pattern| {
            (0..d).map(|i| if pattern >> i & 1 == 0 { i } else { d + i }).collect()
        })
        .collect();
    PureComplex::new(d, 2 * d, facets).expect("cross-polytope boundary is well-formed")
}

/// The `n`-cycle as a 1-dimensional pure complex (`d = 2`): facets
/// `{i, i+1 mod n}`. Its dual graph is again an `n`-cycle, so the dual
/// diameter is `floor(n/2)` — the base row of the Σ recursion.
pub fn cycle_complex(n: usize) -> PureComplex {
    let facets: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    PureComplex::new(2, n, facets).expect("cycle is well-formed for n >= 3")
}
