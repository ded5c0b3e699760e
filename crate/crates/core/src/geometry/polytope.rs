//! H-representation polytopes and their exact graph diameters.
//!
//! Vertices are enumerated by brute force over all `C(m, d)` halfspace
//! subsets with an invertible coefficient matrix — simple, exact, and
//! adequate at the enforced budget (`m <= 24`, `d <= 8`). Adjacency is
//! decided by the rank of the common tight set, so degenerate (non-simple)
//! vertices are handled correctly, and boundedness is certified by searching
//! the recession system for a nonzero direction with the same subset method.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::exact::Rat;

use super::linalg::{dot, kernel_vector, rank, solve_square};
use super::{graph_diameter, GeometryError};

/// One constraint `normal · x <= offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: Vec<Rat>,
    pub offset: Rat,
}

/// A polyhedron given as an intersection of halfspaces in `R^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolytope {
    dimension: usize,
    halfspaces: Vec<Halfspace>,
}

/// Enumeration budget: `C(m, d)` exact solves stay desk-sized below this.
pub const MAX_HALFSPACES: usize = 24;
pub const MAX_DIMENSION: usize = 8;

impl HPolytope {
    pub fn new(dimension: usize, halfspaces: Vec<Halfspace>) -> Result<Self, GeometryError> {
        if dimension == 0 {
            return Err(GeometryError::InvalidInstance("dimension must be at least 1".into()));
        }
        if let Some(i) = halfspaces.iter().position(|h| h.normal.len() != dimension) {
            return Err(GeometryError::InvalidInstance(format!(
                "halfspace {i} has {} coefficients, expected {dimension}",
                halfspaces[i].normal.len()
            )));
        }
        Ok(HPolytope { dimension, halfspaces })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Number of halfspaces; doubles as the facet count `n` for irredundant
    /// descriptions, which is what the bound comparisons use.
    pub fn halfspace_count(&self) -> usize {
        self.halfspaces.len()
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    fn check_budget(&self) -> Result<(), GeometryError> {
        if self.halfspaces.len() > MAX_HALFSPACES || self.dimension > MAX_DIMENSION {
            return Err(GeometryError::BudgetExceeded {
                m: self.halfspaces.len(),
                d: self.dimension,
            });
        }
        Ok(())
    }

    /// The full tight set at `x`, or None if `x` violates some halfspace.
    fn tight_set_if_feasible(&self, x: &[Rat]) -> Option<BTreeSet<usize>> {
        let mut tight = BTreeSet::new();
        for (i, h) in self.halfspaces.iter().enumerate() {
            match dot(&h.normal, x).cmp(&h.offset) {
                Ordering::Greater => return None,
                Ordering::Equal => {
                    tight.insert(i);
                }
                Ordering::Less => {}
            }
        }
        Some(tight)
    }

    fn normal_rows(&self, indices: &[usize]) -> Vec<Vec<Rat>> {
        indices.iter().map(|&i| self.halfspaces[i].normal.clone()).collect()
    }
}

/// A vertex with exact coordinates and the indices of all halfspaces tight
/// at it. The tight set always has rank `d`: it contains the invertible
/// basis that produced the vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexRecord {
    pub coordinates: Vec<Rat>,
    pub tight_facets: BTreeSet<usize>,
}

/// Lexicographic iterator over all `k`-subsets of `0..m`, as sorted vectors.
struct Combinations {
    m: usize,
    k: usize,
    indices: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(m: usize, k: usize) -> Self {
        Combinations { m, k, indices: (0..k).collect(), done: k > m }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let current = self.indices.clone();
        let mut i = self.k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.indices[i] < self.m - self.k + i {
                self.indices[i] += 1;
                for j in i + 1..self.k {
                    self.indices[j] = self.indices[j - 1] + 1;
                }
                break;
            }
        }
        Some(current)
    }
}

/// All vertices of `p`, in lexicographic coordinate order.
///
/// Every invertible `d`-subset of constraints is solved exactly; solutions
/// violating any halfspace are discarded, and coincident solutions collapse
/// to one record. The recorded tight set is the full set of constraints
/// tight at the point, so merging across bases is automatic.
pub fn enumerate_vertices(p: &HPolytope) -> Result<Vec<VertexRecord>, GeometryError> {
    p.check_budget()?;
    let d = p.dimension;
    let mut found: BTreeMap<Vec<Rat>, BTreeSet<usize>> = BTreeMap::new();
    for subset in Combinations::new(p.halfspaces.len(), d) {
        let rows = p.normal_rows(&subset);
        let rhs: Vec<Rat> = subset.iter().map(|&i| p.halfspaces[i].offset.clone()).collect();
        let Some(x) = solve_square(&rows, &rhs) else { continue };
        if found.contains_key(&x) {
            continue;
        }
        if let Some(tight) = p.tight_set_if_feasible(&x) {
            found.insert(x, tight);
        }
    }
    if found.is_empty() {
        return Err(GeometryError::EmptyPolytope);
    }
    Ok(found
        .into_iter()
        .map(|(coordinates, tight_facets)| VertexRecord { coordinates, tight_facets })
        .collect())
}

/// A nonzero recession direction (`normal · v <= 0` for every constraint),
/// or None when the recession system certifies boundedness.
///
/// If the normals do not span `R^d`, any kernel vector is a recession line.
/// Otherwise the recession cone is pointed, so if it is nontrivial it has an
/// extreme ray tight on `d-1` independent constraints — found by checking
/// the kernel of every `(d-1)`-subset in both orientations.
pub fn unbounded_direction(p: &HPolytope) -> Result<Option<Vec<Rat>>, GeometryError> {
    p.check_budget()?;
    let d = p.dimension;
    let all: Vec<usize> = (0..p.halfspaces.len()).collect();
    if let Some(v) = kernel_vector(&p.normal_rows(&all), d) {
        return Ok(Some(v));
    }
    let is_recession =
        |v: &[Rat]| p.halfspaces.iter().all(|h| !dot(&h.normal, v).is_positive());
    for subset in Combinations::new(p.halfspaces.len(), d - 1) {
        let Some(v) = kernel_vector(&p.normal_rows(&subset), d) else { continue };
        if is_recession(&v) {
            return Ok(Some(v));
        }
        let neg: Vec<Rat> = v.iter().map(|c| -c).collect();
        if is_recession(&neg) {
            return Ok(Some(neg));
        }
    }
    Ok(None)
}

fn render_direction(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Exact graph diameter of a bounded polytope: vertices are adjacent iff
/// their common tight set has rank `d - 1` (the edge they span).
pub fn polytope_diameter(p: &HPolytope) -> Result<u64, GeometryError> {
    if let Some(v) = unbounded_direction(p)? {
        return Err(GeometryError::Unbounded(render_direction(&v)));
    }
    let vertices = enumerate_vertices(p)?;
    let d = p.dimension;
    let mut adjacency = vec![Vec::new(); vertices.len()];
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            let common: Vec<usize> =
                vertices[i].tight_facets.intersection(&vertices[j].tight_facets).copied().collect();
            if common.len() >= d - 1 && rank(&p.normal_rows(&common), d) == d - 1 {
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
        }
    }
    graph_diameter(&adjacency).ok_or(GeometryError::Disconnected("vertex"))
}

fn unit_normal(d: usize, axis: usize, sign: i64) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); d];
    v[axis] = Rat::from_integer(sign.into());
    v
}

/// `[0, 1]^d`: constraints `x_i <= 1` and `-x_i <= 0`.
pub fn cube(d: usize) -> HPolytope {
    let mut halfspaces = Vec::new();
    for i in 0..d {
        halfspaces.push(Halfspace { normal: unit_normal(d, i, 1), offset: Rat::one() });
        halfspaces.push(Halfspace { normal: unit_normal(d, i, -1), offset: Rat::zero() });
    }
    HPolytope::new(d, halfspaces).expect("cube construction is well-formed")
}

/// The standard simplex `x_i >= 0`, `sum x_i <= 1`.
pub fn simplex(d: usize) -> HPolytope {
    let mut halfspaces: Vec<Halfspace> = (0..d)
        .map(|i| Halfspace { normal: unit_normal(d, i, -1), offset: Rat::zero() })
        .collect();
    halfspaces.push(Halfspace { normal: vec![Rat::one(); d], offset: Rat::one() });
    HPolytope::new(d, halfspaces).expect("simplex construction is well-formed")
}

/// The cross-polytope `sum |x_i| <= 1`: one constraint per sign pattern.
/// Every vertex is tight on `2^(d-1)` facets, so this is the standard
/// degenerate-vertex stress test.
pub fn cross_polytope(d: usize) -> HPolytope {
    let mut halfspaces = Vec::new();
    for pattern in 0..1u32 << d {
        let normal: Vec<Rat> = (0..d)
            .map(|i| if pattern >> i & 1 == 0 { Rat::one() } else { -Rat::one() })
            .collect();
        halfspaces.push(Halfspace { normal, offset: Rat::one() });
    }
    HPolytope::new(d, halfspaces).expect("cross-polytope construction is well-formed")
}

/// Cartesian product: constraints of each factor, padded with zeros on the
/// other factor's coordinates. The graph of the product is the product of
/// the graphs, so diameters add.
pub fn product(p: &HPolytope, q: &HPolytope) -> HPolytope {
    let d = p.dimension + q.dimension;
    let mut halfspaces = Vec::new();
    for h in &p.halfspaces {
        let mut normal = h.normal.clone();
        normal.resize(d, Rat::zero());
        halfspaces.push(Halfspace { normal, offset: h.offset.clone() });
    }
    for h in &q.halfspaces {
        let mut normal = vec![Rat::zero(); p.dimension];
        normal.extend(h.normal.iter().cloned());
        halfspaces.push(Halfspace { normal, offset: h.offset.clone() });
    }
    HPolytope::new(d, halfspaces).expect("product of well-formed polytopes is well-formed")
}
