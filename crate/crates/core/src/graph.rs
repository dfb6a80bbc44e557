//! Weighted graph data model `(X, b, m)` with an optional potential `V`.
//!
//! Edge weights are stored once per unordered pair, so symmetry holds by
//! construction; the adjacency view is synthesized from that list. A
//! [`WeightedGraph`] is immutable after construction.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One undirected edge `{u, w}` with `u < w` (vertex indices) and weight `b > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub w: usize,
    pub b: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    measure: Vec<f64>,
    potential: Option<Vec<f64>>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(usize, f64)>>,
}

/// Constants of the bounded geometry conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeometryConstants {
    /// `sup_x (1/m(x)) Σ_y b(x,y)`.
    pub delta: f64,
    pub m_max: f64,
    pub b_max: f64,
    /// `2·delta`, an upper bound for the operator norm of the Laplacian.
    pub operator_norm_bound: f64,
    /// Largest number of neighbours of a vertex.
    pub max_degree: usize,
}

impl WeightedGraph {
    /// Builds a graph from an edge list given as index triples.
    ///
    /// Rejects self-loops, duplicate pairs, non-positive weights and
    /// non-positive measures. Connectivity is checked by [`validate`](Self::validate).
    pub fn new(
        ids: Vec<String>,
        measure: Vec<f64>,
        edges: impl IntoIterator<Item = (usize, usize, f64)>,
        potential: Option<Vec<f64>>,
    ) -> Result<Self> {
        if ids.is_empty() {
            return Err(Error::EmptyGraph);
        }
        assert_eq!(ids.len(), measure.len(), "one measure value per vertex");
        if let Some(v) = &potential {
            assert_eq!(ids.len(), v.len(), "one potential value per vertex");
        }
        let mut index = HashMap::with_capacity(ids.len());
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(id.clone()));
            }
        }
        for (id, &m) in ids.iter().zip(&measure) {
            if !(m > 0.0 && m.is_finite()) {
                return Err(Error::NonPositiveMeasure(id.clone(), m));
            }
        }
        let n = ids.len();
        let mut adjacency: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        let mut stored = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (a, c, b) in edges {
            assert!(a < n && c < n, "edge endpoint out of range");
            if a == c {
                return Err(Error::SelfLoop(ids[a].clone()));
            }
            if !(b > 0.0 && b.is_finite()) {
                return Err(Error::NonPositiveEdgeWeight(ids[a].clone(), ids[c].clone(), b));
            }
            let (u, w) = if a < c { (a, c) } else { (c, a) };
            if !seen.insert((u, w)) {
                return Err(Error::DuplicateEdge(ids[u].clone(), ids[w].clone()));
            }
            stored.push(Edge { u, w, b });
            adjacency[u].push((w, b));
            adjacency[w].push((u, b));
        }
        for list in &mut adjacency {
            list.sort_by_key(|&(y, _)| y);
        }
        Ok(Self { ids, index, measure, potential, edges: stored, adjacency })
    }

    /// Builds a graph from a dense weight matrix, checking symmetry, the zero
    /// diagonal and nonnegativity. Zero entries mean "no edge".
    pub fn from_dense(
        ids: Vec<String>,
        measure: Vec<f64>,
        weights: &[Vec<f64>],
        potential: Option<Vec<f64>>,
    ) -> Result<Self> {
        let n = ids.len();
        assert_eq!(weights.len(), n);
        let mut edges = Vec::new();
        for x in 0..n {
            assert_eq!(weights[x].len(), n);
            if weights[x][x] != 0.0 {
                return Err(Error::NonzeroDiagonal(ids[x].clone(), weights[x][x]));
            }
            for y in 0..n {
                let (bxy, byx) = (weights[x][y], weights[y][x]);
                if bxy < 0.0 {
                    return Err(Error::NegativeEdgeWeight(ids[x].clone(), ids[y].clone(), bxy));
                }
                if bxy != byx {
                    return Err(Error::NonSymmetricWeights(
                        ids[x].clone(),
                        ids[y].clone(),
                        bxy,
                        byx,
                    ));
                }
                if y > x && bxy > 0.0 {
                    edges.push((x, y, bxy));
                }
            }
        }
        Self::new(ids, measure, edges, potential)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, x: usize) -> &str {
        &self.ids[x]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn measure(&self) -> &[f64] {
        &self.measure
    }

    pub fn m(&self, x: usize) -> f64 {
        self.measure[x]
    }

    /// Potential values, all zeros when the graph carries none.
    pub fn potential(&self) -> Vec<f64> {
        self.potential.clone().unwrap_or_else(|| vec![0.0; self.len()])
    }

    pub fn has_potential(&self) -> bool {
        self.potential.is_some()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbours of `x` with positive weight, sorted by index.
    pub fn neighbors(&self, x: usize) -> &[(usize, f64)] {
        &self.adjacency[x]
    }

    pub fn weight(&self, x: usize, y: usize) -> f64 {
        self.adjacency[x]
            .binary_search_by_key(&y, |&(z, _)| z)
            .map(|i| self.adjacency[x][i].1)
            .unwrap_or(0.0)
    }

    /// Weighted degree `Σ_y b(x,y)`.
    pub fn degree(&self, x: usize) -> f64 {
        self.adjacency[x].iter().map(|&(_, b)| b).sum()
    }

    pub fn volume(&self, set: &VertexSet) -> f64 {
        set.iter().map(|x| self.measure[x]).sum()
    }

    pub fn total_volume(&self) -> f64 {
        self.measure.iter().sum()
    }

    /// `b ∈ {0,1}` and `m ≡ 1`.
    pub fn is_combinatorial(&self) -> bool {
        self.measure.iter().all(|&m| m == 1.0) && self.edges.iter().all(|e| e.b == 1.0)
    }

    /// Same vertices and weights with the potential replaced.
    pub fn with_potential(&self, potential: Option<Vec<f64>>) -> Self {
        if let Some(v) = &potential {
            assert_eq!(v.len(), self.len());
        }
        Self { potential, ..self.clone() }
    }

    /// Checks connectivity and returns the geometry constants.
    pub fn validate(&self) -> Result<GeometryConstants> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(x) = queue.pop_front() {
            for &(y, _) in &self.adjacency[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        if let Some(x) = seen.iter().position(|&s| !s) {
            return Err(Error::DisconnectedGraph(self.ids[x].clone(), self.ids[0].clone()));
        }
        let delta = (0..n).map(|x| self.degree(x) / self.measure[x]).fold(0.0, f64::max);
        let m_max = self.measure.iter().copied().fold(0.0, f64::max);
        let b_max = self.edges.iter().map(|e| e.b).fold(0.0, f64::max);
        let max_degree = self.adjacency.iter().map(Vec::len).max().unwrap_or(0);
        Ok(GeometryConstants { delta, m_max, b_max, operator_norm_bound: 2.0 * delta, max_degree })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&GraphFile::from(self)).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(text)?;
        file.into_graph()
    }
}

/// A subset of the vertices of a graph with `n` vertices, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl VertexSet {
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut mask = vec![false; n];
        for x in members {
            mask[x] = true;
        }
        Self::from_mask(mask)
    }

    pub fn from_mask(mask: Vec<bool>) -> Self {
        let members = mask.iter().enumerate().filter(|(_, &m)| m).map(|(x, _)| x).collect();
        Self { members, mask }
    }

    pub fn from_ids<S: AsRef<str>>(g: &WeightedGraph, ids: &[S]) -> Result<Self> {
        let idx = ids.iter().map(|id| g.index_of(id.as_ref())).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(g.len(), idx))
    }

    pub fn full(n: usize) -> Self {
        Self::from_mask(vec![true; n])
    }

    pub fn complement(&self) -> Self {
        Self::from_mask(self.mask.iter().map(|m| !m).collect())
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.mask.len()
    }

    /// Size of the ambient vertex set.
    pub fn universe(&self) -> usize {
        self.mask.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    /// Position of `x` in the sorted member list.
    pub fn position(&self, x: usize) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    vertices: Vec<VertexRecord>,
    edges: Vec<EdgeRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexRecord {
    id: String,
    m: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    v: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeRecord {
    u: String,
    w: String,
    b: f64,
}

impl From<&WeightedGraph> for GraphFile {
    fn from(g: &WeightedGraph) -> Self {
        let vertices = (0..g.len())
            .map(|x| VertexRecord {
                id: g.ids[x].clone(),
                m: g.measure[x],
                v: g.potential.as_ref().map(|v| v[x]),
            })
            .collect();
        let edges = g
            .edges
            .iter()
            .map(|e| EdgeRecord { u: g.ids[e.u].clone(), w: g.ids[e.w].clone(), b: e.b })
            .collect();
        Self { vertices, edges }
    }
}

impl GraphFile {
    fn into_graph(self) -> Result<WeightedGraph> {
        let has_potential = self.vertices.iter().any(|v| v.v.is_some());
        let potential =
            has_potential.then(|| self.vertices.iter().map(|v| v.v.unwrap_or(0.0)).collect());
        let measure = self.vertices.iter().map(|v| v.m).collect();
        let ids: Vec<String> = self.vertices.into_iter().map(|v| v.id).collect();
        let mut index = HashMap::new();
        for (i, id) in ids.iter().enumerate() {
            index.insert(id.as_str(), i);
        }
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let u = *index.get(e.u.as_str()).ok_or_else(|| Error::UnknownVertex(e.u.clone()))?;
            let w = *index.get(e.w.as_str()).ok_or_else(|| Error::UnknownVertex(e.w.clone()))?;
            edges.push((u, w, e.b));
        }
        WeightedGraph::new(ids, measure, edges, potential)
    }
}
