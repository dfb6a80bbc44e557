//! Deterministic graph families used by the test suites and the CLI.
//!
//! String form (CLI `--generate`):
//! `k2`, `path:N`, `cycle:N`, `complete:N`, `lattice:D:L`, `tree:DEPTH`,
//! `hubray:N`, `comb:N`, `random:N[:SEED]`, `randcomb:N[:SEED]`, and
//! `normalized:<inner>` for the normalized variant of any other family.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// Parameters for a random connected graph: a random spanning tree plus
/// independent extra edges.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomGraphSpec {
    pub n: usize,
    pub edge_prob: f64,
    /// Uniform weight range; ignored for combinatorial graphs.
    pub weight_range: (f64, f64),
    /// Uniform measure range; ignored for combinatorial graphs.
    pub measure_range: (f64, f64),
    pub combinatorial: bool,
    pub seed: u64,
}

impl RandomGraphSpec {
    pub fn weighted(n: usize, seed: u64) -> Self {
        Self {
            n,
            edge_prob: (2.5 / n as f64).min(1.0),
            weight_range: (0.1, 10.0),
            measure_range: (0.5, 2.0),
            combinatorial: false,
            seed,
        }
    }

    pub fn combinatorial(n: usize, seed: u64) -> Self {
        Self { combinatorial: true, ..Self::weighted(n, seed) }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorSpec {
    /// `ℤ^dim ∩ [0, side]^dim`, combinatorial.
    LatticeBox { dim: usize, side: usize },
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    /// Complete binary tree with `depth` levels below the root.
    BinaryTree { depth: usize },
    /// Truncation to `n ≤ levels` of the ray with a hub attached to every site.
    HubRay { levels: usize },
    /// Truncation to `n ≤ levels` of the ray with geometric weights and one leaf per site.
    GeometricComb { levels: usize },
    Random(RandomGraphSpec),
    /// Same edges as the inner family, with `m(x) = Σ_y b(x,y)`.
    Normalized(Box<GeneratorSpec>),
}

impl GeneratorSpec {
    /// Parses the string form. `seed` is used by random families without an
    /// explicit seed.
    pub fn parse(text: &str, seed: u64) -> Result<Self> {
        let bad = || Error::InvalidSpec(text.to_string());
        if let Some(inner) = text.strip_prefix("normalized:") {
            return Ok(Self::Normalized(Box::new(Self::parse(inner, seed)?)));
        }
        let parts: Vec<&str> = text.split(':').collect();
        let num = |i: usize| -> Result<usize> {
            parts.get(i).ok_or_else(bad)?.trim().parse::<usize>().map_err(|_| bad())
        };
        let seed_at = |i: usize| -> Result<u64> {
            match parts.get(i) {
                None => Ok(seed),
                Some(s) => s.trim().parse::<u64>().map_err(|_| bad()),
            }
        };
        let spec = match parts[0] {
            "k2" if parts.len() == 1 => Self::Complete { n: 2 },
            "path" if parts.len() == 2 => Self::Path { n: num(1)? },
            "cycle" if parts.len() == 2 => Self::Cycle { n: num(1)? },
            "complete" if parts.len() == 2 => Self::Complete { n: num(1)? },
            "tree" if parts.len() == 2 => Self::BinaryTree { depth: num(1)? },
            "lattice" if parts.len() == 3 => Self::LatticeBox { dim: num(1)?, side: num(2)? },
            "hubray" if parts.len() == 2 => Self::HubRay { levels: num(1)? },
            "comb" if parts.len() == 2 => Self::GeometricComb { levels: num(1)? },
            "random" if (2..=3).contains(&parts.len()) => {
                Self::Random(RandomGraphSpec::weighted(num(1)?, seed_at(2)?))
            }
            "randcomb" if (2..=3).contains(&parts.len()) => {
                Self::Random(RandomGraphSpec::combinatorial(num(1)?, seed_at(2)?))
            }
            _ => return Err(bad()),
        };
        Ok(spec)
    }

    pub fn generate(&self) -> Result<WeightedGraph> {
        match self {
            Self::LatticeBox { dim, side } => lattice_box(*dim, *side),
            Self::Path { n } => path(*n),
            Self::Cycle { n } => cycle(*n),
            Self::Complete { n } => complete(*n),
            Self::BinaryTree { depth } => binary_tree(*depth),
            Self::HubRay { levels } => hub_ray(*levels),
            Self::GeometricComb { levels } => geometric_comb(*levels),
            Self::Random(spec) => random(spec),
            Self::Normalized(inner) => normalized(&inner.generate()?),
        }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidSpec(msg.into())
}

fn unit_graph(ids: Vec<String>, edges: Vec<(usize, usize)>) -> Result<WeightedGraph> {
    let n = ids.len();
    WeightedGraph::new(ids, vec![1.0; n], edges.into_iter().map(|(u, w)| (u, w, 1.0)), None)
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

pub fn path(n: usize) -> Result<WeightedGraph> {
    if n < 1 {
        return Err(invalid("path needs at least one vertex"));
    }
    unit_graph(numbered(n), (1..n).map(|i| (i - 1, i)).collect())
}

pub fn cycle(n: usize) -> Result<WeightedGraph> {
    if n < 3 {
        return Err(invalid("cycle needs at least three vertices"));
    }
    unit_graph(numbered(n), (0..n).map(|i| (i, (i + 1) % n)).collect())
}

/// Complete graph on `v1 … vn` with unit weights.
pub fn complete(n: usize) -> Result<WeightedGraph> {
    if n < 1 {
        return Err(invalid("complete graph needs at least one vertex"));
    }
    let ids = (1..=n).map(|i| format!("v{i}")).collect();
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |w| (u, w))).collect();
    unit_graph(ids, edges)
}

/// Vertices are coordinate strings `"i,j,…"` in lexicographic order.
pub fn lattice_box(dim: usize, side: usize) -> Result<WeightedGraph> {
    if dim < 1 {
        return Err(invalid("lattice dimension must be at least 1"));
    }
    if side < 1 {
        return Err(invalid("lattice side length must be at least 1"));
    }
    let width = side + 1;
    let n = width.checked_pow(dim as u32).ok_or_else(|| invalid("lattice too large"))?;
    let coords = |mut i: usize| -> Vec<usize> {
        let mut c = vec![0; dim];
        for k in (0..dim).rev() {
            c[k] = i % width;
            i /= width;
        }
        c
    };
    let ids = (0..n)
        .map(|i| coords(i).iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
        .collect();
    let mut edges = Vec::new();
    for i in 0..n {
        let c = coords(i);
        let mut stride = 1;
        for k in (0..dim).rev() {
            if c[k] + 1 < width {
                edges.push((i, i + stride));
            }
            stride *= width;
        }
    }
    unit_graph(ids, edges)
}

/// Heap-numbered complete binary tree.
pub fn binary_tree(depth: usize) -> Result<WeightedGraph> {
    let n = (1usize << (depth + 1)) - 1;
    unit_graph(numbered(n), (1..n).map(|i| ((i - 1) / 2, i)).collect())
}

/// Ray `(1,0)…(N,0)` with `b = 2` along the ray and a hub `(1,1)` joined to
/// `(n,0)` with `b = (1 + 1/n)^{-1}`.
pub fn hub_ray(levels: usize) -> Result<WeightedGraph> {
    if levels < 2 {
        return Err(invalid("truncation level must be at least 2"));
    }
    let mut ids: Vec<String> = (1..=levels).map(|k| format!("{k},0")).collect();
    ids.push("1,1".into());
    let hub = levels;
    let mut edges = Vec::new();
    for k in 1..=levels {
        if k < levels {
            edges.push((k - 1, k, 2.0));
        }
        edges.push((k - 1, hub, 1.0 / (1.0 + 1.0 / k as f64)));
    }
    WeightedGraph::new(ids, vec![1.0; levels + 1], edges, None)
}

/// Spine `(n,1)` with `b((n,1),(n+1,1)) = 2·4^{n-1}` and leaves `(n,0)` with
/// `b((n,1),(n,0)) = 4^{n-1}`, for `n ≤ levels`.
pub fn geometric_comb(levels: usize) -> Result<WeightedGraph> {
    if levels < 2 {
        return Err(invalid("truncation level must be at least 2"));
    }
    let mut ids = Vec::with_capacity(2 * levels);
    for k in 1..=levels {
        ids.push(format!("{k},0"));
        ids.push(format!("{k},1"));
    }
    let leaf = |k: usize| 2 * (k - 1);
    let spine = |k: usize| 2 * (k - 1) + 1;
    let mut edges = Vec::new();
    for k in 1..=levels {
        let w = 4f64.powi(k as i32 - 1);
        edges.push((spine(k), leaf(k), w));
        if k < levels {
            edges.push((spine(k), spine(k + 1), 2.0 * w));
        }
    }
    WeightedGraph::new(ids, vec![1.0; 2 * levels], edges, None)
}

pub fn random(spec: &RandomGraphSpec) -> Result<WeightedGraph> {
    if spec.n < 1 {
        return Err(invalid("random graph needs at least one vertex"));
    }
    let (wlo, whi) = spec.weight_range;
    let (mlo, mhi) = spec.measure_range;
    if !spec.combinatorial && !(0.0 < wlo && wlo <= whi && 0.0 < mlo && mlo <= mhi) {
        return Err(invalid("random ranges must be positive and ordered"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n;
    let weight = |rng: &mut ChaCha8Rng| {
        if spec.combinatorial || wlo == whi {
            if spec.combinatorial { 1.0 } else { wlo }
        } else {
            rng.gen_range(wlo..whi)
        }
    };
    let mut present = std::collections::HashSet::new();
    let mut edges = Vec::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        present.insert((j, i));
        edges.push((j, i, weight(&mut rng)));
    }
    for u in 0..n {
        for w in u + 1..n {
            if !present.contains(&(u, w)) && rng.gen_bool(spec.edge_prob.clamp(0.0, 1.0)) {
                edges.push((u, w, weight(&mut rng)));
            }
        }
    }
    let measure = if spec.combinatorial || mlo == mhi {
        vec![if spec.combinatorial { 1.0 } else { mlo }; n]
    } else {
        (0..n).map(|_| rng.gen_range(mlo..mhi)).collect()
    };
    WeightedGraph::new(numbered(n), measure, edges, None)
}

/// Replaces the measure by the weighted degree.
pub fn normalized(g: &WeightedGraph) -> Result<WeightedGraph> {
    let measure: Vec<f64> = (0..g.len()).map(|x| g.degree(x)).collect();
    if measure.iter().any(|&m| m <= 0.0) {
        return Err(invalid("normalized variant needs every vertex to have an edge"));
    }
    let edges = g.edges().iter().map(|e| (e.u, e.w, e.b));
    WeightedGraph::new(g.ids().to_vec(), measure, edges, None)
}
