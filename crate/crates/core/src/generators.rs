//! Named graphs and hard test pairs.
//!
//! The named corpus covers the standard families plus the two classic
//! strongly regular graphs on 16 vertices that no 2-dimensional
//! refinement can tell apart. The gadget-pair generator produces a
//! plain/twisted pair over a base graph: non-isomorphic graphs that agree
//! under low-dimensional refinement, with the least distinguishing
//! dimension left to measurement.

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, VertexId};
use crate::powers::cartesian_product;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("unknown graph name {0:?}")]
    UnknownName(String),
    #[error("bad argument for {name}: {detail}")]
    BadArgument { name: &'static str, detail: String },
    #[error("gadget base must be connected")]
    DisconnectedBase,
    #[error("gadget base vertex {vertex} has degree {degree}; need at least 2")]
    DegreeTooSmall { vertex: usize, degree: usize },
    #[error("edge ({0},{1}) is not in the base graph")]
    MissingEdge(usize, usize),
}

pub fn complete(n: usize) -> Graph {
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edge_list(n, pairs).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least 3 vertices");
    Graph::from_edge_list(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn path(n: usize) -> Graph {
    assert!(n >= 1);
    Graph::from_edge_list(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

/// Star with `leaves` leaves around vertex 0, on `leaves + 1` vertices.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edge_list(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
}

/// Kneser construction: 2-subsets of a 5-set, adjacent iff disjoint.
pub fn petersen() -> Graph {
    let subsets: Vec<(usize, usize)> = (0..5)
        .flat_map(|a| (a + 1..5).map(move |b| (a, b)))
        .collect();
    let mut pairs = Vec::new();
    for (i, &(a, b)) in subsets.iter().enumerate() {
        for (j, &(c, d)) in subsets.iter().enumerate().skip(i + 1) {
            if a != c && a != d && b != c && b != d {
                pairs.push((i, j));
            }
        }
    }
    Graph::from_edge_list(10, pairs).unwrap()
}

/// Cayley graph on Z4 x Z4 with connection set {±(1,0), ±(0,1), ±(1,1)};
/// strongly regular with parameters (16, 6, 2, 2).
pub fn shrikhande() -> Graph {
    let idx = |a: usize, b: usize| 4 * (a % 4) + (b % 4);
    let mut pairs = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            let v = idx(a, b);
            for (da, db) in [(1, 0), (0, 1), (1, 1)] {
                pairs.push((v, idx(a + da, b + db)));
            }
        }
    }
    Graph::from_edge_list(16, pairs).unwrap()
}

/// The 4x4 rook's graph: cartesian square of the complete graph on four
/// vertices. Strongly regular with the same parameters as
/// [`shrikhande`], yet not isomorphic to it.
pub fn rook4x4() -> Graph {
    cartesian_product(&complete(4), &complete(4))
}

/// Looks up a graph by name: `complete(n)`, `cycle(n)`, `path(n)`,
/// `star(n)`, `petersen`, `shrikhande`, `rook4x4`, or `k4`.
pub fn named(name: &str) -> Result<Graph, GeneratorError> {
    let name = name.trim();
    match name {
        "petersen" => return Ok(petersen()),
        "shrikhande" => return Ok(shrikhande()),
        "rook4x4" => return Ok(rook4x4()),
        "k4" => return Ok(complete(4)),
        _ => {}
    }
    let parsed = name
        .strip_suffix(')')
        .and_then(|rest| rest.split_once('('))
        .and_then(|(family, arg)| arg.parse::<usize>().ok().map(|n| (family, n)));
    let Some((family, n)) = parsed else {
        return Err(GeneratorError::UnknownName(name.to_string()));
    };
    match family {
        "complete" => Ok(complete(n)),
        "cycle" => {
            if n < 3 {
                return Err(GeneratorError::BadArgument {
                    name: "cycle",
                    detail: format!("need at least 3 vertices, got {n}"),
                });
            }
            Ok(cycle(n))
        }
        "path" => {
            if n < 1 {
                return Err(GeneratorError::BadArgument {
                    name: "path",
                    detail: "need at least 1 vertex".to_string(),
                });
            }
            Ok(path(n))
        }
        "star" => Ok(star(n)),
        _ => Err(GeneratorError::UnknownName(name.to_string())),
    }
}

/// Uniform random graph with edge probability `p`; deterministic for a
/// fixed seeded generator. The instance source for the property suites.
pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                pairs.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, pairs).unwrap()
}

/// A plain/twisted gadget pair over a base graph, together with the maps
/// from the gadget structure back to vertex ids.
#[derive(Clone, Debug)]
pub struct GadgetPair {
    pub plain: Graph,
    pub twisted: Graph,
    pub base: Graph,
    pub twist_edge: (VertexId, VertexId),
    /// Endpoint of `twist_edge` whose gadget connections are swapped.
    pub twist_endpoint: VertexId,
    layout: CfiLayout,
}

#[derive(Clone, Debug)]
struct CfiLayout {
    /// First gadget vertex id per base vertex.
    gadget_start: Vec<usize>,
    /// Even-cardinality incidence masks per base vertex, in mask order.
    masks: Vec<Vec<u32>>,
    /// Incident edge indices per base vertex, sorted.
    incident: Vec<Vec<usize>>,
    /// First wire vertex id.
    wire_start: usize,
}

#[derive(Serialize)]
pub struct GadgetVertexEntry {
    pub id: usize,
    pub base_vertex: usize,
    /// The even-cardinality set of incident base edges this vertex encodes.
    pub subset: Vec<(usize, usize)>,
}

#[derive(Serialize)]
pub struct WireVertexEntry {
    pub id: usize,
    pub base_edge: (usize, usize),
    pub parity: u8,
}

/// Reproducibility manifest: how integer vertex ids map onto the
/// gadget/wire structure.
#[derive(Serialize)]
pub struct GadgetManifest {
    pub schema: u32,
    pub base_vertex_count: usize,
    pub base_edges: Vec<(usize, usize)>,
    pub twist_edge: (usize, usize),
    pub twist_endpoint: usize,
    pub vertex_count: usize,
    pub gadget_vertices: Vec<GadgetVertexEntry>,
    pub wire_vertices: Vec<WireVertexEntry>,
}

impl GadgetPair {
    pub fn manifest(&self) -> GadgetManifest {
        let edges = self.base.edges();
        let mut gadget_vertices = Vec::new();
        for v in 0..self.base.vertex_count() {
            for (slot, &mask) in self.layout.masks[v].iter().enumerate() {
                let subset = self.layout.incident[v]
                    .iter()
                    .enumerate()
                    .filter(|&(bit, _)| mask >> bit & 1 == 1)
                    .map(|(_, &e)| edges[e])
                    .collect();
                gadget_vertices.push(GadgetVertexEntry {
                    id: self.layout.gadget_start[v] + slot,
                    base_vertex: v,
                    subset,
                });
            }
        }
        let wire_vertices = edges
            .iter()
            .enumerate()
            .flat_map(|(e, &edge)| {
                (0..2u8).map(move |parity| WireVertexEntry {
                    id: 0, // placeholder, fixed below
                    base_edge: edge,
                    parity,
                })
                .enumerate()
                .map(move |(p, mut entry)| {
                    entry.id = 2 * e + p;
                    entry
                })
            })
            .map(|mut entry| {
                entry.id += self.layout.wire_start;
                entry
            })
            .collect();
        GadgetManifest {
            schema: 1,
            base_vertex_count: self.base.vertex_count(),
            base_edges: edges.to_vec(),
            twist_edge: self.twist_edge,
            twist_endpoint: self.twist_endpoint,
            vertex_count: self.plain.vertex_count(),
            gadget_vertices,
            wire_vertices,
        }
    }

    /// Vertex id of the wire `parity` copy of a base edge.
    pub fn wire_vertex(&self, edge_index: usize, parity: u8) -> usize {
        self.layout.wire_start + 2 * edge_index + parity as usize
    }
}

fn cfi_layout(base: &Graph) -> Result<CfiLayout, GeneratorError> {
    if !base.is_connected() || base.vertex_count() == 0 {
        return Err(GeneratorError::DisconnectedBase);
    }
    let n = base.vertex_count();
    let mut incident = vec![Vec::new(); n];
    for (e, &(u, v)) in base.edges().iter().enumerate() {
        incident[u].push(e);
        incident[v].push(e);
    }
    for (v, inc) in incident.iter().enumerate() {
        if inc.len() < 2 {
            return Err(GeneratorError::DegreeTooSmall {
                vertex: v,
                degree: inc.len(),
            });
        }
    }
    let mut gadget_start = Vec::with_capacity(n);
    let mut masks = Vec::with_capacity(n);
    let mut next = 0;
    for inc in &incident {
        gadget_start.push(next);
        let even: Vec<u32> = (0u32..1 << inc.len())
            .filter(|m| m.count_ones() % 2 == 0)
            .collect();
        next += even.len();
        masks.push(even);
    }
    Ok(CfiLayout {
        gadget_start,
        masks,
        incident,
        wire_start: next,
    })
}

/// Builds the gadget graph over `base` with the given twists. Each twist
/// names a base vertex and an incident edge index: the connections from
/// that vertex's gadget vertices to that edge's wire pair are swapped.
fn cfi_graph(base: &Graph, layout: &CfiLayout, twists: &[(VertexId, usize)]) -> Graph {
    let mut pairs = Vec::new();
    for v in 0..base.vertex_count() {
        for (slot, &mask) in layout.masks[v].iter().enumerate() {
            let gadget = layout.gadget_start[v] + slot;
            for (bit, &e) in layout.incident[v].iter().enumerate() {
                let mut parity = mask >> bit & 1;
                if twists.contains(&(v, e)) {
                    parity ^= 1;
                }
                pairs.push((gadget, layout.wire_start + 2 * e + parity as usize));
            }
        }
    }
    let total = layout.wire_start + 2 * base.edge_count();
    Graph::from_edge_list(total, pairs).expect("gadget adjacency is valid")
}

/// Gadget pair with the twist on the lexicographically smallest base
/// edge.
pub fn cfi_pair(base: &Graph) -> Result<GadgetPair, GeneratorError> {
    let first = *base
        .edges()
        .first()
        .ok_or(GeneratorError::DisconnectedBase)?;
    cfi_pair_with_twist(base, first)
}

/// Gadget pair with a chosen twist edge. Per base vertex of degree d the
/// graphs get the 2^(d-1) even-cardinality subsets of its incident edges
/// as gadget vertices, and per base edge a shared wire pair; a gadget
/// vertex connects to the parity-1 wire of the edges it contains and the
/// parity-0 wire of the rest. The twisted graph swaps the wire pair of
/// the twist edge at its smaller endpoint only.
pub fn cfi_pair_with_twist(
    base: &Graph,
    twist_edge: (VertexId, VertexId),
) -> Result<GadgetPair, GeneratorError> {
    let layout = cfi_layout(base)?;
    let key = (twist_edge.0.min(twist_edge.1), twist_edge.0.max(twist_edge.1));
    let edge_index = base
        .edges()
        .binary_search(&key)
        .map_err(|_| GeneratorError::MissingEdge(key.0, key.1))?;
    let endpoint = key.0;
    let plain = cfi_graph(base, &layout, &[]);
    let twisted = cfi_graph(base, &layout, &[(endpoint, edge_index)]);
    Ok(GadgetPair {
        plain,
        twisted,
        base: base.clone(),
        twist_edge: key,
        twist_endpoint: endpoint,
        layout,
    })
}

/// The same gadget construction with twists applied at both endpoints of
/// the twist edge; isomorphic to the plain graph by swapping that edge's
/// wire pair.
pub fn cfi_double_twist(base: &Graph, twist_edge: (VertexId, VertexId)) -> Result<Graph, GeneratorError> {
    let layout = cfi_layout(base)?;
    let key = (twist_edge.0.min(twist_edge.1), twist_edge.0.max(twist_edge.1));
    let edge_index = base
        .edges()
        .binary_search(&key)
        .map_err(|_| GeneratorError::MissingEdge(key.0, key.1))?;
    Ok(cfi_graph(
        base,
        &layout,
        &[(key.0, edge_index), (key.1, edge_index)],
    ))
}
