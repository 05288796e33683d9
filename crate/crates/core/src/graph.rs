//! Simple undirected graphs with dense bit-row adjacency.
//!
//! Vertices are contiguous integers `0..n`. Adjacency queries are O(1) word
//! lookups; the edge list is kept alongside the bit matrix and the two are
//! consistent by construction.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Index of a vertex inside its owning graph; always `< n`.
pub type VertexId = usize;

/// Errors from graph construction and the small-graph isomorphism oracle.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop edge ({vertex},{vertex}) is not allowed")]
    LoopEdge { vertex: usize },
    #[error("permutation is not a bijection on [0,{n})")]
    NotBijective { n: usize },
    #[error("exhaustive isomorphism search capped at {max} vertices, got {n}")]
    IsomorphismSizeCap { n: usize, max: usize },
}

/// Hard cap for [`is_isomorphic_small`]; the search is factorial.
pub const ISOMORPHISM_MAX_VERTICES: usize = 10;

/// A finite simple undirected graph.
///
/// Invariants maintained by every constructor: no loops, symmetric
/// adjacency, and the edge list agrees with the bit matrix exactly.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    edges: Vec<(VertexId, VertexId)>,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
            edges: Vec::new(),
        }
    }

    /// Builds a graph from an edge list. Pairs may appear in either
    /// orientation and duplicates are merged.
    pub fn from_edge_list(
        n: usize,
        pairs: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (u, v) in pairs {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(GraphError::LoopEdge { vertex: u });
            }
            set.insert((u.min(v), u.max(v)));
        }
        let mut g = Graph::empty(n);
        for &(u, v) in &set {
            g.bits[u * g.words + v / 64] |= 1 << (v % 64);
            g.bits[v * g.words + u / 64] |= 1 << (u % 64);
        }
        g.edges = set.into_iter().collect();
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u,v)` pairs with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    #[inline]
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 != 0
    }

    pub fn degree(&self, v: VertexId) -> usize {
        let row = &self.bits[v * self.words..(v + 1) * self.words];
        row.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let row = &self.bits[v * self.words..(v + 1) * self.words];
        row.iter().enumerate().flat_map(|(i, &word)| {
            let base = i * 64;
            BitIter { word }.map(move |b| base + b)
        })
    }

    /// Disjoint union; vertices of `other` are shifted up by `self.n`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        let pairs = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + self.n, v + self.n)));
        Graph::from_edge_list(n, pairs).expect("union of valid graphs is valid")
    }

    /// Applies a vertex permutation: the result has an edge
    /// `(perm[u], perm[v])` for every edge `(u,v)` of `self`.
    pub fn relabel(&self, perm: &[VertexId]) -> Result<Graph, GraphError> {
        if perm.len() != self.n || !is_permutation(perm) {
            return Err(GraphError::NotBijective { n: self.n });
        }
        let pairs = self.edges.iter().map(|&(u, v)| (perm[u], perm[v]));
        Graph::from_edge_list(self.n, pairs)
    }

    /// Largest finite shortest-path distance between any two vertices;
    /// disconnected pairs are ignored. 0 for graphs with no edges.
    pub fn diameter(&self) -> usize {
        let mut best = 0;
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = std::collections::VecDeque::new();
        for start in 0..self.n {
            dist.fill(usize::MAX);
            dist[start] = 0;
            queue.clear();
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                for w in self.neighbors(v) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        best = best.max(dist[w]);
                        queue.push_back(w);
                    }
                }
            }
        }
        best
    }

    /// True iff every vertex is reachable from vertex 0 (the empty and
    /// one-vertex graphs count as connected).
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut found = 1;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    found += 1;
                    stack.push(w);
                }
            }
        }
        found == self.n
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

struct BitIter {
    word: u64,
}

impl Iterator for BitIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.word == 0 {
            return None;
        }
        let b = self.word.trailing_zeros() as usize;
        self.word &= self.word - 1;
        Some(b)
    }
}

fn is_permutation(perm: &[usize]) -> bool {
    let n = perm.len();
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    true
}

/// Decides isomorphism by exhaustive search with degree pruning.
///
/// This is a test oracle, not a feature: it refuses graphs larger than
/// [`ISOMORPHISM_MAX_VERTICES`]. Different vertex counts yield `false`.
pub fn is_isomorphic_small(g: &Graph, h: &Graph) -> Result<bool, GraphError> {
    let max = ISOMORPHISM_MAX_VERTICES;
    if g.n > max || h.n > max {
        return Err(GraphError::IsomorphismSizeCap { n: g.n.max(h.n), max });
    }
    if g.n != h.n || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    let mut dg = g.degrees();
    let mut dh = h.degrees();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return Ok(false);
    }
    let mut map = vec![usize::MAX; g.n];
    let mut used = vec![false; g.n];
    Ok(extend_mapping(g, h, 0, &mut map, &mut used))
}

fn extend_mapping(g: &Graph, h: &Graph, u: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if u == g.vertex_count() {
        return true;
    }
    for w in 0..h.vertex_count() {
        if used[w] || g.degree(u) != h.degree(w) {
            continue;
        }
        let consistent = (0..u).all(|prev| g.has_edge(u, prev) == h.has_edge(w, map[prev]));
        if consistent {
            map[u] = w;
            used[w] = true;
            if extend_mapping(g, h, u + 1, map, used) {
                return true;
            }
            map[u] = usize::MAX;
            used[w] = false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn cycle(n: usize) -> Graph {
        Graph::from_edge_list(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::from_edge_list(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        Graph::from_edge_list(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    fn random_graph(n: usize, p: f64, rng: &mut StdRng) -> Graph {
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

    #[test]
    fn k2_from_edge_list() {
        let g = Graph::from_edge_list(2, [(0, 1)]).unwrap();
        assert!(g.has_edge(0, 1));
        assert!(g.has_edge(1, 0));
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn empty_graph_identity_case() {
        let g = Graph::from_edge_list(3, []).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn c4_degrees_all_two() {
        let g = Graph::from_edge_list(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(g.degrees(), vec![2, 2, 2, 2]);
    }

    #[test]
    fn duplicate_and_reversed_pairs_merge() {
        let g = Graph::from_edge_list(3, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn rejects_out_of_range_and_loops() {
        assert_eq!(
            Graph::from_edge_list(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(
            Graph::from_edge_list(2, [(1, 1)]),
            Err(GraphError::LoopEdge { vertex: 1 })
        );
    }

    #[test]
    fn disjoint_union_counts_add() {
        let k1 = Graph::empty(1);
        let u = k1.disjoint_union(&k1);
        assert_eq!(u.vertex_count(), 2);
        assert_eq!(u.edge_count(), 0);

        let u = cycle(4).disjoint_union(&k1);
        assert_eq!(u.vertex_count(), 5);
        assert_eq!(u.edge_count(), 4);

        let a = path(3);
        let b = star(3);
        let u = a.disjoint_union(&b);
        let mut want = a.degrees();
        want.extend(b.degrees());
        assert_eq!(u.degrees(), want);
    }

    #[test]
    fn relabel_identity_is_equal() {
        let g = cycle(4);
        let id: Vec<usize> = (0..4).collect();
        assert_eq!(g.relabel(&id).unwrap(), g);
    }

    #[test]
    fn relabel_rotation_preserves_structure() {
        let g = cycle(4);
        let rot = g.relabel(&[1, 2, 3, 0]).unwrap();
        assert_eq!(rot.edge_count(), 4);
        let mut d = rot.degrees();
        d.sort_unstable();
        assert_eq!(d, vec![2, 2, 2, 2]);
        assert!(is_isomorphic_small(&g, &rot).unwrap());
    }

    #[test]
    fn relabel_rejects_non_bijection() {
        let g = cycle(4);
        assert_eq!(
            g.relabel(&[0, 0, 1, 2]),
            Err(GraphError::NotBijective { n: 4 })
        );
        assert_eq!(g.relabel(&[0, 1, 2]), Err(GraphError::NotBijective { n: 4 }));
    }

    #[test]
    fn degree_sum_is_twice_edge_count() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let n = rng.random_range(1..12);
            let g = random_graph(n, 0.4, &mut rng);
            let sum: usize = g.degrees().iter().sum();
            assert_eq!(sum, 2 * g.edge_count());
        }
    }

    #[test]
    fn neighbors_match_adjacency() {
        let g = star(4);
        assert_eq!(g.neighbors(0).collect::<Vec<_>>(), vec![1, 2, 3, 4]);
        assert_eq!(g.neighbors(2).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn isomorphism_oracle_basics() {
        let g = cycle(4);
        let h = g.relabel(&[2, 0, 3, 1]).unwrap();
        assert!(is_isomorphic_small(&g, &h).unwrap());

        // star vs path: degree sequences differ
        assert!(!is_isomorphic_small(&star(3), &path(4)).unwrap());

        // different sizes are trivially non-isomorphic
        assert!(!is_isomorphic_small(&path(3), &path(4)).unwrap());
    }

    #[test]
    fn isomorphism_oracle_size_cap() {
        let g = Graph::empty(11);
        assert_eq!(
            is_isomorphic_small(&g, &g),
            Err(GraphError::IsomorphismSizeCap { n: 11, max: 10 })
        );
    }

    #[test]
    fn diameters() {
        assert_eq!(path(5).diameter(), 4);
        assert_eq!(cycle(6).diameter(), 3);
        assert_eq!(Graph::empty(4).diameter(), 0);
        // disconnected: the longest distance within a component
        assert_eq!(path(4).disjoint_union(&path(2)).diameter(), 3);
    }

    #[test]
    fn connectivity() {
        assert!(cycle(5).is_connected());
        assert!(!cycle(3).disjoint_union(&Graph::empty(1)).is_connected());
        assert!(Graph::empty(1).is_connected());
        assert!(Graph::empty(0).is_connected());
    }
}
