//! Products and powers of graphs, and quotients by group actions.
//!
//! Vertex orders are fixed once and for all: the k-th power uses tuple
//! codes, the restricted power uses distinct-tuple codes in increasing
//! order, and the symmetric power uses k-subsets in lexicographic order.
//! Trace identities do not depend on these orders, but reproducible
//! reports do.

use thiserror::Error;

use crate::graph::{Graph, VertexId};
use crate::tuples::{checked_power, TupleSpace};

/// Constructions refuse to allocate more vertices than this unless told
/// otherwise.
pub const DEFAULT_VERTEX_BUDGET: usize = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PowersError {
    #[error("construction needs {required} vertices, over the budget of {budget}")]
    BudgetExceeded { required: usize, budget: usize },
    #[error("tuple length {k} exceeds the vertex count {n}; no distinct tuples exist")]
    OrderExceedsVertices { k: usize, n: usize },
    #[error("orbit assignment has {got} entries for a graph on {expected} vertices")]
    ActionSizeMismatch { expected: usize, got: usize },
}

/// Orbit data of a group acting on a graph by automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    orbit_of: Vec<usize>,
    orbit_members: Vec<Vec<VertexId>>,
}

impl Action {
    /// Builds an action from a per-vertex orbit assignment. Orbit ids are
    /// normalized to first-appearance order; members end up sorted.
    pub fn from_orbit_ids(ids: &[usize]) -> Self {
        let mut remap = std::collections::HashMap::new();
        let mut orbit_of = Vec::with_capacity(ids.len());
        let mut orbit_members: Vec<Vec<VertexId>> = Vec::new();
        for (v, &raw) in ids.iter().enumerate() {
            let next = orbit_members.len();
            let id = *remap.entry(raw).or_insert(next);
            if id == orbit_members.len() {
                orbit_members.push(Vec::new());
            }
            orbit_of.push(id);
            orbit_members[id].push(v);
        }
        Action {
            orbit_of,
            orbit_members,
        }
    }

    /// The action with every vertex in its own orbit.
    pub fn trivial(n: usize) -> Self {
        Action::from_orbit_ids(&(0..n).collect::<Vec<_>>())
    }

    pub fn vertex_count(&self) -> usize {
        self.orbit_of.len()
    }

    pub fn orbit_count(&self) -> usize {
        self.orbit_members.len()
    }

    #[inline]
    pub fn orbit_of(&self, v: VertexId) -> usize {
        self.orbit_of[v]
    }

    pub fn members(&self, orbit: usize) -> &[VertexId] {
        &self.orbit_members[orbit]
    }

    pub fn orbit_size(&self, orbit: usize) -> usize {
        self.orbit_members[orbit].len()
    }
}

/// Why a quotient fails to be simply laced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimplyLacedViolation {
    /// An edge joins two vertices of one orbit (the quotient would gain a
    /// loop).
    EdgeInsideOrbit { u: VertexId, v: VertexId },
    /// A vertex sees one orbit twice among its neighbors (the quotient
    /// would gain a multiple arrow).
    RepeatedOrbitNeighbor {
        vertex: VertexId,
        orbit: usize,
        first: VertexId,
        second: VertexId,
    },
}

/// A quotient of a graph by a group action, with its simply-laced
/// certificate. The ordinary quotient graph exists only in the simply
/// laced case; otherwise the violating pair is reported instead.
#[derive(Clone, Debug)]
pub struct QuotientGraph {
    base: Graph,
    action: Action,
    simply_laced: bool,
    quotient: Option<Graph>,
    violation: Option<SimplyLacedViolation>,
}

impl QuotientGraph {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    pub fn is_simply_laced(&self) -> bool {
        self.simply_laced
    }

    pub fn quotient(&self) -> Option<&Graph> {
        self.quotient.as_ref()
    }

    pub fn violation(&self) -> Option<&SimplyLacedViolation> {
        self.violation.as_ref()
    }
}

/// Block matrix carrying `|orbit|` on same-orbit vertex pairs and 0
/// elsewhere; the bridge between quotient traces and base-graph traces.
/// Entries are materialized on demand: the matrix is block-diagonal under
/// any orbit-sorted vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferMatrix {
    dim: usize,
    orbit_of: Vec<usize>,
    orbit_sizes: Vec<usize>,
}

impl TransferMatrix {
    pub fn from_action(action: &Action) -> Self {
        TransferMatrix {
            dim: action.vertex_count(),
            orbit_of: action.orbit_of.clone(),
            orbit_sizes: action.orbit_members.iter().map(Vec::len).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> u64 {
        if self.orbit_of[i] == self.orbit_of[j] {
            self.orbit_sizes[self.orbit_of[i]] as u64
        } else {
            0
        }
    }

    /// Orbit (block) index of a vertex.
    pub fn orbit_of(&self, v: usize) -> usize {
        self.orbit_of[v]
    }

    pub fn orbit_count(&self) -> usize {
        self.orbit_sizes.len()
    }

    pub fn orbit_size(&self, orbit: usize) -> usize {
        self.orbit_sizes[orbit]
    }

    pub fn to_dense(&self) -> Vec<Vec<u64>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.entry(i, j)).collect())
            .collect()
    }
}

/// Cartesian product: `(a,b) ~ (c,d)` iff one coordinate steps along an
/// edge while the other stays put. Vertex `(a,b)` gets index `a*n_h + b`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    let (ng, nh) = (g.vertex_count(), h.vertex_count());
    let mut pairs = Vec::with_capacity(g.edge_count() * nh + h.edge_count() * ng);
    for &(a, c) in g.edges() {
        for b in 0..nh {
            pairs.push((a * nh + b, c * nh + b));
        }
    }
    for &(b, d) in h.edges() {
        for a in 0..ng {
            pairs.push((a * nh + b, a * nh + d));
        }
    }
    Graph::from_edge_list(ng * nh, pairs).expect("product of valid graphs is valid")
}

/// Iterated cartesian product of `g` with itself; vertices are k-tuple
/// codes, and two tuples are adjacent iff they differ in exactly one
/// coordinate, by an edge of `g`.
pub fn kth_power(g: &Graph, k: usize) -> Result<Graph, PowersError> {
    kth_power_with_budget(g, k, DEFAULT_VERTEX_BUDGET)
}

pub fn kth_power_with_budget(g: &Graph, k: usize, budget: usize) -> Result<Graph, PowersError> {
    assert!(k >= 1, "power order must be at least 1");
    let n = g.vertex_count();
    let required = checked_power(n, k).unwrap_or(usize::MAX);
    if required > budget {
        return Err(PowersError::BudgetExceeded { required, budget });
    }
    let space = TupleSpace::new(n, k);
    let mut pairs = Vec::new();
    let mut coords = vec![0; k];
    for code in 0..space.size() {
        space.decode_into(code, &mut coords);
        for pos in 0..k {
            for w in g.neighbors(coords[pos]) {
                if w > coords[pos] {
                    pairs.push((code, space.substitute(code, pos, w)));
                }
            }
        }
    }
    Ok(Graph::from_edge_list(space.size(), pairs).expect("power adjacency is valid"))
}

fn falling_factorial(n: usize, k: usize) -> Option<usize> {
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc.checked_mul(n - i)?;
    }
    Some(acc)
}

/// Induced subgraph of the k-th power on tuples with pairwise distinct
/// coordinates, in increasing code order.
pub fn restricted_power(g: &Graph, k: usize) -> Result<Graph, PowersError> {
    restricted_power_with_budget(g, k, DEFAULT_VERTEX_BUDGET)
}

pub fn restricted_power_with_budget(
    g: &Graph,
    k: usize,
    budget: usize,
) -> Result<Graph, PowersError> {
    let codes = distinct_codes_budgeted(g, k, budget)?;
    let n = g.vertex_count();
    let space = TupleSpace::new(n, k);
    let mut pairs = Vec::new();
    let mut coords = vec![0; k];
    for (local, &code) in codes.iter().enumerate() {
        space.decode_into(code, &mut coords);
        for pos in 0..k {
            for w in g.neighbors(coords[pos]) {
                // moving one coordinate must not collide with the others
                if w > coords[pos] && !coords.contains(&w) {
                    let other = space.substitute(code, pos, w);
                    let other_local = codes.binary_search(&other).expect("stays distinct");
                    pairs.push((local, other_local));
                }
            }
        }
    }
    Ok(Graph::from_edge_list(codes.len(), pairs).expect("restricted adjacency is valid"))
}

/// Codes of the distinct k-tuples of `g`'s vertices, in increasing order.
pub fn distinct_codes_budgeted(
    g: &Graph,
    k: usize,
    budget: usize,
) -> Result<Vec<usize>, PowersError> {
    assert!(k >= 1, "power order must be at least 1");
    let n = g.vertex_count();
    if k > n {
        return Err(PowersError::OrderExceedsVertices { k, n });
    }
    let required = falling_factorial(n, k).unwrap_or(usize::MAX);
    if required > budget {
        return Err(PowersError::BudgetExceeded { required, budget });
    }
    let mut codes = Vec::with_capacity(required);
    let mut prefix = Vec::with_capacity(k);
    let mut used = vec![false; n];
    fill_distinct(n, k, 0, &mut prefix, &mut used, &mut codes);
    Ok(codes)
}

fn fill_distinct(
    n: usize,
    k: usize,
    acc: usize,
    prefix: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<usize>,
) {
    if prefix.len() == k {
        out.push(acc);
        return;
    }
    for v in 0..n {
        if !used[v] {
            used[v] = true;
            prefix.push(v);
            fill_distinct(n, k, acc * n + v, prefix, used, out);
            prefix.pop();
            used[v] = false;
        }
    }
}

/// `C(n,k)` unless it exceeds `cap`.
fn binomial_capped(n: usize, k: usize, cap: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        // acc is C(n-k+i, i) at every step, so partials stay in range
        acc = acc * (n - k + i) as u128 / i as u128;
        if acc > cap {
            return None;
        }
    }
    Some(acc)
}

/// Lexicographic rank of an increasing k-subset of `[0,n)`.
fn subset_rank(n: usize, subset: &[usize]) -> usize {
    let k = subset.len();
    let mut rank: u128 = 0;
    let mut prev: isize = -1;
    for (j, &c) in subset.iter().enumerate() {
        for v in (prev + 1) as usize..c {
            rank += binomial_capped(n - 1 - v, k - 1 - j, u128::MAX)
                .expect("rank term bounded by subset count");
        }
        prev = c as isize;
    }
    rank as usize
}

/// Graph on the k-subsets of `g`'s vertices; two subsets are adjacent iff
/// their symmetric difference is an edge of `g`. Subsets are ordered
/// lexicographically.
pub fn sym_power(g: &Graph, k: usize) -> Result<Graph, PowersError> {
    sym_power_with_budget(g, k, DEFAULT_VERTEX_BUDGET)
}

pub fn sym_power_with_budget(g: &Graph, k: usize, budget: usize) -> Result<Graph, PowersError> {
    assert!(k >= 1, "power order must be at least 1");
    let n = g.vertex_count();
    if k > n {
        return Err(PowersError::OrderExceedsVertices { k, n });
    }
    let required = match binomial_capped(n, k, budget as u128) {
        Some(c) => c as usize,
        None => {
            return Err(PowersError::BudgetExceeded {
                required: usize::MAX,
                budget,
            })
        }
    };
    let mut pairs = Vec::new();
    let mut subset: Vec<usize> = (0..k).collect();
    let mut neighbor = vec![0; k];
    for rank in 0..required {
        for (slot, &x) in subset.iter().enumerate() {
            for w in g.neighbors(x) {
                if subset.binary_search(&w).is_ok() {
                    continue;
                }
                neighbor.copy_from_slice(&subset);
                neighbor[slot] = w;
                neighbor.sort_unstable();
                let other = subset_rank(n, &neighbor);
                if other > rank {
                    pairs.push((rank, other));
                }
            }
        }
        advance_subset(n, &mut subset);
    }
    Ok(Graph::from_edge_list(required, pairs).expect("symmetric power adjacency is valid"))
}

/// Steps `subset` to its lexicographic successor (no-op on the last one).
fn advance_subset(n: usize, subset: &mut [usize]) {
    let k = subset.len();
    for i in (0..k).rev() {
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return;
        }
    }
}

/// Quotient of `x` by `action`, certified simply laced or not.
///
/// Simply laced means: no edge inside an orbit, and no vertex with two
/// neighbors in one orbit. When both hold, orbit `U` and orbit `W` are
/// adjacent in the quotient iff some edge of `x` joins them; otherwise the
/// first violating pair is reported and no quotient graph is produced.
pub fn quotient(x: &Graph, action: &Action) -> Result<QuotientGraph, PowersError> {
    if action.vertex_count() != x.vertex_count() {
        return Err(PowersError::ActionSizeMismatch {
            expected: x.vertex_count(),
            got: action.vertex_count(),
        });
    }
    let mut violation = None;
    'scan: for v in 0..x.vertex_count() {
        let mut seen: std::collections::HashMap<usize, VertexId> = std::collections::HashMap::new();
        for w in x.neighbors(v) {
            if action.orbit_of(v) == action.orbit_of(w) {
                violation = Some(SimplyLacedViolation::EdgeInsideOrbit {
                    u: v.min(w),
                    v: v.max(w),
                });
                break 'scan;
            }
            if let Some(&first) = seen.get(&action.orbit_of(w)) {
                violation = Some(SimplyLacedViolation::RepeatedOrbitNeighbor {
                    vertex: v,
                    orbit: action.orbit_of(w),
                    first,
                    second: w,
                });
                break 'scan;
            }
            seen.insert(action.orbit_of(w), w);
        }
    }
    if let Some(violation) = violation {
        return Ok(QuotientGraph {
            base: x.clone(),
            action: action.clone(),
            simply_laced: false,
            quotient: None,
            violation: Some(violation),
        });
    }
    let pairs = x
        .edges()
        .iter()
        .map(|&(u, v)| (action.orbit_of(u), action.orbit_of(v)));
    let q = Graph::from_edge_list(action.orbit_count(), pairs)
        .expect("simply laced quotient has no loops");
    Ok(QuotientGraph {
        base: x.clone(),
        action: action.clone(),
        simply_laced: true,
        quotient: Some(q),
        violation: None,
    })
}

/// The natural symmetric-group action on the restricted k-th power: the
/// orbit of a distinct tuple is its underlying set. Orbit ids coincide
/// with the lexicographic subset ranks used by [`sym_power`], and every
/// orbit has size k! because the action is free on distinct tuples.
pub fn sym_action_on_restricted(g: &Graph, k: usize) -> Result<Action, PowersError> {
    sym_action_on_restricted_with_budget(g, k, DEFAULT_VERTEX_BUDGET)
}

pub fn sym_action_on_restricted_with_budget(
    g: &Graph,
    k: usize,
    budget: usize,
) -> Result<Action, PowersError> {
    let codes = distinct_codes_budgeted(g, k, budget)?;
    let n = g.vertex_count();
    let space = TupleSpace::new(n, k);
    let mut coords = vec![0; k];
    let ids: Vec<usize> = codes
        .iter()
        .map(|&code| {
            space.decode_into(code, &mut coords);
            let mut set = coords.clone();
            set.sort_unstable();
            subset_rank(n, &set)
        })
        .collect();
    Ok(Action::from_orbit_ids(&ids))
}

/// The transfer matrix of the symmetric-group action on the restricted
/// k-th power: `k!` on pairs of tuples that are equal as sets, 0
/// elsewhere.
pub fn m_matrix(g: &Graph, k: usize) -> Result<TransferMatrix, PowersError> {
    Ok(TransferMatrix::from_action(&sym_action_on_restricted(
        g, k,
    )?))
}
