//! Index arithmetic over k-tuples of vertices.
//!
//! The space of all k-tuples over `[0,n)` is enumerated in mixed-radix
//! lexicographic order with the first coordinate most significant, so every
//! tuple has a stable integer code in `[0, n^k)`. Tuples with pairwise
//! distinct coordinates form the distinct sub-space used by restricted
//! powers.

use crate::graph::{Graph, VertexId};

/// `n^k` if it fits in `usize`.
pub fn checked_power(n: usize, k: usize) -> Option<usize> {
    let mut acc = 1usize;
    for _ in 0..k {
        acc = acc.checked_mul(n)?;
    }
    Some(acc)
}

/// The set of all k-tuples over `[0,n)`, with codes in `[0, n^k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleSpace {
    n: usize,
    k: usize,
    size: usize,
}

impl TupleSpace {
    /// Tuple length zero is rejected: every construction here works with
    /// k >= 1.
    pub fn new(n: usize, k: usize) -> Self {
        assert!(k >= 1, "tuple length must be at least 1");
        let size = checked_power(n, k).expect("n^k overflows usize");
        TupleSpace { n, k, size }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of tuples, `n^k`.
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    fn stride(&self, pos: usize) -> usize {
        debug_assert!(pos < self.k);
        checked_power(self.n, self.k - 1 - pos).unwrap()
    }

    pub fn encode(&self, tuple: &[VertexId]) -> usize {
        assert_eq!(tuple.len(), self.k, "tuple length mismatch");
        let mut code = 0;
        for &v in tuple {
            assert!(v < self.n, "coordinate {v} out of range for n={}", self.n);
            code = code * self.n + v;
        }
        code
    }

    pub fn decode(&self, code: usize) -> Vec<VertexId> {
        let mut out = vec![0; self.k];
        self.decode_into(code, &mut out);
        out
    }

    pub fn decode_into(&self, code: usize, out: &mut [VertexId]) {
        assert!(code < self.size, "code out of range");
        assert_eq!(out.len(), self.k);
        let mut rest = code;
        for slot in out.iter_mut().rev() {
            *slot = rest % self.n;
            rest /= self.n;
        }
    }

    /// Coordinate at `pos` (0-based) without a full decode.
    #[inline]
    pub fn coordinate(&self, code: usize, pos: usize) -> VertexId {
        code / self.stride(pos) % self.n
    }

    /// True iff all coordinates are pairwise distinct (membership in the
    /// distinct tuple space).
    pub fn is_distinct(&self, code: usize) -> bool {
        assert!(code < self.size, "code out of range");
        if self.n > 128 {
            let tuple = self.decode(code);
            return is_distinct_tuple(&tuple);
        }
        let mut seen = 0u128;
        let mut rest = code;
        for _ in 0..self.k {
            let v = rest % self.n;
            if seen >> v & 1 != 0 {
                return false;
            }
            seen |= 1 << v;
            rest /= self.n;
        }
        true
    }

    /// Codes of all distinct tuples in increasing order.
    pub fn distinct_codes(&self) -> Vec<usize> {
        (0..self.size).filter(|&c| self.is_distinct(c)).collect()
    }

    /// Replaces the coordinate at `pos` (0-based) with `m`.
    #[inline]
    pub fn substitute(&self, code: usize, pos: usize, m: VertexId) -> usize {
        assert!(pos < self.k, "position out of range");
        assert!(m < self.n);
        let stride = self.stride(pos);
        let old = code / stride % self.n;
        code - old * stride + m * stride
    }

    /// Permutes coordinates: position `l` of the input lands at position
    /// `theta[l]` of the output. Composition satisfies
    /// `apply(compose(a,b), t) == apply(a, apply(b, t))` with
    /// `compose(a,b)[l] = a[b[l]]`.
    pub fn sym_action(&self, theta: &[usize], code: usize) -> usize {
        assert_eq!(theta.len(), self.k);
        let mut seen = vec![false; self.k];
        for &p in theta {
            assert!(p < self.k && !seen[p], "theta is not a permutation");
            seen[p] = true;
        }
        let tuple = self.decode(code);
        let mut out = vec![0; self.k];
        for (l, &v) in tuple.iter().enumerate() {
            out[theta[l]] = v;
        }
        self.encode(&out)
    }
}

pub fn is_distinct_tuple(tuple: &[VertexId]) -> bool {
    tuple
        .iter()
        .enumerate()
        .all(|(i, v)| !tuple[..i].contains(v))
}

/// Byte length of the canonical atomic-type encoding for k-tuples.
pub const fn type_byte_len(k: usize) -> usize {
    k + (k * (k - 1) / 2).div_ceil(8)
}

/// Writes the canonical atomic-type encoding of `coords` into `out`.
///
/// Layout: one byte per position holding the first position with an equal
/// coordinate, followed by a bit triangle over position pairs `(l',l)` with
/// `l' < l` recording adjacency in `g`. Equal positions never set an
/// adjacency bit because the graph is loop-free. Two tuples receive equal
/// bytes exactly when they have the same coordinate-equality pattern and
/// the same pairwise adjacency pattern.
pub fn write_atomic_type(g: &Graph, coords: &[VertexId], out: &mut [u8]) {
    let k = coords.len();
    debug_assert!(k <= u8::MAX as usize);
    debug_assert_eq!(out.len(), type_byte_len(k));
    for b in out.iter_mut() {
        *b = 0;
    }
    for l in 0..k {
        let mut first = l;
        for p in 0..l {
            if coords[p] == coords[l] {
                first = p;
                break;
            }
        }
        out[l] = first as u8;
    }
    for l in 1..k {
        for p in 0..l {
            if g.has_edge(coords[p], coords[l]) {
                let idx = l * (l - 1) / 2 + p;
                out[k + idx / 8] |= 1 << (idx % 8);
            }
        }
    }
}

/// The equivalence class of a tuple under coordinate equality and pairwise
/// adjacency, in canonical byte form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomicType {
    k: usize,
    bytes: Vec<u8>,
}

impl AtomicType {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// First position carrying the same coordinate as position `l`.
    pub fn first_equal(&self, l: usize) -> usize {
        self.bytes[l] as usize
    }

    /// Adjacency between the coordinates at two distinct positions.
    pub fn positions_adjacent(&self, a: usize, b: usize) -> bool {
        assert!(a != b && a < self.k && b < self.k);
        let (p, l) = (a.min(b), a.max(b));
        let idx = l * (l - 1) / 2 + p;
        self.bytes[self.k + idx / 8] >> (idx % 8) & 1 != 0
    }
}

/// Atomic type of a tuple of vertices of `g`.
pub fn atomic_type(g: &Graph, coords: &[VertexId]) -> AtomicType {
    assert!(!coords.is_empty());
    for &v in coords {
        assert!(v < g.vertex_count());
    }
    let mut bytes = vec![0; type_byte_len(coords.len())];
    write_atomic_type(g, coords, &mut bytes);
    AtomicType {
        k: coords.len(),
        bytes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use itertools::Itertools;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn p3() -> Graph {
        Graph::from_edge_list(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn encode_examples() {
        let sp = TupleSpace::new(3, 2);
        assert_eq!(sp.encode(&[0, 0]), 0);
        assert_eq!(sp.encode(&[1, 2]), 5);
        assert_eq!(sp.encode(&[2, 2]), 8);
        assert_eq!(sp.size(), 9);
    }

    #[test]
    fn encode_decode_bijection_exhaustive() {
        for n in 1..=5 {
            for k in 1..=4 {
                let sp = TupleSpace::new(n, k);
                for code in 0..sp.size() {
                    let t = sp.decode(code);
                    assert_eq!(sp.encode(&t), code);
                    for pos in 0..k {
                        assert_eq!(sp.coordinate(code, pos), t[pos]);
                    }
                }
            }
        }
    }

    #[test]
    #[should_panic(expected = "tuple length must be at least 1")]
    fn zero_length_rejected() {
        TupleSpace::new(3, 0);
    }

    #[test]
    #[should_panic(expected = "tuple length mismatch")]
    fn encode_rejects_wrong_length() {
        TupleSpace::new(3, 2).encode(&[0, 1, 2]);
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn encode_rejects_large_coordinate() {
        TupleSpace::new(3, 2).encode(&[0, 3]);
    }

    #[test]
    fn distinctness() {
        let sp = TupleSpace::new(3, 1);
        assert!((0..3).all(|c| sp.is_distinct(c)));

        let sp = TupleSpace::new(3, 2);
        assert!(!sp.is_distinct(sp.encode(&[1, 1])));
        assert!(sp.is_distinct(sp.encode(&[1, 2])));
    }

    #[test]
    fn distinct_count_matches_enumeration() {
        // independent oracle: count pairwise-distinct triples by nested loops
        let mut count = 0;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4usize {
                    if a != b && b != c && a != c {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(count, 24);
        assert_eq!(TupleSpace::new(4, 3).distinct_codes().len(), 24);

        // falling factorial for small n, k
        for n in 1..=6usize {
            for k in 1..=3usize {
                let expected: usize = (0..k).map(|i| n.saturating_sub(i)).product();
                assert_eq!(TupleSpace::new(n, k).distinct_codes().len(), expected);
            }
        }
    }

    #[test]
    fn substitution() {
        let sp = TupleSpace::new(3, 2);
        let t = sp.encode(&[1, 2]);
        assert_eq!(sp.decode(sp.substitute(t, 0, 0)), vec![0, 2]);
        // replacing a coordinate with itself is the identity
        assert_eq!(sp.substitute(t, 1, 2), t);
        // code-level arithmetic: (1,2) with its second coordinate set to 0
        assert_eq!(sp.substitute(5, 1, 0), 3);
    }

    #[test]
    #[should_panic(expected = "position out of range")]
    fn substitute_rejects_bad_position() {
        TupleSpace::new(3, 2).substitute(0, 2, 0);
    }

    #[test]
    fn sym_action_basics() {
        let sp = TupleSpace::new(3, 2);
        let t = sp.encode(&[1, 2]);
        assert_eq!(sp.sym_action(&[0, 1], t), t);
        assert_eq!(sp.decode(sp.sym_action(&[1, 0], t)), vec![2, 1]);

        let sp = TupleSpace::new(3, 3);
        let t = sp.encode(&[0, 1, 2]);
        let orbit: std::collections::BTreeSet<usize> = (0..3)
            .permutations(3)
            .map(|perm| sp.sym_action(&perm, t))
            .collect();
        assert_eq!(orbit.len(), 6);
    }

    #[test]
    fn sym_action_group_law() {
        let sp = TupleSpace::new(4, 3);
        let mut rng = StdRng::seed_from_u64(3);
        let perms: Vec<Vec<usize>> = (0..3).permutations(3).collect();
        for _ in 0..100 {
            let t = rng.random_range(0..sp.size());
            let a = &perms[rng.random_range(0..perms.len())];
            let b = &perms[rng.random_range(0..perms.len())];
            let composed: Vec<usize> = (0..3).map(|l| a[b[l]]).collect();
            assert_eq!(
                sp.sym_action(&composed, t),
                sp.sym_action(a, sp.sym_action(b, t))
            );
        }
    }

    #[test]
    #[should_panic(expected = "not a permutation")]
    fn sym_action_rejects_non_bijection() {
        TupleSpace::new(3, 2).sym_action(&[0, 0], 0);
    }

    #[test]
    fn sym_action_preserves_distinctness_and_type_pattern() {
        let g = p3();
        let sp = TupleSpace::new(3, 3);
        let perms: Vec<Vec<usize>> = (0..3).permutations(3).collect();
        for code in 0..sp.size() {
            let t = sp.decode(code);
            for theta in &perms {
                let moved = sp.decode(sp.sym_action(theta, code));
                assert_eq!(
                    sp.is_distinct(code),
                    sp.is_distinct(sp.sym_action(theta, code))
                );
                // position l of t landed at theta[l]; the pairwise patterns
                // must follow the same relocation
                for l in 0..3 {
                    for p in 0..3 {
                        if p == l {
                            continue;
                        }
                        assert_eq!(t[l] == t[p], moved[theta[l]] == moved[theta[p]]);
                        assert_eq!(
                            g.has_edge(t[l], t[p]),
                            g.has_edge(moved[theta[l]], moved[theta[p]])
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn atomic_types_on_path() {
        let g = p3();
        // distinct adjacent pairs share a type
        assert_eq!(atomic_type(&g, &[0, 1]), atomic_type(&g, &[1, 2]));
        // non-adjacent distinct differs from adjacent
        assert_ne!(atomic_type(&g, &[0, 2]), atomic_type(&g, &[0, 1]));
        // the diagonal shares a single type
        assert_eq!(atomic_type(&g, &[0, 0]), atomic_type(&g, &[1, 1]));
        assert_eq!(atomic_type(&g, &[1, 1]), atomic_type(&g, &[2, 2]));

        let t = atomic_type(&g, &[0, 1]);
        assert!(t.positions_adjacent(0, 1));
        assert_eq!(t.first_equal(0), 0);
        assert_eq!(t.first_equal(1), 1);
        let d = atomic_type(&g, &[2, 2]);
        assert_eq!(d.first_equal(1), 0);
        assert!(!d.positions_adjacent(0, 1));
    }

    /// Direct statement of the defining equivalence: equality patterns and
    /// adjacency patterns must both match.
    fn equivalent(g: &Graph, s: &[usize], t: &[usize]) -> bool {
        let k = s.len();
        for l in 0..k {
            for p in 0..k {
                if (s[l] == s[p]) != (t[l] == t[p]) {
                    return false;
                }
                if g.has_edge(s[l], s[p]) != g.has_edge(t[l], t[p]) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn type_equality_matches_defining_equivalence() {
        let g = p3();
        let sp = TupleSpace::new(3, 3);
        for a in 0..sp.size() {
            for b in 0..sp.size() {
                let s = sp.decode(a);
                let t = sp.decode(b);
                assert_eq!(
                    equivalent(&g, &s, &t),
                    atomic_type(&g, &s) == atomic_type(&g, &t),
                    "tuples {s:?} {t:?}"
                );
            }
        }
    }

    #[test]
    fn type_invariant_under_relabeling() {
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..20 {
            let n = rng.random_range(2..7);
            let mut pairs = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(0.5) {
                        pairs.push((u, v));
                    }
                }
            }
            let g = Graph::from_edge_list(n, pairs).unwrap();
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                perm.swap(i, rng.random_range(0..=i));
            }
            let h = g.relabel(&perm).unwrap();
            for _ in 0..20 {
                let k = rng.random_range(1..4);
                let tuple: Vec<usize> = (0..k).map(|_| rng.random_range(0..n)).collect();
                let image: Vec<usize> = tuple.iter().map(|&v| perm[v]).collect();
                assert_eq!(atomic_type(&g, &tuple), atomic_type(&h, &image));
            }
        }
    }
}
