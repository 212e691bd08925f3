//! Simple undirected graphs on at most 64 vertices.
//!
//! Adjacency is stored as one `u64` neighborhood bitset per vertex, so all
//! set operations used by the counting and bijection code are single machine
//! words. Graphs are immutable after construction and every constructor
//! validates symmetry and looplessness.

use std::fmt;

use crate::error::{Error, Result};

/// Hard cap on the vertex count; subsets must fit in a `u64`.
pub const MAX_VERTICES: usize = 64;

/// A set of vertices of some host graph, packed into a 64-bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// All vertices `0..n`.
    pub fn full(n: usize) -> VertexSet {
        debug_assert!(n <= MAX_VERTICES);
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> VertexSet {
        debug_assert!(v < MAX_VERTICES);
        VertexSet(1u64 << v)
    }

    pub fn from_bits(bits: u64) -> VertexSet {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && (self.0 >> v) & 1 == 1
    }

    #[must_use]
    pub fn with(self, v: usize) -> VertexSet {
        debug_assert!(v < MAX_VERTICES);
        VertexSet(self.0 | (1u64 << v))
    }

    #[must_use]
    pub fn without(self, v: usize) -> VertexSet {
        debug_assert!(v < MAX_VERTICES);
        VertexSet(self.0 & !(1u64 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Smallest vertex in the set, if any.
    pub fn min(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    /// Iterates over members in increasing order.
    pub fn iter(self) -> BitIter {
        BitIter(self.0)
    }
}

impl std::ops::BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 | rhs.0)
    }
}

impl std::ops::BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & rhs.0)
    }
}

impl std::ops::Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & !rhs.0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> VertexSet {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s = s.with(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Iterator over set bits, lowest first.
pub struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

/// A simple undirected graph with adjacency bitsets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph> {
        if n > MAX_VERTICES {
            return Err(Error::Size {
                what: "graph",
                needed: n,
                limit: MAX_VERTICES,
            });
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Builds a graph from an edge list, validating every endpoint.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::Index { vertex: u, n });
            }
            if v >= n {
                return Err(Error::Index { vertex: v, n });
            }
            if u == v {
                return Err(Error::Contract(format!("self-loop at vertex {u}")));
            }
            g.adj[u] |= 1u64 << v;
            g.adj[v] |= 1u64 << u;
        }
        g.assert_invariants();
        Ok(g)
    }

    pub(crate) fn from_adj(adj: Vec<u64>) -> Graph {
        let g = Graph { n: adj.len(), adj };
        g.assert_invariants();
        g
    }

    /// Symmetry, looplessness and bit range; cheap at n <= 64, run on every
    /// constructor output.
    fn assert_invariants(&self) {
        let full = VertexSet::full(self.n).bits();
        for v in 0..self.n {
            assert_eq!(self.adj[v] & !full, 0, "adjacency bit beyond n at {v}");
            assert_eq!((self.adj[v] >> v) & 1, 0, "self-loop at {v}");
        }
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                assert_eq!(
                    (self.adj[u] >> v) & 1,
                    (self.adj[v] >> u) & 1,
                    "asymmetric adjacency at ({u},{v})"
                );
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The open neighborhood N(v).
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    /// N(v) together with v itself.
    pub fn closed_neighborhood(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v] | (1u64 << v))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (self.adj[u] >> v) & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|a| a.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Union of N(v) over v in `s`.
    pub fn neighborhood_of_set(&self, s: VertexSet) -> VertexSet {
        let mut out = 0u64;
        for v in s.iter() {
            out |= self.adj[v];
        }
        VertexSet(out)
    }

    /// Complete bipartite graph K_{d,d} with parts {0..d-1} and {d..2d-1}.
    pub fn complete_bipartite(d: usize) -> Result<Graph> {
        if d == 0 || 2 * d > MAX_VERTICES {
            return Err(Error::Size {
                what: "K_{d,d} (d must be 1..=32)",
                needed: 2 * d,
                limit: MAX_VERTICES,
            });
        }
        let left = VertexSet::full(d).bits();
        let right = VertexSet::full(2 * d).bits() & !left;
        let mut adj = vec![right; d];
        adj.extend(std::iter::repeat_n(left, d));
        Ok(Graph::from_adj(adj))
    }

    /// Disjoint union of `k` copies of K_{d,d} on `2*d*k` vertices.
    pub fn alon_graph(d: usize, k: usize) -> Result<Graph> {
        if d == 0 || k == 0 {
            return Err(Error::Domain(format!(
                "alon_graph requires d >= 1 and k >= 1, got d={d}, k={k}"
            )));
        }
        let n = 2 * d * k;
        if n > MAX_VERTICES {
            return Err(Error::Size {
                what: "Alon graph",
                needed: n,
                limit: MAX_VERTICES,
            });
        }
        let block = Graph::complete_bipartite(d)?;
        let mut adj = vec![0u64; n];
        for copy in 0..k {
            let base = copy * 2 * d;
            for v in 0..2 * d {
                adj[base + v] = block.adj[v] << base;
            }
        }
        Ok(Graph::from_adj(adj))
    }

    /// Cycle C_n with edges {v, v+1 mod n}.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::Size {
                what: "cycle (minimum 3)",
                needed: n,
                limit: MAX_VERTICES,
            });
        }
        if n > MAX_VERTICES {
            return Err(Error::Size {
                what: "cycle",
                needed: n,
                limit: MAX_VERTICES,
            });
        }
        let edges: Vec<(usize, usize)> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Subgraph induced by `s`, relabeled in increasing order of original index.
    pub fn induced(&self, s: VertexSet) -> Graph {
        debug_assert!(s.is_subset_of(self.vertices()));
        let verts: Vec<usize> = s.iter().collect();
        let mut adj = vec![0u64; verts.len()];
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate() {
                if self.has_edge(u, v) {
                    adj[i] |= 1u64 << j;
                }
            }
        }
        Graph::from_adj(adj)
    }

    /// Connected components of the subgraph induced by `s`, ordered by their
    /// smallest vertex.
    pub fn components_on(&self, s: VertexSet) -> Vec<VertexSet> {
        let mut out = Vec::new();
        let mut rest = s.bits();
        while rest != 0 {
            let start = rest.trailing_zeros() as usize;
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let mut grow = 0u64;
                let mut f = frontier;
                while f != 0 {
                    let v = f.trailing_zeros() as usize;
                    f &= f - 1;
                    grow |= self.adj[v];
                }
                frontier = grow & rest & !comp;
                comp |= frontier;
            }
            out.push(VertexSet(comp));
            rest &= !comp;
        }
        out
    }

    pub fn connected_components(&self) -> Vec<VertexSet> {
        self.components_on(self.vertices())
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.connected_components().len() == 1
    }

    /// 2-colors the subgraph induced by `s`, or returns `None` if it contains
    /// an odd cycle. In each component the class holding the component's
    /// smallest vertex is the first one.
    pub fn bipartition_on(&self, s: VertexSet) -> Option<(VertexSet, VertexSet)> {
        debug_assert!(s.is_subset_of(self.vertices()));
        let mask = s.bits();
        let mut class1 = 0u64;
        let mut class2 = 0u64;
        for comp in self.components_on(s) {
            let start = comp.min().expect("components are nonempty");
            // BFS layering from the minimum vertex; even layers to class 1.
            let mut even = 1u64 << start;
            let mut odd = 0u64;
            let mut frontier = even;
            let mut parity = false;
            while frontier != 0 {
                let mut grow = 0u64;
                let mut f = frontier;
                while f != 0 {
                    let v = f.trailing_zeros() as usize;
                    f &= f - 1;
                    grow |= self.adj[v];
                }
                parity = !parity;
                frontier = grow & mask & !(even | odd);
                if parity {
                    odd |= frontier;
                } else {
                    even |= frontier;
                }
            }
            class1 |= even;
            class2 |= odd;
        }
        // The layering is only a proper 2-coloring if no class spans an edge.
        for v in BitIter(class1) {
            if self.adj[v] & class1 != 0 {
                return None;
            }
        }
        for v in BitIter(class2) {
            if self.adj[v] & class2 != 0 {
                return None;
            }
        }
        Some((VertexSet(class1), VertexSet(class2)))
    }

    /// Whole-graph bipartition.
    pub fn bipartition(&self) -> Option<(VertexSet, VertexSet)> {
        self.bipartition_on(self.vertices())
    }

    /// Bipartite double cover G x K_2: vertex (v, s) has index v + s*n, and
    /// (u,0) ~ (w,1) exactly when uw is an edge of G.
    pub fn double_cover(&self) -> Result<Graph> {
        let n2 = 2 * self.n;
        if n2 > MAX_VERTICES {
            return Err(Error::Size {
                what: "double cover",
                needed: n2,
                limit: MAX_VERTICES,
            });
        }
        let mut adj = vec![0u64; n2];
        for v in 0..self.n {
            adj[v] = self.adj[v] << self.n;
            adj[v + self.n] = self.adj[v];
        }
        Ok(Graph::from_adj(adj))
    }

    /// Common degree if the graph is regular; `None` otherwise (and for n=0).
    pub fn is_regular(&self) -> Option<usize> {
        if self.n == 0 {
            return None;
        }
        let d = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    /// Least pair u < w of neighbors of `v` whose neighborhoods differ, or
    /// `None` when all neighbors of `v` look alike. In a connected d-regular
    /// bipartite graph the `None` case happens exactly on K_{d,d} components.
    pub fn neighbor_witness(&self, v: usize) -> Result<Option<(usize, usize)>> {
        if v >= self.n {
            return Err(Error::Index {
                vertex: v,
                n: self.n,
            });
        }
        let nb: Vec<usize> = self.neighbors(v).iter().collect();
        for i in 0..nb.len() {
            for j in (i + 1)..nb.len() {
                if self.adj[nb[i]] != self.adj[nb[j]] {
                    return Ok(Some((nb[i], nb[j])));
                }
            }
        }
        Ok(None)
    }

    /// Disjoint union, vertices of `other` shifted past `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(Error::Size {
                what: "disjoint union",
                needed: n,
                limit: MAX_VERTICES,
            });
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|a| a << self.n));
        Ok(Graph::from_adj(adj))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        let mut first = true;
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.has_edge(u, v) {
                    if !first {
                        write!(f, ", ")?;
                    }
                    write!(f, "{u}-{v}")?;
                    first = false;
                }
            }
        }
        write!(f, "])")
    }
}
