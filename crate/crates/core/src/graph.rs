//! Immutable simple undirected graphs on dense vertex ids.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::error::GraphError;

/// Simple undirected graph on vertices `0..n`.
///
/// Adjacency lists are sorted and symmetric. Values are never mutated after
/// construction; every transformation returns a new graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

/// Length of a shortest cycle, or `Infinite` for forests.
///
/// The derived ordering places every finite value below `Infinite`, so
/// `min` over girths behaves as expected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }

    /// `true` if the girth is at least `k` (forests satisfy every bound).
    pub fn at_least(self, k: usize) -> bool {
        match self {
            Girth::Finite(g) => g >= k,
            Girth::Infinite => true,
        }
    }
}

/// Serialised as the cycle length, or the string `"inf"`.
impl Serialize for Girth {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Girth::Finite(g) => s.serialize_u64(*g as u64),
            Girth::Infinite => s.serialize_str("inf"),
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => write!(f, "inf"),
        }
    }
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) are merged; loops and out-of-range ids are rejected.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { vertex: u });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m2 = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            m2 += list.len();
        }
        Ok(Graph { adj, m: m2 / 2 })
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }

    /// Checks the structural invariants: sorted loop-free symmetric adjacency
    /// and a consistent edge count.
    pub fn validate(&self) -> Result<(), GraphError> {
        let mut deg_sum = 0;
        for (u, list) in self.adj.iter().enumerate() {
            deg_sum += list.len();
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(GraphError::Corrupt(format!("adjacency of {u} not strictly sorted")));
            }
            for &v in list {
                if v == u {
                    return Err(GraphError::SelfLoop { vertex: u });
                }
                if v >= self.n() {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() });
                }
                if self.adj[v].binary_search(&u).is_err() {
                    return Err(GraphError::Corrupt(format!("edge {u}-{v} not symmetric")));
                }
            }
        }
        if deg_sum != 2 * self.m {
            return Err(GraphError::Corrupt(format!(
                "edge count {} disagrees with degree sum {deg_sum}",
                self.m
            )));
        }
        Ok(())
    }

    /// Shortest cycle length via one BFS per vertex.
    pub fn girth(&self) -> Girth {
        let n = self.n();
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            let mut touched = vec![s];
            dist[s] = 0;
            queue.clear();
            queue.push_back(s);
            'bfs: while let Some(v) = queue.pop_front() {
                // nothing shorter can be found beyond this depth
                if 2 * dist[v] + 1 >= best {
                    break;
                }
                for &w in &self.adj[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        touched.push(w);
                        queue.push_back(w);
                    } else if parent[v] != w {
                        best = best.min(dist[v] + dist[w] + 1);
                        if 2 * dist[v] + 1 >= best {
                            break 'bfs;
                        }
                    }
                }
            }
            for v in touched {
                dist[v] = usize::MAX;
                parent[v] = usize::MAX;
            }
        }
        if best == usize::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }

    /// Degeneracy by repeatedly removing a minimum-degree vertex.
    pub fn degeneracy(&self) -> usize {
        self.smallest_last_order().1
    }

    /// Smallest-last elimination order (first removed first) and the
    /// degeneracy it witnesses.
    pub fn smallest_last_order(&self) -> (Vec<usize>, usize) {
        let n = self.n();
        let mut deg = self.degrees();
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut k = 0;
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !removed[v])
                .min_by_key(|&v| (deg[v], v))
                .expect("a vertex remains");
            k = k.max(deg[v]);
            removed[v] = true;
            order.push(v);
            for &w in &self.adj[v] {
                if !removed[w] {
                    deg[w] -= 1;
                }
            }
        }
        (order, k)
    }

    /// Disjoint union; `other`'s vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|list| list.iter().map(|&v| v + shift).collect()),
        );
        Graph {
            adj,
            m: self.m + other.m,
        }
    }

    /// Replaces every edge by a path with `times` internal vertices. New
    /// vertices are numbered after the originals, edge by edge in
    /// lexicographic edge order.
    pub fn subdivide_each_edge(&self, times: usize) -> Graph {
        let edges = self.edge_list();
        self.subdivide_edges(&edges, times)
    }

    /// Subdivides only the listed edges, each with `times` internal vertices.
    ///
    /// # Panics
    /// If a listed pair is not an edge.
    pub fn subdivide_edges(&self, which: &[(usize, usize)], times: usize) -> Graph {
        if times == 0 {
            return self.clone();
        }
        let mut targets: Vec<(usize, usize)> =
            which.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        targets.sort_unstable();
        targets.dedup();
        for &(u, v) in &targets {
            assert!(self.has_edge(u, v), "{u}-{v} is not an edge");
        }
        let mut next = self.n();
        let mut edges = Vec::with_capacity(self.m + targets.len() * times);
        for (u, v) in self.edges() {
            if targets.binary_search(&(u, v)).is_ok() {
                let mut prev = u;
                for _ in 0..times {
                    edges.push((prev, next));
                    prev = next;
                    next += 1;
                }
                edges.push((prev, v));
            } else {
                edges.push((u, v));
            }
        }
        Graph::new(next, &edges).expect("subdivision preserves simplicity")
    }

    /// Induced subgraph on `keep` (relabelled in the given order).
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges: Vec<_> = self
            .edges()
            .filter(|&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|(u, v)| (index[u], index[v]))
            .collect();
        Graph::new(keep.len(), &edges).expect("induced subgraph is simple")
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        let mut seen = vec![false; self.n()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n()
    }
}

/// The `k`-cycle on `0..k`.
pub fn cycle(k: usize) -> Result<Graph, GraphError> {
    if k < 3 {
        return Err(GraphError::CycleTooShort(k));
    }
    let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    Graph::new(k, &edges)
}

/// Necessary condition for a planar graph of girth at least `girth`:
/// `m <= girth / (girth - 2) * (n - 2)`, checked in integers.
///
/// Graphs with fewer than three vertices always pass. A `false` result means
/// the graph is certainly not planar with that girth; `true` proves nothing.
pub fn planar_girth_edge_bound(g: &Graph, girth: usize) -> bool {
    let girth = girth.max(3);
    if g.n() < 3 {
        return true;
    }
    g.m() * (girth - 2) <= girth * (g.n() - 2)
}
