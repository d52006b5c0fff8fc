//! Linear orders on vertices and the oriented view they induce.
//!
//! An edge `uv` with `u >_L v` becomes the arc `(u, v)`: out-neighbours are
//! the L-smaller neighbours, in-neighbours the L-greater ones.

use crate::error::OrderError;
use crate::graph::Graph;

/// A bijection from vertices onto positions `0..n`; a larger position means
/// greater in the order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearOrder {
    position: Vec<usize>,
}

impl LinearOrder {
    pub fn from_positions(position: Vec<usize>) -> Result<Self, OrderError> {
        let n = position.len();
        let mut seen = vec![false; n];
        for &p in &position {
            if p >= n || seen[p] {
                return Err(OrderError::NotPermutation(p));
            }
            seen[p] = true;
        }
        Ok(LinearOrder { position })
    }

    /// Order from a sequence listing vertices from L-greatest to L-least.
    pub fn from_greatest_first(seq: &[usize]) -> Result<Self, OrderError> {
        let n = seq.len();
        let mut position = vec![usize::MAX; n];
        for (i, &v) in seq.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return Err(OrderError::NotPermutation(v));
            }
            position[v] = n - 1 - i;
        }
        Ok(LinearOrder { position })
    }

    /// Order from a sequence listing vertices from L-least to L-greatest.
    pub fn from_least_first(seq: &[usize]) -> Result<Self, OrderError> {
        let rev: Vec<usize> = seq.iter().rev().copied().collect();
        Self::from_greatest_first(&rev)
    }

    /// The identity order: vertex `v` has position `v`.
    pub fn identity(n: usize) -> Self {
        LinearOrder {
            position: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.position.len()
    }

    pub fn is_empty(&self) -> bool {
        self.position.is_empty()
    }

    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    pub fn positions(&self) -> &[usize] {
        &self.position
    }

    /// `u <_L v`
    pub fn less(&self, u: usize, v: usize) -> bool {
        self.position[u] < self.position[v]
    }

    pub fn greatest_first(&self) -> Vec<usize> {
        let n = self.len();
        let mut seq = vec![0; n];
        for (v, &p) in self.position.iter().enumerate() {
            seq[n - 1 - p] = v;
        }
        seq
    }

    pub fn check_covers(&self, g: &Graph) -> Result<(), OrderError> {
        if self.len() != g.n() {
            return Err(OrderError::SizeMismatch {
                expected: g.n(),
                got: self.len(),
            });
        }
        Ok(())
    }

    /// Single line of ids from L-greatest to L-least.
    pub fn to_line(&self) -> String {
        let ids: Vec<String> = self.greatest_first().iter().map(|v| v.to_string()).collect();
        ids.join(" ")
    }

    pub fn parse_line(text: &str) -> Result<Self, crate::error::ParseError> {
        let mut seq = Vec::new();
        for (i, line) in text.lines().enumerate() {
            for tok in line.split_whitespace() {
                let v = tok.parse().map_err(|_| {
                    crate::error::ParseError::new(i + 1, format!("'{tok}' is not a vertex id"))
                })?;
                seq.push(v);
            }
        }
        Self::from_greatest_first(&seq)
            .map_err(|e| crate::error::ParseError::new(1, e.to_string()))
    }
}

/// The digraph `G_L`. Out- and in-neighbour lists are sorted from L-greatest
/// to L-least.
#[derive(Debug, Clone)]
pub struct OrientedView<'g> {
    graph: &'g Graph,
    order: LinearOrder,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
}

impl<'g> OrientedView<'g> {
    pub fn new(graph: &'g Graph, order: &LinearOrder) -> Result<Self, OrderError> {
        order.check_covers(graph)?;
        let n = graph.n();
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for u in 0..n {
            for &v in graph.neighbors(u) {
                if order.less(v, u) {
                    out[u].push(v);
                } else {
                    inn[u].push(v);
                }
            }
            out[u].sort_unstable_by_key(|&w| std::cmp::Reverse(order.position(w)));
            inn[u].sort_unstable_by_key(|&w| std::cmp::Reverse(order.position(w)));
        }
        Ok(OrientedView {
            graph,
            order: order.clone(),
            out,
            inn,
        })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn order(&self) -> &LinearOrder {
        &self.order
    }

    /// N⁺(u): L-smaller neighbours.
    pub fn out_neighbors(&self, u: usize) -> &[usize] {
        &self.out[u]
    }

    /// N⁻(u): L-greater neighbours.
    pub fn in_neighbors(&self, u: usize) -> &[usize] {
        &self.inn[u]
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out[u].len()
    }

    pub fn in_degree(&self, u: usize) -> usize {
        self.inn[u].len()
    }

    /// Arcs `(u, v)` with `u >_L v`.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&v| (u, v)))
    }
}

pub fn orient<'g>(g: &'g Graph, order: &LinearOrder) -> Result<OrientedView<'g>, OrderError> {
    OrientedView::new(g, order)
}
