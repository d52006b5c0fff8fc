//! The matching parameter `m(u, L, G)` and the ranks built on it.
//!
//! For a vertex `u`, a witness is a set `Z ⊆ N⁻[u]` split into `X` and `Y`
//! with a matching `M` from `X` into `V⁺(u)` and a matching `N` from
//! `Y ⊆ N⁻(u)` into `V⁺[u]`. Every matching edge is a graph edge.
//!
//! Both matchings are found at once as a single bipartite matching: sources
//! are `N⁻[u]`, targets are copies of the L-smaller vertices. In
//! [`MatchMode::Permissive`] `M` and `N` get separate target copies (they may
//! share targets); in [`MatchMode::Disjoint`] there is one copy, and `u` may
//! not be both an `M`-source and an `N`-target.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::OrderError;
use crate::graph::Graph;
use crate::order::{LinearOrder, OrientedView};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchMode {
    /// `M` and `N` are each matchings; together they may share targets.
    #[default]
    Permissive,
    /// `M ∪ N` is a single matching.
    Disjoint,
}

impl std::str::FromStr for MatchMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "permissive" => Ok(MatchMode::Permissive),
            "disjoint" => Ok(MatchMode::Disjoint),
            other => Err(format!("unknown mode '{other}' (expected permissive|disjoint)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct MatchingWitness {
    pub u: usize,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    /// Edges `(source, target)` matching `X` into `V⁺(u)`.
    pub m_edges: Vec<(usize, usize)>,
    /// Edges `(source, target)` matching `Y` into `V⁺[u]`.
    pub n_edges: Vec<(usize, usize)>,
}

impl MatchingWitness {
    pub fn size(&self) -> usize {
        self.x.len() + self.y.len()
    }

    pub fn z(&self) -> Vec<usize> {
        let mut z: Vec<usize> = self.x.iter().chain(&self.y).copied().collect();
        z.sort_unstable();
        z
    }

    /// Checks every condition of the definition; returns a description of
    /// the first violation.
    pub fn check(&self, view: &OrientedView<'_>, mode: MatchMode) -> Result<(), String> {
        let g = view.graph();
        let l = view.order();
        let u = self.u;
        let in_closed = |w: usize| w == u || view.in_neighbors(u).contains(&w);
        for &w in &self.x {
            if !in_closed(w) {
                return Err(format!("X member {w} not in N⁻[{u}]"));
            }
        }
        for &w in &self.y {
            if w == u || !view.in_neighbors(u).contains(&w) {
                return Err(format!("Y member {w} not in N⁻({u})"));
            }
            if self.x.contains(&w) {
                return Err(format!("{w} in both X and Y"));
            }
        }
        let check_side = |sources: &[usize], edges: &[(usize, usize)], closed: bool, name: &str| {
            if edges.len() != sources.len() {
                return Err(format!("{name} does not cover its sources"));
            }
            let mut used_src = Vec::new();
            let mut used_dst = Vec::new();
            for &(s, t) in edges {
                if !sources.contains(&s) || used_src.contains(&s) {
                    return Err(format!("{name} edge {s}-{t} has bad source"));
                }
                if used_dst.contains(&t) {
                    return Err(format!("{name} reuses target {t}"));
                }
                let in_target = l.less(t, u) || (closed && t == u);
                if !in_target || sources.contains(&t) {
                    return Err(format!("{name} target {t} outside the allowed range"));
                }
                if !g.has_edge(s, t) {
                    return Err(format!("{name} edge {s}-{t} is not a graph edge"));
                }
                used_src.push(s);
                used_dst.push(t);
            }
            Ok(())
        };
        check_side(&self.x, &self.m_edges, false, "M")?;
        check_side(&self.y, &self.n_edges, true, "N")?;
        if mode == MatchMode::Disjoint {
            let mut touched: Vec<usize> = Vec::new();
            for &(s, t) in self.m_edges.iter().chain(&self.n_edges) {
                for w in [s, t] {
                    if touched.contains(&w) {
                        return Err(format!("M ∪ N not a matching at {w}"));
                    }
                    touched.push(w);
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Side {
    M,
    N,
}

/// Kuhn's augmenting-path matching over explicit candidate lists.
fn max_matching(cands: &[Vec<(usize, Side)>]) -> Vec<Option<(usize, Side)>> {
    fn augment(
        s: usize,
        cands: &[Vec<(usize, Side)>],
        owner: &mut HashMap<(usize, Side), usize>,
        seen: &mut Vec<(usize, Side)>,
    ) -> bool {
        for &t in &cands[s] {
            if seen.contains(&t) {
                continue;
            }
            seen.push(t);
            let free = match owner.get(&t) {
                None => true,
                Some(&o) => augment(o, cands, owner, seen),
            };
            if free {
                owner.insert(t, s);
                return true;
            }
        }
        false
    }

    let mut owner = HashMap::new();
    for s in 0..cands.len() {
        let mut seen = Vec::new();
        augment(s, cands, &mut owner, &mut seen);
    }
    let mut assigned = vec![None; cands.len()];
    for (t, s) in owner {
        assigned[s] = Some(t);
    }
    assigned
}

/// `m(u, L, G)` with one maximising witness.
pub fn m_value(view: &OrientedView<'_>, u: usize, mode: MatchMode) -> (usize, MatchingWitness) {
    let g = view.graph();
    let l = view.order();
    let below = |w: usize| -> Vec<usize> {
        g.neighbors(w).iter().copied().filter(|&t| l.less(t, u)).collect()
    };

    let mut sources = vec![u];
    sources.extend_from_slice(view.in_neighbors(u));

    let build = |allow_u_source: bool, allow_u_target: bool| -> Vec<Vec<(usize, Side)>> {
        sources
            .iter()
            .map(|&s| {
                let mut c = Vec::new();
                if s == u {
                    if allow_u_source {
                        c.extend(view.out_neighbors(u).iter().map(|&t| (t, Side::M)));
                    }
                    return c;
                }
                for t in below(s) {
                    c.push((t, Side::M));
                    if mode == MatchMode::Permissive {
                        c.push((t, Side::N));
                    }
                }
                if allow_u_target {
                    c.push((u, Side::N));
                }
                c
            })
            .collect()
    };

    let assigned = match mode {
        MatchMode::Permissive => max_matching(&build(true, true)),
        MatchMode::Disjoint => {
            let a = max_matching(&build(true, false));
            let b = max_matching(&build(false, true));
            let size = |v: &Vec<Option<(usize, Side)>>| v.iter().flatten().count();
            if size(&b) > size(&a) {
                b
            } else {
                a
            }
        }
    };

    let mut w = MatchingWitness {
        u,
        ..Default::default()
    };
    for (i, slot) in assigned.iter().enumerate() {
        let s = sources[i];
        match slot {
            Some((t, Side::M)) if *t != u => {
                w.x.push(s);
                w.m_edges.push((s, *t));
            }
            Some((t, _)) => {
                w.y.push(s);
                w.n_edges.push((s, *t));
            }
            None => {}
        }
    }
    (w.size(), w)
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexRank {
    pub vertex: usize,
    pub d_plus: usize,
    pub m: usize,
    pub r: usize,
    pub witness: MatchingWitness,
}

#[derive(Debug, Clone, Serialize)]
pub struct RankReport {
    pub mode: MatchMode,
    pub vertices: Vec<VertexRank>,
    /// `r(L, G)`; 0 for the empty graph.
    pub r_of_order: usize,
}

impl RankReport {
    /// Vertex attaining `r(L, G)` (smallest id on ties).
    pub fn argmax(&self) -> Option<&VertexRank> {
        self.vertices
            .iter()
            .filter(|v| v.r == self.r_of_order)
            .min_by_key(|v| v.vertex)
    }
}

pub fn rank_vertex(view: &OrientedView<'_>, u: usize, mode: MatchMode) -> VertexRank {
    let (m, witness) = m_value(view, u, mode);
    let d_plus = view.out_degree(u);
    VertexRank {
        vertex: u,
        d_plus,
        m,
        r: d_plus + m,
        witness,
    }
}

pub fn rank_order(g: &Graph, order: &LinearOrder, mode: MatchMode) -> Result<RankReport, OrderError> {
    let view = OrientedView::new(g, order)?;
    let vertices: Vec<VertexRank> = g.vertices().map(|u| rank_vertex(&view, u, mode)).collect();
    let r_of_order = vertices.iter().map(|v| v.r).max().unwrap_or(0);
    Ok(RankReport {
        mode,
        vertices,
        r_of_order,
    })
}

/// `r(L, G)` without witnesses.
pub fn order_rank(g: &Graph, order: &LinearOrder, mode: MatchMode) -> Result<usize, OrderError> {
    let view = OrientedView::new(g, order)?;
    Ok(g.vertices()
        .map(|u| view.out_degree(u) + m_value(&view, u, mode).0)
        .max()
        .unwrap_or(0))
}

pub const DEFAULT_EXACT_CAP: usize = 9;

/// `r(G)` by enumerating all `n!` orders. Returns the minimum and the first
/// minimising order found (lexicographic greatest-first enumeration).
pub fn rank_graph_exact(
    g: &Graph,
    mode: MatchMode,
    cap: usize,
) -> Result<(usize, LinearOrder), OrderError> {
    let n = g.n();
    if n > cap {
        return Err(OrderError::TooLarge { n, cap });
    }
    let mut seq: Vec<usize> = (0..n).collect();
    let mut best: Option<(usize, Vec<usize>)> = None;
    loop {
        let l = LinearOrder::from_greatest_first(&seq)?;
        let r = order_rank(g, &l, mode)?;
        if best.as_ref().is_none_or(|(b, _)| r < *b) {
            best = Some((r, seq.clone()));
        }
        if !next_permutation(&mut seq) {
            break;
        }
    }
    let (r, seq) = best.expect("at least one order");
    Ok((r, LinearOrder::from_greatest_first(&seq)?))
}

fn next_permutation(seq: &mut [usize]) -> bool {
    if seq.len() < 2 {
        return false;
    }
    let mut i = seq.len() - 1;
    while i > 0 && seq[i - 1] >= seq[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = seq.len() - 1;
    while seq[j] <= seq[i - 1] {
        j -= 1;
    }
    seq.swap(i - 1, j);
    seq[i..].reverse();
    true
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderVerification {
    pub bound: usize,
    pub r_of_order: usize,
    pub pass: bool,
    pub argmax: Option<VertexRank>,
}

/// Recomputes `r(L, G)` and compares it with `bound`.
pub fn verify_order(
    g: &Graph,
    order: &LinearOrder,
    bound: usize,
    mode: MatchMode,
) -> Result<OrderVerification, OrderError> {
    let report = rank_order(g, order, mode)?;
    Ok(OrderVerification {
        bound,
        r_of_order: report.r_of_order,
        pass: report.r_of_order <= bound,
        argmax: report.argmax().cloned(),
    })
}
