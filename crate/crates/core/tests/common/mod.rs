#![allow(dead_code)]

use marklab_core::construct::{construct_order_girth7, ConstructOptions};
use marklab_core::constructions::{hex_patch, lower_bound_graph};
use marklab_core::generators::*;
use marklab_core::{cycle, Graph, LinearOrder, MatchMode};

pub struct Case {
    pub name: String,
    pub graph: Graph,
}

fn case(name: impl Into<String>, graph: Graph) -> Case {
    Case {
        name: name.into(),
        graph,
    }
}

fn c(k: usize) -> Graph {
    cycle(k).unwrap()
}

/// Wheel with its first `count` spokes subdivided once.
fn partly_subdivided_wheel(rim: usize, count: usize) -> Graph {
    let spokes: Vec<(usize, usize)> = (1..=count).map(|i| (0, i)).collect();
    wheel(rim).subdivide_edges(&spokes, 1)
}

/// Graphs with at most 8 vertices.
pub fn small_corpus() -> Vec<Case> {
    let mut out = Vec::new();
    for n in 1..=8 {
        out.push(case(format!("P{n}"), path(n)));
    }
    for k in 3..=8 {
        out.push(case(format!("C{k}"), c(k)));
    }
    for l in 2..=7 {
        out.push(case(format!("star{l}"), star(l)));
    }
    for n in 3..=6 {
        out.push(case(format!("K{n}"), complete(n)));
    }
    for (a, b) in [(2, 2), (2, 3), (2, 4), (3, 3), (2, 6), (3, 5), (4, 4)] {
        out.push(case(format!("K{a},{b}"), complete_bipartite(a, b)));
    }
    for (r, cols) in [(2, 2), (2, 3), (2, 4)] {
        out.push(case(format!("grid{r}x{cols}"), grid(r, cols)));
    }
    for rim in 3..=7 {
        out.push(case(format!("W{rim}"), wheel(rim)));
    }
    for count in 1..=3 {
        out.push(case(format!("W3-sub{count}"), partly_subdivided_wheel(3, count)));
    }
    out.push(case("W4-sub3", partly_subdivided_wheel(4, 3)));
    out.push(case("cube", cube()));
    out.push(case("prism3", prism(3)));
    out.push(case("prism4", prism(4)));
    out.push(case("caterpillar3x1", caterpillar(3, 1)));
    out.push(case("caterpillar2x3", caterpillar(2, 3)));
    for n in 4..=8 {
        for seed in 0..2 {
            out.push(case(format!("tree{n}s{seed}"), random_tree(n, seed)));
        }
    }
    for n in 5..=8 {
        for (i, p) in [0.3, 0.5, 0.7].into_iter().enumerate() {
            out.push(case(format!("gnp{n}p{i}"), random_gnp(n, p, (n * 10 + i) as u64)));
        }
    }
    out
}

/// Trees with at most 10 vertices.
pub fn tree_corpus() -> Vec<Case> {
    let mut out = Vec::new();
    for n in 1..=10 {
        out.push(case(format!("P{n}"), path(n)));
    }
    for l in 2..=9 {
        out.push(case(format!("star{l}"), star(l)));
    }
    out.push(case("caterpillar3x2", caterpillar(3, 2)));
    out.push(case("caterpillar5x1", caterpillar(5, 1)));
    out.push(case("spider3", star(3).subdivide_each_edge(1)));
    for n in 3..=10 {
        for seed in 0..4 {
            out.push(case(format!("tree{n}s{seed}"), random_tree(n, 100 + seed)));
        }
    }
    out
}

/// Planar seeds of girth at least 4, each subdivided once, so girth >= 8.
pub fn girth7_seeds() -> Vec<Case> {
    let mut seeds = Vec::new();
    for (r, cols) in [(2, 2), (2, 3), (2, 4), (3, 3), (3, 4), (4, 4), (2, 6), (3, 5)] {
        seeds.push((format!("grid{r}x{cols}"), grid(r, cols)));
    }
    seeds.push(("cube".into(), cube()));
    for m in 2..=6 {
        seeds.push((format!("K2,{m}"), complete_bipartite(2, m)));
    }
    for k in 4..=6 {
        seeds.push((format!("prism{k}"), prism(k)));
    }
    seeds.push(("dodecahedron".into(), dodecahedron()));
    seeds.push(("C4".into(), c(4)));
    seeds.push(("C5".into(), c(5)));
    for rings in 1..=2 {
        seeds.push((format!("H{rings}"), hex_patch(rings).unwrap().graph));
    }
    seeds.push(("tree12".into(), random_tree(12, 5)));
    seeds.push(("caterpillar4x2".into(), caterpillar(4, 2)));
    seeds
        .into_iter()
        .map(|(name, g)| case(format!("sub({name})"), g.subdivide_each_edge(1)))
        .collect()
}

/// Graphs with at most 14 vertices.
pub fn corpus_14() -> Vec<Case> {
    let mut out = small_corpus();
    for k in 9..=14 {
        out.push(case(format!("C{k}"), c(k)));
    }
    for n in [10, 12, 14] {
        out.push(case(format!("P{n}"), path(n)));
    }
    for (n, seed) in [(10, 1), (12, 2), (14, 3)] {
        out.push(case(format!("tree{n}s{seed}"), random_tree(n, seed)));
    }
    out.push(case("grid3x4", grid(3, 4)));
    out.push(case("grid2x7", grid(2, 7)));
    out.push(case("prism5", prism(5)));
    out.push(case("prism7", prism(7)));
    out.push(case("petersen", generalized_petersen(5, 2)));
    out.push(case("sub(K4)", complete(4).subdivide_each_edge(1)));
    out.push(case("sub(W4)", wheel(4).subdivide_each_edge(1)));
    out.push(case("sub(C6)", c(6).subdivide_each_edge(1)));
    out.push(case("G1", lower_bound_graph(1).unwrap().graph));
    out.push(case("H2", hex_patch(2).unwrap().graph));
    for n in 9..=14 {
        out.push(case(format!("gnp{n}"), random_gnp(n, 0.25, 900 + n as u64)));
    }
    out.retain(|c| c.graph.n() <= 14);
    out
}

/// The girth-7 constructor's order when it completes, else smallest-last.
pub fn harness_order(g: &Graph) -> LinearOrder {
    match construct_order_girth7(g, ConstructOptions::default()) {
        Ok((l, _)) => l,
        Err(_) => LinearOrder::from_greatest_first(&g.smallest_last_order().0).unwrap(),
    }
}

/// Finds an injective assignment of `sources` into `allowed(s)`, avoiding
/// `used`. Plain backtracking.
fn assign(sources: &[usize], allowed: &dyn Fn(usize) -> Vec<usize>, used: &mut Vec<usize>) -> bool {
    let Some((&s, rest)) = sources.split_first() else {
        return true;
    };
    for t in allowed(s) {
        if used.contains(&t) {
            continue;
        }
        used.push(t);
        if assign(rest, allowed, used) {
            return true;
        }
        used.pop();
    }
    false
}

/// `m(u, L, G)` by enumerating every subset `Z` of `N⁻[u]` and every split
/// into `X`, `Y`.
pub fn oracle_m(g: &Graph, l: &LinearOrder, u: usize, mode: MatchMode) -> usize {
    let mut closed: Vec<usize> = g.neighbors(u).iter().copied().filter(|&w| l.less(u, w)).collect();
    closed.push(u);
    let k = closed.len();
    let below = |s: usize, with_u: bool| -> Vec<usize> {
        g.neighbors(s)
            .iter()
            .copied()
            .filter(|&t| l.less(t, u) || (with_u && t == u))
            .collect()
    };
    let mut best = 0;
    // Each member of N⁻[u] is out (0), in X (1) or in Y (2).
    let total = 3usize.pow(k as u32);
    for code in 0..total {
        let mut x = Vec::new();
        let mut y = Vec::new();
        let mut c = code;
        let mut ok = true;
        for &w in &closed {
            match c % 3 {
                1 => x.push(w),
                2 if w == u => ok = false,
                2 => y.push(w),
                _ => {}
            }
            c /= 3;
        }
        if !ok || x.len() + y.len() <= best {
            continue;
        }
        let feasible = match mode {
            MatchMode::Permissive => {
                assign(&x, &|s| below(s, false), &mut Vec::new()) && assign(&y, &|s| below(s, true), &mut Vec::new())
            }
            MatchMode::Disjoint => {
                let u_in_x = x.contains(&u);
                let mut used = Vec::new();
                let mut sources = x.clone();
                sources.extend(&y);
                let nx = x.len();
                let idx = |s: usize| sources.iter().position(|&w| w == s).unwrap();
                assign(
                    &sources,
                    &|s| {
                        if idx(s) < nx {
                            below(s, false)
                        } else {
                            below(s, !u_in_x)
                        }
                    },
                    &mut used,
                )
            }
        };
        if feasible {
            best = x.len() + y.len();
        }
    }
    best
}
