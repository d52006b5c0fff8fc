//! Frozen values, each cross-checked against an independent computation.

mod common;

use marklab_core::constructions::lower_bound_graph;
use marklab_core::game::{play, ActivationAlice, MaxMarkedNeighborsBob};
use marklab_core::generators::{complete, path};
use marklab_core::rank::{rank_graph_exact, DEFAULT_EXACT_CAP};
use marklab_core::solver::{best_response_bob, brute_force_value, game_coloring_number, response_options, SolverOptions};
use marklab_core::{cycle, Graph, LinearOrder, MatchMode};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// `r(G)` from the subset oracle over every order.
fn oracle_rank(g: &Graph, mode: MatchMode) -> usize {
    permutations(g.n())
        .into_iter()
        .map(|seq| {
            let l = LinearOrder::from_greatest_first(&seq).unwrap();
            g.vertices()
                .map(|u| {
                    let d_plus = g.neighbors(u).iter().filter(|&&w| l.less(w, u)).count();
                    d_plus + common::oracle_m(g, &l, u, mode)
                })
                .max()
                .unwrap_or(0)
        })
        .min()
        .unwrap()
}

fn exact(g: &Graph, mode: MatchMode) -> usize {
    rank_graph_exact(g, mode, DEFAULT_EXACT_CAP).unwrap().0
}

#[test]
fn c4_rank_in_both_modes() {
    let g = cycle(4).unwrap();
    for mode in [MatchMode::Permissive, MatchMode::Disjoint] {
        assert_eq!(exact(&g, mode), 3);
        assert_eq!(oracle_rank(&g, mode), 3);
    }
}

#[test]
fn p4_separates_the_modes() {
    let g = path(4);
    assert_eq!(exact(&g, MatchMode::Permissive), 3);
    assert_eq!(exact(&g, MatchMode::Disjoint), 2);
    assert_eq!(oracle_rank(&g, MatchMode::Permissive), 3);
    assert_eq!(oracle_rank(&g, MatchMode::Disjoint), 2);
}

#[test]
fn k4_rank() {
    let g = complete(4);
    assert_eq!(exact(&g, MatchMode::Permissive), 4);
    assert_eq!(oracle_rank(&g, MatchMode::Disjoint), 4);
}

// P3 as x=0, y=1, z=2 with z < x < y.
fn p3() -> (Graph, LinearOrder) {
    (path(3), LinearOrder::from_greatest_first(&[1, 0, 2]).unwrap())
}

#[test]
fn p3_activation_play() {
    let (g, l) = p3();
    let t = play(&g, &mut ActivationAlice::new(&g, &l), &mut MaxMarkedNeighborsBob).unwrap();
    assert_eq!(t.sequence(), vec![1, 0, 2]);
    assert_eq!(t.score, 2);
}

#[test]
fn p3_activation_best_response() {
    let (g, l) = p3();
    let value = best_response_bob(&g, &ActivationAlice::new(&g, &l), &response_options()).unwrap();
    assert_eq!(value, 2);
    assert!(value <= 4);
}

#[test]
fn small_game_values() {
    let opts = SolverOptions::default();
    for (g, v) in [(path(2), 2), (path(3), 2), (cycle(4).unwrap(), 3), (path(4), 3), (complete(4), 4)] {
        assert_eq!(game_coloring_number(&g, &opts).unwrap().value, v);
        assert_eq!(brute_force_value(&g).unwrap(), v);
    }
}

#[test]
fn g2_has_58_vertices() {
    let c = lower_bound_graph(2).unwrap();
    assert_eq!(c.graph.n(), 58);
    assert_eq!(c.graph.m(), 64);
}
