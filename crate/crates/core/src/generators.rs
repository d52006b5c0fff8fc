//! Small graph families used as test corpora and CLI inputs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::new(n, edges).expect("generator emits simple graphs")
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    build(n, &edges)
}

/// Star with centre 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    build(leaves + 1, &edges)
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    build(n, &edges)
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in 0..b {
            edges.push((u, a + v));
        }
    }
    build(a + b, &edges)
}

/// `rows x cols` grid, vertex `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    build(rows * cols, &edges)
}

/// Wheel with hub 0 and a rim of `rim` vertices.
pub fn wheel(rim: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..rim {
        edges.push((0, 1 + i));
        edges.push((1 + i, 1 + (i + 1) % rim));
    }
    build(rim + 1, &edges)
}

/// Generalized Petersen graph GP(k, s): outer `k`-cycle, spokes, inner
/// star polygon with step `s`. GP(5,2) is Petersen, GP(10,2) the
/// dodecahedron, GP(k,1) the `k`-prism.
pub fn generalized_petersen(k: usize, s: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..k {
        edges.push((i, (i + 1) % k));
        edges.push((i, k + i));
        edges.push((k + i, k + (i + s) % k));
    }
    build(2 * k, &edges)
}

pub fn prism(k: usize) -> Graph {
    generalized_petersen(k, 1)
}

pub fn dodecahedron() -> Graph {
    generalized_petersen(10, 2)
}

/// The 3-cube.
pub fn cube() -> Graph {
    let mut edges = Vec::new();
    for v in 0..8usize {
        for bit in 0..3 {
            let w = v ^ (1 << bit);
            if v < w {
                edges.push((v, w));
            }
        }
    }
    build(8, &edges)
}

/// Caterpillar: spine path of `spine` vertices, each with `legs` leaves.
pub fn caterpillar(spine: usize, legs: usize) -> Graph {
    let mut edges: Vec<_> = (1..spine).map(|i| (i - 1, i)).collect();
    let mut next = spine;
    for s in 0..spine {
        for _ in 0..legs {
            edges.push((s, next));
            next += 1;
        }
    }
    build(next, &edges)
}

/// Uniform random labelled tree via a Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    if n <= 1 {
        return Graph::empty(n);
    }
    if n == 2 {
        return path(2);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &s in &seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in &seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    build(n, &edges)
}

/// Erdős–Rényi G(n, p) with a seeded generator.
pub fn random_gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    build(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Girth;

    #[test]
    fn family_shapes() {
        assert_eq!(path(4).m(), 3);
        assert_eq!(star(4).max_degree(), 4);
        assert_eq!(complete(5).m(), 10);
        assert_eq!(complete_bipartite(2, 3).m(), 6);
        assert_eq!(grid(3, 4).m(), 17);
        assert_eq!(wheel(5).m(), 10);
        assert_eq!(cube().girth(), Girth::Finite(4));
        assert_eq!(dodecahedron().girth(), Girth::Finite(5));
        assert_eq!(dodecahedron().m(), 30);
        assert_eq!(generalized_petersen(5, 2).girth(), Girth::Finite(5));
        assert_eq!(prism(5).girth(), Girth::Finite(4));
        assert_eq!(caterpillar(3, 2).n(), 9);
    }

    #[test]
    fn random_trees_are_trees() {
        for n in 1..12 {
            for seed in 0..5 {
                let t = random_tree(n, seed);
                assert_eq!(t.n(), n);
                assert_eq!(t.m(), n.saturating_sub(1));
                assert!(t.is_connected());
                assert_eq!(t.girth(), Girth::Infinite);
            }
        }
    }

    #[test]
    fn seeded_generators_repeat() {
        assert_eq!(random_gnp(10, 0.3, 7), random_gnp(10, 0.3, 7));
        assert_eq!(random_tree(9, 3), random_tree(9, 3));
    }
}
