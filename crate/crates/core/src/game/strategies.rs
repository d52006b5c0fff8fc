use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{GameState, Strategy};
use crate::constructions::{ConstructionGraph, VertexClass};
use crate::graph::Graph;
use crate::order::LinearOrder;

/// Marks the unmarked vertex with the smallest id.
#[derive(Debug, Clone, Copy, Default)]
pub struct LowestId;

impl Strategy for LowestId {
    fn name(&self) -> String {
        "lowest-id".into()
    }

    fn choose(&mut self, state: &GameState<'_>) -> Option<usize> {
        state.unmarked().next()
    }

    fn fork(&self) -> Option<Box<dyn Strategy>> {
        Some(Box::new(*self))
    }
}

/// Marks the L-greatest unmarked vertex.
#[derive(Debug, Clone)]
pub struct GreedyOrder {
    greatest_first: Vec<usize>,
}

impl GreedyOrder {
    pub fn new(order: &LinearOrder) -> Self {
        GreedyOrder {
            greatest_first: order.greatest_first(),
        }
    }
}

impl Strategy for GreedyOrder {
    fn name(&self) -> String {
        "greedy-order".into()
    }

    fn choose(&mut self, state: &GameState<'_>) -> Option<usize> {
        self.greatest_first.iter().copied().find(|&v| !state.is_marked(v))
    }

    fn fork(&self) -> Option<Box<dyn Strategy>> {
        Some(Box::new(self.clone()))
    }
}

/// Uniformly random unmarked vertex from a seeded ChaCha stream.
#[derive(Debug, Clone)]
pub struct RandomStrategy {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomStrategy {
    pub fn new(seed: u64) -> Self {
        RandomStrategy {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Strategy for RandomStrategy {
    fn name(&self) -> String {
        format!("random({})", self.seed)
    }

    fn choose(&mut self, state: &GameState<'_>) -> Option<usize> {
        let free: Vec<usize> = state.unmarked().collect();
        if free.is_empty() {
            return None;
        }
        Some(free[self.rng.gen_range(0..free.len())])
    }

    fn fork(&self) -> Option<Box<dyn Strategy>> {
        Some(Box::new(self.clone()))
    }

    fn memo_key(&self, _state: &GameState<'_>) -> Vec<u64> {
        let pos = self.rng.get_word_pos();
        vec![pos as u64, (pos >> 64) as u64]
    }
}

/// Marks an unmarked vertex with the most marked neighbours, smallest id on
/// ties.
#[derive(Debug, Clone, Copy, Default)]
pub struct MaxMarkedNeighborsBob;

impl Strategy for MaxMarkedNeighborsBob {
    fn name(&self) -> String {
        "max-marked-neighbors".into()
    }

    fn choose(&mut self, state: &GameState<'_>) -> Option<usize> {
        state
            .unmarked()
            .max_by_key(|&v| (state.marked_neighbors(v), std::cmp::Reverse(v)))
    }

    fn fork(&self) -> Option<Box<dyn Strategy>> {
        Some(Box::new(*self))
    }
}

/// Activation strategy for Alice over a fixed linear order.
///
/// Opening: mark the L-greatest vertex. After Bob marks `b`, walk from
/// `x = b` to the L-greatest unmarked out-neighbour `y` of `x`: an inactive
/// `y` is activated and the walk continues from it; an active `y` is marked.
/// When `x` has no unmarked out-neighbour, Alice marks `x` if it is unmarked
/// and otherwise the L-greatest unmarked vertex. Every vertex Alice marks is
/// active.
#[derive(Debug, Clone)]
pub struct ActivationAlice {
    greatest_first: Vec<usize>,
    /// Out-neighbours (L-smaller), L-greatest first.
    out: Vec<Vec<usize>>,
    active: Vec<bool>,
    last_walk: Vec<usize>,
}

impl ActivationAlice {
    /// # Panics
    /// If `order` does not cover `g`.
    pub fn new(g: &Graph, order: &LinearOrder) -> Self {
        order.check_covers(g).expect("order must cover the graph");
        let out = g
            .vertices()
            .map(|u| {
                let mut list: Vec<usize> =
                    g.neighbors(u).iter().copied().filter(|&w| order.less(w, u)).collect();
                list.sort_unstable_by_key(|&w| std::cmp::Reverse(order.position(w)));
                list
            })
            .collect();
        ActivationAlice {
            greatest_first: order.greatest_first(),
            out,
            active: vec![false; g.n()],
            last_walk: Vec::new(),
        }
    }

    pub fn is_active(&self, v: usize) -> bool {
        self.active[v]
    }

    /// Vertices visited by the most recent walk, starting with Bob's move.
    pub fn last_walk(&self) -> &[usize] {
        &self.last_walk
    }

    fn greatest_unmarked(&self, state: &GameState<'_>) -> Option<usize> {
        self.greatest_first.iter().copied().find(|&v| !state.is_marked(v))
    }
}

impl Strategy for ActivationAlice {
    fn name(&self) -> String {
        "activation".into()
    }

    fn choose(&mut self, state: &GameState<'_>) -> Option<usize> {
        self.last_walk.clear();
        let Some(b) = state.last_move() else {
            let v = self.greatest_unmarked(state)?;
            self.active[v] = true;
            return Some(v);
        };
        let mut x = b;
        self.last_walk.push(x);
        loop {
            let next = self.out[x].iter().copied().find(|&y| !state.is_marked(y));
            match next {
                None => {
                    let v = if state.is_marked(x) {
                        self.greatest_unmarked(state)?
                    } else {
                        x
                    };
                    self.active[v] = true;
                    return Some(v);
                }
                Some(y) if self.active[y] => {
                    self.last_walk.push(y);
                    return Some(y);
                }
                Some(y) => {
                    self.active[y] = true;
                    self.last_walk.push(y);
                    x = y;
                }
            }
        }
    }

    fn fork(&self) -> Option<Box<dyn Strategy>> {
        Some(Box::new(self.clone()))
    }

    fn memo_key(&self, state: &GameState<'_>) -> Vec<u64> {
        let n = self.active.len();
        let mut words = vec![0u64; n.div_ceil(64)];
        for v in 0..n {
            if self.active[v] && !state.is_marked(v) {
                words[v / 64] |= 1 << (v % 64);
            }
        }
        words
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    /// Some vertex of `B ∪ V_O` is unmarked.
    MarkOuter,
    /// Some unmarked interior vertex still has an unmarked pendant.
    MarkPendants,
    Fallback,
}

/// Bob's lower-bound strategy on `G_n` (optionally with an extra cycle,
/// which is ignored until the fallback phase).
///
/// Phase 1 marks the smallest-id unmarked vertex of `B ∪ V_O`. Phase 2 marks
/// the pendant of the smallest-id unmarked interior vertex whose pendant is
/// unmarked. Afterwards Bob marks the smallest-id unmarked vertex.
#[derive(Debug, Clone)]
pub struct Theorem3Bob {
    outer: Vec<usize>,
    interior: Vec<usize>,
    pendant_of: Vec<Option<usize>>,
}

impl Theorem3Bob {
    pub fn new(c: &ConstructionGraph) -> Self {
        let outer = (0..c.graph.n())
            .filter(|&v| {
                matches!(
                    c.class_of[v],
                    VertexClass::Subdivision | VertexClass::HexBoundary
                )
            })
            .collect();
        Theorem3Bob {
            outer,
            interior: c.class_members(VertexClass::HexInterior),
            pendant_of: c.pendant_of.clone(),
        }
    }

    pub fn phase(&self, state: &GameState<'_>) -> Phase {
        if self.outer.iter().any(|&v| !state.is_marked(v)) {
            Phase::MarkOuter
        } else if self.pendant_target(state).is_some() {
            Phase::MarkPendants
        } else {
            Phase::Fallback
        }
    }

    fn pendant_target(&self, state: &GameState<'_>) -> Option<usize> {
        self.interior.iter().find_map(|&v| {
            let a = self.pendant_of[v]?;
            (!state.is_marked(v) && !state.is_marked(a)).then_some(a)
        })
    }
}

impl Strategy for Theorem3Bob {
    fn name(&self) -> String {
        "theorem3".into()
    }

    fn choose(&mut self, state: &GameState<'_>) -> Option<usize> {
        if let Some(v) = self.outer.iter().copied().find(|&v| !state.is_marked(v)) {
            return Some(v);
        }
        if let Some(a) = self.pendant_target(state) {
            return Some(a);
        }
        state.unmarked().next()
    }

    fn fork(&self) -> Option<Box<dyn Strategy>> {
        Some(Box::new(self.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::lower_bound_graph;
    use crate::game::{play, Player};

    fn p3() -> (Graph, LinearOrder) {
        // x=0 — y=1 — z=2, z <_L x <_L y
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        (g, LinearOrder::from_greatest_first(&[1, 0, 2]).unwrap())
    }

    struct Scripted(Vec<usize>);
    impl Strategy for Scripted {
        fn name(&self) -> String {
            "scripted".into()
        }
        fn choose(&mut self, _: &GameState<'_>) -> Option<usize> {
            if self.0.is_empty() {
                None
            } else {
                Some(self.0.remove(0))
            }
        }
    }

    #[test]
    fn activation_on_p3() {
        let (g, l) = p3();
        let mut alice = ActivationAlice::new(&g, &l);
        let mut bob = Scripted(vec![0]);
        let t = play(&g, &mut alice, &mut bob).unwrap();
        assert_eq!(t.sequence(), vec![1, 0, 2]);
        assert_eq!(t.score, 2);
    }

    #[test]
    fn activation_on_k2() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let l = LinearOrder::identity(2);
        let mut alice = ActivationAlice::new(&g, &l);
        let t = play(&g, &mut alice, &mut LowestId).unwrap();
        assert_eq!(t.sequence(), vec![1, 0]);
        assert_eq!(t.score, 2);
    }

    #[test]
    fn activation_walk_descends() {
        let g = crate::generators::random_gnp(30, 0.2, 11);
        let l = LinearOrder::from_greatest_first(&g.smallest_last_order().0).unwrap();
        let mut alice = ActivationAlice::new(&g, &l);
        let mut bob = RandomStrategy::new(5);
        let mut state = GameState::new(&g);
        while !state.is_complete() {
            let v = match state.to_move() {
                Player::Alice => {
                    let v = alice.choose(&state).unwrap();
                    let walk = alice.last_walk();
                    for pair in walk.windows(2) {
                        assert!(l.less(pair[1], pair[0]));
                    }
                    assert!(alice.is_active(v));
                    v
                }
                Player::Bob => bob.choose(&state).unwrap(),
            };
            state.mark(v);
        }
    }

    #[test]
    fn greedy_marks_greatest_first() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let mut greedy = GreedyOrder::new(&LinearOrder::identity(2));
        assert_eq!(greedy.choose(&GameState::new(&g)), Some(1));
    }

    #[test]
    fn random_is_reproducible() {
        let g = crate::generators::grid(4, 4);
        let t1 = play(&g, &mut RandomStrategy::new(7), &mut RandomStrategy::new(8)).unwrap();
        let t2 = play(&g, &mut RandomStrategy::new(7), &mut RandomStrategy::new(8)).unwrap();
        assert_eq!(t1, t2);
    }

    #[test]
    fn max_marked_neighbors_ties_by_id() {
        let (g, _) = p3();
        let mut s = GameState::new(&g);
        s.mark(1);
        assert_eq!(MaxMarkedNeighborsBob.choose(&s), Some(0));
    }

    #[test]
    fn theorem3_phases_on_g2() {
        let c = lower_bound_graph(2).unwrap();
        let mut bob = Theorem3Bob::new(&c);
        let mut s = GameState::new(&c.graph);
        assert_eq!(bob.phase(&s), Phase::MarkOuter);
        let first = bob.choose(&s).unwrap();
        assert!(matches!(
            c.class_of[first],
            VertexClass::HexBoundary | VertexClass::Subdivision
        ));
        for v in bob.outer.clone() {
            s.mark(v);
        }
        assert_eq!(bob.phase(&s), Phase::MarkPendants);
        let a = bob.choose(&s).unwrap();
        assert_eq!(c.class_of[a], VertexClass::Pendant);
    }

    #[test]
    fn g1_greedy_alice_scores_at_most_four() {
        let c = lower_bound_graph(1).unwrap();
        let (l, _) = crate::construct::construct_order_girth7(&c.graph, Default::default()).unwrap();
        let t = play(&c.graph, &mut GreedyOrder::new(&l), &mut Theorem3Bob::new(&c)).unwrap();
        assert!(t.score <= 4);
    }
}
