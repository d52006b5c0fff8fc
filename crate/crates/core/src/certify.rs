//! End-to-end certificates.
//!
//! The upper-bound certificate builds an ordering with the girth-7
//! constructor and checks its rank; `col_g <= 1 + r(L, G)` then bounds the
//! game coloring number. The lower-bound certificate checks the structure of
//! `G_n` (optionally `∪ C_k`) and plays Bob's forcing strategy against a suite
//! of Alices. Since `Δ(G_n) = 4`, a score of 5 in every playout is the largest
//! possible.

use serde::Serialize;

use crate::construct::{construct_order_girth7, ConstructOptions};
use crate::constructions::{class_counts, counting_inequality_holds, lower_bound_graph, with_cycle, ClassCounts, ConstructionGraph, VertexClass};
use crate::error::{ConstructError, ConstructionError, GameError};
use crate::game::{play, ActivationAlice, GreedyOrder, RandomStrategy, Strategy, Theorem3Bob, Transcript};
use crate::graph::{planar_girth_edge_bound, Girth, Graph};
use crate::order::LinearOrder;
use crate::rank::{verify_order, MatchMode, VertexRank};

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum UpperOutcome {
    Certified {
        order: Vec<usize>,
        r: usize,
        max_step_degree: usize,
        surgery_conflicts: usize,
    },
    Refuted {
        order: Vec<usize>,
        r: usize,
        argmax: Option<VertexRank>,
    },
    Stuck {
        chosen: usize,
        min_degree: usize,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct UpperCertificate {
    pub girth: Girth,
    pub euler_ok: bool,
    /// Girth at least 7 and the girth-7 edge bound holds.
    pub precondition_ok: bool,
    pub bound: usize,
    pub mode: MatchMode,
    pub outcome: UpperOutcome,
}

impl UpperCertificate {
    pub fn certified(&self) -> bool {
        matches!(self.outcome, UpperOutcome::Certified { .. })
    }

    pub fn order(&self) -> Option<LinearOrder> {
        match &self.outcome {
            UpperOutcome::Certified { order, .. } | UpperOutcome::Refuted { order, .. } => {
                LinearOrder::from_greatest_first(order).ok()
            }
            UpperOutcome::Stuck { .. } => None,
        }
    }
}

pub fn certify_upper(g: &Graph, bound: usize, mode: MatchMode) -> UpperCertificate {
    let girth = g.girth();
    let euler_ok = planar_girth_edge_bound(g, 7);
    let outcome = match construct_order_girth7(g, ConstructOptions::default()) {
        Err(ConstructError::Stuck { chosen, min_degree }) => UpperOutcome::Stuck { chosen, min_degree },
        Ok((order, trace)) => {
            let check = verify_order(g, &order, bound, mode).expect("order covers graph");
            if check.pass {
                UpperOutcome::Certified {
                    order: order.greatest_first(),
                    r: check.r_of_order,
                    max_step_degree: trace.max_step_degree(),
                    surgery_conflicts: trace.surgery_conflicts,
                }
            } else {
                UpperOutcome::Refuted {
                    order: order.greatest_first(),
                    r: check.r_of_order,
                    argmax: check.argmax,
                }
            }
        }
    };
    UpperCertificate {
        girth,
        euler_ok,
        precondition_ok: girth.at_least(7) && euler_ok,
        bound,
        mode,
        outcome,
    }
}

/// Alice strategies in the lower-bound suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "seed", rename_all = "snake_case")]
pub enum AliceKind {
    Greedy,
    Activation,
    Random(u64),
}

impl AliceKind {
    pub fn build(self, g: &Graph, order: &LinearOrder) -> Box<dyn Strategy> {
        match self {
            AliceKind::Greedy => Box::new(GreedyOrder::new(order)),
            AliceKind::Activation => Box::new(ActivationAlice::new(g, order)),
            AliceKind::Random(seed) => Box::new(RandomStrategy::new(seed)),
        }
    }
}

/// Greedy, activation, then `random_seeds` random Alices seeded
/// `base_seed, base_seed + 1, ...`.
pub fn alice_suite(random_seeds: usize, base_seed: u64) -> Vec<AliceKind> {
    let mut suite = vec![AliceKind::Greedy, AliceKind::Activation];
    suite.extend((0..random_seeds as u64).map(|i| AliceKind::Random(base_seed + i)));
    suite
}

#[derive(Debug, Clone, Serialize)]
pub struct Playout {
    pub alice: AliceKind,
    pub score: usize,
    /// Unmarked interior vertices right after the last vertex of `B ∪ V_O`
    /// was marked.
    pub interior_left_after_outer: usize,
    /// Kept only for playouts scoring below 5.
    pub transcript: Option<Transcript>,
}

/// Checked structure of a lower-bound instance plus its ordering.
#[derive(Debug, Clone)]
pub struct LowerSetup {
    pub construction: ConstructionGraph,
    pub order: LinearOrder,
    pub expected: ClassCounts,
    pub measured: ClassCounts,
    pub girth: Girth,
    pub max_degree: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum LowerError {
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("ordering constructor failed: {0}")]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Game(#[from] GameError),
}

pub fn prepare_lower(rings: usize, cycle: Option<usize>) -> Result<LowerSetup, LowerError> {
    let construction = match cycle {
        Some(k) => with_cycle(rings, k)?,
        None => lower_bound_graph(rings)?,
    };
    let (order, _) = construct_order_girth7(&construction.graph, ConstructOptions::default())?;
    Ok(LowerSetup {
        expected: class_counts(rings),
        measured: construction.measured_counts(),
        girth: construction.graph.girth(),
        max_degree: construction.graph.max_degree(),
        order,
        construction,
    })
}

pub fn run_playout(setup: &LowerSetup, alice: AliceKind) -> Result<Playout, GameError> {
    let c = &setup.construction;
    let mut a = alice.build(&c.graph, &setup.order);
    let mut bob = Theorem3Bob::new(c);
    let t = play(&c.graph, a.as_mut(), &mut bob)?;

    let is_outer = |v: usize| matches!(c.class_of[v], VertexClass::Subdivision | VertexClass::HexBoundary);
    let mut outer_left = c.class_of.iter().enumerate().filter(|&(v, _)| is_outer(v)).count();
    let mut interior_left = c.count(VertexClass::HexInterior);
    let mut after_outer = interior_left;
    for m in &t.moves {
        if c.class_of[m.vertex] == VertexClass::HexInterior {
            interior_left -= 1;
        }
        if is_outer(m.vertex) {
            outer_left -= 1;
            if outer_left == 0 {
                after_outer = interior_left;
            }
        }
    }
    Ok(Playout {
        alice,
        score: t.score,
        interior_left_after_outer: after_outer,
        transcript: (t.score < 5).then_some(t),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LowerCertificate {
    pub rings: usize,
    pub cycle_len: Option<usize>,
    pub expected_counts: ClassCounts,
    pub measured_counts: ClassCounts,
    pub girth: Girth,
    pub expected_girth: usize,
    pub max_degree: usize,
    pub counting_inequality: bool,
    pub playouts: Vec<Playout>,
    pub min_score: usize,
    pub certified: bool,
}

impl LowerCertificate {
    pub fn structure_ok(&self) -> bool {
        self.expected_counts == self.measured_counts
            && self.girth == Girth::Finite(self.expected_girth)
            && self.max_degree == 4
    }
}

pub fn finish_lower(setup: &LowerSetup, playouts: Vec<Playout>) -> LowerCertificate {
    let c = &setup.construction;
    let min_score = playouts.iter().map(|p| p.score).min().unwrap_or(0);
    let mut cert = LowerCertificate {
        rings: c.rings,
        cycle_len: c.cycle_len,
        expected_counts: setup.expected,
        measured_counts: setup.measured,
        girth: setup.girth,
        expected_girth: c.cycle_len.unwrap_or(8),
        max_degree: setup.max_degree,
        counting_inequality: counting_inequality_holds(c.rings),
        playouts,
        min_score,
        certified: false,
    };
    cert.certified = cert.structure_ok() && !cert.playouts.is_empty() && cert.playouts.iter().all(|p| p.score == 5);
    cert
}

/// Sequential lower-bound pipeline.
pub fn certify_lower(
    rings: usize,
    cycle: Option<usize>,
    suite: &[AliceKind],
) -> Result<LowerCertificate, LowerError> {
    let setup = prepare_lower(rings, cycle)?;
    let playouts = suite
        .iter()
        .map(|&a| run_playout(&setup, a))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(finish_lower(&setup, playouts))
}
