//! The marking game.
//!
//! Alice and Bob alternately mark unmarked vertices, Alice first, until every
//! vertex is marked. The back degree `b(v)` of a vertex is the number of its
//! neighbours marked before it, and the score of a play is the maximum of
//! `b(v) + 1`.

mod interactive;
mod strategies;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GameError;
use crate::graph::Graph;

pub use interactive::InteractiveStrategy;
pub use strategies::{
    ActivationAlice, GreedyOrder, LowestId, MaxMarkedNeighborsBob, Phase, RandomStrategy,
    Theorem3Bob,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    Alice,
    Bob,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::Alice => Player::Bob,
            Player::Bob => Player::Alice,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Alice => "alice",
            Player::Bob => "bob",
        })
    }
}

/// Position of a game in progress. Supports `mark` / `unmark_last` so that
/// search can walk the tree without copying.
#[derive(Debug, Clone)]
pub struct GameState<'g> {
    graph: &'g Graph,
    sequence: Vec<usize>,
    marked: Vec<bool>,
    back_degree: Vec<Option<usize>>,
    marked_neighbors: Vec<usize>,
    /// Running score after each move.
    scores: Vec<usize>,
}

impl<'g> GameState<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        let n = graph.n();
        GameState {
            graph,
            sequence: Vec::with_capacity(n),
            marked: vec![false; n],
            back_degree: vec![None; n],
            marked_neighbors: vec![0; n],
            scores: Vec::with_capacity(n),
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn to_move(&self) -> Player {
        if self.sequence.len().is_multiple_of(2) {
            Player::Alice
        } else {
            Player::Bob
        }
    }

    pub fn is_marked(&self, v: usize) -> bool {
        self.marked[v]
    }

    pub fn marked_count(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_complete(&self) -> bool {
        self.sequence.len() == self.graph.n()
    }

    /// Vertices in marking order.
    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    pub fn last_move(&self) -> Option<usize> {
        self.sequence.last().copied()
    }

    /// `b(v)`, frozen when `v` was marked.
    pub fn back_degree(&self, v: usize) -> Option<usize> {
        self.back_degree[v]
    }

    pub fn back_degrees(&self) -> &[Option<usize>] {
        &self.back_degree
    }

    /// Number of currently marked neighbours of `v`.
    pub fn marked_neighbors(&self, v: usize) -> usize {
        self.marked_neighbors[v]
    }

    /// Maximum of `b(v) + 1` over marked vertices; 0 before the first move.
    pub fn score(&self) -> usize {
        self.scores.last().copied().unwrap_or(0)
    }

    pub fn unmarked(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.graph.n()).filter(move |&v| !self.marked[v])
    }

    /// Marked set as a bitmask; only meaningful for graphs with at most 64
    /// vertices.
    pub fn mask(&self) -> u64 {
        self.sequence.iter().fold(0u64, |m, &v| m | (1u64 << v))
    }

    /// Checks that `v` is a legal move.
    pub fn legality(&self, v: usize) -> Result<(), &'static str> {
        if v >= self.graph.n() {
            Err("not a vertex")
        } else if self.marked[v] {
            Err("already marked")
        } else {
            Ok(())
        }
    }

    /// Marks `v` for the player to move and returns `b(v)`.
    ///
    /// # Panics
    /// If `v` is not a legal move.
    pub fn mark(&mut self, v: usize) -> usize {
        if let Err(why) = self.legality(v) {
            panic!("illegal move {v}: {why}");
        }
        let b = self.marked_neighbors[v];
        self.marked[v] = true;
        self.back_degree[v] = Some(b);
        self.sequence.push(v);
        for &w in self.graph.neighbors(v) {
            self.marked_neighbors[w] += 1;
        }
        self.scores.push(self.score().max(b + 1));
        b
    }

    /// Undoes the most recent move.
    pub fn unmark_last(&mut self) -> Option<usize> {
        let v = self.sequence.pop()?;
        self.marked[v] = false;
        self.back_degree[v] = None;
        for &w in self.graph.neighbors(v) {
            self.marked_neighbors[w] -= 1;
        }
        self.scores.pop();
        Some(v)
    }
}

/// A player's decision rule.
///
/// `choose` is called exactly once per turn of the owning player and must
/// return an unmarked vertex, or `None` to abandon the game. Strategies that
/// can be copied mid-game implement `fork`, which the best-response searches
/// require.
pub trait Strategy {
    fn name(&self) -> String;

    fn choose(&mut self, state: &GameState<'_>) -> Option<usize>;

    fn fork(&self) -> Option<Box<dyn Strategy>> {
        None
    }

    /// Private state that, together with the marked set, determines all
    /// future choices. Stateless strategies keep the default.
    fn memo_key(&self, _state: &GameState<'_>) -> Vec<u64> {
        Vec::new()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub index: usize,
    pub player: Player,
    pub vertex: usize,
    pub b: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub moves: Vec<MoveRecord>,
    pub score: usize,
    /// Per-vertex back degree; `None` for vertices left unmarked.
    pub back_degrees: Vec<Option<usize>>,
    /// `false` if a player abandoned the game.
    pub complete: bool,
}

impl Transcript {
    pub fn sequence(&self) -> Vec<usize> {
        self.moves.iter().map(|m| m.vertex).collect()
    }
}

/// Plays a full game. Alice moves first.
pub fn play(g: &Graph, alice: &mut dyn Strategy, bob: &mut dyn Strategy) -> Result<Transcript, GameError> {
    if g.is_empty() {
        return Err(GameError::EmptyGraph);
    }
    let mut state = GameState::new(g);
    let mut moves = Vec::with_capacity(g.n());
    let mut complete = true;
    while !state.is_complete() {
        let player = state.to_move();
        let strategy: &mut dyn Strategy = match player {
            Player::Alice => &mut *alice,
            Player::Bob => &mut *bob,
        };
        let Some(v) = strategy.choose(&state) else {
            complete = false;
            break;
        };
        if let Err(reason) = state.legality(v) {
            return Err(GameError::StrategyFault {
                player,
                strategy: strategy.name(),
                vertex: v,
                reason,
            });
        }
        let b = state.mark(v);
        moves.push(MoveRecord {
            index: moves.len(),
            player,
            vertex: v,
            b,
        });
    }
    Ok(Transcript {
        moves,
        score: state.score(),
        back_degrees: state.back_degrees().to_vec(),
        complete,
    })
}

/// Recomputes the score of a marking sequence from scratch.
pub fn replay_score(g: &Graph, sequence: &[usize]) -> Result<usize, GameError> {
    let mut position = vec![usize::MAX; g.n()];
    for (i, &v) in sequence.iter().enumerate() {
        if v >= g.n() || position[v] != usize::MAX {
            return Err(GameError::StrategyFault {
                player: if i % 2 == 0 { Player::Alice } else { Player::Bob },
                strategy: "replay".into(),
                vertex: v,
                reason: "repeated or out of range",
            });
        }
        position[v] = i;
    }
    Ok(sequence
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .filter(|&&w| position[w] < position[v])
                .count()
                + 1
        })
        .max()
        .unwrap_or(0))
}
