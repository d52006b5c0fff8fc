use thiserror::Error;

use crate::game::Player;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("a cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("corrupt graph: {0}")]
    Corrupt(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("ring count must be at least 1, got {0}")]
    InvalidRings(usize),
    #[error("cycle length must be in 3..=8, got {0}")]
    CycleLength(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("order covers {got} vertices but the graph has {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("order is not a permutation: vertex {0} repeated or out of range")]
    NotPermutation(usize),
    #[error("exact rank enumerates n! orders; n = {n} exceeds the cap {cap} (use the girth-7 constructor instead)")]
    TooLarge { n: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    /// No unchosen vertex has auxiliary degree at most 3.
    #[error("stuck after choosing {chosen} vertices: minimum auxiliary degree among unchosen vertices is {min_degree}")]
    Stuck { chosen: usize, min_degree: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("cannot play on an empty graph")]
    EmptyGraph,
    #[error("strategy fault: {player} strategy '{strategy}' chose {vertex}, which is {reason}")]
    StrategyFault {
        player: Player,
        strategy: String,
        vertex: usize,
        reason: &'static str,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("node budget of {budget} exhausted; value lies in [{lower}, {upper}]")]
    BudgetExceeded {
        budget: u64,
        lower: usize,
        upper: usize,
    },
    #[error("graph has {n} vertices, above the limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("strategy '{0}' cannot be forked for search")]
    NotForkable(String),
    #[error(transparent)]
    Game(#[from] GameError),
}
