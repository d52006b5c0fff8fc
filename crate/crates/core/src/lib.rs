//! Marking game on graphs: elimination orderings with matching-based ranks,
//! hexagonal lower-bound constructions, playable strategies and exact search.

pub mod certify;
pub mod construct;
pub mod constructions;
pub mod error;
pub mod game;
pub mod generators;
pub mod graph;
pub mod io;
pub mod order;
pub mod rank;
pub mod solver;

pub use error::{ConstructError, ConstructionError, GameError, GraphError, OrderError, ParseError, SolveError};
pub use graph::{cycle, planar_girth_edge_bound, Girth, Graph};
pub use order::{LinearOrder, OrientedView};
pub use rank::MatchMode;
