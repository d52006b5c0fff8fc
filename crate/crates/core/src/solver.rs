//! Exact game values by game-tree search over marked-vertex bitsets.
//!
//! The future of a position depends only on its marked set: back degrees of
//! vertices still to be marked are counts of marked neighbours, and the
//! player to move is the parity of the marked count. The solver therefore
//! keys its tables on a `u64` bitmask.
//!
//! `game_coloring_number` decides "can Alice keep every `b(v) + 1 <= k`?" for
//! increasing `k`; the first `k` that holds is the value.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::SolveError;
use crate::game::{GameState, Player, Strategy};
use crate::graph::Graph;

pub const DEFAULT_SOLVE_LIMIT: usize = 20;
pub const DEFAULT_RESPONSE_LIMIT: usize = 24;
pub const BRUTE_FORCE_LIMIT: usize = 8;

#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    /// Maximum number of search nodes before giving up.
    pub budget: u64,
    /// Largest vertex count accepted.
    pub limit: usize,
    pub memo: bool,
    /// Score-range cutoffs and the degeneracy starting bound.
    pub pruning: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            budget: 50_000_000,
            limit: DEFAULT_SOLVE_LIMIT,
            memo: true,
            pruning: true,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveResult {
    pub value: usize,
    /// One optimal play from the empty position.
    pub principal_variation: Vec<usize>,
    pub nodes: u64,
    pub memo_hits: u64,
    pub memo_entries: usize,
}

struct Threshold {
    nbr: Vec<u64>,
    deg: Vec<usize>,
    full: u64,
    k: usize,
    opts: SolverOptions,
    memo: HashMap<u64, bool>,
    nodes: u64,
    hits: u64,
}

impl Threshold {
    fn back(&self, marked: u64, v: usize) -> usize {
        (self.nbr[v] & marked).count_ones() as usize
    }

    /// Can Alice keep every future `b(v) + 1 <= k` from `marked`?
    fn holds(&mut self, marked: u64) -> Result<bool, ()> {
        if marked == self.full {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.opts.budget {
            return Err(());
        }
        if self.opts.memo {
            if let Some(&r) = self.memo.get(&marked) {
                self.hits += 1;
                return Ok(r);
            }
        }
        let n = self.nbr.len();
        let free: Vec<usize> = (0..n).filter(|&v| marked & (1 << v) == 0).collect();
        let result = 'eval: {
            if self.opts.pruning {
                // b(v) never decreases, so a vertex already at k is lost
                if free.iter().any(|&v| self.back(marked, v) >= self.k) {
                    break 'eval false;
                }
                if free.iter().all(|&v| self.deg[v] < self.k) {
                    break 'eval true;
                }
            }
            let alice = marked.count_ones().is_multiple_of(2);
            let mut moves: Vec<usize> = free;
            if self.opts.pruning {
                if alice {
                    moves.sort_by_key(|&v| (self.back(marked, v), std::cmp::Reverse(self.deg[v])));
                } else {
                    moves.sort_by_key(|&v| std::cmp::Reverse(self.back(marked, v)));
                }
            }
            if alice {
                for v in moves {
                    if self.back(marked, v) < self.k && self.holds(marked | (1 << v))? {
                        break 'eval true;
                    }
                }
                false
            } else {
                for v in moves {
                    if self.back(marked, v) >= self.k || !self.holds(marked | (1 << v))? {
                        break 'eval false;
                    }
                }
                true
            }
        };
        if self.opts.memo {
            self.memo.insert(marked, result);
        }
        Ok(result)
    }
}

fn check_size(g: &Graph, limit: usize) -> Result<(), SolveError> {
    let limit = limit.min(64);
    if g.n() > limit {
        return Err(SolveError::TooLarge { n: g.n(), limit });
    }
    Ok(())
}

/// Exact game coloring number.
pub fn game_coloring_number(g: &Graph, opts: &SolverOptions) -> Result<SolveResult, SolveError> {
    check_size(g, opts.limit)?;
    let n = g.n();
    if n == 0 {
        return Ok(SolveResult {
            value: 0,
            principal_variation: Vec::new(),
            nodes: 0,
            memo_hits: 0,
            memo_entries: 0,
        });
    }
    let nbr: Vec<u64> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | (1 << w)))
        .collect();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let cap = g.max_degree() + 1;
    let start = if opts.pruning { g.degeneracy() + 1 } else { 1 };

    let mut nodes = 0;
    let mut hits = 0;
    let mut entries = 0;
    let mut solvers: HashMap<usize, Threshold> = HashMap::new();
    let mut value = cap;
    for k in start..=cap {
        if opts.pruning && k == cap {
            break;
        }
        let mut t = Threshold {
            nbr: nbr.clone(),
            deg: g.degrees(),
            full,
            k,
            opts: *opts,
            memo: HashMap::new(),
            nodes: 0,
            hits: 0,
        };
        let outcome = t.holds(0);
        nodes += t.nodes;
        hits += t.hits;
        entries += t.memo.len();
        match outcome {
            Err(()) => {
                return Err(SolveError::BudgetExceeded {
                    budget: opts.budget,
                    lower: k,
                    upper: cap,
                })
            }
            Ok(true) => {
                value = k;
                solvers.insert(k, t);
                break;
            }
            Ok(false) => {
                solvers.insert(k, t);
            }
        }
    }

    // Principal variation: Alice keeps the value; Bob keeps Alice from doing
    // better until the value has been realised.
    let mut pv = Vec::with_capacity(n);
    let mut marked = 0u64;
    let mut running = 0;
    let unlimited = SolverOptions {
        budget: u64::MAX,
        ..*opts
    };
    for t in solvers.values_mut() {
        t.opts = unlimited;
    }
    let mut query = |k: usize, m: u64| -> bool {
        if k == 0 {
            return false;
        }
        if k >= cap {
            return true;
        }
        let t = solvers.entry(k).or_insert_with(|| Threshold {
            nbr: nbr.clone(),
            deg: g.degrees(),
            full,
            k,
            opts: unlimited,
            memo: HashMap::new(),
            nodes: 0,
            hits: 0,
        });
        t.holds(m).unwrap_or(false)
    };
    let back = |m: u64, v: usize| (nbr[v] & m).count_ones() as usize;
    while marked != full {
        let alice = marked.count_ones().is_multiple_of(2);
        let free: Vec<usize> = (0..n).filter(|&v| marked & (1 << v) == 0).collect();
        let v = if alice {
            *free
                .iter()
                .find(|&&v| back(marked, v) < value && query(value, marked | (1 << v)))
                .expect("value is attainable")
        } else if running < value {
            *free
                .iter()
                .find(|&&v| back(marked, v) + 1 >= value || !query(value - 1, marked | (1 << v)))
                .expect("value is forced")
        } else {
            free[0]
        };
        running = running.max(back(marked, v) + 1);
        marked |= 1 << v;
        pv.push(v);
    }
    debug_assert_eq!(running, value);

    Ok(SolveResult {
        value,
        principal_variation: pv,
        nodes,
        memo_hits: hits,
        memo_entries: entries,
    })
}

/// Plain minimax without tables or cutoffs. Reference for the solver.
pub fn brute_force_value(g: &Graph) -> Result<usize, SolveError> {
    if g.n() > BRUTE_FORCE_LIMIT {
        return Err(SolveError::TooLarge {
            n: g.n(),
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    fn rec(g: &Graph, marked: &mut Vec<bool>, depth: usize, running: usize) -> usize {
        if depth == g.n() {
            return running;
        }
        let alice = depth.is_multiple_of(2);
        let mut best = if alice { usize::MAX } else { 0 };
        for v in 0..g.n() {
            if marked[v] {
                continue;
            }
            let b = g.neighbors(v).iter().filter(|&&w| marked[w]).count();
            marked[v] = true;
            let val = rec(g, marked, depth + 1, running.max(b + 1));
            marked[v] = false;
            best = if alice { best.min(val) } else { best.max(val) };
        }
        best
    }
    Ok(rec(g, &mut vec![false; g.n()], 0, 0))
}

/// Largest future `b(v) + 1` the branching player can force against the
/// fixed one.
struct Response<'g> {
    brancher: Player,
    memo: HashMap<(u64, Vec<u64>), usize>,
    opts: SolverOptions,
    nodes: u64,
    cap: usize,
    _g: std::marker::PhantomData<&'g ()>,
}

impl Response<'_> {
    fn floor(state: &GameState<'_>) -> usize {
        state
            .unmarked()
            .map(|v| state.marked_neighbors(v) + 1)
            .max()
            .unwrap_or(0)
    }

    fn search(&mut self, state: &mut GameState<'_>, fixed: &dyn Strategy) -> Result<usize, SolveError> {
        if state.is_complete() {
            return Ok(0);
        }
        self.nodes += 1;
        if self.nodes > self.opts.budget {
            return Err(SolveError::BudgetExceeded {
                budget: self.opts.budget,
                lower: 0,
                upper: self.cap,
            });
        }
        let player = state.to_move();
        if player != self.brancher {
            let mut f = fixed
                .fork()
                .ok_or_else(|| SolveError::NotForkable(fixed.name()))?;
            let Some(v) = f.choose(state) else {
                return Err(SolveError::NotForkable(fixed.name()));
            };
            if let Err(reason) = state.legality(v) {
                return Err(crate::error::GameError::StrategyFault {
                    player,
                    strategy: f.name(),
                    vertex: v,
                    reason,
                }
                .into());
            }
            let b = state.mark(v);
            let rest = self.search(state, f.as_ref());
            state.unmark_last();
            return Ok((b + 1).max(rest?));
        }

        let key = (state.mask(), fixed.memo_key(state));
        if self.opts.memo {
            if let Some(&v) = self.memo.get(&key) {
                return Ok(v);
            }
        }
        let maximize = self.brancher == Player::Bob;
        let floor = Self::floor(state);
        let mut moves: Vec<usize> = state.unmarked().collect();
        if self.opts.pruning {
            // Bob wants crowded vertices, Alice sparse ones
            moves.sort_by_key(|&v| {
                let k = state.marked_neighbors(v) as i64;
                if maximize {
                    -k
                } else {
                    k
                }
            });
        }
        let mut best = if maximize { 0 } else { usize::MAX };
        for v in moves {
            let b = state.mark(v);
            let rest = self.search(state, fixed);
            state.unmark_last();
            let val = (b + 1).max(rest?);
            if maximize {
                best = best.max(val);
                if self.opts.pruning && best >= self.cap {
                    break;
                }
            } else {
                best = best.min(val);
                if self.opts.pruning && best <= floor {
                    break;
                }
            }
        }
        if self.opts.memo {
            self.memo.insert(key, best);
        }
        Ok(best)
    }
}

fn best_response(
    g: &Graph,
    fixed: &dyn Strategy,
    brancher: Player,
    opts: &SolverOptions,
) -> Result<usize, SolveError> {
    check_size(g, opts.limit)?;
    fixed.fork().ok_or_else(|| SolveError::NotForkable(fixed.name()))?;
    let mut r = Response {
        brancher,
        memo: HashMap::new(),
        opts: *opts,
        nodes: 0,
        cap: g.max_degree() + 1,
        _g: std::marker::PhantomData,
    };
    let mut state = GameState::new(g);
    r.search(&mut state, fixed)
}

/// Highest score Bob can force against a fixed deterministic Alice.
pub fn best_response_bob(g: &Graph, alice: &dyn Strategy, opts: &SolverOptions) -> Result<usize, SolveError> {
    best_response(g, alice, Player::Bob, opts)
}

/// Lowest score Alice can force against a fixed deterministic Bob.
pub fn best_response_alice(g: &Graph, bob: &dyn Strategy, opts: &SolverOptions) -> Result<usize, SolveError> {
    best_response(g, bob, Player::Alice, opts)
}

/// Options for the best-response searches with the larger default limit.
pub fn response_options() -> SolverOptions {
    SolverOptions {
        limit: DEFAULT_RESPONSE_LIMIT,
        ..SolverOptions::default()
    }
}
