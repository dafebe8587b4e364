//! Exhaustive misère solver.
//!
//! Negamax with alpha-beta over the values {-1, 0, 1} (mover's view), a
//! shared exact-value transposition table, mirror folding and center-out move
//! ordering. Positions live in two `u64` planes (see [`packed`]).

pub mod cache;
pub mod packed;
pub mod tt;

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::board::{GameError, GameState, Outcome, Rules, Status};
use packed::Geometry;
use tt::TranspositionTable;

pub use cache::ValueCache;
pub use packed::{decode, encode, PackedPosition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },
    #[error("board too large for the solver ({cells} cells): {limit}")]
    TooLarge { cells: usize, limit: String },
    #[error("position is terminal; there is no move to choose")]
    Terminal,
    #[error("the solver only handles standard rules")]
    UnsupportedRules,
    #[error(transparent)]
    Game(#[from] GameError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes: Some(max_nodes),
            max_time: None,
        }
    }

    pub fn time(max_time: Duration) -> Self {
        Budget {
            max_nodes: None,
            max_time: Some(max_time),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Largest `w * h` accepted.
    pub max_cells: usize,
    /// Fold left-right mirror images into one table entry.
    pub symmetry: bool,
    /// Table size as a power of two; derived from the board when `None`.
    pub tt_log2: Option<u32>,
}

pub const DEFAULT_MAX_CELLS: usize = 20;

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_cells: DEFAULT_MAX_CELLS,
            symmetry: true,
            tt_log2: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub outcome: Outcome,
    /// Lowest column achieving the value; `None` on a terminal position.
    pub best_move: Option<usize>,
    pub nodes: u64,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Solver {
    pub config: SolverConfig,
}

impl Solver {
    pub fn new(config: SolverConfig) -> Self {
        Solver { config }
    }

    /// Raises the cell ceiling, keeping the other settings.
    pub fn with_max_cells(max_cells: usize) -> Self {
        Solver {
            config: SolverConfig {
                max_cells,
                ..SolverConfig::default()
            },
        }
    }

    pub fn solve(&self, state: &GameState, budget: Budget) -> Result<Solution, SolveError> {
        self.run(state, budget, false)
    }

    /// Same result as [`Solver::solve`], with root children searched in
    /// parallel over a shared table.
    pub fn solve_parallel(&self, state: &GameState, budget: Budget) -> Result<Solution, SolveError> {
        self.run(state, budget, true)
    }

    pub fn best_move(&self, state: &GameState, budget: Budget) -> Result<usize, SolveError> {
        self.solve(state, budget)?.best_move.ok_or(SolveError::Terminal)
    }

    fn run(&self, state: &GameState, budget: Budget, parallel: bool) -> Result<Solution, SolveError> {
        if state.rules() != Rules::default() {
            return Err(SolveError::UnsupportedRules);
        }
        let cells = state.width() * state.height();
        if cells > self.config.max_cells {
            return Err(SolveError::TooLarge {
                cells,
                limit: format!("ceiling is {} cells", self.config.max_cells),
            });
        }
        let geometry = Geometry::new(state.width(), state.height())?;
        if let Status::Ended(outcome) = state.status() {
            return Ok(Solution {
                outcome,
                best_move: None,
                nodes: 0,
            });
        }
        let log2 = self
            .config
            .tt_log2
            .unwrap_or_else(|| (cells as u32 + 6).clamp(10, 23));
        let search = Search::new(geometry, state.k(), self.config.symmetry, log2, budget);
        let root = Node::from_state(state)?;
        let mover = state.to_move();

        let children: Vec<(usize, u64)> = search
            .order
            .iter()
            .copied()
            .filter(|&c| root.can_play(&geometry, c))
            .map(|c| (c, root.move_bit(&geometry, c)))
            .collect();
        let child_value = |&(col, bit): &(usize, u64)| -> Result<(usize, i8), SolveError> {
            Ok((col, search.child_value(root, bit)?))
        };
        let mut values: Vec<(usize, i8)> = if parallel {
            children.par_iter().map(child_value).collect::<Result<_, _>>()?
        } else {
            children.iter().map(child_value).collect::<Result<_, _>>()?
        };
        values.sort_unstable();
        let value = values.iter().map(|&(_, v)| v).max().expect("non-terminal position has a move");
        let best = values.iter().find(|&&(_, v)| v == value).map(|&(c, _)| c);
        Ok(Solution {
            outcome: Outcome::from_value(value, mover),
            best_move: best,
            nodes: search.nodes.load(Ordering::Relaxed),
        })
    }
}

/// Packed search node: `cur` holds the mover's stones, `mask` all stones.
#[derive(Debug, Clone, Copy)]
struct Node {
    cur: u64,
    mask: u64,
    moves: usize,
}

impl Node {
    fn from_state(state: &GameState) -> Result<Node, SolveError> {
        let p = encode(state)?;
        let (mine, theirs) = match state.to_move() {
            crate::board::Player::P1 => (p.p1, p.p2),
            crate::board::Player::P2 => (p.p2, p.p1),
        };
        Ok(Node {
            cur: mine,
            mask: mine | theirs,
            moves: state.move_count(),
        })
    }

    #[inline]
    fn can_play(&self, g: &Geometry, col: usize) -> bool {
        self.mask & g.top_cell(col) == 0
    }

    #[inline]
    fn move_bit(&self, g: &Geometry, col: usize) -> u64 {
        (self.mask + g.bottom_cell(col)) & g.column_mask(col)
    }

    #[inline]
    fn play(&self, bit: u64) -> Node {
        Node {
            cur: self.cur ^ self.mask,
            mask: self.mask | bit,
            moves: self.moves + 1,
        }
    }
}

struct Search {
    g: Geometry,
    k: usize,
    cells: usize,
    symmetry: bool,
    order: Vec<usize>,
    tt: TranspositionTable,
    nodes: AtomicU64,
    max_nodes: u64,
    deadline: Option<Instant>,
    aborted: AtomicBool,
}

impl Search {
    fn new(g: Geometry, k: usize, symmetry: bool, tt_log2: u32, budget: Budget) -> Self {
        Search {
            g,
            k,
            cells: g.width * g.height,
            symmetry,
            order: center_out(g.width),
            tt: TranspositionTable::new(tt_log2),
            nodes: AtomicU64::new(0),
            max_nodes: budget.max_nodes.unwrap_or(u64::MAX),
            deadline: budget.max_time.map(|d| Instant::now() + d),
            aborted: AtomicBool::new(false),
        }
    }

    #[inline]
    fn tick(&self) -> Result<(), SolveError> {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let out_of_time = n & 1023 == 0 && self.deadline.is_some_and(|d| Instant::now() >= d);
        if n > self.max_nodes || out_of_time {
            self.aborted.store(true, Ordering::Relaxed);
        }
        if self.aborted.load(Ordering::Relaxed) {
            return Err(SolveError::BudgetExceeded { nodes: n });
        }
        Ok(())
    }

    #[inline]
    fn key(&self, node: &Node) -> u64 {
        let key = node.cur + node.mask + self.g.bottom;
        if self.symmetry {
            key.min(self.g.mirror_bits(key))
        } else {
            key
        }
    }

    /// Exact value for the mover of `parent` after playing `bit`.
    fn child_value(&self, parent: Node, bit: u64) -> Result<i8, SolveError> {
        if self.g.has_run(parent.cur | bit, self.k) {
            return Ok(-1);
        }
        if parent.moves + 1 == self.cells {
            return Ok(0);
        }
        Ok(-self.negamax(parent.play(bit), -1, 1)?)
    }

    /// Fail-soft negamax on a non-full, non-terminal node.
    fn negamax(&self, node: Node, mut alpha: i8, beta: i8) -> Result<i8, SolveError> {
        self.tick()?;
        let g = &self.g;

        let mut safe = [0u64; 64];
        let mut n_safe = 0;
        for &col in &self.order {
            if !node.can_play(g, col) {
                continue;
            }
            let bit = node.move_bit(g, col);
            if !g.has_run(node.cur | bit, self.k) {
                safe[n_safe] = bit;
                n_safe += 1;
            }
        }
        if n_safe == 0 {
            return Ok(-1);
        }
        if node.moves + 1 == self.cells {
            return Ok(0);
        }

        let key = self.key(&node);
        if let Some(v) = self.tt.get(key) {
            return Ok(v);
        }

        let alpha0 = alpha;
        let mut best = -2i8;
        for &bit in &safe[..n_safe] {
            let v = -self.negamax(node.play(bit), -beta, -alpha)?;
            if v > best {
                best = v;
                if v > alpha {
                    alpha = v;
                    if alpha >= beta {
                        break;
                    }
                }
            }
        }
        if best != 0 || (alpha0 < best && best < beta) {
            self.tt.insert(key, best);
        }
        Ok(best)
    }
}

fn center_out(width: usize) -> Vec<usize> {
    let mut cols: Vec<usize> = (0..width).collect();
    let twice_center = width as isize - 1;
    cols.sort_by_key(|&c| ((2 * c as isize - twice_center).abs(), c));
    cols
}
