use misere_core::solver::{Budget, Solver};
use misere_core::{strategy_move, GameState, StrategyName};

/// Label for moves that came from the exhaustive solver.
pub const SOLVER_LABEL: &str = "solver";
/// Label for moves chosen without any guarantee.
pub const HEURISTIC_LABEL: &str = "heuristic";

/// Move provider: a named strategy when it guarantees something for the
/// side to move, then the solver, then the lowest non-connecting column.
#[derive(Debug, Clone, Copy)]
pub struct Engine {
    pub strategy: StrategyName,
    pub solver: Solver,
    pub budget: Budget,
}

impl Engine {
    pub fn new(strategy: StrategyName, solver: Solver, budget: Budget) -> Self {
        Engine {
            strategy,
            solver,
            budget,
        }
    }

    /// Column and the label of whatever produced it. `None` when the game is
    /// over.
    pub fn choose(&self, state: &GameState) -> Option<(usize, String)> {
        if state.is_over() {
            return None;
        }
        let seat = state.to_move();
        if let Some(kind) = self.strategy.resolve(&state.spec(), seat) {
            if let Ok(col) = strategy_move(kind, state) {
                return Some((col, StrategyName::from(kind.tag).to_string()));
            }
        }
        if let Ok(col) = self.solver.best_move(state, self.budget) {
            return Some((col, SOLVER_LABEL.to_string()));
        }
        let moves = state.legal_moves();
        let col = moves
            .iter()
            .copied()
            .find(|&c| !state.would_connect(c, seat))
            .or_else(|| moves.first().copied())?;
        Some((col, HEURISTIC_LABEL.to_string()))
    }
}
