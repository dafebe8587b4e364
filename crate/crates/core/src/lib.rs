//! Misère Connect k: rules, closed-form outcomes, constructive strategies,
//! an exhaustive solver and a strategy verifier.
//!
//! The player who completes `k` in a row loses.

pub mod board;
pub mod oracle;
pub mod solver;
pub mod strategies;
pub mod verifier;

pub use board::{BoardSpec, Cell, Extent, GameError, GameState, Outcome, Player, Rules, Status};
pub use oracle::{outcome, ConfigOutcome, Rule};
pub use solver::{Budget, Solution, SolveError, Solver, SolverConfig};
pub use strategies::{auto_kind, strategy_move, Claim, StrategyError, StrategyKind, StrategyName, StrategyTag};
pub use verifier::{verify_strategy, VerificationReport, Verdict};
