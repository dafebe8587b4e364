//! Take-even and its delayed form for odd heights.
//!
//! Take-even stacks on the opponent's last column, so on an even-height board
//! the strategist lands only on odd rows (0-based) and every reply is legal.
//! The delayed form treats row 0 of an odd-height board separately: row-0
//! moves are answered in row 0 by a single-row policy, and the rows above it
//! behave like an even-height board.

use super::k2::k2_move;
use super::pair::{pair_move, PairLabeling};
use super::row::Row;
use super::{not_applicable, StrategyError};
use crate::board::{GameState, Player};

pub fn take_even_move(state: &GameState) -> Result<usize, StrategyError> {
    let (w, h, k) = (state.width(), state.height(), state.k());
    if h % 2 != 0 || w < k {
        return Err(not_applicable("take-even needs even height and w >= k"));
    }
    if state.to_move() != Player::P2 {
        return Err(not_applicable("take-even is played by P2"));
    }
    let (col, _) = state
        .last_move()
        .ok_or_else(|| not_applicable("take-even needs the opponent's last move"))?;
    if !state.is_legal(col) {
        return Err(StrategyError::Stuck);
    }
    Ok(col)
}

/// Seat that wins with delayed take-even: P1 on odd widths when `k >= 3`,
/// P2 otherwise.
pub fn delayed_take_even_seat(width: usize, k: usize) -> Player {
    if k >= 3 && width % 2 == 1 {
        Player::P1
    } else {
        Player::P2
    }
}

pub fn delayed_take_even_move(state: &GameState, seat: Player) -> Result<usize, StrategyError> {
    let (w, h, k) = (state.width(), state.height(), state.k());
    if h % 2 == 0 || h < 3 || w < k {
        return Err(not_applicable("delayed take-even needs odd height >= 3 and w >= k"));
    }
    if state.to_move() != seat {
        return Err(not_applicable(format!("{seat} is not to move")));
    }
    let row0 = Row::new(state.row(0));
    let reply_in_row0 = |row: &Row| -> Result<usize, StrategyError> {
        if row.open_count() == 0 {
            return Err(StrategyError::Stuck);
        }
        if k >= 3 {
            pair_move(row, &PairLabeling::new(w), seat)
        } else {
            k2_move(row, seat)
        }
    };
    match state.last_move() {
        None if state.move_count() == 0 => {
            if seat == Player::P1 {
                reply_in_row0(&row0)
            } else {
                Err(not_applicable("P2 cannot open"))
            }
        }
        None => Err(not_applicable("delayed take-even needs the move history")),
        Some((_, 0)) => reply_in_row0(&row0),
        Some((col, _)) if state.is_legal(col) => Ok(col),
        Some(_) => Err(StrategyError::Stuck),
    }
}
