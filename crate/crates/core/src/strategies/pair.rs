//! Pair strategy for single-row boards with `k >= 3`.
//!
//! Columns are grouped left to right into pairs `(0,1), (2,3), ...`; with odd
//! width the rightmost column is a singleton. The strategist answers a
//! half-filled pair by taking its other half, and otherwise plays the
//! rightmost open cell. Either seat ends on a board where every pair holds one
//! piece of each player, so no run is longer than two.

use super::row::Row;
use super::StrategyError;
use crate::board::Player;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairLabeling {
    width: usize,
}

impl PairLabeling {
    pub fn new(width: usize) -> Self {
        PairLabeling { width }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn pair_count(&self) -> usize {
        self.width / 2
    }

    pub fn pair_of(&self, col: usize) -> Option<usize> {
        (col < 2 * self.pair_count()).then_some(col / 2)
    }

    pub fn partner(&self, col: usize) -> Option<usize> {
        self.pair_of(col).map(|_| col ^ 1)
    }

    pub fn singleton(&self) -> Option<usize> {
        (self.width % 2 == 1).then_some(self.width - 1)
    }

    pub fn pair_cells(&self, pair: usize) -> (usize, usize) {
        (2 * pair, 2 * pair + 1)
    }

    /// Every pair holds one piece of each player.
    pub fn is_balanced(&self, row: &Row) -> bool {
        (0..self.pair_count()).all(|p| {
            let (a, b) = self.pair_cells(p);
            matches!((row.get(a), row.get(b)), (Some(x), Some(y)) if x != y)
        })
    }

    /// Pairs holding exactly one piece of `owner` and one open cell.
    pub fn half_filled_by(&self, row: &Row, owner: Player) -> Vec<usize> {
        (0..self.pair_count())
            .filter(|&p| {
                let (a, b) = self.pair_cells(p);
                matches!(
                    (row.get(a), row.get(b)),
                    (Some(x), None) | (None, Some(x)) if x == owner
                )
            })
            .collect()
    }
}

/// The strategist's move on `row`. Take-other wins over rightmost; among
/// several half-filled pairs the leftmost is answered.
pub fn pair_move(row: &Row, labeling: &PairLabeling, strategist: Player) -> Result<usize, StrategyError> {
    debug_assert_eq!(row.width(), labeling.width());
    if let Some(&pair) = labeling.half_filled_by(row, strategist.opponent()).first() {
        let (a, b) = labeling.pair_cells(pair);
        return Ok(if row.is_open(a) { a } else { b });
    }
    row.open_cells().last().ok_or(StrategyError::BoardFull)
}
