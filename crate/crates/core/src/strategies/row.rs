use std::fmt;
use std::str::FromStr;

use crate::board::{cell_char, parse_cell, Cell, GameError, Player};

/// One row of cells, left to right. Used for single-row boards and for the
/// bottom row of taller ones.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Row(Vec<Cell>);

impl Row {
    pub fn new(cells: Vec<Cell>) -> Self {
        Row(cells)
    }

    pub fn empty(width: usize) -> Self {
        Row(vec![None; width])
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.0
    }

    pub fn get(&self, col: usize) -> Cell {
        self.0[col]
    }

    pub fn is_open(&self, col: usize) -> bool {
        col < self.0.len() && self.0[col].is_none()
    }

    pub fn open_cells(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.0.len()).filter(|&c| self.0[c].is_none())
    }

    pub fn open_count(&self) -> usize {
        self.0.iter().filter(|c| c.is_none()).count()
    }

    pub fn count(&self, player: Player) -> usize {
        self.0.iter().filter(|c| **c == Some(player)).count()
    }

    pub fn is_blank(&self) -> bool {
        self.0.iter().all(Option::is_none)
    }

    /// Side to move, assuming the row was filled alternately from P1.
    pub fn to_move(&self) -> Player {
        if self.count(Player::P1) > self.count(Player::P2) {
            Player::P2
        } else {
            Player::P1
        }
    }

    pub fn with(&self, col: usize, player: Player) -> Row {
        let mut next = self.clone();
        next.0[col] = Some(player);
        next
    }

    /// Length of `player`'s horizontal run through `col` if they played there.
    pub fn run_if_played(&self, col: usize, player: Player) -> usize {
        let left = self.0[..col].iter().rev().take_while(|c| **c == Some(player)).count();
        let right = self.0[col + 1..].iter().take_while(|c| **c == Some(player)).count();
        left + 1 + right
    }

    /// Longest run of `player` anywhere in the row.
    pub fn longest_run(&self, player: Player) -> usize {
        self.0
            .split(|c| *c != Some(player))
            .map(<[Cell]>::len)
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|c| write!(f, "{}", cell_char(*c)))
    }
}

impl FromStr for Row {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.trim().chars().map(parse_cell).collect::<Result<_, _>>().map(Row)
    }
}
