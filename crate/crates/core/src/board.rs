//! Board representation and rules.
//!
//! Cells are addressed as `(col, row)` with row 0 at the bottom. A piece
//! dropped into a column lands on the lowest empty row. Whoever completes a
//! line of `k` of their own pieces (horizontal, vertical or diagonal) loses.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("invalid board spec: {0}")]
    InvalidSpec(String),
    #[error("infinite extents are only supported by the outcome oracle")]
    InfiniteUnsupported,
    #[error("illegal move in column {col}: {reason}")]
    IllegalMove { col: usize, reason: &'static str },
    #[error("inconsistent position: {0}")]
    InvalidPosition(String),
}

/// The two seats. P1 moves first and plays `X`; P2 plays `O`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    P1,
    P2,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::P1 => Player::P2,
            Player::P2 => Player::P1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Player::P1 => 'X',
            Player::P2 => 'O',
        }
    }

    pub fn index(self) -> usize {
        match self {
            Player::P1 => 0,
            Player::P2 => 1,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::P1 => "P1",
            Player::P2 => "P2",
        })
    }
}

impl FromStr for Player {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "P1" | "1" | "X" => Ok(Player::P1),
            "P2" | "2" | "O" => Ok(Player::P2),
            other => Err(GameError::InvalidSpec(format!("unknown player {other:?}"))),
        }
    }
}

/// Width or height of a board. Only the oracle accepts `Infinite`.
///
/// Serializes as a bare number, or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Extent {
    Finite(u32),
    Infinite,
}

impl Extent {
    pub fn finite(self) -> Option<u32> {
        match self {
            Extent::Finite(n) => Some(n),
            Extent::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Extent::Infinite)
    }
}

impl fmt::Display for Extent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extent::Finite(n) => write!(f, "{n}"),
            Extent::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Extent {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s.to_ascii_lowercase().as_str() {
            "inf" | "infinite" | "∞" => Ok(Extent::Infinite),
            _ => s
                .parse::<u32>()
                .map(Extent::Finite)
                .map_err(|_| GameError::InvalidSpec(format!("bad extent {s:?}"))),
        }
    }
}

impl Serialize for Extent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Extent::Finite(n) => s.serialize_u32(*n),
            Extent::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Extent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(u32),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Number(n) => Ok(Extent::Finite(n)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Game parameters `(width, height, k)`. Always valid once constructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct BoardSpec {
    width: Extent,
    height: Extent,
    k: u32,
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    width: Extent,
    height: Extent,
    k: u32,
}

impl TryFrom<RawSpec> for BoardSpec {
    type Error = GameError;
    fn try_from(raw: RawSpec) -> Result<Self, Self::Error> {
        BoardSpec::new(raw.width, raw.height, raw.k)
    }
}

impl From<BoardSpec> for RawSpec {
    fn from(spec: BoardSpec) -> Self {
        RawSpec {
            width: spec.width,
            height: spec.height,
            k: spec.k,
        }
    }
}

impl BoardSpec {
    pub fn new(width: Extent, height: Extent, k: u32) -> Result<Self, GameError> {
        if k < 2 {
            return Err(GameError::InvalidSpec(format!("k must be at least 2, got {k}")));
        }
        for (name, extent) in [("width", width), ("height", height)] {
            if extent == Extent::Finite(0) {
                return Err(GameError::InvalidSpec(format!("{name} must be positive")));
            }
        }
        Ok(BoardSpec { width, height, k })
    }

    pub fn finite(width: u32, height: u32, k: u32) -> Result<Self, GameError> {
        BoardSpec::new(Extent::Finite(width), Extent::Finite(height), k)
    }

    pub fn width(&self) -> Extent {
        self.width
    }

    pub fn height(&self) -> Extent {
        self.height
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn is_finite(&self) -> bool {
        !self.width.is_infinite() && !self.height.is_infinite()
    }

    /// `(width, height, k)` as sizes, or `InfiniteUnsupported`.
    pub fn dims(&self) -> Result<(usize, usize, usize), GameError> {
        match (self.width, self.height) {
            (Extent::Finite(w), Extent::Finite(h)) => Ok((w as usize, h as usize, self.k as usize)),
            _ => Err(GameError::InfiniteUnsupported),
        }
    }
}

impl fmt::Display for BoardSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} k={}", self.width, self.height, self.k)
    }
}

/// Solved value of a position or configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    P1Win,
    P2Win,
    Draw,
}

impl Outcome {
    pub fn win_for(player: Player) -> Outcome {
        match player {
            Player::P1 => Outcome::P1Win,
            Player::P2 => Outcome::P2Win,
        }
    }

    pub fn winner(self) -> Option<Player> {
        match self {
            Outcome::P1Win => Some(Player::P1),
            Outcome::P2Win => Some(Player::P2),
            Outcome::Draw => None,
        }
    }

    /// +1 win, 0 draw, -1 loss, seen from `player`.
    pub fn value_for(self, player: Player) -> i8 {
        match self.winner() {
            None => 0,
            Some(p) if p == player => 1,
            Some(_) => -1,
        }
    }

    pub fn from_value(value: i8, player: Player) -> Outcome {
        match value.signum() {
            0 => Outcome::Draw,
            1 => Outcome::win_for(player),
            _ => Outcome::win_for(player.opponent()),
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::P1Win => "P1Win",
            Outcome::P2Win => "P2Win",
            Outcome::Draw => "Draw",
        })
    }
}

impl FromStr for Outcome {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "P1Win" => Ok(Outcome::P1Win),
            "P2Win" => Ok(Outcome::P2Win),
            "Draw" => Ok(Outcome::Draw),
            _ => Err(GameError::InvalidSpec(format!("unknown outcome {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    InProgress,
    Ended(Outcome),
}

/// Rule switches. `loss_immune` lets one player connect `k` without the
/// game ending; used only to check the stronger single-row claims.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Rules {
    pub loss_immune: Option<Player>,
}

impl Rules {
    pub fn relaxed_for(player: Player) -> Rules {
        Rules {
            loss_immune: Some(player),
        }
    }
}

pub type Cell = Option<Player>;

const DIRECTIONS: [(isize, isize); 4] = [(1, 0), (0, 1), (1, 1), (1, -1)];

/// A playable position on a finite board. Cheap to clone; `apply_move`
/// returns a new state.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GameState {
    width: usize,
    height: usize,
    k: usize,
    rules: Rules,
    /// Column-major: `cells[col * height + row]`.
    cells: Vec<Cell>,
    heights: Vec<usize>,
    to_move: Player,
    history: Vec<usize>,
    status: Status,
}

impl GameState {
    pub fn new(spec: BoardSpec) -> Result<Self, GameError> {
        Self::with_rules(spec, Rules::default())
    }

    pub fn with_rules(spec: BoardSpec, rules: Rules) -> Result<Self, GameError> {
        let (width, height, k) = spec.dims()?;
        Ok(GameState {
            width,
            height,
            k,
            rules,
            cells: vec![None; width * height],
            heights: vec![0; width],
            to_move: Player::P1,
            history: Vec::new(),
            status: Status::InProgress,
        })
    }

    /// Replays `moves` from the empty board.
    pub fn replay(spec: BoardSpec, rules: Rules, moves: &[usize]) -> Result<Self, GameError> {
        let mut state = Self::with_rules(spec, rules)?;
        for &col in moves {
            state.play(col)?;
        }
        Ok(state)
    }

    /// Builds a state from raw cell contents (column-major, bottom-up).
    /// The move order is not recoverable, so the history is left empty.
    pub fn from_cells(spec: BoardSpec, rules: Rules, cells: Vec<Cell>) -> Result<Self, GameError> {
        let mut state = Self::with_rules(spec, rules)?;
        if cells.len() != state.cells.len() {
            return Err(GameError::InvalidPosition(format!(
                "expected {} cells, got {}",
                state.cells.len(),
                cells.len()
            )));
        }
        state.cells = cells;
        for col in 0..state.width {
            let column = &state.cells[col * state.height..(col + 1) * state.height];
            let filled = column.iter().take_while(|c| c.is_some()).count();
            if column[filled..].iter().any(Option::is_some) {
                return Err(GameError::InvalidPosition(format!("gap in column {col}")));
            }
            state.heights[col] = filled;
        }
        let p1 = state.count(Player::P1);
        let p2 = state.count(Player::P2);
        state.to_move = match p1.checked_sub(p2) {
            Some(0) => Player::P1,
            Some(1) => Player::P2,
            _ => {
                return Err(GameError::InvalidPosition(format!(
                    "piece counts {p1}/{p2} are not reachable"
                )))
            }
        };
        state.status = state.scan_status()?;
        Ok(state)
    }

    /// Parses the canonical rendering (rows top-down, `X`/`O`/`-`).
    pub fn from_rendering(spec: BoardSpec, rules: Rules, text: &str) -> Result<Self, GameError> {
        let (width, height, _) = spec.dims()?;
        let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        if lines.len() != height || lines.iter().any(|l| l.chars().count() != width) {
            return Err(GameError::InvalidPosition(format!(
                "rendering is not {width} wide and {height} tall"
            )));
        }
        let mut cells = vec![None; width * height];
        for (line_idx, line) in lines.iter().enumerate() {
            let row = height - 1 - line_idx;
            for (col, ch) in line.chars().enumerate() {
                cells[col * height + row] = parse_cell(ch)?;
            }
        }
        Self::from_cells(spec, rules, cells)
    }

    pub fn spec(&self) -> BoardSpec {
        BoardSpec::finite(self.width as u32, self.height as u32, self.k as u32)
            .expect("state dimensions are always valid")
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rules(&self) -> Rules {
        self.rules
    }

    pub fn to_move(&self) -> Player {
        self.to_move
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn is_over(&self) -> bool {
        self.status != Status::InProgress
    }

    pub fn history(&self) -> &[usize] {
        &self.history
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn move_count(&self) -> usize {
        self.heights.iter().sum()
    }

    pub fn cell(&self, col: usize, row: usize) -> Cell {
        self.cells[col * self.height + row]
    }

    pub fn count(&self, player: Player) -> usize {
        self.cells.iter().filter(|c| **c == Some(player)).count()
    }

    /// The bottom row as a single-row view.
    pub fn row(&self, row: usize) -> Vec<Cell> {
        (0..self.width).map(|col| self.cell(col, row)).collect()
    }

    /// `(col, row)` of the most recent move, when the history is known.
    pub fn last_move(&self) -> Option<(usize, usize)> {
        let &col = self.history.last()?;
        Some((col, self.heights[col] - 1))
    }

    pub fn is_legal(&self, col: usize) -> bool {
        !self.is_over() && col < self.width && self.heights[col] < self.height
    }

    pub fn legal_moves(&self) -> Vec<usize> {
        if self.is_over() {
            return Vec::new();
        }
        (0..self.width).filter(|&c| self.heights[c] < self.height).collect()
    }

    pub fn apply_move(&self, col: usize) -> Result<Self, GameError> {
        let mut next = self.clone();
        next.play(col)?;
        Ok(next)
    }

    /// In-place variant of [`apply_move`](Self::apply_move).
    pub fn play(&mut self, col: usize) -> Result<(), GameError> {
        if self.is_over() {
            return Err(GameError::IllegalMove {
                col,
                reason: "game is over",
            });
        }
        if col >= self.width {
            return Err(GameError::IllegalMove {
                col,
                reason: "no such column",
            });
        }
        let row = self.heights[col];
        if row >= self.height {
            return Err(GameError::IllegalMove {
                col,
                reason: "column is full",
            });
        }
        let mover = self.to_move;
        self.cells[col * self.height + row] = Some(mover);
        self.heights[col] += 1;
        self.history.push(col);
        self.to_move = mover.opponent();

        if self.rules.loss_immune != Some(mover) && self.connects_k(col, row, mover) {
            self.status = Status::Ended(Outcome::win_for(mover.opponent()));
        } else if self.move_count() == self.width * self.height {
            self.status = Status::Ended(Outcome::Draw);
        }
        Ok(())
    }

    /// Would dropping `player`'s piece into `col` complete a line of `k`?
    pub fn would_connect(&self, col: usize, player: Player) -> bool {
        let row = self.heights[col];
        row < self.height && self.run_length(col, row, player, true) >= self.k
    }

    /// True iff `player` owns a run of at least `k` through `(col, row)`.
    pub fn connects_k(&self, col: usize, row: usize, player: Player) -> bool {
        self.cell(col, row) == Some(player) && self.run_length(col, row, player, false) >= self.k
    }

    /// Longest run of `player` through the cell, in any of the four
    /// directions. With `assume_placed` the cell itself counts as owned.
    fn run_length(&self, col: usize, row: usize, player: Player, assume_placed: bool) -> usize {
        let own = |c: isize, r: isize| {
            c >= 0
                && r >= 0
                && (c as usize) < self.width
                && (r as usize) < self.height
                && self.cell(c as usize, r as usize) == Some(player)
        };
        if !assume_placed && !own(col as isize, row as isize) {
            return 0;
        }
        DIRECTIONS
            .iter()
            .map(|&(dc, dr)| {
                let mut run = 1;
                for sign in [1isize, -1] {
                    let (mut c, mut r) = (col as isize + sign * dc, row as isize + sign * dr);
                    while own(c, r) {
                        run += 1;
                        c += sign * dc;
                        r += sign * dr;
                    }
                }
                run
            })
            .max()
            .unwrap_or(1)
    }

    fn scan_status(&self) -> Result<Status, GameError> {
        let mut losers = Vec::new();
        for player in [Player::P1, Player::P2] {
            if self.rules.loss_immune == Some(player) {
                continue;
            }
            let lost = (0..self.width)
                .any(|c| (0..self.heights[c]).any(|r| self.connects_k(c, r, player)));
            if lost {
                losers.push(player);
            }
        }
        match losers.as_slice() {
            [] if self.move_count() == self.width * self.height => Ok(Status::Ended(Outcome::Draw)),
            [] => Ok(Status::InProgress),
            [loser] => Ok(Status::Ended(Outcome::win_for(loser.opponent()))),
            _ => Err(GameError::InvalidPosition("both players connected".into())),
        }
    }

    /// Left-right reflection.
    pub fn mirror(&self) -> Self {
        let mut out = self.clone();
        for col in 0..self.width {
            let src = self.width - 1 - col;
            for row in 0..self.height {
                out.cells[col * self.height + row] = self.cells[src * self.height + row];
            }
            out.heights[col] = self.heights[src];
        }
        out.history = self.history.iter().map(|&c| self.width - 1 - c).collect();
        out
    }

    /// Canonical text rendering: one line per row, top row first.
    pub fn render(&self) -> String {
        self.render_lines().join("\n")
    }

    pub fn render_lines(&self) -> Vec<String> {
        (0..self.height)
            .rev()
            .map(|row| (0..self.width).map(|col| cell_char(self.cell(col, row))).collect())
            .collect()
    }
}

impl fmt::Display for GameState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn cell_char(cell: Cell) -> char {
    cell.map_or('-', Player::symbol)
}

pub fn parse_cell(ch: char) -> Result<Cell, GameError> {
    match ch {
        'X' | 'x' => Ok(Some(Player::P1)),
        'O' | 'o' => Ok(Some(Player::P2)),
        '-' | '.' => Ok(None),
        other => Err(GameError::InvalidPosition(format!("unexpected cell {other:?}"))),
    }
}
