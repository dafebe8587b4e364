//! Single-row play with `k = 2`.
//!
//! A placed piece fixes an alternating pattern (its template) across the
//! empty stretch next to it. The tally counts, for each player, the
//! non-losing cells that still match a template, and every non-losing play
//! falls in one of four classes with a fixed effect on the tally.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::row::Row;
use super::{not_applicable, StrategyError};
use crate::board::{BoardSpec, GameState, Player, Rules};
use crate::solver::{Budget, Solver};

/// A maximal empty stretch `start..end` with its bounding pieces; `None`
/// marks a wall.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Template {
    pub start: usize,
    pub end: usize,
    pub left: Option<Player>,
    pub right: Option<Player>,
}

/// Owner prescribed at distance `d >= 1` from an anchor.
fn prescribed(anchor: Player, d: usize) -> Player {
    if d % 2 == 1 {
        anchor.opponent()
    } else {
        anchor
    }
}

impl Template {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    /// Owner of `col` under the left anchor's template.
    pub fn from_left(&self, col: usize) -> Option<Player> {
        self.left.map(|a| prescribed(a, col + 1 - self.start))
    }

    /// Owner of `col` under the right anchor's template.
    pub fn from_right(&self, col: usize) -> Option<Player> {
        self.right.map(|a| prescribed(a, self.end - col))
    }

    /// Both anchors present and their templates agree on every cell.
    pub fn is_consistent(&self) -> bool {
        match (self.left, self.right) {
            (Some(l), Some(r)) => (self.len() % 2 == 1) == (l == r),
            _ => true,
        }
    }

    /// Per-column prescription, left anchor first.
    pub fn prescription(&self) -> Vec<(usize, Player)> {
        (self.start..self.end)
            .filter_map(|c| self.from_left(c).or_else(|| self.from_right(c)).map(|p| (c, p)))
            .collect()
    }
}

/// Every maximal empty stretch of a row holding at least one piece.
pub fn template_of(row: &Row) -> Result<Vec<Template>, StrategyError> {
    if row.is_blank() {
        return Err(StrategyError::EmptyBoard);
    }
    Ok(stretches(row))
}

fn stretches(row: &Row) -> Vec<Template> {
    let w = row.width();
    let mut out = Vec::new();
    let mut i = 0;
    while i < w {
        if row.is_open(i) {
            let mut j = i;
            while j < w && row.is_open(j) {
                j += 1;
            }
            out.push(Template {
                start: i,
                end: j,
                left: if i > 0 { row.get(i - 1) } else { None },
                right: if j < w { row.get(j) } else { None },
            });
            i = j;
        } else {
            i += 1;
        }
    }
    out
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tally {
    pub x_moves: usize,
    pub o_moves: usize,
}

impl Tally {
    pub fn new(x_moves: usize, o_moves: usize) -> Self {
        Tally { x_moves, o_moves }
    }

    fn add(&mut self, player: Player, n: usize) {
        match player {
            Player::P1 => self.x_moves += n,
            Player::P2 => self.o_moves += n,
        }
    }

    pub fn for_player(&self, player: Player) -> usize {
        match player {
            Player::P1 => self.x_moves,
            Player::P2 => self.o_moves,
        }
    }

    pub fn delta(&self, before: &Tally) -> (i64, i64) {
        (
            self.x_moves as i64 - before.x_moves as i64,
            self.o_moves as i64 - before.o_moves as i64,
        )
    }
}

impl fmt::Display for Tally {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x_moves, self.o_moves)
    }
}

/// Closed-form tally. A stretch against a wall is counted from its single
/// anchor; a stretch between two disagreeing anchors loses one cell where
/// the templates meet.
pub fn tally_of(row: &Row) -> Result<Tally, StrategyError> {
    let mut tally = Tally::default();
    for t in template_of(row)? {
        let n = t.len();
        match (t.left, t.right) {
            (Some(a), None) | (None, Some(a)) => {
                tally.add(a.opponent(), n.div_ceil(2));
                tally.add(a, n / 2);
            }
            (Some(l), Some(_)) => {
                let m = if t.is_consistent() { n } else { n - 1 };
                tally.add(l.opponent(), m.div_ceil(2));
                tally.add(l, m / 2);
            }
            (None, None) => unreachable!("a non-blank row has no wall-to-wall stretch"),
        }
    }
    Ok(tally)
}

/// Order in which template cells are tabulated by [`tally_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tabulation {
    /// Walk each stretch away from its left anchor where it has one.
    LeftToRight,
    /// Walk each stretch away from its right anchor where it has one.
    RightToLeft,
    /// Fill each two-sided stretch from both ends toward the middle.
    OutsideIn,
}

/// Tally by simulation: visit cells in the given order, give each the owner
/// prescribed by the neighbour it was reached from, and count it unless that
/// owner would touch their own piece.
pub fn tally_with(row: &Row, order: Tabulation) -> Result<Tally, StrategyError> {
    let mut tally = Tally::default();
    for t in template_of(row)? {
        let mut cells = row.cells().to_vec();
        let from_left = |c: usize| (c, true);
        let from_right = |c: usize| (c, false);
        let visits: Vec<(usize, bool)> = match (t.left.is_some(), t.right.is_some(), order) {
            (true, false, _) | (true, true, Tabulation::LeftToRight) => (t.start..t.end).map(from_left).collect(),
            (false, true, _) | (true, true, Tabulation::RightToLeft) => {
                (t.start..t.end).rev().map(from_right).collect()
            }
            (true, true, Tabulation::OutsideIn) => {
                let (mut lo, mut hi) = (t.start, t.end);
                let mut v = Vec::with_capacity(t.len());
                while lo < hi {
                    v.push(from_left(lo));
                    lo += 1;
                    if lo < hi {
                        hi -= 1;
                        v.push(from_right(hi));
                    }
                }
                v
            }
            (false, false, _) => unreachable!("a non-blank row has no wall-to-wall stretch"),
        };
        for (c, came_from_left) in visits {
            let source = if came_from_left { cells[c - 1] } else { cells[c + 1] };
            let Some(prev) = source else { continue };
            let owner = prev.opponent();
            let touches = (c > 0 && cells[c - 1] == Some(owner)) || (c + 1 < cells.len() && cells[c + 1] == Some(owner));
            if !touches {
                cells[c] = Some(owner);
                tally.add(owner, 1);
            }
        }
    }
    Ok(tally)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PlayKind {
    InTemplate,
    DoubleContradiction,
    Offensive,
    SelfImmolation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlayClass {
    pub kind: PlayKind,
    /// Offensive play on the wall cell itself.
    pub exclusive: bool,
}

impl PlayClass {
    /// Change in `(x_moves, o_moves)` when `player` makes this play.
    pub fn delta(&self, player: Player) -> (i64, i64) {
        let (own, other) = match self.kind {
            PlayKind::InTemplate => (-1, 0),
            PlayKind::DoubleContradiction => (-2, -1),
            PlayKind::Offensive => (-1, -1),
            PlayKind::SelfImmolation => (-2, 0),
        };
        match player {
            Player::P1 => (own, other),
            Player::P2 => (other, own),
        }
    }
}

fn touches_own(row: &Row, col: usize, player: Player) -> bool {
    (col > 0 && row.get(col - 1) == Some(player)) || (col + 1 < row.width() && row.get(col + 1) == Some(player))
}

/// Class of `player` playing `col`.
pub fn classify_play(row: &Row, col: usize, player: Player) -> Result<PlayClass, StrategyError> {
    if !row.is_open(col) {
        return Err(StrategyError::IllegalCell { col });
    }
    if touches_own(row, col, player) {
        return Err(StrategyError::LosingPlay { col });
    }
    let t = template_of(row)?
        .into_iter()
        .find(|t| (t.start..t.end).contains(&col))
        .expect("an open cell lies in some stretch");
    let plain = |kind| PlayClass { kind, exclusive: false };
    let agrees = t.from_left(col) == Some(player) || t.from_right(col) == Some(player);
    if agrees {
        return Ok(plain(PlayKind::InTemplate));
    }
    match (t.left, t.right) {
        (Some(_), Some(_)) => Ok(plain(PlayKind::DoubleContradiction)),
        _ => {
            let wall = if t.left.is_none() { t.start } else { t.end - 1 };
            let wall_owner = t.from_left(wall).or_else(|| t.from_right(wall));
            if wall_owner != Some(player) {
                Ok(PlayClass {
                    kind: PlayKind::Offensive,
                    exclusive: col == wall,
                })
            } else {
                Ok(plain(PlayKind::SelfImmolation))
            }
        }
    }
}

/// Move for `seat` on a `k = 2` single row.
///
/// P2 on odd widths and on even widths from 8 plays the scripted winning
/// line. Widths 1, 2, 4 and 6 (either seat) read from an exact policy table.
pub fn k2_move(row: &Row, seat: Player) -> Result<usize, StrategyError> {
    let w = row.width();
    if row.open_count() == 0 {
        return Err(StrategyError::BoardFull);
    }
    match (seat, w) {
        (_, 1 | 2 | 4 | 6) => exact_policy(row),
        (Player::P2, _) => Ok(scripted(row, seat)),
        (Player::P1, _) => Err(not_applicable(format!("k=2 P1 policy exists only for w in {{1,2,4,6}}, not {w}"))),
    }
}

fn scripted(row: &Row, me: Player) -> usize {
    let w = row.width();
    let opp = me.opponent();
    let safe: Vec<usize> = row.open_cells().filter(|&c| !touches_own(row, c, me)).collect();
    let Some(&first_safe) = safe.first() else {
        return row.open_cells().next().expect("row has an open cell");
    };

    if row.count(me) == 0 {
        if let Some(reply) = (0..w).find(|&c| row.get(c) == Some(opp)).and_then(|c| opening_reply(row, c)) {
            return reply;
        }
    }

    let walls_split = row.get(0).is_some() && row.get(w - 1).is_some() && row.get(0) != row.get(w - 1);
    if w % 2 == 0 && row.count(me) == 1 && row.count(opp) == 2 && walls_split {
        if let Some(c) = double_contradiction(row, me) {
            return c;
        }
    }

    safe.iter()
        .copied()
        .find(|&c| matches!(classify_play(row, c, me), Ok(PlayClass { kind: PlayKind::InTemplate, .. })))
        .unwrap_or(first_safe)
}

/// First reply to an opening at `c`, if that cell is still open.
fn opening_reply(row: &Row, c: usize) -> Option<usize> {
    let w = row.width();
    let reply = if w % 2 == 1 {
        if c % 2 == 0 {
            // both walls carry the opener's template; take the lower open one
            return [0, w - 1].into_iter().find(|&x| row.is_open(x));
        }
        0
    } else if c == 0 || c == w - 1 {
        w - 1 - c
    } else if c % 2 == 0 {
        0
    } else {
        w - 1
    };
    row.is_open(reply).then_some(reply)
}

/// Leftmost double-contradiction cell in the longest stretch that has one.
fn double_contradiction(row: &Row, me: Player) -> Option<usize> {
    let mut best: Option<(usize, usize)> = None;
    for t in stretches(row) {
        let dc = (t.start..t.end).find(|&c| {
            matches!(
                classify_play(row, c, me),
                Ok(PlayClass {
                    kind: PlayKind::DoubleContradiction,
                    ..
                })
            )
        });
        if let Some(c) = dc {
            if best.is_none_or(|(len, _)| t.len() > len) {
                best = Some((t.len(), c));
            }
        }
    }
    best.map(|(_, c)| c)
}

fn row_key(row: &Row) -> u32 {
    row.cells().iter().fold(0, |acc, c| {
        acc * 3
            + match c {
                None => 0,
                Some(Player::P1) => 1,
                Some(Player::P2) => 2,
            }
    })
}

type PolicyTable = HashMap<u32, usize>;

static POLICIES: [OnceLock<PolicyTable>; 7] = [const { OnceLock::new() }; 7];

/// Solver-backed policy for small widths, built on first use.
fn exact_policy(row: &Row) -> Result<usize, StrategyError> {
    let w = row.width();
    let table = POLICIES[w].get_or_init(|| build_policy(w));
    table
        .get(&row_key(row))
        .copied()
        .ok_or_else(|| not_applicable(format!("row {row} is not reachable from an empty board")))
}

fn build_policy(w: usize) -> PolicyTable {
    let spec = BoardSpec::finite(w as u32, 1, 2).expect("valid spec");
    let solver = Solver::default();
    let mut table = PolicyTable::new();
    let mut stack = vec![GameState::new(spec).expect("finite spec")];
    while let Some(state) = stack.pop() {
        if state.is_over() {
            continue;
        }
        let key = row_key(&Row::new(state.row(0)));
        if table.contains_key(&key) {
            continue;
        }
        let best = solver
            .best_move(&state, Budget::unlimited())
            .expect("tiny boards solve without limits");
        table.insert(key, best);
        for col in state.legal_moves() {
            stack.push(state.apply_move(col).expect("legal move"));
        }
    }
    debug_assert!(Rules::default().loss_immune.is_none());
    table
}
