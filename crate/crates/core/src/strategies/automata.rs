//! Segment strategy for single rows with `k >= 3`.
//!
//! From the strategist's side, every opponent piece and each wall is filler:
//! no line of the strategist crosses it. The row therefore splits into
//! independent segments, which in-strategy play keeps in five shapes keyed
//! by how many of the strategist's pieces sit at each edge:
//!
//! | class | edges       | example (`F` = filler) |
//! |-------|-------------|------------------------|
//! | A     | none        | `F----F`               |
//! | B     | one X       | `FX--F`                |
//! | C     | X and X     | `FX---XF`              |
//! | D     | XX          | `F--XXF`               |
//! | E     | XX and X    | `FXX-XF`               |
//!
//! Shapes are identified up to reflection. The subscript is the number of
//! empty cells.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::row::Row;
use super::StrategyError;
use crate::board::Player;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SegmentClass {
    A,
    B,
    C,
    D,
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub class: SegmentClass,
    /// Empty cells.
    pub empties: usize,
    /// Columns `start..end`, edge pieces included.
    pub start: usize,
    pub end: usize,
    /// Strategist pieces on the left and right edges.
    pub lead: usize,
    pub trail: usize,
}

impl Segment {
    pub fn first_empty(&self) -> usize {
        self.start + self.lead
    }

    pub fn last_empty(&self) -> usize {
        self.end - self.trail - 1
    }

    pub fn is_odd(&self) -> bool {
        self.empties % 2 == 1
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}_{}", self.class, self.empties)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of_empties(n: usize) -> Parity {
        if n % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

/// Classifies a filler-free stretch of cells whose first cell is column
/// `offset`.
pub fn classify_segment(cells: &[Option<Player>], offset: usize, strategist: Player) -> Result<Segment, StrategyError> {
    let show = || cells.iter().map(|c| crate::board::cell_char(*c)).collect::<String>();
    if cells.iter().any(|c| *c == Some(strategist.opponent())) {
        return Err(StrategyError::NonCanonical(format!("filler inside segment {}", show())));
    }
    let lead = cells.iter().take_while(|c| c.is_some()).count();
    if lead == cells.len() {
        return Err(StrategyError::NonCanonical(format!("no empty cell in {}", show())));
    }
    let trail = cells.iter().rev().take_while(|c| c.is_some()).count();
    let middle = &cells[lead..cells.len() - trail];
    if middle.iter().any(Option::is_some) {
        return Err(StrategyError::NonCanonical(format!("interior piece in {}", show())));
    }
    let class = match (lead.min(trail), lead.max(trail)) {
        (0, 0) => SegmentClass::A,
        (0, 1) => SegmentClass::B,
        (1, 1) => SegmentClass::C,
        (0, 2) => SegmentClass::D,
        (1, 2) => SegmentClass::E,
        _ => return Err(StrategyError::NonCanonical(format!("edge runs {lead},{trail} in {}", show()))),
    };
    Ok(Segment {
        class,
        empties: middle.len(),
        start: offset,
        end: offset + cells.len(),
        lead,
        trail,
    })
}

/// Segments of `row`, left to right, as seen by `strategist`. Stretches
/// with no empty cell are filler and are dropped.
pub fn split_segments(row: &Row, strategist: Player) -> Result<Vec<Segment>, StrategyError> {
    let filler = Some(strategist.opponent());
    let cells = row.cells();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cells.len() {
        if cells[i] == filler {
            i += 1;
            continue;
        }
        let j = (i..cells.len()).find(|&j| cells[j] == filler).unwrap_or(cells.len());
        if cells[i..j].iter().any(Option::is_none) {
            out.push(classify_segment(&cells[i..j], i, strategist)?);
        }
        i = j;
    }
    Ok(out)
}

/// Chooses `(segment index, column)`.
///
/// Odd mode plays only in odd A or B segments. Even mode prefers an even D,
/// then any A or an odd B, then an even B or C. Within a tier the leftmost
/// segment is used.
pub fn automata_move(segments: &[Segment], parity: Parity) -> Result<(usize, usize), StrategyError> {
    use SegmentClass::*;
    let tiers: &[&dyn Fn(&Segment) -> bool] = match parity {
        Parity::Odd => &[&|s: &Segment| matches!(s.class, A | B) && s.is_odd()],
        Parity::Even => &[
            &|s: &Segment| s.class == D && !s.is_odd(),
            &|s: &Segment| s.class == A || (s.class == B && s.is_odd()),
            &|s: &Segment| matches!(s.class, B | C) && !s.is_odd(),
        ],
    };
    for tier in tiers {
        if let Some((i, s)) = segments.iter().enumerate().find(|(_, s)| tier(s)) {
            return Ok((i, cell_in(s)));
        }
    }
    let listing: Vec<String> = segments.iter().map(Segment::to_string).collect();
    Err(StrategyError::NoSafeMove(format!("{parity:?} mode with [{}]", listing.join(", "))))
}

fn cell_in(s: &Segment) -> usize {
    match s.class {
        // next to the left filler
        SegmentClass::A => s.first_empty(),
        // the empty edge opposite the lone piece
        SegmentClass::B | SegmentClass::D => {
            if s.lead == 0 {
                s.first_empty()
            } else {
                s.last_empty()
            }
        }
        // next to the left piece
        SegmentClass::C | SegmentClass::E => s.first_empty(),
    }
}
