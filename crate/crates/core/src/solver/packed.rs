//! Bit-plane encoding.
//!
//! Each column owns `height + 1` consecutive bits of a `u64`: one per row,
//! bottom-up, plus an always-clear sentinel on top. The sentinel stops
//! vertical and diagonal shifts from wrapping into the next column.

use serde::{Deserialize, Serialize};

use super::SolveError;
use crate::board::{BoardSpec, GameState, Player, Rules};

pub const PLANE_BITS: usize = 64;

/// Board geometry for the bit layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Geometry {
    pub width: usize,
    pub height: usize,
    pub stride: usize,
    /// One bit at row 0 of every column.
    pub bottom: u64,
    /// Every playable cell.
    pub board: u64,
}

impl Geometry {
    pub fn new(width: usize, height: usize) -> Result<Self, SolveError> {
        let stride = height + 1;
        if width * stride > PLANE_BITS {
            return Err(SolveError::TooLarge {
                cells: width * height,
                limit: format!("{width}x({height}+1) bits exceed the {PLANE_BITS}-bit plane"),
            });
        }
        let column = (1u64 << height) - 1;
        let (mut bottom, mut board) = (0u64, 0u64);
        for col in 0..width {
            bottom |= 1 << (col * stride);
            board |= column << (col * stride);
        }
        Ok(Geometry {
            width,
            height,
            stride,
            bottom,
            board,
        })
    }

    #[inline]
    pub fn column_mask(&self, col: usize) -> u64 {
        ((1u64 << self.height) - 1) << (col * self.stride)
    }

    #[inline]
    pub fn bottom_cell(&self, col: usize) -> u64 {
        1u64 << (col * self.stride)
    }

    #[inline]
    pub fn top_cell(&self, col: usize) -> u64 {
        1u64 << (col * self.stride + self.height - 1)
    }

    #[inline]
    pub fn bit(&self, col: usize, row: usize) -> u64 {
        1u64 << (col * self.stride + row)
    }

    /// Does `stones` contain a line of `k`?
    #[inline]
    pub fn has_run(&self, stones: u64, k: usize) -> bool {
        let s = self.stride as u32;
        run_starts(stones, 1, k) != 0
            || run_starts(stones, s, k) != 0
            || run_starts(stones, s - 1, k) != 0
            || run_starts(stones, s + 1, k) != 0
    }

    /// Reverses the order of the column blocks.
    pub fn mirror_bits(&self, bits: u64) -> u64 {
        let block = (1u64 << self.stride) - 1;
        let mut out = 0;
        for col in 0..self.width {
            let chunk = (bits >> (col * self.stride)) & block;
            out |= chunk << ((self.width - 1 - col) * self.stride);
        }
        out
    }
}

#[inline]
fn shr(bits: u64, by: u32) -> u64 {
    bits.checked_shr(by).unwrap_or(0)
}

/// Bits `i` such that `i, i+step, ..., i+(k-1)*step` are all set. Runs are
/// folded in doubling steps, so the cost is logarithmic in `k`.
#[inline]
pub(crate) fn run_starts(bits: u64, step: u32, k: usize) -> u64 {
    let k = k as u32;
    let mut acc = bits;
    let mut len = 1u32;
    while len * 2 <= k {
        acc &= shr(acc, len * step);
        len *= 2;
    }
    if len < k {
        acc &= shr(acc, (k - len) * step);
    }
    acc
}

/// A position as two bit-planes plus the side to move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PackedPosition {
    pub width: u8,
    pub height: u8,
    pub k: u8,
    pub p1: u64,
    pub p2: u64,
    pub to_move: Player,
}

impl PackedPosition {
    fn geometry(&self) -> Geometry {
        Geometry::new(self.width as usize, self.height as usize).expect("validated at encode time")
    }

    /// Perfect hash of (cells, side to move): the stones of P1 plus one
    /// marker bit above the top stone of every column.
    pub fn key(&self) -> u64 {
        let g = self.geometry();
        self.p1 + (self.p1 | self.p2) + g.bottom
    }

    pub fn mirrored(&self) -> PackedPosition {
        let g = self.geometry();
        PackedPosition {
            p1: g.mirror_bits(self.p1),
            p2: g.mirror_bits(self.p2),
            ..*self
        }
    }

    /// The smaller of this position's key and its mirror's.
    pub fn canonical_key(&self) -> u64 {
        self.key().min(self.mirrored().key())
    }
}

pub fn encode(state: &GameState) -> Result<PackedPosition, SolveError> {
    let g = Geometry::new(state.width(), state.height())?;
    let (mut p1, mut p2) = (0u64, 0u64);
    for col in 0..state.width() {
        for row in 0..state.heights()[col] {
            match state.cell(col, row) {
                Some(Player::P1) => p1 |= g.bit(col, row),
                Some(Player::P2) => p2 |= g.bit(col, row),
                None => unreachable!("columns have no gaps"),
            }
        }
    }
    Ok(PackedPosition {
        width: state.width() as u8,
        height: state.height() as u8,
        k: state.k() as u8,
        p1,
        p2,
        to_move: state.to_move(),
    })
}

/// Rebuilds the cells. The move history is not part of the encoding.
pub fn decode(packed: &PackedPosition) -> Result<GameState, SolveError> {
    let (w, h) = (packed.width as usize, packed.height as usize);
    let g = Geometry::new(w, h)?;
    let spec = BoardSpec::finite(packed.width as u32, packed.height as u32, packed.k as u32)?;
    let mut cells = vec![None; w * h];
    for col in 0..w {
        for row in 0..h {
            let bit = g.bit(col, row);
            cells[col * h + row] = match (packed.p1 & bit != 0, packed.p2 & bit != 0) {
                (true, false) => Some(Player::P1),
                (false, true) => Some(Player::P2),
                (false, false) => None,
                (true, true) => {
                    return Err(SolveError::Game(crate::board::GameError::InvalidPosition(
                        "cell owned by both players".into(),
                    )))
                }
            };
        }
    }
    let state = GameState::from_cells(spec, Rules::default(), cells)?;
    if state.to_move() != packed.to_move {
        return Err(SolveError::Game(crate::board::GameError::InvalidPosition(
            "side to move disagrees with piece counts".into(),
        )));
    }
    Ok(state)
}
