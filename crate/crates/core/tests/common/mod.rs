//! Reference implementations shared by the integration tests. Nothing here
//! uses the library's search code.

#![allow(dead_code)]

use misere_core::{BoardSpec, GameState, Player};

/// Plain minimax over a flat grid: no pruning, no table, no symmetry.
pub struct Naive {
    w: usize,
    h: usize,
    k: usize,
    grid: Vec<i8>,
    heights: Vec<usize>,
    placed: usize,
}

impl Naive {
    pub fn from_state(state: &GameState) -> Self {
        let (w, h, k) = (state.width(), state.height(), state.k());
        let mut grid = vec![0i8; w * h];
        for col in 0..w {
            for row in 0..h {
                grid[row * w + col] = match state.cell(col, row) {
                    None => 0,
                    Some(Player::P1) => 1,
                    Some(Player::P2) => 2,
                };
            }
        }
        Naive {
            w,
            h,
            k,
            grid,
            heights: state.heights().to_vec(),
            placed: state.move_count(),
        }
    }

    fn owner(&self, col: isize, row: isize) -> i8 {
        if col < 0 || row < 0 || col >= self.w as isize || row >= self.h as isize {
            return 0;
        }
        self.grid[row as usize * self.w + col as usize]
    }

    fn line_through(&self, col: usize, row: usize, who: i8) -> bool {
        for (dc, dr) in [(1isize, 0isize), (0, 1), (1, 1), (1, -1)] {
            let mut run = 1;
            for sign in [1isize, -1] {
                let (mut c, mut r) = (col as isize + sign * dc, row as isize + sign * dr);
                while self.owner(c, r) == who {
                    run += 1;
                    c += sign * dc;
                    r += sign * dr;
                }
            }
            if run >= self.k {
                return true;
            }
        }
        false
    }

    /// Value for the side to move: 1 win, 0 draw, -1 loss.
    pub fn value(&mut self) -> i8 {
        let who = if self.placed % 2 == 0 { 1 } else { 2 };
        let mut best = -1i8;
        let mut any = false;
        for col in 0..self.w {
            let row = self.heights[col];
            if row == self.h {
                continue;
            }
            any = true;
            self.grid[row * self.w + col] = who;
            self.heights[col] += 1;
            self.placed += 1;
            let v = if self.line_through(col, row, who) {
                -1
            } else if self.placed == self.w * self.h {
                0
            } else {
                -self.value()
            };
            self.placed -= 1;
            self.heights[col] -= 1;
            self.grid[row * self.w + col] = 0;
            best = best.max(v);
        }
        assert!(any, "value of a full board requested");
        best
    }
}

pub fn spec(w: u32, h: u32, k: u32) -> BoardSpec {
    BoardSpec::finite(w, h, k).unwrap()
}

/// Every `(w, h)` with `w * h <= cells`.
pub fn shapes(cells: u32) -> Vec<(u32, u32)> {
    (1..=cells).flat_map(|w| (1..=cells / w).map(move |h| (w, h))).collect()
}
