//! Fixtures shared by the benchmarks.

use misere_core::{BoardSpec, GameState, Rules};

/// Boards small enough to solve from empty in well under a second.
pub const SOLVE_SHAPES: [(u32, u32, u32); 5] = [(4, 3, 3), (5, 3, 3), (4, 4, 3), (6, 2, 3), (9, 1, 2)];

pub fn empty(w: u32, h: u32, k: u32) -> GameState {
    GameState::new(BoardSpec::finite(w, h, k).expect("valid shape")).expect("finite")
}

/// A mid-game 7x6 position reached by a fixed move list.
pub fn midgame() -> GameState {
    let spec = BoardSpec::finite(7, 6, 4).expect("valid shape");
    GameState::replay(spec, Rules::default(), &[3, 2, 4, 3, 1, 5, 2, 4, 3, 3, 0, 6]).expect("legal line")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_live_positions() {
        assert!(!midgame().is_over());
        for (w, h, k) in SOLVE_SHAPES {
            assert!(!empty(w, h, k).is_over());
        }
    }
}
