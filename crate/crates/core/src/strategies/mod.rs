//! Constructive strategies, each a deterministic move policy with the specs
//! and seat on which it carries a guarantee.

pub mod automata;
pub mod k2;
pub mod pair;
pub mod row;
pub mod take_even;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::board::{BoardSpec, Extent, GameState, Outcome, Player};
use crate::oracle;
use crate::solver::SolveError;

pub use automata::{automata_move, classify_segment, split_segments, Parity, Segment, SegmentClass};
pub use k2::{classify_play, k2_move, tally_of, template_of, PlayClass, PlayKind, Tally, Template};
pub use pair::{pair_move, PairLabeling};
pub use row::Row;
pub use take_even::{delayed_take_even_move, delayed_take_even_seat, take_even_move};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("strategy not applicable: {0}")]
    NotApplicable(String),
    #[error("no open cell in row 0 for the required reply")]
    Stuck,
    #[error("board is full")]
    BoardFull,
    #[error("row has no pieces, so no template exists")]
    EmptyBoard,
    #[error("column {col} touches the player's own piece")]
    LosingPlay { col: usize },
    #[error("column {col} is not an open cell")]
    IllegalCell { col: usize },
    #[error("non-canonical segment: {0}")]
    NonCanonical(String),
    #[error("no safe segment to play in: {0}")]
    NoSafeMove(String),
    #[error(transparent)]
    Solver(#[from] SolveError),
}

fn not_applicable(msg: impl Into<String>) -> StrategyError {
    StrategyError::NotApplicable(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StrategyTag {
    TakeEven,
    DelayedTakeEven,
    PairTwoRule,
    K2Template,
    AutomataOdd,
    AutomataEven,
}

/// What a strategy guarantees when it applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Claim {
    AlwaysWins,
    NeverLoses,
    /// The strategist never completes k, even if the opponent may keep
    /// playing after completing k themselves.
    NeverConnectsKRelaxed,
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Claim::AlwaysWins => "always-wins",
            Claim::NeverLoses => "never-loses",
            Claim::NeverConnectsKRelaxed => "never-connects-k-relaxed",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StrategyKind {
    pub tag: StrategyTag,
    pub seat: Player,
}

impl StrategyKind {
    pub fn new(tag: StrategyTag, seat: Player) -> Self {
        StrategyKind { tag, seat }
    }

    /// Ok when the strategy is defined on `spec` for this seat.
    pub fn check(&self, spec: &BoardSpec) -> Result<(), StrategyError> {
        let (w, h, k) = match (spec.width(), spec.height()) {
            (Extent::Finite(w), Extent::Finite(h)) => (w, h, spec.k()),
            _ => return Err(not_applicable("infinite board")),
        };
        let seat = self.seat;
        let ok = match self.tag {
            StrategyTag::TakeEven => h % 2 == 0 && w >= k && seat == Player::P2,
            StrategyTag::DelayedTakeEven => {
                h % 2 == 1 && h >= 3 && w >= k && delayed_take_even_seat(w as usize, k as usize) == seat
            }
            StrategyTag::PairTwoRule => h == 1 && k >= 3,
            StrategyTag::K2Template => {
                k == 2 && h == 1 && (seat == Player::P2 || matches!(w, 1 | 2 | 4 | 6))
            }
            StrategyTag::AutomataOdd | StrategyTag::AutomataEven => {
                h == 1 && k >= 3 && automata_tag(w as usize, seat) == self.tag
            }
        };
        if ok {
            Ok(())
        } else {
            Err(not_applicable(format!("{:?} for {seat} on {spec}", self.tag)))
        }
    }

    pub fn applies_to(&self, spec: &BoardSpec) -> bool {
        self.check(spec).is_ok()
    }

    /// The claim this strategy is known to satisfy on `spec`, if applicable.
    pub fn guarantee(&self, spec: &BoardSpec) -> Option<Claim> {
        self.check(spec).ok()?;
        Some(match self.tag {
            StrategyTag::TakeEven | StrategyTag::DelayedTakeEven => Claim::AlwaysWins,
            StrategyTag::PairTwoRule | StrategyTag::AutomataOdd | StrategyTag::AutomataEven => {
                Claim::NeverConnectsKRelaxed
            }
            StrategyTag::K2Template => {
                if oracle::outcome(spec).outcome == Outcome::win_for(self.seat) {
                    Claim::AlwaysWins
                } else {
                    Claim::NeverLoses
                }
            }
        })
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{}", self.tag, self.seat)
    }
}

/// Automata mode for a seat: odd when the strategist always faces an odd
/// number of empty cells.
pub fn automata_tag(width: usize, seat: Player) -> StrategyTag {
    let empties_at_turn = match seat {
        Player::P1 => width,
        Player::P2 => width.saturating_sub(1),
    };
    if empties_at_turn % 2 == 1 {
        StrategyTag::AutomataOdd
    } else {
        StrategyTag::AutomataEven
    }
}

/// The strategy with a guarantee for `seat` on `spec`, if any. Single-row
/// boards with `k >= 3` resolve to the pair strategy.
pub fn auto_kind(spec: &BoardSpec, seat: Player) -> Option<StrategyKind> {
    [
        StrategyTag::TakeEven,
        StrategyTag::DelayedTakeEven,
        StrategyTag::PairTwoRule,
        StrategyTag::K2Template,
    ]
    .into_iter()
    .map(|tag| StrategyKind::new(tag, seat))
    .find(|kind| kind.applies_to(spec))
}

/// Move chosen by `kind` in `state`.
pub fn strategy_move(kind: StrategyKind, state: &GameState) -> Result<usize, StrategyError> {
    kind.check(&state.spec())?;
    if state.is_over() {
        return Err(not_applicable("game is over"));
    }
    if state.to_move() != kind.seat {
        return Err(not_applicable(format!("{} is not to move", kind.seat)));
    }
    let row0 = || Row::new(state.row(0));
    match kind.tag {
        StrategyTag::TakeEven => take_even_move(state),
        StrategyTag::DelayedTakeEven => delayed_take_even_move(state, kind.seat),
        StrategyTag::PairTwoRule => pair_move(&row0(), &PairLabeling::new(state.width()), kind.seat),
        StrategyTag::K2Template => k2_move(&row0(), kind.seat),
        StrategyTag::AutomataOdd | StrategyTag::AutomataEven => {
            let row = row0();
            let segments = split_segments(&row, kind.seat)?;
            automata_move(&segments, Parity::of_empties(row.open_count())).map(|(_, col)| col)
        }
    }
}

/// Protocol names for strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrategyName {
    TakeEven,
    DelayedTakeEven,
    Pair,
    K2,
    Automata,
    Auto,
}

impl StrategyName {
    pub const ALL: [StrategyName; 6] = [
        StrategyName::TakeEven,
        StrategyName::DelayedTakeEven,
        StrategyName::Pair,
        StrategyName::K2,
        StrategyName::Automata,
        StrategyName::Auto,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StrategyName::TakeEven => "take-even",
            StrategyName::DelayedTakeEven => "delayed-take-even",
            StrategyName::Pair => "pair",
            StrategyName::K2 => "k2",
            StrategyName::Automata => "automata",
            StrategyName::Auto => "auto",
        }
    }

    /// The concrete kind for `seat` on `spec`, or `None` when the named
    /// strategy has no guarantee there.
    pub fn resolve(self, spec: &BoardSpec, seat: Player) -> Option<StrategyKind> {
        let tag = match self {
            StrategyName::Auto => return auto_kind(spec, seat),
            StrategyName::TakeEven => StrategyTag::TakeEven,
            StrategyName::DelayedTakeEven => StrategyTag::DelayedTakeEven,
            StrategyName::Pair => StrategyTag::PairTwoRule,
            StrategyName::K2 => StrategyTag::K2Template,
            StrategyName::Automata => automata_tag(spec.width().finite()? as usize, seat),
        };
        let kind = StrategyKind::new(tag, seat);
        kind.applies_to(spec).then_some(kind)
    }
}

impl From<StrategyTag> for StrategyName {
    fn from(tag: StrategyTag) -> Self {
        match tag {
            StrategyTag::TakeEven => StrategyName::TakeEven,
            StrategyTag::DelayedTakeEven => StrategyName::DelayedTakeEven,
            StrategyTag::PairTwoRule => StrategyName::Pair,
            StrategyTag::K2Template => StrategyName::K2,
            StrategyTag::AutomataOdd | StrategyTag::AutomataEven => StrategyName::Automata,
        }
    }
}

impl fmt::Display for StrategyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StrategyName {
    type Err = StrategyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        StrategyName::ALL
            .into_iter()
            .find(|n| n.as_str() == s.trim())
            .ok_or_else(|| not_applicable(format!("unknown strategy {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::Rules;

    fn spec(w: u32, h: u32, k: u32) -> BoardSpec {
        BoardSpec::finite(w, h, k).unwrap()
    }

    fn after(spec: BoardSpec, moves: &[usize]) -> GameState {
        GameState::replay(spec, Rules::default(), moves).unwrap()
    }

    #[test]
    fn dispatch_examples() {
        let te = StrategyKind::new(StrategyTag::TakeEven, Player::P2);
        assert_eq!(strategy_move(te, &after(spec(7, 6, 4), &[3])), Ok(3));
        let pair = StrategyKind::new(StrategyTag::PairTwoRule, Player::P2);
        assert_eq!(strategy_move(pair, &after(spec(8, 1, 3), &[2])), Ok(3));
        let k2 = StrategyKind::new(StrategyTag::K2Template, Player::P2);
        let reply = strategy_move(k2, &after(spec(3, 1, 2), &[1])).unwrap();
        assert!(reply == 0 || reply == 2);
    }

    #[test]
    fn wrong_turn_is_not_applicable() {
        let te = StrategyKind::new(StrategyTag::TakeEven, Player::P2);
        let fresh = GameState::new(spec(7, 6, 4)).unwrap();
        assert!(matches!(strategy_move(te, &fresh), Err(StrategyError::NotApplicable(_))));
    }

    #[test]
    fn applicability() {
        use StrategyTag::*;
        let p1 = Player::P1;
        let p2 = Player::P2;
        assert!(StrategyKind::new(TakeEven, p2).applies_to(&spec(7, 6, 4)));
        assert!(!StrategyKind::new(TakeEven, p1).applies_to(&spec(7, 6, 4)));
        assert!(!StrategyKind::new(TakeEven, p2).applies_to(&spec(3, 6, 4)));
        assert!(StrategyKind::new(DelayedTakeEven, p2).applies_to(&spec(6, 3, 3)));
        assert!(StrategyKind::new(DelayedTakeEven, p1).applies_to(&spec(5, 3, 3)));
        assert!(!StrategyKind::new(DelayedTakeEven, p2).applies_to(&spec(5, 3, 3)));
        assert!(StrategyKind::new(DelayedTakeEven, p2).applies_to(&spec(3, 3, 2)));
        assert!(StrategyKind::new(K2Template, p1).applies_to(&spec(6, 1, 2)));
        assert!(!StrategyKind::new(K2Template, p1).applies_to(&spec(8, 1, 2)));
        assert_eq!(automata_tag(9, p1), AutomataOdd);
        assert_eq!(automata_tag(9, p2), AutomataEven);
        assert_eq!(automata_tag(8, p2), AutomataOdd);
    }

    #[test]
    fn guarantees() {
        let k2 = StrategyKind::new(StrategyTag::K2Template, Player::P2);
        assert_eq!(k2.guarantee(&spec(8, 1, 2)), Some(Claim::AlwaysWins));
        assert_eq!(k2.guarantee(&spec(4, 1, 2)), Some(Claim::NeverLoses));
        let pair = StrategyKind::new(StrategyTag::PairTwoRule, Player::P1);
        assert_eq!(pair.guarantee(&spec(9, 1, 3)), Some(Claim::NeverConnectsKRelaxed));
        assert_eq!(pair.guarantee(&spec(9, 2, 3)), None);
    }

    #[test]
    fn auto_resolution() {
        let auto = |w, h, k, seat| auto_kind(&spec(w, h, k), seat).map(|k| k.tag);
        assert_eq!(auto(7, 6, 4, Player::P2), Some(StrategyTag::TakeEven));
        assert_eq!(auto(7, 6, 4, Player::P1), None);
        assert_eq!(auto(5, 3, 3, Player::P1), Some(StrategyTag::DelayedTakeEven));
        assert_eq!(auto(9, 1, 3, Player::P2), Some(StrategyTag::PairTwoRule));
        assert_eq!(auto(8, 1, 2, Player::P2), Some(StrategyTag::K2Template));
        assert_eq!(auto(2, 5, 4, Player::P2), None);
    }

    #[test]
    fn names_round_trip() {
        for name in StrategyName::ALL {
            assert_eq!(name.as_str().parse::<StrategyName>().unwrap(), name);
            let json = serde_json::to_string(&name).unwrap();
            assert_eq!(json, format!("\"{}\"", name.as_str()));
        }
        assert!("nosuch".parse::<StrategyName>().is_err());
        assert_eq!(
            StrategyName::Automata.resolve(&spec(9, 1, 3), Player::P2).map(|k| k.tag),
            Some(StrategyTag::AutomataEven)
        );
    }
}
