//! Closed-form game value for every `(w, h, k)`, including infinite extents.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::board::{BoardSpec, Extent, Outcome};

/// Which case of the outcome table decided a configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    InfiniteExtent,
    NarrowBoard,
    K2SingleRowDraw,
    K2SingleRowWin,
    K2SingleColumn,
    K2Tall,
    SingleRow,
    EvenHeight,
    OddHeightOddWidth,
    OddHeightEvenWidth,
}

impl Rule {
    pub const ALL: [Rule; 10] = [
        Rule::InfiniteExtent,
        Rule::NarrowBoard,
        Rule::K2SingleRowDraw,
        Rule::K2SingleRowWin,
        Rule::K2SingleColumn,
        Rule::K2Tall,
        Rule::SingleRow,
        Rule::EvenHeight,
        Rule::OddHeightOddWidth,
        Rule::OddHeightEvenWidth,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Rule::InfiniteExtent => "infinite extent",
            Rule::NarrowBoard => "k>w",
            Rule::K2SingleRowDraw => "k=2, h=1, w∈{1,2,4,6}",
            Rule::K2SingleRowWin => "k=2, h=1",
            Rule::K2SingleColumn => "k=2, w=1",
            Rule::K2Tall => "k=2, h>1",
            Rule::SingleRow => "k≥3, h=1",
            Rule::EvenHeight => "k≥3, even h",
            Rule::OddHeightOddWidth => "k≥3, odd h, odd w",
            Rule::OddHeightEvenWidth => "k≥3, odd h, even w",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigOutcome {
    pub spec: BoardSpec,
    pub outcome: Outcome,
    pub rule: Rule,
}

impl fmt::Display for ConfigOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.outcome, self.rule)
    }
}

/// Value of the empty board under optimal play.
///
/// Cases are tried in a fixed order: infinite extents, then `k >= 3` with
/// `w < k`, then the `k = 2` family, then the general `k >= 3` table.
pub fn outcome(spec: &BoardSpec) -> ConfigOutcome {
    let (outcome, rule) = decide(spec);
    ConfigOutcome {
        spec: *spec,
        outcome,
        rule,
    }
}

fn decide(spec: &BoardSpec) -> (Outcome, Rule) {
    let (w, h) = match (spec.width(), spec.height()) {
        (Extent::Finite(w), Extent::Finite(h)) => (w, h),
        _ => return (Outcome::Draw, Rule::InfiniteExtent),
    };
    let k = spec.k();

    if k >= 3 && w < k {
        return (Outcome::Draw, Rule::NarrowBoard);
    }
    if k == 2 {
        return match (h, w) {
            (1, 1 | 2 | 4 | 6) => (Outcome::Draw, Rule::K2SingleRowDraw),
            (1, _) => (Outcome::P2Win, Rule::K2SingleRowWin),
            (_, 1) => (Outcome::Draw, Rule::K2SingleColumn),
            _ => (Outcome::P2Win, Rule::K2Tall),
        };
    }
    if h == 1 {
        (Outcome::Draw, Rule::SingleRow)
    } else if h % 2 == 0 {
        (Outcome::P2Win, Rule::EvenHeight)
    } else if w % 2 == 1 {
        (Outcome::P1Win, Rule::OddHeightOddWidth)
    } else {
        (Outcome::P2Win, Rule::OddHeightEvenWidth)
    }
}
