mod common;

use misere_core::solver::{Budget, Solver};
use misere_core::strategies::{
    automata_tag, classify_play, k2_move, pair_move, strategy_move, take_even_move, PairLabeling, PlayKind, Row,
    StrategyError, StrategyKind, StrategyTag,
};
use misere_core::verifier::{
    row_parity_separation, take_even_length_bound, verify_strategy, verify_strategy_with, VerifyOptions,
};
use misere_core::{Claim, GameState, Outcome, Player, Rules};

use common::spec;

#[test]
fn take_even_reply_is_always_legal_and_rows_separate() {
    for (w, h, k) in [(4, 2, 3), (5, 4, 3), (7, 6, 4), (3, 4, 2)] {
        let kind = StrategyKind::new(StrategyTag::TakeEven, Player::P2);
        let report = verify_strategy_with(
            &spec(w, h, k),
            kind,
            Claim::AlwaysWins,
            VerifyOptions::default(),
            &mut row_parity_separation,
        )
        .unwrap();
        assert!(report.passed(), "{report}");
        assert!(report.max_game_length <= take_even_length_bound(w as usize, h as usize, k as usize));
    }
}

#[test]
fn take_even_needs_a_previous_move() {
    let s = GameState::new(spec(4, 2, 3)).unwrap();
    assert!(matches!(take_even_move(&s), Err(StrategyError::NotApplicable(_))));
}

#[test]
fn pair_examples() {
    let row = |s: &str| s.parse::<Row>().unwrap();
    assert_eq!(pair_move(&row("--X-----"), &PairLabeling::new(8), Player::P2), Ok(3));
    assert_eq!(pair_move(&row("-------"), &PairLabeling::new(7), Player::P1), Ok(6));
    assert_eq!(pair_move(&row("--------"), &PairLabeling::new(8), Player::P1), Ok(7));
}

#[test]
fn pair_and_automata_differ_in_moves_but_share_the_guarantee() {
    let mut differing = 0;
    for w in 3..=12u32 {
        let s = spec(w, 1, 3);
        for seat in [Player::P1, Player::P2] {
            let pair = StrategyKind::new(StrategyTag::PairTwoRule, seat);
            let auto = StrategyKind::new(automata_tag(w as usize, seat), seat);
            for kind in [pair, auto] {
                let r = verify_strategy(&s, kind, Claim::NeverConnectsKRelaxed).unwrap();
                assert!(r.passed(), "{r}");
            }
            let start = GameState::new(s).unwrap();
            let probe = if seat == Player::P1 { start } else { start.apply_move(0).unwrap() };
            if strategy_move(pair, &probe).unwrap() != strategy_move(auto, &probe).unwrap() {
                differing += 1;
            }
        }
    }
    assert!(differing > 0);
}

#[test]
fn k2_odd_width_opening_replies() {
    let row = |s: &str| s.parse::<Row>().unwrap();
    // opener on 0-based column 2 (an odd-numbered space counting from 1)
    let before = row("--X--");
    let reply = k2_move(&before, Player::P2).unwrap();
    assert!(reply == 0 || reply == 4);
    let class = classify_play(&before, reply, Player::P2).unwrap();
    assert_eq!(class.kind, PlayKind::Offensive);
    assert!(class.exclusive);

    // w=3, opener in the middle: a wall, and both walls win for O
    let solver = Solver::default();
    let s = GameState::replay(spec(3, 1, 2), Rules::default(), &[1]).unwrap();
    let kind = StrategyKind::new(StrategyTag::K2Template, Player::P2);
    let reply = strategy_move(kind, &s).unwrap();
    assert_eq!(reply, 0);
    for wall in [0, 2] {
        let after = s.apply_move(wall).unwrap();
        assert_eq!(solver.solve(&after, Budget::unlimited()).unwrap().outcome, Outcome::P2Win);
    }
}

#[test]
fn k2_even_width_takes_the_opposite_wall_then_double_contradicts() {
    let solver = Solver::default();
    let s = GameState::replay(spec(8, 1, 2), Rules::default(), &[0]).unwrap();
    let kind = StrategyKind::new(StrategyTag::K2Template, Player::P2);
    assert_eq!(strategy_move(kind, &s), Ok(7));
    let s = s.apply_move(7).unwrap();
    let row = Row::new(s.row(0));
    let mut checked = 0;
    for col in row.open_cells().collect::<Vec<_>>() {
        let Ok(c) = classify_play(&row, col, Player::P1) else { continue };
        if c.kind != PlayKind::InTemplate {
            continue;
        }
        let after = s.apply_move(col).unwrap();
        let reply = strategy_move(kind, &after).unwrap();
        let after_row = Row::new(after.row(0));
        let class = classify_play(&after_row, reply, Player::P2).unwrap();
        assert_eq!(class.kind, PlayKind::DoubleContradiction, "X at {col}");
        let stretch = misere_core::strategies::template_of(&after_row)
            .unwrap()
            .into_iter()
            .find(|t| (t.start..t.end).contains(&reply))
            .unwrap();
        assert!(stretch.len() >= 3);
        let next = after.apply_move(reply).unwrap();
        assert_eq!(solver.solve(&next, Budget::unlimited()).unwrap().outcome, Outcome::P2Win);
        checked += 1;
    }
    assert!(checked > 0);
}

#[test]
fn k2_p2_guarantees_by_width() {
    for w in 1..=12u32 {
        let kind = StrategyKind::new(StrategyTag::K2Template, Player::P2);
        let s = spec(w, 1, 2);
        let claim = kind.guarantee(&s).unwrap();
        let expected = if matches!(w, 1 | 2 | 4 | 6) { Claim::NeverLoses } else { Claim::AlwaysWins };
        assert_eq!(claim, expected, "w={w}");
        let r = verify_strategy(&s, kind, claim).unwrap();
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn delayed_take_even_examples() {
    let kind = StrategyKind::new(StrategyTag::DelayedTakeEven, Player::P2);
    let s = GameState::replay(spec(6, 3, 3), Rules::default(), &[2]).unwrap();
    let reply = strategy_move(kind, &s).unwrap();
    assert_eq!(s.heights()[reply], 0);
    let s = s.apply_move(reply).unwrap().apply_move(2).unwrap();
    assert_eq!(strategy_move(kind, &s), Ok(2));

    let p1 = StrategyKind::new(StrategyTag::DelayedTakeEven, Player::P1);
    assert_eq!(strategy_move(p1, &GameState::new(spec(5, 3, 3)).unwrap()), Ok(4));
}

mod robustness {
    use super::*;
    use proptest::prelude::*;

    const TAGS: [StrategyTag; 6] = [
        StrategyTag::TakeEven,
        StrategyTag::DelayedTakeEven,
        StrategyTag::PairTwoRule,
        StrategyTag::K2Template,
        StrategyTag::AutomataOdd,
        StrategyTag::AutomataEven,
    ];

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]

        /// Off-policy positions give an error or a legal column, never a panic.
        #[test]
        fn any_reachable_state(w in 1u32..9, h in 1u32..5, k in 2u32..5, picks in prop::collection::vec(0usize..64, 0..30)) {
            let mut s = GameState::new(spec(w, h, k)).unwrap();
            for p in picks {
                if s.is_over() {
                    break;
                }
                let moves = s.legal_moves();
                s = s.apply_move(moves[p % moves.len()]).unwrap();
                for tag in TAGS {
                    for seat in [Player::P1, Player::P2] {
                        let kind = StrategyKind::new(tag, seat);
                        if kind.applies_to(&s.spec()) {
                            if let Ok(col) = strategy_move(kind, &s) {
                                prop_assert!(s.is_legal(col));
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn delayed_take_even_off_policy_row() {
    // P2 stacked instead of answering in the bottom row
    let s = GameState::replay(spec(3, 3, 2), Rules::default(), &[0, 0, 2]).unwrap();
    let kind = StrategyKind::new(StrategyTag::DelayedTakeEven, Player::P2);
    if let Ok(col) = strategy_move(kind, &s) {
        assert!(s.is_legal(col));
    }
}
