mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use misere_core::solver::{decode, encode, Budget, Solver, SolverConfig};
use misere_core::{GameState, Outcome, Rules};

use common::{shapes, spec, Naive};

fn random_live_state(w: u32, h: u32, k: u32, rng: &mut StdRng) -> GameState {
    loop {
        let mut s = GameState::new(spec(w, h, k)).unwrap();
        let depth = rng.gen_range(0..(w * h) as usize);
        for _ in 0..depth {
            let moves = s.legal_moves();
            if moves.is_empty() {
                break;
            }
            s.play(moves[rng.gen_range(0..moves.len())]).unwrap();
        }
        if !s.is_over() {
            return s;
        }
    }
}

#[test]
fn agrees_with_naive_on_random_positions() {
    let mut rng = StdRng::seed_from_u64(2024);
    let solver = Solver::default();
    for (w, h) in shapes(10) {
        for k in [2, 3, 4] {
            for _ in 0..20 {
                let s = random_live_state(w, h, k, &mut rng);
                let naive = Outcome::from_value(Naive::from_state(&s).value(), s.to_move());
                let sol = solver.solve(&s, Budget::unlimited()).unwrap();
                assert_eq!(sol.outcome, naive, "{w}x{h} k={k} {:?}", s.history());
                // the reported move achieves the value
                let best = sol.best_move.unwrap();
                let child = s.apply_move(best).unwrap();
                let child_value = match child.status() {
                    misere_core::Status::Ended(o) => o,
                    _ => solver.solve(&child, Budget::unlimited()).unwrap().outcome,
                };
                assert_eq!(child_value, naive);
            }
        }
    }
}

#[test]
fn symmetry_folding_is_sound() {
    let mut rng = StdRng::seed_from_u64(99);
    let folded = Solver::default();
    let plain = Solver::new(SolverConfig {
        symmetry: false,
        ..SolverConfig::default()
    });
    for (w, h) in shapes(12).into_iter().filter(|&(w, _)| w > 1) {
        for _ in 0..500 {
            let k = rng.gen_range(2..=4);
            let s = random_live_state(w, h, k, &mut rng);
            let a = folded.solve(&s, Budget::unlimited()).unwrap();
            let b = folded.solve(&s.mirror(), Budget::unlimited()).unwrap();
            assert_eq!(a.outcome, b.outcome);
            if w * h <= 8 {
                assert_eq!(a.outcome, plain.solve(&s, Budget::unlimited()).unwrap().outcome);
            }
        }
    }
}

#[test]
fn deterministic_under_parallelism() {
    for (w, h, k) in [(4, 4, 3), (5, 3, 3), (6, 2, 2), (10, 1, 3), (4, 5, 4)] {
        let s = GameState::new(spec(w, h, k)).unwrap();
        let first = Solver::default().solve(&s, Budget::unlimited()).unwrap();
        for _ in 0..4 {
            let p = Solver::default().solve_parallel(&s, Budget::unlimited()).unwrap();
            assert_eq!((p.outcome, p.best_move), (first.outcome, first.best_move));
        }
    }
}

#[test]
fn tiny_tables_still_give_exact_values() {
    let tiny = Solver::new(SolverConfig {
        tt_log2: Some(4),
        ..SolverConfig::default()
    });
    for (w, h, k) in [(4, 3, 3), (5, 2, 3), (7, 1, 2)] {
        let s = GameState::new(spec(w, h, k)).unwrap();
        let naive = Outcome::from_value(Naive::from_state(&s).value(), s.to_move());
        assert_eq!(tiny.solve(&s, Budget::unlimited()).unwrap().outcome, naive);
    }
}

proptest! {
    #[test]
    fn encode_decode_round_trip(w in 1u32..=9, h in 1u32..=6, k in 2u32..=5, picks in prop::collection::vec(0usize..16, 0..54)) {
        let mut s = GameState::new(spec(w, h, k)).unwrap();
        for p in picks {
            let moves = s.legal_moves();
            if moves.is_empty() { break; }
            s.play(moves[p % moves.len()]).unwrap();
        }
        let packed = encode(&s).unwrap();
        let back = decode(&packed).unwrap();
        prop_assert_eq!(back.cells(), s.cells());
        prop_assert_eq!(back.status(), s.status());
        prop_assert_eq!(encode(&back).unwrap(), packed);
        prop_assert_eq!(encode(&s.mirror()).unwrap(), packed.mirrored());
        prop_assert_eq!(packed.canonical_key(), packed.mirrored().canonical_key());
    }
}

#[test]
fn relaxed_rules_are_refused() {
    let s = GameState::with_rules(spec(3, 1, 3), Rules::relaxed_for(misere_core::Player::P1)).unwrap();
    assert!(Solver::default().solve(&s, Budget::unlimited()).is_err());
}
