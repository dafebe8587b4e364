//! Acceptance run: one PASS/FAIL line per criterion, with time limits.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use misere_core::solver::{Budget, Solver};
use misere_core::verifier::{run_suite, take_even_length_bound, SuiteCheck, SuiteOptions};
use misere_core::{GameState, Outcome};

use common::{shapes, spec, Naive};

const TAKE_EVEN_LIMIT: Duration = Duration::from_secs(1);
const TAKE_EVEN_STATE_CEILING: usize = 4usize.pow(7);
const TAKE_EVEN_LENGTH_CEILING: usize = 37;
const TAKE_EVEN_FAMILY_LIMIT: Duration = Duration::from_secs(30);
const DELAYED_LIMIT: Duration = Duration::from_secs(600);
const PAIR_LIMIT: Duration = Duration::from_secs(60);
const AUTOMATA_LIMIT: Duration = Duration::from_secs(60);
const K2_DELTAS_LIMIT: Duration = Duration::from_secs(10);
const K2_LIMIT: Duration = Duration::from_secs(120);
const OUTCOMES_LIMIT: Duration = Duration::from_secs(600);
const OUTCOMES_MAX_CELLS: u32 = 16;
const EXACTNESS_LIMIT: Duration = Duration::from_secs(600);
const EXACTNESS_MAX_CELLS: u32 = 12;
const DETERMINISM_REPEATS: usize = 3;

struct Line {
    passed: bool,
    detail: String,
}

fn suite(name: &str) -> Line {
    match run_suite(name, &SuiteOptions::default()) {
        Ok(checks) => summarize(&checks),
        Err(e) => Line {
            passed: false,
            detail: format!("suite error: {e}"),
        },
    }
}

fn summarize(checks: &[SuiteCheck]) -> Line {
    let failed: Vec<&SuiteCheck> = checks.iter().filter(|c| !c.passed).collect();
    let states: usize = checks.iter().filter_map(|c| c.report.as_ref()).map(|r| r.states_visited).sum();
    let mut detail = format!("{} checks, {} failed, {} states", checks.len(), failed.len(), states);
    for f in failed.iter().take(3) {
        detail.push_str(&format!("; {}", f.detail));
    }
    Line {
        passed: failed.is_empty() && !checks.is_empty(),
        detail,
    }
}

fn take_even_7x6() -> Line {
    let checks = match run_suite("take-even", &SuiteOptions::default()) {
        Ok(c) => c,
        Err(e) => {
            return Line {
                passed: false,
                detail: e.to_string(),
            }
        }
    };
    let report = checks[0].report.as_ref().expect("strategy report");
    let bound = take_even_length_bound(7, 6, 4);
    Line {
        passed: checks[0].passed
            && report.states_visited <= TAKE_EVEN_STATE_CEILING
            && report.max_game_length <= TAKE_EVEN_LENGTH_CEILING
            && bound == TAKE_EVEN_LENGTH_CEILING,
        detail: format!(
            "{} states (ceiling {TAKE_EVEN_STATE_CEILING}), max length {} (ceiling {TAKE_EVEN_LENGTH_CEILING})",
            report.states_visited, report.max_game_length
        ),
    }
}

fn solver_exactness() -> Line {
    let specs: Vec<_> = [2, 3]
        .into_iter()
        .flat_map(|k| shapes(EXACTNESS_MAX_CELLS).into_iter().map(move |(w, h)| spec(w, h, k)))
        .collect();
    let results: Vec<Result<(), String>> = specs
        .par_iter()
        .map(|s| {
            let state = GameState::new(*s).unwrap();
            let naive = Outcome::from_value(Naive::from_state(&state).value(), state.to_move());
            let solver = Solver::default();
            let first = solver.solve(&state, Budget::unlimited()).map_err(|e| format!("{s}: {e}"))?;
            if first.outcome != naive {
                return Err(format!("{s}: solver {} vs naive {naive}", first.outcome));
            }
            for _ in 0..DETERMINISM_REPEATS {
                for sol in [solver.solve(&state, Budget::unlimited()), solver.solve_parallel(&state, Budget::unlimited())] {
                    let sol = sol.map_err(|e| format!("{s}: {e}"))?;
                    if (sol.outcome, sol.best_move) != (first.outcome, first.best_move) {
                        return Err(format!("{s}: nondeterministic result"));
                    }
                }
            }
            Ok(())
        })
        .collect();
    let errors: Vec<String> = results.into_iter().filter_map(Result::err).collect();
    Line {
        passed: errors.is_empty(),
        detail: format!(
            "{} specs vs naive enumerator, {}x sequential+parallel repeats, {} mismatches{}",
            specs.len(),
            DETERMINISM_REPEATS,
            errors.len(),
            errors.first().map(|e| format!("; {e}")).unwrap_or_default()
        ),
    }
}

fn outcome_table() -> Line {
    let options = SuiteOptions {
        max_cells: OUTCOMES_MAX_CELLS,
        ..SuiteOptions::default()
    };
    match run_suite("outcomes", &options) {
        Ok(checks) => summarize(&checks),
        Err(e) => Line {
            passed: false,
            detail: e.to_string(),
        },
    }
}

type Criterion = (&'static str, Duration, Box<dyn Fn() -> Line>);

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("take-even wins 7x6 k=4 for P2", TAKE_EVEN_LIMIT, Box::new(take_even_7x6)),
        ("take-even bound, h in {2,4}, k in {3,4}, w in k..7", TAKE_EVEN_FAMILY_LIMIT, Box::new(|| suite("take-even-family"))),
        ("delayed take-even on 4x3, 6x3 (P2) and 5x3, 7x3 (P1), k=3", DELAYED_LIMIT, Box::new(|| suite("delayed-take-even"))),
        ("pair strategy never connects 3, relaxed, w<=12", PAIR_LIMIT, Box::new(|| suite("pair"))),
        ("automata strategy relaxed + closure, w<=12", AUTOMATA_LIMIT, Box::new(|| suite("automata"))),
        ("k=2 play classes match tally deltas, w<=8", K2_DELTAS_LIMIT, Box::new(|| suite("k2-deltas"))),
        ("k=2 sweep and strategies", K2_LIMIT, Box::new(|| suite("k2"))),
        ("oracle equals solver, w*h<=16, k in 2..5", OUTCOMES_LIMIT, Box::new(outcome_table)),
        ("solver exact vs naive, w*h<=12, k in {2,3}; deterministic", EXACTNESS_LIMIT, Box::new(solver_exactness)),
    ];
    let mut all = true;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let line = run();
        let elapsed = start.elapsed();
        let passed = line.passed && elapsed <= limit;
        all &= passed;
        println!(
            "{} {name}: {} [{:.2}s, limit {}s]",
            if passed { "PASS" } else { "FAIL" },
            line.detail,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
