//! Exhaustive strategy checking.
//!
//! The strategist's moves are fixed by its policy and every opponent move is
//! enumerated. Nodes are positions with the opponent to move; each edge is an
//! opponent move followed by the strategist's reply. Positions are memoized
//! by their packed key, which is sound because every policy here depends only
//! on the cells and the opponent's last move.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::board::{BoardSpec, GameError, GameState, Outcome, Player, Rules, Status};
use crate::oracle::{self, Rule};
use crate::solver::{encode, Budget, SolveError, Solver};
use crate::strategies::{
    self, classify_play, k2, split_segments, strategy_move, tally_of, Claim, PairLabeling, Row, SegmentClass,
    StrategyKind, StrategyTag,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("verification budget exhausted after {states} states")]
    BudgetExceeded { states: usize },
    #[error("strategy {kind} does not apply to {spec}")]
    NotApplicable { kind: StrategyKind, spec: BoardSpec },
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail { reason: String, counterexample: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub spec: BoardSpec,
    pub kind: StrategyKind,
    pub claim: Claim,
    /// Distinct opponent-to-move positions explored (tree nodes without memo).
    pub states_visited: usize,
    /// Most pieces on the board at any terminal position reached.
    pub max_game_length: usize,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// One JSON line.
    pub fn certificate(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}: {} states, max length {}",
            self.spec, self.kind, self.claim, self.states_visited, self.max_game_length
        )?;
        match &self.verdict {
            Verdict::Pass => write!(f, ", pass"),
            Verdict::Fail { reason, counterexample } => {
                write!(f, ", FAIL: {reason} after {counterexample:?}")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub memo: bool,
    pub max_states: Option<usize>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            memo: true,
            max_states: None,
        }
    }
}

/// Called on every position reached; an `Err` fails the run.
pub type Inspector<'a> = dyn FnMut(&GameState) -> Result<(), String> + 'a;

pub fn verify_strategy(spec: &BoardSpec, kind: StrategyKind, claim: Claim) -> Result<VerificationReport, VerifyError> {
    verify_strategy_with(spec, kind, claim, VerifyOptions::default(), &mut |_| Ok(()))
}

pub fn verify_strategy_with(
    spec: &BoardSpec,
    kind: StrategyKind,
    claim: Claim,
    options: VerifyOptions,
    inspect: &mut Inspector<'_>,
) -> Result<VerificationReport, VerifyError> {
    if !kind.applies_to(spec) {
        return Err(VerifyError::NotApplicable { kind, spec: *spec });
    }
    let rules = match claim {
        Claim::NeverConnectsKRelaxed => Rules::relaxed_for(kind.seat.opponent()),
        _ => Rules::default(),
    };
    let mut walk = Walk {
        kind,
        claim,
        options,
        inspect,
        seen: HashSet::new(),
        states: 0,
        max_len: 0,
    };
    let start = GameState::with_rules(*spec, rules)?;
    let outcome = match walk.start(start) {
        Ok(()) => Verdict::Pass,
        Err(Stop::Fail(reason, line)) => Verdict::Fail {
            reason,
            counterexample: line,
        },
        Err(Stop::Error(e)) => return Err(e),
    };
    Ok(VerificationReport {
        spec: *spec,
        kind,
        claim,
        states_visited: walk.states,
        max_game_length: walk.max_len,
        verdict: outcome,
    })
}

enum Stop {
    Fail(String, Vec<usize>),
    Error(VerifyError),
}

struct Walk<'a, 'b> {
    kind: StrategyKind,
    claim: Claim,
    options: VerifyOptions,
    inspect: &'a mut Inspector<'b>,
    seen: HashSet<u64>,
    states: usize,
    max_len: usize,
}

impl Walk<'_, '_> {
    fn start(&mut self, state: GameState) -> Result<(), Stop> {
        self.look(&state)?;
        if self.kind.seat == Player::P1 {
            let next = self.reply(&state)?;
            self.node(next)
        } else {
            self.node(state)
        }
    }

    fn look(&mut self, state: &GameState) -> Result<(), Stop> {
        (self.inspect)(state).map_err(|reason| Stop::Fail(reason, state.history().to_vec()))
    }

    fn reply(&mut self, state: &GameState) -> Result<GameState, Stop> {
        let fail = |reason: String| Stop::Fail(reason, state.history().to_vec());
        let col = strategy_move(self.kind, state).map_err(|e| fail(format!("strategy error: {e}")))?;
        let next = state
            .apply_move(col)
            .map_err(|e| fail(format!("strategy chose column {col}: {e}")))?;
        self.look(&next)?;
        Ok(next)
    }

    fn terminal(&mut self, state: &GameState) -> Result<(), Stop> {
        self.max_len = self.max_len.max(state.move_count());
        let Status::Ended(outcome) = state.status() else {
            unreachable!("terminal check on a live position")
        };
        let seat = self.kind.seat;
        let ok = match self.claim {
            Claim::AlwaysWins => outcome == Outcome::win_for(seat),
            Claim::NeverLoses | Claim::NeverConnectsKRelaxed => outcome != Outcome::win_for(seat.opponent()),
        };
        if ok {
            Ok(())
        } else {
            Err(Stop::Fail(format!("ended {outcome}"), state.history().to_vec()))
        }
    }

    /// `state` has the opponent to move, or is terminal.
    fn node(&mut self, state: GameState) -> Result<(), Stop> {
        if self.options.memo {
            let key = encode(&state).map_err(|e| Stop::Error(e.into()))?.key();
            if !self.seen.insert(key) {
                return Ok(());
            }
        }
        self.states += 1;
        if let Some(limit) = self.options.max_states {
            if self.states > limit {
                return Err(Stop::Error(VerifyError::BudgetExceeded { states: self.states }));
            }
        }
        if state.is_over() {
            return self.terminal(&state);
        }
        for col in state.legal_moves() {
            let after = state.apply_move(col).expect("legal move");
            self.look(&after)?;
            if after.is_over() {
                self.terminal(&after)?;
                continue;
            }
            let next = self.reply(&after)?;
            self.node(next)?;
        }
        Ok(())
    }
}

/// Longest possible take-even game: `1 + (w - floor(w/k)) * h`.
pub fn take_even_length_bound(w: usize, h: usize, k: usize) -> usize {
    1 + (w - w / k) * h
}

/// Under take-even, P1 holds only even rows and P2 only odd rows (0-based).
pub fn row_parity_separation(state: &GameState) -> Result<(), String> {
    for col in 0..state.width() {
        for row in 0..state.heights()[col] {
            let want = if row % 2 == 0 { Player::P1 } else { Player::P2 };
            if state.cell(col, row) != Some(want) {
                return Err(format!("{} on row {row} of column {col}", want.opponent()));
            }
        }
    }
    Ok(())
}

/// Pair-strategy safety for `strategist`: at its turn at most one pair is
/// half-filled by the opponent; a full row is pair-balanced.
pub fn pair_safety(strategist: Player) -> impl FnMut(&GameState) -> Result<(), String> {
    move |state: &GameState| {
        let row = Row::new(state.row(0));
        let labels = PairLabeling::new(row.width());
        if row.open_count() == 0 {
            return if labels.is_balanced(&row) {
                Ok(())
            } else {
                Err(format!("final row {row} is not pair-balanced"))
            };
        }
        if state.to_move() == strategist && labels.half_filled_by(&row, strategist.opponent()).len() > 1 {
            return Err(format!("several half-filled pairs in {row}"));
        }
        Ok(())
    }
}

/// Every segment is canonical and no even E segment appears.
pub fn automata_closure(strategist: Player) -> impl FnMut(&GameState) -> Result<(), String> {
    move |state: &GameState| {
        let row = Row::new(state.row(0));
        let segments = split_segments(&row, strategist).map_err(|e| format!("{row}: {e}"))?;
        match segments.iter().find(|s| s.class == SegmentClass::E && !s.is_odd()) {
            Some(s) => Err(format!("{row} contains {s}")),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub spec: BoardSpec,
    pub oracle: Outcome,
    pub rule: Rule,
    pub solver: Option<Outcome>,
    pub error: Option<String>,
}

impl TableRow {
    pub fn matches(&self) -> bool {
        self.solver == Some(self.oracle)
    }
}

/// Oracle against solver on each spec. Solver failures are recorded per row.
pub fn verify_table(specs: &[BoardSpec], solver: &Solver, budget: Budget) -> Vec<TableRow> {
    specs
        .par_iter()
        .map(|spec| {
            let predicted = oracle::outcome(spec);
            let solved = GameState::new(*spec)
                .map_err(SolveError::from)
                .and_then(|s| solver.solve(&s, budget));
            TableRow {
                spec: *spec,
                oracle: predicted.outcome,
                rule: predicted.rule,
                solver: solved.as_ref().ok().map(|s| s.outcome),
                error: solved.err().map(|e| e.to_string()),
            }
        })
        .collect()
}

/// Finite specs with `w * h <= max_cells` and `k` in `ks`.
pub fn table_grid(max_cells: u32, ks: std::ops::RangeInclusive<u32>) -> Vec<BoardSpec> {
    let mut out = Vec::new();
    for k in ks {
        for w in 1..=max_cells {
            for h in 1..=max_cells / w {
                out.push(BoardSpec::finite(w, h, k).expect("valid dimensions"));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DuelRecord {
    pub spec: BoardSpec,
    pub kind: StrategyKind,
    pub moves: Vec<usize>,
    pub outcome: Outcome,
    pub expected: Outcome,
}

impl DuelRecord {
    pub fn achieved(&self) -> bool {
        self.outcome == self.expected
    }
}

/// One game of the strategy against solver-optimal play.
pub fn strategy_vs_solver_duel(
    spec: &BoardSpec,
    kind: StrategyKind,
    solver: &Solver,
    budget: Budget,
) -> Result<DuelRecord, VerifyError> {
    if !kind.applies_to(spec) {
        return Err(VerifyError::NotApplicable { kind, spec: *spec });
    }
    let mut state = GameState::new(*spec)?;
    while !state.is_over() {
        let col = if state.to_move() == kind.seat {
            strategy_move(kind, &state).map_err(|e| match e {
                strategies::StrategyError::Solver(s) => VerifyError::Solve(s),
                other => VerifyError::Game(GameError::InvalidPosition(other.to_string())),
            })?
        } else {
            solver.best_move(&state, budget)?
        };
        state.play(col)?;
    }
    let Status::Ended(outcome) = state.status() else {
        unreachable!()
    };
    Ok(DuelRecord {
        spec: *spec,
        kind,
        moves: state.history().to_vec(),
        outcome,
        expected: oracle::outcome(spec).outcome,
    })
}

/// Result of checking every non-losing `k = 2` single-row play.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaReport {
    pub rows: usize,
    pub plays: usize,
    pub mismatches: Vec<String>,
}

/// Rows reachable in a `k = 2` single-row game of width `w`: alternating
/// counts starting with X, no two adjacent same-owner pieces, at least one
/// piece.
pub fn k2_rows(w: usize) -> Vec<Row> {
    let mut out = Vec::new();
    let mut cells = vec![None; w];
    fn rec(i: usize, cells: &mut Vec<Option<Player>>, out: &mut Vec<Row>) {
        if i == cells.len() {
            let row = Row::new(cells.clone());
            let (x, o) = (row.count(Player::P1), row.count(Player::P2));
            if x + o > 0 && (x == o || x == o + 1) {
                out.push(row);
            }
            return;
        }
        for c in [None, Some(Player::P1), Some(Player::P2)] {
            if c.is_some() && i > 0 && cells[i - 1] == c {
                continue;
            }
            cells[i] = c;
            rec(i + 1, cells, out);
        }
        cells[i] = None;
    }
    rec(0, &mut cells, &mut out);
    out
}

/// Measured tally change against the class delta, for every position with
/// `w <= max_width`.
pub fn check_play_deltas(max_width: usize) -> DeltaReport {
    let mut report = DeltaReport::default();
    for w in 1..=max_width {
        for row in k2_rows(w) {
            report.rows += 1;
            let player = row.to_move();
            let before = tally_of(&row).expect("row has a piece");
            for col in row.open_cells().collect::<Vec<_>>() {
                let Ok(class) = classify_play(&row, col, player) else {
                    continue;
                };
                report.plays += 1;
                let after = tally_of(&row.with(col, player)).expect("row has a piece");
                let measured = after.delta(&before);
                if measured != class.delta(player) {
                    report.mismatches.push(format!(
                        "{row} {player}@{col}: {:?} predicts {:?}, measured {measured:?}",
                        class.kind,
                        class.delta(player)
                    ));
                }
            }
        }
    }
    report
}

/// Closed-form tally against the three simulated tabulations.
pub fn check_tally_invariance(max_width: usize) -> DeltaReport {
    let mut report = DeltaReport::default();
    for w in 1..=max_width {
        for row in k2_rows(w) {
            report.rows += 1;
            let closed = tally_of(&row).expect("row has a piece");
            for order in [k2::Tabulation::LeftToRight, k2::Tabulation::RightToLeft, k2::Tabulation::OutsideIn] {
                let t = k2::tally_with(&row, order).expect("row has a piece");
                if t != closed {
                    report.mismatches.push(format!("{row}: {order:?} gives {t}, closed form {closed}"));
                }
            }
        }
    }
    report
}

/// One line of a suite run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteCheck {
    pub label: String,
    pub passed: bool,
    pub detail: String,
    pub report: Option<VerificationReport>,
}

impl SuiteCheck {
    fn from_report(report: VerificationReport, extra: Option<(bool, String)>) -> SuiteCheck {
        let (extra_ok, extra_detail) = extra.unwrap_or((true, String::new()));
        SuiteCheck {
            label: format!("{} {}", report.spec, report.kind),
            passed: report.passed() && extra_ok,
            detail: format!("{report}{extra_detail}"),
            report: Some(report),
        }
    }

    fn plain(label: impl Into<String>, passed: bool, detail: impl Into<String>) -> SuiteCheck {
        SuiteCheck {
            label: label.into(),
            passed,
            detail: detail.into(),
            report: None,
        }
    }

    pub fn certificate(&self) -> String {
        match &self.report {
            Some(r) => r.certificate(),
            None => serde_json::json!({
                "label": self.label,
                "result": if self.passed { "pass" } else { "fail" },
                "detail": self.detail,
            })
            .to_string(),
        }
    }
}

pub const SUITES: [&str; 8] = [
    "take-even", "take-even-family", "delayed-take-even", "pair", "automata", "k2", "outcomes", "k2-deltas",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Cell ceiling for the table sweep.
    pub max_cells: u32,
    /// Largest single-row width for the relaxed-rules suites.
    pub max_width: u32,
    pub budget: Budget,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            max_cells: 16,
            max_width: 12,
            budget: Budget::unlimited(),
        }
    }
}

fn spec(w: u32, h: u32, k: u32) -> BoardSpec {
    BoardSpec::finite(w, h, k).expect("valid dimensions")
}

fn run_take_even(w: u32, h: u32, k: u32) -> Result<SuiteCheck, VerifyError> {
    let kind = StrategyKind::new(StrategyTag::TakeEven, Player::P2);
    let report = verify_strategy_with(
        &spec(w, h, k),
        kind,
        Claim::AlwaysWins,
        VerifyOptions::default(),
        &mut row_parity_separation,
    )?;
    let bound = take_even_length_bound(w as usize, h as usize, k as usize);
    let within = report.max_game_length <= bound;
    Ok(SuiteCheck::from_report(report, Some((within, format!(", bound {bound}")))))
}

fn run_claimed(spec: BoardSpec, kind: StrategyKind, inspect: &mut Inspector<'_>) -> Result<SuiteCheck, VerifyError> {
    let claim = kind.guarantee(&spec).ok_or(VerifyError::NotApplicable { kind, spec })?;
    let report = verify_strategy_with(&spec, kind, claim, VerifyOptions::default(), inspect)?;
    Ok(SuiteCheck::from_report(report, None))
}

fn table_checks(specs: &[BoardSpec], budget: Budget) -> Vec<SuiteCheck> {
    verify_table(specs, &Solver::with_max_cells(64), budget)
        .into_iter()
        .map(|row| {
            let detail = match (&row.solver, &row.error) {
                (Some(s), _) => format!("oracle {} ({}), solver {s}", row.oracle, row.rule),
                (None, Some(e)) => format!("oracle {} ({}), solver error: {e}", row.oracle, row.rule),
                (None, None) => unreachable!("either a value or an error"),
            };
            SuiteCheck::plain(format!("{} table", row.spec), row.matches(), detail)
        })
        .collect()
}

/// Runs a named suite. Each entry is one checked claim.
pub fn run_suite(name: &str, options: &SuiteOptions) -> Result<Vec<SuiteCheck>, VerifyError> {
    let mut out = Vec::new();
    let never = &mut |_: &GameState| Ok(());
    match name {
        "take-even" => out.push(run_take_even(7, 6, 4)?),
        "take-even-family" => {
            for k in [3, 4] {
                for h in [2, 4] {
                    for w in k..=7 {
                        out.push(run_take_even(w, h, k)?);
                    }
                }
            }
        }
        "delayed-take-even" => {
            for (w, seat) in [(4, Player::P2), (6, Player::P2), (5, Player::P1), (7, Player::P1)] {
                let kind = StrategyKind::new(StrategyTag::DelayedTakeEven, seat);
                out.push(run_claimed(spec(w, 3, 3), kind, never)?);
            }
        }
        "pair" | "automata" => {
            for w in 3..=options.max_width {
                for seat in [Player::P1, Player::P2] {
                    let s = spec(w, 1, 3);
                    let check = if name == "pair" {
                        let kind = StrategyKind::new(StrategyTag::PairTwoRule, seat);
                        run_claimed(s, kind, &mut pair_safety(seat))?
                    } else {
                        let kind = StrategyKind::new(strategies::automata_tag(w as usize, seat), seat);
                        run_claimed(s, kind, &mut automata_closure(seat))?
                    };
                    out.push(check);
                }
            }
        }
        "k2" => {
            let k2 = |seat| StrategyKind::new(StrategyTag::K2Template, seat);
            for w in [3, 4, 5, 6, 7, 8] {
                out.push(run_claimed(spec(w, 1, 2), k2(Player::P2), never)?);
            }
            for w in [1, 2, 4, 6] {
                out.push(run_claimed(spec(w, 1, 2), k2(Player::P1), never)?);
            }
            for h in [2, 3] {
                for w in [2, 3, 4] {
                    let s = spec(w, h, 2);
                    let kind = strategies::auto_kind(&s, Player::P2).ok_or(VerifyError::NotApplicable {
                        kind: k2(Player::P2),
                        spec: s,
                    })?;
                    out.push(run_claimed(s, kind, never)?);
                }
            }
            let row_specs: Vec<BoardSpec> = (1..=10).map(|w| spec(w, 1, 2)).collect();
            out.extend(table_checks(&row_specs, options.budget));
        }
        "outcomes" => {
            out.extend(table_checks(&table_grid(options.max_cells, 2..=5), options.budget));
        }
        "k2-deltas" => {
            let deltas = check_play_deltas(8);
            out.push(SuiteCheck::plain(
                "k=2 play deltas, w<=8",
                deltas.mismatches.is_empty(),
                format!("{} rows, {} plays, {} mismatches", deltas.rows, deltas.plays, deltas.mismatches.len()),
            ));
            let inv = check_tally_invariance(8);
            out.push(SuiteCheck::plain(
                "k=2 tally invariance, w<=8",
                inv.mismatches.is_empty(),
                format!("{} rows, {} mismatches", inv.rows, inv.mismatches.len()),
            ));
        }
        other => return Err(VerifyError::UnknownSuite(other.to_string())),
    }
    Ok(out)
}
