//! Line-delimited JSON messages. One request per line, one response per
//! request, and every response carries a full snapshot when a game exists.

use serde::{Deserialize, Serialize};

use misere_core::{GameState, Outcome, Player, Status, StrategyName};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Request {
    Newgame {
        width: Option<u32>,
        height: Option<u32>,
        k: Option<u32>,
        /// `null` for two human players.
        #[serde(default, deserialize_with = "explicit_seat")]
        engine_seat: SeatChoice,
        strategy: Option<StrategyName>,
    },
    Move {
        col: usize,
    },
    Hint,
    State,
    Outcome,
    Resign,
}

/// Distinguishes an omitted `engine_seat` from an explicit `null`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(untagged)]
pub enum SeatChoice {
    #[default]
    Default,
    Seat(Option<Player>),
}

fn explicit_seat<'de, D: serde::Deserializer<'de>>(d: D) -> Result<SeatChoice, D::Error> {
    Option::<Player>::deserialize(d).map(SeatChoice::Seat)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRef {
    pub col: usize,
    pub row: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Snapshot {
    pub width: usize,
    pub height: usize,
    pub k: usize,
    /// Top row first, `X`/`O`/`-` per cell.
    pub board: Vec<String>,
    pub to_move: Player,
    /// `in-progress`, or the final outcome.
    pub status: String,
    pub last_move: Option<CellRef>,
    pub history: Vec<usize>,
    pub engine_seat: Option<Player>,
    pub resigned: Option<Player>,
}

impl Snapshot {
    pub fn of(state: &GameState, engine_seat: Option<Player>, resigned: Option<Player>) -> Snapshot {
        let status = match (resigned, state.status()) {
            (Some(p), _) => Outcome::win_for(p.opponent()).to_string(),
            (None, Status::InProgress) => "in-progress".to_string(),
            (None, Status::Ended(o)) => o.to_string(),
        };
        Snapshot {
            width: state.width(),
            height: state.height(),
            k: state.k(),
            board: state.render_lines(),
            to_move: state.to_move(),
            status,
            last_move: state.last_move().map(|(col, row)| CellRef { col, row }),
            history: state.history().to_vec(),
            engine_seat,
            resigned,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorCode {
    BadRequest,
    NoGame,
    InvalidSpec,
    IllegalMove,
    GameOver,
    NotYourTurn,
    NoHint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Response {
    State {
        snapshot: Snapshot,
    },
    EngineMove {
        col: usize,
        strategy: String,
        snapshot: Snapshot,
    },
    Hint {
        col: usize,
        strategy: String,
        snapshot: Snapshot,
    },
    Prediction {
        outcome: Outcome,
        rule: String,
        snapshot: Snapshot,
    },
    Error {
        code: ErrorCode,
        message: String,
        snapshot: Option<Snapshot>,
    },
}

impl Response {
    pub fn snapshot(&self) -> Option<&Snapshot> {
        match self {
            Response::State { snapshot }
            | Response::EngineMove { snapshot, .. }
            | Response::Hint { snapshot, .. }
            | Response::Prediction { snapshot, .. } => Some(snapshot),
            Response::Error { snapshot, .. } => snapshot.as_ref(),
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("responses serialize")
    }
}
