use std::io::{self, BufRead, Write};
use std::net::{TcpListener, ToSocketAddrs};
use std::thread;

use misere_core::solver::{Budget, Solver};
use misere_core::{oracle, BoardSpec, GameState, Player, StrategyName};

use crate::engine::Engine;
use crate::protocol::{ErrorCode, Request, Response, SeatChoice, Snapshot};

/// Values used when a `newgame` request leaves a field out.
#[derive(Debug, Clone, Copy)]
pub struct SessionConfig {
    pub width: u32,
    pub height: u32,
    pub k: u32,
    pub engine_seat: Option<Player>,
    pub strategy: StrategyName,
    pub solver: Solver,
    pub budget: Budget,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            width: 7,
            height: 6,
            k: 4,
            engine_seat: Some(Player::P2),
            strategy: StrategyName::Auto,
            solver: Solver::default(),
            budget: Budget::nodes(20_000_000),
        }
    }
}

struct Game {
    state: GameState,
    engine_seat: Option<Player>,
    engine: Engine,
    resigned: Option<Player>,
}

impl Game {
    fn snapshot(&self) -> Snapshot {
        Snapshot::of(&self.state, self.engine_seat, self.resigned)
    }

    fn is_over(&self) -> bool {
        self.resigned.is_some() || self.state.is_over()
    }

    fn engine_to_move(&self) -> bool {
        !self.is_over() && self.engine_seat == Some(self.state.to_move())
    }

    fn engine_reply(&mut self) -> Response {
        match self.engine.choose(&self.state) {
            Some((col, strategy)) => {
                self.state.play(col).expect("engine picks a legal column");
                Response::EngineMove {
                    col,
                    strategy,
                    snapshot: self.snapshot(),
                }
            }
            None => Response::State {
                snapshot: self.snapshot(),
            },
        }
    }
}

/// One game conversation. Requests never panic the session; every request
/// gets exactly one response.
pub struct Session {
    config: SessionConfig,
    game: Option<Game>,
}

impl Session {
    pub fn new(config: SessionConfig) -> Self {
        Session { config, game: None }
    }

    pub fn state(&self) -> Option<&GameState> {
        self.game.as_ref().map(|g| &g.state)
    }

    /// Parses and handles one line.
    pub fn handle_line(&mut self, line: &str) -> Response {
        match serde_json::from_str::<Request>(line) {
            Ok(req) => self.handle(req),
            Err(e) => self.error(ErrorCode::BadRequest, format!("cannot parse request: {e}")),
        }
    }

    fn error(&self, code: ErrorCode, message: impl Into<String>) -> Response {
        Response::Error {
            code,
            message: message.into(),
            snapshot: self.game.as_ref().map(Game::snapshot),
        }
    }

    pub fn handle(&mut self, req: Request) -> Response {
        if let Request::Newgame {
            width,
            height,
            k,
            engine_seat,
            strategy,
        } = req
        {
            return self.newgame(width, height, k, engine_seat, strategy);
        }
        let Some(game) = self.game.as_mut() else {
            return self.error(ErrorCode::NoGame, "send newgame first");
        };
        match req {
            Request::Newgame { .. } => unreachable!("handled above"),
            Request::State => Response::State {
                snapshot: game.snapshot(),
            },
            Request::Outcome => {
                let predicted = oracle::outcome(&game.state.spec());
                Response::Prediction {
                    outcome: predicted.outcome,
                    rule: predicted.rule.label().to_string(),
                    snapshot: game.snapshot(),
                }
            }
            Request::Hint => {
                if game.is_over() {
                    return self.error(ErrorCode::GameOver, "the game is over");
                }
                match game.engine.choose(&game.state) {
                    Some((col, strategy)) => Response::Hint {
                        col,
                        strategy,
                        snapshot: game.snapshot(),
                    },
                    None => self.error(ErrorCode::NoHint, "no move available"),
                }
            }
            Request::Resign => {
                if game.is_over() {
                    return self.error(ErrorCode::GameOver, "the game is over");
                }
                let who = match game.engine_seat {
                    Some(engine) => engine.opponent(),
                    None => game.state.to_move(),
                };
                game.resigned = Some(who);
                Response::State {
                    snapshot: game.snapshot(),
                }
            }
            Request::Move { col } => {
                if game.is_over() {
                    return self.error(ErrorCode::GameOver, "the game is over");
                }
                if game.engine_to_move() {
                    return self.error(ErrorCode::NotYourTurn, "the engine is to move");
                }
                if let Err(e) = game.state.play(col) {
                    return self.error(ErrorCode::IllegalMove, e.to_string());
                }
                if game.engine_to_move() {
                    game.engine_reply()
                } else {
                    Response::State {
                        snapshot: game.snapshot(),
                    }
                }
            }
        }
    }

    fn newgame(
        &mut self,
        width: Option<u32>,
        height: Option<u32>,
        k: Option<u32>,
        engine_seat: SeatChoice,
        strategy: Option<StrategyName>,
    ) -> Response {
        let c = self.config;
        let spec = match BoardSpec::finite(width.unwrap_or(c.width), height.unwrap_or(c.height), k.unwrap_or(c.k)) {
            Ok(spec) => spec,
            Err(e) => return self.error(ErrorCode::InvalidSpec, e.to_string()),
        };
        let state = GameState::new(spec).expect("finite spec");
        let engine_seat = match engine_seat {
            SeatChoice::Default => c.engine_seat,
            SeatChoice::Seat(seat) => seat,
        };
        let engine = Engine::new(strategy.unwrap_or(c.strategy), c.solver, c.budget);
        let game = self.game.insert(Game {
            state,
            engine_seat,
            engine,
            resigned: None,
        });
        if game.engine_to_move() {
            game.engine_reply()
        } else {
            Response::State {
                snapshot: game.snapshot(),
            }
        }
    }
}

/// Serves one session over a line stream until end of input.
pub fn run_session<R: BufRead, W: Write>(config: SessionConfig, input: R, mut output: W) -> io::Result<()> {
    let mut session = Session::new(config);
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let response = session.handle_line(&line);
        writeln!(output, "{}", response.to_line())?;
        output.flush()?;
    }
    Ok(())
}

/// Accepts connections forever, one session per connection on its own
/// thread.
pub fn serve(config: SessionConfig, addr: impl ToSocketAddrs) -> io::Result<()> {
    let listener = TcpListener::bind(addr)?;
    serve_on(config, listener)
}

pub fn serve_on(config: SessionConfig, listener: TcpListener) -> io::Result<()> {
    for stream in listener.incoming() {
        let stream = stream?;
        thread::spawn(move || {
            let reader = io::BufReader::new(stream.try_clone()?);
            run_session(config, reader, stream)
        });
    }
    Ok(())
}
