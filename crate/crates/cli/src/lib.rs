//! Engine session protocol and command-line front end.

pub mod engine;
pub mod protocol;
pub mod session;

pub use engine::Engine;
pub use protocol::{Request, Response, Snapshot};
pub use session::{run_session, serve, Session, SessionConfig};
