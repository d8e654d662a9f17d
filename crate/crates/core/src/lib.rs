pub mod arena;
pub mod canonical;
pub mod constants;
pub mod gamedb;
pub mod lab;
pub mod notation;
pub mod par;
pub mod refute;
pub mod relations;
pub mod session;
pub mod taxonomy;

pub use arena::{Arena, ArenaError, GameId, Player};
pub use relations::{Outcome, Relation, RelationMemo};
pub use session::Session;
