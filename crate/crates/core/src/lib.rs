//! Ordinal arithmetic below epsilon_0, closed and topological pigeonhole
//! numbers, finite Ramsey oracles, a bound-derivation engine for ordinal
//! Ramsey numbers, and checkable witness colorings.

pub mod engine;
pub mod oracle;
pub mod ordinal;
pub mod pigeonhole;
pub mod topology;
pub mod witness;

pub use engine::{Bound, BoundInterval, BoundKind, BoundQuery, Engine, EngineConfig, EngineError, Relation};
pub use ordinal::{build, format_ordinal, parse_ordinal, Ordinal, OrdinalError, ParseError};
pub use pigeonhole::{pcl_number, PigeonholeError};
