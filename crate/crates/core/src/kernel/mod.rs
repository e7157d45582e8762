//! The configuration algebra and executable semantics: discrete time,
//! object identifiers, messages, multiset configurations, normalization,
//! instantaneous-successor generation, and the tick step.

pub mod config;
pub mod message;
pub mod oid;
pub mod time;

pub use config::{instantaneous_successors, Configuration, KernelError, Payload};
pub use message::Message;
pub use oid::{Direction, Oid};
pub use time::{Finite, Infinity, TimeValue};
