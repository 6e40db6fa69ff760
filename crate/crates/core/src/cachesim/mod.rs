//! Counts the JNI calls a program makes through the generated wrappers.
//!
//! The simulator replays a script against the class, ID, static value and
//! array caches the headers declare, charging each JNI function the emitted
//! bodies would call.

pub mod script;
pub mod sim;
pub mod trace;

pub use script::*;
pub use sim::*;
pub use trace::*;
