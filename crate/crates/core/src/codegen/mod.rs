//! Header generation.

pub mod arrays;
pub mod emit;
pub mod plan;
pub mod rename;
pub mod vocab;

pub use arrays::*;
pub use emit::*;
pub use plan::*;
pub use rename::*;
pub use vocab::*;
