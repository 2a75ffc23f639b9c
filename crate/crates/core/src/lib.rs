pub mod bounds;
pub mod distance;
pub mod dynamics;
pub mod error;
pub mod field;
pub mod orbits;
pub mod parse;
pub mod sunits;
pub mod verify;

pub use error::{Error, ErrorKind, Result};
