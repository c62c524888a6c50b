pub mod chain;
pub mod cobordism;
pub mod error;
pub mod papermorph;
pub mod tangle;
pub mod tqft;
pub mod verify;

pub use error::{Error, Result};
