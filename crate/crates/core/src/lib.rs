pub mod arith;
pub mod charmodel;
pub mod error;
pub mod oracle;
pub mod partitions;
pub mod series;
pub mod symfunc;
pub mod verify;

pub use error::{Error, Result};
