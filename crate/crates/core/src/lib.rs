pub mod center;
pub mod error;
pub mod invariant;
pub mod lattice;
pub mod reduction;
pub mod report;
pub mod roots;
pub mod verify;

pub use error::{Error, Result};
