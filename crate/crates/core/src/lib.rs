//! Generating sets for coordinate rings of character varieties of free
//! groups, with exact verification tooling.

pub mod error;
pub mod exec;
pub mod gensets;
pub mod group;
pub mod matrices;
pub mod nilquot;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
