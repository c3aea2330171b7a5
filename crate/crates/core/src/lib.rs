#![no_std]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod census;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod group;
pub mod oracle;
pub mod perm;
pub mod transcat;

pub use error::{Error, Result};
