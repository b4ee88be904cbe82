pub mod catalog;
pub mod clifford;
pub mod error;
pub mod export;
pub mod extension;
pub mod finite;
pub mod fp;
pub mod holonomy;
pub mod lift;
pub mod named;
pub mod record;
pub mod spin;

pub use error::{Error, ErrorKind, Result};
