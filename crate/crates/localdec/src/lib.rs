//! File formats, Graphviz output and the `localdec` command line for
//! [`localdec_core`].

pub mod cli;
pub mod dot;
mod error;
pub mod json;

pub use error::{Error, Result};
