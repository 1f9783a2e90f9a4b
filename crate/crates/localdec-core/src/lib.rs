//! Local covers of finite multigraphs and the canonical decompositions
//! they induce.
//!
//! The crate is `no_std` with `alloc`; file formats and the command line
//! live in the `localdec` crate.

#![no_std]

extern crate alloc;

pub mod bitset;
pub mod error;
pub mod gf2;
pub mod graphdec;
pub mod grouppres;
pub mod localcover;
pub mod multigraph;
pub mod tangles;
pub mod treedecomp;

pub use error::{Error, Result};

/// Outcome of a check that may run out of budget or information.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    True,
    False,
    Undecided,
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }
}

impl Verdict {
    pub fn is_true(self) -> bool {
        self == Verdict::True
    }
}
