use alloc::string::String;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    DuplicateVertex(String),
    DuplicateEdge(String),
    UnknownVertex(String),
    /// Step `index` of a walk is not incident with the current vertex.
    MalformedWalk { index: usize },
    NotClosed,
    Disconnected,
    InvalidTree,
    InvalidParameter(&'static str),
    /// A search or enumeration hit its configured size limit.
    BudgetExceeded(&'static str),
    PartialTable,
    OutOfBall,
    UnknownGenerator(usize),
    ImproperSeparation,
    CrossingSeparations,
    NotASeparation,
    BelowThreshold,
    NotDeckCanonical,
    NotLabelled(String),
    BallTooSmall,
    /// No certified truncation up to the radius limit.
    Uncertified(String),
    /// The truncated decomposition did not settle within the radius limit.
    NotStable(String),
    /// A property that the construction guarantees did not hold.
    Postcondition(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DuplicateVertex(v) => write!(f, "duplicate vertex id {v:?}"),
            Error::DuplicateEdge(e) => write!(f, "duplicate edge id {e:?}"),
            Error::UnknownVertex(v) => write!(f, "edge refers to unknown vertex {v:?}"),
            Error::MalformedWalk { index } => write!(f, "walk step {index} is not incident"),
            Error::NotClosed => write!(f, "walk is not closed at the base vertex"),
            Error::Disconnected => write!(f, "graph is not connected"),
            Error::InvalidTree => write!(f, "edge set is not a spanning tree"),
            Error::InvalidParameter(p) => write!(f, "invalid parameter: {p}"),
            Error::BudgetExceeded(what) => write!(f, "budget exceeded: {what}"),
            Error::PartialTable => write!(f, "coset table is not complete"),
            Error::OutOfBall => write!(f, "lift leaves the truncated ball"),
            Error::UnknownGenerator(g) => write!(f, "relator uses unknown generator {g}"),
            Error::ImproperSeparation => write!(f, "nested set contains an improper separation"),
            Error::CrossingSeparations => write!(f, "nested set contains crossing separations"),
            Error::NotASeparation => write!(f, "input is not a separation"),
            Error::BelowThreshold => write!(f, "block is too small to induce a tangle"),
            Error::NotDeckCanonical => {
                write!(f, "deck action does not preserve the tree-decomposition")
            }
            Error::NotLabelled(why) => write!(f, "not a labelled Cayley graph: {why}"),
            Error::BallTooSmall => write!(f, "ball too small to see all short cycles"),
            Error::Uncertified(why) => write!(f, "truncated cover not certified: {why}"),
            Error::NotStable(why) => write!(f, "decomposition not stable: {why}"),
            Error::Postcondition(msg) => write!(f, "postcondition failed: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
