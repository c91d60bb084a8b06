use thiserror::Error;

use crate::newick::NewickError;

/// Errors raised by the library.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// A request exceeded an explicit enumeration or truncation cap.
    #[error("{what}: requested {requested}, cap is {cap}")]
    Capacity {
        what: &'static str,
        requested: usize,
        cap: usize,
    },
    /// A node reference does not belong to the tree it was used with.
    #[error("node {node} is not in a tree with {nodes} nodes")]
    UnknownNode { node: usize, nodes: usize },
    /// An argument fell outside the domain of an operation.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A statistic is undefined because a variance vanishes.
    #[error("degenerate distribution: {0}")]
    Degenerate(String),
    /// A power series operation was not defined for its operands.
    #[error("series: {0}")]
    Series(String),
    #[error(transparent)]
    Newick(#[from] NewickError),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_cap(what: &'static str, requested: usize, cap: usize) -> Result<()> {
    if requested > cap {
        Err(Error::Capacity {
            what,
            requested,
            cap,
        })
    } else {
        Ok(())
    }
}
