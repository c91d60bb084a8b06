pub mod cli;
pub mod combinat;
pub mod configs;
pub mod error;
pub mod moments;
pub mod newick;
pub mod series;
pub mod stats;
pub mod tree;
pub mod weights;

pub use error::{Error, Result};
pub use newick::NewickError;
