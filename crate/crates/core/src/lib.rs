pub mod builtins;
pub mod cli;
pub mod comparison;
pub mod cubical;
pub mod error;
pub mod homotopy;
pub mod linalg;
pub mod poset;
pub mod simplicial;

pub use error::{Error, Result};
