pub mod artinian;
pub mod cotangent;
pub mod deformation;
pub mod error;
pub mod jet;
pub mod linalg;
pub mod modular;
pub mod parse;
pub mod report;
pub mod ring;
pub mod run;

pub use error::{Error, Result};

#[cfg(test)]
mod proptests;
