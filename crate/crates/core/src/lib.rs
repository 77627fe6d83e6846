pub mod cli;
pub mod dynamics;
pub mod error;
mod linalg;
pub mod geometry;
pub mod radforce;
pub mod scatter;
pub mod specfun;
pub mod transform;
pub mod wavefield;

pub use error::{Error, Result};
