pub mod bounds;
pub mod class;
pub mod cli;
pub mod error;
pub mod harness;
pub mod inversion;
pub mod scalar;
pub mod schwarz;
pub mod series;

pub use error::{Error, Result};
