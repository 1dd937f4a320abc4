pub mod cli;
pub mod coxeter;
pub mod error;
pub mod exactpoly;
pub mod multider;
pub mod serial;

pub use error::{Error, Result};
