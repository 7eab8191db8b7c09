pub mod blend;
pub mod cli;
pub mod config;
pub mod dsl;
pub mod error;
pub mod gen;
pub mod inclusion;
pub mod institution;
pub mod laws;
pub mod msa;
pub mod partial;
pub mod pl;
pub(crate) mod quotient;
pub mod theory;
pub mod three_halves;

pub use config::RunConfig;
pub use error::{Error, Result};
