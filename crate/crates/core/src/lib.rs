pub mod cli;
pub mod error;
pub mod harmonic;
pub mod invariants;
pub mod jweinberg;
pub mod numcore;
pub mod poles;
pub mod poly;
pub mod spinor;

pub use error::{Error, Result};
