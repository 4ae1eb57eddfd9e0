pub mod complexes;
pub mod error;
pub mod generate;
pub mod geometry;
pub mod homology;
pub mod instance;
pub mod lp;
pub mod morse;
pub mod poset;
pub mod rational;
pub mod rng;
pub mod sarkaria;
pub mod trials;
pub mod tverberg;

pub use error::{Error, Result};
