//! Random c-Lüroth transformations: expansions, exact orbit classification,
//! Markov partitions with exact stationary densities, and Monte Carlo
//! statistics.

pub mod error;
pub mod expansion;
pub mod linalg;
pub mod maps;
pub mod markov;
pub mod omega;
pub mod orbits;
pub mod params;
pub mod rational;
pub mod scalar;
pub mod stats;

pub use error::{Error, Result};
pub use maps::{Region, SignDigit};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use omega::OmegaSource;
pub use params::Params;
