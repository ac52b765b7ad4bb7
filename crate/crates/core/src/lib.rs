//! Square-triangular numbers and the ratio cascades around them.

pub mod decimal;
pub mod error;
pub mod exact;
pub mod figurate;
pub mod float53;
pub mod pell;
pub mod scalar;

pub use decimal::{sqrt_decimal, PrecisionConfig, PrecisionDecimal};
pub use error::{Error, Result};
pub use exact::{isqrt, perfect_square_root, triangular, triangular_index, ExactInteger};
pub use float53::Float53;
pub use scalar::RealScalar;
