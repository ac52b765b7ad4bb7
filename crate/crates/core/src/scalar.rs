//! The scalar abstraction shared by the ratio-cascade and predictor layers.
//!
//! Both arithmetic backends — budgeted decimal and emulated binary64 —
//! implement [`RealScalar`], so the cascade and prediction algorithms are
//! written once and instantiated per backend.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::decimal::{PrecisionConfig, PrecisionDecimal};
use crate::error::{Error, Result};
use crate::exact::ExactInteger;
use crate::float53::Float53;

pub trait RealScalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    /// Backend name for reports.
    const BACKEND: &'static str;

    /// Converts an exact integer under the given configuration. Fails when
    /// the configuration selects the other backend.
    fn from_exact(n: &ExactInteger, cfg: &PrecisionConfig) -> Result<Self>;

    /// Square root of a non-negative exact integer under the configuration.
    fn sqrt_exact(n: &ExactInteger, cfg: &PrecisionConfig) -> Result<Self>;

    /// Small integer constant (exact in both backends).
    fn small(v: i64) -> Self;

    fn abs(&self) -> Self;

    /// Round at `decimals` decimal places, half-even, staying in the backend
    /// (for the float backend this is "re-enter the displayed value").
    fn quantize(&self, decimals: u32) -> Self;

    /// Nearest integer, ties away from zero.
    fn round_half_away(&self) -> ExactInteger;

    /// Relative error bound of a single operation on this value.
    fn unit_roundoff(&self) -> Self;

    /// Fixed-point rendering with exactly `decimals` digits after the point.
    fn to_display(&self, decimals: u32) -> String;

    /// Rendering rounded to `sig` significant digits.
    fn to_sig_display(&self, sig: u32) -> String;
}

impl RealScalar for PrecisionDecimal {
    const BACKEND: &'static str = "decimal";

    fn from_exact(n: &ExactInteger, cfg: &PrecisionConfig) -> Result<Self> {
        match cfg {
            PrecisionConfig::Decimal { digits } => Ok(PrecisionDecimal::from_exact_at(n, *digits)),
            PrecisionConfig::Float53 => Err(Error::BackendMismatch {
                expected: "decimal",
            }),
        }
    }

    fn sqrt_exact(n: &ExactInteger, cfg: &PrecisionConfig) -> Result<Self> {
        match cfg {
            PrecisionConfig::Decimal { digits } => PrecisionDecimal::sqrt_integer(n, *digits),
            PrecisionConfig::Float53 => Err(Error::BackendMismatch {
                expected: "decimal",
            }),
        }
    }

    fn small(v: i64) -> Self {
        PrecisionDecimal::from_int(v)
    }

    fn abs(&self) -> Self {
        self.abs_value()
    }

    fn quantize(&self, decimals: u32) -> Self {
        PrecisionDecimal::quantize(self, decimals)
    }

    fn round_half_away(&self) -> ExactInteger {
        PrecisionDecimal::round_half_away(self)
    }

    fn unit_roundoff(&self) -> Self {
        self.unit_roundoff_value()
    }

    fn to_display(&self, decimals: u32) -> String {
        PrecisionDecimal::to_display(self, decimals)
    }

    fn to_sig_display(&self, sig: u32) -> String {
        PrecisionDecimal::to_sig_display(self, sig)
    }
}

impl RealScalar for Float53 {
    const BACKEND: &'static str = "float53";

    fn from_exact(n: &ExactInteger, cfg: &PrecisionConfig) -> Result<Self> {
        match cfg {
            PrecisionConfig::Float53 => Ok(Float53::from_exact(n)),
            PrecisionConfig::Decimal { .. } => Err(Error::BackendMismatch {
                expected: "float53",
            }),
        }
    }

    fn sqrt_exact(n: &ExactInteger, cfg: &PrecisionConfig) -> Result<Self> {
        match cfg {
            PrecisionConfig::Float53 => Float53::sqrt_integer(n),
            PrecisionConfig::Decimal { .. } => Err(Error::BackendMismatch {
                expected: "float53",
            }),
        }
    }

    fn small(v: i64) -> Self {
        Float53::from_exact(&ExactInteger::from(v))
    }

    fn abs(&self) -> Self {
        self.abs_value()
    }

    fn quantize(&self, decimals: u32) -> Self {
        Float53::quantize(self, decimals)
    }

    fn round_half_away(&self) -> ExactInteger {
        Float53::round_half_away(self)
    }

    fn unit_roundoff(&self) -> Self {
        self.unit_roundoff_value()
    }

    fn to_display(&self, decimals: u32) -> String {
        Float53::to_display(self, decimals)
    }

    fn to_sig_display(&self, sig: u32) -> String {
        Float53::to_sig_display(self, sig)
    }
}
