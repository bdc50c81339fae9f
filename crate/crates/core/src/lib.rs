//! Cycle integrals of weakly holomorphic modular forms, their period
//! expressions and Shintani lifts.

pub mod analytic;
pub mod bqf;
pub mod cycleint;
pub mod error;
pub mod exactmath;
pub mod qseries;
pub mod scalar;
pub mod shintani;

pub use error::{Error, Result};
pub use scalar::{DoubleDouble, Real};

/// Default working scalar (106-bit significand).
pub type Working = DoubleDouble;
pub type Value = analytic::ComplexValue<Working>;
pub type Value64 = analytic::ComplexValue<f64>;
pub type Lift = shintani::LiftSeries<Working>;
pub type CycleIntegral = cycleint::CycleIntegralResult<Working>;
pub type Periods = analytic::PeriodVector<Working>;
