//! Bounded variation, independence and Helly-type selection for families of
//! functions on finite linearly ordered sets.
//!
//! Everything numeric is generic over [`Scalar`]; the aliases at the crate
//! root fix the two common choices, `f64` and exact rationals.

pub mod bv;
pub mod error;
pub mod gallery;
pub mod order;
pub mod representation;
pub mod scalar;
pub mod selection;
pub mod tameness;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Exact rational scalar.
pub type Exact = num_rational::BigRational;

pub type ChainFunctionF64 = bv::ChainFunction<f64>;
pub type FunctionFamilyF64 = bv::FunctionFamily<f64>;
pub type MetricChainFunctionF64 = bv::MetricChainFunction<f64>;
pub type FiniteMetricSpaceF64 = order::FiniteMetricSpace<f64>;

pub type ChainFunctionExact = bv::ChainFunction<Exact>;
pub type FunctionFamilyExact = bv::FunctionFamily<Exact>;
pub type MetricChainFunctionExact = bv::MetricChainFunction<Exact>;
pub type FiniteMetricSpaceExact = order::FiniteMetricSpace<Exact>;
