//! Rankin–Selberg zeta function of a holomorphic Hecke eigenform.
//!
//! The crate is organised in layers:
//!
//! * [`coeffs`]: exact coefficient tables `a(n)`, `c_n`, `b_n`;
//! * [`special`]: log-gamma, digamma, the gamma quotient `X(s)` and related kernels;
//! * [`eval`]: direct series, sharp and smoothed approximate functional
//!   equations, the Hardy-type function and constant calibration;
//! * [`experiments`]: numerical studies producing [`ExperimentReport`]s.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coeffs;
pub mod dd;
mod error;
pub mod eval;
pub mod experiments;
pub mod special;

pub use coeffs::{
    CoefficientSource, CoefficientTable, EigenformSpec, InvariantReport, ScaledSequence,
};
pub use error::{Error, Result};
pub use eval::{AfeBreakdown, AfeConfig, AfeConstants, MuExponent};
pub use experiments::ExperimentReport;
pub use special::{ComplexPoint, SmoothWeight};
