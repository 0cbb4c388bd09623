//! Evaluation of Z(s): the direct series, the sharp and smoothed approximate
//! functional equations, the Hardy-type function and constant calibration.

mod afe;
mod calibrate;
mod direct;
mod hardy;
mod identity;
mod sum;

pub use afe::{
    choose_h, error_budget, evaluate_afe, reflect_afe, z_afe, z_afe_smoothed, AfeBreakdown,
    AfeConfig, AfeConstants, BudgetTerms, MuExponent, BUDGET_EPSILON, MIN_T,
};
pub use calibrate::{
    calibrate_constants, estimate_c_hat, estimate_k_hat, fit_constants, prefix_sums, Calibration,
    CalibrationOptions, CalibrationResidual, FitOutcome, FitSample,
};
pub use direct::{z_direct, DirectValue, DIRECT_MIN_SIGMA};
pub use hardy::{
    cosine_offset, hardy_z, hardy_z_checked, hardy_z_complex, hardy_z_cos, hardy_z_cos_offset,
    HardyValue,
};
pub use identity::{differencing_expected, differencing_sum};
