//! Grid- and sampling-based verification of the analytic statements that
//! are not reducible to exact polynomial identities, plus end-to-end
//! Hölder-ratio sampling for the derivative tensors.
//!
//! Every suite is deterministic under a fixed seed and returns a
//! [`VerifyReport`].

mod polysuites;
mod tensorsuite;

pub use polysuites::{
    check_fraction_monotone, check_fraction_monotone_control, check_inequality_lemmas,
    check_inequality_lemmas_control, check_max_abs, check_max_abs_control, check_monotonicity,
    check_monotonicity_control, check_nonnegativity, check_nonnegativity_control,
};
pub use tensorsuite::{
    sample_tensor_holder, sample_tensor_holder_control, SuiteError, TensorMode,
};

pub use crate::report::{VerifyReport, Violation};
