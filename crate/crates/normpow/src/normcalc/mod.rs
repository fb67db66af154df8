//! Metric geometry and numeric evaluation of the derivative tensors.
//!
//! Everything here is `f64`; the symbolic side lives in
//! [`crate::polyfamily`]. The closed-form route, the finite-difference
//! oracle and the polarization identity give three independent ways to the
//! same numbers, which the test suites play against each other.

mod deriv;
mod fd;
mod metric;
mod tensor;

pub use deriv::{deriv_diag, deriv_mixed, tau, DirectionalDerivative, EvalError, GEval};
pub use fd::{default_fd_step, fd_oracle};
pub use metric::{Metric, MetricError};
pub use tensor::{tensor_diff_norm_lb, DEFAULT_ASCENT_STARTS};

pub(crate) use tensor::tensor_diff_norm_lb_with;
