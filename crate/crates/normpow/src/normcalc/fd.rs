//! Finite-difference oracle for the derivative formula.
//!
//! Approximates `D^p f_q(x)[h]^p = d^p/dt^p f_q(x + t h) |_{t=0}` by nested
//! central differences of the scalar map `t -> ‖x + t h‖^q`, with O(step²)
//! truncation error per nesting level. Entirely independent of the closed
//! form, which is the point.

use super::deriv::EvalError;
use super::metric::Metric;

/// Central stencils for d^p/dt^p at 0, as `(offset, weight)`; the divisor is
/// `step^p`.
fn stencil(p: u32) -> Option<&'static [(i32, f64)]> {
    match p {
        1 => Some(&[(1, 0.5), (-1, -0.5)]),
        2 => Some(&[(1, 1.0), (0, -2.0), (-1, 1.0)]),
        3 => Some(&[(2, 0.5), (1, -1.0), (-1, 1.0), (-2, -0.5)]),
        4 => Some(&[(2, 1.0), (1, -4.0), (0, 6.0), (-1, -4.0), (-2, 1.0)]),
        _ => None,
    }
}

/// Step size balancing truncation against cancellation at each depth.
pub fn default_fd_step(p: u32, x_norm: f64) -> f64 {
    let base = if p <= 2 { 1e-5 } else { 1e-3 };
    base * x_norm.max(1.0)
}

/// Finite-difference estimate of `D^p f_q(x)[h]^p` for `p` in `1..=4` and a
/// unit direction `h`.
pub fn fd_oracle(
    metric: &Metric,
    p: u32,
    q: f64,
    x: &[f64],
    h: &[f64],
    step: f64,
) -> Result<f64, EvalError> {
    let weights = stencil(p).ok_or(EvalError::UnsupportedOrder(p))?;
    let hn = metric.norm(h);
    if (hn - 1.0).abs() > 1e-10 {
        return Err(EvalError::NonUnitDirection { norm: hn });
    }
    let mut acc = 0.0;
    for &(offset, w) in weights {
        let t = f64::from(offset) * step;
        let point: Vec<f64> = x.iter().zip(h).map(|(a, b)| a + t * b).collect();
        let n = metric.norm(&point);
        if n == 0.0 {
            return Err(EvalError::StencilHitsOrigin);
        }
        acc += w * n.powf(q);
    }
    Ok(acc / step.powi(p as i32))
}
