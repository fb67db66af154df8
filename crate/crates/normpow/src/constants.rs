//! Smoothness constants of `D^p f_{p+ν}`.
//!
//! For `ν ∈ [0,1]` the relevant quantities are
//!
//! - `C_{p,ν}` — the proved lower bound on any ν-Hölder constant:
//!   `∏_{i=1}^p (ν+i)` for even `p`, `2^{1-ν} ∏ (ν+i)` for odd `p`
//!   (optimal for odd `p`);
//! - `H_{p,ν}` — the ν-Hölder constant of `g_{p,p+ν}` on `[0,1]`, bounded by
//!   `∏ (ν+i)` and known in closed form for `p = 2`;
//! - `Ĥ_{p,ν}` — its extension to `[-1,1]`: `H` (even) or `2^{1-ν} H` (odd);
//! - `A_{p,ν}`, `Ã_{p,ν}` — whole-space ν-Hölder constants,
//!   `(p-1)!! ∏_{i=1}^{p/2}(ν+2i) + H` for even `p` (with the product bound
//!   substituted for `H` in `Ã`), `2^{1-ν} ∏ (ν+i)` for odd `p`;
//! - `(p+1)!` — the optimal Lipschitz constant at `ν = 1`.
//!
//! `estimate_h_poly` recovers `H_{p,ν}` empirically. The maximization over
//! `0 ≤ τ₁ < τ₂ ≤ 1` reduces to `τ₂ = 1` (the difference quotient is
//! monotone in `τ₂`), leaving a smooth 1-D problem solved by a grid sweep
//! plus golden-section refinement; a full 2-D grid cross-check guards the
//! reduction itself.

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::normcalc::GEval;

#[derive(Debug, Error, PartialEq)]
pub enum ConstantsError {
    #[error("nu={0} outside [0, 1]")]
    DomainError(f64),
    #[error("grid must have at least 3 points, got {0}")]
    GridTooSmall(usize),
    #[error(
        "2-D grid maximum {grid_max} exceeds the tau2=1 line maximum {line_max} \
         for p={p}, nu={nu}: the monotone-fraction reduction failed (implementation bug)"
    )]
    MonotonicityViolation {
        p: u32,
        nu: f64,
        grid_max: f64,
        line_max: f64,
    },
}

fn check_nu(nu: f64) -> Result<(), ConstantsError> {
    if !(0.0..=1.0).contains(&nu) {
        return Err(ConstantsError::DomainError(nu));
    }
    Ok(())
}

/// `∏_{i=1}^p (ν+i)`, evaluated left-to-right.
fn product_nu_plus_i(p: u32, nu: f64) -> f64 {
    let mut acc = 1.0;
    for i in 1..=p {
        acc *= nu + f64::from(i);
    }
    acc
}

/// Lower bound `C_{p,ν}` on the ν-Hölder constant of `D^p f_{p+ν}`.
pub fn lower_bound_c(p: u32, nu: f64) -> Result<f64, ConstantsError> {
    check_nu(nu)?;
    let prod = product_nu_plus_i(p, nu);
    Ok(if p % 2 == 0 {
        prod
    } else {
        2f64.powf(1.0 - nu) * prod
    })
}

/// The product bound `H_{p,ν} ≤ ∏_{i=1}^p (ν+i)`.
pub fn holder_bound_product(p: u32, nu: f64) -> Result<f64, ConstantsError> {
    check_nu(nu)?;
    Ok(product_nu_plus_i(p, nu))
}

/// The optimal Hölder constant of `g_{2,2+ν}` on `[0,1]` and its maximizer.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct H2Optimum {
    pub value: f64,
    pub tau_star: f64,
}

/// Closed form `H_{2,ν} = ν(ν+2) 2^{2-ν} (1-ν)^{1-ν} / (2-ν)^{2-ν}`, with
/// `0^0 := 1` at `ν = 1`; the maximizer is `τ* = ν/(2-ν)`.
pub fn optimal_h2(nu: f64) -> Result<H2Optimum, ConstantsError> {
    check_nu(nu)?;
    // f64::powf already follows the 0^0 = 1 convention at nu = 1.
    let value = nu * (nu + 2.0) * 2f64.powf(2.0 - nu) * (1.0 - nu).powf(1.0 - nu)
        / (2.0 - nu).powf(2.0 - nu);
    Ok(H2Optimum {
        value,
        tau_star: nu / (2.0 - nu),
    })
}

/// Result of the empirical Hölder-constant estimation.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct HEstimate {
    pub value: f64,
    /// Maximizing `τ₁` (with `τ₂ = 1`).
    pub tau1: f64,
    /// Maximum found by the 2-D cross-check grid; `NaN` when the check was
    /// skipped.
    pub cross_check: f64,
}

/// Empirical `H_{p,ν}` with the 2-D cross-check (verification mode):
/// a 201×201 grid over all pairs `τ₁ < τ₂` must not beat its own `τ₂ = 1`
/// line, otherwise the proved reduction is broken somewhere in this
/// implementation and [`ConstantsError::MonotonicityViolation`] is raised.
/// Returns the larger of the refined 1-D value and the 2-D grid value.
pub fn estimate_h_poly(p: u32, nu: f64, grid: usize, tol: f64) -> Result<HEstimate, ConstantsError> {
    let est = estimate_h_poly_unchecked(p, nu, grid, tol)?;
    let ge = GEval::new(p, f64::from(p) + nu);
    const XGRID: usize = 201;
    let step = 1.0 / (XGRID - 1) as f64;
    let gv: Vec<f64> = (0..XGRID).map(|i| ge.value(i as f64 * step)).collect();
    let mut grid_max = f64::NEG_INFINITY;
    let mut line_max = f64::NEG_INFINITY;
    for i in 0..XGRID {
        for j in (i + 1)..XGRID {
            let dt = (j - i) as f64 * step;
            let ratio = (gv[j] - gv[i]) / dt.powf(nu);
            grid_max = grid_max.max(ratio);
            if j == XGRID - 1 {
                line_max = line_max.max(ratio);
            }
        }
    }
    if grid_max > line_max + tol.max(1e-9 * line_max.abs().max(1.0)) {
        return Err(ConstantsError::MonotonicityViolation {
            p,
            nu,
            grid_max,
            line_max,
        });
    }
    Ok(HEstimate {
        value: est.value.max(grid_max),
        tau1: est.tau1,
        cross_check: grid_max,
    })
}

/// The 1-D estimator alone (non-verification mode): grid sweep over `τ₁`
/// with `τ₂ = 1`, then golden-section refinement of the best bracket.
///
/// The quotient `(g(1) - g(τ₁)) / (1-τ₁)^ν` is evaluated through the exact
/// polynomial division `(g(1) - g(τ)) / (1-τ)`, which stays stable as
/// `τ₁ -> 1`. For `ν = 0` the convention `(τ₂-τ₁)^0 := 1` makes the result
/// the oscillation `g(1) - g(0)`.
pub fn estimate_h_poly_unchecked(
    p: u32,
    nu: f64,
    grid: usize,
    tol: f64,
) -> Result<HEstimate, ConstantsError> {
    check_nu(nu)?;
    if grid < 3 {
        return Err(ConstantsError::GridTooSmall(grid));
    }
    let ge = GEval::new(p, f64::from(p) + nu);
    if nu == 0.0 {
        return Ok(HEstimate {
            value: ge.value(1.0) - ge.value(0.0),
            tau1: 0.0,
            cross_check: f64::NAN,
        });
    }
    let secant = ge.secant_from_one();
    let obj = |t: f64| secant.value(t) * (1.0 - t).powf(1.0 - nu);

    let step = 1.0 / (grid - 1) as f64;
    let mut best_j = 0;
    let mut best_val = f64::NEG_INFINITY;
    for j in 0..grid {
        let v = obj(j as f64 * step);
        if v > best_val {
            best_val = v;
            best_j = j;
        }
    }
    let a = best_j.saturating_sub(1) as f64 * step;
    let b = ((best_j + 1).min(grid - 1)) as f64 * step;
    let (t_ref, v_ref) = golden_max(&obj, a, b, tol);
    let (value, tau1) = if v_ref >= best_val {
        (v_ref, t_ref)
    } else {
        (best_val, best_j as f64 * step)
    };
    Ok(HEstimate {
        value,
        tau1,
        cross_check: f64::NAN,
    })
}

/// Golden-section maximization on `[a, b]` to interval tolerance `tol`,
/// returning the best point seen (endpoints included).
fn golden_max(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut best = (a, f(a));
    let fb = f(b);
    if fb > best.1 {
        best = (b, fb);
    }
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol.max(f64::EPSILON) {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        let (tx, vx) = if fc >= fd { (c, fc) } else { (d, fd) };
        if vx > best.1 {
            best = (tx, vx);
        }
    }
    best
}

/// Extension of a `[0,1]` Hölder constant to `[-1,1]`:
/// `Ĥ = H` for even `p`, `2^{1-ν} H` for odd `p`.
pub fn extend_h_to_symmetric(p: u32, nu: f64, h: f64) -> f64 {
    if p % 2 == 0 {
        h
    } else {
        2f64.powf(1.0 - nu) * h
    }
}

/// Whole-space constant `A_{p,ν}` given a Hölder constant `h` of
/// `g_{p,p+ν}` on `[0,1]` (only used by the even branch).
pub fn constant_a(p: u32, nu: f64, h: f64) -> Result<f64, ConstantsError> {
    check_nu(nu)?;
    if p % 2 == 1 {
        return Ok(2f64.powf(1.0 - nu) * product_nu_plus_i(p, nu));
    }
    let mut acc = double_factorial_f64(i64::from(p) - 1);
    for i in 1..=p / 2 {
        acc *= nu + 2.0 * f64::from(i);
    }
    Ok(acc + h)
}

/// `Ã_{p,ν}`: the whole-space constant with the product bound substituted
/// for `H`.
pub fn constant_a_tilde(p: u32, nu: f64) -> Result<f64, ConstantsError> {
    constant_a(p, nu, product_nu_plus_i(p, nu))
}

fn double_factorial_f64(n: i64) -> f64 {
    use num_traits::ToPrimitive;
    crate::polyfamily::double_factorial(n)
        .to_f64()
        .unwrap_or(f64::INFINITY)
}

/// Exact Lipschitz constant `(p+1)!` of `D^p f_{p+1}`.
pub fn lipschitz_constant(p: u32) -> BigInt {
    let mut acc = BigInt::from(1);
    for i in 2..=u64::from(p) + 1 {
        acc *= i;
    }
    acc
}

/// The full bundle for one `(p, ν)`.
#[derive(Clone, Debug, Serialize)]
pub struct HolderConstants {
    pub p: u32,
    pub nu: f64,
    /// Lower bound `C_{p,ν}`.
    pub c: f64,
    /// Product bound on `H_{p,ν}`.
    pub h_bound: f64,
    /// Empirical `H_{p,ν}` on `[0,1]`.
    pub h_est: f64,
    /// Extension `Ĥ_{p,ν}` of the estimate to `[-1,1]`.
    pub h_sym: f64,
    /// `A_{p,ν}` built from the empirical `H`.
    pub a: f64,
    /// `Ã_{p,ν}` built from the product bound.
    pub a_tilde: f64,
}

pub fn holder_constants(
    p: u32,
    nu: f64,
    grid: usize,
    tol: f64,
) -> Result<HolderConstants, ConstantsError> {
    let c = lower_bound_c(p, nu)?;
    let h_bound = holder_bound_product(p, nu)?;
    let h_est = estimate_h_poly(p, nu, grid, tol)?.value;
    Ok(HolderConstants {
        p,
        nu,
        c,
        h_bound,
        h_est,
        h_sym: extend_h_to_symmetric(p, nu, h_est),
        a: constant_a(p, nu, h_est)?,
        a_tilde: constant_a_tilde(p, nu)?,
    })
}
