//! Grid verification of the analytic properties of `g_{p,q}` that do not
//! reduce to exact coefficient identities: non-negativity, monotonicity, the
//! maximum absolute value, the monotone-fraction statements and the
//! inequality lemmas behind them.
//!
//! Every suite also has a negative-control variant that deliberately leaves
//! the hypothesis region (`q < p-1`, `q < p`, or `ν > 1`); a correct
//! implementation must then flag at least one violation. Controls are
//! opt-in and never part of the default pass/fail run.

use crate::normcalc::GEval;
use crate::polyfamily::{generate_family, GPoly};
use crate::report::{VerifyReport, Violation};

/// Base absolute slack tolerance for polynomial-value inequalities. Each
/// case widens it by the provable rounding-error bound of its own
/// evaluations (see [`GEval::eval_noise`]), so the suites stay sound at any
/// coefficient magnitude while remaining this tight wherever the values are
/// moderate.
const POLY_TOL: f64 = 1e-10;

/// Relative tolerance for comparisons against closed-form constants.
const CONST_REL_TOL: f64 = 1e-9;

fn geval(family: &[GPoly], p: u32, q: f64) -> GEval {
    GEval::from_gpoly(&family[p as usize], q)
}

/// `g_{p,q}(τ) ≥ 0` on `[0,1]` for `q ≥ p-1`, checked for all `p ≤ p_max`,
/// `q` on a 0.25-step grid over `[p-1, p+2]` and `τ` on a `grid`-point mesh.
pub fn check_nonnegativity(p_max: u32, grid: usize) -> VerifyReport {
    nonnegativity_impl("nonnegativity", p_max, grid, 0)
}

/// Negative control: extends the `q` grid below the `q ≥ p-1` hypothesis,
/// where the polynomials genuinely go negative (e.g. `g_{1,-1}(τ) = -τ`).
pub fn check_nonnegativity_control(p_max: u32, grid: usize) -> VerifyReport {
    nonnegativity_impl("nonnegativity_control", p_max, grid, 8)
}

fn nonnegativity_impl(name: &str, p_max: u32, grid: usize, below: i32) -> VerifyReport {
    let mut report = VerifyReport::new(name, 0);
    let family = generate_family(p_max);
    let grid = grid.max(2);
    for p in 0..=p_max {
        for k in -below..=12 {
            let q = f64::from(p) - 1.0 + 0.25 * f64::from(k);
            let ge = geval(&family, p, q);
            for j in 0..grid {
                let tau = j as f64 / (grid - 1) as f64;
                let v = ge.value(tau);
                let tol = POLY_TOL.max(ge.eval_noise(tau));
                report.record(v, tol, || Violation {
                    params: format!("p={p} q={q} tau={tau:.6}"),
                    lhs: v,
                    rhs: 0.0,
                    gap: v,
                });
            }
        }
    }
    report.finish()
}

/// `g'_{p,q}(τ) ≥ 0` on `[0,1]` for `q ≥ p` (so `g_{p,q}` is monotonically
/// increasing there).
pub fn check_monotonicity(p_max: u32, grid: usize) -> VerifyReport {
    monotonicity_impl("monotonicity", p_max, grid, 0)
}

/// Negative control: `q < p`, where the derivative can go negative.
pub fn check_monotonicity_control(p_max: u32, grid: usize) -> VerifyReport {
    monotonicity_impl("monotonicity_control", p_max, grid, 8)
}

fn monotonicity_impl(name: &str, p_max: u32, grid: usize, below: i32) -> VerifyReport {
    let mut report = VerifyReport::new(name, 0);
    let family = generate_family(p_max);
    let grid = grid.max(2);
    for p in 0..=p_max {
        for k in -below..=8 {
            let q = f64::from(p) + 0.25 * f64::from(k);
            let ge = geval(&family, p, q);
            for j in 0..grid {
                let tau = j as f64 / (grid - 1) as f64;
                let v = ge.deriv(tau);
                let tol = POLY_TOL.max(ge.deriv_noise(tau));
                report.record(v, tol, || Violation {
                    params: format!("p={p} q={q} tau={tau:.6}"),
                    lhs: v,
                    rhs: 0.0,
                    gap: v,
                });
            }
        }
    }
    report.finish()
}

/// `max_{[-1,1]} |g_{p,q}| = ∏_{i=0}^{p-1} (q-i)` for `q ≥ p`: the grid
/// maximum must not exceed the product, and the boundary values `τ = ±1`
/// must attain it.
pub fn check_max_abs(p_max: u32, grid: usize) -> VerifyReport {
    max_abs_impl("max_abs", p_max, grid, 0)
}

/// Negative control: `q < p`, where the interior maximum beats the product.
pub fn check_max_abs_control(p_max: u32, grid: usize) -> VerifyReport {
    max_abs_impl("max_abs_control", p_max, grid, 6)
}

fn max_abs_impl(name: &str, p_max: u32, grid: usize, below: i32) -> VerifyReport {
    let mut report = VerifyReport::new(name, 0);
    let family = generate_family(p_max);
    let grid = grid.max(3);
    for p in 0..=p_max {
        for k in -below..=8 {
            let q = f64::from(p) + 0.25 * f64::from(k);
            let ge = geval(&family, p, q);
            let product: f64 = (0..p).map(|i| q - f64::from(i)).product();
            let mut grid_max = f64::NEG_INFINITY;
            for j in 0..grid {
                let tau = -1.0 + 2.0 * j as f64 / (grid - 1) as f64;
                grid_max = grid_max.max(ge.value(tau).abs());
            }
            // the condition sum is largest at |tau| = 1, so one bound covers
            // every grid point
            let slack = product * (1.0 + CONST_REL_TOL) + ge.eval_noise(1.0) - grid_max;
            report.record(slack, 0.0, || Violation {
                params: format!("p={p} q={q} check=grid_max"),
                lhs: grid_max,
                rhs: product,
                gap: grid_max - product,
            });
            let boundary = ge.value(1.0).abs().max(ge.value(-1.0).abs());
            let err = (boundary - product).abs();
            let tol = (1e-10 * product.abs().max(1.0)).max(ge.eval_noise(1.0));
            report.record(tol - err, 0.0, || Violation {
                params: format!("p={p} q={q} check=boundary_attains"),
                lhs: boundary,
                rhs: product,
                gap: boundary - product,
            });
        }
    }
    report.finish()
}

/// The two monotone-fraction statements for `g = g_{p,p+ν}`:
/// `τ₂ ↦ (g(τ₂)-g(τ₁))/(τ₂-τ₁)^ν` is non-decreasing on `]τ₁, 1]`, and
/// `τ ↦ g(τ)/(1-(1-τ)^ν)` is non-increasing on `]0, 1]`.
pub fn check_fraction_monotone(p_max: u32, nu_grid: usize, tau_grid: usize) -> VerifyReport {
    fraction_monotone_impl("fraction_monotone", p_max, nu_values(nu_grid), tau_grid)
}

/// Negative control: `ν = 1.5` (a Hölder exponent above 1), for which the
/// difference quotient of a linear polynomial is strictly decreasing.
pub fn check_fraction_monotone_control(p_max: u32, tau_grid: usize) -> VerifyReport {
    fraction_monotone_impl("fraction_monotone_control", p_max, vec![1.5], tau_grid)
}

fn nu_values(nu_grid: usize) -> Vec<f64> {
    let n = nu_grid.max(2);
    (1..=n).map(|k| k as f64 / n as f64).collect()
}

fn fraction_monotone_impl(
    name: &str,
    p_max: u32,
    nus: Vec<f64>,
    tau_grid: usize,
) -> VerifyReport {
    let mut report = VerifyReport::new(name, 0);
    let family = generate_family(p_max);
    let tau_grid = tau_grid.max(3);
    let tau1_samples: Vec<f64> = (0..8).map(|i| f64::from(i) / 8.0).collect();
    for p in 0..=p_max {
        for &nu in &nus {
            let ge = geval(&family, p, f64::from(p) + nu);
            // difference quotient non-decreasing in tau2
            for &tau1 in &tau1_samples {
                let g1 = ge.value(tau1);
                let noise1 = ge.eval_noise(tau1);
                let mut prev: Option<(f64, f64)> = None;
                for j in 1..=tau_grid {
                    let tau2 = tau1 + (1.0 - tau1) * j as f64 / tau_grid as f64;
                    let dt = (tau2 - tau1).powf(nu);
                    let ratio = (ge.value(tau2) - g1) / dt;
                    let noise = (ge.eval_noise(tau2) + noise1) / dt;
                    if let Some((prev, prev_noise)) = prev {
                        let slack = ratio - prev;
                        let tol = POLY_TOL.max(noise + prev_noise);
                        report.record(slack, tol, || Violation {
                            params: format!(
                                "p={p} nu={nu} tau1={tau1:.4} tau2={tau2:.6} map=difference_quotient"
                            ),
                            lhs: prev,
                            rhs: ratio,
                            gap: slack,
                        });
                    }
                    prev = Some((ratio, noise));
                }
            }
            // g(τ)/(1-(1-τ)^ν) non-increasing on ]0, 1]
            let mut prev: Option<(f64, f64)> = None;
            for j in 1..=tau_grid {
                let tau = j as f64 / tau_grid as f64;
                let denom = 1.0 - (1.0 - tau).powf(nu);
                if denom <= 0.0 {
                    continue;
                }
                let ratio = ge.value(tau) / denom;
                let noise = ge.eval_noise(tau) / denom;
                if let Some((prev, prev_noise)) = prev {
                    let slack = prev - ratio;
                    let tol = POLY_TOL.max(noise + prev_noise);
                    report.record(slack, tol, || Violation {
                        params: format!("p={p} nu={nu} tau={tau:.6} map=endpoint_fraction"),
                        lhs: prev,
                        rhs: ratio,
                        gap: slack,
                    });
                }
                prev = Some((ratio, noise));
            }
        }
    }
    report.finish()
}

/// The four inequality lemmas supporting the monotone-fraction statements,
/// on grids over `ν ∈ [0,1]` and `τ` (with `g = g_{p,p+ν}` and the shifted
/// member `g_{p,p-2+ν}`):
///
/// 1. `g(τ) ≥ τ g'(τ)`;
/// 2. `(p+ν) g_{p,p-2+ν}(τ₂) ≤ ν (g(τ₁) - τ₁ g'(τ₁))` for `τ₁ ≤ τ₂`;
/// 3. `τ₁ ↦ (ν g(τ₁) - (p+ν) g_{p,p-2+ν}(τ₂))/τ₁` is non-increasing on
///    `]0, τ₂]`;
/// 4. `(p+ν) g_{p,p-2+ν}(τ) ≥ -(1 - (1-τ)^{1-ν}) g'(τ)`.
pub fn check_inequality_lemmas(p_max: u32, nu_grid: usize, tau_grid: usize) -> VerifyReport {
    let mut nus: Vec<f64> = vec![0.0];
    nus.extend(nu_values(nu_grid));
    inequality_lemmas_impl("inequality_lemmas", p_max, nus, tau_grid)
}

/// Negative control: `ν = 1.5`, which breaks lemma 1 already at `p = 2`.
pub fn check_inequality_lemmas_control(p_max: u32, tau_grid: usize) -> VerifyReport {
    inequality_lemmas_impl("inequality_lemmas_control", p_max, vec![1.5], tau_grid)
}

fn inequality_lemmas_impl(
    name: &str,
    p_max: u32,
    nus: Vec<f64>,
    tau_grid: usize,
) -> VerifyReport {
    let mut report = VerifyReport::new(name, 0);
    let family = generate_family(p_max);
    let tau_grid = tau_grid.max(3);
    let taus: Vec<f64> = (0..=tau_grid).map(|j| j as f64 / tau_grid as f64).collect();
    for p in 0..=p_max {
        for &nu in &nus {
            let ge = geval(&family, p, f64::from(p) + nu);
            let ge_shift = geval(&family, p, f64::from(p) - 2.0 + nu);
            let pnu = f64::from(p) + nu;

            // (1) g(τ) ≥ τ g'(τ)
            for &tau in &taus {
                let lhs = ge.value(tau);
                let rhs = tau * ge.deriv(tau);
                let tol = POLY_TOL.max(ge.eval_noise(tau) + tau * ge.deriv_noise(tau));
                report.record(lhs - rhs, tol, || Violation {
                    params: format!("p={p} nu={nu} tau={tau:.6} lemma=g_minus_tau_deriv"),
                    lhs,
                    rhs,
                    gap: lhs - rhs,
                });
            }

            // (2) two-point inequality, τ1 ≤ τ2
            for (i, &tau1) in taus.iter().enumerate() {
                let rhs = nu * (ge.value(tau1) - tau1 * ge.deriv(tau1));
                let rhs_noise = nu * (ge.eval_noise(tau1) + tau1 * ge.deriv_noise(tau1));
                for &tau2 in &taus[i..] {
                    let lhs = pnu * ge_shift.value(tau2);
                    let tol = POLY_TOL.max(rhs_noise + pnu * ge_shift.eval_noise(tau2));
                    report.record(rhs - lhs, tol, || Violation {
                        params: format!("p={p} nu={nu} tau1={tau1:.4} tau2={tau2:.4} lemma=two_point"),
                        lhs,
                        rhs,
                        gap: rhs - lhs,
                    });
                }
            }

            // (3) auxiliary map decreasing on ]0, τ2]
            for &tau2 in &taus {
                if tau2 == 0.0 {
                    continue;
                }
                let shift_val = pnu * ge_shift.value(tau2);
                let shift_noise = pnu * ge_shift.eval_noise(tau2);
                let mut prev: Option<(f64, f64)> = None;
                for &tau1 in taus.iter().filter(|t| **t > 0.0 && **t <= tau2) {
                    let v = (nu * ge.value(tau1) - shift_val) / tau1;
                    let noise = (nu * ge.eval_noise(tau1) + shift_noise) / tau1;
                    if let Some((prev, prev_noise)) = prev {
                        let slack = prev - v;
                        let tol = POLY_TOL.max(noise + prev_noise);
                        report.record(slack, tol, || Violation {
                            params: format!(
                                "p={p} nu={nu} tau1={tau1:.4} tau2={tau2:.4} lemma=auxiliary_map"
                            ),
                            lhs: prev,
                            rhs: v,
                            gap: slack,
                        });
                    }
                    prev = Some((v, noise));
                }
            }

            // (4) shifted member vs derivative
            for &tau in &taus {
                let lhs = pnu * ge_shift.value(tau);
                let rhs = -(1.0 - (1.0 - tau).powf(1.0 - nu)) * ge.deriv(tau);
                let tol =
                    POLY_TOL.max(pnu * ge_shift.eval_noise(tau) + ge.deriv_noise(tau));
                report.record(lhs - rhs, tol, || Violation {
                    params: format!("p={p} nu={nu} tau={tau:.6} lemma=shifted_vs_derivative"),
                    lhs,
                    rhs,
                    gap: lhs - rhs,
                });
            }
        }
    }
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nonnegativity_passes_and_control_fails() {
        let report = check_nonnegativity(8, 501);
        assert!(report.passed(), "worst: {:?}", report.violations.first());
        let control = check_nonnegativity_control(4, 101);
        assert!(!control.passed());
        // the textbook case: g_{1,-1}(τ) = -τ
        assert!(control
            .violations
            .iter()
            .any(|v| v.params.starts_with("p=1 q=-1")));
    }

    #[test]
    fn p_zero_is_trivially_nonnegative() {
        let report = check_nonnegativity(0, 51);
        assert!(report.passed());
    }

    #[test]
    fn monotonicity_passes_and_control_fails() {
        let report = check_monotonicity(8, 501);
        assert!(report.passed(), "worst: {:?}", report.violations.first());
        // boundary case q = p: g_{2,2} is constant, derivative 0 (non-strict)
        assert!(report.worst_margin >= -POLY_TOL);
        let control = check_monotonicity_control(4, 101);
        assert!(!control.passed());
    }

    #[test]
    fn max_abs_passes_and_control_fails() {
        let report = check_max_abs(8, 1001);
        assert!(report.passed(), "worst: {:?}", report.violations.first());
        let control = check_max_abs_control(4, 101);
        assert!(!control.passed());
    }

    #[test]
    fn max_abs_specific_values() {
        // p=3, q=3: the product is 6; p=4, q=5.5: 5.5*4.5*3.5*2.5
        let family = generate_family(4);
        let ge = GEval::from_gpoly(&family[3], 3.0);
        assert!((ge.value(1.0).abs() - 6.0).abs() < 1e-12);
        assert!((ge.value(-1.0).abs() - 6.0).abs() < 1e-12);
        let ge = GEval::from_gpoly(&family[4], 5.5);
        assert!((ge.value(1.0) - 216.5625).abs() < 1e-10);
    }

    #[test]
    fn fraction_monotone_passes_and_control_fails() {
        let report = check_fraction_monotone(6, 10, 101);
        assert!(report.passed(), "worst: {:?}", report.violations.first());
        let control = check_fraction_monotone_control(2, 101);
        assert!(!control.passed());
    }

    #[test]
    fn inequality_lemmas_pass_and_control_fails() {
        let report = check_inequality_lemmas(6, 10, 101);
        assert!(report.passed(), "worst: {:?}", report.violations.first());
        let control = check_inequality_lemmas_control(3, 101);
        assert!(!control.passed());
    }

    #[test]
    fn reports_are_deterministic() {
        let a = check_fraction_monotone(4, 5, 51);
        let b = check_fraction_monotone(4, 5, 51);
        assert_eq!(a.cases_run, b.cases_run);
        assert_eq!(a.worst_margin, b.worst_margin);
        assert_eq!(a.violations, b.violations);
    }
}
