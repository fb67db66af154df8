//! Evaluation of the derivative tensors `D^p f_q(x)`.
//!
//! For a unit direction `h`, the closed form is
//! `D^p f_q(x)[h]^p = ‖x‖^{q-p} g_{p,q}(τ_h(x))`; general directions follow
//! by `p`-homogeneity of the form, and mixed arguments by the polarization
//! identity.

use thiserror::Error;

use super::metric::Metric;
use crate::polyfamily::generate_family;

#[derive(Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("direction must be a unit vector (got norm {norm})")]
    NonUnitDirection { norm: f64 },
    #[error("D^{p} f_q is undefined at the origin for q={q} (requires p < q)")]
    UndefinedAtOrigin { p: u32, q: f64 },
    #[error("expected {expected} direction arguments, got {got}")]
    ArgumentCountMismatch { expected: usize, got: usize },
    #[error("finite-difference stencil hits the origin")]
    StencilHitsOrigin,
    #[error("finite differences support orders 1..=4, got {0}")]
    UnsupportedOrder(u32),
}

/// `g_{p,q}` with `q` frozen: a plain `f64` polynomial in `τ`, cheap enough
/// for the inner loops of the sphere ascent and the sampling suites.
///
/// Alongside the coefficients it carries their condition sums
/// `Σ_i |a_i| |q|^i`, from which [`eval_noise`](Self::eval_noise) derives a
/// provable bound on the rounding error of an evaluation — the verification
/// suites use it to separate float noise from genuine violations at any
/// magnitude.
#[derive(Clone, Debug)]
pub struct GEval {
    coeffs: Vec<f64>,
    abs_coeffs: Vec<f64>,
}

impl GEval {
    pub fn new(p: u32, q: f64) -> Self {
        let family = generate_family(p);
        GEval::from_gpoly(&family[p as usize], q)
    }

    /// Freeze an already-generated family member at a fixed `q`.
    pub fn from_gpoly(g: &crate::polyfamily::GPoly, q: f64) -> Self {
        GEval {
            coeffs: g.poly().tau_coeffs_at(q),
            abs_coeffs: g.poly().tau_coeffs_abs_at(q),
        }
    }

    pub fn value(&self, tau: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * tau + c;
        }
        acc
    }

    /// Derivative in `τ`.
    pub fn deriv(&self, tau: f64) -> f64 {
        let mut acc = 0.0;
        for (k, c) in self.coeffs.iter().enumerate().rev().take_while(|(k, _)| *k >= 1) {
            acc = acc * tau + (k as f64) * c;
        }
        acc
    }

    /// Rounding-error bound for [`value`](Self::value) at `tau`: a few
    /// machine epsilons times the condition sum of the two nested Horner
    /// stages.
    pub fn eval_noise(&self, tau: f64) -> f64 {
        let at = tau.abs();
        let mut cond = 0.0;
        for c in self.abs_coeffs.iter().rev() {
            cond = cond * at + c;
        }
        let n = self.coeffs.len() as f64;
        8.0 * (n + 2.0) * f64::EPSILON * cond
    }

    /// Rounding-error bound for [`deriv`](Self::deriv) at `tau`.
    pub fn deriv_noise(&self, tau: f64) -> f64 {
        let at = tau.abs();
        let mut cond = 0.0;
        for (k, c) in self
            .abs_coeffs
            .iter()
            .enumerate()
            .rev()
            .take_while(|(k, _)| *k >= 1)
        {
            cond = cond * at + (k as f64) * c;
        }
        let n = self.coeffs.len() as f64;
        8.0 * (n + 2.0) * f64::EPSILON * cond
    }

    /// Suffix-sum form of `(g(1) - g(τ)) / (1 - τ)`: exact polynomial
    /// division, free of the cancellation that plagues the raw quotient as
    /// `τ -> 1`.
    pub fn secant_from_one(&self) -> GEval {
        let n = self.coeffs.len();
        let mut out = vec![0.0; n.saturating_sub(1)];
        let mut abs_out = vec![0.0; n.saturating_sub(1)];
        let mut suffix = 0.0;
        let mut abs_suffix = 0.0;
        for k in (1..n).rev() {
            suffix += self.coeffs[k];
            abs_suffix += self.abs_coeffs[k];
            out[k - 1] = suffix;
            abs_out[k - 1] = abs_suffix;
        }
        GEval {
            coeffs: out,
            abs_coeffs: abs_out,
        }
    }
}

/// The derivative tensor `D^p f_q(x)` as a reusable object: the base point
/// and the frozen polynomial are captured once, and diagonal values
/// `D^p f_q(x)[h]^p` come from [`value_at`](Self::value_at).
///
/// At `x = 0` (which requires `p < q`) the value is 0 for every direction.
#[derive(Clone, Debug)]
pub struct DirectionalDerivative {
    metric: Metric,
    p: u32,
    q: f64,
    x: Vec<f64>,
    geval: GEval,
}

impl DirectionalDerivative {
    pub fn new(metric: &Metric, p: u32, q: f64, x: &[f64]) -> Result<Self, EvalError> {
        if metric.norm(x) == 0.0 && f64::from(p) >= q {
            return Err(EvalError::UndefinedAtOrigin { p, q });
        }
        Ok(DirectionalDerivative {
            metric: metric.clone(),
            p,
            q,
            x: x.to_vec(),
            geval: GEval::new(p, q),
        })
    }

    pub fn order(&self) -> u32 {
        self.p
    }

    pub fn power(&self) -> f64 {
        self.q
    }

    /// `D^p f_q(x)[h]^p` for a general direction `h`.
    pub fn value_at(&self, h: &[f64]) -> f64 {
        deriv_diag_with(&self.metric, &self.geval, self.p, self.q, &self.x, h)
            .expect("origin case was ruled out at construction")
    }
}

/// `τ_h(x) = ⟨Bx, h⟩ / ‖x‖` for a unit `h`, with `τ_h(0) = 0`.
///
/// The result is clamped into `[-1, 1]`; Cauchy-Schwartz guarantees the
/// exact value lies there and rounding may overshoot by at most a few ulps.
pub fn tau(metric: &Metric, x: &[f64], h: &[f64]) -> Result<f64, EvalError> {
    let hn = metric.norm(h);
    if (hn - 1.0).abs() > 1e-10 {
        return Err(EvalError::NonUnitDirection { norm: hn });
    }
    let xn = metric.norm(x);
    if xn == 0.0 {
        return Ok(0.0);
    }
    Ok((metric.inner(x, h) / xn).clamp(-1.0, 1.0))
}

/// Diagonal derivative value `D^p f_q(x)[h]^p` for a general direction `h`
/// (handled by factoring `‖h‖^p` and normalizing).
pub fn deriv_diag(metric: &Metric, p: u32, q: f64, x: &[f64], h: &[f64]) -> Result<f64, EvalError> {
    let geval = GEval::new(p, q);
    deriv_diag_with(metric, &geval, p, q, x, h)
}

pub(crate) fn deriv_diag_with(
    metric: &Metric,
    geval: &GEval,
    p: u32,
    q: f64,
    x: &[f64],
    h: &[f64],
) -> Result<f64, EvalError> {
    let xn = metric.norm(x);
    if xn == 0.0 {
        if (f64::from(p)) < q {
            return Ok(0.0);
        }
        return Err(EvalError::UndefinedAtOrigin { p, q });
    }
    if p == 0 {
        return Ok(xn.powf(q));
    }
    let hn = metric.norm(h);
    if hn == 0.0 {
        return Ok(0.0);
    }
    let t = (metric.inner(x, h) / (xn * hn)).clamp(-1.0, 1.0);
    Ok(hn.powi(p as i32) * xn.powf(q - f64::from(p)) * geval.value(t))
}

/// Mixed derivative value `D^p f_q(x)[h_1, ..., h_p]`, recovered from
/// diagonal values through the polarization identity
///
/// ```text
/// L[h_1..h_p] = (1/p!) Σ_{∅≠S⊆{1..p}} (-1)^{p-|S|} L[Σ_{i∈S} h_i]^p.
/// ```
///
/// Requires `x ≠ 0`: the identity needs `2^p - 1` diagonal evaluations, each
/// defined away from the origin.
pub fn deriv_mixed(
    metric: &Metric,
    p: u32,
    q: f64,
    x: &[f64],
    directions: &[Vec<f64>],
) -> Result<f64, EvalError> {
    if directions.len() != p as usize {
        return Err(EvalError::ArgumentCountMismatch {
            expected: p as usize,
            got: directions.len(),
        });
    }
    if metric.norm(x) == 0.0 {
        return Err(EvalError::UndefinedAtOrigin { p, q });
    }
    if p == 0 {
        return Ok(metric.norm(x).powf(q));
    }
    let geval = GEval::new(p, q);
    let dim = metric.dim();
    let mut total = 0.0;
    for mask in 1u32..(1 << p) {
        let mut h_sum = vec![0.0; dim];
        for (i, h) in directions.iter().enumerate() {
            if mask & (1 << i) != 0 {
                for (a, b) in h_sum.iter_mut().zip(h) {
                    *a += b;
                }
            }
        }
        let sign = if (p - mask.count_ones()) % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * deriv_diag_with(metric, &geval, p, q, x, &h_sum)?;
    }
    let factorial: f64 = (1..=p).map(f64::from).product();
    Ok(total / factorial)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eye(dim: usize) -> Metric {
        Metric::identity(dim)
    }

    #[test]
    fn tau_examples() {
        let m = eye(2);
        assert!((tau(&m, &[3.0, 4.0], &[1.0, 0.0]).unwrap() - 0.6).abs() < 1e-15);
        // x = h: Cauchy-Schwartz equality
        let h = [0.6, 0.8];
        assert!((tau(&m, &h, &h).unwrap() - 1.0).abs() < 1e-12);
        // origin
        assert_eq!(tau(&m, &[0.0, 0.0], &[1.0, 0.0]).unwrap(), 0.0);
        // non-unit direction
        assert!(matches!(
            tau(&m, &[1.0, 0.0], &[2.0, 0.0]),
            Err(EvalError::NonUnitDirection { .. })
        ));
    }

    #[test]
    fn diag_examples() {
        let m = eye(2);
        // gradient of ||x||^2 against e_1: 2 x_1
        let v = deriv_diag(&m, 1, 2.0, &[3.0, 4.0], &[1.0, 0.0]).unwrap();
        assert!((v - 6.0).abs() < 1e-12);
        // Hessian of ||x||^2 on any unit direction is 2
        let v = deriv_diag(&m, 2, 2.0, &[0.3, -0.7], &[0.0, 1.0]).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
        // p=3, q=3 at x=h unit: 3*2*1
        let h = [0.6, 0.8];
        let v = deriv_diag(&m, 3, 3.0, &h, &h).unwrap();
        assert!((v - 6.0).abs() < 1e-10);
        // origin with p < q
        assert_eq!(deriv_diag(&m, 2, 2.5, &[0.0, 0.0], &[1.0, 0.0]).unwrap(), 0.0);
        // origin with p >= q is a hard error
        assert!(matches!(
            deriv_diag(&m, 2, 2.0, &[0.0, 0.0], &[1.0, 0.0]),
            Err(EvalError::UndefinedAtOrigin { p: 2, .. })
        ));
    }

    #[test]
    fn diag_is_p_homogeneous_in_h() {
        let m = Metric::new(&[vec![2.0, 0.3], vec![0.3, 1.5]]).unwrap();
        let x = [0.8, -0.4];
        let h = [0.2, 0.9];
        for p in 1..=4u32 {
            let q = f64::from(p) + 0.5;
            let unit = deriv_diag(&m, p, q, &x, &m.normalize(&h).unwrap()).unwrap();
            let general = deriv_diag(&m, p, q, &x, &h).unwrap();
            let scale = m.norm(&h).powi(p as i32);
            assert!(
                (general - scale * unit).abs() <= 1e-10 * (1.0 + general.abs()),
                "p={p}"
            );
        }
    }

    #[test]
    fn diag_is_homogeneous_in_x() {
        let m = eye(3);
        let x = [0.4, -0.2, 0.9];
        let h = [0.0, 1.0, 0.0];
        for p in 0..=3u32 {
            for lambda in [0.25, 1.5, 7.0] {
                let q = f64::from(p) + 0.75;
                let base = deriv_diag(&m, p, q, &x, &h).unwrap();
                let scaled_x: Vec<f64> = x.iter().map(|v| v * lambda).collect();
                let scaled = deriv_diag(&m, p, q, &scaled_x, &h).unwrap();
                let expect = lambda.powf(q - f64::from(p)) * base;
                assert!(
                    ((scaled - expect) / (1.0 + expect.abs())).abs() < 1e-10,
                    "p={p} lambda={lambda}"
                );
            }
        }
    }

    #[test]
    fn diag_rotation_invariant_under_identity_metric() {
        let m = eye(2);
        let (c, s) = (0.8, 0.6); // rotation by the 3-4-5 angle
        let rot = |v: &[f64]| vec![c * v[0] - s * v[1], s * v[0] + c * v[1]];
        let x = [1.1, -0.3];
        let h = [0.28, 0.96]; // unit
        for p in 1..=3u32 {
            let q = f64::from(p) + 0.5;
            let a = deriv_diag(&m, p, q, &x, &h).unwrap();
            let b = deriv_diag(&m, p, q, &rot(&x), &rot(&h)).unwrap();
            assert!((a - b).abs() < 1e-10 * (1.0 + a.abs()), "p={p}");
        }
    }

    #[test]
    fn mixed_hessian_of_norm_squared() {
        let m = Metric::new(&[vec![2.0, 0.3], vec![0.3, 1.5]]).unwrap();
        let h1 = vec![1.0, 0.0];
        let h2 = vec![0.3, -0.8];
        let v = deriv_mixed(&m, 2, 2.0, &[0.5, 0.7], &[h1.clone(), h2.clone()]).unwrap();
        let expect = 2.0 * m.inner(&h1, &h2);
        assert!((v - expect).abs() < 1e-10);
    }

    #[test]
    fn mixed_is_symmetric_and_matches_diag() {
        let m = Metric::new(&[vec![2.0, 0.3, 0.0], vec![0.3, 1.5, 0.2], vec![0.0, 0.2, 1.0]])
            .unwrap();
        let x = [0.5, -0.9, 0.2];
        let h1 = vec![1.0, 0.2, -0.1];
        let h2 = vec![-0.4, 0.8, 0.3];
        let h3 = vec![0.2, 0.2, 0.9];
        let p = 3;
        let q = 3.5;
        let a = deriv_mixed(&m, p, q, &x, &[h1.clone(), h2.clone(), h3.clone()]).unwrap();
        let b = deriv_mixed(&m, p, q, &x, &[h3.clone(), h1.clone(), h2.clone()]).unwrap();
        assert!((a - b).abs() < 1e-10 * (1.0 + a.abs()));
        // coincident arguments reduce to the diagonal value
        let d = deriv_mixed(&m, p, q, &x, &[h1.clone(), h1.clone(), h1.clone()]).unwrap();
        let dd = deriv_diag(&m, p, q, &x, &h1).unwrap();
        assert!(((d - dd) / (1.0 + dd.abs())).abs() < 1e-10);
    }

    #[test]
    fn mixed_argument_errors() {
        let m = eye(2);
        assert!(matches!(
            deriv_mixed(&m, 2, 2.5, &[1.0, 0.0], &[vec![1.0, 0.0]]),
            Err(EvalError::ArgumentCountMismatch { expected: 2, got: 1 })
        ));
        assert!(matches!(
            deriv_mixed(&m, 1, 1.5, &[0.0, 0.0], &[vec![1.0, 0.0]]),
            Err(EvalError::UndefinedAtOrigin { .. })
        ));
    }

    #[test]
    fn directional_derivative_object() {
        let m = eye(2);
        let dd = DirectionalDerivative::new(&m, 1, 2.0, &[3.0, 4.0]).unwrap();
        assert!((dd.value_at(&[1.0, 0.0]) - 6.0).abs() < 1e-12);
        // zero at the origin for every direction when p < q
        let dd = DirectionalDerivative::new(&m, 2, 2.5, &[0.0, 0.0]).unwrap();
        for h in [[1.0, 0.0], [0.3, -0.9], [0.0, 2.0]] {
            assert_eq!(dd.value_at(&h), 0.0);
        }
        // p >= q at the origin is rejected at construction
        assert!(matches!(
            DirectionalDerivative::new(&m, 2, 2.0, &[0.0, 0.0]),
            Err(EvalError::UndefinedAtOrigin { .. })
        ));
    }

    #[test]
    fn geval_matches_symbolic_eval() {
        let family = generate_family(5);
        for p in 0..=5u32 {
            let q = f64::from(p) + 0.3;
            let ge = GEval::new(p, q);
            for k in 0..=20 {
                let t = -1.0 + 0.1 * f64::from(k);
                let direct = family[p as usize].eval(q, t);
                assert!(
                    (ge.value(t) - direct).abs() <= 1e-12 * (1.0 + direct.abs()),
                    "p={p} t={t}"
                );
            }
        }
    }

    #[test]
    fn secant_from_one_is_stable() {
        let ge = GEval::new(2, 2.5); // g(τ) = 2.5(0.5 τ² + 1)
        let secant = ge.secant_from_one();
        // (g(1) - g(τ)) / (1 - τ) = 1.25 (1 + τ)
        for t in [0.0, 0.5, 0.999999999999] {
            let expect = 1.25 * (1.0 + t);
            assert!((secant.value(t) - expect).abs() < 1e-12);
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn vec2() -> impl Strategy<Value = Vec<f64>> {
            proptest::collection::vec(-2.0f64..2.0, 2)
        }

        fn metric() -> Metric {
            Metric::new(&[vec![2.0, 0.3], vec![0.3, 1.5]]).unwrap()
        }

        proptest! {
            #[test]
            fn homogeneity_in_x(x in vec2(), h in vec2(), lambda in 0.1f64..8.0, p in 0u32..4, k in 0usize..4) {
                let m = metric();
                prop_assume!(m.norm(&x) > 1e-3);
                let nu = [0.25, 0.5, 0.75, 1.0][k];
                let q = f64::from(p) + nu;
                let base = deriv_diag(&m, p, q, &x, &h).unwrap();
                let xs: Vec<f64> = x.iter().map(|v| v * lambda).collect();
                let scaled = deriv_diag(&m, p, q, &xs, &h).unwrap();
                let expect = lambda.powf(q - f64::from(p)) * base;
                prop_assert!(((scaled - expect) / (1.0 + expect.abs())).abs() < 1e-10);
            }

            #[test]
            fn polarization_diagonal_consistency(x in vec2(), h in vec2(), p in 1u32..4) {
                let m = metric();
                prop_assume!(m.norm(&x) > 1e-3);
                prop_assume!(m.norm(&h) > 1e-3);
                let q = f64::from(p) + 0.5;
                let hs = vec![h.clone(); p as usize];
                let mixed = deriv_mixed(&m, p, q, &x, &hs).unwrap();
                let diag = deriv_diag(&m, p, q, &x, &h).unwrap();
                prop_assert!(((mixed - diag) / (1.0 + diag.abs())).abs() < 1e-10);
            }

            #[test]
            fn polarization_permutation_invariance(x in vec2(), a in vec2(), b in vec2(), c in vec2()) {
                let m = metric();
                prop_assume!(m.norm(&x) > 1e-3);
                let q = 3.75;
                let fwd = deriv_mixed(&m, 3, q, &x, &[a.clone(), b.clone(), c.clone()]).unwrap();
                let rev = deriv_mixed(&m, 3, q, &x, &[c, a, b]).unwrap();
                prop_assert!(((fwd - rev) / (1.0 + fwd.abs())).abs() < 1e-10);
            }
        }
    }
}
