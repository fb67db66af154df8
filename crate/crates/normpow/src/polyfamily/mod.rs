//! Exact symbolic construction of the polynomial family `g_{p,q}`.
//!
//! The family is defined by `g_{0,q}(τ) = 1` and the recursion
//!
//! ```text
//! g_{p,q}(τ) = (1 - τ²) g'_{p-1,q}(τ) + (q - p + 1) τ g_{p-1,q}(τ),
//! ```
//!
//! carried out over arbitrary-precision integer coefficients so every
//! algebraic identity the family satisfies can be checked exactly,
//! coefficient by coefficient.

mod gpoly;
mod identities;
mod qpoly;

pub use gpoly::{GPoly, GPolyError, GPolyJson, TauPoly};
pub use identities::{check_identities, check_identity_suite};
pub use qpoly::QPoly;

use num_bigint::BigInt;

/// Generate `g_{0,q} .. g_{p_max,q}` by the defining recursion.
pub fn generate_family(p_max: u32) -> Vec<GPoly> {
    let mut family: Vec<GPoly> = Vec::with_capacity(p_max as usize + 1);
    let mut current = TauPoly::constant(QPoly::one());
    family.push(GPoly::from_parts(0, current.clone()).expect("constant has degree 0"));
    for p in 1..=p_max {
        let deriv_term = current.derivative().mul_one_minus_tau_sq();
        // (q - p + 1) τ g_{p-1,q}
        let tau_term = current
            .mul_tau()
            .scale_qpoly(&QPoly::linear(1 - i64::from(p), 1));
        current = &deriv_term + &tau_term;
        family.push(GPoly::from_parts(p, current.clone()).expect("recursion preserves degree"));
    }
    family
}

/// Exact derivative in `τ` of a family member. The result is no longer a
/// family member itself (its parity flips), so it comes back as a raw
/// `τ`-polynomial.
pub fn poly_derivative(g: &GPoly) -> TauPoly {
    g.poly().derivative()
}

/// Substitute `q -> q + delta` in every coefficient of `g`.
pub fn shift_q(g: &GPoly, delta: i64) -> GPoly {
    g.shift_q(delta)
}

/// Double-precision evaluation of `g` at `(q, τ)`.
pub fn eval_poly(g: &GPoly, q: f64, tau: f64) -> f64 {
    g.eval(q, tau)
}

/// Exact boundary values of `g_{p,q}`: the pair `(g_{p,q}(0), g_{p,q}(1))`
/// as polynomials in `q`, extracted from the generated family.
///
/// They satisfy the closed forms
///
/// ```text
/// g_{p,q}(0) = (p-1)!! ∏_{i=0}^{p/2-1} (q - 2i)   (p even; 0 for p odd),
/// g_{p,q}(1) = ∏_{i=0}^{p-1} (q - i),
/// ```
///
/// which the identity suite verifies coefficient-exactly.
pub fn boundary_values(p: u32) -> (QPoly, QPoly) {
    let family = generate_family(p);
    let g = &family[p as usize];
    (g.poly().coeff(0), g.poly().coeff_sum())
}

/// `(p-1)!! ∏_{i=0}^{p/2-1} (q - 2i)` for even `p`, the zero polynomial for
/// odd `p`.
pub fn boundary_value_at_zero_closed(p: u32) -> QPoly {
    if p % 2 == 1 {
        return QPoly::zero();
    }
    let mut acc = QPoly::constant(double_factorial(i64::from(p) - 1));
    for i in 0..p / 2 {
        acc = &acc * &QPoly::linear(-2 * i64::from(i), 1);
    }
    acc
}

/// `∏_{i=0}^{p-1} (q - i)`.
pub fn boundary_value_at_one_closed(p: u32) -> QPoly {
    let mut acc = QPoly::one();
    for i in 0..p {
        acc = &acc * &QPoly::linear(-i64::from(i), 1);
    }
    acc
}

/// Leading `τ`-coefficient closed form `∏_{i=0}^{p-1} (q - 2i)`, an observed
/// invariant of the family (verified symbolically by the tests, not assumed).
pub fn leading_coeff_closed(p: u32) -> QPoly {
    let mut acc = QPoly::one();
    for i in 0..p {
        acc = &acc * &QPoly::linear(-2 * i64::from(i), 1);
    }
    acc
}

/// Double factorial with the conventions `(-1)!! = 0!! = 1`.
pub fn double_factorial(n: i64) -> BigInt {
    let mut acc = BigInt::from(1);
    let mut k = n;
    while k >= 2 {
        acc *= k;
        k -= 2;
    }
    acc
}
