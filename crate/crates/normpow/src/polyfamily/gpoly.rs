//! Polynomials in `τ` whose coefficients are [`QPoly`] values, and the
//! validated family member type [`GPoly`].

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::qpoly::QPoly;

/// Polynomial in `τ` with [`QPoly`] coefficients, `coeffs[k]` multiplying
/// `τ^k`. Canonical form: no trailing zero coefficients.
///
/// This is the workhorse type for the symbolic identity checks; [`GPoly`]
/// wraps it with the family index `p` once the structural invariants hold.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TauPoly {
    coeffs: Vec<QPoly>,
}

impl TauPoly {
    pub fn zero() -> Self {
        TauPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: QPoly) -> Self {
        TauPoly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(coeffs: Vec<QPoly>) -> Self {
        let mut p = TauPoly { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `τ`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[QPoly] {
        &self.coeffs
    }

    /// Coefficient of `τ^k` (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> QPoly {
        self.coeffs.get(k).cloned().unwrap_or_else(QPoly::zero)
    }

    /// Exact term-by-term derivative in `τ`; the degree drops by one.
    pub fn derivative(&self) -> TauPoly {
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale_i64(k as i64))
            .collect();
        TauPoly::from_coeffs(out)
    }

    /// Multiply by `τ` (shift all powers up by one).
    pub fn mul_tau(&self) -> TauPoly {
        if self.is_zero() {
            return TauPoly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(QPoly::zero());
        out.extend(self.coeffs.iter().cloned());
        TauPoly::from_coeffs(out)
    }

    /// Multiply by `(1 - τ²)`.
    pub fn mul_one_minus_tau_sq(&self) -> TauPoly {
        if self.is_zero() {
            return TauPoly::zero();
        }
        let n = self.coeffs.len();
        let mut out = Vec::with_capacity(n + 2);
        for k in 0..n + 2 {
            let direct = if k < n { self.coeffs[k].clone() } else { QPoly::zero() };
            let shifted = if k >= 2 { self.coeff(k - 2) } else { QPoly::zero() };
            out.push(&direct - &shifted);
        }
        TauPoly::from_coeffs(out)
    }

    /// Multiply every coefficient by a fixed [`QPoly`].
    pub fn scale_qpoly(&self, factor: &QPoly) -> TauPoly {
        TauPoly::from_coeffs(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Substitute `q -> q + delta` in every coefficient.
    pub fn shift_q(&self, delta: i64) -> TauPoly {
        TauPoly::from_coeffs(self.coeffs.iter().map(|c| c.shift_q(delta)).collect())
    }

    /// Sum of all `τ`-coefficients, i.e. the exact value at `τ = 1`.
    pub fn coeff_sum(&self) -> QPoly {
        let mut acc = QPoly::zero();
        for c in &self.coeffs {
            acc = &acc + c;
        }
        acc
    }

    /// Double-precision evaluation: each `q`-coefficient by Horner first
    /// (innermost), then Horner in `τ`. The order is fixed for
    /// reproducibility across platforms.
    pub fn eval(&self, q: f64, tau: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * tau + c.eval_f64(q);
        }
        acc
    }

    /// The `τ`-coefficients evaluated at a fixed `q`, lowest power first.
    pub fn tau_coeffs_at(&self, q: f64) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.eval_f64(q)).collect()
    }

    /// Condition sums `Σ_i |a_i| |q|^i` of each `τ`-coefficient.
    pub fn tau_coeffs_abs_at(&self, q: f64) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.eval_abs_f64(q)).collect()
    }
}

impl Add for &TauPoly {
    type Output = TauPoly;
    fn add(self, rhs: &TauPoly) -> TauPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        TauPoly::from_coeffs((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl Sub for &TauPoly {
    type Output = TauPoly;
    fn sub(self, rhs: &TauPoly) -> TauPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        TauPoly::from_coeffs((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl Neg for &TauPoly {
    type Output = TauPoly;
    fn neg(self) -> TauPoly {
        TauPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for TauPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*tau")?,
                _ => write!(f, "({c})*tau^{k}")?,
            }
        }
        Ok(())
    }
}

/// A member of the recursive family: `g_{p,q}` as an exact polynomial in `τ`
/// with `q`-polynomial coefficients.
///
/// Invariants: degree in `τ` is at most `p`; only `τ`-powers with the same
/// parity as `p` carry nonzero coefficients; `g_{0,q} = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GPoly {
    p: u32,
    poly: TauPoly,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GPolyError {
    #[error("degree {deg} in tau exceeds family index p={p}")]
    DegreeTooHigh { p: u32, deg: usize },
    #[error("invalid big-integer literal {literal:?} in tau^{tau_power} coefficient")]
    BadInteger { tau_power: usize, literal: String },
}

impl GPoly {
    /// Wrap a raw `τ`-polynomial as family member `p`.
    ///
    /// Only the degree bound is enforced here; parity and the recursion
    /// itself are checked by the identity suite, so that deliberately
    /// corrupted polynomials can still be constructed for testing.
    pub fn from_parts(p: u32, poly: TauPoly) -> Result<Self, GPolyError> {
        if let Some(deg) = poly.degree() {
            if deg > p as usize {
                return Err(GPolyError::DegreeTooHigh { p, deg });
            }
        }
        Ok(GPoly { p, poly })
    }

    pub fn p_index(&self) -> u32 {
        self.p
    }

    pub fn poly(&self) -> &TauPoly {
        &self.poly
    }

    pub fn tau_coeffs(&self) -> &[QPoly] {
        self.poly.coeffs()
    }

    /// Double-precision evaluation at `(q, τ)`.
    pub fn eval(&self, q: f64, tau: f64) -> f64 {
        self.poly.eval(q, tau)
    }

    /// Substitute `q -> q + delta`; the result is still a polynomial of
    /// `τ`-degree at most `p`, so the family index is preserved.
    pub fn shift_q(&self, delta: i64) -> GPoly {
        GPoly {
            p: self.p,
            poly: self.poly.shift_q(delta),
        }
    }
}

impl fmt::Display for GPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g_{}(tau) = {}", self.p, self.poly)
    }
}

/// JSON form of [`GPoly`]: coefficients as decimal strings so that
/// arbitrary-precision integers survive the round trip.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GPolyJson {
    pub p: u32,
    pub tau_coeffs: Vec<Vec<String>>,
}

impl From<&GPoly> for GPolyJson {
    fn from(g: &GPoly) -> Self {
        GPolyJson {
            p: g.p,
            tau_coeffs: g
                .poly
                .coeffs()
                .iter()
                .map(|c| c.coeffs().iter().map(|b| b.to_string()).collect())
                .collect(),
        }
    }
}

impl TryFrom<&GPolyJson> for GPoly {
    type Error = GPolyError;

    fn try_from(j: &GPolyJson) -> Result<Self, Self::Error> {
        let mut coeffs = Vec::with_capacity(j.tau_coeffs.len());
        for (k, qs) in j.tau_coeffs.iter().enumerate() {
            let mut ints = Vec::with_capacity(qs.len());
            for s in qs {
                let v: BigInt = s.parse().map_err(|_| GPolyError::BadInteger {
                    tau_power: k,
                    literal: s.clone(),
                })?;
                ints.push(v);
            }
            coeffs.push(QPoly::from_coeffs(ints));
        }
        GPoly::from_parts(j.p, TauPoly::from_coeffs(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(coeffs: &[i64]) -> QPoly {
        QPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn derivative_power_rule() {
        // d/dtau [q*tau] = q
        let g1 = TauPoly::from_coeffs(vec![QPoly::zero(), qp(&[0, 1])]);
        assert_eq!(g1.derivative(), TauPoly::constant(qp(&[0, 1])));
        // d/dtau [1] = 0
        assert!(TauPoly::constant(QPoly::one()).derivative().is_zero());
    }

    #[test]
    fn one_minus_tau_sq() {
        // (1 - tau^2) * (a + b tau) = a + b tau - a tau^2 - b tau^3
        let p = TauPoly::from_coeffs(vec![qp(&[2]), qp(&[3])]);
        let r = p.mul_one_minus_tau_sq();
        assert_eq!(r.coeff(0), qp(&[2]));
        assert_eq!(r.coeff(1), qp(&[3]));
        assert_eq!(r.coeff(2), qp(&[-2]));
        assert_eq!(r.coeff(3), qp(&[-3]));
    }

    #[test]
    fn degree_guard() {
        let too_big = TauPoly::from_coeffs(vec![QPoly::zero(), QPoly::zero(), QPoly::one()]);
        assert_eq!(
            GPoly::from_parts(1, too_big).unwrap_err(),
            GPolyError::DegreeTooHigh { p: 1, deg: 2 }
        );
    }

    #[test]
    fn json_rejects_garbage() {
        let j = GPolyJson {
            p: 1,
            tau_coeffs: vec![vec!["not-a-number".into()]],
        };
        assert!(matches!(
            GPoly::try_from(&j),
            Err(GPolyError::BadInteger { tau_power: 0, .. })
        ));
    }
}
