//! Exact univariate polynomials in the indeterminate `q`.
//!
//! Coefficients are arbitrary-precision integers, so every operation here is
//! exact; products such as `(q)(q-2)(q-4)...` can grow combinatorially and
//! must never round.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Polynomial in `q` with integer coefficients, `coeffs[i]` multiplying `q^i`.
///
/// Canonical form: no trailing zero coefficients; the zero polynomial is the
/// empty coefficient sequence. All equality checks compare canonical forms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(BigInt::from(1))
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        QPoly::from_coeffs(vec![c.into()])
    }

    /// The polynomial `c0 + c1 q`.
    pub fn linear(c0: impl Into<BigInt>, c1: impl Into<BigInt>) -> Self {
        QPoly::from_coeffs(vec![c0.into(), c1.into()])
    }

    /// Build from raw coefficients (index = power of `q`), normalizing away
    /// trailing zeros.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = QPoly { coeffs };
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

    /// Degree in `q`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^i` (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn scale(&self, factor: &BigInt) -> QPoly {
        if factor.is_zero() {
            return QPoly::zero();
        }
        QPoly::from_coeffs(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn scale_i64(&self, factor: i64) -> QPoly {
        self.scale(&BigInt::from(factor))
    }

    /// Substitute `q -> q + delta`, expanded exactly with precomputed
    /// binomial rows.
    pub fn shift_q(&self, delta: i64) -> QPoly {
        if delta == 0 || self.is_zero() {
            return self.clone();
        }
        let n = self.coeffs.len();
        let rows = pascal_rows(n - 1);
        let d = BigInt::from(delta);
        // delta^0 .. delta^{n-1}
        let mut d_pows = Vec::with_capacity(n);
        d_pows.push(BigInt::from(1));
        for k in 1..n {
            let prev = d_pows[k - 1].clone();
            d_pows.push(prev * &d);
        }
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            // a (q + delta)^i = a * sum_j C(i,j) delta^{i-j} q^j
            for j in 0..=i {
                out[j] += a * &rows[i][j] * &d_pows[i - j];
            }
        }
        QPoly::from_coeffs(out)
    }

    /// Double-precision Horner evaluation at a real `q`.
    pub fn eval_f64(&self, q: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * q + big_to_f64(c);
        }
        acc
    }

    /// `Σ |a_i| |q|^i`: the Horner condition sum, bounding the rounding
    /// error of [`eval_f64`](Self::eval_f64) up to a small multiple of
    /// machine epsilon.
    pub fn eval_abs_f64(&self, q: f64) -> f64 {
        let aq = q.abs();
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * aq + big_to_f64(c).abs();
        }
        acc
    }

    /// Exact evaluation at an integer `q`.
    pub fn eval_bigint(&self, q: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q + c;
        }
        acc
    }
}

pub(crate) fn big_to_f64(c: &BigInt) -> f64 {
    c.to_f64().unwrap_or(if c.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

/// Pascal's triangle rows 0..=n.
fn pascal_rows(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    rows.push(vec![BigInt::from(1)]);
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut row = Vec::with_capacity(i + 1);
        row.push(BigInt::from(1));
        for j in 1..i {
            row.push(&prev[j - 1] + &prev[j]);
        }
        row.push(BigInt::from(1));
        rows.push(row);
    }
    rows
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        QPoly::from_coeffs(out)
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        QPoly::from_coeffs(out)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(out)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if !mag.is_one() || i == 0 {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qp(coeffs: &[i64]) -> QPoly {
        QPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn canonical_zero() {
        assert!(qp(&[0, 0, 0]).is_zero());
        assert_eq!(qp(&[0, 0, 0]), QPoly::zero());
        assert_eq!(qp(&[1, 2, 0]).degree(), Some(1));
    }

    #[test]
    fn arithmetic() {
        let a = qp(&[1, 2]); // 1 + 2q
        let b = qp(&[0, -2, 1]); // q^2 - 2q
        assert_eq!(&a + &b, qp(&[1, 0, 1]));
        assert_eq!(&a - &a, QPoly::zero());
        // (1 + 2q)(q^2 - 2q) = 2q^3 - 3q^2 - 2q
        assert_eq!(&a * &b, qp(&[0, -2, -3, 2]));
    }

    #[test]
    fn shift_examples() {
        // q -> q - 2 applied to q gives q - 2
        assert_eq!(qp(&[0, 1]).shift_q(-2), qp(&[-2, 1]));
        // q(q-2) = q^2 - 2q  ->  (q-2)(q-4) = q^2 - 6q + 8
        assert_eq!(qp(&[0, -2, 1]).shift_q(-2), qp(&[8, -6, 1]));
        // identity substitution
        let p = qp(&[3, 0, -5, 7]);
        assert_eq!(p.shift_q(0), p);
    }

    #[test]
    fn eval_matches_coefficients() {
        let p = qp(&[1, -3, 2]); // 1 - 3q + 2q^2
        assert_eq!(p.eval_f64(2.0), 3.0);
        assert_eq!(p.eval_bigint(&BigInt::from(2)), BigInt::from(3));
    }

    #[test]
    fn display_forms() {
        assert_eq!(qp(&[0, -2, 1]).to_string(), "q^2 - 2q");
        assert_eq!(qp(&[1]).to_string(), "1");
        assert_eq!(qp(&[-1, 0, 0, 3]).to_string(), "3q^3 - 1");
        assert_eq!(QPoly::zero().to_string(), "0");
    }

    proptest! {
        #[test]
        fn shift_roundtrip(coeffs in proptest::collection::vec(-50i64..50, 0..8), delta in -6i64..6) {
            let p = qp(&coeffs);
            prop_assert_eq!(p.shift_q(delta).shift_q(-delta), p);
        }

        #[test]
        fn shift_agrees_with_eval(coeffs in proptest::collection::vec(-50i64..50, 0..8), delta in -6i64..6, q in -10i64..10) {
            let p = qp(&coeffs);
            let lhs = p.shift_q(delta).eval_bigint(&BigInt::from(q));
            let rhs = p.eval_bigint(&BigInt::from(q + delta));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
