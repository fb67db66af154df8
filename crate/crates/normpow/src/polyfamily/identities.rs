//! Coefficient-exact verification of the identities the family satisfies.
//!
//! Every check here compares two polynomials built through independent
//! symbolic routes; a mismatch in any single big-integer coefficient is a
//! failure. The identities:
//!
//! 1. the defining recursion
//!    `g_p = (1-τ²) g'_{p-1} + (q-p+1) τ g_{p-1}`;
//! 2. `g'_p = (1-τ²) g''_{p-1} + (q-p-1) τ g'_{p-1} + (q-p+1) g_{p-1}`;
//! 3. `(q-p) g_p = τ g'_p + q g_{p,q-2}`;
//! 4. `g'_p = p q g_{p-1,q-2}`;
//! 5. the derivative-free recursion
//!    `g_p = (1-τ²)(p-1) q g_{p-2,q-2} + (q-p+1) τ g_{p-1}`;
//! 6. parity: only `τ`-powers of the same parity as `p` appear;
//! 7. boundary values `g_p(0)` and `g_p(1)` against their closed-form
//!    products.

use num_traits::Zero;

use super::gpoly::{GPoly, TauPoly};
use super::qpoly::{big_to_f64, QPoly};
use super::{boundary_value_at_one_closed, boundary_value_at_zero_closed, generate_family};
use crate::report::{VerifyReport, Violation};

/// Generate the family up to `p_max` and run the full identity suite on it.
pub fn check_identity_suite(p_max: u32) -> VerifyReport {
    check_identities(&generate_family(p_max))
}

/// Run the identity suite on an externally supplied family (index `p` must
/// be stored at position `p`). Useful for auditing deserialized data and for
/// deliberate-mutation tests.
pub fn check_identities(family: &[GPoly]) -> VerifyReport {
    let mut report = VerifyReport::new("identities", 0);

    for (p, g) in family.iter().enumerate() {
        let p = p as u32;
        debug_assert_eq!(g.p_index(), p);

        if p == 0 {
            compare(
                &mut report,
                "base_case",
                p,
                g.poly(),
                &TauPoly::constant(QPoly::one()),
            );
        }

        if p >= 1 {
            let prev = family[p as usize - 1].poly();
            let q_minus_p_plus_1 = QPoly::linear(1 - i64::from(p), 1);

            // (1) defining recursion
            let rhs = &prev.derivative().mul_one_minus_tau_sq()
                + &prev.mul_tau().scale_qpoly(&q_minus_p_plus_1);
            compare(&mut report, "recursion", p, g.poly(), &rhs);

            // (2) second-derivative lemma
            let rhs = &(&prev.derivative().derivative().mul_one_minus_tau_sq()
                + &prev
                    .derivative()
                    .mul_tau()
                    .scale_qpoly(&QPoly::linear(-1 - i64::from(p), 1)))
                + &prev.scale_qpoly(&q_minus_p_plus_1);
            compare(&mut report, "second_derivative_lemma", p, &g.poly().derivative(), &rhs);

            // (4) derivative-shift lemma
            let rhs = family[p as usize - 1]
                .shift_q(-2)
                .poly()
                .scale_qpoly(&QPoly::linear(0, i64::from(p)));
            compare(&mut report, "derivative_shift_lemma", p, &g.poly().derivative(), &rhs);
        }

        // (3) the q-shift lemma holds for every p >= 0
        let lhs = g.poly().scale_qpoly(&QPoly::linear(-i64::from(p), 1));
        let rhs = &g.poly().derivative().mul_tau()
            + &g.shift_q(-2).poly().scale_qpoly(&QPoly::linear(0, 1));
        compare(&mut report, "q_shift_lemma", p, &lhs, &rhs);

        if p >= 2 {
            // (5) derivative-free recursion, factor (p-1) q on the shifted member
            let rhs = &family[p as usize - 2]
                .shift_q(-2)
                .poly()
                .mul_one_minus_tau_sq()
                .scale_qpoly(&QPoly::linear(0, i64::from(p) - 1))
                + &family[p as usize - 1]
                    .poly()
                    .mul_tau()
                    .scale_qpoly(&QPoly::linear(1 - i64::from(p), 1));
            compare(&mut report, "derivative_free_recursion", p, g.poly(), &rhs);
        }

        // (6) parity
        check_parity(&mut report, p, g);

        // (7) boundary values
        compare(
            &mut report,
            "boundary_tau0",
            p,
            &TauPoly::constant(g.poly().coeff(0)),
            &TauPoly::constant(boundary_value_at_zero_closed(p)),
        );
        compare(
            &mut report,
            "boundary_tau1",
            p,
            &TauPoly::constant(g.poly().coeff_sum()),
            &TauPoly::constant(boundary_value_at_one_closed(p)),
        );
    }

    report.finish()
}

/// Exact comparison of two polynomial routes; on mismatch the violation
/// names the lowest differing `(τ-power, q-power)` coefficient.
fn compare(report: &mut VerifyReport, identity: &str, p: u32, lhs: &TauPoly, rhs: &TauPoly) {
    let diff = lhs - rhs;
    if diff.is_zero() {
        report.record(0.0, 0.0, || unreachable!());
        return;
    }
    let (k, i) = first_nonzero(&diff);
    let l = lhs.coeff(k).coeff(i);
    let r = rhs.coeff(k).coeff(i);
    let (lf, rf) = (big_to_f64(&l), big_to_f64(&r));
    let gap = big_to_f64(&(&l - &r));
    report.record(-gap.abs(), 0.0, || Violation {
        params: format!("identity={identity} p={p} tau_power={k} q_power={i} lhs={l} rhs={r}"),
        lhs: lf,
        rhs: rf,
        gap,
    });
}

fn first_nonzero(poly: &TauPoly) -> (usize, usize) {
    for (k, c) in poly.coeffs().iter().enumerate() {
        for (i, b) in c.coeffs().iter().enumerate() {
            if !b.is_zero() {
                return (k, i);
            }
        }
    }
    unreachable!("called on a nonzero polynomial")
}

fn check_parity(report: &mut VerifyReport, p: u32, g: &GPoly) {
    let mut bad: Option<(usize, QPoly)> = None;
    for (k, c) in g.poly().coeffs().iter().enumerate() {
        if k % 2 != (p as usize) % 2 && !c.is_zero() {
            bad = Some((k, c.clone()));
            break;
        }
    }
    match bad {
        None => report.record(0.0, 0.0, || unreachable!()),
        Some((k, c)) => {
            let v = big_to_f64(&c.coeff(c.degree().unwrap_or(0)));
            report.record(-v.abs(), 0.0, || Violation {
                params: format!("identity=parity p={p} tau_power={k} coeff={c}"),
                lhs: v,
                rhs: 0.0,
                gap: v,
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn suite_passes_exactly() {
        let report = check_identity_suite(12);
        assert!(report.passed(), "violations: {:?}", report.violations);
        assert_eq!(report.worst_margin, 0.0);
        assert!(report.cases_run > 12 * 6);
    }

    #[test]
    fn base_case_of_derivative_shift() {
        // For p=1 the lemma reads g'_1 = q = 1 * q * g_{0,q-2}.
        let family = generate_family(1);
        let lhs = family[1].poly().derivative();
        let rhs = family[0]
            .shift_q(-2)
            .poly()
            .scale_qpoly(&QPoly::linear(0, 1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn injected_defect_is_located() {
        let mut family = generate_family(5);
        // Flip the tau^1 coefficient of g_3: 3q(q-2) -> 3q(q-2) + 1.
        let g3 = &family[3];
        let mut coeffs: Vec<QPoly> = g3.tau_coeffs().to_vec();
        coeffs[1] = &coeffs[1] + &QPoly::one();
        family[3] = GPoly::from_parts(3, TauPoly::from_coeffs(coeffs)).unwrap();

        let report = check_identities(&family);
        assert!(!report.passed());
        let hit = report.violations.iter().any(|v| {
            v.params.contains("identity=derivative_free_recursion")
                && v.params.contains("p=3")
                && v.params.contains("tau_power=1")
        });
        assert!(
            hit,
            "expected the derivative-free recursion at p=3, tau^1 to be flagged: {:#?}",
            report.violations
        );
        // The clean members are untouched: no violation mentions p=1.
        assert!(!report.violations.iter().any(|v| v.params.contains(" p=1 ")));
    }

    #[test]
    fn corrupted_parity_is_flagged() {
        let mut family = generate_family(2);
        let mut coeffs: Vec<QPoly> = family[2].tau_coeffs().to_vec();
        coeffs[1] = QPoly::constant(BigInt::from(7)); // even member, odd power
        family[2] = GPoly::from_parts(2, TauPoly::from_coeffs(coeffs)).unwrap();
        let report = check_identities(&family);
        assert!(report
            .violations
            .iter()
            .any(|v| v.params.contains("identity=parity p=2 tau_power=1")));
    }
}
