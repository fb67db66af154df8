//! Structured pass/fail records produced by the verification suites.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// A single failed check: the parameters that produced it, both sides of the
/// inequality (or identity) and the signed gap `lhs - rhs`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    /// Human-readable description of the offending case, e.g.
    /// `"p=3 q=2.75 tau=0.9900"`.
    pub params: String,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
}

/// Outcome of one property suite.
///
/// A report is reproducible from `(suite_name, seed)` and the grid sizes the
/// suite was run with; `violations` is empty exactly when `worst_margin`
/// stayed above the suite's tolerance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite_name: String,
    pub cases_run: usize,
    pub violations: Vec<Violation>,
    /// Minimum slack observed over all cases; negative values are violations.
    pub worst_margin: f64,
    pub seed: u64,
    /// Suite-specific summary values (max sampled ratio, bounds, ...).
    pub stats: BTreeMap<String, f64>,
    /// Witness of the extremal case, when the suite records one.
    pub witness: Option<String>,
}

impl VerifyReport {
    pub fn new(suite_name: impl Into<String>, seed: u64) -> Self {
        VerifyReport {
            suite_name: suite_name.into(),
            cases_run: 0,
            violations: Vec::new(),
            worst_margin: f64::INFINITY,
            seed,
            stats: BTreeMap::new(),
            witness: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Record one checked case. `slack >= -tolerance` counts as a pass.
    pub fn record(&mut self, slack: f64, tolerance: f64, mut violation: impl FnMut() -> Violation) {
        self.cases_run += 1;
        self.worst_margin = self.worst_margin.min(slack);
        // negated form so a NaN slack counts as a violation
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(slack >= -tolerance) {
            self.violations.push(violation());
        }
    }

    /// Merge another report for the same suite into this one. The operation
    /// is associative and order-independent once [`finish`](Self::finish) has
    /// sorted the violations.
    pub fn merge(&mut self, other: VerifyReport) {
        self.cases_run += other.cases_run;
        self.worst_margin = self.worst_margin.min(other.worst_margin);
        self.violations.extend(other.violations);
        for (k, v) in other.stats {
            let entry = self.stats.entry(k).or_insert(v);
            *entry = entry.max(v);
        }
        if self.witness.is_none() {
            self.witness = other.witness;
        }
    }

    /// Canonicalize the report: violations sorted, a finite worst margin.
    pub fn finish(mut self) -> Self {
        self.violations
            .sort_by(|a, b| a.params.cmp(&b.params).then(a.gap.total_cmp(&b.gap)));
        if self.cases_run == 0 {
            self.worst_margin = 0.0;
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_and_pass() {
        let mut r = VerifyReport::new("demo", 7);
        r.record(0.5, 1e-12, || unreachable!());
        r.record(-1e-13, 1e-12, || unreachable!());
        let r = r.finish();
        assert!(r.passed());
        assert_eq!(r.cases_run, 2);
        assert_eq!(r.worst_margin, -1e-13);
    }

    #[test]
    fn record_violation() {
        let mut r = VerifyReport::new("demo", 7);
        r.record(-1.0, 1e-12, || Violation {
            params: "case".into(),
            lhs: 0.0,
            rhs: 1.0,
            gap: -1.0,
        });
        let r = r.finish();
        assert!(!r.passed());
        assert_eq!(r.violations.len(), 1);
    }

    #[test]
    fn merge_is_order_independent() {
        let mk = |names: &[&str]| {
            let mut r = VerifyReport::new("demo", 0);
            for n in names {
                r.record(-1.0, 0.0, || Violation {
                    params: (*n).into(),
                    lhs: 0.0,
                    rhs: 0.0,
                    gap: -1.0,
                });
            }
            r
        };
        let mut a = mk(&["b", "a"]);
        a.merge(mk(&["c"]));
        let mut b = mk(&["c"]);
        b.merge(mk(&["b", "a"]));
        let (a, b) = (a.finish(), b.finish());
        assert_eq!(a.violations, b.violations);
        assert_eq!(a.cases_run, b.cases_run);
    }
}
