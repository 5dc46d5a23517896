use std::fmt;

use serde::Serialize;

/// Outcome of a stress test or identity check: a named verdict plus the
/// evidence behind it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictReport {
    pub check: String,
    pub params: String,
    pub passed: bool,
    /// Instances examined (families, configurations, ...).
    pub instances: usize,
    /// Instances on which the hypothesis held (non-vacuous checks).
    pub premise_hits: usize,
    pub violations: usize,
    pub details: Vec<String>,
}

impl VerdictReport {
    pub fn new(check: impl Into<String>, params: impl Into<String>) -> Self {
        VerdictReport {
            check: check.into(),
            params: params.into(),
            passed: true,
            instances: 0,
            premise_hits: 0,
            violations: 0,
            details: Vec::new(),
        }
    }

    pub fn violation(&mut self, detail: impl Into<String>) {
        self.passed = false;
        self.violations += 1;
        if self.details.len() < 16 {
            self.details.push(detail.into());
        }
    }

    pub fn note(&mut self, detail: impl Into<String>) {
        self.details.push(detail.into());
    }
}

impl fmt::Display for VerdictReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}] {}: {} instances, {} premise hits, {} violations",
            if self.passed { "PASS" } else { "FAIL" },
            self.check,
            self.params,
            self.instances,
            self.premise_hits,
            self.violations
        )?;
        for d in &self.details {
            write!(f, "\n  {d}")?;
        }
        Ok(())
    }
}

/// Size bounds around a randomized construction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    /// Lower-bound value, when one is evaluated for this construction.
    pub lower: Option<f64>,
    /// Probabilistic-method upper bound (before rounding).
    pub upper: f64,
    /// Size of the constructed family, if a build ran.
    pub achieved: Option<usize>,
}

impl BoundReport {
    /// `ceil(upper)`, the largest size a successful build may reach.
    pub fn ceiling(&self) -> usize {
        self.upper.ceil() as usize
    }
}
