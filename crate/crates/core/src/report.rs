//! Outcome of a single identity check.

use serde::Serialize;
use std::fmt;

/// First offending monomial of a failed exact comparison.
#[derive(Clone, Debug, Serialize)]
pub struct MonomialMismatch {
    pub monomial: String,
    pub lhs: String,
    pub rhs: String,
}

/// Result of one identity check, exact or numeric.
///
/// Exact checks fill `mismatch` on failure; numeric checks fill `residual`
/// and `tolerance` (and `cutoff` with the summation depth actually used).
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub identity: String,
    pub params: serde_json::Value,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<MonomialMismatch>,
    /// Number of coefficients compared by an exact check.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compared: Option<usize>,
    /// Error message when a check could not run at all.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CheckReport {
    pub fn exact_pass(identity: &str, params: serde_json::Value, compared: usize) -> Self {
        CheckReport {
            identity: identity.to_string(),
            params,
            pass: true,
            residual: None,
            tolerance: None,
            cutoff: None,
            mismatch: None,
            compared: Some(compared),
            error: None,
        }
    }

    pub fn exact_fail(
        identity: &str,
        params: serde_json::Value,
        mismatch: MonomialMismatch,
    ) -> Self {
        CheckReport {
            identity: identity.to_string(),
            params,
            pass: false,
            residual: None,
            tolerance: None,
            cutoff: None,
            mismatch: Some(mismatch),
            compared: None,
            error: None,
        }
    }

    pub fn numeric(
        identity: &str,
        params: serde_json::Value,
        residual: f64,
        tolerance: f64,
        cutoff: u32,
    ) -> Self {
        CheckReport {
            identity: identity.to_string(),
            params,
            pass: residual <= tolerance,
            residual: Some(residual),
            tolerance: Some(tolerance),
            cutoff: Some(cutoff),
            mismatch: None,
            compared: None,
            error: None,
        }
    }

    /// A check that failed to run (guard violation, divergent tail, ...).
    pub fn failed_to_run(identity: &str, params: serde_json::Value, msg: String) -> Self {
        CheckReport {
            identity: identity.to_string(),
            params,
            pass: false,
            residual: None,
            tolerance: None,
            cutoff: None,
            mismatch: None,
            compared: None,
            error: Some(msg),
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {}", self.identity)?;
        if self.params != serde_json::Value::Null {
            write!(f, " {}", self.params)?;
        }
        if let Some(r) = self.residual {
            write!(f, " residual={:.3e}", r)?;
            if let Some(t) = self.tolerance {
                write!(f, " tol={:.1e}", t)?;
            }
        }
        if let Some(c) = self.cutoff {
            write!(f, " cutoff={c}")?;
        }
        if let Some(n) = self.compared {
            write!(f, " coefficients={n}")?;
        }
        if let Some(m) = &self.mismatch {
            write!(
                f,
                " first mismatch at {}: lhs={} rhs={}",
                m.monomial, m.lhs, m.rhs
            )?;
        }
        if let Some(e) = &self.error {
            write!(f, " error: {e}")?;
        }
        Ok(())
    }
}
