//! The certificate document: one fragment per verified identity, plus the
//! run parameters and the resulting simple-component dimension vector.

use serde::Serialize;

/// One verified (or failed) identity.
#[derive(Clone, Debug, Serialize)]
pub struct CheckFragment {
    pub name: String,
    pub paper_ref: String,
    pub verified_to_precision: i64,
    pub pass: bool,
}

impl CheckFragment {
    pub fn new(name: &str, paper_ref: &str, verified_to_precision: i64, pass: bool) -> Self {
        CheckFragment {
            name: name.to_string(),
            paper_ref: paper_ref.to_string(),
            verified_to_precision,
            pass,
        }
    }

    /// Build from a residual precision: `Some(p)` passes when `p` reaches the
    /// required floor; a visibly nonzero residual fails at precision 0.
    pub fn from_residual(name: &str, paper_ref: &str, residual: Option<i64>, floor: i64) -> Self {
        match residual {
            Some(p) => CheckFragment::new(name, paper_ref, p, p >= floor),
            None => CheckFragment::new(name, paper_ref, 0, false),
        }
    }

    /// A purely structural (exact, precision-free) check.
    pub fn structural(name: &str, paper_ref: &str, pass: bool) -> Self {
        CheckFragment::new(name, paper_ref, 0, pass)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldDesc {
    pub s: u32,
    /// Little-endian hex of the modulus bits.
    pub modulus: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub n: u32,
    pub kind: String,
    pub field: FieldDesc,
    pub m: i64,
    pub alpha1: String,
    pub alpha2: String,
    pub z_valuation: i64,
    pub precision: i64,
    pub seed: u64,
    pub checks: Vec<CheckFragment>,
    pub dimension_vector: Vec<u32>,
    pub notes: Vec<String>,
    pub elapsed_ms: u64,
}

impl Certificate {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&CheckFragment> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    /// Human-readable per-check lines.
    pub fn text_summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{} {:<44} [{}] prec>={}\n",
                if c.pass { "pass" } else { "FAIL" },
                c.name,
                c.paper_ref,
                c.verified_to_precision
            ));
        }
        out.push_str(&format!(
            "dimension vector: {:?}  ({} checks, {})\n",
            self.dimension_vector,
            self.checks.len(),
            if self.all_pass() { "all pass" } else { "FAILURES PRESENT" }
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residual_fragments() {
        let ok = CheckFragment::from_residual("x", "1.1", Some(20), 8);
        assert!(ok.pass);
        assert_eq!(ok.verified_to_precision, 20);
        let low = CheckFragment::from_residual("x", "1.1", Some(5), 8);
        assert!(!low.pass);
        let bad = CheckFragment::from_residual("x", "1.1", None, 8);
        assert!(!bad.pass);
        assert_eq!(bad.verified_to_precision, 0);
    }
}
