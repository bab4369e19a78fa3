//! Machine-readable certificates.
//!
//! A [`Certificate`] records one verified claim: a stable claim id, the
//! anchor naming which published statement it checks, the parameter range,
//! the verdict and the witness values that make a failure reproducible.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Schema version written at the top level of every JSON report.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    OutOfRange,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => write!(f, "holds"),
            Verdict::Fails => write!(f, "fails"),
            Verdict::OutOfRange => write!(f, "out-of-range"),
        }
    }
}

/// One verified claim. Parameters and witnesses use ordered maps so that
/// serialization is byte-stable for a fixed run configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificate {
    pub claim_id: String,
    pub paper_anchor: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub witnesses: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision_bits: Option<u32>,
    pub runtime_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Certificate {
    pub fn new(claim_id: impl Into<String>, paper_anchor: impl Into<String>) -> Self {
        Certificate {
            claim_id: claim_id.into(),
            paper_anchor: paper_anchor.into(),
            params: BTreeMap::new(),
            verdict: Verdict::Holds,
            witnesses: BTreeMap::new(),
            precision_bits: None,
            runtime_ms: 0,
            seed: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn witness(mut self, key: &str, value: impl ToString) -> Self {
        self.witnesses.insert(key.to_string(), value.to_string());
        self
    }

    pub fn verdict(mut self, verdict: Verdict) -> Self {
        self.verdict = verdict;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn precision_bits(mut self, bits: u32) -> Self {
        self.precision_bits = Some(bits);
        self
    }

    pub fn runtime(mut self, ms: u64) -> Self {
        self.runtime_ms = ms;
        self
    }

    /// Marks the certificate failed, attaching the witness that broke it.
    pub fn fail(mut self, key: &str, value: impl ToString) -> Self {
        self.verdict = Verdict::Fails;
        self.witnesses.insert(key.to_string(), value.to_string());
        self
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serialization_round_trips() {
        let cert = Certificate::new("lemma5.4.monotone.lambda1", "lemma-5.4")
            .param("n", 12)
            .param("k_max", 200)
            .witness("checked", 199)
            .precision_bits(64)
            .seed(7);
        let json = serde_json::to_string(&cert).unwrap();
        let back: Certificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back.claim_id, cert.claim_id);
        assert_eq!(back.params, cert.params);
        assert_eq!(back.witnesses, cert.witnesses);
        assert_eq!(back.verdict, Verdict::Holds);
        assert_eq!(back.seed, Some(7));
    }

    #[test]
    fn failed_verdict_carries_witness() {
        let cert = Certificate::new("x", "y").fail("counterexample", "n=20");
        assert_eq!(cert.verdict, Verdict::Fails);
        assert!(!cert.witnesses.is_empty());
    }
}
