use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::group::GroupDescriptor;

/// Version string written into every report.
pub const ENGINE_VERSION: &str = concat!("weyl-zircon ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConjectureId {
    /// Smooth type-A intervals have a generator `s` outside `D_L(u)` with
    /// `su` not below `w` or `sw < w`.
    C4,
    /// Duals of smooth type-A intervals are zircons.
    C3,
    /// Zircon intervals in simply laced types have a descent `s` of `w` with
    /// `sw` not above `u` or `su > u`.
    Delanoy2,
    /// Dual zircon, dual isomorphic to a lower interval, and smooth agree.
    #[serde(rename = "Th2-equiv")]
    Th2Equiv,
}

impl ConjectureId {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConjectureId::C4 => "C4",
            ConjectureId::C3 => "C3",
            ConjectureId::Delanoy2 => "Delanoy2",
            ConjectureId::Th2Equiv => "Th2-equiv",
        }
    }

    pub(crate) fn code(&self) -> u8 {
        match self {
            ConjectureId::C4 => 1,
            ConjectureId::C3 => 2,
            ConjectureId::Delanoy2 => 3,
            ConjectureId::Th2Equiv => 4,
        }
    }
}

impl fmt::Display for ConjectureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConjectureId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "c4" => Ok(ConjectureId::C4),
            "c3" => Ok(ConjectureId::C3),
            "delanoy" | "delanoy2" => Ok(ConjectureId::Delanoy2),
            "th2" | "th2-equiv" => Ok(ConjectureId::Th2Equiv),
            other => Err(format!(
                "unknown conjecture {other:?} (expected c4, c3, delanoy or th2)"
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Counterexample {
    pub u: Vec<i8>,
    pub w: Vec<i8>,
}

/// Outcome of a conjecture scan. Field order is the on-disk JSON order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub conjecture: ConjectureId,
    pub group: GroupDescriptor,
    pub intervals_scanned: u64,
    pub qualifying: u64,
    pub counterexamples: Vec<Counterexample>,
    pub witness_histogram: BTreeMap<String, u64>,
    pub elapsed_ms: u64,
    pub engine_version: String,
    /// Which smoothness notion filtered the scanned intervals.
    pub smoothness: String,
    /// Set when some intervals were skipped by the size cap.
    pub partial: bool,
    pub skipped_over_cap: u64,
    /// Intervals whose lower-interval predicate lay outside the catalog.
    pub not_evaluated: u64,
    pub verified: bool,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Parses a report and checks its internal consistency.
    pub fn from_json(text: &str) -> Result<Self, String> {
        let r: VerificationReport = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if r.verified != r.counterexamples.is_empty() {
            return Err("verified flag disagrees with the counterexample list".into());
        }
        if r.qualifying > r.intervals_scanned || (r.counterexamples.len() as u64) > r.qualifying {
            return Err("report counts are inconsistent".into());
        }
        Ok(r)
    }
}
