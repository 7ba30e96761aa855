//! Finite Weyl groups of types A, B and D, their Bruhat intervals, special
//! matchings and zircons, and exhaustive scans over all intervals of a group.
//!
//! ```
//! use std::sync::Arc;
//! use weyl_zircon::{interval, is_rationally_smooth, verify_c4, Family, GroupDescriptor, ScanOptions, WeylGroup};
//!
//! # fn main() -> Result<(), Box<dyn std::error::Error>> {
//! let g = Arc::new(WeylGroup::new(GroupDescriptor::new(Family::A, 3)?)?);
//! let iv = interval(&g, g.identity(), &g.parse_element("3,4,1,2")?)?;
//! assert!(!is_rationally_smooth(&iv).rationally_smooth);
//!
//! let report = verify_c4(&g, &ScanOptions::default())?;
//! assert!(report.verified);
//! # Ok(())
//! # }
//! ```

pub mod bruhat;
pub mod conjectures;
pub mod error;
pub mod group;
pub mod poset;
pub mod smoothness;

pub use bruhat::{
    bruhat_graph, bruhat_leq, degree, dominance_leq, dual_shadow, interval, BruhatEdge,
    BruhatGraph, IntervalPoset,
};
pub use conjectures::{
    c4_witness, delanoy_witness, th2_equivalence_scan, verify_c3, verify_c4, verify_delanoy,
    ConjectureId, Counterexample, LowerIntervalCatalog, ScanOptions, VerificationReport,
};
pub use error::{BruhatError, GroupError, PosetError, ScanError, SmoothnessError};
pub use group::{Family, GroupDescriptor, GroupElement, WeylGroup};
pub use poset::{
    are_isomorphic, dualize, find_special_matching, is_special, is_zircon, isomorphism,
    FinitePoset, Matching, NonIsomorphism,
};
pub use smoothness::{
    dual_zircon_check, is_rationally_smooth, is_smooth_type_a, SmoothnessVerdict,
};
