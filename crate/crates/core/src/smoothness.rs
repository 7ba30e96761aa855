//! Rational smoothness of Bruhat intervals via the Carrell-Peterson degree
//! criterion.

use serde::{Deserialize, Serialize};

use crate::bruhat::IntervalPoset;
use crate::error::SmoothnessError;
use crate::group::{Family, GroupElement};
use crate::poset::{dualize, is_zircon};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothnessVerdict {
    pub rationally_smooth: bool,
    /// An element `y` of the interval with `deg_{y,w}(y) != l(w) - l(y)`.
    pub witness: Option<Vec<i8>>,
    pub checked_vertices: usize,
}

impl SmoothnessVerdict {
    pub fn witness_element(&self) -> Option<GroupElement> {
        self.witness
            .as_ref()
            .map(|w| GroupElement::from_window_unchecked(w.clone()))
    }
}

/// `deg_{y,w}(y)`: reflections `t` with `y < t*y <= w`, i.e. `t*y` lands in
/// the interval above `y`. Inside `[u, w]`, any `t*y` longer than `y` is
/// automatically `>= y >= u`.
fn upper_degree(iv: &IntervalPoset, pos: usize) -> usize {
    let g = iv.group();
    let y = iv.group_index(pos);
    let ly = g.length_of_index(y);
    (0..g.reflections().len())
        .filter(|&t| {
            let z = g.reflect_left(t, y);
            g.length_of_index(z) > ly && iv.position_of_index(z).is_some()
        })
        .count()
}

/// Carrell-Peterson: `[u, w]` is rationally smooth iff
/// `deg_{y,w}(y) = l(w) - l(y)` for every `y` in `[u, w]`. Scans `y` by
/// decreasing length and stops at the first violation.
pub fn is_rationally_smooth(iv: &IntervalPoset) -> SmoothnessVerdict {
    let top = iv.length();
    let mut checked = 0;
    for pos in (0..iv.len()).rev() {
        checked += 1;
        let expected = top - iv.rank(pos);
        if upper_degree(iv, pos) != expected {
            return SmoothnessVerdict {
                rationally_smooth: false,
                witness: Some(iv.element(pos).window().to_vec()),
                checked_vertices: checked,
            };
        }
    }
    SmoothnessVerdict {
        rationally_smooth: true,
        witness: None,
        checked_vertices: checked,
    }
}

/// Type-A smoothness from the single condition `deg_{u,w}(u) = l(w) - l(u)`.
pub fn is_smooth_type_a(iv: &IntervalPoset) -> Result<bool, SmoothnessError> {
    let family = iv.group().descriptor().family;
    if family != Family::A {
        return Err(SmoothnessError::NotTypeA(family));
    }
    Ok(iv.degree_at(0) == iv.length())
}

/// Whether the dual of `[u, w]` is a zircon, i.e. every `[y, w]*` with
/// `u <= y < w` has a special matching.
pub fn dual_zircon_check(iv: &IntervalPoset) -> bool {
    is_zircon(&dualize(&iv.to_poset())).expect("Bruhat intervals are graded")
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::bruhat::interval;
    use crate::group::{GroupDescriptor, WeylGroup};

    fn group(f: Family, r: usize) -> Arc<WeylGroup> {
        Arc::new(WeylGroup::new(GroupDescriptor::new(f, r).unwrap()).unwrap())
    }

    #[test]
    fn full_group_is_smooth() {
        for r in 1..=3 {
            let g = group(Family::A, r);
            let iv = interval(&g, g.identity(), g.longest()).unwrap();
            assert!(is_rationally_smooth(&iv).rationally_smooth);
            assert!(is_smooth_type_a(&iv).unwrap());
        }
    }

    #[test]
    fn b2_diamond_is_smooth() {
        let b2 = group(Family::B, 2);
        let u = b2.parse_element("s1").unwrap();
        let w = b2.parse_element("s1*s2*s1").unwrap();
        let iv = interval(&b2, &u, &w).unwrap();
        let v = is_rationally_smooth(&iv);
        assert!(v.rationally_smooth);
        assert_eq!(v.checked_vertices, 4);
        assert!(matches!(
            is_smooth_type_a(&iv),
            Err(SmoothnessError::NotTypeA(Family::B))
        ));
        assert!(dual_zircon_check(&iv));
    }

    #[test]
    fn singular_3412() {
        let a3 = group(Family::A, 3);
        let w = a3.parse_element("3,4,1,2").unwrap();
        let iv = interval(&a3, a3.identity(), &w).unwrap();
        let v = is_rationally_smooth(&iv);
        assert!(!v.rationally_smooth);
        let y = v.witness_element().unwrap();
        assert!(iv.position_of(&y).is_some());
        assert!(!is_smooth_type_a(&iv).unwrap());
        assert!(!dual_zircon_check(&iv));
    }

    #[test]
    fn lower_interval_dual_is_zircon() {
        let a2 = group(Family::A, 2);
        let w = a2.parse_element("s1*s2").unwrap();
        let iv = interval(&a2, a2.identity(), &w).unwrap();
        assert!(dual_zircon_check(&iv));
    }
}
