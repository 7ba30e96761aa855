//! Exhaustive verifiers for the smooth-interval and zircon conjectures.

mod catalog;
mod checkpoint;
mod report;
mod scan;

use std::collections::{BTreeMap, HashMap};

pub use catalog::{lower_interval_catalog, CatalogClass, CatalogEntry, LowerIntervalCatalog};
pub use checkpoint::Checkpoint;
pub use report::{ConjectureId, Counterexample, VerificationReport, ENGINE_VERSION};
pub use scan::{Progress, ScanOptions, Tally};

use crate::bruhat::{bruhat_leq, poset_on};
use crate::error::{BruhatError, ScanError};
use crate::group::{Family, GroupElement, WeylGroup};
use crate::poset::dualize;

use scan::{drive, Worker};

/// Least generator `s` not in `D_L(u)` with `su` not below `w` or `sw < w`.
fn c4_witness_by(
    g: &WeylGroup,
    u: usize,
    w: usize,
    below_w: impl Fn(usize) -> bool,
) -> Option<usize> {
    let (lu, lw) = (g.length_of_index(u), g.length_of_index(w));
    (0..g.rank()).find(|&s| {
        let su = g.generator_left(s, u);
        g.length_of_index(su) > lu
            && (!below_w(su) || g.length_of_index(g.generator_left(s, w)) < lw)
    })
}

/// Least generator `s` in `D_L(w)` with `sw` not above `u` or `su > u`.
fn delanoy_witness_by(
    g: &WeylGroup,
    u: usize,
    w: usize,
    above_u: impl Fn(usize) -> bool,
) -> Option<usize> {
    let (lu, lw) = (g.length_of_index(u), g.length_of_index(w));
    (0..g.rank()).find(|&s| {
        let sw = g.generator_left(s, w);
        g.length_of_index(sw) < lw
            && (!above_u(sw) || g.length_of_index(g.generator_left(s, u)) > lu)
    })
}

fn strict_pair(
    g: &WeylGroup,
    u: &GroupElement,
    w: &GroupElement,
) -> Result<(usize, usize), BruhatError> {
    let ui = g.require(u)?;
    let wi = g.require(w)?;
    if ui == wi || !bruhat_leq(g, u, w)? {
        return Err(BruhatError::NotBelow {
            u: u.to_string(),
            w: w.to_string(),
        });
    }
    Ok((ui, wi))
}

/// The generator (0-based) witnessing the C4 condition for `[u, w]`, if any.
/// Does not test smoothness.
pub fn c4_witness(
    g: &WeylGroup,
    u: &GroupElement,
    w: &GroupElement,
) -> Result<Option<usize>, BruhatError> {
    let (ui, wi) = strict_pair(g, u, w)?;
    Ok(c4_witness_by(g, ui, wi, |x| g.leq_index(x, wi)))
}

/// The generator (0-based) witnessing the Delanoy condition for `[u, w]`.
pub fn delanoy_witness(
    g: &WeylGroup,
    u: &GroupElement,
    w: &GroupElement,
) -> Result<Option<usize>, BruhatError> {
    let (ui, wi) = strict_pair(g, u, w)?;
    Ok(delanoy_witness_by(g, ui, wi, |x| g.leq_index(ui, x)))
}

fn smoothness_label(conjecture: ConjectureId, family: Family) -> String {
    match (conjecture, family) {
        (ConjectureId::Delanoy2, _) => "not used (scan filters on zircon intervals)".into(),
        (_, Family::A) => "smooth: type-A single-degree test (equals rational smoothness)".into(),
        _ => "rational smoothness (Carrell-Peterson degree criterion); geometric smoothness not tested".into(),
    }
}

fn finish(g: &WeylGroup, conjecture: ConjectureId, mut tally: Tally) -> VerificationReport {
    tally.counterexamples.sort_unstable_by_key(|&(u, w)| (u, w));
    let counterexamples: Vec<Counterexample> = tally
        .counterexamples
        .iter()
        .map(|&(u, w)| Counterexample {
            u: g.element(u as usize).window().to_vec(),
            w: g.element(w as usize).window().to_vec(),
        })
        .collect();
    let witness_histogram: BTreeMap<String, u64> = if conjecture == ConjectureId::C4 {
        tally
            .histogram
            .iter()
            .enumerate()
            .map(|(s, &c)| (g.generator_label(s), c))
            .collect()
    } else {
        BTreeMap::new()
    };
    VerificationReport {
        conjecture,
        group: g.descriptor(),
        intervals_scanned: tally.scanned,
        qualifying: tally.qualifying,
        verified: counterexamples.is_empty(),
        counterexamples,
        witness_histogram,
        elapsed_ms: tally.elapsed_ms,
        engine_version: ENGINE_VERSION.to_string(),
        smoothness: smoothness_label(conjecture, g.descriptor().family),
        partial: tally.skipped > 0,
        skipped_over_cap: tally.skipped,
        not_evaluated: tally.not_evaluated,
    }
}

fn cross_check_error(g: &WeylGroup, u: usize, w: usize) -> ScanError {
    ScanError::CrossCheck {
        u: g.element(u).to_string(),
        w: g.element(w).to_string(),
    }
}

/// Smoothness of `[u, w]` for every `u` in the loaded ideal: the type-A
/// single-degree test, or the full Carrell-Peterson table for B and D (and for
/// type A when cross-checking).
fn smooth_flags(
    g: &WeylGroup,
    wk: &Worker,
    members: &[usize],
    w: usize,
    cross_check: bool,
) -> Result<Vec<bool>, ScanError> {
    let family = g.descriptor().family;
    if family != Family::A {
        return Ok(wk.rational_smooth_table(g, members, w));
    }
    let quick: Vec<bool> = members
        .iter()
        .map(|&u| wk.single_degree_smooth(g, u, w))
        .collect();
    if cross_check {
        let full = wk.rational_smooth_table(g, members, w);
        if let Some(pos) = (0..members.len()).find(|&p| full[p] != quick[p]) {
            return Err(cross_check_error(g, members[pos], w));
        }
    }
    Ok(quick)
}

fn require_type_a(g: &WeylGroup, scan: &'static str) -> Result<(), ScanError> {
    let family = g.descriptor().family;
    if family != Family::A {
        return Err(ScanError::WrongType {
            scan,
            family,
            reason: "requires type A",
        });
    }
    Ok(())
}

fn no_progress(_: Progress) {}

/// C4 scan over every pair `u < w`. In type A smoothness is the single-degree
/// test; in types B and D it is rational smoothness.
pub fn verify_c4(g: &WeylGroup, opts: &ScanOptions) -> Result<VerificationReport, ScanError> {
    verify_c4_with_progress(g, opts, &no_progress)
}

pub fn verify_c4_with_progress(
    g: &WeylGroup,
    opts: &ScanOptions,
    progress: &(dyn Fn(Progress) + Sync),
) -> Result<VerificationReport, ScanError> {
    let tally = drive(g, ConjectureId::C4, None, opts, progress, |wk, w| {
        let mut t = Tally::for_rank(g.rank());
        if w == 0 {
            return Ok(t);
        }
        let members = wk.load(g, w);
        let smooth = smooth_flags(g, wk, &members, w, opts.cross_check);
        let result = smooth.map(|smooth| {
            for (pos, &u) in members.iter().enumerate() {
                if u == w {
                    continue;
                }
                t.scanned += 1;
                if !smooth[pos] {
                    continue;
                }
                t.qualifying += 1;
                match c4_witness_by(g, u, w, |x| wk.contains(x)) {
                    Some(s) => t.histogram[s] += 1,
                    None => t.counterexamples.push((u as u32, w as u32)),
                }
            }
            t
        });
        wk.unload(&members);
        result
    })?;
    Ok(finish(g, ConjectureId::C4, tally))
}

/// C3 scan: every smooth type-A interval within the cap has a zircon dual.
pub fn verify_c3(g: &WeylGroup, opts: &ScanOptions) -> Result<VerificationReport, ScanError> {
    verify_c3_with_progress(g, opts, &no_progress)
}

pub fn verify_c3_with_progress(
    g: &WeylGroup,
    opts: &ScanOptions,
    progress: &(dyn Fn(Progress) + Sync),
) -> Result<VerificationReport, ScanError> {
    require_type_a(g, "C3")?;
    let cap = opts.cap_interval;
    let tally = drive(g, ConjectureId::C3, cap, opts, progress, |wk, w| {
        let mut t = Tally::for_rank(g.rank());
        if w == 0 {
            return Ok(t);
        }
        let members = wk.load(g, w);
        let result = smooth_flags(g, wk, &members, w, opts.cross_check).map(|smooth| {
            let mut memo = HashMap::new();
            for (pos, &u) in members.iter().enumerate() {
                if u == w {
                    continue;
                }
                t.scanned += 1;
                if !smooth[pos] {
                    continue;
                }
                let upper = wk.upper_set(g, u);
                if cap.is_some_and(|c| upper.len() > c) {
                    t.skipped += 1;
                    continue;
                }
                t.qualifying += 1;
                if !wk.dual_zircon(g, &upper, &mut memo) {
                    t.counterexamples.push((u as u32, w as u32));
                }
            }
            t
        });
        wk.unload(&members);
        result
    })?;
    Ok(finish(g, ConjectureId::C3, tally))
}

/// Delanoy scan: every zircon interval within the cap, in a simply laced
/// group, has a descent `s` of `w` with `sw` not above `u` or `su > u`.
pub fn verify_delanoy(g: &WeylGroup, opts: &ScanOptions) -> Result<VerificationReport, ScanError> {
    verify_delanoy_with_progress(g, opts, &no_progress)
}

pub fn verify_delanoy_with_progress(
    g: &WeylGroup,
    opts: &ScanOptions,
    progress: &(dyn Fn(Progress) + Sync),
) -> Result<VerificationReport, ScanError> {
    if !g.descriptor().is_simply_laced() {
        return Err(ScanError::WrongType {
            scan: "Delanoy2",
            family: g.descriptor().family,
            reason: "requires a simply laced type (A or D)",
        });
    }
    let cap = opts.cap_interval;
    let tally = drive(g, ConjectureId::Delanoy2, cap, opts, progress, |wk, w| {
        let mut t = Tally::for_rank(g.rank());
        if w == 0 {
            return Ok(t);
        }
        let members = wk.load(g, w);
        for &u in &members {
            if u == w {
                continue;
            }
            t.scanned += 1;
            let upper = wk.upper_set(g, u);
            if cap.is_some_and(|c| upper.len() > c) {
                t.skipped += 1;
                continue;
            }
            if !wk.zircon(g, &upper) {
                continue;
            }
            t.qualifying += 1;
            if delanoy_witness_by(g, u, w, |x| g.leq_index(u, x)).is_none() {
                t.counterexamples.push((u as u32, w as u32));
            }
        }
        wk.unload(&members);
        Ok(t)
    })?;
    Ok(finish(g, ConjectureId::Delanoy2, tally))
}

/// Evaluates, for every type-A interval within the cap, (1) the dual is a
/// zircon, (2) the dual is isomorphic to a catalog lower interval, and (3)
/// the interval is smooth. Intervals where the evaluated predicates disagree
/// are reported. (2) counts as not evaluated when the interval is longer than
/// the catalog reaches. `qualifying` counts evaluated intervals.
pub fn th2_equivalence_scan(
    g: &WeylGroup,
    opts: &ScanOptions,
    catalog: &LowerIntervalCatalog,
) -> Result<VerificationReport, ScanError> {
    th2_equivalence_scan_with_progress(g, opts, catalog, &no_progress)
}

pub fn th2_equivalence_scan_with_progress(
    g: &WeylGroup,
    opts: &ScanOptions,
    catalog: &LowerIntervalCatalog,
    progress: &(dyn Fn(Progress) + Sync),
) -> Result<VerificationReport, ScanError> {
    require_type_a(g, "Th2-equiv")?;
    let cap = opts.cap_interval;
    let tally = drive(g, ConjectureId::Th2Equiv, cap, opts, progress, |wk, w| {
        let mut t = Tally::for_rank(g.rank());
        if w == 0 {
            return Ok(t);
        }
        let members = wk.load(g, w);
        let result = smooth_flags(g, wk, &members, w, opts.cross_check).map(|smooth| {
            let mut memo = HashMap::new();
            for (pos, &u) in members.iter().enumerate() {
                if u == w {
                    continue;
                }
                t.scanned += 1;
                let upper = wk.upper_set(g, u);
                if cap.is_some_and(|c| upper.len() > c) {
                    t.skipped += 1;
                    continue;
                }
                t.qualifying += 1;
                let smooth = smooth[pos];
                let dual_zircon = wk.dual_zircon(g, &upper, &mut memo);
                let length = (g.length_of_index(w) - g.length_of_index(u)) as usize;
                let lower_iso = if catalog.covers_length(length) {
                    Some(catalog.find(&dualize(&poset_on(g, &upper))).is_some())
                } else {
                    t.not_evaluated += 1;
                    None
                };
                let agree = dual_zircon == smooth && lower_iso.is_none_or(|v| v == smooth);
                if !agree {
                    t.counterexamples.push((u as u32, w as u32));
                }
            }
            t
        });
        wk.unload(&members);
        result
    })?;
    Ok(finish(g, ConjectureId::Th2Equiv, tally))
}
