mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::OracleGroup;
use weyl_zircon::{
    bruhat_leq, dominance_leq, interval, is_rationally_smooth, verify_c4, Family, GroupDescriptor,
    ScanOptions, VerificationReport, WeylGroup,
};

fn pair(family: Family, rank: usize) -> (WeylGroup, OracleGroup) {
    let letter = family.to_string().chars().next().unwrap();
    let g = WeylGroup::new(GroupDescriptor::new(family, rank).unwrap()).unwrap();
    (g, OracleGroup::new(letter, rank))
}

fn window(x: &[i32]) -> Vec<i64> {
    x.iter().map(|&v| v as i64).collect()
}

fn cases() -> Vec<(Family, usize)> {
    vec![
        (Family::A, 1),
        (Family::A, 2),
        (Family::A, 3),
        (Family::A, 4),
        (Family::B, 2),
        (Family::B, 3),
        (Family::D, 4),
    ]
}

#[test]
fn elements_and_lengths_match() {
    for (f, r) in cases() {
        let (g, o) = pair(f, r);
        assert_eq!(g.order(), o.len(), "{f}{r}");
        assert_eq!(g.reflections().len(), o.reflections.len(), "{f}{r}");
        for (i, x) in o.elements.iter().enumerate() {
            let el = g.element_from_window(&window(x)).unwrap();
            assert_eq!(g.length(&el).unwrap() as usize, o.length[i], "{f}{r} {x:?}");
        }
    }
}

#[test]
fn closed_form_lengths() {
    // l_B = inv - (sum of negative entries), l_D = inv + #{i<j: w(i)+w(j) < 0}.
    let (g, _) = pair(Family::B, 3);
    for x in g.elements() {
        let w: Vec<i64> = x.window().iter().map(|&v| v as i64).collect();
        let mut inv = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                inv += (w[i] > w[j]) as i64;
            }
        }
        let neg: i64 = w.iter().filter(|&&v| v < 0).sum();
        assert_eq!(g.length(x).unwrap() as i64, inv - neg);
    }
    let (g, _) = pair(Family::D, 4);
    for x in g.elements() {
        let w: Vec<i64> = x.window().iter().map(|&v| v as i64).collect();
        let mut l = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                l += (w[i] > w[j]) as i64 + (w[i] + w[j] < 0) as i64;
            }
        }
        assert_eq!(g.length(x).unwrap() as i64, l);
    }
}

#[test]
fn bruhat_order_matches_closure() {
    for (f, r) in cases() {
        let (g, o) = pair(f, r);
        let els: Vec<_> = o
            .elements
            .iter()
            .map(|x| g.element_from_window(&window(x)).unwrap())
            .collect();
        for a in 0..o.len() {
            for b in 0..o.len() {
                assert_eq!(
                    bruhat_leq(&g, &els[a], &els[b]).unwrap(),
                    o.leq(a, b),
                    "{f}{r} {:?} {:?}",
                    o.elements[a],
                    o.elements[b]
                );
                if f == Family::A {
                    assert_eq!(dominance_leq(els[a].window(), els[b].window()), o.leq(a, b));
                }
            }
        }
    }
}

#[test]
fn rational_smoothness_matches_oracle() {
    for (f, r) in [(Family::A, 3), (Family::B, 2), (Family::B, 3)] {
        let (g, o) = pair(f, r);
        let g = Arc::new(g);
        for u in 0..o.len() {
            for w in 0..o.len() {
                if u == w || !o.leq(u, w) {
                    continue;
                }
                let iv = interval(
                    &g,
                    &g.element_from_window(&window(&o.elements[u])).unwrap(),
                    &g.element_from_window(&window(&o.elements[w])).unwrap(),
                )
                .unwrap();
                assert_eq!(iv.len(), o.interval(u, w).len());
                assert_eq!(
                    is_rationally_smooth(&iv).rationally_smooth,
                    o.rationally_smooth(u, w)
                );
            }
        }
    }
}

#[test]
fn c4_scans_match_oracle() {
    for (f, r) in [
        (Family::A, 3),
        (Family::B, 2),
        (Family::B, 3),
        (Family::D, 4),
    ] {
        let (g, o) = pair(f, r);
        let report = verify_c4(&g, &ScanOptions::default()).unwrap();
        let got: BTreeSet<(Vec<i32>, Vec<i32>)> = report
            .counterexamples
            .iter()
            .map(|c| {
                (
                    c.u.iter().map(|&v| v as i32).collect(),
                    c.w.iter().map(|&v| v as i32).collect(),
                )
            })
            .collect();
        assert_eq!(got, o.c4_counterexamples(), "{f}{r}");
        assert_eq!(
            report.intervals_scanned as usize,
            o.comparable_pairs(),
            "{f}{r}"
        );
    }
}

#[test]
fn b2_golden_file() {
    let (g, o) = pair(Family::B, 2);
    let golden: serde_json::Value =
        serde_json::from_str(include_str!("golden/b2_c4_counterexamples.json")).unwrap();
    let frozen: BTreeSet<(Vec<i32>, Vec<i32>)> = golden["counterexamples"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            let win = |k: &str| -> Vec<i32> {
                c[k].as_array()
                    .unwrap()
                    .iter()
                    .map(|v| v.as_i64().unwrap() as i32)
                    .collect()
            };
            (win("u"), win("w"))
        })
        .collect();
    assert_eq!(frozen, o.c4_counterexamples());
    assert_eq!(
        golden["comparable_pairs"].as_u64().unwrap() as usize,
        o.comparable_pairs()
    );

    let report = verify_c4(&g, &ScanOptions::default()).unwrap();
    let text = report.to_json();
    let back = VerificationReport::from_json(&text).unwrap();
    assert_eq!(back, report);
    assert_eq!(report.counterexamples.len(), frozen.len());
}
