//! Scan engine shared by the conjecture verifiers.
//!
//! Work is partitioned by top element `w`, visited in index order (which is
//! increasing length). For each `w` a worker loads the lower ideal `[e, w]`
//! into a membership bitset and then handles every `u < w`. Batches of tops
//! are processed in parallel and merged in index order, so results do not
//! depend on the worker count.

use std::collections::{HashMap, HashSet, VecDeque};
use std::path::PathBuf;
use std::time::Instant;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bruhat::poset_on;
use crate::error::ScanError;
use crate::group::WeylGroup;
use crate::poset::{dualize, find_special_matching};

use super::checkpoint::Checkpoint;
use super::report::ConjectureId;

/// Accumulated counts; counterexamples are `(u, w)` group indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub scanned: u64,
    pub qualifying: u64,
    pub counterexamples: Vec<(u32, u32)>,
    pub histogram: Vec<u64>,
    pub skipped: u64,
    pub not_evaluated: u64,
    pub elapsed_ms: u64,
}

impl Tally {
    pub(crate) fn for_rank(rank: usize) -> Self {
        Tally {
            histogram: vec![0; rank],
            ..Tally::default()
        }
    }

    fn merge(&mut self, other: Tally) {
        self.scanned += other.scanned;
        self.qualifying += other.qualifying;
        self.counterexamples.extend(other.counterexamples);
        if self.histogram.len() < other.histogram.len() {
            self.histogram.resize(other.histogram.len(), 0);
        }
        for (a, b) in self.histogram.iter_mut().zip(other.histogram) {
            *a += b;
        }
        self.skipped += other.skipped;
        self.not_evaluated += other.not_evaluated;
    }
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    /// Worker threads (at least 1).
    pub jobs: usize,
    /// Skip intervals with more elements than this. Ignored by the C4 scan,
    /// which never materializes intervals.
    pub cap_interval: Option<usize>,
    pub checkpoint: Option<PathBuf>,
    /// Continue from `checkpoint` if the file exists.
    pub resume: bool,
    /// Re-check the type-A single-degree test against the full
    /// Carrell-Peterson scan on every interval.
    pub cross_check: bool,
    /// When false, `elapsed_ms` is written as 0 so reports are reproducible.
    pub record_timing: bool,
    /// Tops per batch; checkpoints and progress callbacks happen per batch.
    pub batch_size: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            jobs: 1,
            cap_interval: None,
            checkpoint: None,
            resume: false,
            cross_check: cfg!(debug_assertions),
            record_timing: true,
            batch_size: 64,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Progress {
    pub tops_done: usize,
    pub tops_total: usize,
    pub counterexamples: usize,
}

/// Per-thread scratch space.
pub(crate) struct Worker {
    in_down: FixedBitSet,
    pos_of: Vec<u32>,
    pub(crate) pair_memo: HashMap<(u32, u32), bool>,
}

impl Worker {
    fn new(order: usize) -> Self {
        Worker {
            in_down: FixedBitSet::with_capacity(order),
            pos_of: vec![0; order],
            pair_memo: HashMap::new(),
        }
    }

    /// Loads `[e, w]` and returns its members in index order.
    pub(crate) fn load(&mut self, g: &WeylGroup, w: usize) -> Vec<usize> {
        let members = g.lower_ideal(w);
        for (pos, &y) in members.iter().enumerate() {
            self.in_down.insert(y);
            self.pos_of[y] = pos as u32;
        }
        members
    }

    pub(crate) fn unload(&mut self, members: &[usize]) {
        for &y in members {
            self.in_down.set(y, false);
        }
    }

    #[inline]
    pub(crate) fn contains(&self, x: usize) -> bool {
        self.in_down.contains(x)
    }

    /// `deg_{y,w}(y)` for the loaded `w`.
    pub(crate) fn upper_degree(&self, g: &WeylGroup, y: usize) -> usize {
        let ly = g.length_of_index(y);
        (0..g.reflections().len())
            .filter(|&t| {
                let z = g.reflect_left(t, y);
                g.length_of_index(z) > ly && self.contains(z)
            })
            .count()
    }

    pub(crate) fn single_degree_smooth(&self, g: &WeylGroup, u: usize, w: usize) -> bool {
        self.upper_degree(g, u) == (g.length_of_index(w) - g.length_of_index(u)) as usize
    }

    /// `ok[pos]` tells whether `[members[pos], w]` is rationally smooth: the
    /// degree condition holds at `members[pos]` and at everything above it.
    pub(crate) fn rational_smooth_table(
        &self,
        g: &WeylGroup,
        members: &[usize],
        w: usize,
    ) -> Vec<bool> {
        let lw = g.length_of_index(w);
        let mut ok = vec![true; members.len()];
        for pos in (0..members.len()).rev() {
            let y = members[pos];
            let ly = g.length_of_index(y);
            let mut good = self.upper_degree(g, y) == (lw - ly) as usize;
            if good {
                for t in 0..g.reflections().len() {
                    let z = g.reflect_left(t, y);
                    if g.length_of_index(z) == ly + 1
                        && self.contains(z)
                        && !ok[self.pos_of[z] as usize]
                    {
                        good = false;
                        break;
                    }
                }
            }
            ok[pos] = good;
        }
        ok
    }

    /// Sorted members of `[u, w]` for the loaded `w`.
    pub(crate) fn upper_set(&self, g: &WeylGroup, u: usize) -> Vec<u32> {
        let mut out = vec![u as u32];
        let mut queue = VecDeque::from([u]);
        let mut seen = HashSet::from([u]);
        while let Some(y) = queue.pop_front() {
            let ly = g.length_of_index(y);
            for t in 0..g.reflections().len() {
                let z = g.reflect_left(t, y);
                if g.length_of_index(z) == ly + 1 && self.contains(z) && seen.insert(z) {
                    out.push(z as u32);
                    queue.push_back(z);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Whether the dual of `[u, w]` is a zircon, given `[u, w]` as `upper`.
    /// `memo` caches, per `y`, whether `[y, w]*` has a special matching.
    pub(crate) fn dual_zircon(
        &self,
        g: &WeylGroup,
        upper: &[u32],
        memo: &mut HashMap<u32, bool>,
    ) -> bool {
        let top = *upper.last().expect("non-empty interval");
        for &y in upper.iter().rev() {
            if y == top {
                continue;
            }
            let has = match memo.get(&y) {
                Some(&v) => v,
                None => {
                    let members = self.upper_set(g, y as usize);
                    let dual = dualize(&poset_on(g, &members));
                    let v = find_special_matching(&dual)
                        .expect("Bruhat intervals are graded")
                        .is_some();
                    memo.insert(y, v);
                    v
                }
            };
            if !has {
                return false;
            }
        }
        true
    }

    /// Whether `[u, w]` (given as `upper`) is a zircon: every `[u, y]` with
    /// `u < y` has a special matching.
    pub(crate) fn zircon(&mut self, g: &WeylGroup, upper: &[u32]) -> bool {
        let u = upper[0];
        for &y in &upper[1..] {
            let key = (u, y);
            let has = match self.pair_memo.get(&key) {
                Some(&v) => v,
                None => {
                    let members: Vec<u32> = upper
                        .iter()
                        .copied()
                        .filter(|&x| g.leq_index(x as usize, y as usize))
                        .collect();
                    let v = find_special_matching(&poset_on(g, &members))
                        .expect("Bruhat intervals are graded")
                        .is_some();
                    self.pair_memo.insert(key, v);
                    v
                }
            };
            if !has {
                return false;
            }
        }
        true
    }
}

/// Runs `per_top` over every top element, with batching, checkpoints and
/// progress reporting.
pub(crate) fn drive<F>(
    g: &WeylGroup,
    conjecture: ConjectureId,
    cap: Option<usize>,
    opts: &ScanOptions,
    progress: &(dyn Fn(Progress) + Sync),
    per_top: F,
) -> Result<Tally, ScanError>
where
    F: Fn(&mut Worker, usize) -> Result<Tally, ScanError> + Sync,
{
    let start = Instant::now();
    let n = g.order();
    let descriptor = g.descriptor();

    let (mut tally, mut next) = match (&opts.checkpoint, opts.resume) {
        (Some(path), true) if path.exists() => {
            let c = Checkpoint::load(path, conjecture, descriptor, cap)?;
            if c.next_top as usize > n {
                return Err(ScanError::Resume(
                    "checkpoint is past the end of the group".into(),
                ));
            }
            (c.tally, c.next_top as usize)
        }
        _ => (Tally::for_rank(g.rank()), 0),
    };
    let prior_elapsed = tally.elapsed_ms;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| ScanError::Io(std::io::Error::other(e.to_string())))?;
    let batch = opts.batch_size.max(1);

    while next < n {
        let end = (next + batch).min(n);
        let parts: Vec<Result<Tally, ScanError>> = pool.install(|| {
            (next..end)
                .into_par_iter()
                .map_init(|| Worker::new(n), |wk, w| per_top(wk, w))
                .collect()
        });
        for part in parts {
            tally.merge(part?);
        }
        next = end;
        tally.elapsed_ms = prior_elapsed + start.elapsed().as_millis() as u64;
        if let Some(path) = &opts.checkpoint {
            Checkpoint {
                conjecture,
                group: descriptor,
                cap,
                next_top: next as u64,
                tally: tally.clone(),
            }
            .save(path)?;
        }
        progress(Progress {
            tops_done: next,
            tops_total: n,
            counterexamples: tally.counterexamples.len(),
        });
    }
    if !opts.record_timing {
        tally.elapsed_ms = 0;
    }
    Ok(tally)
}
