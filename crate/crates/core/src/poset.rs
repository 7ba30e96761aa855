//! Graded finite posets: duals, special matchings, zircons and isomorphism.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;

use crate::error::PosetError;

const NONE: usize = usize::MAX;

/// A finite poset given by its Hasse diagram.
///
/// `rank` is the longest-chain rank from below for posets built with
/// [`FinitePoset::from_covers`]. The poset is graded when every cover raises
/// the rank by exactly one.
#[derive(Clone)]
pub struct FinitePoset {
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    rank: Vec<usize>,
    graded: bool,
    labels: Option<Vec<String>>,
    above: OnceLock<Vec<FixedBitSet>>,
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        self.up == other.up
            && self.down == other.down
            && self.rank == other.rank
            && self.labels == other.labels
    }
}

impl Eq for FinitePoset {}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinitePoset")
            .field("n", &self.len())
            .field("covers", &self.covers())
            .field("rank", &self.rank)
            .finish()
    }
}

impl FinitePoset {
    /// Builds a poset from cover pairs `(i, j)` meaning `i` is covered by `j`.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self, PosetError> {
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for &(i, j) in covers {
            if i >= n || j >= n {
                return Err(PosetError::OutOfRange(i, j));
            }
            if i == j {
                return Err(PosetError::Cyclic);
            }
            up[i].push(j);
            down[j].push(i);
        }
        for list in up.iter_mut().chain(down.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }

        // Kahn's algorithm doubles as the longest-chain rank computation.
        let mut indeg: Vec<usize> = down.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut rank = vec![0usize; n];
        let mut visited = 0;
        while let Some(x) = queue.pop_front() {
            visited += 1;
            for &y in &up[x] {
                rank[y] = rank[y].max(rank[x] + 1);
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    queue.push_back(y);
                }
            }
        }
        if visited != n {
            return Err(PosetError::Cyclic);
        }
        let graded = up
            .iter()
            .enumerate()
            .all(|(x, ys)| ys.iter().all(|&y| rank[y] == rank[x] + 1));
        Ok(FinitePoset {
            up,
            down,
            rank,
            graded,
            labels: None,
            above: OnceLock::new(),
        })
    }

    /// Trusted constructor for callers that already hold a graded Hasse diagram.
    pub(crate) fn from_graded_parts(
        up: Vec<Vec<usize>>,
        down: Vec<Vec<usize>>,
        rank: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Self {
        debug_assert!(up
            .iter()
            .enumerate()
            .all(|(x, ys)| ys.iter().all(|&y| rank[y] == rank[x] + 1)));
        FinitePoset {
            up,
            down,
            rank,
            graded: true,
            labels,
            above: OnceLock::new(),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.len());
        self.labels = Some(labels);
        self
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    pub fn rank(&self, i: usize) -> usize {
        self.rank[i]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    pub fn max_rank(&self) -> usize {
        self.rank.iter().copied().max().unwrap_or(0)
    }

    /// Number of elements at each rank.
    pub fn rank_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.max_rank() + 1];
        for &r in &self.rank {
            sizes[r] += 1;
        }
        sizes
    }

    pub fn up_covers(&self, i: usize) -> &[usize] {
        &self.up[i]
    }

    pub fn down_covers(&self, i: usize) -> &[usize] {
        &self.down[i]
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (x, ys) in self.up.iter().enumerate() {
            out.extend(ys.iter().map(|&y| (x, y)));
        }
        out
    }

    pub fn num_covers(&self) -> usize {
        self.up.iter().map(Vec::len).sum()
    }

    pub fn is_cover(&self, x: usize, y: usize) -> bool {
        self.up[x].binary_search(&y).is_ok()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.down[i].is_empty())
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.up[i].is_empty()).collect()
    }

    /// Upward reachability closure, built on first use.
    fn above(&self) -> &[FixedBitSet] {
        self.above.get_or_init(|| {
            let n = self.len();
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&i| std::cmp::Reverse(self.rank[i]));
            let mut above = vec![FixedBitSet::with_capacity(n); n];
            for &x in &order {
                let mut bits = FixedBitSet::with_capacity(n);
                bits.insert(x);
                for &y in &self.up[x] {
                    bits.union_with(&above[y]);
                }
                above[x] = bits;
            }
            above
        })
    }

    /// `x <= y`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.above()[x].contains(y)
    }

    /// `x < y`.
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// Sorted elements of the principal order ideal `{v <= x}`.
    pub fn principal_ideal_elements(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![x];
        seen[x] = true;
        let mut out = Vec::new();
        while let Some(y) = stack.pop() {
            out.push(y);
            for &z in &self.down[y] {
                if !seen[z] {
                    seen[z] = true;
                    stack.push(z);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Induced subposet on an order ideal (or any convex set) given as sorted
    /// indices. Returns the subposet; its element `k` is `elements[k]` here.
    pub fn induced(&self, elements: &[usize]) -> FinitePoset {
        let pos: HashMap<usize, usize> =
            elements.iter().enumerate().map(|(k, &e)| (e, k)).collect();
        let mut up = vec![Vec::new(); elements.len()];
        let mut down = vec![Vec::new(); elements.len()];
        for (k, &e) in elements.iter().enumerate() {
            for &f in &self.up[e] {
                if let Some(&j) = pos.get(&f) {
                    up[k].push(j);
                    down[j].push(k);
                }
            }
        }
        for list in up.iter_mut().chain(down.iter_mut()) {
            list.sort_unstable();
        }
        FinitePoset {
            up,
            down,
            rank: elements.iter().map(|&e| self.rank[e]).collect(),
            graded: self.graded,
            labels: self
                .labels
                .as_ref()
                .map(|l| elements.iter().map(|&e| l[e].clone()).collect()),
            above: OnceLock::new(),
        }
    }

    /// Edge-list text: a line with `n`, then one `i j` line per cover.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.len());
        for (x, y) in self.covers() {
            out.push_str(&format!("{x} {y}\n"));
        }
        out
    }

    /// Parses the edge-list format written by [`Self::to_edge_list`]. Blank
    /// lines and lines starting with `#` are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Self, PosetError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| PosetError::Parse("missing element count".into()))?
            .parse()
            .map_err(|e| PosetError::Parse(format!("bad element count: {e}")))?;
        let mut covers = Vec::new();
        for line in lines {
            let mut parts = line.split_whitespace();
            let mut next = || -> Result<usize, PosetError> {
                parts
                    .next()
                    .ok_or_else(|| PosetError::Parse(format!("short line {line:?}")))?
                    .parse()
                    .map_err(|e| PosetError::Parse(format!("{line:?}: {e}")))
            };
            let i = next()?;
            let j = next()?;
            covers.push((i, j));
        }
        Self::from_covers(n, &covers)
    }
}

/// The dual poset: covers reversed, rank `r` becomes `max_rank - r`.
pub fn dualize(p: &FinitePoset) -> FinitePoset {
    let top = p.max_rank();
    FinitePoset {
        up: p.down.clone(),
        down: p.up.clone(),
        rank: p.rank.iter().map(|&r| top - r).collect(),
        graded: p.graded,
        labels: p.labels.clone(),
        above: OnceLock::new(),
    }
}

/// A fixed-point-free involution pairing cover-adjacent elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    partner: Vec<usize>,
    special: bool,
}

impl Matching {
    /// Wraps a partner array. The `special` flag starts unset; it is only set
    /// by [`find_special_matching`] after verification.
    pub fn new(partner: Vec<usize>) -> Self {
        Matching {
            partner,
            special: false,
        }
    }

    pub fn partner(&self, i: usize) -> usize {
        self.partner[i]
    }

    pub fn partners(&self) -> &[usize] {
        &self.partner
    }

    pub fn is_verified_special(&self) -> bool {
        self.special
    }

    /// `i partner[i]` lines.
    pub fn to_text(&self) -> String {
        self.partner
            .iter()
            .enumerate()
            .map(|(i, p)| format!("{i} {p}\n"))
            .collect()
    }
}

fn validate_matching(p: &FinitePoset, m: &Matching) -> Result<(), PosetError> {
    if m.partner.len() != p.len() {
        return Err(PosetError::MalformedMatching(format!(
            "partner array has {} entries for {} elements",
            m.partner.len(),
            p.len()
        )));
    }
    for (x, &y) in m.partner.iter().enumerate() {
        if y >= p.len() || m.partner[y] != x {
            return Err(PosetError::MalformedMatching(format!(
                "not an involution at {x}"
            )));
        }
        if y == x {
            return Err(PosetError::MalformedMatching(format!("{x} is fixed")));
        }
        if !p.is_cover(x, y) && !p.is_cover(y, x) {
            return Err(PosetError::MalformedMatching(format!(
                "{x} and {y} are not cover-adjacent"
            )));
        }
    }
    Ok(())
}

/// Checks the special condition: for every cover `x < y`, `M(x) = y` or
/// `M(x) < M(y)`.
pub fn is_special(p: &FinitePoset, m: &Matching) -> Result<bool, PosetError> {
    validate_matching(p, m)?;
    Ok(p.covers().into_iter().all(|(x, y)| {
        let (mx, my) = (m.partner[x], m.partner[y]);
        mx == y || p.lt(mx, my)
    }))
}

/// Backtracking search for a special matching with forward checking.
///
/// Each undecided element keeps the list of partners it could still take
/// without violating the special condition on any cover whose endpoints are
/// both decided. Candidate lists are refreshed within Hasse distance two of
/// each new pair, which is the only region the new pair can affect.
struct MatchingSearch<'a> {
    p: &'a FinitePoset,
    partner: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    order_key: Vec<usize>,
    trail: Vec<(usize, Vec<usize>)>,
    stamp: Vec<u32>,
    epoch: u32,
}

struct Frame {
    z: usize,
    options: Vec<usize>,
    next: usize,
    mark: usize,
}

impl<'a> MatchingSearch<'a> {
    fn new(p: &'a FinitePoset) -> Self {
        let n = p.len();
        // Ascending rank, then ascending up-degree.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (p.rank[i], p.up[i].len(), i));
        let mut order_key = vec![0; n];
        for (k, &i) in order.iter().enumerate() {
            order_key[i] = k;
        }
        MatchingSearch {
            p,
            partner: vec![NONE; n],
            candidates: vec![Vec::new(); n],
            order_key,
            trail: Vec::new(),
            stamp: vec![0; n],
            epoch: 0,
        }
    }

    #[inline]
    fn cover_ok(&self, a: usize, b: usize) -> bool {
        let (ma, mb) = (self.partner[a], self.partner[b]);
        ma == NONE || mb == NONE || ma == b || self.p.lt(ma, mb)
    }

    fn touches_ok(&self, x: usize) -> bool {
        self.p.down[x].iter().all(|&a| self.cover_ok(a, x))
            && self.p.up[x].iter().all(|&b| self.cover_ok(x, b))
    }

    fn viable(&mut self, z: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let p = self.p;
        for &c in p.up[z].iter().chain(p.down[z].iter()) {
            if self.partner[c] != NONE {
                continue;
            }
            self.partner[z] = c;
            self.partner[c] = z;
            if self.touches_ok(z) && self.touches_ok(c) {
                out.push(c);
            }
            self.partner[z] = NONE;
            self.partner[c] = NONE;
        }
        out
    }

    fn choose(&self) -> Option<usize> {
        (0..self.p.len())
            .filter(|&z| self.partner[z] == NONE)
            .min_by_key(|&z| (self.candidates[z].len(), self.order_key[z]))
    }

    /// Refreshes candidate lists near the pair `(a, b)`; false on a wipe-out.
    fn propagate(&mut self, a: usize, b: usize) -> bool {
        self.epoch += 1;
        let epoch = self.epoch;
        let p = self.p;
        let mut dirty = Vec::new();
        for &src in &[a, b] {
            for &n1 in p.up[src].iter().chain(p.down[src].iter()) {
                if self.stamp[n1] != epoch {
                    self.stamp[n1] = epoch;
                    dirty.push(n1);
                }
                for &n2 in p.up[n1].iter().chain(p.down[n1].iter()) {
                    if self.stamp[n2] != epoch {
                        self.stamp[n2] = epoch;
                        dirty.push(n2);
                    }
                }
            }
        }
        for z in dirty {
            if self.partner[z] != NONE {
                continue;
            }
            let fresh = self.viable(z);
            let empty = fresh.is_empty();
            let old = std::mem::replace(&mut self.candidates[z], fresh);
            self.trail.push((z, old));
            if empty {
                return false;
            }
        }
        true
    }

    fn undo(&mut self, z: usize, mark: usize) {
        while self.trail.len() > mark {
            let (k, old) = self.trail.pop().expect("trail entry");
            self.candidates[k] = old;
        }
        let c = self.partner[z];
        self.partner[z] = NONE;
        if c != NONE {
            self.partner[c] = NONE;
        }
    }

    fn run(mut self) -> Option<Vec<usize>> {
        let n = self.p.len();
        for z in 0..n {
            let c = self.viable(z);
            if c.is_empty() {
                return None;
            }
            self.candidates[z] = c;
        }
        let Some(first) = self.choose() else {
            return Some(self.partner);
        };
        let mut stack = vec![Frame {
            z: first,
            options: self.candidates[first].clone(),
            next: 0,
            mark: 0,
        }];
        while let Some(frame) = stack.last_mut() {
            if frame.next == frame.options.len() {
                stack.pop();
                if let Some(parent) = stack.last() {
                    let (z, mark) = (parent.z, parent.mark);
                    self.undo(z, mark);
                }
                continue;
            }
            let z = frame.z;
            let c = frame.options[frame.next];
            frame.next += 1;
            frame.mark = self.trail.len();
            let mark = frame.mark;
            self.partner[z] = c;
            self.partner[c] = z;
            if !self.propagate(z, c) {
                self.undo(z, mark);
                continue;
            }
            match self.choose() {
                None => return Some(self.partner),
                Some(next) => {
                    let options = self.candidates[next].clone();
                    stack.push(Frame {
                        z: next,
                        options,
                        next: 0,
                        mark: 0,
                    });
                }
            }
        }
        None
    }
}

/// Returns a verified special matching of `p`, or `None` if there is none.
pub fn find_special_matching(p: &FinitePoset) -> Result<Option<Matching>, PosetError> {
    if !p.graded {
        let (x, y) = p
            .covers()
            .into_iter()
            .find(|&(x, y)| p.rank[y] != p.rank[x] + 1)
            .unwrap_or((0, 0));
        return Err(PosetError::NotGraded(x, y));
    }
    if p.len() % 2 == 1 {
        return Ok(None);
    }
    let Some(partner) = MatchingSearch::new(p).run() else {
        return Ok(None);
    };
    let mut m = Matching::new(partner);
    m.special = is_special(p, &m)?;
    debug_assert!(m.special, "search produced a non-special matching");
    Ok(m.special.then_some(m))
}

/// Zircon test with principal-ideal results memoized by element.
pub struct ZirconChecker<'a> {
    poset: &'a FinitePoset,
    memo: HashMap<usize, bool>,
}

impl<'a> ZirconChecker<'a> {
    pub fn new(poset: &'a FinitePoset) -> Self {
        ZirconChecker {
            poset,
            memo: HashMap::new(),
        }
    }

    /// Whether the principal ideal below `x` has a special matching.
    pub fn ideal_has_special_matching(&mut self, x: usize) -> Result<bool, PosetError> {
        if let Some(&v) = self.memo.get(&x) {
            return Ok(v);
        }
        let elems = self.poset.principal_ideal_elements(x);
        let ideal = self.poset.induced(&elems);
        let v = find_special_matching(&ideal)?.is_some();
        self.memo.insert(x, v);
        Ok(v)
    }

    /// First non-minimal element whose principal ideal lacks a special
    /// matching, scanning from the top rank down.
    pub fn first_failure(&mut self) -> Result<Option<usize>, PosetError> {
        let p = self.poset;
        let mut order: Vec<usize> = (0..p.len()).filter(|&x| !p.down[x].is_empty()).collect();
        order.sort_by_key(|&x| (std::cmp::Reverse(p.rank[x]), x));
        for x in order {
            if !self.ideal_has_special_matching(x)? {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }
}

/// Every non-minimal element's principal order ideal has a special matching.
pub fn is_zircon(p: &FinitePoset) -> Result<bool, PosetError> {
    Ok(ZirconChecker::new(p).first_failure()?.is_none())
}

/// Why two posets are not isomorphic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonIsomorphism {
    Size(usize, usize),
    CoverCount(usize, usize),
    RankSizes(Vec<usize>, Vec<usize>),
    /// Neighborhood refinement separated the posets after this many rounds.
    Refinement(usize),
    /// All rank- and color-preserving assignments were exhausted.
    Exhausted,
}

impl fmt::Display for NonIsomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NonIsomorphism::Size(a, b) => write!(f, "element counts differ ({a} vs {b})"),
            NonIsomorphism::CoverCount(a, b) => write!(f, "cover counts differ ({a} vs {b})"),
            NonIsomorphism::RankSizes(a, b) => write!(f, "rank sizes differ ({a:?} vs {b:?})"),
            NonIsomorphism::Refinement(k) => {
                write!(
                    f,
                    "neighborhood invariants differ after {k} refinement rounds"
                )
            }
            NonIsomorphism::Exhausted => write!(f, "no bijection survives backtracking"),
        }
    }
}

/// Joint color refinement on the disjoint union of `p` and `q`.
/// Returns per-element colors or the round at which histograms diverged.
fn refine(p: &FinitePoset, q: &FinitePoset) -> Result<(Vec<usize>, Vec<usize>), usize> {
    let init = |s: &FinitePoset, i: usize| (s.rank[i], s.up[i].len(), s.down[i].len());
    let mut ids: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    for (s, i) in (0..p.len())
        .map(|i| (p, i))
        .chain((0..q.len()).map(|i| (q, i)))
    {
        let next = ids.len();
        ids.entry(init(s, i)).or_insert(next);
    }
    let mut cp: Vec<usize> = (0..p.len()).map(|i| ids[&init(p, i)]).collect();
    let mut cq: Vec<usize> = (0..q.len()).map(|i| ids[&init(q, i)]).collect();
    let mut classes = ids.len();
    let mut round = 0;
    loop {
        if histogram(&cp) != histogram(&cq) {
            return Err(round);
        }
        round += 1;
        let sig = |s: &FinitePoset, c: &[usize], i: usize| {
            let mut ups: Vec<usize> = s.up[i].iter().map(|&j| c[j]).collect();
            let mut downs: Vec<usize> = s.down[i].iter().map(|&j| c[j]).collect();
            ups.sort_unstable();
            downs.sort_unstable();
            (c[i], ups, downs)
        };
        let sp: Vec<_> = (0..p.len()).map(|i| sig(p, &cp, i)).collect();
        let sq: Vec<_> = (0..q.len()).map(|i| sig(q, &cq, i)).collect();
        let mut ids = BTreeMap::new();
        for s in sp.iter().chain(sq.iter()) {
            let next = ids.len();
            ids.entry(s.clone()).or_insert(next);
        }
        let np: Vec<usize> = sp.iter().map(|s| ids[s]).collect();
        let nq: Vec<usize> = sq.iter().map(|s| ids[s]).collect();
        let stable = ids.len() == classes;
        classes = ids.len();
        cp = np;
        cq = nq;
        if stable {
            if histogram(&cp) != histogram(&cq) {
                return Err(round);
            }
            return Ok((cp, cq));
        }
    }
}

fn histogram(c: &[usize]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for &x in c {
        *h.entry(x).or_insert(0) += 1;
    }
    h
}

/// Finds a cover-preserving bijection `p -> q` (as `map[i]` for element `i`
/// of `p`), or explains why none exists.
pub fn isomorphism(p: &FinitePoset, q: &FinitePoset) -> Result<Vec<usize>, NonIsomorphism> {
    if p.len() != q.len() {
        return Err(NonIsomorphism::Size(p.len(), q.len()));
    }
    if p.num_covers() != q.num_covers() {
        return Err(NonIsomorphism::CoverCount(p.num_covers(), q.num_covers()));
    }
    let (rp, rq) = (p.rank_sizes(), q.rank_sizes());
    if rp != rq {
        return Err(NonIsomorphism::RankSizes(rp, rq));
    }
    let (cp, cq) = refine(p, q).map_err(NonIsomorphism::Refinement)?;
    let n = p.len();
    if n == 0 {
        return Ok(Vec::new());
    }

    let mut class_size: HashMap<usize, usize> = HashMap::new();
    for &c in &cq {
        *class_size.entry(c).or_insert(0) += 1;
    }
    let mut by_color: HashMap<usize, Vec<usize>> = HashMap::new();
    for (j, &c) in cq.iter().enumerate() {
        by_color.entry(c).or_default().push(j);
    }

    // Visit p's elements so each (after the first in its component) touches
    // something already placed.
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut touch = vec![0usize; n];
    for _ in 0..n {
        let next = (0..n)
            .filter(|&i| !placed[i])
            .min_by_key(|&i| (std::cmp::Reverse(touch[i]), class_size[&cp[i]], i))
            .expect("unplaced element");
        placed[next] = true;
        order.push(next);
        for &j in p.up[next].iter().chain(p.down[next].iter()) {
            touch[j] += 1;
        }
    }

    let mut map = vec![NONE; n];
    let mut used = vec![false; n];
    let consistent = |map: &[usize], used: &[bool], x: usize, y: usize| -> bool {
        let mut mapped_up = 0;
        for &a in &p.up[x] {
            if map[a] != NONE {
                if !q.is_cover(y, map[a]) {
                    return false;
                }
                mapped_up += 1;
            }
        }
        let mut mapped_down = 0;
        for &a in &p.down[x] {
            if map[a] != NONE {
                if !q.is_cover(map[a], y) {
                    return false;
                }
                mapped_down += 1;
            }
        }
        let q_up = q.up[y].iter().filter(|&&b| used[b]).count();
        let q_down = q.down[y].iter().filter(|&&b| used[b]).count();
        q_up == mapped_up && q_down == mapped_down
    };

    // cursor[d] = next candidate index to try for order[d]
    let mut cursor = vec![0usize; n];
    let mut depth = 0usize;
    loop {
        let x = order[depth];
        let cands = &by_color[&cp[x]];
        let mut advanced = false;
        while cursor[depth] < cands.len() {
            let y = cands[cursor[depth]];
            cursor[depth] += 1;
            if used[y] || !consistent(&map, &used, x, y) {
                continue;
            }
            map[x] = y;
            used[y] = true;
            advanced = true;
            break;
        }
        if advanced {
            depth += 1;
            if depth == n {
                return Ok(map);
            }
            cursor[depth] = 0;
        } else {
            if depth == 0 {
                return Err(NonIsomorphism::Exhausted);
            }
            depth -= 1;
            let px = order[depth];
            used[map[px]] = false;
            map[px] = NONE;
        }
    }
}

/// `Some(bijection)` when `p` and `q` are isomorphic.
pub fn are_isomorphic(p: &FinitePoset, q: &FinitePoset) -> Option<Vec<usize>> {
    isomorphism(p, q).ok()
}
