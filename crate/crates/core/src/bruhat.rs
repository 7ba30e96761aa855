//! Bruhat order, Bruhat intervals and Bruhat graphs.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{BruhatError, GroupError};
use crate::group::{Family, GroupElement, WeylGroup};
use crate::poset::FinitePoset;

/// Rank-matrix (dominance) test for permutations: `x <= y` iff for every
/// prefix length `i` and value threshold `j`, `#{a <= i : x(a) >= j}` is at
/// most the same count for `y`.
pub fn dominance_leq(x: &[i8], y: &[i8]) -> bool {
    let k = x.len();
    debug_assert_eq!(k, y.len());
    // cx[j] = #{a <= i : x(a) >= j+1}
    let mut cx = [0u8; 16];
    let mut cy = [0u8; 16];
    for (&a, &b) in x.iter().zip(y) {
        for c in &mut cx[..a as usize] {
            *c += 1;
        }
        for c in &mut cy[..b as usize] {
            *c += 1;
        }
        if cx[..k].iter().zip(&cy[..k]).any(|(a, b)| a > b) {
            return false;
        }
    }
    true
}

impl WeylGroup {
    /// Bruhat comparison on element indices.
    #[inline]
    pub fn leq_index(&self, x: usize, y: usize) -> bool {
        if x == y {
            return true;
        }
        if self.length_of_index(x) >= self.length_of_index(y) {
            return false;
        }
        match &self.order_table {
            Some(table) => table[y].contains(x),
            None => dominance_leq(self.element(x).window(), self.element(y).window()),
        }
    }

    /// Indices of the lower interval `[e, w]`, sorted ascending.
    pub fn lower_ideal(&self, w: usize) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        let mut queue = VecDeque::from([w]);
        seen[w] = true;
        while let Some(y) = queue.pop_front() {
            out.push(y);
            let ly = self.length_of_index(y);
            for t in 0..self.reflections().len() {
                let x = self.reflect_left(t, y);
                if !seen[x] && self.length_of_index(x) + 1 == ly {
                    seen[x] = true;
                    queue.push_back(x);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Bruhat order `x <= y`. Type A uses the rank-matrix criterion, types B and
/// D the precomputed comparability table.
pub fn bruhat_leq(g: &WeylGroup, x: &GroupElement, y: &GroupElement) -> Result<bool, GroupError> {
    let i = g.require(x)?;
    let j = g.require(y)?;
    Ok(match g.descriptor().family {
        Family::A => dominance_leq(x.window(), y.window()),
        Family::B | Family::D => g.leq_index(i, j),
    })
}

/// A Bruhat interval `[u, w]` materialized as a graded poset.
///
/// Positions `0..len()` follow `(length, window)` order, so position 0 is `u`
/// and the last position is `w`.
#[derive(Clone)]
pub struct IntervalPoset {
    group: Arc<WeylGroup>,
    members: Vec<u32>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
}

impl std::fmt::Debug for IntervalPoset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IntervalPoset")
            .field("group", &self.group.descriptor())
            .field("bottom", self.bottom())
            .field("top", self.top())
            .field("size", &self.len())
            .finish()
    }
}

/// Cover lists (by position) of the subposet on sorted group indices
/// `members`. Covers are pairs `x = t*y` with `l(x) = l(y) - 1`.
pub(crate) fn hasse_diagram(g: &WeylGroup, members: &[u32]) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let n = members.len();
    let mut up = vec![Vec::new(); n];
    let mut down = vec![Vec::new(); n];
    for (i, &y) in members.iter().enumerate() {
        let y = y as usize;
        let ly = g.length_of_index(y);
        for t in 0..g.reflections().len() {
            let x = g.reflect_left(t, y);
            if g.length_of_index(x) + 1 != ly {
                continue;
            }
            if let Ok(p) = members.binary_search(&(x as u32)) {
                down[i].push(p);
                up[p].push(i);
            }
        }
    }
    for list in up.iter_mut().chain(down.iter_mut()) {
        list.sort_unstable();
    }
    (up, down)
}

/// The subposet on sorted group indices `members` (an interval), ranked from
/// its first element.
pub(crate) fn poset_on(g: &WeylGroup, members: &[u32]) -> FinitePoset {
    let (up, down) = hasse_diagram(g, members);
    let base = g.length_of_index(members[0] as usize);
    let rank = members
        .iter()
        .map(|&y| (g.length_of_index(y as usize) - base) as usize)
        .collect();
    FinitePoset::from_graded_parts(up, down, rank, None)
}

/// Materializes `[u, w]`. Requires `u < w`.
pub fn interval(
    g: &Arc<WeylGroup>,
    u: &GroupElement,
    w: &GroupElement,
) -> Result<IntervalPoset, BruhatError> {
    let ui = g.require(u)?;
    let wi = g.require(w)?;
    IntervalPoset::from_indices(g, ui, wi).ok_or_else(|| BruhatError::NotBelow {
        u: u.to_string(),
        w: w.to_string(),
    })
}

impl IntervalPoset {
    /// Materializes `[u, w]` from group indices, or `None` unless `u < w`.
    pub fn from_indices(g: &Arc<WeylGroup>, u: usize, w: usize) -> Option<Self> {
        if u == w || !g.leq_index(u, w) {
            return None;
        }
        let members: Vec<u32> = g
            .lower_ideal(w)
            .into_iter()
            .filter(|&y| g.leq_index(u, y))
            .map(|y| y as u32)
            .collect();
        Some(Self::from_members(g.clone(), members))
    }

    /// Wraps a sorted, interval-shaped member set of group indices.
    pub(crate) fn from_members(group: Arc<WeylGroup>, members: Vec<u32>) -> Self {
        let (up, down) = hasse_diagram(&group, &members);
        IntervalPoset {
            group,
            members,
            up,
            down,
        }
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn bottom(&self) -> &GroupElement {
        self.element(0)
    }

    pub fn top(&self) -> &GroupElement {
        self.element(self.len() - 1)
    }

    pub fn element(&self, pos: usize) -> &GroupElement {
        self.group.element(self.members[pos] as usize)
    }

    pub fn elements(&self) -> impl Iterator<Item = &GroupElement> + '_ {
        self.members.iter().map(|&i| self.group.element(i as usize))
    }

    /// Group index of the element at `pos`.
    pub fn group_index(&self, pos: usize) -> usize {
        self.members[pos] as usize
    }

    pub fn position_of_index(&self, group_index: usize) -> Option<usize> {
        self.members.binary_search(&(group_index as u32)).ok()
    }

    pub fn position_of(&self, y: &GroupElement) -> Option<usize> {
        self.group
            .index_of(y)
            .and_then(|i| self.position_of_index(i))
    }

    /// `l(y) - l(u)`.
    pub fn rank(&self, pos: usize) -> usize {
        (self.group.length_of_index(self.members[pos] as usize)
            - self.group.length_of_index(self.members[0] as usize)) as usize
    }

    /// `l(w) - l(u)`.
    pub fn length(&self) -> usize {
        self.rank(self.len() - 1)
    }

    pub fn up_covers(&self, pos: usize) -> &[usize] {
        &self.up[pos]
    }

    pub fn down_covers(&self, pos: usize) -> &[usize] {
        &self.down[pos]
    }

    /// Cover pairs `(x, y)` with `x` covered by `y`, in position order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (x, ups) in self.up.iter().enumerate() {
            out.extend(ups.iter().map(|&y| (x, y)));
        }
        out
    }

    /// Number of `t` in `T` with `t * y` inside the interval.
    pub fn degree_at(&self, pos: usize) -> usize {
        let g = &self.group;
        let y = self.members[pos] as usize;
        (0..g.reflections().len())
            .filter(|&t| self.position_of_index(g.reflect_left(t, y)).is_some())
            .count()
    }

    /// The interval as a group-agnostic poset, labelled by windows.
    pub fn to_poset(&self) -> FinitePoset {
        let labels = self.elements().map(|x| x.to_string()).collect();
        FinitePoset::from_graded_parts(
            self.up.clone(),
            self.down.clone(),
            (0..self.len()).map(|i| self.rank(i)).collect(),
            Some(labels),
        )
    }

    /// Hasse diagram in DOT. With `reflection_edges`, non-cover Bruhat graph
    /// edges are drawn dashed.
    pub fn to_dot(&self, reflection_edges: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph interval {{");
        let _ = writeln!(out, "  rankdir=BT;");
        let _ = writeln!(out, "  node [shape=box];");
        for (i, x) in self.elements().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{x}\"];");
        }
        if reflection_edges {
            for e in bruhat_graph(self).edges {
                if e.is_cover {
                    let _ = writeln!(out, "  n{} -- n{};", e.low, e.high);
                } else {
                    let _ = writeln!(out, "  n{} -- n{} [style=dashed];", e.low, e.high);
                }
            }
        } else {
            for (x, y) in self.covers() {
                let _ = writeln!(out, "  n{x} -- n{y};");
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruhatEdge {
    /// Position of the shorter endpoint.
    pub low: usize,
    pub high: usize,
    pub is_cover: bool,
}

/// Undirected Bruhat graph of an interval.
#[derive(Clone, Debug)]
pub struct BruhatGraph {
    pub edges: Vec<BruhatEdge>,
    pub degrees: Vec<usize>,
}

impl BruhatGraph {
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let (low, high) = (a.min(b), a.max(b));
        self.edges
            .binary_search_by(|e| (e.low, e.high).cmp(&(low, high)))
            .is_ok()
    }
}

pub fn bruhat_graph(iv: &IntervalPoset) -> BruhatGraph {
    let g = iv.group();
    let mut edges = Vec::new();
    let mut degrees = vec![0; iv.len()];
    for low in 0..iv.len() {
        let y = iv.group_index(low);
        let ly = g.length_of_index(y);
        for t in 0..g.reflections().len() {
            let z = g.reflect_left(t, y);
            let lz = g.length_of_index(z);
            if lz <= ly {
                continue;
            }
            if let Some(high) = iv.position_of_index(z) {
                edges.push(BruhatEdge {
                    low,
                    high,
                    is_cover: lz == ly + 1,
                });
                degrees[low] += 1;
                degrees[high] += 1;
            }
        }
    }
    edges.sort_by_key(|e| (e.low, e.high));
    BruhatGraph { edges, degrees }
}

/// `deg_{u,w}(y)`: the number of Bruhat graph edges at `y` inside `[u, w]`.
pub fn degree(iv: &IntervalPoset, y: &GroupElement) -> Result<usize, BruhatError> {
    let pos = iv
        .position_of(y)
        .ok_or_else(|| BruhatError::NotInInterval(y.to_string()))?;
    Ok(iv.degree_at(pos))
}

/// `(w * w0, u * w0)`. Right multiplication by `w0` reverses Bruhat order, so
/// the returned interval is isomorphic to the dual of `[u, w]`.
pub fn dual_shadow(
    g: &WeylGroup,
    u: &GroupElement,
    w: &GroupElement,
) -> Result<(GroupElement, GroupElement), BruhatError> {
    let w0 = g.longest();
    Ok((g.multiply(w, w0)?, g.multiply(u, w0)?))
}
