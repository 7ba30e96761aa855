//! Finite Weyl groups of types A, B and D realized as (signed) permutations.
//!
//! Conventions used throughout the crate:
//!
//! * An element is stored as its window `[x(1), ..., x(k)]`. Type `A_n` uses
//!   permutations of `1..=n+1`; types `B_n` and `D_n` use signed permutations
//!   of `±1..=±n`, extended by `x(-i) = -x(i)`.
//! * Products are composition of maps: `(x * y)(i) = x(y(i))`. Left
//!   multiplication `s * x` therefore acts on the *values* of the window and
//!   right multiplication acts on *positions*.
//! * Generator labels are `s1..sn`:
//!   - `A_n`: `s_i = (i, i+1)`.
//!   - `B_n`: `s1 = [-1, 2, ..., n]` (sign change of 1), `s_{i+1} = (i, i+1)`.
//!     The single `m = 4` bond joins `s1` and `s2`.
//!   - `D_n`: `s1 = [-2, -1, 3, ..., n]`, `s_{i+1} = (i, i+1)`. For `D_4` the
//!     branch node is `s3`, joined to each of `s1`, `s2` and `s4`.
//! * Lengths are inversion counts in type A and breadth-first distances from
//!   the identity in the generator Cayley graph for types B and D.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::GroupError;

/// Default upper bound on the number of elements of a realized group.
pub const DEFAULT_ORDER_CAP: u128 = 1_000_000;

/// Types B and D keep a full comparability table, so their order is bounded
/// separately.
pub const ORDER_TABLE_LIMIT: u128 = 1 << 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => "A",
            Family::B => "B",
            Family::D => "D",
        };
        f.write_str(c)
    }
}

impl FromStr for Family {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "D" | "d" => Ok(Family::D),
            other => Err(GroupError::UnknownFamily(other.to_string())),
        }
    }
}

/// Cartan-Killing type of a finite irreducible Weyl group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub family: Family,
    pub rank: usize,
}

impl GroupDescriptor {
    pub fn new(family: Family, rank: usize) -> Result<Self, GroupError> {
        let ok = match family {
            Family::A => (1..=12).contains(&rank),
            Family::B => (2..=12).contains(&rank),
            Family::D => (4..=12).contains(&rank),
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(GroupError::UnsupportedRank { family, rank })
        }
    }

    /// Number of entries in an element's window.
    pub fn window_len(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::B | Family::D => self.rank,
        }
    }

    pub fn order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
        }
    }

    /// Number of positive roots, equal to the number of reflections.
    pub fn num_reflections(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B => n * n,
            Family::D => n * (n - 1),
        }
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D)
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for GroupDescriptor {
    type Err = GroupError;

    /// Parses names such as `A4` or `D4`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut chars = s.chars();
        let family: Family = chars
            .next()
            .ok_or_else(|| GroupError::UnknownFamily(String::new()))?
            .to_string()
            .parse()?;
        let rank: usize = chars.as_str().parse().map_err(|_| GroupError::Parse {
            input: s.to_string(),
            reason: "expected a group name such as A4".into(),
        })?;
        GroupDescriptor::new(family, rank)
    }
}

/// A group element in window notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<i8>);

impl GroupElement {
    pub fn identity(window_len: usize) -> Self {
        GroupElement((1..=window_len as i8).collect())
    }

    /// Wraps a window without checking that it is a valid element of any group.
    pub fn from_window_unchecked(window: Vec<i8>) -> Self {
        GroupElement(window)
    }

    pub fn window(&self) -> &[i8] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    #[inline]
    fn apply(&self, v: i8) -> i8 {
        let image = self.0[(v.unsigned_abs() - 1) as usize];
        if v < 0 {
            -image
        } else {
            image
        }
    }

    /// `self * other`, i.e. apply `other` first.
    pub(crate) fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement(other.0.iter().map(|&v| self.apply(v)).collect())
    }

    pub(crate) fn invert(&self) -> GroupElement {
        let mut out = vec![0i8; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            let pos = (v.unsigned_abs() - 1) as usize;
            let pre = (i + 1) as i8;
            out[pos] = if v < 0 { -pre } else { pre };
        }
        GroupElement(out)
    }

    /// Number of pairs `i < j` with `x(i) > x(j)`.
    pub fn inversions(&self) -> usize {
        let w = &self.0;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A realized finite Weyl group with all elements enumerated.
///
/// Elements are indexed in `(length, window)` order, so index `0` is the
/// identity and the last index is the longest element. Left multiplication by
/// generators and by reflections is tabulated over indices.
pub struct WeylGroup {
    descriptor: GroupDescriptor,
    generators: Vec<GroupElement>,
    reflections: Vec<GroupElement>,
    longest: GroupElement,
    elements: Vec<GroupElement>,
    lengths: Vec<u32>,
    index: HashMap<GroupElement, u32>,
    generator_table: Vec<u32>,
    reflection_table: Vec<u32>,
    reflection_ids: Vec<u32>,
    pub(crate) order_table: Option<Vec<FixedBitSet>>,
}

impl fmt::Debug for WeylGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeylGroup")
            .field("descriptor", &self.descriptor)
            .field("order", &self.elements.len())
            .field("reflections", &self.reflections.len())
            .finish()
    }
}

fn generators_for(d: GroupDescriptor) -> Vec<GroupElement> {
    let k = d.window_len();
    let transposition = |i: usize| {
        let mut w: Vec<i8> = (1..=k as i8).collect();
        w.swap(i - 1, i);
        GroupElement(w)
    };
    match d.family {
        Family::A => (1..=d.rank).map(transposition).collect(),
        Family::B => {
            let mut gens = Vec::with_capacity(d.rank);
            let mut w: Vec<i8> = (1..=k as i8).collect();
            w[0] = -1;
            gens.push(GroupElement(w));
            gens.extend((1..d.rank).map(transposition));
            gens
        }
        Family::D => {
            let mut gens = Vec::with_capacity(d.rank);
            let mut w: Vec<i8> = (1..=k as i8).collect();
            w[0] = -2;
            w[1] = -1;
            gens.push(GroupElement(w));
            gens.extend((1..d.rank).map(transposition));
            gens
        }
    }
}

impl WeylGroup {
    pub fn new(descriptor: GroupDescriptor) -> Result<Self, GroupError> {
        Self::with_cap(descriptor, DEFAULT_ORDER_CAP)
    }

    pub fn with_cap(descriptor: GroupDescriptor, cap: u128) -> Result<Self, GroupError> {
        let order = descriptor.order();
        let cap = match descriptor.family {
            Family::A => cap,
            Family::B | Family::D => cap.min(ORDER_TABLE_LIMIT),
        };
        if order > cap {
            return Err(GroupError::TooLarge {
                name: descriptor.name(),
                order,
                cap,
            });
        }

        let generators = generators_for(descriptor);
        let identity = GroupElement::identity(descriptor.window_len());

        // Breadth-first enumeration; the distance is the length.
        let mut dist: HashMap<GroupElement, u32> = HashMap::with_capacity(order as usize);
        let mut queue = VecDeque::new();
        dist.insert(identity.clone(), 0);
        queue.push_back(identity);
        while let Some(x) = queue.pop_front() {
            let d = dist[&x];
            for s in &generators {
                let y = s.compose(&x);
                if !dist.contains_key(&y) {
                    dist.insert(y.clone(), d + 1);
                    queue.push_back(y);
                }
            }
        }
        debug_assert_eq!(dist.len() as u128, order);

        let mut pairs: Vec<(u32, GroupElement)> = dist
            .into_iter()
            .map(|(x, d)| {
                let len = match descriptor.family {
                    Family::A => x.inversions() as u32,
                    Family::B | Family::D => d,
                };
                (len, x)
            })
            .collect();
        pairs.sort_unstable();
        let lengths: Vec<u32> = pairs.iter().map(|(l, _)| *l).collect();
        let elements: Vec<GroupElement> = pairs.into_iter().map(|(_, x)| x).collect();
        let index: HashMap<GroupElement, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i as u32))
            .collect();

        let n = elements.len();
        let mut generator_table = Vec::with_capacity(generators.len() * n);
        for s in &generators {
            generator_table.extend(elements.iter().map(|x| index[&s.compose(x)]));
        }

        // Closure of S under conjugation by generators is all of T.
        let mut reflections: Vec<GroupElement> = generators.clone();
        let mut seen: std::collections::HashSet<GroupElement> =
            reflections.iter().cloned().collect();
        let mut frontier = reflections.clone();
        while let Some(t) = frontier.pop() {
            for s in &generators {
                let c = s.compose(&t).compose(s);
                if seen.insert(c.clone()) {
                    reflections.push(c.clone());
                    frontier.push(c);
                }
            }
        }
        let mut reflection_ids: Vec<u32> = reflections.iter().map(|t| index[t]).collect();
        reflection_ids.sort_unstable();
        let reflections: Vec<GroupElement> = reflection_ids
            .iter()
            .map(|&i| elements[i as usize].clone())
            .collect();

        let mut reflection_table = Vec::with_capacity(reflections.len() * n);
        for t in &reflections {
            reflection_table.extend(elements.iter().map(|x| index[&t.compose(x)]));
        }

        let longest = elements[n - 1].clone();

        let mut group = WeylGroup {
            descriptor,
            generators,
            reflections,
            longest,
            elements,
            lengths,
            index,
            generator_table,
            reflection_table,
            reflection_ids,
            order_table: None,
        };
        debug_assert_eq!(
            group.left_descents_idx(n - 1).len(),
            descriptor.rank,
            "longest element must have full descent set"
        );
        if descriptor.family != Family::A {
            group.order_table = Some(group.build_order_table());
        }
        Ok(group)
    }

    /// Down-sets `{x <= y}` for every `y`, by transitive closure of covers.
    fn build_order_table(&self) -> Vec<FixedBitSet> {
        let n = self.elements.len();
        let mut table: Vec<FixedBitSet> = Vec::with_capacity(n);
        for y in 0..n {
            let mut bits = FixedBitSet::with_capacity(n);
            bits.insert(y);
            let ly = self.lengths[y];
            for t in 0..self.reflections.len() {
                let x = self.reflect_left(t, y);
                if self.lengths[x] + 1 == ly {
                    bits.union_with(&table[x]);
                }
            }
            table.push(bits);
        }
        table
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        self.descriptor
    }

    pub fn rank(&self) -> usize {
        self.descriptor.rank
    }

    /// Number of elements.
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// Label of generator `i` (0-based), e.g. `s1`.
    pub fn generator_label(&self, i: usize) -> String {
        format!("s{}", i + 1)
    }

    pub fn reflections(&self) -> &[GroupElement] {
        &self.reflections
    }

    pub fn longest(&self) -> &GroupElement {
        &self.longest
    }

    pub fn identity(&self) -> &GroupElement {
        &self.elements[0]
    }

    /// All elements in `(length, window)` order.
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn index_of(&self, x: &GroupElement) -> Option<usize> {
        self.index.get(x).map(|&i| i as usize)
    }

    pub(crate) fn require(&self, x: &GroupElement) -> Result<usize, GroupError> {
        self.index_of(x).ok_or_else(|| self.invalid(x))
    }

    fn invalid(&self, x: &GroupElement) -> GroupError {
        let window: Vec<i64> = x.0.iter().map(|&v| v as i64).collect();
        let reason = if x.0.len() != self.descriptor.window_len() {
            "window has the wrong length"
        } else if self.descriptor.family == Family::D {
            "not a signed permutation with an even number of sign changes"
        } else if self.descriptor.family == Family::B {
            "not a signed permutation"
        } else {
            "not a permutation"
        };
        GroupError::InvalidElement {
            name: self.descriptor.name(),
            window,
            reason,
        }
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.index.contains_key(x)
    }

    /// Validates and wraps a window.
    pub fn element_from_window(&self, window: &[i64]) -> Result<GroupElement, GroupError> {
        let bad = || GroupError::InvalidElement {
            name: self.descriptor.name(),
            window: window.to_vec(),
            reason: "entries out of range",
        };
        let w: Vec<i8> = window
            .iter()
            .map(|&v| i8::try_from(v).map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        let x = GroupElement(w);
        self.require(&x)?;
        Ok(x)
    }

    #[inline]
    pub fn length_of_index(&self, i: usize) -> u32 {
        self.lengths[i]
    }

    /// Coxeter length. Type A uses the inversion count of the window; B and D
    /// use the stored breadth-first distance.
    pub fn length(&self, x: &GroupElement) -> Result<u32, GroupError> {
        let i = self.require(x)?;
        Ok(match self.descriptor.family {
            Family::A => x.inversions() as u32,
            Family::B | Family::D => self.lengths[i],
        })
    }

    pub fn multiply(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement, GroupError> {
        self.require(x)?;
        self.require(y)?;
        Ok(x.compose(y))
    }

    pub fn inverse(&self, x: &GroupElement) -> Result<GroupElement, GroupError> {
        self.require(x)?;
        Ok(x.invert())
    }

    /// Index of `s_gen * x`.
    #[inline]
    pub fn generator_left(&self, gen: usize, x: usize) -> usize {
        self.generator_table[gen * self.elements.len() + x] as usize
    }

    /// Index of `t * x` for the `t`-th reflection.
    #[inline]
    pub fn reflect_left(&self, t: usize, x: usize) -> usize {
        self.reflection_table[t * self.elements.len() + x] as usize
    }

    /// Element indices of the reflections, in the order of [`Self::reflections`].
    pub fn reflection_indices(&self) -> &[u32] {
        &self.reflection_ids
    }

    pub fn is_reflection_index(&self, i: usize) -> bool {
        self.reflection_ids.binary_search(&(i as u32)).is_ok()
    }

    pub(crate) fn left_descents_idx(&self, x: usize) -> Vec<usize> {
        let lx = self.lengths[x];
        (0..self.generators.len())
            .filter(|&s| self.lengths[self.generator_left(s, x)] < lx)
            .collect()
    }

    /// Left descent set as 0-based generator indices.
    pub fn left_descents(&self, x: &GroupElement) -> Result<Vec<usize>, GroupError> {
        Ok(self.left_descents_idx(self.require(x)?))
    }

    /// A reduced word for `x`, peeling off the smallest left descent each step.
    pub fn reduced_word(&self, x: &GroupElement) -> Result<Vec<usize>, GroupError> {
        let mut i = self.require(x)?;
        let mut word = Vec::with_capacity(self.lengths[i] as usize);
        while i != 0 {
            let s = self.left_descents_idx(i)[0];
            word.push(s);
            i = self.generator_left(s, i);
        }
        Ok(word)
    }

    /// Renders `x` as a reduced word such as `s1*s2*s1`, or `e`.
    pub fn word_string(&self, x: &GroupElement) -> Result<String, GroupError> {
        let word = self.reduced_word(x)?;
        if word.is_empty() {
            return Ok("e".to_string());
        }
        Ok(word
            .iter()
            .map(|&s| self.generator_label(s))
            .collect::<Vec<_>>()
            .join("*"))
    }

    /// Order of `s_i s_j`, computed by repeated multiplication.
    #[allow(clippy::needless_range_loop)]
    pub fn coxeter_matrix(&self) -> Vec<Vec<u32>> {
        let r = self.generators.len();
        let id = self.identity().clone();
        let mut m = vec![vec![1u32; r]; r];
        for i in 0..r {
            for j in 0..r {
                if i == j {
                    continue;
                }
                let p = self.generators[i].compose(&self.generators[j]);
                let mut acc = p.clone();
                let mut k = 1;
                while acc != id {
                    acc = acc.compose(&p);
                    k += 1;
                }
                m[i][j] = k;
            }
        }
        m
    }

    /// Parses either a window (`3,4,1,2`, `-2,1`) or a generator word
    /// (`s1*s3*s2`, `e`). Words accept `*` or whitespace as separators and an
    /// optional prime, as in `s'3`.
    pub fn parse_element(&self, input: &str) -> Result<GroupElement, GroupError> {
        let text = input.trim();
        let parse_err = |reason: String| GroupError::Parse {
            input: input.to_string(),
            reason,
        };
        if text.is_empty() {
            return Err(parse_err("empty input".into()));
        }
        let looks_like_word = text == "e" || text.starts_with('s') || text.starts_with('S');
        if !looks_like_word {
            let window: Vec<i64> = text
                .split(',')
                .map(|p| p.trim().parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|e| parse_err(format!("bad window entry: {e}")))?;
            return self.element_from_window(&window);
        }
        let mut x = self.identity().clone();
        for token in text.split(|c: char| c == '*' || c.is_whitespace()) {
            let token = token.trim();
            if token.is_empty() || token == "e" {
                continue;
            }
            let digits = token
                .strip_prefix('s')
                .or_else(|| token.strip_prefix('S'))
                .map(|t| t.trim_start_matches(['\'', '′']))
                .ok_or_else(|| parse_err(format!("unexpected token {token:?}")))?;
            let k: usize = digits
                .parse()
                .map_err(|_| parse_err(format!("unexpected token {token:?}")))?;
            if k == 0 || k > self.generators.len() {
                return Err(parse_err(format!(
                    "generator {token} out of range for {}",
                    self.descriptor
                )));
            }
            x = x.compose(&self.generators[k - 1]);
        }
        Ok(x)
    }
}
