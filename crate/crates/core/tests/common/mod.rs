//! Slow, independent reference implementations used to check the library.
//!
//! Nothing here calls into the crate: the group is regenerated by breadth-first
//! search from its generators, lengths are word lengths, and Bruhat order is
//! the transitive closure of `u < tu` over reflections `t`.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

pub type Perm = Vec<i32>;

/// `(x * y)(i) = x(y(i))` on signed windows.
pub fn compose(x: &[i32], y: &[i32]) -> Perm {
    y.iter()
        .map(|&v| {
            let a = x[(v.unsigned_abs() - 1) as usize];
            if v < 0 {
                -a
            } else {
                a
            }
        })
        .collect()
}

pub fn inverse(x: &[i32]) -> Perm {
    let mut out = vec![0; x.len()];
    for (i, &v) in x.iter().enumerate() {
        let j = (v.unsigned_abs() - 1) as usize;
        out[j] = if v < 0 { -(i as i32 + 1) } else { i as i32 + 1 };
    }
    out
}

fn identity(n: usize) -> Perm {
    (1..=n as i32).collect()
}

fn transposition(n: usize, i: usize) -> Perm {
    let mut p = identity(n);
    p.swap(i, i + 1);
    p
}

/// Generators in the library's labeling.
pub fn generators(family: char, rank: usize) -> Vec<Perm> {
    match family {
        'A' => (0..rank).map(|i| transposition(rank + 1, i)).collect(),
        'B' => {
            let mut s1 = identity(rank);
            s1[0] = -1;
            let mut v = vec![s1];
            v.extend((0..rank - 1).map(|i| transposition(rank, i)));
            v
        }
        'D' => {
            let mut s1 = identity(rank);
            s1[0] = -2;
            s1[1] = -1;
            let mut v = vec![s1];
            v.extend((0..rank - 1).map(|i| transposition(rank, i)));
            v
        }
        _ => panic!("unknown family {family}"),
    }
}

pub struct OracleGroup {
    pub elements: Vec<Perm>,
    pub index: HashMap<Perm, usize>,
    pub length: Vec<usize>,
    pub gens: Vec<Perm>,
    pub reflections: Vec<Perm>,
    /// `above[u]` holds every `y` with `u <= y`.
    pub above: Vec<Vec<bool>>,
}

impl OracleGroup {
    pub fn new(family: char, rank: usize) -> Self {
        let gens = generators(family, rank);
        let e = identity(gens[0].len());
        let mut elements = vec![e.clone()];
        let mut index = HashMap::from([(e, 0usize)]);
        let mut length = vec![0];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for s in &gens {
                let y = compose(s, &elements[i]);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elements.len());
                    length.push(length[i] + 1);
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let mut refl = BTreeSet::new();
        for x in &elements {
            for s in &gens {
                refl.insert(compose(&compose(x, s), &inverse(x)));
            }
        }
        let reflections: Vec<Perm> = refl.into_iter().collect();
        let n = elements.len();
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (u, x) in elements.iter().enumerate() {
            for t in &reflections {
                let y = index[&compose(t, x)];
                if length[y] > length[u] {
                    up[u].push(y);
                }
            }
        }
        let mut above = vec![vec![false; n]; n];
        for u in 0..n {
            let mut stack = vec![u];
            above[u][u] = true;
            while let Some(y) = stack.pop() {
                for &z in &up[y] {
                    if !above[u][z] {
                        above[u][z] = true;
                        stack.push(z);
                    }
                }
            }
        }
        OracleGroup {
            elements,
            index,
            length,
            gens,
            reflections,
            above,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn idx(&self, x: &[i32]) -> usize {
        self.index[x]
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.above[x][y]
    }

    pub fn left(&self, a: &[i32], x: usize) -> usize {
        self.idx(&compose(a, &self.elements[x]))
    }

    pub fn interval(&self, u: usize, w: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&y| self.leq(u, y) && self.leq(y, w))
            .collect()
    }

    /// Carrell-Peterson: `deg_{y,w}(y) = l(w) - l(y)` for all `y` in `[u, w]`.
    pub fn rationally_smooth(&self, u: usize, w: usize) -> bool {
        self.interval(u, w).into_iter().all(|y| {
            let deg = self
                .reflections
                .iter()
                .filter(|t| {
                    let z = self.left(t, y);
                    self.length[z] > self.length[y] && self.leq(z, w)
                })
                .count();
            deg == self.length[w] - self.length[y]
        })
    }

    /// Whether some generator witnesses the C4 condition for `[u, w]`.
    pub fn c4_holds(&self, u: usize, w: usize) -> bool {
        self.gens.iter().any(|s| {
            let su = self.left(s, u);
            let sw = self.left(s, w);
            self.length[su] > self.length[u]
                && (!self.leq(su, w) || self.length[sw] < self.length[w])
        })
    }

    /// All pairs `u < w` with `[u, w]` rationally smooth and no C4 witness,
    /// as windows sorted by `(u, w)`.
    pub fn c4_counterexamples(&self) -> BTreeSet<(Perm, Perm)> {
        let mut out = BTreeSet::new();
        for u in 0..self.len() {
            for w in 0..self.len() {
                if u != w && self.leq(u, w) && self.rationally_smooth(u, w) && !self.c4_holds(u, w)
                {
                    out.insert((self.elements[u].clone(), self.elements[w].clone()));
                }
            }
        }
        out
    }

    pub fn comparable_pairs(&self) -> usize {
        (0..self.len())
            .map(|u| {
                (0..self.len())
                    .filter(|&w| u != w && self.leq(u, w))
                    .count()
            })
            .sum()
    }
}

/// A small poset given by its order relation `leq[i][j]`.
pub struct SmallPoset {
    pub leq: Vec<Vec<bool>>,
}

impl SmallPoset {
    pub fn n(&self) -> usize {
        self.leq.len()
    }

    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b
                    && self.leq[a][b]
                    && !(0..n).any(|c| c != a && c != b && self.leq[a][c] && self.leq[c][b])
                {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_cover(&self, a: usize, b: usize) -> bool {
        self.covers().contains(&(a, b))
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Order isomorphism by trying every bijection.
pub fn brute_isomorphic(p: &SmallPoset, q: &SmallPoset) -> bool {
    if p.n() != q.n() {
        return false;
    }
    let n = p.n();
    permutations(n)
        .into_iter()
        .any(|f| (0..n).all(|a| (0..n).all(|b| p.leq[a][b] == q.leq[f[a]][f[b]])))
}

/// Every special matching of `p`, each as a partner array.
pub fn brute_special_matchings(p: &SmallPoset) -> Vec<Vec<usize>> {
    let n = p.n();
    let covers = p.covers();
    let mut out = Vec::new();
    let mut partner = vec![usize::MAX; n];
    fn rec(
        p: &SmallPoset,
        covers: &[(usize, usize)],
        partner: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let Some(a) = partner.iter().position(|&x| x == usize::MAX) else {
            let special = covers
                .iter()
                .all(|&(x, y)| partner[x] == y || p.lt(partner[x], partner[y]));
            if special {
                out.push(partner.clone());
            }
            return;
        };
        for &(x, y) in covers {
            let b = if x == a {
                y
            } else if y == a {
                x
            } else {
                continue;
            };
            if partner[b] != usize::MAX {
                continue;
            }
            partner[a] = b;
            partner[b] = a;
            rec(p, covers, partner, out);
            partner[a] = usize::MAX;
            partner[b] = usize::MAX;
        }
    }
    if n % 2 == 0 {
        rec(p, &covers, &mut partner, &mut out);
    }
    out.sort();
    out
}
