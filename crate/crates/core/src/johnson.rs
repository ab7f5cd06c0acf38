//! The Johnson graph `J(n, r)` in implicit form.
//!
//! Vertices are the `r`-subsets of `[n] = {1, ..., n}`, stored as element
//! masks (bit `e` set iff element `e + 1` belongs to the set). Two vertices are
//! adjacent iff they share exactly `r - 1` elements. Vertices are identified by
//! their colex rank, which coincides with the numeric order of their masks; this
//! is the fixed linear order every canonical choice in the crate refers to.
//!
//! The graph is never materialized. Neighbourhoods are generated from masks on
//! demand.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;

use crate::binom::choose;
use crate::error::{invalid, Result};

/// Largest ground set supported by [`Johnson`].
pub const MAX_N: u32 = 60;

/// An `r`-subset of the ground set, as an element mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RSet(pub u64);

impl RSet {
    /// Builds a set from 1-based element labels.
    pub fn from_elements(elements: &[u32]) -> RSet {
        RSet(elements.iter().fold(0u64, |m, &e| m | (1u64 << (e - 1))))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, element: u32) -> bool {
        (1..=64).contains(&element) && self.0 & (1u64 << (element - 1)) != 0
    }

    /// 1-based elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        bits(self.0).map(|b| b + 1)
    }
}

impl fmt::Display for RSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for RSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Colex rank of a vertex of `J(n, r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

/// Iterator over the set bit positions (0-based) of a mask, ascending.
pub fn bits(mut mask: u64) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros();
            mask &= mask - 1;
            Some(b)
        }
    })
}

/// Next integer with the same popcount (Gosper's hack). `None` once the
/// result would leave the low `n` bits.
#[inline]
pub fn next_same_popcount(x: u64, n: u32) -> Option<u64> {
    if x == 0 {
        return None;
    }
    let c = x & x.wrapping_neg();
    let r = x.checked_add(c)?;
    let next = (((r ^ x) >> 2) / c) | r;
    if n < 64 && next >> n != 0 {
        None
    } else {
        Some(next)
    }
}

/// All `k`-subsets of the low `n` bits, in increasing numeric (= colex) order.
pub fn ksubsets(n: u32, k: u32) -> impl Iterator<Item = u64> {
    let first = if k > n {
        None
    } else if k == 0 {
        Some(0u64)
    } else {
        Some(low_mask(k))
    };
    let mut cur = first;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = cur?;
        if k == 0 {
            done = true;
        } else {
            cur = next_same_popcount(out, n);
        }
        Some(out)
    })
}

/// All `k`-subsets of `mask`, in increasing numeric order.
pub fn subsets_of(mask: u64, k: u32) -> impl Iterator<Item = u64> {
    let positions: Vec<u32> = bits(mask).collect();
    ksubsets(positions.len() as u32, k).map(move |sel| deposit(sel, &positions))
}

/// Scatters the low bits of `sel` onto the given bit positions.
#[inline]
pub fn deposit(sel: u64, positions: &[u32]) -> u64 {
    bits(sel).fold(0u64, |m, i| m | (1u64 << positions[i as usize]))
}

/// Order-preserving relabelling: keeps the bits of `mask` that lie in `keep`,
/// packed down to the low bits.
#[inline]
pub fn extract(mask: u64, keep: u64) -> u64 {
    let mut out = 0u64;
    for (i, b) in bits(keep).enumerate() {
        if mask >> b & 1 == 1 {
            out |= 1u64 << i;
        }
    }
    out
}

#[inline]
pub fn low_mask(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A bitset over the vertices `0..len` of some `J(n, r)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    len: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(len: usize) -> VertexSet {
        VertexSet {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> VertexSet {
        let mut s = VertexSet::new(len);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.trim();
        s
    }

    pub fn from_ids(len: usize, ids: impl IntoIterator<Item = usize>) -> VertexSet {
        let mut s = VertexSet::new(len);
        for i in ids {
            s.insert(i);
        }
        s
    }

    /// Builds a set of length `len <= 64` from a single word.
    pub fn from_word(len: usize, word: u64) -> VertexSet {
        debug_assert!(len <= 64);
        let mut s = VertexSet::new(len);
        if len > 0 {
            s.words[0] = word;
            s.trim();
        }
        s
    }

    /// The first word; the whole set when `len <= 64`.
    pub fn word(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn from_words(len: usize, words: Vec<u64>) -> VertexSet {
        let mut s = VertexSet { len, words };
        s.trim();
        s
    }

    fn trim(&mut self) {
        let extra = self.words.len() * 64 - self.len;
        if extra > 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= u64::MAX >> extra;
            }
        }
    }

    /// Length of the underlying universe, i.e. `C(n, r)`.
    pub fn universe(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < self.len, "vertex {i} out of range {}", self.len);
        let had = self.contains(i);
        self.words[i / 64] |= 1u64 << (i % 64);
        !had
    }

    #[inline]
    pub fn remove(&mut self, i: usize) -> bool {
        let had = self.contains(i);
        if had {
            self.words[i / 64] &= !(1u64 << (i % 64));
        }
        had
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words
            .iter()
            .enumerate()
            .flat_map(|(wi, &w)| bits(w).map(move |b| wi * 64 + b as usize))
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    fn zip_with(&self, other: &VertexSet, f: impl Fn(u64, u64) -> u64) -> VertexSet {
        assert_eq!(self.len, other.len, "vertex sets over different universes");
        VertexSet::from_words(
            self.len,
            self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect(),
        )
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> VertexSet {
        VertexSet::from_words(self.len, self.words.iter().map(|w| !w).collect())
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        assert_eq!(self.len, other.len, "vertex sets over different universes");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }
}

impl Ord for VertexSet {
    /// Numeric order of the bitsets (highest vertex decides).
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Context for `J(n, r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Johnson {
    n: u32,
    r: u32,
    order: usize,
}

impl Johnson {
    pub fn new(n: u32, r: u32) -> Result<Johnson> {
        if n > MAX_N {
            return invalid(format!("n = {n} exceeds the supported maximum {MAX_N}"));
        }
        if r > n {
            return invalid(format!("rank {r} exceeds ground set size {n}"));
        }
        Ok(Johnson {
            n,
            r,
            order: choose(n, r) as usize,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Number of vertices, `C(n, r)`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn ground(&self) -> u64 {
        low_mask(self.n)
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.order)
    }

    pub fn full_set(&self) -> VertexSet {
        VertexSet::full(self.order)
    }

    /// `(d, lambda)`: the degree `r(n - r)` and `lambda = min(r, n - r)`, where
    /// `-lambda` is the smallest adjacency eigenvalue.
    pub fn graph_constants(&self) -> (usize, usize) {
        let (n, r) = (self.n as usize, self.r as usize);
        (r * (n - r), r.min(n - r))
    }

    /// Colex rank `sum_i C(x_i - 1, i)` of `{x_1 < ... < x_r}`.
    pub fn rank(&self, x: RSet) -> Result<VertexId> {
        if x.len() != self.r || x.0 & !self.ground() != 0 {
            return invalid(format!("{x} is not an {}-subset of [{}]", self.r, self.n));
        }
        Ok(VertexId(self.rank_mask(x.0)))
    }

    /// Rank without validation; the caller guarantees `popcount(mask) = r`.
    #[inline]
    pub fn rank_mask(&self, mask: u64) -> usize {
        let mut id = 0u64;
        for (i, b) in bits(mask).enumerate() {
            id += choose(b, i as u32 + 1);
        }
        id as usize
    }

    pub fn unrank(&self, id: VertexId) -> Result<RSet> {
        if id.0 >= self.order {
            return invalid(format!(
                "vertex {} out of range for J({}, {}) with {} vertices",
                id.0, self.n, self.r, self.order
            ));
        }
        Ok(RSet(self.unrank_mask(id.0)))
    }

    #[inline]
    pub fn unrank_mask(&self, id: usize) -> u64 {
        let mut rest = id as u64;
        let mut mask = 0u64;
        let mut hi = self.n;
        for i in (1..=self.r).rev() {
            // largest c < hi with C(c, i) <= rest
            let mut c = hi - 1;
            while choose(c, i) > rest {
                c -= 1;
            }
            mask |= 1u64 << c;
            rest -= choose(c, i);
            hi = c;
        }
        mask
    }

    /// All vertex masks in colex order.
    pub fn vertex_masks(&self) -> impl Iterator<Item = u64> {
        ksubsets(self.n, self.r)
    }

    /// `N(X) = {X - e + f : e in X, f not in X}`.
    pub fn neighbors(&self, x: RSet) -> Vec<RSet> {
        let mut out = Vec::with_capacity((self.r * (self.n - self.r)) as usize);
        let outside = self.ground() & !x.0;
        for e in bits(x.0) {
            for f in bits(outside) {
                out.push(RSet(x.0 & !(1u64 << e) | 1u64 << f));
            }
        }
        out
    }

    /// Calls `visit` with the id of every neighbour of the vertex with mask `mask`.
    #[inline]
    pub fn for_each_neighbor_mask(&self, mask: u64, mut visit: impl FnMut(usize)) {
        let outside = self.ground() & !mask;
        for e in bits(mask) {
            let base = mask & !(1u64 << e);
            for f in bits(outside) {
                visit(self.rank_mask(base | 1u64 << f));
            }
        }
    }

    #[inline]
    pub fn for_each_neighbor(&self, v: usize, visit: impl FnMut(usize)) {
        self.for_each_neighbor_mask(self.unrank_mask(v), visit)
    }

    pub fn adjacent(&self, a: RSet, b: RSet) -> bool {
        self.r >= 1 && a != b && (a.0 & b.0).count_ones() == self.r - 1
    }

    fn check(&self, set: &VertexSet) {
        assert_eq!(
            set.universe(),
            self.order,
            "vertex set is not over J({}, {})",
            self.n,
            self.r
        );
    }

    /// Degree of `v` inside `G[set]`.
    pub fn degree_in(&self, v: usize, set: &VertexSet) -> usize {
        let mut deg = 0;
        self.for_each_neighbor(v, |u| {
            if set.contains(u) {
                deg += 1;
            }
        });
        deg
    }

    /// Maximum degree of `G[set]` (0 for the empty set).
    pub fn max_degree_in(&self, set: &VertexSet) -> usize {
        set.iter().map(|v| self.degree_in(v, set)).max().unwrap_or(0)
    }

    /// Connected components of `G[set]`, ordered by smallest member.
    pub fn components(&self, set: &VertexSet) -> Vec<VertexSet> {
        self.check(set);
        let mut seen = self.empty_set();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in set.iter() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = self.empty_set();
            seen.insert(start);
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                comp.insert(v);
                self.for_each_neighbor(v, |u| {
                    if set.contains(u) && seen.insert(u) {
                        queue.push_back(u);
                    }
                });
            }
            out.push(comp);
        }
        out
    }

    /// No two members adjacent.
    pub fn is_stable(&self, set: &VertexSet) -> bool {
        self.check(set);
        set.iter().all(|v| {
            let mut ok = true;
            self.for_each_neighbor(v, |u| ok &= !set.contains(u));
            ok
        })
    }

    /// The vertex of maximum degree in `G[set]`, ties broken by smallest id.
    pub fn canonical_max_degree_vertex(&self, set: &VertexSet) -> Result<VertexId> {
        self.check(set);
        let mut best: Option<(usize, usize)> = None;
        for v in set.iter() {
            let deg = self.degree_in(v, set);
            if best.is_none_or(|(bd, _)| deg > bd) {
                best = Some((deg, v));
            }
        }
        match best {
            Some((_, v)) => Ok(VertexId(v)),
            None => invalid("canonical max-degree vertex of an empty set"),
        }
    }

    /// `|delta(U, U2)|`, the number of edges between two disjoint sets.
    pub fn crossing_edges(&self, u: &VertexSet, u2: &VertexSet) -> Result<usize> {
        self.check(u);
        self.check(u2);
        if !u.is_disjoint(u2) {
            return invalid("crossing_edges requires disjoint vertex sets");
        }
        let mut count = 0;
        for v in u.iter() {
            self.for_each_neighbor(v, |w| {
                if u2.contains(w) {
                    count += 1;
                }
            });
        }
        Ok(count)
    }

    /// Closed neighbourhood `set ∪ N(set)`.
    pub fn closed_neighborhood(&self, set: &VertexSet) -> VertexSet {
        let mut out = set.clone();
        for v in set.iter() {
            self.for_each_neighbor(v, |u| {
                out.insert(u);
            });
        }
        out
    }

    /// Vertex set from a list of element masks.
    pub fn set_from_masks(&self, masks: impl IntoIterator<Item = u64>) -> Result<VertexSet> {
        let mut s = self.empty_set();
        for m in masks {
            s.insert(self.rank(RSet(m))?.0);
        }
        Ok(s)
    }

    /// Vertex set from 1-based element lists.
    pub fn set_from_elements(&self, sets: &[&[u32]]) -> Result<VertexSet> {
        self.set_from_masks(sets.iter().map(|e| RSet::from_elements(e).0))
    }
}
