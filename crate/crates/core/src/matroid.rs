//! Matroids stored by their basis family, a bitset over `V(J(n, r))`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_rational::Ratio;

use crate::binom::choose;
use crate::error::{invalid, Error, InvalidBases, Result};
use crate::johnson::{bits, extract, ksubsets, low_mask, subsets_of, Johnson, RSet, VertexId, VertexSet};

/// A natural number or `+inf`; used for girth and connectivity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtNat {
    Finite(u32),
    Infinite,
}

impl ExtNat {
    pub fn finite(self) -> Option<u32> {
        match self {
            ExtNat::Finite(k) => Some(k),
            ExtNat::Infinite => None,
        }
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(k) => write!(f, "{k}"),
            ExtNat::Infinite => f.write_str("inf"),
        }
    }
}

/// Checks the basis-exchange axiom on a candidate family.
///
/// For `B1, B2` in the family and `x in B1 \ B2` some `y in B2 \ B1` must give
/// `B1 - x + y` in the family. On failure the colex-first violating triple is
/// reported (`B1` first, then `x`, then `B2`).
pub fn validate_bases(n: u32, r: u32, cand: &VertexSet) -> Result<(), InvalidBases> {
    let j = Johnson::new(n, r).expect("valid (n, r)");
    assert_eq!(cand.universe(), j.order());
    if cand.is_empty() {
        return Err(InvalidBases::Empty);
    }
    let masks: Vec<u64> = cand.iter().map(|v| j.unrank_mask(v)).collect();
    let ground = j.ground();
    // Whether some member avoids a given element mask, memoized.
    let mut avoid_memo: HashMap<u64, Option<u64>> = HashMap::new();
    for &b1 in &masks {
        let outside = ground & !b1;
        for x in bits(b1) {
            let base = b1 & !(1u64 << x);
            let mut good_y = 0u64;
            for y in bits(outside) {
                if cand.contains(j.rank_mask(base | 1u64 << y)) {
                    good_y |= 1u64 << y;
                }
            }
            // A violating B2 contains neither x nor any good y.
            let forbidden = good_y | 1u64 << x;
            let hit = *avoid_memo
                .entry(forbidden)
                .or_insert_with(|| masks.iter().copied().find(|b2| b2 & forbidden == 0));
            if let Some(b2) = hit {
                return Err(InvalidBases::Exchange {
                    b1: RSet(b1),
                    b2: RSet(b2),
                    x: x + 1,
                });
            }
        }
    }
    Ok(())
}

/// A matroid on `[n]` of rank `r`, given by its bases.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matroid {
    n: u32,
    r: u32,
    bases: VertexSet,
    basis_masks: Vec<u64>,
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matroid(n={}, r={}, bases=[", self.n, self.r)?;
        for (i, b) in self.basis_masks.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", RSet(*b))?;
        }
        f.write_str("])")
    }
}

impl PartialOrd for Matroid {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Matroid {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.r, &self.bases).cmp(&(other.n, other.r, &other.bases))
    }
}

impl Matroid {
    /// Validates the exchange axiom before constructing.
    pub fn from_bases(n: u32, r: u32, bases: VertexSet) -> Result<Matroid> {
        let j = Johnson::new(n, r)?;
        if bases.universe() != j.order() {
            return invalid(format!(
                "basis bitset has length {}, expected C({n},{r}) = {}",
                bases.universe(),
                j.order()
            ));
        }
        validate_bases(n, r, &bases).map_err(Error::NotMatroid)?;
        Ok(Self::from_bases_unchecked(n, r, bases))
    }

    /// Skips validation; for families known to satisfy the exchange axiom.
    pub fn from_bases_unchecked(n: u32, r: u32, bases: VertexSet) -> Matroid {
        let j = Johnson::new(n, r).expect("valid (n, r)");
        let basis_masks = bases.iter().map(|v| j.unrank_mask(v)).collect();
        Matroid {
            n,
            r,
            bases,
            basis_masks,
        }
    }

    pub fn from_basis_masks(n: u32, r: u32, masks: impl IntoIterator<Item = u64>) -> Result<Matroid> {
        let j = Johnson::new(n, r)?;
        let bases = j.set_from_masks(masks)?;
        Matroid::from_bases(n, r, bases)
    }

    /// `U_{r,n}`.
    pub fn uniform(r: u32, n: u32) -> Result<Matroid> {
        let j = Johnson::new(n, r)?;
        Ok(Self::from_bases_unchecked(n, r, j.full_set()))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn bases(&self) -> &VertexSet {
        &self.bases
    }

    pub fn basis_masks(&self) -> &[u64] {
        &self.basis_masks
    }

    pub fn johnson(&self) -> Johnson {
        Johnson::new(self.n, self.r).expect("valid (n, r)")
    }

    pub fn ground(&self) -> u64 {
        low_mask(self.n)
    }

    pub fn is_basis(&self, x: RSet) -> bool {
        x.len() == self.r && self.bases.contains(self.johnson().rank_mask(x.0))
    }

    /// `K`: the dependent `r`-sets.
    pub fn non_bases(&self) -> VertexSet {
        self.bases.complement()
    }

    /// `r_M(A) = max_B |A ∩ B|`.
    pub fn rank_of(&self, a: u64) -> u32 {
        let cap = a.count_ones().min(self.r);
        let mut best = 0;
        for &b in &self.basis_masks {
            let k = (a & b).count_ones();
            if k > best {
                best = k;
                if best == cap {
                    break;
                }
            }
        }
        best
    }

    pub fn is_independent(&self, a: u64) -> bool {
        self.rank_of(a) == a.count_ones()
    }

    pub fn closure_of(&self, a: u64) -> u64 {
        let ra = self.rank_of(a);
        let mut cl = a;
        for e in bits(self.ground() & !a) {
            if self.rank_of(a | 1u64 << e) == ra {
                cl |= 1u64 << e;
            }
        }
        cl
    }

    /// The unique circuit inside an `r`-set of rank `r - 1`.
    pub fn unique_circuit_in(&self, x: RSet) -> Result<u64> {
        if x.len() != self.r || x.0 & !self.ground() != 0 || self.rank_of(x.0) + 1 != self.r {
            return invalid(format!("{x} is not an r-set of rank r - 1"));
        }
        // x lies on the circuit iff X - x is independent
        Ok(bits(x.0)
            .filter(|&e| self.is_independent(x.0 & !(1u64 << e)))
            .fold(0u64, |c, e| c | 1u64 << e))
    }

    /// All circuits, ordered by size and then numerically.
    pub fn circuits(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for k in 1..=(self.r + 1).min(self.n) {
            for c in ksubsets(self.n, k) {
                if !self.is_independent(c) && bits(c).all(|e| self.is_independent(c & !(1u64 << e))) {
                    out.push(c);
                }
            }
        }
        out
    }

    /// Smallest circuit size.
    pub fn girth(&self) -> ExtNat {
        for k in 1..=(self.r + 1).min(self.n) {
            if ksubsets(self.n, k).any(|c| !self.is_independent(c)) {
                return ExtNat::Finite(k);
            }
        }
        ExtNat::Infinite
    }

    pub fn cogirth(&self) -> ExtNat {
        self.dual().girth()
    }

    pub fn dual(&self) -> Matroid {
        let dj = Johnson::new(self.n, self.n - self.r).expect("valid");
        let ground = self.ground();
        let bases = VertexSet::from_ids(dj.order(), self.basis_masks.iter().map(|b| dj.rank_mask(ground & !b)));
        Matroid::from_bases_unchecked(self.n, self.n - self.r, bases)
    }

    fn check_elements(&self, set: u64, what: &str) -> Result<()> {
        if set & !self.ground() != 0 {
            return invalid(format!("{what} {} is not a subset of [{}]", RSet(set), self.n));
        }
        Ok(())
    }

    /// `M \ D`, relabelled onto `[n - |D|]` preserving order.
    pub fn delete(&self, d: u64) -> Result<Matroid> {
        self.check_elements(d, "deletion set")?;
        let keep = self.ground() & !d;
        if keep == 0 {
            return invalid("deleting the whole ground set");
        }
        let r2 = self.rank_of(keep);
        let n2 = keep.count_ones();
        let j2 = Johnson::new(n2, r2)?;
        let bases = VertexSet::from_ids(
            j2.order(),
            self.basis_masks
                .iter()
                .filter(|&&b| (b & keep).count_ones() == r2)
                .map(|&b| j2.rank_mask(extract(b, keep))),
        );
        Ok(Matroid::from_bases_unchecked(n2, r2, bases))
    }

    /// `M / C` using the colex-first maximal independent subset of `C`.
    pub fn contract(&self, c: u64) -> Result<Matroid> {
        self.check_elements(c, "contraction set")?;
        let rc = self.rank_of(c);
        let basis_of_c = subsets_of(c, rc)
            .find(|&i| self.is_independent(i))
            .expect("a set contains an independent subset of its own rank");
        self.contract_with(c, basis_of_c)
    }

    /// `M / C` computed through a caller-chosen maximal independent `I ⊆ C`.
    pub fn contract_with(&self, c: u64, basis_of_c: u64) -> Result<Matroid> {
        self.check_elements(c, "contraction set")?;
        let keep = self.ground() & !c;
        if keep == 0 {
            return invalid("contracting the whole ground set");
        }
        let rc = self.rank_of(c);
        if basis_of_c & !c != 0 || basis_of_c.count_ones() != rc || !self.is_independent(basis_of_c) {
            return invalid("not a maximal independent subset of the contraction set");
        }
        let n2 = keep.count_ones();
        let r2 = self.r - rc;
        let j2 = Johnson::new(n2, r2)?;
        let bases = VertexSet::from_ids(
            j2.order(),
            self.basis_masks
                .iter()
                .filter(|&&b| b & c == basis_of_c)
                .map(|&b| j2.rank_mask(extract(b, keep))),
        );
        Ok(Matroid::from_bases_unchecked(n2, r2, bases))
    }

    /// Truncation: bases are the independent `(r - 1)`-sets.
    pub fn truncate(&self) -> Result<Matroid> {
        if self.r == 0 {
            return invalid("truncation of a rank-0 matroid");
        }
        let j2 = Johnson::new(self.n, self.r - 1)?;
        let mut bases = j2.empty_set();
        for &b in &self.basis_masks {
            for e in bits(b) {
                bases.insert(j2.rank_mask(b & !(1u64 << e)));
            }
        }
        Ok(Matroid::from_bases_unchecked(self.n, self.r - 1, bases))
    }

    /// Splits the non-bases into circuit-hyperplanes `W` (isolated vertices of
    /// `G[K]`) and the rest `U`.
    pub fn nonbasis_partition(&self) -> NonbasisPartition {
        let j = self.johnson();
        let mut w = j.empty_set();
        let mut u = j.empty_set();
        for comp in j.components(&self.non_bases()) {
            if comp.count() == 1 {
                w.union_with(&comp);
            } else {
                u.union_with(&comp);
            }
        }
        NonbasisPartition { w, u }
    }

    /// Turns the circuit-hyperplane `x` into a basis.
    pub fn relax(&self, x: VertexId) -> Result<Matroid> {
        let part = self.nonbasis_partition();
        if !part.w.contains(x.0) {
            return invalid(format!("vertex {} is not a circuit-hyperplane", x.0));
        }
        let mut bases = self.bases.clone();
        bases.insert(x.0);
        Ok(Matroid::from_bases_unchecked(self.n, self.r, bases))
    }

    /// Whether `M/C \ D = U_{a,b}` for some disjoint `C` (size `r - a`) and
    /// `D` (size `(n - r) - (b - a)`). Such a minor exists iff the whole
    /// interval `[C; D]` consists of bases.
    pub fn has_uniform_minor(&self, a: u32, b: u32) -> bool {
        if a > b || self.r < a || self.n - self.r < b - a {
            return false;
        }
        let j = self.johnson();
        let ground = self.ground();
        let d_size = (self.n - self.r) - (b - a);
        for c in ksubsets(self.n, self.r - a) {
            for d in subsets_of(ground & !c, d_size) {
                let rest = ground & !c & !d;
                if subsets_of(rest, a).all(|y| self.bases.contains(j.rank_mask(c | y))) {
                    return true;
                }
            }
        }
        false
    }

    /// Tutte connectivity by brute force over all bipartitions.
    pub fn connectivity(&self) -> ExtNat {
        let ground = self.ground();
        let mut best = ExtNat::Infinite;
        if self.n < 2 {
            return best;
        }
        // A always contains element 1; B = E \ A must be nonempty
        let top = 1u64 << (self.n - 1);
        for half in 0..top {
            let a = half << 1 | 1;
            let b = ground & !a;
            if b == 0 {
                continue;
            }
            let k = self.rank_of(a) + self.rank_of(b) + 1 - self.r;
            let smallest_side = a.count_ones().min(b.count_ones());
            if k <= smallest_side && ExtNat::Finite(k) < best {
                best = ExtNat::Finite(k);
            }
        }
        best
    }

    /// Tail count for the bipartition `{A, E \ A}`.
    pub fn separation_tail_count(&self, a: u64) -> Result<SeparationTail> {
        self.check_elements(a, "separation side")?;
        let b = self.ground() & !a;
        if a == 0 || b == 0 {
            return invalid("separation sides must both be nonempty");
        }
        let (ra, rb) = (self.rank_of(a), self.rank_of(b));
        let (sa, sb) = (a.count_ones(), b.count_ones());
        let j = self.johnson();
        let mut ua = j.empty_set();
        let mut ub = j.empty_set();
        for (id, x) in j.vertex_masks().enumerate() {
            if (x & a).count_ones() > ra {
                ua.insert(id);
            }
            if (x & b).count_ones() > rb {
                ub.insert(id);
            }
        }
        let mut q = BigUint::default();
        for s in 0..=ra.min(self.r) {
            let t = self.r - s;
            if t <= rb {
                q += BigUint::from(choose(sa, s)) * BigUint::from(choose(sb, t));
            }
        }
        Ok(SeparationTail { q, ua, ub })
    }

    /// `(u, w, d)`: fractions of `r`-sets in `U(M)`, `W(M)` and `K`.
    pub fn fractions(&self) -> Fractions {
        let part = self.nonbasis_partition();
        let total = self.bases.universe() as u64;
        Fractions {
            u: Ratio::new(part.u.count() as u64, total),
            w: Ratio::new(part.w.count() as u64, total),
            d: Ratio::new((part.u.count() + part.w.count()) as u64, total),
        }
    }

    /// Elements in no basis.
    pub fn loops(&self) -> u64 {
        let union = self.basis_masks.iter().fold(0u64, |m, b| m | b);
        self.ground() & !union
    }

    /// Elements in every basis.
    pub fn coloops(&self) -> u64 {
        self.basis_masks.iter().fold(self.ground(), |m, b| m & b)
    }

    pub fn has_loops(&self) -> bool {
        self.loops() != 0
    }

    pub fn has_coloops(&self) -> bool {
        self.coloops() != 0
    }

    /// Non-bases form a stable set of `J(n, r)`.
    pub fn is_sparse_paving(&self) -> bool {
        self.johnson().is_stable(&self.non_bases())
    }

    /// Relabels elements: element `e` (1-based) becomes `perm[e - 1]`.
    pub fn permute(&self, perm: &[u32]) -> Result<Matroid> {
        if perm.len() != self.n as usize {
            return invalid("permutation length differs from n");
        }
        let mut seen = 0u64;
        for &p in perm {
            if p == 0 || p > self.n || seen >> (p - 1) & 1 == 1 {
                return invalid("not a permutation of [n]");
            }
            seen |= 1u64 << (p - 1);
        }
        let j = self.johnson();
        let bases = VertexSet::from_ids(
            j.order(),
            self.basis_masks.iter().map(|&b| {
                let img = bits(b).fold(0u64, |m, e| m | 1u64 << (perm[e as usize] - 1));
                j.rank_mask(img)
            }),
        );
        Ok(Matroid::from_bases_unchecked(self.n, self.r, bases))
    }
}

/// `W(M)` and `U(M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonbasisPartition {
    pub w: VertexSet,
    pub u: VertexSet,
}

/// Output of [`Matroid::separation_tail_count`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationTail {
    /// Number of `r`-sets outside `ua ∪ ub`.
    pub q: BigUint,
    /// `{X : |X ∩ A| > r(A)}`.
    pub ua: VertexSet,
    /// `{X : |X ∩ B| > r(B)}`.
    pub ub: VertexSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fractions {
    pub u: Ratio<u64>,
    pub w: Ratio<u64>,
    pub d: Ratio<u64>,
}

/// Rank oracle with a per-owner memo table.
pub struct RankOracle<'a> {
    matroid: &'a Matroid,
    memo: HashMap<u64, u32>,
}

impl<'a> RankOracle<'a> {
    pub fn new(matroid: &'a Matroid) -> RankOracle<'a> {
        RankOracle {
            matroid,
            memo: HashMap::new(),
        }
    }

    pub fn matroid(&self) -> &'a Matroid {
        self.matroid
    }

    pub fn rank(&mut self, a: u64) -> u32 {
        let m = self.matroid;
        *self.memo.entry(a).or_insert_with(|| m.rank_of(a))
    }

    pub fn closure(&mut self, a: u64) -> u64 {
        let ra = self.rank(a);
        let mut cl = a;
        for e in bits(self.matroid.ground() & !a) {
            if self.rank(a | 1u64 << e) == ra {
                cl |= 1u64 << e;
            }
        }
        cl
    }
}

/// Named small matroids used throughout tests, examples and the census.
pub mod named {
    use super::*;

    /// Edges of `K_4` in the order 12, 13, 14, 23, 24, 34 (as elements 1..6).
    pub const K4_EDGES: [(u32, u32); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

    /// The cycle matroid `M(K_4)`: rank 3 on 6 edges, bases are spanning trees.
    pub fn mk4() -> Matroid {
        let trees = ksubsets(6, 3).filter(|&t| {
            // three edges on four vertices form a tree iff acyclic
            let mut parent = [0u32, 1, 2, 3, 4];
            fn find(p: &mut [u32; 5], x: u32) -> u32 {
                let mut x = x;
                while p[x as usize] != x {
                    x = p[x as usize];
                }
                x
            }
            bits(t).all(|e| {
                let (a, b) = K4_EDGES[e as usize];
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra == rb {
                    false
                } else {
                    parent[ra as usize] = rb;
                    true
                }
            })
        });
        Matroid::from_basis_masks(6, 3, trees).expect("M(K4) is a matroid")
    }

    /// The four triangles of `K_4` as element masks.
    pub fn k4_triangles() -> Vec<u64> {
        let m = mk4();
        ksubsets(6, 3).filter(|&t| !m.is_independent(t)).collect()
    }

    /// `U_{3,5}` on `{1..5}` with element 6 added parallel to element 5.
    pub fn parallel_pair() -> Matroid {
        let bases = ksubsets(6, 3).filter(|&x| {
            let both = x & 0b110000 == 0b110000;
            !both
        });
        Matroid::from_basis_masks(6, 3, bases).expect("parallel extension is a matroid")
    }

    /// `U_{1,2} ⊕ U_{1,2}` on `{1,2} ∪ {3,4}`.
    pub fn two_parallel_pairs() -> Matroid {
        let bases = ksubsets(4, 2).filter(|&x| (x & 0b11).count_ones() == 1);
        Matroid::from_basis_masks(4, 2, bases).expect("direct sum is a matroid")
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    fn set(e: &[u32]) -> u64 {
        RSet::from_elements(e).0
    }

    #[test]
    fn validate_examples() {
        let j = Johnson::new(4, 2).unwrap();
        assert_eq!(validate_bases(4, 2, &j.full_set()), Ok(()));
        let cand = j.set_from_elements(&[&[2, 3], &[1, 4], &[2, 4], &[3, 4]]).unwrap();
        assert_eq!(
            validate_bases(4, 2, &cand),
            Err(InvalidBases::Exchange {
                b1: RSet::from_elements(&[1, 4]),
                b2: RSet::from_elements(&[2, 3]),
                x: 4
            })
        );
        assert_eq!(validate_bases(4, 2, &j.empty_set()), Err(InvalidBases::Empty));
    }

    #[test]
    fn rank_examples() {
        let m = mk4();
        for t in k4_triangles() {
            assert_eq!(m.rank_of(t), 2);
        }
        assert_eq!(k4_triangles().len(), 4);
        assert_eq!(m.rank_of(0), 0);
        assert_eq!(m.rank_of(m.ground()), 3);
        assert_eq!(m.basis_masks().len(), 16);
    }

    #[test]
    fn closure_examples() {
        let p = parallel_pair();
        assert_eq!(p.closure_of(set(&[5])), set(&[5, 6]));
        assert_eq!(p.closure_of(p.ground()), p.ground());
        let u = Matroid::uniform(2, 4).unwrap();
        assert_eq!(u.closure_of(set(&[1])), set(&[1]));
    }

    #[test]
    fn unique_circuit_examples() {
        let p = parallel_pair();
        assert_eq!(
            p.unique_circuit_in(RSet::from_elements(&[4, 5, 6])).unwrap(),
            set(&[5, 6])
        );
        let m = mk4();
        for t in k4_triangles() {
            assert_eq!(m.unique_circuit_in(RSet(t)).unwrap(), t);
        }
        let u = Matroid::uniform(2, 4).unwrap();
        for x in ksubsets(4, 2) {
            assert!(u.unique_circuit_in(RSet(x)).is_err());
        }
    }

    #[test]
    fn girth_examples() {
        assert_eq!(Matroid::uniform(2, 4).unwrap().girth(), ExtNat::Finite(3));
        assert_eq!(parallel_pair().girth(), ExtNat::Finite(2));
        assert_eq!(Matroid::uniform(5, 5).unwrap().girth(), ExtNat::Infinite);
    }

    #[test]
    fn truncation_examples() {
        assert_eq!(
            Matroid::uniform(3, 6).unwrap().truncate().unwrap(),
            Matroid::uniform(2, 6).unwrap()
        );
        assert_eq!(mk4().truncate().unwrap(), Matroid::uniform(2, 6).unwrap());
        assert!(Matroid::uniform(0, 3).unwrap().truncate().is_err());
    }

    #[test]
    fn dual_and_minors() {
        let m = mk4();
        assert_eq!(m.dual().dual(), m);
        // deleting an edge of K4 leaves a 4-cycle plus chord: rank 3 on 5
        let d = m.delete(set(&[6])).unwrap();
        assert_eq!((d.n(), d.r()), (5, 3));
        assert_eq!(d.basis_masks().len(), 8);
        // contracting an edge gives a triangle with two doubled edges
        let c = m.contract(set(&[1])).unwrap();
        assert_eq!((c.n(), c.r()), (5, 2));
        assert_eq!(c.basis_masks().len(), 8);
        assert!(m.delete(m.ground()).is_err());
        assert!(m.contract(m.ground()).is_err());
        assert!(m.delete(1 << 10).is_err());
    }

    #[test]
    fn contraction_is_independent_of_chosen_basis() {
        let p = parallel_pair();
        let c = set(&[4, 5, 6]);
        let rc = p.rank_of(c);
        let results: Vec<Matroid> = subsets_of(c, rc)
            .filter(|&i| p.is_independent(i))
            .map(|i| p.contract_with(c, i).unwrap())
            .collect();
        assert!(results.len() > 1);
        assert!(results.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn partition_examples() {
        let m = mk4();
        let j = m.johnson();
        let part = m.nonbasis_partition();
        assert_eq!(part.w, j.set_from_masks(k4_triangles()).unwrap());
        assert!(part.u.is_empty());

        let p = parallel_pair();
        let part = p.nonbasis_partition();
        assert!(part.w.is_empty());
        let want = j
            .set_from_elements(&[&[4, 5, 6], &[1, 5, 6], &[2, 5, 6], &[3, 5, 6]])
            .unwrap();
        assert_eq!(part.u, want);

        let u = Matroid::uniform(3, 6).unwrap().nonbasis_partition();
        assert!(u.w.is_empty() && u.u.is_empty());
    }

    #[test]
    fn relax_examples() {
        let j = Johnson::new(4, 2).unwrap();
        let mut b = j.full_set();
        b.remove(0);
        let m = Matroid::from_bases(4, 2, b).unwrap();
        assert_eq!(m.relax(VertexId(0)).unwrap(), Matroid::uniform(2, 4).unwrap());

        let k4 = mk4();
        let tri = k4.johnson().rank(RSet(k4_triangles()[0])).unwrap();
        let relaxed = k4.relax(tri).unwrap();
        assert_eq!(relaxed.basis_masks().len(), 17);
        assert!(validate_bases(6, 3, relaxed.bases()).is_ok());

        let p = parallel_pair();
        let inside_u = p.nonbasis_partition().u.first().unwrap();
        assert!(p.relax(VertexId(inside_u)).is_err());
    }

    #[test]
    fn uniform_minor_examples() {
        assert!(!mk4().has_uniform_minor(2, 4));
        assert!(Matroid::uniform(3, 6).unwrap().has_uniform_minor(2, 4));
        assert!(mk4().has_uniform_minor(0, 0));
        assert!(parallel_pair().has_uniform_minor(0, 0));
        assert!(!Matroid::uniform(1, 3).unwrap().has_uniform_minor(2, 4));
    }

    #[test]
    fn connectivity_examples() {
        assert_eq!(two_parallel_pairs().connectivity(), ExtNat::Finite(1));
        assert_eq!(Matroid::uniform(2, 4).unwrap().connectivity(), ExtNat::Infinite);
        assert_eq!(mk4().connectivity(), ExtNat::Finite(3));
    }

    #[test]
    fn separation_tail_examples() {
        let m = two_parallel_pairs();
        let t = m.separation_tail_count(set(&[1, 2])).unwrap();
        assert_eq!(t.q, BigUint::from(4u32));

        let u = Matroid::uniform(2, 4).unwrap();
        let t = u.separation_tail_count(set(&[1, 2])).unwrap();
        assert_eq!(t.q, BigUint::from(6u32));
        assert!(t.ua.is_empty() && t.ub.is_empty());

        let p = parallel_pair();
        let t = p.separation_tail_count(set(&[5, 6])).unwrap();
        assert_eq!(t.ua, p.nonbasis_partition().u);
        assert_eq!(t.ua.count(), 4);

        assert!(p.separation_tail_count(0).is_err());
        assert!(p.separation_tail_count(p.ground()).is_err());
    }

    #[test]
    fn fraction_examples() {
        let f = mk4().fractions();
        assert_eq!(
            (f.u, f.w, f.d),
            (Ratio::new(0, 1), Ratio::new(4, 20), Ratio::new(4, 20))
        );
        let f = parallel_pair().fractions();
        assert_eq!(
            (f.u, f.w, f.d),
            (Ratio::new(4, 20), Ratio::new(0, 1), Ratio::new(4, 20))
        );
        let f = Matroid::uniform(3, 7).unwrap().fractions();
        assert_eq!(f.d, Ratio::new(0, 1));
    }

    #[test]
    fn loop_examples() {
        let u = Matroid::uniform(2, 4).unwrap();
        assert_eq!((u.has_loops(), u.has_coloops()), (false, false));
        let m = Matroid::from_basis_masks(4, 2, ksubsets(3, 2)).unwrap();
        assert_eq!((m.has_loops(), m.has_coloops()), (true, false));
        assert_eq!(m.loops(), set(&[4]));
        let f = Matroid::uniform(3, 3).unwrap();
        assert_eq!((f.has_loops(), f.has_coloops()), (false, true));
    }

    #[test]
    fn permute_relabels() {
        let p = parallel_pair();
        let q = p.permute(&[6, 5, 4, 3, 2, 1]).unwrap();
        assert_eq!(q.closure_of(set(&[1])), set(&[1, 2]));
        assert!(p.permute(&[1, 1, 2, 3, 4, 5]).is_err());
    }
}
