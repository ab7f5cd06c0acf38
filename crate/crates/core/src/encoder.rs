//! Compressed descriptions of the non-bases of a matroid.
//!
//! A matroid `M` of rank `r` on `[n]` is described by its dependent `r`-sets
//! `K`. The encoder runs the container compression on `K` to get a fingerprint
//! `S` and a region `A`, and records a partial flat cover `Z` that certifies
//! which neighbours of `S` are dependent; together these fix `K \ A`. Inside
//! `A`, dependencies forced by full pencils are propagated to a set `P`, and
//! what remains of `K ∩ A` splits into components of the Johnson graph. Each
//! component is reconstructed from any one of its vertices by the closure
//! `Q`, so the encoding only stores the isolated ones (`W`) and one
//! representative per larger component (`T`).
//!
//! The decoder side ([`DecodeContext`]) uses nothing but `(n, r, S, Z)`, and the
//! encoder itself goes through the same context, so encoder and decoder can
//! never disagree on `A`, `P` or the certificates.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::johnson::{bits, Johnson, RSet, VertexId, VertexSet};
use crate::kw;
use crate::matroid::{Matroid, RankOracle};

/// A flat together with its rank; covers every set meeting it in more than
/// `rank` elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlatEntry {
    pub flat: u64,
    pub rank: u32,
}

impl FlatEntry {
    pub fn covers(&self, y: RSet) -> bool {
        (y.0 & self.flat).count_ones() > self.rank
    }
}

/// The partial flat cover of a dependent `r`-set `X`.
///
/// One entry `(cl X, r X)` when `r(X) < |X| - 1`; otherwise also the entry of
/// the unique circuit of `X`. Coinciding entries are merged.
pub fn flat_cover(oracle: &mut RankOracle<'_>, x: RSet) -> Result<Vec<FlatEntry>> {
    let m = oracle.matroid();
    if x.len() != m.r() || x.0 & !m.ground() != 0 {
        return Err(Error::InvalidArgument(format!("{x} is not an r-set")));
    }
    let rx = oracle.rank(x.0);
    if rx == x.len() {
        return Err(Error::InvalidArgument(format!("{x} is independent")));
    }
    let whole = FlatEntry {
        flat: oracle.closure(x.0),
        rank: rx,
    };
    if rx + 1 < x.len() {
        return Ok(vec![whole]);
    }
    let circuit = bits(x.0)
        .filter(|&e| {
            let rest = x.0 & !(1u64 << e);
            oracle.rank(rest) == rest.count_ones()
        })
        .fold(0u64, |c, e| c | 1u64 << e);
    let part = FlatEntry {
        flat: oracle.closure(circuit),
        rank: oracle.rank(circuit),
    };
    let mut out = vec![part, whole];
    out.sort();
    out.dedup();
    Ok(out)
}

/// `S`, `Z` and `A` from the container compression of the non-bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicEncoding {
    pub s: VertexSet,
    pub z: Vec<FlatEntry>,
    pub a: VertexSet,
}

fn require_proper_rank(j: &Johnson) -> Result<()> {
    if j.r() == 0 || j.r() == j.n() {
        return Err(Error::InvalidArgument(format!(
            "compression needs 0 < r < n, got n = {}, r = {}",
            j.n(),
            j.r()
        )));
    }
    Ok(())
}

/// Compresses the non-bases `K` into `(S, Z)` plus the region `A` fixed by `S`.
pub fn encode_basic(m: &Matroid) -> Result<BasicEncoding> {
    let j = m.johnson();
    require_proper_rank(&j)?;
    let k = m.non_bases();
    let res = kw::compress(&j, &k, false)?;
    let mut oracle = RankOracle::new(m);
    let mut z = BTreeSet::new();
    for v in res.selected.iter() {
        z.extend(flat_cover(&mut oracle, RSet(j.unrank_mask(v)))?);
    }
    Ok(BasicEncoding {
        s: res.selected,
        z: z.into_iter().collect(),
        a: res.remaining,
    })
}

/// `S` together with the covered neighbours of `S` outside `A`.
pub fn decode_k_minus_a(j: &Johnson, s: &VertexSet, z: &[FlatEntry], a: &VertexSet) -> VertexSet {
    let mut out = s.clone();
    for v in s.iter() {
        j.for_each_neighbor(v, |u| {
            if !a.contains(u) && !out.contains(u) {
                let y = RSet(j.unrank_mask(u));
                if z.iter().any(|f| f.covers(y)) {
                    out.insert(u);
                }
            }
        });
    }
    out
}

/// Whether some pencil `X_e = {X - e + y}` or copencil `X^f = {X - x + f}` of
/// `x` lies inside `known`.
fn has_full_pencil(j: &Johnson, x: u64, known: &VertexSet) -> bool {
    let outside = j.ground() & !x;
    let full_row = |e: u32| {
        let base = x & !(1u64 << e);
        bits(outside).all(|y| known.contains(j.rank_mask(base | 1u64 << y)))
    };
    let full_col = |f: u32| {
        let add = x | 1u64 << f;
        bits(x).all(|e| known.contains(j.rank_mask(add & !(1u64 << e))))
    };
    bits(x).any(full_row) || bits(outside).any(full_col)
}

/// Least `P ⊆ A` closed under: a vertex of `A` with a full pencil or copencil
/// inside `P ∪ (K \ A)` joins `P`.
pub fn p_closure(j: &Johnson, a: &VertexSet, k_minus_a: &VertexSet) -> VertexSet {
    p_closure_ordered(j, a, k_minus_a, a.iter())
}

/// [`p_closure`] with a caller-chosen initial worklist order.
pub fn p_closure_ordered(
    j: &Johnson,
    a: &VertexSet,
    k_minus_a: &VertexSet,
    order: impl IntoIterator<Item = usize>,
) -> VertexSet {
    let mut p = j.empty_set();
    let mut known = k_minus_a.clone();
    let mut queue: VecDeque<usize> = order.into_iter().filter(|&v| a.contains(v)).collect();
    let mut queued = VertexSet::from_ids(j.order(), queue.iter().copied());
    while let Some(v) = queue.pop_front() {
        queued.remove(v);
        if p.contains(v) {
            continue;
        }
        if has_full_pencil(j, j.unrank_mask(v), &known) {
            p.insert(v);
            known.insert(v);
            // only vertices of A next to v can gain a full pencil
            j.for_each_neighbor(v, |u| {
                if a.contains(u) && !p.contains(u) && queued.insert(u) {
                    queue.push_back(u);
                }
            });
        }
    }
    p
}

/// The certificates of a vertex `X ∈ A'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Certificates {
    /// Least `e ∈ X` with `X_e ∩ A' = ∅` (0-based element index).
    pub e_star: u32,
    /// Least `f ∉ X` with `X^f ∩ A' = ∅` (0-based element index).
    pub f_star: u32,
    /// `C(X) = {x ∈ X : X - x + f* ∉ K \ A'}`.
    pub c: u64,
    /// `D(X) = {y ∉ X : X - e* + y ∉ K \ A'}`.
    pub d: u64,
}

pub fn cd_certificates(j: &Johnson, x: RSet, a_prime: &VertexSet, k_minus_a_prime: &VertexSet) -> Result<Certificates> {
    let xm = x.0;
    let outside = j.ground() & !xm;
    let e_star = bits(xm).find(|&e| {
        let base = xm & !(1u64 << e);
        bits(outside).all(|y| !a_prime.contains(j.rank_mask(base | 1u64 << y)))
    });
    let f_star = bits(outside).find(|&f| {
        let add = xm | 1u64 << f;
        bits(xm).all(|e| !a_prime.contains(j.rank_mask(add & !(1u64 << e))))
    });
    let (Some(e_star), Some(f_star)) = (e_star, f_star) else {
        return Err(Error::Invariant(format!(
            "{x} has no pencil avoiding A'; max degree of G[A'] is too large"
        )));
    };
    let add = xm | 1u64 << f_star;
    let c = bits(xm)
        .filter(|&e| !k_minus_a_prime.contains(j.rank_mask(add & !(1u64 << e))))
        .fold(0u64, |m, e| m | 1u64 << e);
    let base = xm & !(1u64 << e_star);
    let d = bits(outside)
        .filter(|&y| !k_minus_a_prime.contains(j.rank_mask(base | 1u64 << y)))
        .fold(0u64, |m, y| m | 1u64 << y);
    Ok(Certificates { e_star, f_star, c, d })
}

/// Everything determined by `(n, r, S, Z)`.
pub struct DecodeContext {
    pub johnson: Johnson,
    pub s: VertexSet,
    pub z: Vec<FlatEntry>,
    pub a: VertexSet,
    pub k_minus_a: VertexSet,
    pub p: VertexSet,
    pub a_prime: VertexSet,
    /// `(K \ A) ∪ P`, i.e. `K \ A'`.
    pub k_minus_a_prime: VertexSet,
    certs: Vec<Option<Certificates>>,
}

impl DecodeContext {
    pub fn new(n: u32, r: u32, s: VertexSet, z: Vec<FlatEntry>) -> Result<DecodeContext> {
        let j = Johnson::new(n, r)?;
        require_proper_rank(&j)?;
        if s.universe() != j.order() {
            return Err(Error::CorruptEncoding(format!(
                "S has universe {}, expected {}",
                s.universe(),
                j.order()
            )));
        }
        let a = kw::retrace(&j, &s)?;
        let k_minus_a = decode_k_minus_a(&j, &s, &z, &a);
        let p = p_closure(&j, &a, &k_minus_a);
        let a_prime = a.difference(&p);
        let k_minus_a_prime = k_minus_a.union(&p);
        Ok(DecodeContext {
            johnson: j,
            s,
            z,
            a,
            k_minus_a,
            p,
            a_prime,
            k_minus_a_prime,
            certs: vec![None; j.order()],
        })
    }

    pub fn certificates(&mut self, v: usize) -> Result<Certificates> {
        if let Some(c) = self.certs[v] {
            return Ok(c);
        }
        let x = RSet(self.johnson.unrank_mask(v));
        let c = cd_certificates(&self.johnson, x, &self.a_prime, &self.k_minus_a_prime)?;
        self.certs[v] = Some(c);
        Ok(c)
    }

    /// Least `Q ⊆ A'` containing `x` and closed under moving from `X'` to a
    /// neighbour `X' - e + f` in `A'` whenever `e ∉ C(X')` or `f ∉ D(X')`.
    pub fn q_closure(&mut self, x: VertexId) -> Result<VertexSet> {
        let j = self.johnson;
        if !self.a_prime.contains(x.0) {
            return Err(Error::InvalidArgument(format!("vertex {} is not in A'", x.0)));
        }
        let mut q = j.empty_set();
        q.insert(x.0);
        let mut queue = VecDeque::from([x.0]);
        while let Some(v) = queue.pop_front() {
            let cert = self.certificates(v)?;
            let xm = j.unrank_mask(v);
            let outside = j.ground() & !xm;
            for e in bits(xm) {
                for f in bits(outside) {
                    if cert.c >> e & 1 == 1 && cert.d >> f & 1 == 1 {
                        continue;
                    }
                    let u = j.rank_mask(xm & !(1u64 << e) | 1u64 << f);
                    if self.a_prime.contains(u) && q.insert(u) {
                        queue.push_back(u);
                    }
                }
            }
        }
        Ok(q)
    }

    /// `(K \ A) ∪ P ∪ ⋃_{X ∈ seeds} Q(X)`.
    pub fn expand(&mut self, seeds: &VertexSet) -> Result<VertexSet> {
        let mut k = self.k_minus_a_prime.clone();
        for v in seeds.iter() {
            let q = self.q_closure(VertexId(v))?;
            k.union_with(&q);
        }
        Ok(k)
    }
}

/// A full encoding of a matroid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Encoding {
    pub n: u32,
    pub r: u32,
    pub s: VertexSet,
    pub z: Vec<FlatEntry>,
    pub w: VertexSet,
    pub t: VertexSet,
    pub comp_sizes: Vec<usize>,
}

impl Encoding {
    pub fn empty(n: u32, r: u32) -> Result<Encoding> {
        let j = Johnson::new(n, r)?;
        Ok(Encoding {
            n,
            r,
            s: j.empty_set(),
            z: Vec::new(),
            w: j.empty_set(),
            t: j.empty_set(),
            comp_sizes: Vec::new(),
        })
    }

    /// `t`, the number of non-singleton components.
    pub fn t_count(&self) -> usize {
        self.t.count()
    }

    /// `|𝒯| = Π comp_sizes`, the number of valid transversals.
    pub fn transversal_count(&self) -> num_bigint::BigUint {
        self.comp_sizes
            .iter()
            .fold(num_bigint::BigUint::from(1u32), |acc, &s| acc * s)
    }

    fn is_degenerate(&self) -> bool {
        self.r == 0 || self.r == self.n
    }
}

/// Intermediate sets of an encoding run, for contract checks.
#[derive(Clone, Debug)]
pub struct EncodeTrace {
    pub a: VertexSet,
    pub p: VertexSet,
    pub k_minus_a: VertexSet,
    pub a_prime: VertexSet,
    /// Components of `G[K ∩ A']` with more than one vertex.
    pub big_components: Vec<VertexSet>,
}

fn check_hypothesis(m: &Matroid) -> Result<()> {
    if m.has_loops() || m.has_coloops() {
        return Err(Error::UnsupportedMatroid(
            "the encoder requires a matroid without loops or coloops".into(),
        ));
    }
    Ok(())
}

pub fn encode(m: &Matroid) -> Result<Encoding> {
    encode_with_trace(m).map(|(e, _)| e)
}

pub fn encode_with_trace(m: &Matroid) -> Result<(Encoding, Option<EncodeTrace>)> {
    check_hypothesis(m)?;
    let (n, r) = (m.n(), m.r());
    if r == 0 || r == n {
        return Ok((Encoding::empty(n, r)?, None));
    }
    let basic = encode_basic(m)?;
    let mut ctx = DecodeContext::new(n, r, basic.s.clone(), basic.z.clone())?;
    if ctx.a != basic.a {
        return Err(Error::Invariant("retrace(S) differs from the forward region".into()));
    }
    let j = ctx.johnson;
    let k = m.non_bases();
    let k_in_a_prime = k.intersection(&ctx.a_prime);
    let mut w = j.empty_set();
    let mut t = j.empty_set();
    let mut comp_sizes = Vec::new();
    let mut big = Vec::new();
    for comp in j.components(&k_in_a_prime) {
        let size = comp.count();
        let first = comp.first().expect("components are nonempty");
        if size == 1 {
            w.insert(first);
        } else {
            t.insert(first);
            comp_sizes.push(size);
            big.push(comp);
        }
    }
    // the decoder's certificates are computed lazily; touch them now so an
    // invariant violation surfaces at encode time
    for v in k_in_a_prime.iter() {
        ctx.certificates(v)?;
    }
    let trace = EncodeTrace {
        a: ctx.a.clone(),
        p: ctx.p.clone(),
        k_minus_a: ctx.k_minus_a.clone(),
        a_prime: ctx.a_prime.clone(),
        big_components: big,
    };
    Ok((
        Encoding {
            n,
            r,
            s: basic.s,
            z: basic.z,
            w,
            t,
            comp_sizes,
        },
        Some(trace),
    ))
}

/// Rebuilds the matroid from `(S, Z, T ∪ W)`.
pub fn decode_matroid(n: u32, r: u32, s: &VertexSet, z: &[FlatEntry], tw: &VertexSet) -> Result<Matroid> {
    let j = Johnson::new(n, r)?;
    if r == 0 || r == n {
        if !s.is_empty() || !z.is_empty() || !tw.is_empty() {
            return Err(Error::CorruptEncoding("degenerate rank with nonempty encoding".into()));
        }
        return Ok(Matroid::from_bases_unchecked(n, r, j.full_set()));
    }
    let mut ctx = DecodeContext::new(n, r, s.clone(), z.to_vec())?;
    if !tw.is_subset(&ctx.a_prime) {
        return Err(Error::CorruptEncoding("T ∪ W is not inside A'".into()));
    }
    let k = ctx.expand(tw)?;
    Matroid::from_bases(n, r, k.complement()).map_err(|e| Error::CorruptEncoding(e.to_string()))
}

/// Rebuilds `U(M)` from `(S, Z, T)`.
pub fn decode_u(n: u32, r: u32, s: &VertexSet, z: &[FlatEntry], t: &VertexSet) -> Result<VertexSet> {
    let j = Johnson::new(n, r)?;
    if r == 0 || r == n {
        return Ok(j.empty_set());
    }
    let mut ctx = DecodeContext::new(n, r, s.clone(), z.to_vec())?;
    if !t.is_subset(&ctx.a_prime) {
        return Err(Error::CorruptEncoding("T is not inside A'".into()));
    }
    let u_tilde = ctx.expand(t)?;
    let mut u = j.empty_set();
    for comp in j.components(&u_tilde) {
        if comp.count() > 1 {
            u.union_with(&comp);
        }
    }
    Ok(u)
}

impl Encoding {
    pub fn decode(&self) -> Result<Matroid> {
        decode_matroid(self.n, self.r, &self.s, &self.z, &self.w.union(&self.t))
    }

    pub fn decode_u(&self) -> Result<VertexSet> {
        decode_u(self.n, self.r, &self.s, &self.z, &self.t)
    }

    /// Recomputes `comp_sizes` from `(S, Z, T)`; used after parsing, where
    /// the sizes are not stored.
    pub fn recompute_comp_sizes(&mut self) -> Result<()> {
        if self.is_degenerate() {
            self.comp_sizes.clear();
            return Ok(());
        }
        let mut ctx = DecodeContext::new(self.n, self.r, self.s.clone(), self.z.clone())?;
        let mut sizes = Vec::new();
        for v in self.t.iter() {
            sizes.push(ctx.q_closure(VertexId(v))?.count());
        }
        self.comp_sizes = sizes;
        Ok(())
    }
}

/// `t(M)`.
pub fn t_of(m: &Matroid) -> Result<usize> {
    Ok(encode(m)?.t_count())
}

/// Loopless, coloopless and `t(M) <= 2 zeta`.
pub fn in_class_n(m: &Matroid, zeta: f64) -> Result<bool> {
    if m.has_loops() || m.has_coloops() {
        return Ok(false);
    }
    Ok(t_of(m)? as f64 <= 2.0 * zeta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::named::*;

    fn set(e: &[u32]) -> u64 {
        RSet::from_elements(e).0
    }

    #[test]
    fn flat_cover_examples() {
        let p = parallel_pair();
        let mut o = RankOracle::new(&p);
        let z = flat_cover(&mut o, RSet::from_elements(&[4, 5, 6])).unwrap();
        assert_eq!(
            z,
            vec![
                FlatEntry {
                    flat: set(&[5, 6]),
                    rank: 1
                },
                FlatEntry {
                    flat: set(&[4, 5, 6]),
                    rank: 2
                },
            ]
        );
        // rank |X| - 2: a single entry
        let bases = crate::johnson::ksubsets(6, 3).filter(|&x| (x & set(&[4, 5, 6])).count_ones() < 2);
        let m = Matroid::from_basis_masks(6, 3, bases).unwrap();
        let mut o = RankOracle::new(&m);
        let z = flat_cover(&mut o, RSet::from_elements(&[4, 5, 6])).unwrap();
        assert_eq!(
            z,
            vec![FlatEntry {
                flat: set(&[4, 5, 6]),
                rank: 1
            }]
        );

        let k4 = mk4();
        let mut o = RankOracle::new(&k4);
        for t in k4_triangles() {
            assert_eq!(
                flat_cover(&mut o, RSet(t)).unwrap(),
                vec![FlatEntry { flat: t, rank: 2 }]
            );
        }
        let basis = RSet(k4.basis_masks()[0]);
        assert!(flat_cover(&mut o, basis).is_err());
    }

    #[test]
    fn covers_examples() {
        let f = FlatEntry {
            flat: set(&[5, 6]),
            rank: 1,
        };
        assert!(f.covers(RSet::from_elements(&[3, 5, 6])));
        assert!(!f.covers(RSet::from_elements(&[1, 2, 5])));
        let empty = FlatEntry { flat: 0, rank: 0 };
        assert!(!empty.covers(RSet::from_elements(&[1, 2, 3])));
    }

    #[test]
    fn encode_basic_examples() {
        let u = Matroid::uniform(3, 6).unwrap();
        let b = encode_basic(&u).unwrap();
        assert!(b.s.is_empty() && b.z.is_empty());

        let k4 = mk4();
        let b = encode_basic(&k4).unwrap();
        assert!(b.s.is_subset(&k4.non_bases()));
        for f in &b.z {
            assert_eq!(f.rank, 2);
            assert!(k4_triangles().contains(&f.flat));
        }

        let j = Johnson::new(4, 2).unwrap();
        let k = j.set_from_elements(&[&[1, 2], &[3, 4]]).unwrap();
        let m = Matroid::from_bases(4, 2, k.complement()).unwrap();
        let b = encode_basic(&m).unwrap();
        assert_eq!(b.s, j.set_from_elements(&[&[1, 2]]).unwrap());
        assert_eq!(
            b.z,
            vec![FlatEntry {
                flat: set(&[1, 2]),
                rank: 1
            }]
        );

        let kma = decode_k_minus_a(&j, &b.s, &b.z, &b.a);
        assert_eq!(kma, j.set_from_elements(&[&[1, 2]]).unwrap());
        assert!(decode_k_minus_a(&j, &j.empty_set(), &[], &b.a).is_empty());
    }

    #[test]
    fn p_closure_examples() {
        let j = Johnson::new(5, 2).unwrap();
        let a = j.full_set();
        assert!(p_closure(&j, &a, &j.empty_set()).is_empty());
        // all of X_e for X = {1,2}, e = 1 known: {2,3}, {2,4}, {2,5}
        let known = j.set_from_elements(&[&[2, 3], &[2, 4], &[2, 5]]).unwrap();
        let a = j.set_from_elements(&[&[1, 2]]).unwrap();
        assert_eq!(p_closure(&j, &a, &known), a);
    }

    #[test]
    fn singleton_region_certificates() {
        let j = Johnson::new(5, 2).unwrap();
        let x = RSet::from_elements(&[2, 4]);
        let a = j.set_from_masks([x.0]).unwrap();
        let c = cd_certificates(&j, x, &a, &j.empty_set()).unwrap();
        assert_eq!(c.e_star, 1); // element 2
        assert_eq!(c.f_star, 0); // element 1
        assert_eq!(c.c, x.0);
        assert_eq!(c.d, j.ground() & !x.0);
    }

    #[test]
    fn certificates_fail_loudly() {
        let j = Johnson::new(4, 2).unwrap();
        let x = RSet::from_elements(&[1, 2]);
        // A' = V: every pencil meets A'
        assert!(matches!(
            cd_certificates(&j, x, &j.full_set(), &j.empty_set()),
            Err(Error::Invariant(_))
        ));
    }

    #[test]
    fn encode_examples() {
        let u = Matroid::uniform(2, 4).unwrap();
        let e = encode(&u).unwrap();
        assert!(e.s.is_empty() && e.z.is_empty() && e.w.is_empty() && e.t.is_empty());
        assert!(e.comp_sizes.is_empty());
        assert_eq!(e.decode().unwrap(), u);

        let k4 = mk4();
        let e = encode(&k4).unwrap();
        assert_eq!(e.t_count(), 0);
        assert_eq!(e.decode().unwrap(), k4);
        assert!(e.decode_u().unwrap().is_empty());

        let p = parallel_pair();
        let e = encode(&p).unwrap();
        assert_eq!(e.decode().unwrap(), p);
        assert_eq!(e.decode_u().unwrap(), p.nonbasis_partition().u);
        assert_eq!(encode(&p).unwrap(), e);

        let looped = Matroid::from_basis_masks(4, 2, crate::johnson::ksubsets(3, 2)).unwrap();
        assert!(matches!(encode(&looped), Err(Error::UnsupportedMatroid(_))));
        assert!(!in_class_n(&looped, 1e9).unwrap());
        assert!(in_class_n(&k4, 0.0).unwrap());
    }
}
