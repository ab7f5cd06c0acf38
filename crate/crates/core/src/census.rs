//! Exhaustive labeled census at small `n`, stable-set families of Johnson
//! graphs, and the exact entropy-style checks built on them.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::binom::{choose, log2_big};
use crate::bounds;
use crate::encoder;
use crate::error::{Error, Result};
use crate::johnson::{bits, low_mask, Johnson, VertexSet};
use crate::matroid::Matroid;
use crate::stable::{self, SmallGraph};

/// Largest `C(n, r)` for a full scan of basis families.
pub const CENSUS_LIMIT: u64 = 21;
/// Largest `C(n, r)` for stable-set counting and enumeration.
pub const STABLE_LIMIT: u64 = stable::BNB_LIMIT as u64;

fn census_guard(n: u32, r: u32) -> Result<Johnson> {
    let j = Johnson::new(n, r)?;
    if j.order() as u64 > CENSUS_LIMIT {
        return Err(Error::Capacity {
            what: "r-sets for a full matroid census",
            needed: j.order() as u64,
            limit: CENSUS_LIMIT,
        });
    }
    Ok(j)
}

fn stable_guard(n: u32, r: u32) -> Result<Johnson> {
    let j = Johnson::new(n, r)?;
    if j.order() as u64 > STABLE_LIMIT {
        return Err(Error::Capacity {
            what: "r-sets for stable-set counting",
            needed: j.order() as u64,
            limit: STABLE_LIMIT,
        });
    }
    Ok(j)
}

/// Exchange checker for basis families given as a word over `J(n, r)`.
struct WordChecker {
    masks: Vec<u64>,
    /// `swap[v][x][y]`: id of `X_v - x + y`, or `usize::MAX` when `x ∉ X_v` or `y ∈ X_v`.
    swap: Vec<usize>,
    /// `avoid[m]`: the vertices disjoint from the element mask `m`.
    avoid: Vec<u64>,
    n: usize,
}

impl WordChecker {
    fn new(j: &Johnson) -> WordChecker {
        let n = j.n() as usize;
        let masks: Vec<u64> = j.vertex_masks().collect();
        let mut swap = vec![usize::MAX; masks.len() * n * n];
        for (v, &m) in masks.iter().enumerate() {
            for x in bits(m) {
                for y in bits(j.ground() & !m) {
                    swap[(v * n + x as usize) * n + y as usize] = j.rank_mask(m & !(1u64 << x) | 1u64 << y);
                }
            }
        }
        let avoid = (0..1u64 << n)
            .map(|e| {
                masks
                    .iter()
                    .enumerate()
                    .filter(|(_, &m)| m & e == 0)
                    .fold(0u64, |w, (v, _)| w | 1u64 << v)
            })
            .collect();
        WordChecker { masks, swap, avoid, n }
    }

    fn is_matroid(&self, cand: u64) -> bool {
        if cand == 0 {
            return false;
        }
        let n = self.n;
        for v in bits(cand) {
            let m = self.masks[v as usize];
            for x in bits(m) {
                let mut good = 0u64;
                let row = (v as usize * n + x as usize) * n;
                for y in bits(low_mask(n as u32) & !m) {
                    if cand >> self.swap[row + y as usize] & 1 == 1 {
                        good |= 1u64 << y;
                    }
                }
                // some basis avoiding good ∪ {x} leaves no valid exchange
                if cand & self.avoid[(good | 1u64 << x) as usize] != 0 {
                    return false;
                }
            }
        }
        true
    }
}

/// Every basis family of a matroid of rank `r` on `[n]`, as words over
/// `J(n, r)`, in increasing order. The candidate range is split into `jobs`
/// shards by high-order bits; the result does not depend on `jobs`.
pub fn enumerate_matroid_words(n: u32, r: u32, jobs: usize) -> Result<Vec<u64>> {
    let j = census_guard(n, r)?;
    let checker = WordChecker::new(&j);
    let total = 1u64 << j.order();
    let shards = (jobs.max(1) * 8).next_power_of_two().min(total as usize) as u64;
    let width = total / shards;
    let run = || -> Vec<u64> {
        (0..shards)
            .into_par_iter()
            .map(|s| {
                (s * width..(s + 1) * width)
                    .filter(|&c| checker.is_matroid(c))
                    .collect::<Vec<u64>>()
            })
            .flatten()
            .collect()
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    Ok(pool.install(run))
}

pub fn enumerate_matroids(n: u32, r: u32) -> Result<Vec<Matroid>> {
    enumerate_matroids_jobs(n, r, 1)
}

pub fn enumerate_matroids_jobs(n: u32, r: u32, jobs: usize) -> Result<Vec<Matroid>> {
    let order = Johnson::new(n, r)?.order();
    Ok(enumerate_matroid_words(n, r, jobs)?
        .into_iter()
        .map(|w| Matroid::from_bases_unchecked(n, r, VertexSet::from_word(order, w)))
        .collect())
}

/// All matroids on `[n]` for every rank, rank by rank.
pub fn full_census(n: u32, jobs: usize) -> Result<Vec<Matroid>> {
    let mut out = Vec::new();
    for r in 0..=n {
        out.extend(enumerate_matroids_jobs(n, r, jobs)?);
    }
    Ok(out)
}

/// Sparse paving matroids of rank `r` on `[n]`: complements of stable sets.
pub fn for_each_sparse_paving(n: u32, r: u32, mut visit: impl FnMut(Matroid)) -> Result<()> {
    let j = stable_guard(n, r)?;
    let g = SmallGraph::johnson(&j)?;
    let order = j.order();
    stable::for_each_stable_set(&g, |k| {
        let k = VertexSet::from_word(order, k);
        visit(Matroid::from_bases_unchecked(n, r, k.complement()));
    })
}

pub fn enumerate_sparse_paving(n: u32, r: u32) -> Result<Vec<Matroid>> {
    let mut out = Vec::new();
    for_each_sparse_paving(n, r, |m| out.push(m))?;
    Ok(out)
}

/// `i(J(n, r))`, or `i(J(n, r), m)` with a size cap.
pub fn count_stable_sets(n: u32, r: u32, max_size: Option<usize>) -> Result<BigUint> {
    let j = stable_guard(n, r)?;
    stable::count_bnb(&SmallGraph::johnson(&j)?, max_size)
}

/// The same count by a plain scan; only for `C(n, r) ≤ 20`.
pub fn count_stable_sets_scan(n: u32, r: u32, max_size: Option<usize>) -> Result<BigUint> {
    let j = Johnson::new(n, r)?;
    stable::count_scan(&SmallGraph::johnson(&j)?, max_size)
}

/// `{X : Σ X ≡ c (mod n)}`, elements counted from 1.
pub fn gs_class(n: u32, r: u32, c: u32) -> Result<VertexSet> {
    let j = Johnson::new(n, r)?;
    if c >= n {
        return Err(Error::InvalidArgument(format!("class {c} out of range for n = {n}")));
    }
    let mut out = j.empty_set();
    for (id, x) in j.vertex_masks().enumerate() {
        let s: u32 = bits(x).map(|e| e + 1).sum();
        if s % n == c {
            out.insert(id);
        }
    }
    Ok(out)
}

/// A random sparse paving matroid: each vertex of a seeded shuffle joins the
/// non-bases with probability 7/8 if none of its neighbours has.
pub fn sample_sparse_paving(n: u32, r: u32, seed: u64) -> Result<Matroid> {
    let j = Johnson::new(n, r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..j.order()).collect();
    order.shuffle(&mut rng);
    let mut k = j.empty_set();
    let mut blocked = j.empty_set();
    for v in order {
        if blocked.contains(v) || !rng.random_ratio(7, 8) {
            continue;
        }
        k.insert(v);
        blocked.insert(v);
        j.for_each_neighbor(v, |u| {
            blocked.insert(u);
        });
    }
    Ok(Matroid::from_bases_unchecked(n, r, k.complement()))
}

/// Exact comparison `log i(G)/|V| ≤ log i(G[U])/|U|`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShearerCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

fn count_induced(j: &Johnson, set: &VertexSet) -> Result<BigUint> {
    stable::count_bnb(&SmallGraph::induced(j, set)?, None)
}

pub fn verify_shearer(n: u32, r: u32, u: &VertexSet) -> Result<ShearerCheck> {
    let j = stable_guard(n, r)?;
    if u.is_empty() || u.universe() != j.order() {
        return Err(Error::InvalidArgument("U must be a nonempty subset of V".into()));
    }
    let ig = count_induced(&j, &j.full_set())?;
    let iu = count_induced(&j, u)?;
    let (nv, nu) = (j.order() as u32, u.count() as u32);
    // i(G)^|U| ≤ i(G[U])^|V|
    let ok = ig.pow(nu) <= iu.pow(nv);
    Ok(ShearerCheck {
        lhs: log2_big(&ig) / nv as f64,
        rhs: log2_big(&iu) / nu as f64,
        ok,
    })
}

/// `i(G[U]) · i(G[U2]) ≤ i(G)` for disjoint `U`, `U2` with no edges between.
pub fn verify_disjoint_additivity(n: u32, r: u32, u: &VertexSet, u2: &VertexSet) -> Result<bool> {
    let j = stable_guard(n, r)?;
    if j.crossing_edges(u, u2)? != 0 {
        return Err(Error::InvalidArgument(
            "U and U2 must have no edges between them".into(),
        ));
    }
    let ig = count_induced(&j, &j.full_set())?;
    Ok(count_induced(&j, u)? * count_induced(&j, u2)? <= ig)
}

/// Matroids of `M_{n,r}` sharing one value of `U(M)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UGroup {
    /// Sorted ids of `U`.
    pub u: Vec<usize>,
    pub size: u64,
    /// `log(size) ≤ (1 - u) log s(n, r)`; `None` when `U` is empty.
    pub bound_ok: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupReport {
    pub n: u32,
    pub r: u32,
    pub matroids: u64,
    pub s_nr: String,
    pub groups: Vec<UGroup>,
}

impl GroupReport {
    pub fn violations(&self) -> usize {
        self.groups.iter().filter(|g| g.bound_ok == Some(false)).count()
    }
}

/// Groups `M_{n,r}` by `U(M)` and checks `size^N ≤ s(n,r)^{N - |U|}` for
/// each nonempty `U`.
pub fn group_by_u_check(n: u32, r: u32, jobs: usize) -> Result<GroupReport> {
    let ms = enumerate_matroids_jobs(n, r, jobs)?;
    group_by_u(n, r, &ms)
}

pub fn group_by_u(n: u32, r: u32, matroids: &[Matroid]) -> Result<GroupReport> {
    let j = Johnson::new(n, r)?;
    let s = count_stable_sets(n, r, None)?;
    let nn = j.order() as u32;
    let mut groups: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    for m in matroids {
        let u: Vec<usize> = m.nonbasis_partition().u.iter().collect();
        *groups.entry(u).or_default() += 1;
    }
    let groups = groups
        .into_iter()
        .map(|(u, size)| {
            let bound_ok = (!u.is_empty()).then(|| BigUint::from(size).pow(nn) <= s.pow(nn - u.len() as u32));
            UGroup { u, size, bound_ok }
        })
        .collect();
    Ok(GroupReport {
        n,
        r,
        matroids: matroids.len() as u64,
        s_nr: s.to_string(),
        groups,
    })
}

/// Derived statistics of one matroid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRecord {
    pub n: u32,
    pub r: u32,
    pub bases: String,
    pub u: String,
    pub w: String,
    pub d: String,
    pub girth: String,
    pub cogirth: String,
    pub connectivity: String,
    pub loops: bool,
    pub coloops: bool,
    pub sparse_paving: bool,
    /// `t(M)`, only for loopless and coloopless matroids.
    pub t: Option<usize>,
    pub in_n: bool,
    pub minor_u12: bool,
    pub minor_u24: bool,
    pub minor_u36: bool,
}

fn ratio_str(x: Ratio<u64>) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub const RECORD_CSV_HEADER: &str =
    "n,r,bases,u,w,d,girth,cogirth,connectivity,loops,coloops,sparse_paving,t,in_N,minor_U12,minor_U24,minor_U36";

impl CensusRecord {
    pub fn of(m: &Matroid) -> Result<CensusRecord> {
        let f = m.fractions();
        let (loops, coloops) = (m.has_loops(), m.has_coloops());
        let t = if loops || coloops {
            None
        } else {
            Some(encoder::t_of(m)?)
        };
        let in_n = t.is_some_and(|t| t as f64 <= 2.0 * bounds::zeta(m.n()));
        Ok(CensusRecord {
            n: m.n(),
            r: m.r(),
            bases: crate::format::bases_hex(m),
            u: ratio_str(f.u),
            w: ratio_str(f.w),
            d: ratio_str(f.d),
            girth: m.girth().to_string(),
            cogirth: m.cogirth().to_string(),
            connectivity: m.connectivity().to_string(),
            loops,
            coloops,
            sparse_paving: m.is_sparse_paving(),
            t,
            in_n,
            minor_u12: m.has_uniform_minor(1, 2),
            minor_u24: m.has_uniform_minor(2, 4),
            minor_u36: m.has_uniform_minor(3, 6),
        })
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.r,
            self.bases,
            self.u,
            self.w,
            self.d,
            self.girth,
            self.cogirth,
            self.connectivity,
            self.loops as u8,
            self.coloops as u8,
            self.sparse_paving as u8,
            self.t.map(|t| t.to_string()).unwrap_or_default(),
            self.in_n as u8,
            self.minor_u12 as u8,
            self.minor_u24 as u8,
            self.minor_u36 as u8,
        )
    }
}

/// Aggregates over `M_{n,r}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankStats {
    pub n: u32,
    pub r: u32,
    pub matroids: u64,
    pub sparse_paving: u64,
    /// `s(n, r)` when `0 < r < n`.
    pub s_nr: Option<String>,
    pub loopless_coloopless: u64,
    pub in_n: u64,
    pub with_u12: u64,
    pub with_u24: u64,
    pub with_u36: u64,
    pub girth_histogram: BTreeMap<String, u64>,
    pub connectivity_histogram: BTreeMap<String, u64>,
    /// Fraction with `w(M) ≥ 1/(5n)`.
    pub frac_w_ge_digamma: f64,
    /// Fraction with `d(M) ≤ υ(n) + 2/n` (υ from the exact `s(n)`).
    pub frac_d_le_upsilon: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StatsReport {
    pub n: u32,
    pub matroids: u64,
    /// `log s(n)` with `s(n)` the number of sparse paving matroids on `[n]`.
    pub log2_s_n: f64,
    pub upsilon: f64,
    pub ranks: Vec<RankStats>,
}

/// Census statistics for every rank on `[n]`.
pub fn stats_pipeline(n: u32, jobs: usize) -> Result<(StatsReport, Vec<CensusRecord>)> {
    let mut per_rank = Vec::new();
    let mut s_total = BigUint::zero();
    for r in 0..=n {
        let ms = enumerate_matroids_jobs(n, r, jobs)?;
        let s = if r == 0 || r == n {
            BigUint::from(1u32)
        } else {
            count_stable_sets(n, r, None)?
        };
        s_total += &s;
        let recs = ms.iter().map(CensusRecord::of).collect::<Result<Vec<_>>>()?;
        per_rank.push((r, s, ms, recs));
    }
    let log2_s = log2_big(&s_total);
    let (upsilon, _) = bounds::upsilon_small(n, Some(log2_s));
    let digamma = bounds::digamma_f(n);
    let d_cap = upsilon + 2.0 / n as f64;
    let mut ranks = Vec::new();
    let mut all = Vec::new();
    for (r, s, ms, recs) in per_rank {
        let count = ms.len() as u64;
        let mut st = RankStats {
            n,
            r,
            matroids: count,
            sparse_paving: 0,
            s_nr: (r > 0 && r < n).then(|| s.to_string()),
            loopless_coloopless: 0,
            in_n: 0,
            with_u12: 0,
            with_u24: 0,
            with_u36: 0,
            girth_histogram: BTreeMap::new(),
            connectivity_histogram: BTreeMap::new(),
            frac_w_ge_digamma: 0.0,
            frac_d_le_upsilon: 0.0,
        };
        let (mut w_hits, mut d_hits) = (0u64, 0u64);
        for (m, rec) in ms.iter().zip(&recs) {
            st.sparse_paving += rec.sparse_paving as u64;
            st.loopless_coloopless += rec.t.is_some() as u64;
            st.in_n += rec.in_n as u64;
            st.with_u12 += rec.minor_u12 as u64;
            st.with_u24 += rec.minor_u24 as u64;
            st.with_u36 += rec.minor_u36 as u64;
            *st.girth_histogram.entry(rec.girth.clone()).or_default() += 1;
            *st.connectivity_histogram.entry(rec.connectivity.clone()).or_default() += 1;
            let f = m.fractions();
            if f.w >= digamma {
                w_hits += 1;
            }
            if f.d.to_f64().unwrap_or(f64::INFINITY) <= d_cap {
                d_hits += 1;
            }
        }
        st.frac_w_ge_digamma = w_hits as f64 / count.max(1) as f64;
        st.frac_d_le_upsilon = d_hits as f64 / count.max(1) as f64;
        ranks.push(st);
        all.extend(recs);
    }
    Ok((
        StatsReport {
            n,
            matroids: all.len() as u64,
            log2_s_n: log2_s,
            upsilon,
            ranks,
        },
        all,
    ))
}

/// Counts for a whole family of stable sets of `J(n, r)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StableSetFamilyStats {
    pub n: u32,
    pub r: u32,
    pub exact_count: Option<String>,
    /// `i(J(n,r), m)` for `m = 0..=max`.
    pub bounded_counts: Vec<String>,
    pub construction_class_size: usize,
}

pub fn stable_family_stats(n: u32, r: u32) -> Result<StableSetFamilyStats> {
    let j = stable_guard(n, r)?;
    let prof = stable::size_profile(&SmallGraph::johnson(&j)?, None)?;
    let mut acc = BigUint::zero();
    let bounded: Vec<String> = prof
        .iter()
        .map(|c| {
            acc += c;
            acc.to_string()
        })
        .collect();
    let class = (0..n.max(1))
        .map(|c| gs_class(n, r, c % n.max(1)).map(|s| s.count()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(0);
    Ok(StableSetFamilyStats {
        n,
        r,
        exact_count: Some(acc.to_string()),
        bounded_counts: bounded,
        construction_class_size: class,
    })
}

/// Pairs `(n, r)` with `0 < r < n` and `C(n, r) ≤ limit`.
pub fn feasible_pairs(limit: u64) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for n in 2..=limit as u32 + 1 {
        for r in 1..n {
            if n <= 64 && choose(n, r) <= limit {
                out.push((n, r));
            }
        }
    }
    out
}

/// Random subsets of `V(J(n, r))` for the entropy checks: each vertex joins
/// with probability `1/2`; empty draws are redrawn.
pub fn random_subset(j: &Johnson, rng: &mut ChaCha8Rng) -> VertexSet {
    loop {
        let s = VertexSet::from_ids(j.order(), (0..j.order()).filter(|_| rng.random_bool(0.5)));
        if !s.is_empty() {
            return s;
        }
    }
}

/// A random pair of disjoint vertex sets with no edges between them.
pub fn random_separated_pair(j: &Johnson, rng: &mut ChaCha8Rng) -> (VertexSet, VertexSet) {
    let mut u = j.empty_set();
    let mut u2 = j.empty_set();
    let mut order: Vec<usize> = (0..j.order()).collect();
    order.shuffle(rng);
    for v in order {
        match rng.random_range(0..3) {
            0 => {
                let mut clash = false;
                j.for_each_neighbor(v, |w| clash |= u2.contains(w));
                if !clash {
                    u.insert(v);
                }
            }
            1 => {
                let mut clash = false;
                j.for_each_neighbor(v, |w| clash |= u.contains(w));
                if !clash {
                    u2.insert(v);
                }
            }
            _ => {}
        }
    }
    (u, u2)
}

/// `ChaCha8` seeded from `seed`, on its own stream.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}
