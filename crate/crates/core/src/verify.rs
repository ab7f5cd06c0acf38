//! Verification suites over the exhaustive census.
//!
//! Each suite returns a [`SuiteResult`] listing how many objects it looked at
//! and every violated invariant by name. Reports contain no timings, so two
//! runs with different worker counts render byte-identical text.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::binom::choose;
use crate::bounds;
use crate::census;
use crate::encoder::{self, decode_k_minus_a, DecodeContext};
use crate::error::{Error, Result};
use crate::johnson::{bits, RSet, VertexId, VertexSet};
use crate::kw;
use crate::matroid::{Matroid, RankOracle};
use crate::stable::{self, SmallGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Roundtrip,
    Lemmas,
    Entropy,
    Grouping,
    Bounds,
    Stable,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Roundtrip,
        Suite::Lemmas,
        Suite::Entropy,
        Suite::Grouping,
        Suite::Bounds,
        Suite::Stable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Roundtrip => "roundtrip",
            Suite::Lemmas => "lemmas",
            Suite::Entropy => "entropy",
            Suite::Grouping => "grouping",
            Suite::Bounds => "bounds",
            Suite::Stable => "stable",
        }
    }

    pub fn parse(s: &str) -> Option<Vec<Suite>> {
        if s == "all" {
            return Some(Suite::ALL.to_vec());
        }
        Suite::ALL.iter().copied().find(|x| x.name() == s).map(|x| vec![x])
    }
}

/// Knobs shared by the suites.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub max_n: u32,
    pub jobs: usize,
    pub seed: u64,
    /// Sparse paving samples at `(10, 5)` for the round-trip suite.
    pub samples: u64,
    /// Random sets per graph for the entropy suite.
    pub entropy_trials: u64,
    /// Largest `n` for the `σ`/`α` inequality sweep.
    pub sigma_n_max: u32,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_n: 6,
            jobs: 1,
            seed: 0,
            samples: 1000,
            entropy_trials: 100,
            sigma_n_max: 1000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub invariant: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub suite: Suite,
    pub checked: u64,
    pub summary: String,
    /// Facts reported but not asserted.
    pub notes: Vec<String>,
    pub failures: Vec<Failure>,
}

impl SuiteResult {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub max_n: u32,
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.suites.iter().all(SuiteResult::ok)
    }

    pub fn failure_count(&self) -> usize {
        self.suites.iter().map(|s| s.failures.len()).sum()
    }

    pub fn render(&self) -> String {
        let mut out = format!("# verify max_n={} seed={}\n", self.max_n, self.seed);
        for s in &self.suites {
            out.push_str(&s.summary);
            out.push('\n');
            for n in &s.notes {
                out.push_str(&format!("  note: {n}\n"));
            }
            for f in &s.failures {
                out.push_str(&format!("  FAIL {} {}: {}\n", s.suite.name(), f.invariant, f.detail));
            }
        }
        out.push_str(&format!("total: {} failures\n", self.failure_count()));
        out
    }
}

pub fn run(suites: &[Suite], cfg: &VerifyConfig) -> Result<Report> {
    let mut out = Vec::new();
    for &s in suites {
        out.push(match s {
            Suite::Roundtrip => roundtrip(cfg)?,
            Suite::Lemmas => lemmas(cfg)?,
            Suite::Entropy => entropy(cfg)?,
            Suite::Grouping => grouping(cfg)?,
            Suite::Bounds => bounds_suite(cfg)?,
            Suite::Stable => stable_suite(cfg)?,
        });
    }
    Ok(Report {
        max_n: cfg.max_n,
        seed: cfg.seed,
        suites: out,
    })
}

fn fail(invariant: &str, m: &Matroid, detail: impl std::fmt::Display) -> Failure {
    Failure {
        invariant: invariant.into(),
        detail: format!("{} {detail}", crate::format::format_matroid(m)),
    }
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))
}

/// Runs `f` on every item in parallel and concatenates the outputs in input
/// order.
fn par_flat<T: Sync, U: Send>(jobs: usize, items: &[T], f: impl Fn(&T) -> Vec<U> + Sync) -> Result<Vec<U>> {
    Ok(pool(jobs)?.install(|| items.par_iter().map(&f).flatten().collect()))
}

/// Encode, decode and every contract the encoder promises, for one matroid.
pub fn check_encoding(m: &Matroid) -> Vec<Failure> {
    let mut out = Vec::new();
    let (e, trace) = match encoder::encode_with_trace(m) {
        Ok(x) => x,
        Err(err) => return vec![fail("encode", m, err)],
    };
    match e.decode() {
        Ok(back) if back == *m => {}
        Ok(back) => out.push(fail(
            "decode-matroid",
            m,
            format!("decoded {}", crate::format::format_matroid(&back)),
        )),
        Err(err) => out.push(fail("decode-matroid", m, err)),
    }
    let part = m.nonbasis_partition();
    match e.decode_u() {
        Ok(u) if u == part.u => {}
        Ok(_) => out.push(fail("decode-u", m, "differs from U(M)")),
        Err(err) => out.push(fail("decode-u", m, err)),
    }
    let Some(trace) = trace else {
        return out;
    };
    let (n, r) = (m.n(), m.r());
    let j = m.johnson();
    let k = m.non_bases();
    let lambda = r.min(n - r) as usize;
    match bounds::ceil_sigma_n(n, r) {
        Ok(cap) if BigUint::from(e.s.count()) <= cap => {}
        Ok(cap) => out.push(fail("s-size", m, format!("|S| = {} > {cap}", e.s.count()))),
        Err(err) => out.push(fail("s-size", m, err)),
    }
    if e.z.len() > 2 * e.s.count() {
        out.push(fail("z-size", m, format!("|Z| = {} > 2|S|", e.z.len())));
    }
    if j.max_degree_in(&trace.a) >= lambda {
        out.push(fail("region-degree", m, "max degree of G[A] is at least lambda"));
    }
    match kw::retrace(&j, &e.s) {
        Ok(a) if a == trace.a => {}
        _ => out.push(fail("retrace", m, "retrace(S) differs from A")),
    }
    if !e.w.is_subset(&part.w) {
        out.push(fail("w-sound", m, "W is not inside W(M)"));
    }
    if !j.is_stable(&e.w.union(&e.t)) {
        out.push(fail("tw-stable", m, "T ∪ W is not stable"));
    }
    let transversals = e.transversal_count();
    if transversals < BigUint::from(1u32) << e.t_count() {
        out.push(fail("transversal-count", m, "Π comp_sizes < 2^t"));
    }
    if m.is_sparse_paving() && e.t_count() != 0 {
        out.push(fail("sparse-paving-t", m, format!("t = {}", e.t_count())));
    }
    if !trace.p.is_subset(&k) {
        out.push(fail("p-sound", m, "P is not inside K"));
    }
    if decode_k_minus_a(&j, &e.s, &e.z, &trace.a) != k.difference(&trace.a) {
        out.push(fail("k-minus-a", m, "decoded K \\ A differs"));
    }
    // components are recovered by Q from any member, with nonempty certificates
    let mut ctx = match DecodeContext::new(n, r, e.s.clone(), e.z.clone()) {
        Ok(c) => c,
        Err(err) => {
            out.push(fail("context", m, err));
            return out;
        }
    };
    for comp in j.components(&k.intersection(&trace.a_prime)) {
        for x in comp.iter() {
            match ctx.certificates(x) {
                Ok(c) if c.c != 0 && c.d != 0 => {}
                Ok(_) => out.push(fail("certificates-nonempty", m, format!("vertex {x}"))),
                Err(err) => out.push(fail("certificates-nonempty", m, err)),
            }
            match ctx.q_closure(VertexId(x)) {
                Ok(q) if q == comp => {}
                _ => out.push(fail("q-component", m, format!("Q({x}) is not its component"))),
            }
        }
    }
    // any transversal decodes to the same matroid
    if !trace.big_components.is_empty() {
        let alt = VertexSet::from_ids(
            j.order(),
            trace.big_components.iter().map(|c| c.iter().last().expect("nonempty")),
        );
        match encoder::decode_matroid(n, r, &e.s, &e.z, &e.w.union(&alt)) {
            Ok(back) if back == *m => {}
            _ => out.push(fail(
                "transversal-freedom",
                m,
                "another transversal decodes differently",
            )),
        }
    }
    out
}

fn roundtrip(cfg: &VerifyConfig) -> Result<SuiteResult> {
    let mut matroids = Vec::new();
    for n in 0..=cfg.max_n {
        for m in census::full_census(n, cfg.jobs)? {
            if !m.has_loops() && !m.has_coloops() {
                matroids.push(m);
            }
        }
    }
    let mut failures = par_flat(cfg.jobs, &matroids, check_encoding)?;
    let seeds: Vec<u64> = (0..cfg.samples).map(|i| cfg.seed.wrapping_add(i)).collect();
    let sampled = par_flat(cfg.jobs, &seeds, |&s| match census::sample_sparse_paving(10, 5, s) {
        Ok(m) => check_encoding(&m),
        Err(err) => vec![Failure {
            invariant: "sample".into(),
            detail: format!("seed {s}: {err}"),
        }],
    })?;
    failures.extend(sampled);
    let count = matroids.len() as u64 + cfg.samples;
    Ok(SuiteResult {
        suite: Suite::Roundtrip,
        checked: count,
        summary: format!("roundtrip: {count} matroids, {} failures", failures.len()),
        notes: vec![format!(
            "{} census matroids with n <= {}, {} sparse paving samples at (10,5)",
            matroids.len(),
            cfg.max_n,
            cfg.samples
        )],
        failures,
    })
}

fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// The finite matroid lemmas for one matroid.
pub fn check_lemmas(m: &Matroid) -> Vec<Failure> {
    let mut out = Vec::new();
    let (n, r) = (m.n(), m.r());
    let j = m.johnson();
    let total = j.order() as u64;
    let part = m.nonbasis_partition();
    let k = m.non_bases();
    let u = ratio(part.u.count() as u64, total);
    let d = ratio(k.count() as u64, total);

    // a circuit of size k < r forces u(M) ≥ ((r - k)/n)^k
    let mut sizes: Vec<u32> = m.circuits().iter().map(|c| c.count_ones()).collect();
    sizes.dedup();
    for &c in sizes.iter().filter(|&&c| c < r) {
        let bound = num_traits::pow(ratio((r - c) as u64, n as u64), c as usize);
        if u < bound {
            out.push(fail("girth", m, format!("circuit size {c}")));
        }
    }

    // no U_{a,b} minor forces d(M) ≥ 1/C(b,a)
    for (a, b) in [(1u32, 2u32), (2, 4)] {
        if a <= r && b - a <= n - r && !m.has_uniform_minor(a, b) && d < ratio(1, choose(b, a)) {
            out.push(fail("uniform-minor", m, format!("U_{{{a},{b}}}")));
        }
    }

    // isolated vertices of G[K] are exactly the circuit-hyperplanes
    if r >= 1 {
        let mut oracle = RankOracle::new(m);
        for x in k.iter() {
            let xm = j.unrank_mask(x);
            let circuit = bits(xm).all(|e| oracle.rank(xm & !(1u64 << e)) == r - 1);
            let hyperplane = oracle.rank(xm) == r - 1 && oracle.closure(xm) == xm;
            if part.w.contains(x) != (circuit && hyperplane) {
                out.push(fail("circuit-hyperplane", m, RSet(xm)));
            }
        }
    }

    // relaxing a circuit-hyperplane does not change the truncation
    if r >= 1 {
        let t = m.truncate();
        for x in part.w.iter() {
            let same = m
                .relax(VertexId(x))
                .and_then(|m2| m2.truncate())
                .ok()
                .zip(t.as_ref().ok())
                .is_some_and(|(a, b)| &a == b);
            if !same {
                out.push(fail("truncation", m, format!("relaxing vertex {x}")));
            }
        }
    }

    // q + |Ũ_A ∪ Ũ_B| = C(n,r) for every bipartition, with Ũ_A ∪ Ũ_B ⊆ K
    if n >= 2 {
        let ground = m.ground();
        for half in 0..1u64 << (n - 1) {
            let a = half << 1 | 1;
            if a == ground {
                continue;
            }
            match m.separation_tail_count(a) {
                Ok(tail) => {
                    let union = tail.ua.union(&tail.ub);
                    if tail.q.clone() + BigUint::from(union.count()) != BigUint::from(total) {
                        out.push(fail("separation-q", m, format!("A = {}", RSet(a))));
                    }
                    if !union.is_subset(&k) {
                        out.push(fail("separation-dependent", m, format!("A = {}", RSet(a))));
                    }
                }
                Err(err) => out.push(fail("separation-q", m, err)),
            }
        }
    }

    if part.u.is_empty() && !m.is_sparse_paving() {
        out.push(fail("u-zero-sparse-paving", m, "u(M) = 0 but not sparse paving"));
    }
    if m.dual().dual() != *m {
        out.push(fail("dual-involution", m, ""));
    }
    out
}

fn lemmas(cfg: &VerifyConfig) -> Result<SuiteResult> {
    let mut matroids = Vec::new();
    for n in 0..=cfg.max_n {
        matroids.extend(census::full_census(n, cfg.jobs)?);
    }
    let failures = par_flat(cfg.jobs, &matroids, check_lemmas)?;
    Ok(SuiteResult {
        suite: Suite::Lemmas,
        checked: matroids.len() as u64,
        summary: format!("lemmas: {} matroids, {} failures", matroids.len(), failures.len()),
        notes: Vec::new(),
        failures,
    })
}

/// The graphs used by the entropy and grouping suites.
pub const ENTROPY_GRAPHS: [(u32, u32); 3] = [(4, 2), (5, 2), (6, 3)];

fn entropy(cfg: &VerifyConfig) -> Result<SuiteResult> {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (gi, &(n, r)) in ENTROPY_GRAPHS.iter().enumerate() {
        if n > cfg.max_n {
            continue;
        }
        let j = crate::johnson::Johnson::new(n, r)?;
        let mut rng = census::rng(cfg.seed, 2 * gi as u64);
        for trial in 0..cfg.entropy_trials {
            let u = census::random_subset(&j, &mut rng);
            let c = census::verify_shearer(n, r, &u)?;
            checked += 1;
            if !c.ok {
                failures.push(Failure {
                    invariant: "shearer".into(),
                    detail: format!("J({n},{r}) trial {trial}: {:.6} > {:.6}", c.lhs, c.rhs),
                });
            }
        }
        let mut rng = census::rng(cfg.seed, 2 * gi as u64 + 1);
        for trial in 0..cfg.entropy_trials {
            let (u, u2) = census::random_separated_pair(&j, &mut rng);
            checked += 1;
            if !census::verify_disjoint_additivity(n, r, &u, &u2)? {
                failures.push(Failure {
                    invariant: "disjoint-additivity".into(),
                    detail: format!("J({n},{r}) trial {trial}"),
                });
            }
        }
    }
    Ok(SuiteResult {
        suite: Suite::Entropy,
        checked,
        summary: format!("entropy: {checked} checks, {} failures", failures.len()),
        notes: Vec::new(),
        failures,
    })
}

fn grouping(cfg: &VerifyConfig) -> Result<SuiteResult> {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let mut checked = 0;
    for &(n, r) in ENTROPY_GRAPHS.iter().filter(|p| p.0 <= cfg.max_n) {
        let rep = census::group_by_u_check(n, r, cfg.jobs)?;
        checked += rep.groups.len() as u64;
        notes.push(format!(
            "({n},{r}): {} matroids in {} groups, s = {}",
            rep.matroids,
            rep.groups.len(),
            rep.s_nr
        ));
        for g in rep.groups.iter().filter(|g| g.bound_ok == Some(false)) {
            failures.push(Failure {
                invariant: "grouping".into(),
                detail: format!("({n},{r}) U = {:?}, size {}", g.u, g.size),
            });
        }
    }
    Ok(SuiteResult {
        suite: Suite::Grouping,
        checked,
        summary: format!("grouping: {checked} groups, {} failures", failures.len()),
        notes,
        failures,
    })
}

fn bounds_suite(cfg: &VerifyConfig) -> Result<SuiteResult> {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let mut checked = 0;
    let ns: Vec<u32> = (2..=cfg.sigma_n_max).collect();
    let sigma = par_flat(cfg.jobs, &ns, |&n| match bounds::lemma_sigma_report(n) {
        Ok(rep) if rep.ok() => Vec::new(),
        Ok(rep) => vec![Failure {
            invariant: "sigma-alpha".into(),
            detail: format!(
                "n = {n}: sigma ranks {:?}, alpha ranks {:?}",
                rep.sigma_failures, rep.alpha_failures
            ),
        }],
        Err(err) => vec![Failure {
            invariant: "sigma-alpha".into(),
            detail: err.to_string(),
        }],
    })?;
    checked += ns.len() as u64;
    failures.extend(sigma);

    for (n, r) in census::feasible_pairs(census::STABLE_LIMIT) {
        let s = census::count_stable_sets(n, r, None)?;
        checked += 1;
        if !bounds::knuth_holds(n, r, &s)? {
            failures.push(Failure {
                invariant: "knuth".into(),
                detail: format!("({n},{r}): s = {s}"),
            });
        }
    }
    for (n, r) in census::feasible_pairs(stable::SCAN_LIMIT as u64) {
        let j = crate::johnson::Johnson::new(n, r)?;
        let prof = stable::size_profile(&SmallGraph::johnson(&j)?, None)?;
        let total: BigUint = prof.iter().sum();
        checked += 1;
        if bounds::container_upper_exact(n, r)? < total {
            failures.push(Failure {
                invariant: "container".into(),
                detail: format!("({n},{r})"),
            });
        }
        let mut acc = BigUint::from(0u32);
        for m in 0..=j.order() {
            if let Some(c) = prof.get(m) {
                acc += c;
            }
            checked += 1;
            if bounds::container_upper_m_exact(n, r, m as u64)? < acc {
                failures.push(Failure {
                    invariant: "container-m".into(),
                    detail: format!("({n},{r}) m = {m}"),
                });
            }
        }
    }
    let binom = bounds::binom_inequality_checks(64)?;
    checked += 1;
    if !binom.sound_parts_hold() {
        failures.push(Failure {
            invariant: "binomial".into(),
            detail: format!("{binom:?}"),
        });
    }
    if !binom.central_lower_printed {
        notes.push(format!(
            "central binomial lower bound with 1 - 1/(8n) is false for n in {:?} up to 64",
            binom.central_lower_printed_failures
        ));
    }
    match bounds::z_threshold(cfg.sigma_n_max.min(400)) {
        Some(t) => notes.push(format!(
            "z upper bound <= zeta(n) for all {t} <= n <= {}",
            cfg.sigma_n_max.min(400)
        )),
        None => notes.push("z upper bound exceeds zeta(n) at the top of the range".into()),
    }
    Ok(SuiteResult {
        suite: Suite::Bounds,
        checked,
        summary: format!("bounds: {checked} checks, {} failures", failures.len()),
        notes,
        failures,
    })
}

fn stable_suite(cfg: &VerifyConfig) -> Result<SuiteResult> {
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut notes = Vec::new();
    for (n, r) in census::feasible_pairs(stable::SCAN_LIMIT as u64) {
        if n > cfg.max_n.max(7) {
            continue;
        }
        let j = crate::johnson::Johnson::new(n, r)?;
        let g = SmallGraph::johnson(&j)?;
        checked += 1;
        if stable::count_scan(&g, None)? != stable::count_bnb(&g, None)? {
            failures.push(Failure {
                invariant: "scan-vs-bnb".into(),
                detail: format!("({n},{r})"),
            });
        }
        let sp = census::enumerate_sparse_paving(n, r)?;
        if BigUint::from(sp.len()) != stable::count_bnb(&g, None)? {
            failures.push(Failure {
                invariant: "sparse-paving-count".into(),
                detail: format!("({n},{r})"),
            });
        }
        let mut best = 0;
        for c in 0..n {
            let cls = census::gs_class(n, r, c)?;
            if !j.is_stable(&cls) {
                failures.push(Failure {
                    invariant: "gs-stable".into(),
                    detail: format!("({n},{r}) class {c}"),
                });
            }
            best = best.max(cls.count() as u64);
        }
        if best * (n as u64) < choose(n, r) {
            failures.push(Failure {
                invariant: "gs-size".into(),
                detail: format!("({n},{r})"),
            });
        }
    }
    for (n, r, want) in [(4, 2, 10u32), (5, 2, 26)] {
        let s = census::count_stable_sets(n, r, None)?;
        checked += 1;
        notes.push(format!("s({n},{r}) = {s}"));
        if s != BigUint::from(want) {
            failures.push(Failure {
                invariant: "known-count".into(),
                detail: format!("s({n},{r}) = {s}, expected {want}"),
            });
        }
    }
    Ok(SuiteResult {
        suite: Suite::Stable,
        checked,
        summary: format!("stable: {checked} checks, {} failures", failures.len()),
        notes,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::named::*;

    #[test]
    fn named_matroids_pass() {
        for m in [mk4(), parallel_pair(), two_parallel_pairs()] {
            assert!(check_encoding(&m).is_empty());
            assert!(check_lemmas(&m).is_empty());
        }
    }

    #[test]
    fn small_report_is_stable_across_jobs() {
        let mut cfg = VerifyConfig {
            max_n: 4,
            samples: 5,
            entropy_trials: 3,
            sigma_n_max: 20,
            ..VerifyConfig::default()
        };
        let a = run(&Suite::ALL, &cfg).unwrap();
        cfg.jobs = 3;
        let b = run(&Suite::ALL, &cfg).unwrap();
        assert!(a.ok(), "{}", a.render());
        assert_eq!(a.render(), b.render());
        assert!(a.render().contains("roundtrip: "));
    }

    #[test]
    fn suite_names() {
        assert_eq!(Suite::parse("all").unwrap().len(), 6);
        assert_eq!(Suite::parse("roundtrip").unwrap(), vec![Suite::Roundtrip]);
        assert!(Suite::parse("nope").is_none());
    }
}
