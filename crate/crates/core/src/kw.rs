//! Two-phase container compression for regular graphs.
//!
//! Given a vertex set `K` of a `d`-regular graph with smallest eigenvalue
//! `-lambda`, the compressor builds a fingerprint `S ⊆ K` and a leftover region
//! `A` with `K ⊆ S ∪ N(S) ∪ A`. Phase one shrinks `A` below `alpha |V|`; phase
//! two continues until `G[A]` has maximum degree below `lambda`. Every step
//! looks only at `A` and asks whether the canonical max-degree vertex lies in
//! `K`, so replaying the run with `S` in place of `K` reproduces `A` exactly.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::johnson::{Johnson, VertexId, VertexSet};

/// A regular graph with a fixed vertex order `0..vertex_count()`.
pub trait RegularGraph {
    fn vertex_count(&self) -> usize;
    fn degree(&self) -> usize;
    /// `lambda` where `-lambda` is the smallest adjacency eigenvalue.
    fn lambda(&self) -> usize;
    fn for_each_neighbor(&self, v: usize, visit: &mut dyn FnMut(usize));
}

impl RegularGraph for Johnson {
    fn vertex_count(&self) -> usize {
        self.order()
    }

    fn degree(&self) -> usize {
        self.graph_constants().0
    }

    fn lambda(&self) -> usize {
        self.graph_constants().1
    }

    fn for_each_neighbor(&self, v: usize, visit: &mut dyn FnMut(usize)) {
        Johnson::for_each_neighbor(self, v, visit)
    }
}

fn check_params(d: usize, lambda: usize) -> Result<()> {
    if d == 0 || lambda == 0 {
        return Err(Error::InvalidArgument(format!(
            "container constants need d >= 1 and lambda >= 1 (got d = {d}, lambda = {lambda})"
        )));
    }
    Ok(())
}

/// `ln(d + 1) / (d + lambda)`.
pub fn sigma(d: usize, lambda: usize) -> Result<f64> {
    check_params(d, lambda)?;
    Ok(((d + 1) as f64).ln() / (d + lambda) as f64)
}

/// `(ln(d + 1) + 1) / (d + lambda)`.
pub fn sigma_plus(d: usize, lambda: usize) -> Result<f64> {
    check_params(d, lambda)?;
    Ok((((d + 1) as f64).ln() + 1.0) / (d + lambda) as f64)
}

/// `lambda / (d + lambda)`.
pub fn alpha(d: usize, lambda: usize) -> Result<f64> {
    check_params(d, lambda)?;
    Ok(lambda as f64 / (d + lambda) as f64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Decision {
    Dropped,
    Selected,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    Shrink,
    Sparsify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub phase: Phase,
    pub vertex: VertexId,
    pub decision: Decision,
}

/// Output of a compression run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompressionResult {
    /// The fingerprint `S`.
    pub selected: VertexSet,
    /// The leftover region `A`.
    pub remaining: VertexSet,
    /// Decision log, kept only when requested.
    pub steps: Option<Vec<Step>>,
}

/// Incremental state: membership in `A`, degrees inside `G[A]`, and vertices
/// bucketed by degree so the canonical max-degree vertex is the first member
/// of the highest nonempty bucket.
struct Region<'g, G: RegularGraph + ?Sized> {
    graph: &'g G,
    members: VertexSet,
    size: usize,
    degree: Vec<usize>,
    buckets: Vec<BTreeSet<usize>>,
    top: usize,
}

impl<'g, G: RegularGraph + ?Sized> Region<'g, G> {
    fn new(graph: &'g G, members: VertexSet) -> Self {
        let mut degree = vec![0; graph.vertex_count()];
        let mut buckets = vec![BTreeSet::new(); graph.degree() + 1];
        let mut top = 0;
        let mut size = 0;
        for v in members.iter() {
            let mut deg = 0;
            graph.for_each_neighbor(v, &mut |u| {
                if members.contains(u) {
                    deg += 1;
                }
            });
            degree[v] = deg;
            buckets[deg].insert(v);
            top = top.max(deg);
            size += 1;
        }
        Region {
            graph,
            members,
            size,
            degree,
            buckets,
            top,
        }
    }

    fn max_degree(&mut self) -> Option<usize> {
        while self.top > 0 && self.buckets[self.top].is_empty() {
            self.top -= 1;
        }
        (self.size > 0).then_some(self.top)
    }

    fn canonical(&mut self) -> Option<usize> {
        let top = self.max_degree()?;
        self.buckets[top].first().copied()
    }

    fn remove(&mut self, v: usize) {
        if !self.members.remove(v) {
            return;
        }
        self.size -= 1;
        self.buckets[self.degree[v]].remove(&v);
        let (members, degree, buckets) = (&self.members, &mut self.degree, &mut self.buckets);
        self.graph.for_each_neighbor(v, &mut |u| {
            if members.contains(u) {
                buckets[degree[u]].remove(&u);
                degree[u] -= 1;
                buckets[degree[u]].insert(u);
            }
        });
    }

    fn remove_closed_neighborhood(&mut self, v: usize) {
        self.remove(v);
        let mut nbrs = Vec::with_capacity(self.graph.degree());
        self.graph.for_each_neighbor(v, &mut |u| nbrs.push(u));
        for u in nbrs {
            self.remove(u);
        }
    }
}

struct Run<'g, G: RegularGraph + ?Sized> {
    region: Region<'g, G>,
    selected: VertexSet,
    steps: Option<Vec<Step>>,
}

impl<'g, G: RegularGraph + ?Sized> Run<'g, G> {
    fn step(&mut self, phase: Phase, in_k: &dyn Fn(usize) -> bool) -> bool {
        let Some(v) = self.region.canonical() else {
            return false;
        };
        let decision = if in_k(v) {
            self.selected.insert(v);
            self.region.remove_closed_neighborhood(v);
            Decision::Selected
        } else {
            self.region.remove(v);
            Decision::Dropped
        };
        if let Some(log) = self.steps.as_mut() {
            log.push(Step {
                phase,
                vertex: VertexId(v),
                decision,
            });
        }
        true
    }

    fn shrink(&mut self, in_k: &dyn Fn(usize) -> bool) {
        let g = self.region.graph;
        let (n, d, lambda) = (g.vertex_count(), g.degree(), g.lambda());
        // |A| > alpha |V|  <=>  |A| (d + lambda) > lambda |V|
        while self.region.size * (d + lambda) > lambda * n {
            if !self.step(Phase::Shrink, in_k) {
                break;
            }
        }
    }

    fn sparsify(&mut self, in_k: &dyn Fn(usize) -> bool) {
        let lambda = self.region.graph.lambda();
        while self.region.max_degree().is_some_and(|deg| deg >= lambda) {
            self.step(Phase::Sparsify, in_k);
        }
    }

    fn finish(self) -> CompressionResult {
        CompressionResult {
            selected: self.selected,
            remaining: self.region.members,
            steps: self.steps,
        }
    }
}

fn check_graph<G: RegularGraph + ?Sized>(graph: &G, set: &VertexSet) -> Result<()> {
    if graph.degree() == 0 {
        return Err(Error::UnsupportedGraph(
            "container compression needs a graph of degree at least 1".into(),
        ));
    }
    if set.universe() != graph.vertex_count() {
        return Err(Error::InvalidArgument(format!(
            "vertex set has universe {}, graph has {} vertices",
            set.universe(),
            graph.vertex_count()
        )));
    }
    Ok(())
}

fn start<'g, G: RegularGraph + ?Sized>(graph: &'g G, region: VertexSet, selected: VertexSet, log: bool) -> Run<'g, G> {
    Run {
        region: Region::new(graph, region),
        selected,
        steps: log.then(Vec::new),
    }
}

/// Phase one: shrink `A` from `V` until `|A| <= alpha |V|`.
pub fn compress_phase1<G: RegularGraph + ?Sized>(graph: &G, k: &VertexSet, log: bool) -> Result<CompressionResult> {
    check_graph(graph, k)?;
    let n = graph.vertex_count();
    let mut run = start(graph, VertexSet::full(n), VertexSet::new(n), log);
    run.shrink(&|v| k.contains(v));
    Ok(run.finish())
}

/// Phase two: continue from a phase-one result until `max deg G[A] < lambda`.
pub fn compress_phase2<G: RegularGraph + ?Sized>(
    graph: &G,
    k: &VertexSet,
    phase1: CompressionResult,
) -> Result<CompressionResult> {
    check_graph(graph, k)?;
    let log = phase1.steps.is_some();
    let mut run = start(graph, phase1.remaining, phase1.selected, log);
    run.steps = phase1.steps;
    run.sparsify(&|v| k.contains(v));
    Ok(run.finish())
}

/// Both phases.
pub fn compress<G: RegularGraph + ?Sized>(graph: &G, k: &VertexSet, log: bool) -> Result<CompressionResult> {
    let p1 = compress_phase1(graph, k, log)?;
    compress_phase2(graph, k, p1)
}

/// Recovers `A` from `S` by replaying both phases with `S` standing in for `K`.
pub fn retrace<G: RegularGraph + ?Sized>(graph: &G, selected: &VertexSet) -> Result<VertexSet> {
    Ok(compress(graph, selected, false)?.remaining)
}

/// `ceil(sigma_plus * |V|)` for the graph, the cap on `|S|`.
pub fn selected_cap<G: RegularGraph + ?Sized>(graph: &G) -> Result<usize> {
    let s = sigma_plus(graph.degree(), graph.lambda())?;
    Ok((s * graph.vertex_count() as f64).ceil() as usize)
}

/// Small concrete regular graphs for exercising the compressor outside the
/// Johnson family.
pub mod graphs {
    use super::RegularGraph;

    /// The even cycle `C_n`: degree 2, smallest eigenvalue -2.
    #[derive(Clone, Copy, Debug)]
    pub struct EvenCycle(pub usize);

    impl RegularGraph for EvenCycle {
        fn vertex_count(&self) -> usize {
            self.0
        }
        fn degree(&self) -> usize {
            2
        }
        fn lambda(&self) -> usize {
            2
        }
        fn for_each_neighbor(&self, v: usize, visit: &mut dyn FnMut(usize)) {
            visit((v + 1) % self.0);
            visit((v + self.0 - 1) % self.0);
        }
    }

    /// The hypercube `Q_k`: degree `k`, smallest eigenvalue `-k`.
    #[derive(Clone, Copy, Debug)]
    pub struct Hypercube(pub u32);

    impl RegularGraph for Hypercube {
        fn vertex_count(&self) -> usize {
            1 << self.0
        }
        fn degree(&self) -> usize {
            self.0 as usize
        }
        fn lambda(&self) -> usize {
            self.0 as usize
        }
        fn for_each_neighbor(&self, v: usize, visit: &mut dyn FnMut(usize)) {
            for b in 0..self.0 {
                visit(v ^ (1 << b));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j42() -> Johnson {
        Johnson::new(4, 2).unwrap()
    }

    #[test]
    fn constant_examples() {
        let s = sigma(4, 2).unwrap();
        let sp = sigma_plus(4, 2).unwrap();
        assert!((s - 0.26824).abs() < 1e-5);
        assert!((sp - 0.43491).abs() < 1e-5);
        assert!((alpha(4, 2).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!((alpha(16, 4).unwrap() - 0.2).abs() < 1e-15);
        for d in 1..40 {
            for l in 1..=d {
                let gap = sigma_plus(d, l).unwrap() - sigma(d, l).unwrap();
                assert!((gap - 1.0 / (d + l) as f64).abs() < 1e-12);
            }
        }
        assert!(sigma(0, 1).is_err());
        assert!(alpha(0, 0).is_err());
    }

    #[test]
    fn phase1_examples() {
        let j = j42();
        let res = compress_phase1(&j, &j.empty_set(), false).unwrap();
        assert!(res.selected.is_empty());
        assert!(res.remaining.count() <= 2);

        let res = compress_phase1(&j, &j.full_set(), true).unwrap();
        assert_eq!(res.selected, j.set_from_elements(&[&[1, 2]]).unwrap());
        assert_eq!(res.remaining, j.set_from_elements(&[&[3, 4]]).unwrap());
        assert_eq!(
            res.steps.unwrap(),
            vec![Step {
                phase: Phase::Shrink,
                vertex: VertexId(0),
                decision: Decision::Selected
            }]
        );

        let k = j.set_from_elements(&[&[1, 2], &[3, 4]]).unwrap();
        let res = compress_phase1(&j, &k, false).unwrap();
        assert_eq!(res.selected, j.set_from_elements(&[&[1, 2]]).unwrap());
        assert_eq!(res.remaining, j.set_from_elements(&[&[3, 4]]).unwrap());
        let cover = j.closed_neighborhood(&res.selected).union(&res.remaining);
        assert!(k.is_subset(&cover));
    }

    #[test]
    fn phase2_examples() {
        let j = j42();
        let p1 = compress_phase1(&j, &j.full_set(), true).unwrap();
        let p2 = compress_phase2(&j, &j.full_set(), p1.clone()).unwrap();
        assert_eq!(p2.selected, p1.selected);
        assert_eq!(p2.remaining, p1.remaining);
        assert_eq!(p2.steps.unwrap().len(), 1);

        let p1 = compress_phase1(&j, &j.empty_set(), false).unwrap();
        let p2 = compress_phase2(&j, &j.empty_set(), p1.clone()).unwrap();
        if j.max_degree_in(&p1.remaining) < 2 {
            assert_eq!(p2.remaining, p1.remaining);
        }
        assert!(j.max_degree_in(&p2.remaining) < 2);
    }

    #[test]
    fn retrace_examples() {
        let j = j42();
        let s = j.set_from_elements(&[&[1, 2]]).unwrap();
        assert_eq!(retrace(&j, &s).unwrap(), j.set_from_elements(&[&[3, 4]]).unwrap());
        let empty = compress(&j, &j.empty_set(), false).unwrap();
        assert_eq!(retrace(&j, &j.empty_set()).unwrap(), empty.remaining);
    }

    #[test]
    fn degenerate_graph_rejected() {
        let j = Johnson::new(4, 0).unwrap();
        assert!(matches!(
            compress_phase1(&j, &j.empty_set(), false),
            Err(Error::UnsupportedGraph(_))
        ));
    }
}
