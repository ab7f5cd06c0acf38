//! Exact stable-set counting on graphs with at most 64 vertices.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::johnson::{bits, Johnson, VertexSet};

/// Largest vertex count for the plain `2^N` scan.
pub const SCAN_LIMIT: usize = 20;
/// Largest vertex count for branch and bound.
pub const BNB_LIMIT: usize = 35;

/// A graph on at most 64 vertices as adjacency masks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallGraph {
    adj: Vec<u64>,
}

impl SmallGraph {
    pub fn new(adj: Vec<u64>) -> Result<SmallGraph> {
        if adj.len() > 64 {
            return Err(Error::Capacity {
                what: "vertices in a small graph",
                needed: adj.len() as u64,
                limit: 64,
            });
        }
        for (v, &a) in adj.iter().enumerate() {
            if a >> v & 1 == 1 || (adj.len() < 64 && a >> adj.len() != 0) {
                return Err(Error::InvalidArgument(format!("bad adjacency at vertex {v}")));
            }
            if bits(a).any(|u| adj[u as usize] >> v & 1 == 0) {
                return Err(Error::InvalidArgument("adjacency is not symmetric".into()));
            }
        }
        Ok(SmallGraph { adj })
    }

    /// `G[set]` for a subset of `J(n, r)`, vertices renumbered in increasing
    /// order of id.
    pub fn induced(j: &Johnson, set: &VertexSet) -> Result<SmallGraph> {
        let ids: Vec<usize> = set.iter().collect();
        if ids.len() > 64 {
            return Err(Error::Capacity {
                what: "vertices in a small graph",
                needed: ids.len() as u64,
                limit: 64,
            });
        }
        let mut pos = HashMap::with_capacity(ids.len());
        for (i, &v) in ids.iter().enumerate() {
            pos.insert(v, i);
        }
        let adj = ids
            .iter()
            .map(|&v| {
                let mut a = 0u64;
                j.for_each_neighbor(v, |u| {
                    if let Some(&i) = pos.get(&u) {
                        a |= 1u64 << i;
                    }
                });
                a
            })
            .collect();
        Ok(SmallGraph { adj })
    }

    pub fn johnson(j: &Johnson) -> Result<SmallGraph> {
        SmallGraph::induced(j, &j.full_set())
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    fn all(&self) -> u64 {
        crate::johnson::low_mask(self.adj.len() as u32)
    }

    pub fn is_stable(&self, mask: u64) -> bool {
        bits(mask).all(|v| self.adj[v as usize] & mask == 0)
    }
}

/// Counts stable sets (of size at most `max_size`) by testing every subset.
pub fn count_scan(g: &SmallGraph, max_size: Option<usize>) -> Result<BigUint> {
    let n = g.order();
    if n > SCAN_LIMIT {
        return Err(Error::Capacity {
            what: "vertices for a full subset scan",
            needed: n as u64,
            limit: SCAN_LIMIT as u64,
        });
    }
    let cap = max_size.unwrap_or(n) as u32;
    let count = (0..1u64 << n)
        .filter(|&m| m.count_ones() <= cap && g.is_stable(m))
        .count();
    Ok(BigUint::from(count))
}

/// Stable-set counts by size, truncated to sizes `0..=cap`.
type Poly = Vec<u128>;

struct Counter<'a> {
    adj: &'a [u64],
    cap: usize,
    memo: HashMap<u64, Poly>,
}

fn mul(a: &[u128], b: &[u128], cap: usize) -> Poly {
    let mut out = vec![0u128; (a.len() + b.len() - 1).min(cap + 1)];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if i + j > cap {
                break;
            }
            out[i + j] += x * y;
        }
    }
    out
}

impl Counter<'_> {
    fn component(&self, mask: u64) -> u64 {
        let mut comp = mask & mask.wrapping_neg();
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0u64;
            for v in bits(frontier) {
                next |= self.adj[v as usize];
            }
            frontier = next & mask & !comp;
            comp |= frontier;
        }
        comp
    }

    fn poly(&mut self, mask: u64) -> Poly {
        if mask == 0 {
            return vec![1];
        }
        if let Some(p) = self.memo.get(&mask) {
            return p.clone();
        }
        let comp = self.component(mask);
        let out = if comp != mask {
            let a = self.poly(comp);
            let b = self.poly(mask & !comp);
            mul(&a, &b, self.cap)
        } else {
            let v = bits(mask)
                .max_by_key(|&v| ((self.adj[v as usize] & mask).count_ones(), std::cmp::Reverse(v)))
                .expect("nonempty");
            let without = self.poly(mask & !(1u64 << v));
            let with = self.poly(mask & !(self.adj[v as usize] | 1u64 << v));
            let mut out = without;
            out.resize((with.len() + 1).max(out.len()).min(self.cap + 1), 0);
            for (i, &c) in with.iter().enumerate() {
                if i < self.cap {
                    out[i + 1] += c;
                }
            }
            out
        };
        self.memo.insert(mask, out.clone());
        out
    }
}

/// Stable-set counts of each size `0..=cap` by branch and bound with
/// component splitting.
pub fn size_profile(g: &SmallGraph, cap: Option<usize>) -> Result<Vec<BigUint>> {
    let n = g.order();
    if n > BNB_LIMIT {
        return Err(Error::Capacity {
            what: "vertices for branch-and-bound counting",
            needed: n as u64,
            limit: BNB_LIMIT as u64,
        });
    }
    let mut c = Counter {
        adj: &g.adj,
        cap: cap.unwrap_or(n).min(n),
        memo: HashMap::new(),
    };
    Ok(c.poly(g.all()).into_iter().map(BigUint::from).collect())
}

/// Counts stable sets (of size at most `max_size`) by branch and bound.
pub fn count_bnb(g: &SmallGraph, max_size: Option<usize>) -> Result<BigUint> {
    Ok(size_profile(g, max_size)?.into_iter().sum())
}

/// Calls `visit` on every stable set, as a vertex mask, in a fixed order.
pub fn for_each_stable_set(g: &SmallGraph, mut visit: impl FnMut(u64)) -> Result<()> {
    if g.order() > BNB_LIMIT {
        return Err(Error::Capacity {
            what: "vertices for stable-set enumeration",
            needed: g.order() as u64,
            limit: BNB_LIMIT as u64,
        });
    }
    fn go(adj: &[u64], cur: u64, allowed: u64, visit: &mut dyn FnMut(u64)) {
        visit(cur);
        let mut rest = allowed;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            go(adj, cur | 1u64 << v, rest & !adj[v as usize], visit);
        }
    }
    go(&g.adj, 0, g.all(), &mut visit);
    Ok(())
}
