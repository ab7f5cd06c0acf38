//! Library results against brute-force computations that share no code with
//! the library beyond the basis bitset layout.

use matroid_census::binom::choose;
use matroid_census::{census, Johnson, Matroid, RSet, VertexId};
use num_bigint::BigUint;

/// All r-subsets of [n] as masks, sorted numerically.
fn rsets(n: u32, r: u32) -> Vec<u64> {
    (0u64..1 << n).filter(|m| m.count_ones() == r).collect()
}

fn adjacent(a: u64, b: u64, r: u32) -> bool {
    (a & b).count_ones() + 1 == r
}

fn adjacency(n: u32, r: u32) -> Vec<Vec<i128>> {
    let v = rsets(n, r);
    v.iter()
        .map(|&a| v.iter().map(|&b| adjacent(a, b, r) as i128).collect())
        .collect()
}

/// Fraction-free Gaussian elimination; returns the determinant.
fn bareiss(mut m: Vec<Vec<i128>>) -> i128 {
    let k = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for i in 0..k {
        if m[i][i] == 0 {
            match (i + 1..k).find(|&p| m[p][i] != 0) {
                Some(p) => {
                    m.swap(i, p);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for a in i + 1..k {
            for b in i + 1..k {
                m[a][b] = (m[a][b] * m[i][i] - m[a][i] * m[i][b]) / prev;
            }
        }
        prev = m[i][i];
    }
    sign * m[k - 1][k - 1]
}

fn shifted(a: &[Vec<i128>], scale: i128, diag: i128) -> Vec<Vec<i128>> {
    a.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, &x)| scale * x + if i == j { diag } else { 0 })
                .collect()
        })
        .collect()
}

#[test]
fn smallest_eigenvalue_is_minus_lambda() {
    for n in 2..=6 {
        for r in 1..n {
            let j = Johnson::new(n, r).unwrap();
            let (d, lambda) = j.graph_constants();
            let a = adjacency(n, r);
            assert!(a.iter().all(|row| row.iter().sum::<i128>() == d as i128));
            let lam = lambda as i128;
            // -λ is an eigenvalue
            assert_eq!(bareiss(shifted(&a, 1, lam)), 0, "J({n},{r})");
            // and 2A + (2λ+1)I is positive definite, so nothing lies below -λ - 1/2
            let pd = shifted(&a, 2, 2 * lam + 1);
            for k in 1..=pd.len() {
                let minor: Vec<Vec<i128>> = pd[..k].iter().map(|row| row[..k].to_vec()).collect();
                assert!(bareiss(minor) > 0, "J({n},{r}) minor {k}");
            }
        }
    }
}

#[test]
fn colex_rank_is_numeric_order() {
    for n in 1..=9 {
        for r in 0..=n {
            let j = Johnson::new(n, r).unwrap();
            for (i, &m) in rsets(n, r).iter().enumerate() {
                assert_eq!(j.rank(RSet(m)).unwrap(), VertexId(i));
                assert_eq!(j.unrank(VertexId(i)).unwrap(), RSet(m));
            }
        }
    }
}

#[test]
fn neighbours_by_intersection_size() {
    let j = Johnson::new(7, 3).unwrap();
    for &a in &rsets(7, 3) {
        let mut got: Vec<u64> = j.neighbors(RSet(a)).into_iter().map(|x| x.0).collect();
        got.sort();
        let want: Vec<u64> = rsets(7, 3).into_iter().filter(|&b| adjacent(a, b, 3)).collect();
        assert_eq!(got, want);
    }
}

/// Basis families on [n] of rank r, by the exchange axiom on masks.
fn brute_matroids(n: u32, r: u32) -> Vec<Vec<u64>> {
    let v = rsets(n, r);
    let mut out = Vec::new();
    for word in 1u64..1 << v.len() {
        let fam: Vec<u64> = (0..v.len()).filter(|&i| word >> i & 1 == 1).map(|i| v[i]).collect();
        let ok = fam.iter().all(|&b1| {
            fam.iter().all(|&b2| {
                (0..n).filter(|&x| b1 >> x & 1 == 1 && b2 >> x & 1 == 0).all(|x| {
                    (0..n)
                        .filter(|&y| b2 >> y & 1 == 1 && b1 >> y & 1 == 0)
                        .any(|y| fam.contains(&(b1 & !(1 << x) | 1 << y)))
                })
            })
        });
        if ok {
            out.push(fam);
        }
    }
    out
}

#[test]
fn census_matches_exchange_axiom_scan() {
    for n in 0..=5 {
        for r in 0..=n {
            let mut want = brute_matroids(n, r);
            want.sort();
            let mut got: Vec<Vec<u64>> = census::enumerate_matroids(n, r)
                .unwrap()
                .iter()
                .map(|m| m.basis_masks().to_vec())
                .collect();
            got.sort();
            assert_eq!(got, want, "M({n},{r})");
        }
    }
}

fn brute_rank(m: &Matroid, a: u64) -> u32 {
    m.basis_masks().iter().map(|b| (a & b).count_ones()).max().unwrap()
}

#[test]
fn rank_closure_connectivity_by_brute_force() {
    for m in census::full_census(5, 1).unwrap() {
        let n = m.n();
        let full = (1u64 << n) - 1;
        for a in 0..=full {
            let ra = brute_rank(&m, a);
            assert_eq!(m.rank_of(a), ra);
            let cl = (0..n)
                .filter(|&e| brute_rank(&m, a | 1 << e) == ra)
                .fold(0u64, |c, e| c | 1 << e);
            assert_eq!(m.closure_of(a), cl);
        }
        // least k with a k-separation
        let mut want = None;
        'k: for k in 1..=n {
            for a in 0..=full {
                let b = full & !a;
                if a.count_ones() >= k && b.count_ones() >= k && brute_rank(&m, a) + brute_rank(&m, b) < m.r() + k {
                    want = Some(k);
                    break 'k;
                }
            }
        }
        assert_eq!(m.connectivity().finite(), want);
        // girth: smallest dependent set
        let girth = (0..=full)
            .filter(|&a| brute_rank(&m, a) < a.count_ones())
            .map(|a| a.count_ones())
            .min();
        assert_eq!(m.girth().finite(), girth);
    }
}

fn brute_stable(n: u32, r: u32, cap: u32) -> u64 {
    let v = rsets(n, r);
    let k = v.len();
    let adj: Vec<u64> = v
        .iter()
        .map(|&a| (0..k).filter(|&j| adjacent(a, v[j], r)).fold(0, |m, j| m | 1 << j))
        .collect();
    (0u64..1 << k)
        .filter(|&s| s.count_ones() <= cap && (0..k).all(|i| s >> i & 1 == 0 || adj[i] & s == 0))
        .count() as u64
}

#[test]
fn stable_counts_by_subset_scan() {
    for (n, r) in [(3, 1), (4, 2), (5, 2), (6, 2), (6, 3)] {
        let all = brute_stable(n, r, 64);
        assert_eq!(census::count_stable_sets(n, r, None).unwrap(), BigUint::from(all));
        for cap in 0..4 {
            assert_eq!(
                census::count_stable_sets(n, r, Some(cap as usize)).unwrap(),
                BigUint::from(brute_stable(n, r, cap))
            );
        }
    }
}

#[test]
fn sparse_paving_count_equals_stable_count() {
    for (n, r) in [(4, 2), (5, 2), (6, 3)] {
        let sp = census::enumerate_matroids(n, r)
            .unwrap()
            .iter()
            .filter(|m| m.is_sparse_paving())
            .count();
        assert_eq!(BigUint::from(sp), census::count_stable_sets(n, r, None).unwrap());
    }
}

#[test]
fn residue_classes_partition_and_are_stable() {
    for (n, r) in [(4, 2), (6, 3), (7, 3), (8, 4)] {
        let j = Johnson::new(n, r).unwrap();
        let mut total = 0;
        for c in 0..n {
            let cls = census::gs_class(n, r, c).unwrap();
            assert!(j.is_stable(&cls));
            for v in cls.iter() {
                let s: u32 = (0..n).filter(|&e| j.unrank_mask(v) >> e & 1 == 1).map(|e| e + 1).sum();
                assert_eq!(s % n, c);
            }
            total += cls.count();
        }
        assert_eq!(total as u64, choose(n, r));
    }
}
