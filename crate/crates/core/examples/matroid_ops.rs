//! Basic matroid operations on the cycle matroid of K4.

use matroid_census::matroid::named;
use matroid_census::{Matroid, RSet, VertexId};

fn main() {
    let m = named::mk4();
    println!(
        "M(K4): rank {}, {} bases, girth {}, connectivity {}",
        m.r(),
        m.bases().count(),
        m.girth(),
        m.connectivity()
    );

    let tri = RSet::from_elements(&[1, 2, 3]);
    println!(
        "r({tri}) = {}, cl({tri}) = {}",
        m.rank_of(tri.0),
        RSet(m.closure_of(tri.0))
    );

    let part = m.nonbasis_partition();
    println!(
        "circuit-hyperplanes: {}, other non-bases: {}",
        part.w.count(),
        part.u.count()
    );

    // relaxing a circuit-hyperplane gives another matroid with one more basis
    let first = part.w.first().expect("M(K4) has circuit-hyperplanes");
    let relaxed = m.relax(VertexId(first)).unwrap();
    println!("after relaxing vertex {first}: {} bases", relaxed.bases().count());
    assert_eq!(relaxed.truncate().unwrap(), m.truncate().unwrap());

    let dual = m.dual();
    println!("dual: {} bases", dual.bases().count());
    assert_eq!(dual.dual(), m);

    let minor = m
        .contract(RSet::from_elements(&[1]).0)
        .unwrap()
        .delete(RSet::from_elements(&[5]).0)
        .unwrap();
    println!(
        "M / 1, then delete the last element: rank {} on {} elements, {} bases",
        minor.r(),
        minor.n(),
        minor.bases().count()
    );

    println!("U(2,4) minor: {}", m.has_uniform_minor(2, 4));
    println!("U(1,2) minor: {}", m.has_uniform_minor(1, 2));

    let u = Matroid::uniform(3, 6).unwrap();
    println!(
        "U(3,6) is sparse paving: {}, connectivity {}",
        u.is_sparse_paving(),
        u.connectivity()
    );
}
