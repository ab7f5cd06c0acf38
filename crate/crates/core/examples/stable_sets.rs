//! Stable sets of Johnson graphs: counts, residue-class constructions,
//! sampling and the entropy inequalities.

use matroid_census::{bounds, census, Johnson};

fn main() {
    for (n, r) in [(4, 2), (5, 2), (6, 3), (7, 3), (8, 2)] {
        let s = census::count_stable_sets(n, r, None).unwrap();
        let small = census::count_stable_sets(n, r, Some(2)).unwrap();
        let knuth = bounds::knuth_holds(n, r, &s).unwrap();
        println!("s({n},{r}) = {s}, with size <= 2: {small}, Knuth bound holds: {knuth}");
    }

    let sizes: Vec<usize> = (0..7).map(|c| census::gs_class(7, 3, c).unwrap().count()).collect();
    println!("residue classes of J(7,3): {sizes:?}");

    let m = census::sample_sparse_paving(10, 5, 42).unwrap();
    println!(
        "sampled sparse paving matroid on 10 elements: {} non-bases",
        m.non_bases().count()
    );

    let j = Johnson::new(5, 2).unwrap();
    let u = j.set_from_elements(&[&[1, 2], &[1, 3], &[2, 3], &[4, 5]]).unwrap();
    let c = census::verify_shearer(5, 2, &u).unwrap();
    println!(
        "log i(G)/|V| = {:.4} <= log i(G[U])/|U| = {:.4}: {}",
        c.lhs, c.rhs, c.ok
    );
}
