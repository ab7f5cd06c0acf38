//! Two-phase container compression and its replay from the fingerprint.

use matroid_census::kw::{self, graphs::Hypercube, RegularGraph};
use matroid_census::{Johnson, VertexSet};

fn main() {
    let j = Johnson::new(7, 3).unwrap();
    // a spread-out vertex set: every third vertex
    let k = VertexSet::from_ids(j.order(), (0..j.order()).step_by(3));
    let res = kw::compress(&j, &k, true).unwrap();
    let steps = res.steps.as_ref().map_or(0, Vec::len);
    println!(
        "J(7,3), |K| = {}: |S| = {}, |A| = {}, {} steps, cap on |S| = {}",
        k.count(),
        res.selected.count(),
        res.remaining.count(),
        steps,
        kw::selected_cap(&j).unwrap()
    );
    assert!(res.selected.is_subset(&k));
    assert!(j.max_degree_in(&res.remaining) < j.lambda());

    // the region is a function of S alone
    let again = kw::retrace(&j, &res.selected).unwrap();
    assert_eq!(again, res.remaining);
    println!("retrace(S) reproduces A");

    let cube = Hypercube(6);
    let all = VertexSet::full(cube.vertex_count());
    let res = kw::compress(&cube, &all, false).unwrap();
    println!(
        "Q6 with K = V: |S| = {}, |A| = {}",
        res.selected.count(),
        res.remaining.count()
    );
}
