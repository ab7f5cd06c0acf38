//! Colex ranking and neighbourhoods in J(n, r).

use matroid_census::{Johnson, RSet, VertexId};

fn main() {
    let j = Johnson::new(6, 3).expect("valid parameters");
    let (d, lambda) = j.graph_constants();
    println!(
        "J(6,3): {} vertices, degree {d}, smallest eigenvalue -{lambda}",
        j.order()
    );

    let x = RSet::from_elements(&[2, 4, 5]);
    let id = j.rank(x).expect("an r-set");
    println!("{x} has colex rank {}", id.0);
    assert_eq!(j.unrank(id).unwrap(), x);

    // colex order is numeric order of the element masks
    let first: Vec<String> = (0..5).map(|i| j.unrank(VertexId(i)).unwrap().to_string()).collect();
    println!("first five vertices: {}", first.join(" "));

    let nbrs = j.neighbors(x);
    println!(
        "{x} has {} neighbours, e.g. {} and {}",
        nbrs.len(),
        nbrs[0],
        nbrs[nbrs.len() - 1]
    );

    let tri = j
        .set_from_elements(&[&[1, 2, 3], &[1, 2, 4], &[1, 2, 5], &[4, 5, 6]])
        .unwrap();
    let comps = j.components(&tri);
    println!(
        "induced subgraph on 4 vertices: {} components, max degree {}",
        comps.len(),
        j.max_degree_in(&tri)
    );
}
