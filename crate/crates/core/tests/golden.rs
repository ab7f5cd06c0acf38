//! Fixed values: census totals, named matroids, formats and bounds.

use matroid_census::matroid::named;
use matroid_census::{bounds, census, encoder, format, kw, Johnson, Matroid, RSet, VertexId};
use num_bigint::BigUint;
use num_rational::Ratio;

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

#[test]
fn labeled_census_totals() {
    // number of matroids on a labeled n-set
    let want = [1, 2, 5, 16, 68, 406, 3807];
    for (n, &w) in want.iter().enumerate() {
        assert_eq!(census::full_census(n as u32, 2).unwrap().len(), w, "n = {n}");
    }
    let m21: Vec<String> = census::enumerate_matroids(2, 1)
        .unwrap()
        .iter()
        .map(format::format_matroid)
        .collect();
    assert_eq!(m21, ["n=2 r=1 bases=01", "n=2 r=1 bases=02", "n=2 r=1 bases=03"]);
    for n in 0..5 {
        assert_eq!(census::enumerate_matroids(n, 0).unwrap().len(), 1);
    }
}

#[test]
fn stable_set_counts() {
    let cases: [(u32, u32, u64); 6] = [
        (4, 2, 10),
        (5, 2, 26),
        (6, 3, 271),
        (7, 3, 5596),
        (8, 2, 764),
        (6, 2, 76),
    ];
    for (n, r, s) in cases {
        assert_eq!(census::count_stable_sets(n, r, None).unwrap(), big(s), "s({n},{r})");
    }
    assert_eq!(census::count_stable_sets(5, 2, Some(1)).unwrap(), big(11));
    assert_eq!(census::enumerate_sparse_paving(4, 2).unwrap().len(), 10);
    assert_eq!(census::enumerate_sparse_paving(5, 2).unwrap().len(), 26);
}

#[test]
fn named_matroids() {
    let k4 = named::mk4();
    let part = k4.nonbasis_partition();
    assert_eq!((part.w.count(), part.u.count()), (4, 0));
    let f = k4.fractions();
    assert_eq!(
        (f.u, f.w, f.d),
        (Ratio::new(0, 1), Ratio::new(4, 20), Ratio::new(4, 20))
    );
    assert_eq!(k4.girth().finite(), Some(3));
    assert_eq!(k4.connectivity().finite(), Some(3));
    assert!(!k4.has_uniform_minor(2, 4));
    assert_eq!(k4.truncate().unwrap(), Matroid::uniform(2, 6).unwrap());
    let relaxed = k4.relax(VertexId(part.w.first().unwrap())).unwrap();
    assert_eq!(relaxed.bases().count(), 17);

    let pp = named::parallel_pair();
    let j = pp.johnson();
    let part = pp.nonbasis_partition();
    let u = j
        .set_from_elements(&[&[4, 5, 6], &[1, 5, 6], &[2, 5, 6], &[3, 5, 6]])
        .unwrap();
    assert_eq!(part.u, u);
    assert!(part.w.is_empty());
    assert_eq!(
        pp.closure_of(RSet::from_elements(&[5]).0),
        RSet::from_elements(&[5, 6]).0
    );
    assert_eq!(
        pp.unique_circuit_in(RSet::from_elements(&[4, 5, 6])).unwrap(),
        RSet::from_elements(&[5, 6]).0
    );
    assert_eq!(pp.girth().finite(), Some(2));
    let f = pp.fractions();
    assert_eq!(
        (f.u, f.w, f.d),
        (Ratio::new(4, 20), Ratio::new(0, 1), Ratio::new(4, 20))
    );
    let tail = pp.separation_tail_count(RSet::from_elements(&[5, 6]).0).unwrap();
    assert_eq!(tail.ua, u);

    let two = named::two_parallel_pairs();
    assert_eq!(two.connectivity().finite(), Some(1));
    let tail = two.separation_tail_count(0b0011).unwrap();
    assert_eq!(tail.q, big(4));
    assert_eq!(Matroid::uniform(2, 4).unwrap().connectivity().finite(), None);
}

#[test]
fn parallel_pair_encoding_is_fixed() {
    let e = encoder::encode(&named::parallel_pair()).unwrap();
    assert_eq!(format::format_encoding(&e), "n=6 r=3 S=18 Z=30:1;34:2 W= T= t=0");
    assert_eq!(e.decode_u().unwrap(), named::parallel_pair().nonbasis_partition().u);
    assert_eq!(
        format::format_encoding(&encoder::encode(&Matroid::uniform(3, 6).unwrap()).unwrap()),
        "n=6 r=3 S= Z= W= T= t=0"
    );
}

#[test]
fn hex_layout() {
    let u24 = format::parse_matroid_record("n=4 r=2 bases=3f").unwrap();
    assert_eq!(u24, Matroid::uniform(2, 4).unwrap());
    let m = format::parse_matroid_record("n=4 r=2 bases=3e").unwrap();
    assert!(!m.is_basis(RSet::from_elements(&[1, 2])));
    assert_eq!(m.bases().count(), 5);
    assert!(format::parse_matroid_record("n=4 r=2 bases=00").is_err());
    assert_eq!(
        format::format_matroid(&named::mk4()),
        format!("n=6 r=3 bases={}", format::bases_hex(&named::mk4()))
    );
}

#[test]
fn constants_and_bounds() {
    let (sigma, alpha) = bounds::sigma_alpha_nr(4, 2).unwrap();
    assert!((sigma - (5f64.ln() + 1.0) / 6.0).abs() < 1e-12);
    assert!((kw::sigma(4, 2).unwrap() - 5f64.ln() / 6.0).abs() < 1e-12);
    assert!((kw::sigma_plus(4, 2).unwrap() - sigma).abs() < 1e-12);
    assert_eq!(alpha, Ratio::new(1, 3));
    let (sigma, alpha) = bounds::sigma_alpha_nr(8, 4).unwrap();
    assert!((sigma - (17f64.ln() + 1.0) / 20.0).abs() < 1e-12);
    assert_eq!(alpha, Ratio::new(1, 5));
    assert_eq!(bounds::container_upper_exact(4, 2).unwrap(), big(168));
    assert!(bounds::lemma_sigma_check(8));
    assert!(bounds::lemma_sigma_check(100));
    assert_eq!(Johnson::new(8, 4).unwrap().graph_constants(), (16, 4));
    assert_eq!(Johnson::new(5, 0).unwrap().graph_constants(), (0, 0));
    let rep = bounds::binom_inequality_checks(64).unwrap();
    assert!(rep.sound_parts_hold());
    // the (1 - 1/(8n)) lower bound on the central binomial coefficient fails
    // at every n in range
    assert_eq!(rep.central_lower_printed_failures.len(), 64);
}

#[test]
fn residue_class_example() {
    let j = Johnson::new(4, 2).unwrap();
    let want = j.set_from_elements(&[&[1, 4], &[2, 3]]).unwrap();
    assert_eq!(census::gs_class(4, 2, 1).unwrap(), want);
}

#[test]
fn grouping_empty_u_group() {
    let g = census::group_by_u_check(4, 2, 1).unwrap();
    let empty = g.groups.iter().find(|x| x.u.is_empty()).unwrap();
    assert_eq!(empty.size, 10);
    assert_eq!(empty.bound_ok, None);
    assert_eq!(g.violations(), 0);
}
