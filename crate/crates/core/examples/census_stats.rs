//! Census statistics at n = 5 and the grouping of M(6,3) by U(M).

use matroid_census::census;

fn main() {
    let (rep, recs) = census::stats_pipeline(5, 1).unwrap();
    println!(
        "n = 5: {} matroids, log s(5) = {:.4}, upsilon = {:.2}",
        rep.matroids, rep.log2_s_n, rep.upsilon
    );
    for r in &rep.ranks {
        println!(
            "  r = {}: {} matroids, {} sparse paving, s = {}, connectivity {:?}",
            r.r,
            r.matroids,
            r.sparse_paving,
            r.s_nr.as_deref().unwrap_or("-"),
            r.connectivity_histogram
        );
    }
    println!("{}", census::RECORD_CSV_HEADER);
    for rec in recs.iter().filter(|c| c.r == 2).take(3) {
        println!("{}", rec.csv_row());
    }

    let g = census::group_by_u_check(6, 3, 1).unwrap();
    let largest = g
        .groups
        .iter()
        .filter(|x| !x.u.is_empty())
        .max_by_key(|x| x.size)
        .unwrap();
    println!(
        "M(6,3): {} matroids in {} groups; largest nonempty group has |U| = {} and {} members; {} violations",
        g.matroids,
        g.groups.len(),
        largest.u.len(),
        largest.size,
        g.violations()
    );
}
