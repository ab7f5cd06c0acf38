//! Constants and counting bounds for small n.

use matroid_census::bounds;

fn main() {
    println!("{}", bounds::CSV_HEADER);
    for n in [4, 8, 12, 16] {
        for r in [1, n / 2] {
            println!("{}", bounds::bounds_report(n, r, None).unwrap().csv_row());
        }
    }

    let bad: Vec<u32> = (2..=200).filter(|&n| !bounds::lemma_sigma_check(n)).collect();
    println!("sigma/alpha inequalities fail for n in {bad:?} (n <= 200)");

    let rep = bounds::binom_inequality_checks(64).unwrap();
    println!(
        "binomial sums: {}, central upper: {}, central lower with 1/(8n): {}, corrected: {}",
        rep.sum_bound, rep.central_upper, rep.central_lower_printed, rep.central_lower_corrected
    );

    match bounds::z_threshold(300) {
        Some(t) => println!("log z(n,r) bound is below zeta(n) for {t} <= n <= 300"),
        None => println!("log z(n,r) bound exceeds zeta(300)"),
    }
    println!(
        "(4,2) container bound: {}",
        bounds::container_upper_exact(4, 2).unwrap()
    );
}
