//! Binomial coefficients: a compile-time `u64` table for small arguments and
//! exact big integers for everything else.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Largest `n` covered by [`choose`].
pub const TABLE_N: usize = 64;

const fn build_table() -> [[u64; TABLE_N + 1]; TABLE_N + 1] {
    let mut t = [[0u64; TABLE_N + 1]; TABLE_N + 1];
    let mut n = 0;
    while n <= TABLE_N {
        t[n][0] = 1;
        let mut k = 1;
        while k <= n {
            // C(64, k) fits in u64 for every k.
            t[n][k] = t[n - 1][k - 1].wrapping_add(if k < n { t[n - 1][k] } else { 0 });
            k += 1;
        }
        n += 1;
    }
    t
}

static TABLE: [[u64; TABLE_N + 1]; TABLE_N + 1] = build_table();

/// `C(n, k)` for `n <= 64`; zero when `k > n`.
#[inline]
pub fn choose(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    TABLE[n as usize][k as usize]
}

/// Exact `C(n, k)` for any size.
pub fn choose_big(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// The row `C(n, 0), ..., C(n, n)` as big integers.
pub fn binomial_row(n: u64) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigUint::one();
    row.push(c.clone());
    for i in 0..n {
        c = c * (n - i) / (i + 1);
        row.push(c.clone());
    }
    row
}

/// `C(n, floor(n/2))`.
pub fn central(n: u64) -> BigUint {
    choose_big(n, n / 2)
}

/// `log2` of a positive big integer, accurate to about 1e-15 relative.
pub fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        // exact enough through f64 conversion for anything below ~1e301
        if let Some(v) = num_traits::ToPrimitive::to_f64(x) {
            if v.is_finite() {
                return v.log2();
            }
        }
    }
    let shift = bits - 64;
    let top: BigUint = x >> shift;
    let top = num_traits::ToPrimitive::to_u64(&top).unwrap_or(u64::MAX) as f64;
    top.log2() + shift as f64
}
