//! Evaluators for the constants and counting bounds around the container
//! method on Johnson graphs.
//!
//! `log` is base 2, `ln` is natural. `C(n, n/2)` means `C(n, ⌊n/2⌋)`.
//! Real-valued quantities are returned as `f64` for reporting; every
//! inequality that is *asserted* goes through exact big rationals, with
//! transcendental constants replaced by rational enclosures rounded in the
//! sound direction.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::binom::{binomial_row, central, choose_big, log2_big};
use crate::error::{Error, Result};

fn big(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

fn ubig(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

fn exact_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

fn floor_big(x: &BigRational) -> BigInt {
    x.floor().to_integer()
}

fn ceil_big(x: &BigRational) -> BigInt {
    x.ceil().to_integer()
}

/// A closed interval `[lo, hi]` of rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct Enclosure {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Enclosure {
    pub fn point(x: BigRational) -> Enclosure {
        Enclosure { lo: x.clone(), hi: x }
    }

    fn add(&self, c: &BigRational) -> Enclosure {
        Enclosure {
            lo: &self.lo + c,
            hi: &self.hi + c,
        }
    }

    /// Multiplication by a nonnegative rational.
    fn scale(&self, c: &BigRational) -> Enclosure {
        debug_assert!(*c >= BigRational::zero());
        Enclosure {
            lo: &self.lo * c,
            hi: &self.hi * c,
        }
    }

    pub fn mid_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / big(2)).to_f64().unwrap_or(f64::INFINITY)
    }
}

/// `ln x` for an integer `x ≥ 2`, widened by four ulps on each side of the
/// platform `ln`.
fn ln_bounds(x: u64) -> (f64, f64) {
    assert!(x >= 2);
    let (mut lo, mut hi) = ((x as f64).ln(), (x as f64).ln());
    for _ in 0..4 {
        lo = lo.next_down();
        hi = hi.next_up();
    }
    (lo, hi)
}

/// `ln x` for a positive integer as a rational enclosure.
pub fn ln_enclosure(x: u64) -> Enclosure {
    assert!(x >= 1);
    if x == 1 {
        return Enclosure::point(BigRational::zero());
    }
    let (lo, hi) = ln_bounds(x);
    Enclosure {
        lo: exact_f64(lo),
        hi: exact_f64(hi),
    }
}

/// `e` to 18 decimals, rounded outward.
pub fn e_enclosure() -> Enclosure {
    let den = BigInt::from(10u64).pow(18);
    let lo = BigRational::new(BigInt::from(2_718_281_828_459_045_235u64), den.clone());
    let hi = BigRational::new(BigInt::from(2_718_281_828_459_045_236u64), den);
    Enclosure { lo, hi }
}

/// `π` to 18 decimals, rounded outward.
pub fn pi_enclosure() -> Enclosure {
    let den = BigInt::from(10u64).pow(18);
    let lo = BigRational::new(BigInt::from(3_141_592_653_589_793_238u64), den.clone());
    let hi = BigRational::new(BigInt::from(3_141_592_653_589_793_239u64), den);
    Enclosure { lo, hi }
}

fn check_rank(n: u32, r: u32) -> Result<()> {
    if r == 0 || r >= n {
        return Err(Error::InvalidArgument(format!("need 0 < r < n, got n = {n}, r = {r}")));
    }
    Ok(())
}

/// Degree and smallest-eigenvalue magnitude of `J(n, r)`.
fn johnson_constants(n: u32, r: u32) -> (u64, u64) {
    let d = r as u64 * (n - r) as u64;
    (d, r.min(n - r) as u64)
}

/// `σ_{n,r} = (ln(r(n-r)+1)+1) / (r(n-r)+min(r,n-r))` and the exact
/// `α_{n,r} = min(r,n-r) / (r(n-r)+min(r,n-r))`.
pub fn sigma_alpha_nr(n: u32, r: u32) -> Result<(f64, Ratio<u64>)> {
    check_rank(n, r)?;
    let (d, l) = johnson_constants(n, r);
    let sigma = (((d + 1) as f64).ln() + 1.0) / (d + l) as f64;
    Ok((sigma, Ratio::new(l, d + l)))
}

pub fn sigma_enclosure(n: u32, r: u32) -> Result<Enclosure> {
    check_rank(n, r)?;
    let (d, l) = johnson_constants(n, r);
    Ok(ln_enclosure(d + 1)
        .add(&BigRational::one())
        .scale(&BigRational::new(BigInt::one(), BigInt::from(d + l))))
}

pub fn alpha_exact(n: u32, r: u32) -> Result<BigRational> {
    check_rank(n, r)?;
    let (d, l) = johnson_constants(n, r);
    Ok(BigRational::new(BigInt::from(l), BigInt::from(d + l)))
}

/// `⌈σ_{n,r} C(n,r)⌉`, taken from the upper end of the enclosure so it is
/// never too small.
pub fn ceil_sigma_n(n: u32, r: u32) -> Result<BigUint> {
    let e = sigma_enclosure(n, r)?.scale(&ubig(&choose_big(n as u64, r as u64)));
    let hi = ceil_big(&e.hi);
    Ok(hi.to_biguint().expect("nonnegative"))
}

/// `⌊α_{n,r} C(n,r)⌋`, the largest possible size of the region `A`.
pub fn floor_alpha_n(n: u32, r: u32) -> Result<BigUint> {
    let a = alpha_exact(n, r)? * ubig(&choose_big(n as u64, r as u64));
    Ok(floor_big(&a).to_biguint().expect("nonnegative"))
}

/// Outcome of the two inequalities
/// `⌈σ_{n,r} C(n,r)⌉ ≤ 9 ln(n) C(n,n/2)/n²` and
/// `α_{n,r} C(n,r) ≤ 2 C(n,n/2)/n` (with `α_{n,r} ≤ 2/n`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaCheck {
    pub n: u32,
    pub sigma_ok: bool,
    pub alpha_ok: bool,
    /// Ranks where the `σ` inequality could not be certified.
    pub sigma_failures: Vec<u32>,
    pub alpha_failures: Vec<u32>,
}

impl SigmaCheck {
    pub fn ok(&self) -> bool {
        self.sigma_ok && self.alpha_ok
    }
}

/// A positive finite `f64` as `m · 2^e`.
fn dyadic(x: f64) -> (u64, i32) {
    debug_assert!(x > 0.0 && x.is_finite());
    let b = x.to_bits();
    let exp = ((b >> 52) & 0x7ff) as i32;
    let frac = b & ((1u64 << 52) - 1);
    if exp == 0 {
        (frac, -1074)
    } else {
        (frac | 1u64 << 52, exp - 1075)
    }
}

/// `(num, shift)` with `x = num / 2^shift` for a dyadic `x` of magnitude
/// below `2^52`.
fn dyadic_parts(x: f64) -> (BigUint, u32) {
    let (m, e) = dyadic(x);
    if e >= 0 {
        (BigUint::from(m) << e as u32, 0)
    } else {
        (BigUint::from(m), (-e) as u32)
    }
}

pub fn lemma_sigma_report(n: u32) -> Result<SigmaCheck> {
    if n < 2 {
        return Err(Error::InvalidArgument("need n >= 2".into()));
    }
    // everything below is integer arithmetic on dyadic enclosure endpoints
    let c_mid = central(n as u64);
    let n2 = BigUint::from(n as u64 * n as u64);
    // ⌊9 ln(n) C(n,n/2)/n²⌋ from below
    let (ln_n_lo, sh) = dyadic_parts(ln_bounds(n as u64).0);
    let rhs_floor = (ln_n_lo * 9u32 * &c_mid) / ((BigUint::from(1u32) << sh) * &n2);
    let mut sigma_failures = Vec::new();
    let mut alpha_failures = Vec::new();
    let row = binomial_row(n as u64);
    for r in 1..n {
        let (d, l) = johnson_constants(n, r);
        let c = &row[r as usize];
        // ⌈x⌉ ≤ y iff x ≤ ⌊y⌋, with x = (ln(d+1) + 1) C / (d + l) from above
        let (ln_hi, sh) = dyadic_parts(ln_bounds(d + 1).1);
        let one = BigUint::from(1u32) << sh;
        if (ln_hi + &one) * c > &rhs_floor * &one * (d + l) {
            sigma_failures.push(r);
        }
        // α ≤ 2/n and α C ≤ 2 C(n,n/2)/n
        if l * n as u64 > 2 * (d + l) || BigUint::from(l * n as u64) * c > &c_mid * 2u32 * (d + l) {
            alpha_failures.push(r);
        }
    }
    Ok(SigmaCheck {
        n,
        sigma_ok: sigma_failures.is_empty(),
        alpha_ok: alpha_failures.is_empty(),
        sigma_failures,
        alpha_failures,
    })
}

pub fn lemma_sigma_check(n: u32) -> bool {
    lemma_sigma_report(n).map(|c| c.ok()).unwrap_or(false)
}

/// `ζ(n) = 57 (log n)² / n² · C(n, n/2)`.
pub fn zeta(n: u32) -> f64 {
    let l = (n as f64).log2();
    57.0 * l * l / (n as f64 * n as f64) * central_f64(n)
}

/// `log ζ(n)`, finite for every `n`.
pub fn log2_zeta(n: u32) -> f64 {
    let l = (n as f64).log2();
    57f64.log2() + 2.0 * l.log2() - 2.0 * l + log2_big(&central(n as u64))
}

/// `Υ(n) = 5 log(n) ζ(n)`.
pub fn upsilon_big(n: u32) -> f64 {
    5.0 * (n as f64).log2() * zeta(n)
}

/// `ϝ(n) = 1/(5n)`.
pub fn digamma_f(n: u32) -> Ratio<u64> {
    Ratio::new(1, 5 * n as u64)
}

fn central_f64(n: u32) -> f64 {
    central(n as u64).to_f64().unwrap_or(f64::INFINITY)
}

/// `N log(e C(n,n/2)/N) + 2N log(e n 2ⁿ/(2N))`, the explicit upper bound on
/// `log z(n, r)` for a given `N ≥ ⌈σ_{n,r} C(n,r)⌉`.
pub fn z_log_upper_with(n: u32, big_n: &BigUint) -> f64 {
    if big_n.is_zero() {
        return 0.0;
    }
    let nn = big_n.to_f64().unwrap_or(f64::INFINITY);
    let log_e = std::f64::consts::LOG2_E;
    let log_nn = log2_big(big_n);
    let a = log_e + log2_big(&central(n as u64)) - log_nn;
    let b = log_e + (n as f64).log2() + n as f64 - 1.0 - log_nn;
    nn * a + 2.0 * nn * b
}

/// `N = ⌈9 ln(n) C(n,n/2)/n²⌉`, uniform over `r`.
pub fn z_uniform_n(n: u32) -> BigUint {
    let c = ubig(&central(n as u64));
    let x = ln_enclosure(n as u64).hi * big(9) * c / big(n as u64 * n as u64);
    ceil_big(&x).to_biguint().expect("nonnegative")
}

/// Upper bound on `log z(n, r)` valid for every `r`.
pub fn z_log_upper(n: u32) -> f64 {
    z_log_upper_with(n, &z_uniform_n(n))
}

/// Upper bound on `log z(n, r)` using this rank's own `⌈σ_{n,r} C(n,r)⌉`.
pub fn z_log_upper_at(n: u32, r: u32) -> Result<f64> {
    Ok(z_log_upper_with(n, &ceil_sigma_n(n, r)?))
}

/// Smallest `n0` in `[2, n_max]` with `z_log_upper(n) ≤ ζ(n)` for every
/// `n0 ≤ n ≤ n_max`, comparing in log space.
pub fn z_threshold(n_max: u32) -> Option<u32> {
    let mut best = None;
    for n in (2..=n_max).rev() {
        let z = z_log_upper(n);
        let ok = z <= 0.0 || z.log2() <= log2_zeta(n);
        if !ok {
            break;
        }
        best = Some(n);
    }
    best
}

/// Where a value of `log s(n)` came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SSource {
    Exact,
    KnuthProxy,
}

impl SSource {
    pub fn as_str(self) -> &'static str {
        match self {
            SSource::Exact => "exact",
            SSource::KnuthProxy => "knuth-proxy",
        }
    }
}

/// `υ(n) = (Υ(n) + 2 log(n+1)) / log s(n)`. Without an exact `log s(n)` the
/// lower bound `C(n,n/2)/n` is used, which overestimates `υ`.
pub fn upsilon_small(n: u32, s_log: Option<f64>) -> (f64, SSource) {
    let num = upsilon_big(n) + 2.0 * ((n + 1) as f64).log2();
    match s_log {
        Some(s) => (num / s, SSource::Exact),
        None => (num / (central_f64(n) / n as f64), SSource::KnuthProxy),
    }
}

/// `C(n,r)/n`, a lower bound on `log s(n, r)`.
pub fn knuth_log_lower(n: u32, r: u32) -> Result<BigRational> {
    check_rank(n, r)?;
    Ok(BigRational::new(
        BigInt::from(choose_big(n as u64, r as u64)),
        BigInt::from(n),
    ))
}

/// Whether `s ≥ 2^{C(n,r)/n}`, i.e. `s^n ≥ 2^{C(n,r)}`.
pub fn knuth_holds(n: u32, r: u32, s: &BigUint) -> Result<bool> {
    check_rank(n, r)?;
    let c = choose_big(n as u64, r as u64);
    let c = c.to_u64().ok_or(Error::Capacity {
        what: "C(n,r) for an exact Knuth comparison",
        needed: u64::MAX,
        limit: u64::MAX - 1,
    })?;
    Ok(s.pow(n) >= BigUint::one() << c)
}

fn binomial_prefix_sum(n: &BigUint, upto: &BigUint) -> BigUint {
    // Σ_{i=0}^{min(upto,n)} C(n,i) via the multiplicative recurrence
    let mut term = BigUint::one();
    let mut sum = BigUint::one();
    let mut i = BigUint::zero();
    let stop = upto.min(n).clone();
    while i < stop {
        term *= n - &i;
        i += 1u32;
        term /= &i;
        sum += &term;
    }
    sum
}

/// `Σ_{i ≤ ⌈σN⌉} C(N, i) · 2^{⌊αN⌋}` with `N = C(n,r)`. Since `|A|` is an
/// integer, `2^{⌊αN⌋}` is the count the proof actually uses; it is at most the
/// printed `2^{αN}`.
pub fn container_upper_exact(n: u32, r: u32) -> Result<BigUint> {
    let nn = choose_big(n as u64, r as u64);
    let s = binomial_prefix_sum(&nn, &ceil_sigma_n(n, r)?);
    let a = floor_alpha_n(n, r)?.to_u64().expect("small");
    Ok(s << a)
}

/// `Σ_{i ≤ ⌈σN⌉} C(N, i) · Σ_{j ≤ m} C(⌊αN⌋, j)`.
pub fn container_upper_m_exact(n: u32, r: u32, m: u64) -> Result<BigUint> {
    let nn = choose_big(n as u64, r as u64);
    let s = binomial_prefix_sum(&nn, &ceil_sigma_n(n, r)?);
    let a = floor_alpha_n(n, r)?;
    Ok(s * binomial_prefix_sum(&a, &BigUint::from(m)))
}

/// `log` of `Σ_{i ≤ ⌈σN⌉} C(N, i) · 2^{αN}`, with the real exponent `αN`.
pub fn container_log_upper(n: u32, r: u32) -> Result<f64> {
    let nn = choose_big(n as u64, r as u64);
    let s = binomial_prefix_sum(&nn, &ceil_sigma_n(n, r)?);
    let an = alpha_exact(n, r)? * ubig(&nn);
    Ok(log2_big(&s) + an.to_f64().unwrap_or(f64::INFINITY))
}

/// `log` of the bounded-size container bound.
pub fn container_log_upper_m(n: u32, r: u32, m: u64) -> Result<f64> {
    Ok(log2_big(&container_upper_m_exact(n, r, m)?))
}

/// Results of the binomial-coefficient inequalities over `1 ≤ k ≤ n ≤ n_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinomReport {
    pub n_max: u32,
    /// `Σ_{i≤k} C(n,i) ≤ (en/k)^k` for all `1 ≤ k ≤ n`.
    pub sum_bound: bool,
    /// `C(n,n/2) ≤ √(2/π) 2ⁿ/√n`.
    pub central_upper: bool,
    /// `√(2/π) 2ⁿ/√n (1 - 1/(8n)) ≤ C(n,n/2)`, as printed.
    pub central_lower_printed: bool,
    /// `n` values where the printed lower bound is certified false.
    pub central_lower_printed_failures: Vec<u32>,
    /// The lower bound with `1 - 1/(4n)` for even `n` and `1 - 1/n` for odd `n`.
    pub central_lower_corrected: bool,
}

impl BinomReport {
    /// The inequalities that are expected to hold.
    pub fn sound_parts_hold(&self) -> bool {
        self.sum_bound && self.central_upper && self.central_lower_corrected
    }
}

/// Compares `√(2/π) 2ⁿ/√n (1 - c)` with `C = C(n, n/2)`. Returns
/// `Some(true)` if the bound is certified, `Some(false)` if certified false.
fn central_lower_cmp(n: u32, c: &BigRational) -> Option<bool> {
    let cm = ubig(&central(n as u64));
    let pi = pi_enclosure();
    let one_minus = BigRational::one() - c;
    if one_minus <= BigRational::zero() {
        return Some(true);
    }
    // (2/π) 4ⁿ/n (1-c)² ≤ C²  ⟺  2·4ⁿ(1-c)² ≤ π n C²
    let lhs = big(2) * ubig(&(BigUint::one() << (2 * n))) * &one_minus * &one_minus;
    let base = big(n) * &cm * &cm;
    if lhs <= &pi.lo * &base {
        Some(true)
    } else if lhs > &pi.hi * &base {
        Some(false)
    } else {
        None
    }
}

pub fn binom_inequality_checks(n_max: u32) -> Result<BinomReport> {
    if n_max < 1 {
        return Err(Error::InvalidArgument("need n_max >= 1".into()));
    }
    let e = e_enclosure();
    let pi = pi_enclosure();
    let mut sum_bound = true;
    let mut central_upper = true;
    let mut printed_failures = Vec::new();
    let mut printed_ok = true;
    let mut corrected = true;
    for n in 1..=n_max {
        let mut partial = BigUint::zero();
        let mut term = BigUint::one();
        for k in 0..=n {
            if k > 0 {
                term = term * (n - k + 1) / k;
            }
            partial += &term;
            if k == 0 {
                continue;
            }
            // (e n / k)^k with e rounded down
            let base = &e.lo * big(n) / big(k);
            if ubig(&partial) > num_traits::pow(base, k as usize) {
                sum_bound = false;
            }
        }
        let cm = central(n as u64);
        // C² n π ≤ 2 · 4ⁿ, π rounded up
        let lhs = &pi.hi * big(n) * ubig(&(&cm * &cm));
        if lhs > ubig(&(BigUint::from(2u32) << (2 * n))) {
            central_upper = false;
        }
        match central_lower_cmp(n, &BigRational::new(BigInt::one(), BigInt::from(8 * n))) {
            Some(true) => {}
            Some(false) => {
                printed_ok = false;
                printed_failures.push(n);
            }
            None => printed_ok = false,
        }
        let c = if n.is_even() {
            BigRational::new(BigInt::one(), BigInt::from(4 * n))
        } else {
            BigRational::new(BigInt::one(), BigInt::from(n))
        };
        if central_lower_cmp(n, &c) != Some(true) {
            corrected = false;
        }
    }
    Ok(BinomReport {
        n_max,
        sum_bound,
        central_upper,
        central_lower_printed: printed_ok,
        central_lower_printed_failures: printed_failures,
        central_lower_corrected: corrected,
    })
}

/// One row of the bounds table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    pub n: u32,
    pub r: u32,
    pub sigma: f64,
    pub alpha: String,
    pub ceil_sigma_n: String,
    pub alpha_n: f64,
    pub zeta: f64,
    pub upsilon_big: f64,
    pub upsilon_small: f64,
    pub digamma: String,
    pub knuth_lower: String,
    pub container_log_upper: f64,
    pub s_source: SSource,
}

pub const CSV_HEADER: &str =
    "n,r,sigma,alpha,ceil_sigma_N,alpha_N,zeta,Upsilon,upsilon,digamma,knuth_lower,container_upper,s_source";

fn ratio_str(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn bounds_report(n: u32, r: u32, s_log: Option<f64>) -> Result<BoundsReport> {
    let (sigma, alpha) = sigma_alpha_nr(n, r)?;
    let nn = ubig(&choose_big(n as u64, r as u64));
    let (upsilon_small, s_source) = upsilon_small(n, s_log);
    Ok(BoundsReport {
        n,
        r,
        sigma,
        alpha: format!("{}/{}", alpha.numer(), alpha.denom()),
        ceil_sigma_n: ceil_sigma_n(n, r)?.to_string(),
        alpha_n: (alpha_exact(n, r)? * nn).to_f64().unwrap_or(f64::INFINITY),
        zeta: zeta(n),
        upsilon_big: upsilon_big(n),
        upsilon_small,
        digamma: format!("1/{}", 5 * n),
        knuth_lower: ratio_str(&knuth_log_lower(n, r)?),
        container_log_upper: container_log_upper(n, r)?,
        s_source,
    })
}

impl BoundsReport {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{:.12},{},{},{:.6},{:.6},{:.6},{:.6},{},{},{:.6},{}",
            self.n,
            self.r,
            self.sigma,
            self.alpha,
            self.ceil_sigma_n,
            self.alpha_n,
            self.zeta,
            self.upsilon_big,
            self.upsilon_small,
            self.digamma,
            self.knuth_lower,
            self.container_log_upper,
            self.s_source.as_str()
        )
    }
}
