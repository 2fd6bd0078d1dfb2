//! Exact partial sums of `Σ 1/n^s` and of the witness series
//! `Σ (1/x_n + 1/y_n + 1/z_n)`.
//!
//! Every witness satisfies `1/x + 1/y + 1/z = a/n^s`, so the two sums agree
//! term by term; [`compare_series`] checks this exactly. The float fields of
//! [`SeriesReport`] are accumulated one term at a time in double precision,
//! in ascending `n`, so they match a naive floating-point loop digit for digit.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::exactmath::BigRat;
use crate::search::{search_instance, ConfigError, NoBudget, SearchConfig};
use crate::witness::{Instance, Witness};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesError {
    /// The series diverges for `s < 2`.
    ExponentTooSmall(u32),
    NMaxTooSmall(u64),
    Config(ConfigError),
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::ExponentTooSmall(s) => {
                write!(f, "s must be at least 2 for a convergent series, got {s}")
            }
            SeriesError::NMaxTooSmall(n) => write!(f, "n_max must be at least 2, got {n}"),
            SeriesError::Config(e) => e.fmt(f),
        }
    }
}

impl From<ConfigError> for SeriesError {
    fn from(e: ConfigError) -> Self {
        SeriesError::Config(e)
    }
}

fn check(s: u32, n_max: u64) -> Result<(), SeriesError> {
    if s < 2 {
        return Err(SeriesError::ExponentTooSmall(s));
    }
    if n_max < 2 {
        return Err(SeriesError::NMaxTooSmall(n_max));
    }
    Ok(())
}

fn primes_up_to(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// Exact `Σ_{n=2}^{n_max} n^{−s}`, zero when `n_max < 2`.
///
/// All terms are put over `L = lcm(2..=n_max)^s` and summed as integers. Only
/// primes up to `n_max` divide `L`, so cancelling those from the numerator
/// leaves the fraction in lowest terms without a full gcd.
pub fn zeta_partial(s: u32, n_max: u64) -> BigRat {
    if n_max < 2 {
        return BigRat::zero();
    }
    let primes = primes_up_to(n_max);
    let mut lcm = BigUint::one();
    for &p in &primes {
        let mut pk = p;
        while let Some(next) = pk.checked_mul(p).filter(|&v| v <= n_max) {
            pk = next;
        }
        lcm *= pk;
    }
    let mut den: BigUint = Pow::pow(lcm, s);
    let mut num = BigUint::zero();
    for n in 2..=n_max {
        match n.checked_pow(s) {
            Some(ns) => num += &den / ns,
            None => num += &den / Pow::pow(BigUint::from(n), s),
        }
    }
    for &p in &primes {
        while (&num % p).is_zero() && (&den % p).is_zero() {
            num /= p;
            den /= p;
        }
    }
    BigRat::from_coprime(
        BigInt::from_biguint(Sign::Plus, num),
        BigInt::from_biguint(Sign::Plus, den),
    )
}

/// `n_max^{1−s}/(s − 1)`, an upper bound on `Σ_{n > n_max} n^{−s}`.
///
/// `None` when `s < 2` (divergent tail) or `n_max = 0`.
pub fn tail_bound(s: u32, n_max: u64) -> Option<BigRat> {
    if s < 2 || n_max == 0 {
        return None;
    }
    let den = Pow::pow(BigUint::from(n_max), s - 1) * (s - 1);
    Some(BigRat::unit(&den))
}

/// `Σ (1/x + 1/y + 1/z)` over the witnesses found for `n^s`, `n ∈ [2, n_max]`,
/// plus the `n` for which the search came back empty. Those contribute zero.
pub fn zeta_m_partial(
    s: u32,
    n_max: u64,
    cfg: &SearchConfig,
) -> Result<(BigRat, Vec<u64>), SeriesError> {
    check(s, n_max)?;
    cfg.validate()?;
    let mut sum = BigRat::zero();
    let mut failures = Vec::new();
    for (n, witness) in search_terms(s, n_max, cfg) {
        match witness {
            Some(w) => sum += &w.reciprocal_sum(),
            None => failures.push(n),
        }
    }
    Ok((sum, failures))
}

fn search_terms(
    s: u32,
    n_max: u64,
    cfg: &SearchConfig,
) -> impl Iterator<Item = (u64, Option<Witness>)> + '_ {
    (2..=n_max).map(move |n| {
        let inst = Instance::new(n, s).expect("n ≥ 2 and s ≥ 2");
        (n, search_instance(&inst, cfg, &mut NoBudget).witness)
    })
}

/// Side-by-side comparison of `Σ n^{−s}` and the witness series divided by
/// the numerator.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesReport {
    pub s: u32,
    pub n_max: u64,
    pub numerator: u32,
    /// `Σ_{n=2}^{n_max} n^{−s}`.
    pub left_exact: BigRat,
    /// `Σ (1/x + 1/y + 1/z) / a`.
    pub right_exact: BigRat,
    /// `Σ (1/x + 1/y + 1/z)`, the partial sum of `ζ_M(s)`.
    pub witness_sum_exact: BigRat,
    pub exact_equal: bool,
    /// Left side accumulated term by term in `f64`.
    pub left_float: f64,
    /// Right side accumulated term by term in `f64`.
    pub right_float: f64,
    /// `|left_float − right_float|`.
    pub abs_error_float: f64,
    /// `left_exact` rounded once to the nearest `f64`.
    pub left_nearest: f64,
    /// `right_exact` rounded once to the nearest `f64`.
    pub right_nearest: f64,
    /// `a · (ζ(s) − 1)` partial sum in `f64`.
    pub scaled_zeta_float: f64,
    /// `ζ_M(s)` partial sum in `f64`.
    pub zeta_m_float: f64,
    pub tail_bound: BigRat,
    pub failures: Vec<u64>,
}

/// `1/k` rounded to nearest, like Python's `1 / k` on integers.
fn reciprocal_f64(k: &BigUint) -> f64 {
    match k.to_u64() {
        Some(v) if v < 1 << 53 => 1.0 / v as f64,
        _ => BigRat::unit(k).to_f64(),
    }
}

impl SeriesReport {
    /// Builds the report from one `(n, witness)` entry per `n ∈ [2, n_max]`.
    pub fn assemble(
        s: u32,
        n_max: u64,
        numerator: u32,
        mut terms: Vec<(u64, Option<Witness>)>,
    ) -> Result<Self, SeriesError> {
        check(s, n_max)?;
        if numerator == 0 {
            return Err(ConfigError::ZeroNumerator.into());
        }
        terms.sort_by_key(|(n, _)| *n);
        debug_assert!(terms.iter().map(|(n, _)| *n).eq(2..=n_max));

        let scale = f64::from(numerator);
        let mut left_float = 0.0f64;
        let mut right_float = 0.0f64;
        let mut zeta_m_float = 0.0f64;
        let mut witness_sum = BigRat::zero();
        let mut failures = Vec::new();
        for (n, witness) in &terms {
            let power: BigUint = Pow::pow(BigUint::from(*n), s);
            left_float += reciprocal_f64(&power);
            match witness {
                Some(w) => {
                    let term = reciprocal_f64(&w.x) + reciprocal_f64(&w.y) + reciprocal_f64(&w.z);
                    right_float += term / scale;
                    zeta_m_float += term;
                    witness_sum += &w.reciprocal_sum();
                }
                None => failures.push(*n),
            }
        }

        let left_exact = zeta_partial(s, n_max);
        let right_exact = &witness_sum / numerator;
        let exact_equal = left_exact == right_exact;
        Ok(SeriesReport {
            s,
            n_max,
            numerator,
            left_nearest: left_exact.to_f64(),
            right_nearest: right_exact.to_f64(),
            left_exact,
            right_exact,
            witness_sum_exact: witness_sum,
            exact_equal,
            left_float,
            right_float,
            abs_error_float: (left_float - right_float).abs(),
            scaled_zeta_float: scale * left_float,
            zeta_m_float,
            tail_bound: tail_bound(s, n_max).expect("s ≥ 2 and n_max ≥ 2"),
            failures,
        })
    }

    /// Exact agreement with every `n` accounted for.
    pub fn identity_holds(&self) -> bool {
        self.exact_equal && self.failures.is_empty()
    }
}

/// Searches a witness for every `n ∈ [2, n_max]` and compares both series.
pub fn compare_series(s: u32, n_max: u64, cfg: &SearchConfig) -> Result<SeriesReport, SeriesError> {
    check(s, n_max)?;
    cfg.validate()?;
    SeriesReport::assemble(
        s,
        n_max,
        cfg.numerator,
        search_terms(s, n_max, cfg).collect(),
    )
}
