//! Bounded search over `(x, t)`.
//!
//! For each `x` in `[⌊N/a⌋ + 1, x_multiplier·N)` (ascending) the search tries
//! `t` in `[t_min(x), t_min(x) + t_window)`. The default bounds are 300 and
//! 500. Under [`Strategy::FirstFound`] the first hit in that order is returned.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::exactmath::perfect_square_root_u128;
use crate::witness::{Instance, InstanceError, Target, Witness, DEFAULT_NUMERATOR};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Return the first witness in ascending `(x, t)` order.
    FirstFound,
    /// At the smallest productive `x`, scan the whole `t` window and keep the
    /// witness with the smallest `z` (the most balanced `y`, `z` pair).
    SmallestX,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::FirstFound => "first-found",
            Strategy::SmallestX => "smallest-x",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SearchConfig {
    pub x_multiplier: u64,
    pub t_window: u64,
    pub numerator: u32,
    pub strategy: Strategy,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            x_multiplier: 300,
            t_window: 500,
            numerator: DEFAULT_NUMERATOR,
            strategy: Strategy::FirstFound,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConfigError {
    ZeroMultiplier,
    ZeroWindow,
    ZeroNumerator,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::ZeroMultiplier => f.write_str("x multiplier must be at least 1"),
            ConfigError::ZeroWindow => f.write_str("t window must be at least 1"),
            ConfigError::ZeroNumerator => f.write_str("numerator must be at least 1"),
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.x_multiplier == 0 {
            return Err(ConfigError::ZeroMultiplier);
        }
        if self.t_window == 0 {
            return Err(ConfigError::ZeroWindow);
        }
        if self.numerator == 0 {
            return Err(ConfigError::ZeroNumerator);
        }
        Ok(())
    }
}

/// Cooperative cancellation, polled every few thousand `(x, t)` probes.
pub trait Budget {
    fn exhausted(&mut self) -> bool;
}

/// A budget that never runs out.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoBudget;

impl Budget for NoBudget {
    fn exhausted(&mut self) -> bool {
        false
    }
}

impl<F: FnMut() -> bool> Budget for F {
    fn exhausted(&mut self) -> bool {
        self()
    }
}

const BUDGET_POLL_MASK: u64 = 0xfff;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchStatus {
    Found,
    /// Every `(x, t)` within the bounds was tried.
    Exhausted,
    /// The budget ran out first.
    TimedOut,
}

impl SearchStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchStatus::Found => "found",
            SearchStatus::Exhausted => "exhausted",
            SearchStatus::TimedOut => "timed-out",
        }
    }
}

/// Result of searching one `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanOutcome {
    pub n: u64,
    pub status: SearchStatus,
    pub witness: Option<Witness>,
    /// Distinct `x` values visited.
    pub x_tried: u64,
    /// `(x, t)` pairs evaluated.
    pub t_tried: u64,
}

impl ScanOutcome {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }
}

/// `[t_min(x), t_min(x) + t_window)`.
pub fn effective_t_range(
    denominator: &BigUint,
    x: &BigUint,
    cfg: &SearchConfig,
) -> (BigUint, BigUint) {
    let target = Target::with_numerator(cfg.numerator, denominator.clone());
    let start = target.t_min(x);
    let end = &start + cfg.t_window;
    (start, end)
}

/// The witness [`search_instance`] finds with no time budget, if any.
pub fn find_first_witness(inst: &Instance, cfg: &SearchConfig) -> Option<Witness> {
    search_instance(inst, cfg, &mut NoBudget).witness
}

/// Searches one instance, recording effort counters.
pub fn search_instance<B: Budget + ?Sized>(
    inst: &Instance,
    cfg: &SearchConfig,
    budget: &mut B,
) -> ScanOutcome {
    let target = inst.target(cfg.numerator);
    let (x_from, x_to) = x_range(&target, cfg);
    search_x_range(&target, cfg, &x_from, &x_to, budget).into_outcome(inst.n())
}

/// Outcome of searching a contiguous block of `x` values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RangeOutcome {
    pub status: SearchStatus,
    pub witness: Option<Witness>,
    pub x_tried: u64,
    pub t_tried: u64,
}

impl RangeOutcome {
    pub fn into_outcome(self, n: u64) -> ScanOutcome {
        ScanOutcome {
            n,
            status: self.status,
            witness: self.witness,
            x_tried: self.x_tried,
            t_tried: self.t_tried,
        }
    }
}

/// The full `x` range `[⌊N/a⌋ + 1, x_multiplier·N)`; empty when the lower
/// bound is not below the upper one.
pub fn x_range(target: &Target, cfg: &SearchConfig) -> (BigUint, BigUint) {
    (
        target.x_lower_bound(),
        target.denominator() * cfg.x_multiplier,
    )
}

/// Searches `x ∈ [x_from, x_to)`, clipped to [`x_range`], in the usual order.
///
/// Splitting [`x_range`] into consecutive blocks and taking the first block
/// that finds something reproduces the single-pass result, counters included.
pub fn search_x_range<B: Budget + ?Sized>(
    target: &Target,
    cfg: &SearchConfig,
    x_from: &BigUint,
    x_to: &BigUint,
    budget: &mut B,
) -> RangeOutcome {
    let (lo, hi) = x_range(target, cfg);
    let from = x_from.max(&lo);
    let to = x_to.min(&hi);
    match native_bounds(target, cfg) {
        Some(bounds) => {
            // both ends lie within [lo, hi], which fits in u128 here
            let from = from.to_u128().expect("within native bounds");
            let to = to.to_u128().expect("within native bounds");
            search_native(bounds, cfg, from, to, budget)
        }
        None => search_big(target, cfg, from, to, budget),
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct NativeBounds {
    denominator: u128,
    numerator: u128,
}

/// Native arithmetic is exact when `t·(a·x − N)` stays below `2^63` for every
/// probe. With `x < m·N`, `d < a·m·N` and `t ≤ 2·N·x/d² + w`, that product is
/// at most `2·m·N² + w·a·m·N`; squaring it and `2·t·N·x` both fit in `u128`.
pub(crate) fn native_bounds(target: &Target, cfg: &SearchConfig) -> Option<NativeBounds> {
    let n = target.denominator().to_u128()?;
    let a = u128::from(target.numerator());
    let m = u128::from(cfg.x_multiplier);
    let w = u128::from(cfg.t_window);
    let x_end = m.checked_mul(n)?;
    let quadratic = x_end.checked_mul(n)?.checked_mul(2)?;
    let linear = w.checked_mul(a)?.checked_mul(x_end)?;
    let bound = quadratic.checked_add(linear)?;
    if bound < 1u128 << 63 {
        Some(NativeBounds {
            denominator: n,
            numerator: a,
        })
    } else {
        None
    }
}

fn search_native<B: Budget + ?Sized>(
    bounds: NativeBounds,
    cfg: &SearchConfig,
    x_from: u128,
    x_to: u128,
    budget: &mut B,
) -> RangeOutcome {
    let NativeBounds {
        denominator: n,
        numerator: a,
    } = bounds;
    let window = u128::from(cfg.t_window);
    let mut x_tried = 0u64;
    let mut t_tried = 0u64;
    let done = |status, witness, x_tried, t_tried| RangeOutcome {
        status,
        witness,
        x_tried,
        t_tried,
    };
    for x in x_from..x_to {
        x_tried += 1;
        let d = a * x - n;
        debug_assert!(d >= 1);
        let two_nx = 2 * n * x;
        let t_start = (two_nx / (d * d)).max(1);
        // (t, q) of the best hit at this x
        let mut best: Option<(u128, u128)> = None;
        for t in t_start..t_start + window {
            if t_tried & BUDGET_POLL_MASK == 0 && budget.exhausted() {
                return done(SearchStatus::TimedOut, None, x_tried, t_tried);
            }
            t_tried += 1;
            let td = t * d;
            let square = td * td;
            let offset = t * two_nx;
            if offset > square {
                continue;
            }
            let Some(q) = perfect_square_root_u128(square - offset) else {
                continue;
            };
            // q² < (td)² whenever N·x > 0, so y ≥ 1.
            if q >= td {
                continue;
            }
            match cfg.strategy {
                Strategy::FirstFound => {
                    return done(
                        SearchStatus::Found,
                        Some(native_witness(x, t, q, td)),
                        x_tried,
                        t_tried,
                    );
                }
                Strategy::SmallestX => {
                    if best.is_none_or(|(bt, bq)| td + q < bt * d + bq) {
                        best = Some((t, q));
                    }
                }
            }
        }
        if let Some((t, q)) = best {
            return done(
                SearchStatus::Found,
                Some(native_witness(x, t, q, t * d)),
                x_tried,
                t_tried,
            );
        }
    }
    done(SearchStatus::Exhausted, None, x_tried, t_tried)
}

fn native_witness(x: u128, t: u128, q: u128, td: u128) -> Witness {
    Witness {
        x: BigUint::from(x),
        t: BigUint::from(t),
        q: BigUint::from(q),
        y: BigUint::from(td - q),
        z: BigUint::from(td + q),
    }
}

fn search_big<B: Budget + ?Sized>(
    target: &Target,
    cfg: &SearchConfig,
    x_from: &BigUint,
    x_to: &BigUint,
    budget: &mut B,
) -> RangeOutcome {
    let mut x_tried = 0u64;
    let mut t_tried = 0u64;
    let done = |status, witness, x_tried, t_tried| RangeOutcome {
        status,
        witness,
        x_tried,
        t_tried,
    };
    let mut x = x_from.clone();
    while &x < x_to {
        x_tried = x_tried.saturating_add(1);
        let mut t = target.t_min(&x);
        let mut best: Option<Witness> = None;
        for _ in 0..cfg.t_window {
            if t_tried & BUDGET_POLL_MASK == 0 && budget.exhausted() {
                return done(SearchStatus::TimedOut, None, x_tried, t_tried);
            }
            t_tried = t_tried.saturating_add(1);
            if let Some(w) = target.build_witness(&x, &t) {
                match cfg.strategy {
                    Strategy::FirstFound => {
                        return done(SearchStatus::Found, Some(w), x_tried, t_tried)
                    }
                    Strategy::SmallestX => {
                        if best.as_ref().is_none_or(|b| w.z < b.z) {
                            best = Some(w);
                        }
                    }
                }
            }
            t += 1u32;
        }
        if best.is_some() {
            return done(SearchStatus::Found, best, x_tried, t_tried);
        }
        x += BigUint::one();
    }
    done(SearchStatus::Exhausted, None, x_tried, t_tried)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScanError {
    /// Requires `2 ≤ n_min ≤ n_max`.
    InvalidRange {
        n_min: u64,
        n_max: u64,
    },
    Instance(InstanceError),
    Config(ConfigError),
}

impl fmt::Display for ScanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScanError::InvalidRange { n_min, n_max } => {
                write!(
                    f,
                    "invalid range [{n_min}, {n_max}]: need 2 <= n_min <= n_max"
                )
            }
            ScanError::Instance(e) => e.fmt(f),
            ScanError::Config(e) => e.fmt(f),
        }
    }
}

impl From<InstanceError> for ScanError {
    fn from(e: InstanceError) -> Self {
        ScanError::Instance(e)
    }
}

impl From<ConfigError> for ScanError {
    fn from(e: ConfigError) -> Self {
        ScanError::Config(e)
    }
}

/// Outcomes over `[n_min, n_max]` plus capture statistics.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub n_min: u64,
    pub n_max: u64,
    pub s: u32,
    pub outcomes: Vec<ScanOutcome>,
    pub captured: u64,
    /// `100·captured / (n_max − n_min + 1)`.
    pub success_rate: f64,
    pub failed_n: Vec<u64>,
}

impl ScanReport {
    /// Assembles a report, sorting `outcomes` by `n`.
    ///
    /// `outcomes` must hold exactly one entry per `n` in `[n_min, n_max]`.
    pub fn from_outcomes(n_min: u64, n_max: u64, s: u32, mut outcomes: Vec<ScanOutcome>) -> Self {
        outcomes.sort_by_key(|o| o.n);
        debug_assert!(outcomes.iter().map(|o| o.n).eq(n_min..=n_max));
        let captured = outcomes.iter().filter(|o| o.found()).count() as u64;
        let failed_n = outcomes
            .iter()
            .filter(|o| !o.found())
            .map(|o| o.n)
            .collect();
        let total = n_max - n_min + 1;
        ScanReport {
            n_min,
            n_max,
            s,
            outcomes,
            captured,
            success_rate: 100.0 * captured as f64 / total as f64,
            failed_n,
        }
    }

    pub fn total(&self) -> u64 {
        self.n_max - self.n_min + 1
    }

    pub fn complete(&self) -> bool {
        self.failed_n.is_empty()
    }

    pub fn timed_out(&self) -> impl Iterator<Item = u64> + '_ {
        self.outcomes
            .iter()
            .filter(|o| o.status == SearchStatus::TimedOut)
            .map(|o| o.n)
    }
}

pub fn check_range(n_min: u64, n_max: u64, s: u32) -> Result<(), ScanError> {
    if n_min < 2 || n_min > n_max {
        return Err(ScanError::InvalidRange { n_min, n_max });
    }
    if s == 0 {
        return Err(InstanceError::ZeroExponent.into());
    }
    Ok(())
}

/// Sequential scan of `[n_min, n_max]` with no time budget.
pub fn scan_range(
    n_min: u64,
    n_max: u64,
    s: u32,
    cfg: &SearchConfig,
) -> Result<ScanReport, ScanError> {
    check_range(n_min, n_max, s)?;
    cfg.validate()?;
    let mut outcomes = Vec::with_capacity((n_max - n_min + 1) as usize);
    for n in n_min..=n_max {
        let inst = Instance::new(n, s)?;
        outcomes.push(search_instance(&inst, cfg, &mut NoBudget));
    }
    Ok(ScanReport::from_outcomes(n_min, n_max, s, outcomes))
}
