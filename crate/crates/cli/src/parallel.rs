//! Multi-threaded range scans.
//!
//! Each `n` is searched independently on a rayon pool. Outcomes are
//! re-sequenced before they reach the caller, so callbacks and reports see
//! ascending `n` whatever the schedule.
//!
//! A single hard `n` can dominate a scan, so the `x` range of one instance is
//! also split into consecutive blocks searched in parallel rounds. The lowest
//! block with a hit wins and only the counters up to it are kept, which
//! reproduces the sequential outcome exactly.

use std::collections::BTreeMap;
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use erdos_straus_core::search::check_range;
use erdos_straus_core::series::SeriesError;
use erdos_straus_core::{
    search_x_range, x_range, Budget, Instance, NoBudget, RangeOutcome, ScanOutcome, ScanReport,
    SearchConfig, SearchStatus, SeriesReport, Target,
};
use num_bigint::BigUint;
use rayon::prelude::*;

use crate::cache::WitnessCache;
use crate::Result;

#[derive(Clone, Debug)]
pub struct ScanOptions<'a> {
    pub threads: usize,
    /// Per-`n` wall-clock budget; searches that run out are reported as
    /// timed out rather than exhausted.
    pub time_budget: Option<Duration>,
    pub cache: Option<&'a WitnessCache>,
}

impl Default for ScanOptions<'_> {
    fn default() -> Self {
        ScanOptions {
            threads: default_threads(),
            time_budget: None,
            cache: None,
        }
    }
}

pub fn default_threads() -> usize {
    thread::available_parallelism().map_or(1, |n| n.get())
}

/// Searches one instance, consulting and filling the cache.
pub fn solve(n: u64, s: u32, cfg: &SearchConfig, opts: &ScanOptions<'_>) -> Result<ScanOutcome> {
    let inst = Instance::new(n, s)?;
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads.max(1))
        .build()?;
    pool.install(|| solve_instance(&inst, cfg, opts))
}

fn solve_instance(
    inst: &Instance,
    cfg: &SearchConfig,
    opts: &ScanOptions<'_>,
) -> Result<ScanOutcome> {
    if let Some(hit) = opts.cache.and_then(|c| c.get(inst.n(), inst.s(), cfg)) {
        return Ok(hit);
    }
    let deadline = opts.time_budget.map(|b| Instant::now() + b);
    let target = inst.target(cfg.numerator);
    let outcome = search_blocks(&target, cfg, deadline).into_outcome(inst.n());
    if let Some(cache) = opts.cache {
        cache.put(inst.s(), cfg, &outcome)?;
    }
    Ok(outcome)
}

/// `x` values searched on the calling thread before going wide; most
/// instances finish here.
const HEAD_LEN: u32 = 64;
/// `x` values per parallel block.
const BLOCK_LEN: u32 = 256;

/// Searches the whole `x` range of `target` on the current rayon pool.
pub fn search_blocks(
    target: &Target,
    cfg: &SearchConfig,
    deadline: Option<Instant>,
) -> RangeOutcome {
    let budget = || match deadline {
        Some(d) => Box::new(move || Instant::now() >= d) as Box<dyn Budget>,
        None => Box::new(NoBudget),
    };
    let (lo, hi) = x_range(target, cfg);
    let lanes = rayon::current_num_threads();
    if lanes <= 1 {
        return search_x_range(target, cfg, &lo, &hi, &mut *budget());
    }

    let head_end = &lo + HEAD_LEN;
    let head = search_x_range(target, cfg, &lo, &head_end, &mut *budget());
    if head.status != SearchStatus::Exhausted {
        return head;
    }
    let mut total = head;
    let mut start = head_end;
    let round_len = 2 * lanes;
    while start < hi {
        let starts: Vec<BigUint> = (0..round_len as u32)
            .map(|i| &start + i * BLOCK_LEN)
            .take_while(|b| *b < hi)
            .collect();
        let parts: Vec<RangeOutcome> = starts
            .par_iter()
            .map(|b| search_x_range(target, cfg, b, &(b + BLOCK_LEN), &mut *budget()))
            .collect();
        for part in parts {
            total.x_tried += part.x_tried;
            total.t_tried += part.t_tried;
            if part.status != SearchStatus::Exhausted {
                total.status = part.status;
                total.witness = part.witness;
                return total;
            }
        }
        start += BLOCK_LEN * round_len as u32;
    }
    total
}

/// Scans `[n_min, n_max]`, calling `on_outcome` in ascending `n` as results
/// become available.
pub fn scan(
    n_min: u64,
    n_max: u64,
    s: u32,
    cfg: &SearchConfig,
    opts: &ScanOptions<'_>,
    mut on_outcome: impl FnMut(&ScanOutcome),
) -> Result<ScanReport> {
    check_range(n_min, n_max, s)?;
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads.max(1))
        .build()?;
    let (tx, rx) = mpsc::channel::<ScanOutcome>();
    let mut outcomes = Vec::with_capacity((n_max - n_min + 1) as usize);

    thread::scope(|scope| {
        let worker = scope.spawn(move || {
            pool.install(|| {
                (n_min..=n_max)
                    .into_par_iter()
                    .try_for_each_with(tx, |tx, n| -> Result<()> {
                        let outcome = solve_instance(&Instance::new(n, s)?, cfg, opts)?;
                        // the receiver only disappears if the caller panicked
                        let _ = tx.send(outcome);
                        Ok(())
                    })
            })
        });

        let mut pending = BTreeMap::new();
        let mut next = n_min;
        for outcome in rx {
            pending.insert(outcome.n, outcome);
            while let Some(ready) = pending.remove(&next) {
                on_outcome(&ready);
                outcomes.push(ready);
                next += 1;
            }
        }
        worker.join().expect("scan worker panicked")
    })?;

    Ok(ScanReport::from_outcomes(n_min, n_max, s, outcomes))
}

/// Parallel version of [`erdos_straus_core::compare_series`].
pub fn series(
    s: u32,
    n_max: u64,
    cfg: &SearchConfig,
    opts: &ScanOptions<'_>,
) -> Result<SeriesReport> {
    if s < 2 {
        return Err(SeriesError::ExponentTooSmall(s).into());
    }
    if n_max < 2 {
        return Err(SeriesError::NMaxTooSmall(n_max).into());
    }
    let report = scan(2, n_max, s, cfg, opts, |_| {})?;
    let terms = report
        .outcomes
        .into_iter()
        .map(|o| (o.n, o.witness))
        .collect();
    Ok(SeriesReport::assemble(s, n_max, cfg.numerator, terms)?)
}
