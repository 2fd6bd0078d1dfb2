//! Exact search and verification of Erdős–Straus decompositions.
//!
//! For a denominator `N = n^s` this crate looks for a witness `(x, t, q, y, z)`
//! with
//!
//! ```text
//! q² = t²(4x − N)² − 2·t·N·x,   y = t(4x − N) − q,   z = t(4x − N) + q
//! ```
//!
//! which yields `4/N = 1/x + 1/y + 1/z`. Every value is an exact integer or
//! reduced rational; floating point only appears when rendering partial sums.
//!
//! The crate is `no_std` and only needs `alloc`. Parallel scanning, caching,
//! report formats and the command line live in the `erdos-straus` crate.
//!
//! * [`exactmath`]: integer square roots and canonical big rationals.
//! * [`witness`]: discriminant, witness construction and exact verification.
//! * [`search`]: bounded `(x, t)` search and range scans.
//! * [`series`]: exact partial sums of `Σ 1/n^s` and of the witness series.
//! * [`oracle`]: brute-force enumeration of decompositions, independent of
//!   the parametrization.

#![no_std]

extern crate alloc;

pub mod exactmath;
pub mod oracle;
pub mod search;
pub mod series;
pub mod witness;

pub use exactmath::{
    isqrt, isqrt_u128, perfect_square_root, perfect_square_root_u128, rat_add, BigNat, BigRat,
};
pub use oracle::{cross_check, enumerate_triples, OracleError, Triple};
pub use search::{
    effective_t_range, find_first_witness, scan_range, search_instance, search_x_range, x_range,
    Budget, ConfigError, NoBudget, RangeOutcome, ScanOutcome, ScanReport, SearchConfig,
    SearchStatus, Strategy,
};
pub use series::{compare_series, tail_bound, zeta_m_partial, zeta_partial, SeriesReport};
pub use witness::{
    build_witness, discriminant, t_min, verify_witness, x_lower_bound, Instance, InstanceError,
    Target, Witness,
};
