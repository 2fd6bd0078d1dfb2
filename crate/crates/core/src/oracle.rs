//! Brute-force enumeration of `4/N = 1/x + 1/y + 1/z` with `x ≤ y ≤ z`.
//!
//! This does not use the discriminant parametrization at all, so it can be
//! used to cross-check witnesses produced by [`crate::search`].
//!
//! Bounds, for `x ≤ y ≤ z`:
//!
//! * `1/x < 4/N` gives `x > N/4`, and `3/x ≥ 4/N` gives `x ≤ 3N/4`;
//! * with `r = 4/N − 1/x`, `1/y < r` gives `y > 1/r`, and `2/y ≥ r` gives
//!   `y ≤ 2/r`;
//! * `z = 1/(r − 1/y)` must be an integer, and `z ≥ y` follows from `y ≤ 2/r`.
//!
//! Every quantity stays below `2^128` when `N < 2^31`.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::witness::Witness;

/// Largest denominator the enumerator accepts.
pub const MAX_DENOMINATOR: u64 = (1 << 31) - 1;

/// A decomposition with `x ≤ y ≤ z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub x: u128,
    pub y: u128,
    pub z: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    DenominatorTooSmall,
    DenominatorTooLarge,
    /// The witness has a denominator above `z_cap`, so the enumeration could
    /// not contain it.
    ZCapTooSmall {
        needed: BigUint,
    },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::DenominatorTooSmall => f.write_str("denominator must be at least 2"),
            OracleError::DenominatorTooLarge => {
                write!(
                    f,
                    "denominator exceeds the enumeration limit {MAX_DENOMINATOR}"
                )
            }
            OracleError::ZCapTooSmall { needed } => write!(f, "z cap must be at least {needed}"),
        }
    }
}

/// All sorted triples with `z ≤ z_cap`, in lexicographic order.
pub fn enumerate_triples(
    denominator: &BigUint,
    z_cap: &BigUint,
) -> Result<Vec<Triple>, OracleError> {
    let n = denominator
        .to_u64()
        .ok_or(OracleError::DenominatorTooLarge)?;
    if n < 2 {
        return Err(OracleError::DenominatorTooSmall);
    }
    if n > MAX_DENOMINATOR {
        return Err(OracleError::DenominatorTooLarge);
    }
    let n = u128::from(n);
    let cap = z_cap.to_u128().unwrap_or(u128::MAX);
    let mut out = Vec::new();
    for x in n / 4 + 1..=3 * n / 4 {
        // r = 4/N − 1/x = r_num / r_den
        let r_num = 4 * x - n;
        let r_den = n * x;
        let y_lo = x.max(r_den / r_num + 1);
        let y_hi = 2 * r_den / r_num;
        for y in y_lo..=y_hi {
            // 1/z = r − 1/y = (r_num·y − r_den) / (r_den·y)
            let rest_num = r_num * y - r_den;
            let rest_den = r_den * y;
            if rest_den % rest_num != 0 {
                continue;
            }
            let z = rest_den / rest_num;
            debug_assert!(z >= y);
            if z <= cap {
                out.push(Triple { x, y, z });
            }
        }
    }
    Ok(out)
}

/// Whether the sorted `(x, y, z)` of `w` is among the enumerated triples.
pub fn cross_check(
    denominator: &BigUint,
    w: &Witness,
    z_cap: &BigUint,
) -> Result<bool, OracleError> {
    let needed = w.max_denominator();
    if needed > z_cap {
        return Err(OracleError::ZCapTooSmall {
            needed: needed.clone(),
        });
    }
    let triples = enumerate_triples(denominator, z_cap)?;
    let [x, y, z] = w.sorted_triple();
    let (Some(x), Some(y), Some(z)) = (x.to_u128(), y.to_u128(), z.to_u128()) else {
        return Ok(false);
    };
    Ok(triples.binary_search(&Triple { x, y, z }).is_ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::BigRat;
    use alloc::vec;

    fn nat(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn tri(x: u128, y: u128, z: u128) -> Triple {
        Triple { x, y, z }
    }

    fn wit(x: u64, t: u64, q: u64, y: u64, z: u64) -> Witness {
        Witness {
            x: nat(x),
            t: nat(t),
            q: nat(q),
            y: nat(y),
            z: nat(z),
        }
    }

    /// Unpruned search over x ≤ y ≤ z ≤ cap.
    fn exhaustive(n: u128, cap: u128) -> Vec<Triple> {
        let mut out = Vec::new();
        for x in 1..=cap {
            for y in x..=cap {
                for z in y..=cap {
                    if 4 * x * y * z == n * (x * y + y * z + x * z) {
                        out.push(tri(x, y, z));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn examples() {
        assert!(enumerate_triples(&nat(2), &nat(10))
            .unwrap()
            .contains(&tri(1, 2, 2)));
        assert!(enumerate_triples(&nat(5), &nat(25))
            .unwrap()
            .contains(&tri(2, 4, 20)));
        let capped = enumerate_triples(&nat(3), &nat(4)).unwrap();
        assert!(!capped.contains(&tri(1, 4, 12)));
        assert_eq!(capped, vec![tri(2, 2, 3)]);
        let full = enumerate_triples(&nat(3), &nat(12)).unwrap();
        assert_eq!(full, vec![tri(1, 4, 12), tri(1, 6, 6), tri(2, 2, 3)]);
    }

    #[test]
    fn matches_exhaustive_search() {
        for n in 2..=13u128 {
            let cap = 60;
            let pruned = enumerate_triples(&BigUint::from(n), &BigUint::from(cap)).unwrap();
            assert_eq!(pruned, exhaustive(n, cap), "N = {n}");
        }
    }

    #[test]
    fn every_triple_satisfies_identity() {
        for n in 2..40u64 {
            let target = BigRat::new(4.into(), n.into()).unwrap();
            for t in enumerate_triples(&nat(n), &nat(5_000)).unwrap() {
                let sum = BigRat::unit(&t.x.into())
                    + BigRat::unit(&t.y.into())
                    + BigRat::unit(&t.z.into());
                assert_eq!(sum, target);
                assert!(t.x <= t.y && t.y <= t.z);
            }
        }
    }

    #[test]
    fn cross_check_examples() {
        assert_eq!(
            cross_check(&nat(5), &wit(2, 4, 8, 4, 20), &nat(25)),
            Ok(true)
        );
        assert_eq!(
            cross_check(&nat(2), &wit(1, 1, 0, 2, 2), &nat(10)),
            Ok(true)
        );
        assert_eq!(
            cross_check(&nat(8), &wit(3, 3, 0, 12, 12), &nat(15)),
            Ok(true)
        );
        assert_eq!(
            cross_check(&nat(5), &wit(2, 4, 8, 4, 20), &nat(19)),
            Err(OracleError::ZCapTooSmall { needed: nat(20) })
        );
        // not a decomposition of 4/7
        assert_eq!(
            cross_check(&nat(7), &wit(2, 4, 8, 4, 20), &nat(25)),
            Ok(false)
        );
    }

    #[test]
    fn rejects_out_of_range_denominators() {
        assert_eq!(
            enumerate_triples(&nat(1), &nat(10)),
            Err(OracleError::DenominatorTooSmall)
        );
        assert_eq!(
            enumerate_triples(&nat(1 << 31), &nat(10)),
            Err(OracleError::DenominatorTooLarge)
        );
    }
}
