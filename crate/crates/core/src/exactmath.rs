//! Exact integer and rational primitives.
//!
//! Square roots are computed with integer Newton iteration only. A float
//! `sqrt` silently misclassifies perfect squares once the radicand exceeds the
//! 53-bit mantissa, which happens quickly for `N = n^s`.

use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision nonnegative integer.
pub type BigNat = BigUint;

/// `⌊√m⌋` for an arbitrary-precision `m`.
pub fn isqrt(m: &BigUint) -> BigUint {
    if m.is_zero() {
        return BigUint::zero();
    }
    if let Some(small) = m.to_u128() {
        return BigUint::from(isqrt_u128(small));
    }
    // 2^⌈bits/2⌉ > √m, so Newton descends monotonically onto the floor.
    let bits = m.bits();
    let mut r = BigUint::one() << bits.div_ceil(2);
    loop {
        let next = (&r + m / &r) >> 1u32;
        if next >= r {
            return r;
        }
        r = next;
    }
}

/// `⌊√m⌋` for a `u128`.
pub fn isqrt_u128(m: u128) -> u128 {
    if m < 2 {
        return m;
    }
    let bits = 128 - m.leading_zeros();
    let mut r: u128 = 1 << bits.div_ceil(2);
    loop {
        // r ≤ 2^64 and m / r < 2^64 keep the sum in range.
        let next = (r + m / r) >> 1;
        if next >= r {
            return r;
        }
        r = next;
    }
}

/// `Some(r)` with `r² = m` when `m` is a perfect square.
pub fn perfect_square_root(m: &BigUint) -> Option<BigUint> {
    let r = isqrt(m);
    if &(&r * &r) == m {
        Some(r)
    } else {
        None
    }
}

const fn square_residues(modulus: u32) -> u128 {
    let mut mask = 0u128;
    let mut i = 0;
    while i < modulus {
        mask |= 1 << (i * i % modulus);
        i += 1;
    }
    mask
}

const SQUARES_MOD_64: u128 = square_residues(64);
const SQUARES_MOD_63: u128 = square_residues(63);
const SQUARES_MOD_65: u128 = square_residues(65);
const SQUARES_MOD_11: u128 = square_residues(11);

/// Quadratic-residue filter; false means `m` is certainly not a square.
fn may_be_square(m: u128) -> bool {
    SQUARES_MOD_64 >> (m % 64) & 1 == 1
        && SQUARES_MOD_63 >> (m % 63) & 1 == 1
        && SQUARES_MOD_65 >> (m % 65) & 1 == 1
        && SQUARES_MOD_11 >> (m % 11) & 1 == 1
}

/// `Some(r)` with `r² = m` when `m` is a perfect square.
pub fn perfect_square_root_u128(m: u128) -> Option<u128> {
    if !may_be_square(m) {
        return None;
    }
    let r = isqrt_u128(m);
    if r * r == m {
        Some(r)
    } else {
        None
    }
}

/// Exact rational in lowest terms with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BigRat(BigRational);

impl BigRat {
    pub fn zero() -> Self {
        BigRat(BigRational::zero())
    }

    /// `num/den` reduced; `None` when `den = 0`.
    pub fn new(num: BigInt, den: BigInt) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(BigRat(BigRational::new(num, den)))
    }

    pub fn from_naturals(num: &BigUint, den: &BigUint) -> Option<Self> {
        Self::new(to_int(num), to_int(den))
    }

    pub fn from_integer(value: BigInt) -> Self {
        BigRat(BigRational::from_integer(value))
    }

    /// The unit fraction `1/k`. Panics on `k = 0`.
    pub fn unit(k: &BigUint) -> Self {
        assert!(!k.is_zero(), "unit fraction with zero denominator");
        BigRat(BigRational::new_raw(BigInt::one(), to_int(k)))
    }

    /// Wraps a fraction the caller has already reduced.
    pub(crate) fn from_coprime(num: BigInt, den: BigInt) -> Self {
        debug_assert!(den.is_positive());
        BigRat(BigRational::new_raw(num, den))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `gcd(|num|, den) = 1` and `den > 0`.
    pub fn is_canonical(&self) -> bool {
        self.denom().is_positive() && self.numer().abs().gcd(self.denom()).is_one()
    }

    pub fn abs(&self) -> Self {
        BigRat(self.0.abs())
    }

    /// Nearest `f64` (round half to even).
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }
}

fn to_int(n: &BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, n.clone())
}

/// Exact sum of two canonical rationals.
pub fn rat_add(a: &BigRat, b: &BigRat) -> BigRat {
    a + b
}

impl From<BigRational> for BigRat {
    fn from(value: BigRational) -> Self {
        // Ratio's arithmetic keeps values reduced; `new` re-reduces raw ones.
        let (num, den) = value.into();
        BigRat(BigRational::new(num, den))
    }
}

impl Default for BigRat {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add<&BigRat> for &BigRat {
    type Output = BigRat;
    fn add(self, rhs: &BigRat) -> BigRat {
        BigRat(&self.0 + &rhs.0)
    }
}

impl Add for BigRat {
    type Output = BigRat;
    fn add(self, rhs: BigRat) -> BigRat {
        BigRat(self.0 + rhs.0)
    }
}

impl AddAssign<&BigRat> for BigRat {
    fn add_assign(&mut self, rhs: &BigRat) {
        self.0 += &rhs.0;
    }
}

impl Sub<&BigRat> for &BigRat {
    type Output = BigRat;
    fn sub(self, rhs: &BigRat) -> BigRat {
        BigRat(&self.0 - &rhs.0)
    }
}

impl Mul<&BigRat> for &BigRat {
    type Output = BigRat;
    fn mul(self, rhs: &BigRat) -> BigRat {
        BigRat(&self.0 * &rhs.0)
    }
}

impl Div<u32> for &BigRat {
    type Output = BigRat;
    fn div(self, rhs: u32) -> BigRat {
        assert!(rhs != 0, "division by zero");
        BigRat(&self.0 / BigRational::from_integer(BigInt::from(rhs)))
    }
}

impl fmt::Display for BigRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn rat(n: i64, d: i64) -> BigRat {
        BigRat::new(BigInt::from(n), BigInt::from(d)).unwrap()
    }

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt(&nat(0)), nat(0));
        assert_eq!(isqrt(&nat(64)), nat(8));
        assert_eq!(isqrt(&nat(21)), nat(4));
        assert_eq!(isqrt_u128(0), 0);
        assert_eq!(isqrt_u128(64), 8);
        assert_eq!(isqrt_u128(21), 4);
        assert_eq!(isqrt_u128(u128::MAX), u64::MAX as u128);
    }

    #[test]
    fn isqrt_beyond_float_mantissa() {
        // (2^53 + 1)² is misjudged by an f64 square root.
        let k = (1u128 << 53) + 1;
        assert_eq!(isqrt_u128(k * k), k);
        assert_eq!(isqrt_u128(k * k - 1), k - 1);
        assert_eq!(perfect_square_root_u128(k * k + 1), None);

        let big = BigUint::from(k) << 300u32;
        let sq = &big * &big;
        assert_eq!(isqrt(&sq), big);
        assert_eq!(isqrt(&(&sq - 1u32)), &big - 1u32);
        assert_eq!(perfect_square_root(&sq), Some(big));
    }

    #[test]
    fn residue_filter_never_rejects_squares() {
        for k in 0..20_000u128 {
            assert!(may_be_square(k * k));
            assert_eq!(perfect_square_root_u128(k * k), Some(k));
        }
        let rejected = (0..10_000u128).filter(|&m| !may_be_square(m)).count();
        assert!(rejected > 9_000);
    }

    #[test]
    fn perfect_square_examples() {
        assert_eq!(perfect_square_root(&nat(0)), Some(nat(0)));
        assert_eq!(perfect_square_root(&nat(64)), Some(nat(8)));
        assert_eq!(perfect_square_root(&nat(21)), None);
    }

    #[test]
    fn rat_add_examples() {
        assert_eq!(rat_add(&rat(1, 2), &rat(1, 2)), rat(1, 1));
        let s = rat_add(&rat_add(&rat(1, 2), &rat(1, 4)), &rat(1, 20));
        assert_eq!(s, rat(4, 5));
        assert_eq!(*s.numer(), BigInt::from(4));
        assert_eq!(*s.denom(), BigInt::from(5));
        assert_eq!(rat_add(&rat(1, 3), &rat(1, 12)), rat(5, 12));
    }

    #[test]
    fn construction_reduces() {
        let r = rat(6, -8);
        assert!(r.is_canonical());
        assert_eq!(*r.numer(), BigInt::from(-3));
        assert_eq!(*r.denom(), BigInt::from(4));
        assert!(BigRat::new(BigInt::one(), BigInt::zero()).is_none());
        assert!(
            BigRat::from(BigRational::new_raw(BigInt::from(4), BigInt::from(8))).is_canonical()
        );
    }

    #[test]
    fn to_f64_rounds_to_nearest() {
        assert_eq!(rat(1, 3).to_f64(), 1.0 / 3.0);
        assert_eq!(rat(13, 36).to_f64(), 13.0 / 36.0);
        assert_eq!(BigRat::zero().to_f64(), 0.0);
    }
}
