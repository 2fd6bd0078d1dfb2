//! Witness construction and exact verification.
//!
//! A witness for `a/N` is a tuple `(x, t, q, y, z)` of naturals with
//! `d = a·x − N ≥ 1`,
//!
//! ```text
//! q² = t²·d² − 2·t·N·x,   y = t·d − q,   z = t·d + q
//! ```
//!
//! Then `y·z = 2·t·N·x` and `y + z = 2·t·d`, so `1/y + 1/z = d/(N·x)` and
//! `1/x + 1/y + 1/z = a/N`. The Erdős–Straus case is `a = 4`.

use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Pow, Zero};

use crate::exactmath::{perfect_square_root, BigRat};

/// The Erdős–Straus numerator.
pub const DEFAULT_NUMERATOR: u32 = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceError {
    /// `n` must be at least 2.
    BaseTooSmall(u64),
    /// `s` must be at least 1.
    ZeroExponent,
}

impl fmt::Display for InstanceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceError::BaseTooSmall(n) => write!(f, "n must be at least 2, got {n}"),
            InstanceError::ZeroExponent => write!(f, "s must be at least 1"),
        }
    }
}

/// The pair `(n, s)` together with the denominator `N = n^s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    n: u64,
    s: u32,
    power: BigUint,
}

impl Instance {
    pub fn new(n: u64, s: u32) -> Result<Self, InstanceError> {
        if n < 2 {
            return Err(InstanceError::BaseTooSmall(n));
        }
        if s == 0 {
            return Err(InstanceError::ZeroExponent);
        }
        let power = Pow::pow(BigUint::from(n), s);
        Ok(Instance { n, s, power })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// `N = n^s`.
    pub fn denominator(&self) -> &BigUint {
        &self.power
    }

    pub fn target(&self, numerator: u32) -> Target {
        Target::with_numerator(numerator, self.power.clone())
    }
}

/// A fraction `a/N` to be written as `1/x + 1/y + 1/z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Target {
    numerator: u32,
    denominator: BigUint,
}

/// A verified-shape solution tuple. See the module docs for the relations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Witness {
    pub x: BigUint,
    pub t: BigUint,
    pub q: BigUint,
    pub y: BigUint,
    pub z: BigUint,
}

impl Witness {
    /// `(x, y, z)` sorted ascending.
    pub fn sorted_triple(&self) -> [BigUint; 3] {
        let mut v = [self.x.clone(), self.y.clone(), self.z.clone()];
        v.sort();
        v
    }

    pub fn max_denominator(&self) -> &BigUint {
        (&self.x).max(&self.y).max(&self.z)
    }

    /// `1/x + 1/y + 1/z`.
    pub fn reciprocal_sum(&self) -> BigRat {
        let mut sum = BigRat::unit(&self.x);
        sum += &BigRat::unit(&self.y);
        sum += &BigRat::unit(&self.z);
        sum
    }
}

fn int(n: &BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, n.clone())
}

impl Target {
    /// `4/N`.
    pub fn new(denominator: BigUint) -> Self {
        Self::with_numerator(DEFAULT_NUMERATOR, denominator)
    }

    pub fn with_numerator(numerator: u32, denominator: BigUint) -> Self {
        Target {
            numerator,
            denominator,
        }
    }

    pub fn numerator(&self) -> u32 {
        self.numerator
    }

    pub fn denominator(&self) -> &BigUint {
        &self.denominator
    }

    /// `a/N` reduced.
    pub fn value(&self) -> BigRat {
        BigRat::new(BigInt::from(self.numerator), int(&self.denominator))
            .expect("denominator is nonzero")
    }

    /// `⌊N/a⌋ + 1`, the smallest `x` with `a·x − N ≥ 1`.
    pub fn x_lower_bound(&self) -> BigUint {
        &self.denominator / self.numerator + 1u32
    }

    /// `a·x − N` as a signed value.
    pub fn gap(&self, x: &BigUint) -> BigInt {
        int(&(x * self.numerator)) - int(&self.denominator)
    }

    /// `Δ = t²(a·x − N)² − 2·t·N·x`; may be negative.
    pub fn discriminant(&self, x: &BigUint, t: &BigUint) -> BigInt {
        let td = int(t) * self.gap(x);
        &td * &td - int(&(t * &self.denominator * x)) * 2
    }

    /// `max(1, ⌊2·N·x / (a·x − N)²⌋)`.
    ///
    /// Panics if `x` is below [`Target::x_lower_bound`].
    pub fn t_min(&self, x: &BigUint) -> BigUint {
        let d = self.positive_gap(x).expect("x below the lower bound");
        let q = (&self.denominator * x * 2u32) / (&d * &d);
        if q.is_zero() {
            BigUint::one()
        } else {
            q
        }
    }

    fn positive_gap(&self, x: &BigUint) -> Option<BigUint> {
        let ax = x * self.numerator;
        if ax > self.denominator {
            Some(ax - &self.denominator)
        } else {
            None
        }
    }

    /// The witness at `(x, t)` when `Δ` is a perfect square and `y > 0`.
    ///
    /// Returns `None` for `x` below the lower bound or `t = 0`.
    pub fn build_witness(&self, x: &BigUint, t: &BigUint) -> Option<Witness> {
        if t.is_zero() {
            return None;
        }
        let d = self.positive_gap(x)?;
        let td = t * &d;
        let square = &td * &td;
        let offset = t * &self.denominator * x * 2u32;
        if offset > square {
            return None;
        }
        let q = perfect_square_root(&(&square - &offset))?;
        if q >= td {
            return None;
        }
        let y = &td - &q;
        let z = &td + &q;
        if y.is_zero() || z.is_zero() {
            return None;
        }
        Some(Witness {
            x: x.clone(),
            t: t.clone(),
            q,
            y,
            z,
        })
    }

    /// Checks every defining relation of `w` exactly:
    ///
    /// * `q² = t²(a·x − N)² − 2·t·N·x`,
    /// * `y·z = 2·t·N·x` and `y + z = 2·t·(a·x − N)`,
    /// * `1/x + 1/y + 1/z = a/N` as reduced rationals.
    pub fn verify(&self, w: &Witness) -> bool {
        if w.x.is_zero() || w.t.is_zero() || w.y.is_zero() || w.z.is_zero() {
            return false;
        }
        let Some(d) = self.positive_gap(&w.x) else {
            return false;
        };
        let qq = int(&(&w.q * &w.q));
        if qq != self.discriminant(&w.x, &w.t) {
            return false;
        }
        let product = &w.t * &self.denominator * &w.x * 2u32;
        if &w.y * &w.z != product {
            return false;
        }
        if &w.y + &w.z != &w.t * &d * 2u32 {
            return false;
        }
        w.reciprocal_sum() == self.value()
    }
}

/// `⌊N/4⌋ + 1`.
pub fn x_lower_bound(denominator: &BigUint) -> BigUint {
    Target::new(denominator.clone()).x_lower_bound()
}

/// `t²(4x − N)² − 2·t·N·x`.
pub fn discriminant(denominator: &BigUint, x: &BigUint, t: &BigUint) -> BigInt {
    Target::new(denominator.clone()).discriminant(x, t)
}

/// `max(1, ⌊2·N·x / (4x − N)²⌋)`. Panics if `4x ≤ N`.
pub fn t_min(denominator: &BigUint, x: &BigUint) -> BigUint {
    Target::new(denominator.clone()).t_min(x)
}

pub fn build_witness(denominator: &BigUint, x: &BigUint, t: &BigUint) -> Option<Witness> {
    Target::new(denominator.clone()).build_witness(x, t)
}

pub fn verify_witness(denominator: &BigUint, w: &Witness) -> bool {
    Target::new(denominator.clone()).verify(w)
}
