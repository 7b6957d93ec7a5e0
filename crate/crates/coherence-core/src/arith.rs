//! Exact rational scalars.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Arbitrary-precision rational number; the only scalar type in the engine.
pub type Rat = num_rational::BigRational;

/// Rational from a machine integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `p/q`; panics on `q = 0`.
pub fn rat_frac(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn is_zero(r: &Rat) -> bool {
    r.is_zero()
}

pub fn one() -> Rat {
    Rat::one()
}

pub fn zero() -> Rat {
    Rat::zero()
}

/// `base^exp` for a rational base.
pub fn rat_pow(base: &Rat, exp: usize) -> Rat {
    let mut acc = one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}
