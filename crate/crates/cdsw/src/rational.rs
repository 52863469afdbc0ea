//! Arbitrary-precision rational scalars.
//!
//! Every coefficient in the crate is a `Rat`. No floating point anywhere:
//! zero-testing must be exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;
pub type Int = BigInt;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Exact fraction `n/d`.
pub fn frac(n: i64, d: i64) -> Rat {
    assert!(d != 0);
    Rat::new(Int::from(n), Int::from(d))
}

pub fn is_zero(x: &Rat) -> bool {
    x.is_zero()
}

pub fn rat_one() -> Rat {
    Rat::one()
}

pub fn rat_zero() -> Rat {
    Rat::zero()
}

/// Exact conversion to `i64`; panics if the value is not an integer that fits.
pub fn to_i64(x: &Rat) -> i64 {
    assert!(x.is_integer(), "expected integer, got {x}");
    let n = x.numer();
    i64::try_from(n.clone()).expect("integer out of i64 range")
}

/// True iff `x` is a (possibly negative) integer.
pub fn is_integer(x: &Rat) -> bool {
    x.is_integer()
}

/// Bit length of a big integer's magnitude; used as a pivot-size heuristic.
pub fn bit_len(x: &Int) -> u64 {
    x.abs().bits()
}
