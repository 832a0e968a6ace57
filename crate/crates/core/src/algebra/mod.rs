//! Exact arithmetic in the deformation variable `b`.
//!
//! Everything is expressed in `b`; the Jack parameter `α = b + 1` only shows up
//! at API boundaries through [`alpha_shift`] and [`alpha_unshift`].

mod poly;
mod ratfn;
mod serde_impl;
mod zpoly;

pub use poly::BPoly;
pub use ratfn::BRatFn;
pub use serde_impl::{format_rat, parse_rat};
pub(crate) use zpoly::ZPoly;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type BigRat = BigRational;

pub fn rat(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_from_big(n: BigInt) -> BigRat {
    BigRat::from_integer(n)
}

/// Evaluates `p` at `b = x`.
pub fn poly_eval(p: &BPoly, x: &BigRat) -> BigRat {
    p.eval(x)
}

/// Reduces `num/den` to canonical form.
pub fn ratfn_normalize(num: BPoly, den: BPoly) -> crate::Result<BRatFn> {
    BRatFn::new(num, den)
}

/// Rewrites a polynomial in `α` as a polynomial in `b` via `α = b + 1`.
pub fn alpha_shift(p: &BPoly) -> BPoly {
    p.taylor_shift(&BigRat::one())
}

/// Inverse of [`alpha_shift`]: rewrites a polynomial in `b` in terms of `α`.
pub fn alpha_unshift(p: &BPoly) -> BPoly {
    p.taylor_shift(&-BigRat::one())
}

/// Additive and multiplicative structure shared by the coefficient types used
/// in profile tables.
pub trait Ring: Clone + PartialEq + Send + Sync {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn scale(&self, c: &BigRat) -> Self;
}

impl Ring for BPoly {
    fn zero() -> Self {
        BPoly::zero()
    }
    fn is_zero(&self) -> bool {
        BPoly::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &BigRat) -> Self {
        BPoly::scale(self, c)
    }
}

impl Ring for BRatFn {
    fn zero() -> Self {
        BRatFn::zero()
    }
    fn is_zero(&self) -> bool {
        BRatFn::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &BigRat) -> Self {
        BRatFn::scale(self, c)
    }
}

pub(crate) fn is_integer(x: &BigRat) -> bool {
    x.denom().is_one()
}

pub(crate) fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
