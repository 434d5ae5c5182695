//! Exact coefficient rings.
//!
//! Every coefficient type implements [`Scalar`]. Rings whose elements carry a
//! runtime modulus (prime fields, `Z/p^N`, quotient rings) expose it through
//! [`Scalar::Ctx`], so that zero and one can be built without a sample element.

mod fp;
mod quot;
mod rational;
mod unipoly;
mod zpn;

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

pub use fp::{FpElem, PrimeField};
pub use quot::{quot_reduce, QuotElem, QuotModulus};
pub use rational::{parse_rational, rational_from_i64, Rational};
pub use unipoly::UniPoly;
pub use zpn::{ZpnCtx, ZpnElem, ZpnJson};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RingError {
    /// Division by a zero divisor. For quotient rings `witness` is the
    /// nontrivial monic gcd of the representative with the modulus.
    #[error("{value} is not a unit")]
    NotAUnit {
        value: String,
        witness: Option<UniPoly>,
    },
    #[error("mixed moduli: {0} vs {1}")]
    MixedModuli(String, String),
    #[error("denominator {den} vanishes in {ring}")]
    BadDenominator { den: String, ring: String },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
}

/// An element of an exact commutative ring.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Runtime description of the ring (modulus, precision, ...).
    type Ctx: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(ctx: &Self::Ctx, v: i64) -> Self;
    /// Image of a rational number; fails when the denominator is not invertible.
    fn from_rational(ctx: &Self::Ctx, q: &Rational) -> Result<Self, RingError>;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn inv(&self) -> Result<Self, RingError>;

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

/// Marker for coefficient rings in which every nonzero element is expected to
/// be invertible. `QuotElem` may still report a zero divisor, which callers
/// use to split the modulus.
pub trait Field: Scalar {}

/// Inverse of `a` modulo `m` for `gcd(a, m) = 1`.
pub(crate) fn inv_mod_u64(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

pub(crate) fn is_prime_u64(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_mod_small() {
        assert_eq!(inv_mod_u64(2, 125), Some(63));
        assert_eq!(inv_mod_u64(5, 125), None);
        assert_eq!(inv_mod_u64(3, 5), Some(2));
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&p| is_prime_u64(p)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
