//! Real numbers as seen by the generic code: `f64` for the disk and exact
//! rationals for the tree.

use core::cmp::Ordering;
use core::fmt::Debug;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Ordered field operations shared by `f64` and [`BigRational`].
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn zero() -> Self;
    fn from_i64(n: i64) -> Self;
    fn half(&self) -> Self;
    fn abs(&self) -> Self;
    fn to_f64(&self) -> f64;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn max_of(a: Self, b: Self) -> Self {
        match a.partial_cmp(&b) {
            Some(Ordering::Less) => b,
            _ => a,
        }
    }

    fn min_of(a: Self, b: Self) -> Self {
        match a.partial_cmp(&b) {
            Some(Ordering::Greater) => b,
            _ => a,
        }
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn half(&self) -> Self {
        0.5 * self
    }
    fn abs(&self) -> Self {
        num_traits::Float::abs(*self)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn half(&self) -> Self {
        self / BigInt::from(2)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// A value of `[0, +∞]` where `+∞` is a distinct variant rather than a
/// sentinel float.
#[derive(Debug, Clone, PartialEq)]
pub enum Extended<S> {
    Finite(S),
    Infinite,
}

impl<S: Scalar> Extended<S> {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinite)
    }

    pub fn finite(self) -> Option<S> {
        match self {
            Extended::Finite(s) => Some(s),
            Extended::Infinite => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Extended::Finite(s) => s.to_f64(),
            Extended::Infinite => f64::INFINITY,
        }
    }
}
