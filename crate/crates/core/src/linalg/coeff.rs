//! Integer coefficient abstraction used by the elimination kernels.
//!
//! Every kernel is written once over [`Coeff`] and run first with checked
//! `i64` arithmetic; on overflow it is rerun with `BigInt`. Results are
//! identical either way, only the speed differs.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Raised by a checked operation that left the machine-word range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Overflow;

pub(crate) type Checked<T> = std::result::Result<T, Overflow>;

pub(crate) trait Coeff: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn cmp_abs(&self, other: &Self) -> Ordering;
    fn add(&self, o: &Self) -> Checked<Self>;
    fn sub(&self, o: &Self) -> Checked<Self>;
    fn mul(&self, o: &Self) -> Checked<Self>;
    fn neg(&self) -> Checked<Self>;
    /// Quotient rounded toward zero.
    fn quot(&self, o: &Self) -> Checked<Self>;
    fn divides(&self, o: &Self) -> bool;
    fn from_big(b: &BigInt) -> Checked<Self>;
    fn to_big(&self) -> BigInt;

    fn is_unit(&self) -> bool {
        self.cmp_abs(&Self::one()) == Ordering::Equal
    }

    /// `self - c * o`
    fn sub_mul(&self, c: &Self, o: &Self) -> Checked<Self> {
        self.sub(&c.mul(o)?)
    }
}

impl Coeff for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn add(&self, o: &Self) -> Checked<Self> {
        self.checked_add(*o).ok_or(Overflow)
    }
    fn sub(&self, o: &Self) -> Checked<Self> {
        self.checked_sub(*o).ok_or(Overflow)
    }
    fn mul(&self, o: &Self) -> Checked<Self> {
        self.checked_mul(*o).ok_or(Overflow)
    }
    fn neg(&self) -> Checked<Self> {
        self.checked_neg().ok_or(Overflow)
    }
    fn quot(&self, o: &Self) -> Checked<Self> {
        self.checked_div(*o).ok_or(Overflow)
    }
    fn divides(&self, o: &Self) -> bool {
        if *self == 0 {
            *o == 0
        } else {
            o.checked_rem(*self).is_none_or(|r| r == 0)
        }
    }
    fn from_big(b: &BigInt) -> Checked<Self> {
        b.to_i64().ok_or(Overflow)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coeff for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn add(&self, o: &Self) -> Checked<Self> {
        Ok(self + o)
    }
    fn sub(&self, o: &Self) -> Checked<Self> {
        Ok(self - o)
    }
    fn mul(&self, o: &Self) -> Checked<Self> {
        Ok(self * o)
    }
    fn neg(&self) -> Checked<Self> {
        Ok(-self)
    }
    fn quot(&self, o: &Self) -> Checked<Self> {
        Ok(self / o)
    }
    fn divides(&self, o: &Self) -> bool {
        if Zero::is_zero(self) {
            Zero::is_zero(o)
        } else {
            Zero::is_zero(&(o % self))
        }
    }
    fn from_big(b: &BigInt) -> Checked<Self> {
        Ok(b.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Runs `f` over `i64`, falling back to `BigInt` if any step overflows.
pub(crate) fn with_fallback<R>(small: impl FnOnce() -> Checked<R>, big: impl FnOnce() -> Checked<R>) -> R {
    match small() {
        Ok(r) => r,
        Err(Overflow) => {
            log::debug!("i64 elimination overflowed; retrying with arbitrary precision");
            big().expect("arbitrary precision arithmetic cannot overflow")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checked_i64_reports_overflow() {
        assert_eq!(i64::MAX.add(&1), Err(Overflow));
        assert_eq!(i64::MIN.neg(), Err(Overflow));
        assert!(3i64.divides(&-9));
        assert!(!0i64.divides(&1));
        assert!((-1i64).is_unit());
    }

    #[test]
    fn bigint_never_overflows() {
        let big = BigInt::from(i64::MAX);
        assert_eq!(Coeff::add(&big, &BigInt::from(1)).unwrap(), BigInt::from(i64::MAX) + 1);
        assert!(i64::from_big(&(big + 1)).is_err());
    }
}
