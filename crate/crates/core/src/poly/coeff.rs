use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficient ring used by the slice kernels.
///
/// Machine-word arithmetic never panics or traps: every operation that
/// would leave the signed 64-bit range sets `ovf` and returns a wrapped
/// value. Callers discard the result and redo the operation over
/// `BigInt` whenever the flag is raised.
pub(crate) trait Coeff: Clone + PartialEq + Send + Sync + fmt::Debug + 'static {
    /// True for the fixed-width machine-word ring.
    const MACHINE_WORD: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;

    /// `self += rhs`
    fn add_assign(&mut self, rhs: &Self, ovf: &mut bool);
    /// `self -= rhs`
    fn sub_assign(&mut self, rhs: &Self, ovf: &mut bool);
    /// `self = rhs - self`
    fn rsub_assign(&mut self, rhs: &Self, ovf: &mut bool);
    /// `self += a * b`
    fn mul_add(&mut self, a: &Self, b: &Self, ovf: &mut bool);
    /// `self -= a * b`
    fn mul_sub(&mut self, a: &Self, b: &Self, ovf: &mut bool);
    /// Exact quotient `self / d`, `None` when `d` does not divide `self`.
    fn div_exact(&self, d: &Self, ovf: &mut bool) -> Option<Self>;

    /// `|self|` as a `u64`, `None` if it does not fit.
    fn abs_u64(&self) -> Option<u64>;

    /// The slice as machine words, when that is what it is.
    fn as_words(_c: &[Self]) -> Option<&[i64]> {
        None
    }

    /// Largest `|c|` over the slice, `None` if it does not fit in `u64`.
    fn slice_height(c: &[Self]) -> Option<u64> {
        c.iter().try_fold(0u64, |m, v| Some(m.max(v.abs_u64()?)))
    }

    /// Sum of `|c|` over the slice, `None` if it does not fit in `u64`.
    fn slice_length(c: &[Self]) -> Option<u64> {
        c.iter().try_fold(0u64, |s, v| s.checked_add(v.abs_u64()?))
    }
}

impl Coeff for i64 {
    const MACHINE_WORD: bool = true;

    #[inline(always)]
    fn zero() -> Self {
        0
    }
    #[inline(always)]
    fn one() -> Self {
        1
    }
    #[inline(always)]
    fn from_i64(v: i64) -> Self {
        v
    }
    #[inline(always)]
    fn is_zero(&self) -> bool {
        *self == 0
    }
    #[inline(always)]
    fn add_assign(&mut self, rhs: &Self, ovf: &mut bool) {
        let (s, o) = self.overflowing_add(*rhs);
        *self = s;
        *ovf |= o;
    }
    #[inline(always)]
    fn sub_assign(&mut self, rhs: &Self, ovf: &mut bool) {
        let (s, o) = self.overflowing_sub(*rhs);
        *self = s;
        *ovf |= o;
    }
    #[inline(always)]
    fn rsub_assign(&mut self, rhs: &Self, ovf: &mut bool) {
        let (s, o) = rhs.overflowing_sub(*self);
        *self = s;
        *ovf |= o;
    }
    #[inline(always)]
    fn mul_add(&mut self, a: &Self, b: &Self, ovf: &mut bool) {
        let (p, o1) = a.overflowing_mul(*b);
        let (s, o2) = self.overflowing_add(p);
        *self = s;
        *ovf |= o1 | o2;
    }
    #[inline(always)]
    fn mul_sub(&mut self, a: &Self, b: &Self, ovf: &mut bool) {
        let (p, o1) = a.overflowing_mul(*b);
        let (s, o2) = self.overflowing_sub(p);
        *self = s;
        *ovf |= o1 | o2;
    }
    fn div_exact(&self, d: &Self, ovf: &mut bool) -> Option<Self> {
        match self.checked_rem(*d) {
            Some(0) => Some(self / d),
            Some(_) => None,
            // i64::MIN / -1
            None => {
                *ovf = true;
                Some(0)
            }
        }
    }
    #[inline(always)]
    fn abs_u64(&self) -> Option<u64> {
        Some(self.unsigned_abs())
    }
    fn as_words(c: &[Self]) -> Option<&[i64]> {
        Some(c)
    }
    fn slice_height(c: &[Self]) -> Option<u64> {
        Some(c.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0))
    }
    fn slice_length(c: &[Self]) -> Option<u64> {
        let s: u128 = c.iter().map(|v| v.unsigned_abs() as u128).sum();
        s.try_into().ok()
    }
}

impl Coeff for BigInt {
    const MACHINE_WORD: bool = false;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign(&mut self, rhs: &Self, _ovf: &mut bool) {
        *self += rhs;
    }
    fn sub_assign(&mut self, rhs: &Self, _ovf: &mut bool) {
        *self -= rhs;
    }
    fn rsub_assign(&mut self, rhs: &Self, _ovf: &mut bool) {
        *self = rhs - &*self;
    }
    fn mul_add(&mut self, a: &Self, b: &Self, _ovf: &mut bool) {
        *self += a * b;
    }
    fn mul_sub(&mut self, a: &Self, b: &Self, _ovf: &mut bool) {
        *self -= a * b;
    }
    fn div_exact(&self, d: &Self, _ovf: &mut bool) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        Zero::is_zero(&r).then_some(q)
    }
    fn abs_u64(&self) -> Option<u64> {
        self.abs().to_u64()
    }
}
