//! Dense univariate polynomials with exact integer coefficients.
//!
//! Coefficients live in machine words while every value fits in `i64`.
//! Any operation that overflows is redone over arbitrary-precision
//! integers and its result is marked *escalated*. The two storage forms
//! compare equal whenever the coefficient values are equal.

pub(crate) mod coeff;
pub(crate) mod kernels;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use coeff::Coeff;
use kernels::{long_div, mul_slices, DivOutcome};

/// Operand size (in coefficients) at which multiplication switches from
/// schoolbook to Karatsuba when both operands are at least this long.
pub const DEFAULT_KARATSUBA_THRESHOLD: usize = 48;

/// Tuning knobs for [`IntPoly::mul_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MulConfig {
    pub karatsuba_threshold: usize,
}

impl Default for MulConfig {
    fn default() -> Self {
        MulConfig {
            karatsuba_threshold: DEFAULT_KARATSUBA_THRESHOLD,
        }
    }
}

#[derive(Clone)]
enum Repr {
    Word(Vec<i64>),
    Big(Vec<BigInt>),
}

/// A polynomial in `Z[x]`, stored low-to-high.
///
/// The top stored coefficient is always nonzero; the zero polynomial is
/// the empty sequence.
#[derive(Clone)]
pub struct IntPoly {
    repr: Repr,
}

fn trim<T: Coeff>(mut v: Vec<T>) -> Vec<T> {
    while v.last().is_some_and(Coeff::is_zero) {
        v.pop();
    }
    v
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly {
            repr: Repr::Word(Vec::new()),
        }
    }

    pub fn one() -> Self {
        IntPoly::from_coeffs(vec![1])
    }

    /// Builds a polynomial from machine-word coefficients, low degree first.
    /// Trailing zeros are dropped.
    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        IntPoly {
            repr: Repr::Word(trim(coeffs)),
        }
    }

    /// Builds an escalated polynomial from arbitrary-precision coefficients.
    /// The result stays in arbitrary precision even if every value is small;
    /// use [`IntPoly::compact`] to move it back to machine words.
    pub fn from_bigints(coeffs: Vec<BigInt>) -> Self {
        IntPoly {
            repr: Repr::Big(trim(coeffs)),
        }
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        if n == 0 {
            return IntPoly::zero();
        }
        let mut c = vec![0i64; n + 1];
        c[0] = -1;
        c[n] = 1;
        IntPoly::from_coeffs(c)
    }

    /// `1 + x + ... + x^(len-1)`.
    pub fn all_ones(len: usize) -> Self {
        IntPoly::from_coeffs(vec![1; len])
    }

    pub fn is_zero(&self) -> bool {
        self.is_empty()
    }

    /// Number of stored coefficients (degree + 1, or 0 for the zero polynomial).
    pub fn len(&self) -> usize {
        match &self.repr {
            Repr::Word(c) => c.len(),
            Repr::Big(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.len().checked_sub(1)
    }

    /// True when the coefficients are held in arbitrary precision.
    pub fn is_escalated(&self) -> bool {
        matches!(self.repr, Repr::Big(_))
    }

    /// The same polynomial forced into arbitrary precision.
    pub fn escalate(self) -> Self {
        match self.repr {
            Repr::Word(c) => IntPoly::from_bigints(c.into_iter().map(BigInt::from).collect()),
            big => IntPoly { repr: big },
        }
    }

    /// The same polynomial in machine words when every coefficient fits.
    pub fn compact(self) -> Self {
        match self.repr {
            Repr::Big(c) => match c.iter().map(ToPrimitive::to_i64).collect::<Option<Vec<_>>>() {
                Some(words) => IntPoly::from_coeffs(words),
                None => IntPoly { repr: Repr::Big(c) },
            },
            word => IntPoly { repr: word },
        }
    }

    /// Borrow the machine-word coefficients, if that is the current storage.
    pub fn as_words(&self) -> Option<&[i64]> {
        match &self.repr {
            Repr::Word(c) => Some(c),
            Repr::Big(_) => None,
        }
    }

    /// Coefficients as `i64` if every value fits, regardless of storage.
    pub fn to_words(&self) -> Option<Vec<i64>> {
        match &self.repr {
            Repr::Word(c) => Some(c.clone()),
            Repr::Big(c) => c.iter().map(ToPrimitive::to_i64).collect(),
        }
    }

    pub fn to_bigints(&self) -> Vec<BigInt> {
        match &self.repr {
            Repr::Word(c) => c.iter().map(|&v| BigInt::from(v)).collect(),
            Repr::Big(c) => c.clone(),
        }
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        match &self.repr {
            Repr::Word(c) => c.get(i).map_or_else(|| BigInt::from(0), |&v| BigInt::from(v)),
            Repr::Big(c) => c.get(i).cloned().unwrap_or_default(),
        }
    }

    /// Exact product with the default multiplication threshold.
    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        self.mul_with(other, &MulConfig::default())
    }

    /// Exact product. Schoolbook below `cfg.karatsuba_threshold`, Karatsuba above.
    pub fn mul_with(&self, other: &IntPoly, cfg: &MulConfig) -> IntPoly {
        let thr = cfg.karatsuba_threshold;
        if let (Repr::Word(a), Repr::Word(b)) = (&self.repr, &other.repr) {
            let mut ovf = false;
            let prod = mul_slices(a, b, thr, &mut ovf);
            if !ovf {
                return IntPoly::from_coeffs(prod);
            }
        }
        let mut ovf = false;
        let prod = mul_slices(&self.to_bigints(), &other.to_bigints(), thr, &mut ovf);
        IntPoly::from_bigints(prod)
    }

    /// Exact quotient `self / divisor`.
    ///
    /// Fails with [`Error::NotDivisible`] when the division leaves a
    /// remainder or when `divisor` is zero.
    pub fn exact_div(&self, divisor: &IntPoly) -> Result<IntPoly> {
        if divisor.is_zero() {
            return Err(Error::NotDivisible);
        }
        if let (Repr::Word(a), Repr::Word(b)) = (&self.repr, &divisor.repr) {
            match long_div(a, b) {
                DivOutcome::Quotient(q) => return Ok(IntPoly::from_coeffs(q)),
                DivOutcome::NotDivisible => return Err(Error::NotDivisible),
                DivOutcome::Overflow => {}
            }
        }
        match long_div(&self.to_bigints(), &divisor.to_bigints()) {
            DivOutcome::Quotient(q) => Ok(IntPoly::from_bigints(q)),
            _ => Err(Error::NotDivisible),
        }
    }

    /// `f(x^m)`. Panics if `m == 0`.
    pub fn inflate(&self, m: usize) -> IntPoly {
        assert!(m >= 1, "inflation factor must be positive");
        if m == 1 || self.len() <= 1 {
            return self.clone();
        }
        fn spread<T: Coeff>(c: &[T], m: usize) -> Vec<T> {
            let mut out = vec![T::zero(); (c.len() - 1) * m + 1];
            for (i, v) in c.iter().enumerate() {
                out[i * m] = v.clone();
            }
            out
        }
        match &self.repr {
            Repr::Word(c) => IntPoly::from_coeffs(spread(c, m)),
            Repr::Big(c) => IntPoly::from_bigints(spread(c, m)),
        }
    }

    /// `f(-x)`.
    pub fn negate_variable(&self) -> IntPoly {
        match &self.repr {
            Repr::Word(c) => IntPoly::from_coeffs(
                c.iter()
                    .enumerate()
                    .map(|(i, &v)| if i % 2 == 1 { -v } else { v })
                    .collect(),
            ),
            Repr::Big(c) => IntPoly::from_bigints(
                c.iter()
                    .enumerate()
                    .map(|(i, v)| if i % 2 == 1 { -v } else { v.clone() })
                    .collect(),
            ),
        }
    }

    /// Largest absolute value of a coefficient; 0 for the zero polynomial.
    pub fn height(&self) -> BigUint {
        match &self.repr {
            Repr::Word(c) => BigUint::from(c.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0)),
            Repr::Big(c) => c
                .iter()
                .map(|v| v.abs().to_biguint().expect("absolute value"))
                .max()
                .unwrap_or_default(),
        }
    }

    /// Sum of the absolute values of the coefficients.
    pub fn length(&self) -> BigUint {
        match &self.repr {
            Repr::Word(c) => {
                let s: u128 = c.iter().map(|v| v.unsigned_abs() as u128).sum();
                BigUint::from(s)
            }
            Repr::Big(c) => c.iter().map(|v| v.abs().to_biguint().expect("absolute value")).sum(),
        }
    }

    /// [`IntPoly::height`] as a `u64`, `None` if it does not fit.
    pub fn height_u64(&self) -> Option<u64> {
        self.height().to_u64()
    }

    /// [`IntPoly::length`] as a `u64`, `None` if it does not fit.
    pub fn length_u64(&self) -> Option<u64> {
        self.length().to_u64()
    }
}

impl PartialEq for IntPoly {
    fn eq(&self, other: &Self) -> bool {
        match (&self.repr, &other.repr) {
            (Repr::Word(a), Repr::Word(b)) => a == b,
            (Repr::Big(a), Repr::Big(b)) => a == b,
            _ => self.len() == other.len() && self.to_bigints() == other.to_bigints(),
        }
    }
}

impl Eq for IntPoly {}

impl From<Vec<i64>> for IntPoly {
    fn from(c: Vec<i64>) -> Self {
        IntPoly::from_coeffs(c)
    }
}

impl std::ops::Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::mul(self, rhs)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.is_escalated() { "big" } else { "word" };
        write!(f, "IntPoly[{tag}]({self})")
    }
}

/// Conventional high-to-low rendering, e.g. `x^4 - x^2 + 1`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let coeffs = self.to_bigints();
        let mut first = true;
        for (i, c) in coeffs.iter().enumerate().rev() {
            if Zero::is_zero(c) {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag == BigInt::from(1);
            match i {
                0 => write!(f, "{mag}")?,
                1 if unit => f.write_str("x")?,
                1 => write!(f, "{mag}x")?,
                _ if unit => write!(f, "x^{i}")?,
                _ => write!(f, "{mag}x^{i}")?,
            }
        }
        Ok(())
    }
}
