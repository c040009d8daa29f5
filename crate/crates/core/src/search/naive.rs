//! Reference enumerator: every subset product is multiplied out on its
//! own with [`IntPoly::mul`], with no sharing and no binomial tricks.
//! Slow, and kept deliberately independent of the engine.

use super::Measure;
use crate::cyclotomic::cyclotomic;
use crate::error::{Error, Result};
use crate::poly::IntPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaiveOutput {
    pub value: u64,
    /// Every maximizing subset, ascending, sorted lexicographically.
    pub maximizers: Vec<Vec<u64>>,
}

/// Maximum of `measure` over all `2^k` subset products of `divisors`.
pub fn naive_subset_max(divisors: &[u64], measure: Measure) -> Result<NaiveOutput> {
    if divisors.len() > 24 {
        return Err(Error::InvalidParams(
            "naive enumeration is limited to 24 divisors".into(),
        ));
    }
    let mut sorted = divisors.to_vec();
    sorted.sort_unstable();
    let phis = sorted.iter().map(|&d| cyclotomic(d)).collect::<Result<Vec<_>>>()?;

    let mut value = 0u64;
    let mut maximizers = Vec::new();
    for mask in 0u32..1 << sorted.len() {
        let mut prod = IntPoly::one();
        let mut subset = Vec::new();
        for (i, phi) in phis.iter().enumerate() {
            if mask >> i & 1 == 1 {
                prod = prod.mul(phi);
                subset.push(sorted[i]);
            }
        }
        let m = measure.of(&prod).ok_or(Error::MeasureOverflow)?;
        if m > value {
            value = m;
            maximizers.clear();
        }
        if m == value {
            maximizers.push(subset);
        }
    }
    maximizers.sort_unstable();
    Ok(NaiveOutput { value, maximizers })
}

/// [`naive_subset_max`] over all divisors of `n`.
pub fn naive(n: u64, measure: Measure) -> Result<NaiveOutput> {
    naive_subset_max(&crate::arith::divisors(n)?, measure)
}
