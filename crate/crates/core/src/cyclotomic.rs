//! Exact cyclotomic polynomials.
//!
//! `Φ_n` for squarefree `n` is obtained from `x^n - 1` by dividing out
//! `Φ_d` for every proper divisor `d`, smallest first. For general `n`,
//! `Φ_n(x) = Φ_rad(n)(x^(n / rad(n)))`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith::{factor, is_prime};
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Default cap on the total number of coefficients held by a cache.
pub const DEFAULT_CACHE_COEFFS: usize = 1 << 24;

/// Memo table for cyclotomic polynomials, safe to share between threads.
///
/// Once `capacity` coefficients are stored, new entries are computed but
/// no longer retained.
pub struct CyclotomicCache {
    capacity: usize,
    inner: Mutex<CacheInner>,
}

#[derive(Default)]
struct CacheInner {
    map: HashMap<u64, Arc<IntPoly>>,
    stored: usize,
}

impl CyclotomicCache {
    pub fn new(capacity: usize) -> Self {
        CyclotomicCache {
            capacity,
            inner: Mutex::new(CacheInner::default()),
        }
    }

    /// `Φ_n`, computed on first request.
    pub fn get(&self, n: u64) -> Result<Arc<IntPoly>> {
        if let Some(hit) = self.inner.lock().unwrap().map.get(&n) {
            return Ok(Arc::clone(hit));
        }
        // The lock is not held while building: construction recurses into `get`.
        let poly = Arc::new(build(n, &mut |d| self.get(d))?);
        let mut inner = self.inner.lock().unwrap();
        if !inner.map.contains_key(&n) && inner.stored + poly.len() <= self.capacity {
            inner.stored += poly.len();
            inner.map.insert(n, Arc::clone(&poly));
        }
        Ok(poly)
    }

    /// Total coefficients currently retained.
    pub fn stored_coeffs(&self) -> usize {
        self.inner.lock().unwrap().stored
    }

    pub fn len(&self) -> usize {
        self.inner.lock().unwrap().map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Default for CyclotomicCache {
    fn default() -> Self {
        CyclotomicCache::new(DEFAULT_CACHE_COEFFS)
    }
}

fn build(n: u64, sub: &mut dyn FnMut(u64) -> Result<Arc<IntPoly>>) -> Result<IntPoly> {
    let f = factor(n)?;
    let rad = f.radical();
    if rad < n {
        let base = sub(rad)?;
        return Ok(base.inflate((n / rad) as usize));
    }
    let mut acc = IntPoly::x_pow_minus_one(n as usize);
    for d in f.divisors() {
        if d == n {
            break;
        }
        acc = acc.exact_div(&*sub(d)?)?;
    }
    Ok(acc)
}

fn global() -> &'static CyclotomicCache {
    static CACHE: OnceLock<CyclotomicCache> = OnceLock::new();
    CACHE.get_or_init(CyclotomicCache::default)
}

/// The `n`th cyclotomic polynomial, memoized process-wide.
pub fn cyclotomic(n: u64) -> Result<Arc<IntPoly>> {
    global().get(n)
}

/// The same construction as [`cyclotomic`] with no memo table at all.
pub fn cyclotomic_uncached(n: u64) -> Result<IntPoly> {
    build(n, &mut |d| cyclotomic_uncached(d).map(Arc::new))
}

/// `A(n)`: the height of `Φ_n`.
pub fn a_function(n: u64) -> Result<u64> {
    cyclotomic(n)?.height_u64().ok_or(Error::MeasureOverflow)
}

/// Whether `Φ_p Φ_{p^2} ... Φ_{p^k}` equals `1 + x + ... + x^(p^k - 1)`.
///
/// Returns `false` when `p` is not prime or `p^k` overflows.
pub fn prefix_product_check(p: u64, k: u32) -> bool {
    if !is_prime(p) {
        return false;
    }
    let Some(len) = p.checked_pow(k) else {
        return false;
    };
    let mut prod = IntPoly::one();
    let mut pk = 1u64;
    for _ in 0..k {
        pk *= p;
        match cyclotomic(pk) {
            Ok(phi) => prod = prod.mul(&phi),
            Err(_) => return false,
        }
    }
    prod == IntPoly::all_ones(len as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{divisors, euler_phi};

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(c.to_vec())
    }

    #[test]
    fn small_examples() {
        assert_eq!(*cyclotomic(1).unwrap(), p(&[-1, 1]));
        assert_eq!(*cyclotomic(7).unwrap(), IntPoly::all_ones(7));
        assert_eq!(*cyclotomic(12).unwrap(), p(&[1, 0, -1, 0, 1]));
        assert!(matches!(cyclotomic(0), Err(Error::InputOutOfRange { .. })));
    }

    #[test]
    fn phi_12_by_direct_division() {
        let mut f = IntPoly::x_pow_minus_one(12);
        for d in [1, 2, 3, 4, 6] {
            f = f.exact_div(&cyclotomic(d).unwrap()).unwrap();
        }
        assert_eq!(f, p(&[1, 0, -1, 0, 1]));
        // Φ_12(x) = Φ_6(x^2)
        assert_eq!(cyclotomic(6).unwrap().inflate(2), f);
    }

    #[test]
    fn phi_105_has_height_two() {
        let phi = cyclotomic(105).unwrap();
        assert_eq!(phi.degree(), Some(48));
        assert_eq!(a_function(105).unwrap(), 2);
        // the famous -2 sits at x^7 and x^41
        assert_eq!(phi.coeff(7), (-2).into());
        assert_eq!(phi.coeff(41), (-2).into());
    }

    #[test]
    fn a_function_examples() {
        for q in [2, 3, 5, 7, 11, 101] {
            assert_eq!(a_function(q).unwrap(), 1);
        }
        assert_eq!(a_function(12).unwrap(), 1);
    }

    #[test]
    fn prefix_products() {
        assert!(prefix_product_check(2, 1));
        assert!(prefix_product_check(3, 2));
        assert!(prefix_product_check(5, 3));
        assert!(prefix_product_check(7, 0));
        assert!(!prefix_product_check(4, 2));
    }

    #[test]
    fn structural_identities() {
        for n in 1..=300u64 {
            let phi = cyclotomic(n).unwrap();
            assert_eq!(phi.degree(), Some(euler_phi(n).unwrap() as usize));
            if n > 1 {
                let c = phi.to_bigints();
                assert!(c.iter().eq(c.iter().rev()), "Φ_{n} is not palindromic");
            }
            if n % 2 == 1 && n > 1 {
                assert_eq!(*cyclotomic(2 * n).unwrap(), phi.negate_variable());
            }
        }
        let prod = divisors(360)
            .unwrap()
            .into_iter()
            .fold(IntPoly::one(), |acc, d| acc.mul(&cyclotomic(d).unwrap()));
        assert_eq!(prod, IntPoly::x_pow_minus_one(360));
    }

    #[test]
    fn memoized_matches_unmemoized() {
        for n in [1, 2, 30, 36, 105, 210, 225, 385] {
            assert_eq!(*cyclotomic(n).unwrap(), cyclotomic_uncached(n).unwrap());
        }
    }

    #[test]
    fn capped_cache_still_answers() {
        let cache = CyclotomicCache::new(10);
        assert_eq!(*cache.get(105).unwrap(), *cyclotomic(105).unwrap());
        assert!(cache.stored_coeffs() <= 10);
        let roomy = CyclotomicCache::new(1000);
        roomy.get(30).unwrap();
        assert_eq!(roomy.len(), 8);
    }
}
