//! Factorization and the arithmetic functions built on it.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest `n` accepted by [`factor`].
pub const DEFAULT_FACTOR_BOUND: u64 = i64::MAX as u64;

/// Prime factorization `n = p1^a1 * ... * pt^at`, primes strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    /// Builds a factorization from `(prime, exponent)` pairs.
    ///
    /// Rejects unsorted or repeated primes, zero exponents, composite
    /// "primes" and products that overflow `u64`.
    pub fn from_pairs(pairs: Vec<(u64, u32)>) -> Result<Self> {
        let mut prev = 1;
        let mut n: u64 = 1;
        for &(p, e) in &pairs {
            if p <= prev || e == 0 || !is_prime(p) {
                return Err(Error::InvalidParams(format!("bad factor {p}^{e}")));
            }
            prev = p;
            n = p
                .checked_pow(e)
                .and_then(|pe| n.checked_mul(pe))
                .ok_or(Error::InvalidParams("factorization overflows u64".into()))?;
        }
        Ok(Factorization { pairs })
    }

    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    /// The factored number.
    pub fn value(&self) -> u64 {
        self.pairs.iter().map(|&(p, e)| p.pow(e)).product()
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.pairs.iter().map(|&(p, _)| p)
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_squarefree(&self) -> bool {
        self.pairs.iter().all(|&(_, e)| e == 1)
    }

    pub fn radical(&self) -> u64 {
        self.primes().product()
    }

    pub fn num_divisors(&self) -> usize {
        self.pairs.iter().map(|&(_, e)| e as usize + 1).product()
    }

    /// All divisors in ascending order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.pairs {
            let base = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..base {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }

    pub fn euler_phi(&self) -> u64 {
        self.pairs.iter().map(|&(p, e)| (p - 1) * p.pow(e - 1)).product()
    }

    pub fn mobius(&self) -> i8 {
        if !self.is_squarefree() {
            0
        } else if self.pairs.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// Canonical form: ascending primes joined by `*`, exponent 1 omitted,
/// e.g. `3*31*1009` or `7^2*83^2`. The empty factorization prints as `1`.
impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return f.write_str("1");
        }
        for (i, &(p, e)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Factorization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Factorization { pairs: Vec::new() });
        }
        let bad = || Error::InvalidParams(format!("malformed factorization `{s}`"));
        let pairs = s
            .split('*')
            .map(|term| {
                let (p, e) = match term.split_once('^') {
                    Some((p, e)) => (p, e.parse::<u32>().map_err(|_| bad())?),
                    None => (term, 1),
                };
                Ok((p.parse::<u64>().map_err(|_| bad())?, e))
            })
            .collect::<Result<Vec<_>>>()?;
        Factorization::from_pairs(pairs)
    }
}

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d <= n / d {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Primes `p` with `lo <= p <= hi`.
pub fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&p| is_prime(p)).collect()
}

/// Factor `n` by trial division, accepting `1 <= n <= bound`.
pub fn factor_bounded(n: u64, bound: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::InputOutOfRange {
            value: n,
            reason: "n must be positive",
        });
    }
    if n > bound {
        return Err(Error::InputOutOfRange {
            value: n,
            reason: "n exceeds the factorization bound",
        });
    }
    let mut pairs = Vec::new();
    let mut m = n;
    let mut push = |m: &mut u64, p: u64| {
        let mut e = 0;
        while (*m).is_multiple_of(p) {
            *m /= p;
            e += 1;
        }
        if e > 0 {
            pairs.push((p, e));
        }
    };
    push(&mut m, 2);
    push(&mut m, 3);
    let mut d = 5u64;
    while d <= m / d {
        push(&mut m, d);
        push(&mut m, d + 2);
        d += 6;
    }
    if m > 1 {
        pairs.push((m, 1));
    }
    Ok(Factorization { pairs })
}

/// Complete prime factorization of `1 <= n < 2^63`.
pub fn factor(n: u64) -> Result<Factorization> {
    factor_bounded(n, DEFAULT_FACTOR_BOUND)
}

pub fn divisors(n: u64) -> Result<Vec<u64>> {
    Ok(factor(n)?.divisors())
}

pub fn euler_phi(n: u64) -> Result<u64> {
    Ok(factor(n)?.euler_phi())
}

pub fn mobius(n: u64) -> Result<i8> {
    Ok(factor(n)?.mobius())
}

pub fn omega(n: u64) -> Result<usize> {
    Ok(factor(n)?.omega())
}

pub fn radical(n: u64) -> Result<u64> {
    Ok(factor(n)?.radical())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_examples() {
        assert_eq!(factor(1).unwrap().pairs(), &[]);
        assert_eq!(factor(12).unwrap().pairs(), &[(2, 2), (3, 1)]);
        assert_eq!(factor(93837).unwrap().pairs(), &[(3, 1), (31, 1), (1009, 1)]);
        assert_eq!(factor(337561).unwrap().pairs(), &[(7, 2), (83, 2)]);
        assert_eq!(factor(1u64 << 62).unwrap().pairs(), &[(2, 62)]);
    }

    #[test]
    fn factor_rejects_out_of_range() {
        assert!(matches!(factor(0), Err(Error::InputOutOfRange { .. })));
        assert!(matches!(factor(u64::MAX), Err(Error::InputOutOfRange { .. })));
        assert!(factor_bounded(101, 100).is_err());
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(35).unwrap(), vec![1, 5, 7, 35]);
        assert_eq!(factor(337561).unwrap().num_divisors(), 9);
    }

    #[test]
    fn arithmetic_function_examples() {
        assert_eq!(
            (
                euler_phi(1).unwrap(),
                mobius(1).unwrap(),
                omega(1).unwrap(),
                radical(1).unwrap()
            ),
            (1, 1, 0, 1)
        );
        assert_eq!(
            (
                euler_phi(12).unwrap(),
                mobius(12).unwrap(),
                omega(12).unwrap(),
                radical(12).unwrap()
            ),
            (4, 0, 2, 6)
        );
        assert_eq!((mobius(30).unwrap(), omega(30).unwrap()), (-1, 3));
    }

    #[test]
    fn phi_sums_to_n_and_matches_gcd_count() {
        for n in 1..=500u64 {
            let total: u64 = divisors(n).unwrap().iter().map(|&d| euler_phi(d).unwrap()).sum();
            assert_eq!(total, n);
            let coprime = (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count() as u64;
            assert_eq!(euler_phi(n).unwrap(), coprime);
        }
    }

    #[test]
    fn canonical_string_round_trips() {
        for (n, s) in [(1, "1"), (93837, "3*31*1009"), (337561, "7^2*83^2"), (12, "2^2*3")] {
            let f = factor(n).unwrap();
            assert_eq!(f.to_string(), s);
            assert_eq!(s.parse::<Factorization>().unwrap(), f);
        }
        assert!("4*3".parse::<Factorization>().is_err());
        assert!("3*3".parse::<Factorization>().is_err());
        assert!("x".parse::<Factorization>().is_err());
    }
}
