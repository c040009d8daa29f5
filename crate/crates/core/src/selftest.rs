//! Built-in consistency suites, runnable from the command line.

use std::time::{Duration, Instant};

use crate::arith::{divisors, euler_phi, primes_between};
use crate::cyclotomic::{cyclotomic, prefix_product_check};
use crate::error::Result;
use crate::poly::IntPoly;
use crate::search::naive::naive;
use crate::search::{compute, Measure, SearchOptions};

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub cases: usize,
    /// First failing case, if any.
    pub failure: Option<String>,
    pub elapsed: Duration,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn suite(name: &'static str, body: impl FnOnce() -> Result<(usize, Option<String>)>) -> SuiteOutcome {
    let start = Instant::now();
    let (cases, failure) = body().unwrap_or_else(|e| (0, Some(e.to_string())));
    SuiteOutcome {
        name,
        cases,
        failure,
        elapsed: start.elapsed(),
    }
}

/// `∏_{d | n} Φ_d = x^n - 1` and `deg Φ_n = φ(n)` for `n <= limit`.
pub fn identity_suite(limit: u64) -> SuiteOutcome {
    suite("identity", || {
        for n in 1..=limit {
            let mut prod = IntPoly::one();
            for d in divisors(n)? {
                prod = prod.mul(&*cyclotomic(d)?);
            }
            if prod != IntPoly::x_pow_minus_one(n as usize) {
                return Ok((n as usize, Some(format!("product over d | {n} is not x^{n} - 1"))));
            }
            if cyclotomic(n)?.degree() != Some(euler_phi(n)? as usize) {
                return Ok((n as usize, Some(format!("deg Φ_{n} != φ({n})"))));
            }
        }
        Ok((limit as usize, None))
    })
}

/// `Φ_p Φ_{p^2} ... Φ_{p^k}` is the all-ones polynomial, for `p^k <= limit`.
pub fn lemma_suite(limit: u64) -> SuiteOutcome {
    suite("prefix products", || {
        let mut cases = 0;
        for p in primes_between(2, limit) {
            let mut k = 1u32;
            while p.checked_pow(k).is_some_and(|v| v <= limit) {
                cases += 1;
                if !prefix_product_check(p, k) {
                    return Ok((cases, Some(format!("p = {p}, k = {k}"))));
                }
                k += 1;
            }
        }
        Ok((cases, None))
    })
}

/// Engine against the naive enumerator for `n <= limit`, both measures,
/// at each parallelism degree in `jobs`.
pub fn oracle_suite(limit: u64, jobs: &[usize]) -> SuiteOutcome {
    suite("oracle equivalence", || {
        let mut cases = 0;
        for n in 1..=limit {
            for measure in [Measure::Height, Measure::Length] {
                let oracle = naive(n, measure)?;
                let mut first: Option<(u64, u64, Vec<Vec<u64>>)> = None;
                for &j in jobs {
                    let opts = SearchOptions {
                        jobs: j,
                        witness_cap: usize::MAX,
                        ..SearchOptions::exhaustive()
                    };
                    let r = compute(n, measure, &opts)?;
                    cases += 1;
                    if r.value != oracle.value || r.witnesses != oracle.maximizers {
                        return Ok((
                            cases,
                            Some(format!("{measure}({n}): engine {} vs naive {}", r.value, oracle.value)),
                        ));
                    }
                    let got = (r.value, r.witness_total, r.witnesses);
                    match &first {
                        None => first = Some(got),
                        Some(f) if *f != got => {
                            return Ok((cases, Some(format!("{measure}({n}) depends on the job count"))));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Ok((cases, None))
    })
}

/// All suites at their standard sizes.
pub fn run_all() -> Vec<SuiteOutcome> {
    vec![identity_suite(2000), lemma_suite(100_000), oracle_suite(100, &[1, 8])]
}
