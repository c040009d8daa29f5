//! `B(n)` and `C(n)`: the largest height (resp. length) of a divisor of
//! `x^n - 1` in `Z[x]`.
//!
//! Every divisor with positive leading coefficient is `∏_{d ∈ S} Φ_d` for
//! some set `S` of divisors of `n`, so maximizing over the `2^τ(n)`
//! subsets is exhaustive.

pub mod engine;
pub mod naive;

use std::fmt;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::arith::{factor, Factorization};
use crate::cyclotomic::cyclotomic;
use crate::error::{Error, Result};
use crate::poly::IntPoly;
pub use engine::{subset_max, subset_reaching, EngineConfig, EngineOutput, ReachOutput};

/// Default cap on the number of divisors of `n` accepted by a search.
pub const DEFAULT_DIVISOR_BUDGET: usize = 28;
/// Default number of maximizing subsets kept per result.
pub const DEFAULT_WITNESS_CAP: usize = 16;

/// Which quantity is maximized over the divisors of `x^n - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Measure {
    /// `H(f)`, giving `B(n)`.
    #[serde(rename = "B")]
    Height,
    /// `L(f)`, giving `C(n)`.
    #[serde(rename = "C")]
    Length,
}

impl Measure {
    pub fn of(self, f: &IntPoly) -> Option<u64> {
        match self {
            Measure::Height => f.height_u64(),
            Measure::Length => f.length_u64(),
        }
    }

    /// `"B"` or `"C"`.
    pub fn letter(self) -> &'static str {
        match self {
            Measure::Height => "B",
            Measure::Length => "C",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.letter())
    }
}

impl std::str::FromStr for Measure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "B" | "b" | "height" => Ok(Measure::Height),
            "C" | "c" | "length" => Ok(Measure::Length),
            _ => Err(Error::InvalidParams(format!("unknown measure `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Exhaustive,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Worker threads for the subtree split.
    pub jobs: usize,
    pub witness_cap: usize,
    /// Answer from [`known_formula`] without enumerating, where one applies.
    pub allow_closed_form: bool,
    /// Run every product in arbitrary precision from the start.
    pub force_bigint: bool,
    pub divisor_budget: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            jobs: 1,
            witness_cap: DEFAULT_WITNESS_CAP,
            allow_closed_form: true,
            force_bigint: false,
            divisor_budget: DEFAULT_DIVISOR_BUDGET,
        }
    }
}

impl SearchOptions {
    /// Defaults with closed forms disabled.
    pub fn exhaustive() -> Self {
        SearchOptions {
            allow_closed_form: false,
            ..SearchOptions::default()
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub n: u64,
    pub factorization: Factorization,
    pub measure: Measure,
    pub value: u64,
    /// Maximizing subsets (ascending divisor lists), sorted, at most `witness_cap`.
    pub witnesses: Vec<Vec<u64>>,
    /// Number of maximizing subsets. For closed forms, the number of witnesses given.
    pub witness_total: u64,
    pub nodes_visited: u64,
    pub escalated: bool,
    pub elapsed: Duration,
    pub method: Method,
}

/// Which published closed form produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FormulaSource {
    /// `n = 1`.
    Unit,
    /// `B(p^k) = 1`.
    PrimePower,
    /// `B(pq) = min{p, q}`.
    TwoPrimes,
    /// `B(p^2 q) = min{p^2, q}`.
    SquareTimesPrime,
}

impl fmt::Display for FormulaSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormulaSource::Unit => "B(1)=1",
            FormulaSource::PrimePower => "B(p^k)=1",
            FormulaSource::TwoPrimes => "B(pq)=min{p,q}",
            FormulaSource::SquareTimesPrime => "B(p^2q)=min{p^2,q}",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnownFormula {
    pub value: u64,
    pub source: FormulaSource,
    /// A subset of divisors whose product attains `value`.
    pub witness: Vec<u64>,
}

/// Closed form for `B(n)` when `n` is 1, `p^k`, `pq` or `p^2 q`.
pub fn known_formula(n: u64) -> Option<KnownFormula> {
    factor(n).ok().and_then(|f| formula_for(&f))
}

fn formula_for(f: &Factorization) -> Option<KnownFormula> {
    let known = |value, source, mut witness: Vec<u64>| {
        witness.sort_unstable();
        Some(KnownFormula { value, source, witness })
    };
    match *f.pairs() {
        [] => known(1, FormulaSource::Unit, vec![1]),
        [(_, _)] => known(1, FormulaSource::PrimePower, vec![1]),
        [(p, 1), (q, 1)] => known(p.min(q), FormulaSource::TwoPrimes, vec![p, q]),
        [(p, 2), (q, 1)] | [(q, 1), (p, 2)] => {
            known((p * p).min(q), FormulaSource::SquareTimesPrime, vec![p, p * p, q])
        }
        _ => None,
    }
}

/// `min{p^a, q^b}` when `n = p^a q^b` has exactly two prime factors.
pub fn lower_bound_pq(n: u64) -> Option<u64> {
    let f = factor(n).ok()?;
    match *f.pairs() {
        [(p, a), (q, b)] => Some(p.pow(a).min(q.pow(b))),
        _ => None,
    }
}

/// The product `∏_{d ∈ subset} Φ_d`, multiplied out from scratch.
pub fn subset_product(subset: &[u64]) -> Result<IntPoly> {
    subset
        .iter()
        .try_fold(IntPoly::one(), |acc, &d| Ok(acc.mul(&*cyclotomic(d)?)))
}

/// Recompute the measure of a witness subset independently of the engine.
pub fn verify_witness(subset: &[u64], measure: Measure) -> Result<u64> {
    measure.of(&subset_product(subset)?).ok_or(Error::MeasureOverflow)
}

/// `B(n)` (measure = height) or `C(n)` (measure = length).
pub fn compute(n: u64, measure: Measure, opts: &SearchOptions) -> Result<SearchResult> {
    let start = Instant::now();
    let factorization = factor(n)?;

    if measure == Measure::Height && opts.allow_closed_form {
        if let Some(k) = formula_for(&factorization) {
            return Ok(SearchResult {
                n,
                factorization,
                measure,
                value: k.value,
                witnesses: vec![k.witness],
                witness_total: 1,
                nodes_visited: 0,
                escalated: false,
                elapsed: start.elapsed(),
                method: Method::ClosedForm,
            });
        }
    }

    let count = factorization.num_divisors();
    if count > opts.divisor_budget {
        return Err(Error::BudgetExceeded {
            n,
            divisors: count,
            budget: opts.divisor_budget,
        });
    }
    let out = subset_max(
        &factorization.divisors(),
        measure,
        &EngineConfig {
            jobs: opts.jobs,
            witness_cap: opts.witness_cap,
            force_bigint: opts.force_bigint,
        },
    )?;
    Ok(SearchResult {
        n,
        factorization,
        measure,
        value: out.value,
        witnesses: out.witnesses,
        witness_total: out.witness_total,
        nodes_visited: out.nodes_visited,
        escalated: out.escalated,
        elapsed: start.elapsed(),
        method: Method::Exhaustive,
    })
}

/// `B(n)`, the largest height of a divisor of `x^n - 1` in `Z[x]`.
pub fn compute_b(n: u64, opts: &SearchOptions) -> Result<SearchResult> {
    compute(n, Measure::Height, opts)
}

/// `C(n)`, the largest length of a divisor of `x^n - 1` in `Z[x]`.
/// No closed forms are used.
pub fn compute_c(n: u64, opts: &SearchOptions) -> Result<SearchResult> {
    compute(n, Measure::Length, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exhaustive(n: u64) -> SearchResult {
        compute_b(n, &SearchOptions::exhaustive()).unwrap()
    }

    #[test]
    fn b_examples() {
        assert_eq!(exhaustive(1).value, 1);
        assert_eq!(exhaustive(8).value, 1);
        assert_eq!(exhaustive(15).value, 3);
        assert_eq!(exhaustive(12).value, 3);
        assert_eq!(exhaustive(6).value, 2);
    }

    #[test]
    fn c_examples() {
        let opts = SearchOptions::default();
        assert_eq!(compute_c(1, &opts).unwrap().value, 2);
        assert_eq!(compute_c(2, &opts).unwrap().value, 2);
        for p in [3, 5, 7, 11, 13] {
            assert_eq!(compute_c(p, &opts).unwrap().value, p);
        }
        let c6 = compute_c(6, &opts).unwrap();
        assert!(c6.value >= 2);
        assert_eq!(c6.method, Method::Exhaustive);
    }

    #[test]
    fn known_formula_shapes() {
        assert_eq!(known_formula(49).unwrap().value, 1);
        assert_eq!(known_formula(35).unwrap().value, 5);
        let k = known_formula(75).unwrap();
        assert_eq!((k.value, k.source), (3, FormulaSource::SquareTimesPrime));
        assert_eq!(known_formula(12).unwrap().value, 3);
        assert_eq!(known_formula(1).unwrap().value, 1);
        assert_eq!(known_formula(30), None);
        assert_eq!(known_formula(36), None);
        assert_eq!(known_formula(0), None);
    }

    #[test]
    fn closed_form_witnesses_attain_the_value() {
        for n in [1, 2, 49, 1024, 15, 35, 221, 12, 75, 18, 50, 245, 847] {
            let k = known_formula(n).unwrap();
            assert_eq!(verify_witness(&k.witness, Measure::Height).unwrap(), k.value, "n = {n}");
            let r = compute_b(n, &SearchOptions::default()).unwrap();
            assert_eq!(r.method, Method::ClosedForm);
            assert_eq!(r.value, k.value);
        }
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(lower_bound_pq(225), Some(9));
        assert_eq!(lower_bound_pq(2592), Some(32));
        assert_eq!(lower_bound_pq(30), None);
        assert_eq!(lower_bound_pq(49), None);
    }

    #[test]
    fn budget_is_enforced() {
        let opts = SearchOptions {
            divisor_budget: 8,
            ..SearchOptions::exhaustive()
        };
        assert!(matches!(
            compute_b(36, &opts),
            Err(Error::BudgetExceeded { divisors: 9, .. })
        ));
        assert!(matches!(compute_b(0, &opts), Err(Error::InputOutOfRange { .. })));
        // brute force over the 256 subsets of divisors of 30
        assert_eq!(compute_b(30, &opts).unwrap().value, 12);
    }

    #[test]
    fn witnesses_reverify() {
        for n in [36, 60, 105, 225] {
            for measure in [Measure::Height, Measure::Length] {
                let r = compute(n, measure, &SearchOptions::exhaustive()).unwrap();
                assert!(!r.witnesses.is_empty());
                assert!(r.witness_total >= r.witnesses.len() as u64);
                for w in &r.witnesses {
                    assert_eq!(verify_witness(w, measure).unwrap(), r.value);
                }
            }
        }
    }

    #[test]
    fn product_of_four_gives_b_225() {
        let h = verify_witness(&[3, 5, 45, 75], Measure::Height).unwrap();
        assert_eq!(h, exhaustive(225).value);
    }
}
