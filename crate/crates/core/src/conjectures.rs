//! Checkers for the conjectured and proven statements about `B(n)`.
//!
//! Each checker computes the values it needs by search (exhaustive unless
//! the caller allows closed forms) and returns a [`ConjectureReport`] that
//! carries enough data to audit the verdict: every `B(n)` comes with a
//! maximizing subset, every named product with its subset of divisors.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::arith::{factor, is_prime, primes_between, Factorization};
use crate::error::{Error, Result};
use crate::search::{compute_b, known_formula, verify_witness, Measure, SearchOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConjectureId {
    /// `B(p^2 q^2)` is the larger of two specific product heights.
    P2q2,
    /// `B(2 q^b) = 2`.
    TwoQb,
    /// `B(p q^b) > p` for odd `p < q` and `b > 2`.
    PqbStrict,
    /// `p` divides every `B(p q^b)`, `q > p`.
    PqDivisibility,
    /// For squarefree `n`, `B(n)` is the height of the odd-ω or the even-ω product.
    ParityProducts,
    /// `p | B(p q r^b)` and `B(p q r^b) > p` for `b > 1`.
    Pqrb,
    /// `B(p^a q^b)` takes finitely many values as `q` varies.
    FiniteRange,
}

impl ConjectureId {
    pub const ALL: [ConjectureId; 7] = [
        ConjectureId::P2q2,
        ConjectureId::TwoQb,
        ConjectureId::PqbStrict,
        ConjectureId::PqDivisibility,
        ConjectureId::ParityProducts,
        ConjectureId::Pqrb,
        ConjectureId::FiniteRange,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConjectureId::P2q2 => "P2Q2",
            ConjectureId::TwoQb => "TWO_QB",
            ConjectureId::PqbStrict => "PQB_STRICT",
            ConjectureId::PqDivisibility => "PQ_DIVISIBILITY",
            ConjectureId::ParityProducts => "PARITY_PRODUCTS",
            ConjectureId::Pqrb => "PQRB",
            ConjectureId::FiniteRange => "FINITE_RANGE",
        }
    }
}

impl fmt::Display for ConjectureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConjectureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConjectureId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParams(format!("unknown conjecture id `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    Skipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Skipped => "skipped",
        })
    }
}

/// A computed `B(n)` with one subset attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Observation {
    pub n: u64,
    pub factorization: String,
    pub value: u64,
    pub witness: Vec<u64>,
}

/// The height of a named product of cyclotomic polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductHeight {
    pub label: String,
    pub subset: Vec<u64>,
    pub height: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub conjecture_id: ConjectureId,
    /// Named parameters in the order the checker takes them.
    pub params: Vec<(String, u64)>,
    pub verdict: Verdict,
    pub observations: Vec<Observation>,
    pub products: Vec<ProductHeight>,
    /// Short human-readable findings ("first product strictly larger", ...).
    pub notes: Vec<String>,
    pub nodes_visited: u64,
    #[serde(with = "millis")]
    pub elapsed: Duration,
}

mod millis {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(d.as_millis() as u64)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        u64::deserialize(d).map(Duration::from_millis)
    }
}

impl ConjectureReport {
    fn new(id: ConjectureId, params: &[(&str, u64)]) -> Self {
        ConjectureReport {
            conjecture_id: id,
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            verdict: Verdict::Holds,
            observations: Vec::new(),
            products: Vec::new(),
            notes: Vec::new(),
            nodes_visited: 0,
            elapsed: Duration::ZERO,
        }
    }

    fn skipped(id: ConjectureId, params: &[(&str, u64)], why: &str) -> Self {
        let mut r = ConjectureReport::new(id, params);
        r.verdict = Verdict::Skipped;
        r.notes.push(why.to_string());
        r
    }

    /// Compact `name=value` rendering of the parameters.
    pub fn params_string(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Recompute every observation and product height from its subset.
    /// Returns the first discrepancy found.
    pub fn reaudit(&self) -> Result<Option<String>> {
        for o in &self.observations {
            let v = verify_witness(&o.witness, Measure::Height)?;
            if v != o.value {
                return Ok(Some(format!("B({}) recorded {} but witness gives {v}", o.n, o.value)));
            }
        }
        for p in &self.products {
            let v = verify_witness(&p.subset, Measure::Height)?;
            if v != p.height {
                return Ok(Some(format!("{} recorded {} but recomputes to {v}", p.label, p.height)));
            }
        }
        Ok(None)
    }
}

/// Options shared by all checkers.
#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub search: SearchOptions,
}

impl Default for CheckOptions {
    /// Exhaustive search: a checker does not assume closed forms.
    fn default() -> Self {
        CheckOptions {
            search: SearchOptions::exhaustive(),
        }
    }
}

struct Ctx<'a> {
    opts: &'a CheckOptions,
    report: ConjectureReport,
    start: Instant,
}

impl<'a> Ctx<'a> {
    fn new(id: ConjectureId, params: &[(&str, u64)], opts: &'a CheckOptions) -> Self {
        Ctx {
            opts,
            report: ConjectureReport::new(id, params),
            start: Instant::now(),
        }
    }

    fn b(&mut self, n: u64) -> Result<u64> {
        let r = compute_b(n, &self.opts.search)?;
        self.report.nodes_visited += r.nodes_visited;
        let witness = r.witnesses.first().cloned().unwrap_or_default();
        self.report.observations.push(Observation {
            n,
            factorization: r.factorization.to_string(),
            value: r.value,
            witness,
        });
        Ok(r.value)
    }

    fn product(&mut self, label: &str, mut subset: Vec<u64>) -> Result<u64> {
        subset.sort_unstable();
        let height = verify_witness(&subset, Measure::Height)?;
        self.report.products.push(ProductHeight {
            label: label.to_string(),
            subset,
            height,
        });
        Ok(height)
    }

    fn note(&mut self, s: impl Into<String>) {
        self.report.notes.push(s.into());
    }

    fn finish(mut self, holds: bool) -> ConjectureReport {
        self.report.verdict = if holds { Verdict::Holds } else { Verdict::Fails };
        self.report.elapsed = self.start.elapsed();
        self.report
    }
}

fn require_prime(name: &str, p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("{name} = {p} is not prime")))
    }
}

fn require_odd_prime(name: &str, p: u64) -> Result<()> {
    require_prime(name, p)?;
    if p == 2 {
        return Err(Error::InvalidParams(format!("{name} must be an odd prime")));
    }
    Ok(())
}

fn require_increasing(names: &[(&str, u64)]) -> Result<()> {
    for w in names.windows(2) {
        if w[0].1 >= w[1].1 {
            return Err(Error::InvalidParams(format!("need {} < {}", w[0].0, w[1].0)));
        }
    }
    Ok(())
}

fn pow(base: u64, exp: u64) -> Result<u64> {
    u32::try_from(exp)
        .ok()
        .and_then(|e| base.checked_pow(e))
        .ok_or(Error::InputOutOfRange {
            value: base,
            reason: "power does not fit in 64 bits",
        })
}

/// `B(p^2 q^2)` against `H(Φ_p Φ_q Φ_{p^2 q} Φ_{p q^2})` and
/// `H(Φ_p Φ_q Φ_{p^2} Φ_{q^2})`. Ties count as agreement.
pub fn check_p2q2(p: u64, q: u64, opts: &CheckOptions) -> Result<ConjectureReport> {
    require_prime("p", p)?;
    require_prime("q", q)?;
    require_increasing(&[("p", p), ("q", q)])?;
    let mut cx = Ctx::new(ConjectureId::P2q2, &[("p", p), ("q", q)], opts);
    let b = cx.b(pow(p * q, 2)?)?;
    let first = cx.product("mixed", vec![p, q, p * p * q, p * q * q])?;
    let second = cx.product("prime powers", vec![p, q, p * p, q * q])?;
    cx.note(match first.cmp(&second) {
        std::cmp::Ordering::Greater => "first product strictly larger",
        std::cmp::Ordering::Less => "second product strictly larger",
        std::cmp::Ordering::Equal => "products tie",
    });
    Ok(cx.finish(b == first.max(second)))
}

/// `B(2 q^b) = 2`.
pub fn check_2qb(q: u64, b: u64, opts: &CheckOptions) -> Result<ConjectureReport> {
    require_odd_prime("q", q)?;
    if b == 0 {
        return Err(Error::InvalidParams("b must be positive".into()));
    }
    let mut cx = Ctx::new(ConjectureId::TwoQb, &[("q", q), ("b", b)], opts);
    let v = cx.b(2 * pow(q, b)?)?;
    Ok(cx.finish(v == 2))
}

/// `B(p q^b) > p`; skipped unless `b >= 3`.
pub fn check_pqb_strict(p: u64, q: u64, b: u64, opts: &CheckOptions) -> Result<ConjectureReport> {
    require_odd_prime("p", p)?;
    require_odd_prime("q", q)?;
    require_increasing(&[("p", p), ("q", q)])?;
    let params = [("p", p), ("q", q), ("b", b)];
    if b < 3 {
        return Ok(ConjectureReport::skipped(
            ConjectureId::PqbStrict,
            &params,
            "requires b > 2",
        ));
    }
    let mut cx = Ctx::new(ConjectureId::PqbStrict, &params, opts);
    let v = cx.b(p * pow(q, b)?)?;
    Ok(cx.finish(v > p))
}

/// `p | B(p q^b)` for every prime `q` with `p < q <= q_max`.
///
/// For `b <= 2` each value is also compared with the closed form, and a
/// disagreement is an error rather than a verdict.
pub fn check_pq_divisibility(p: u64, b: u64, q_max: u64, opts: &CheckOptions) -> Result<ConjectureReport> {
    require_odd_prime("p", p)?;
    if b == 0 {
        return Err(Error::InvalidParams("b must be positive".into()));
    }
    let mut cx = Ctx::new(
        ConjectureId::PqDivisibility,
        &[("p", p), ("b", b), ("q_max", q_max)],
        opts,
    );
    let mut holds = true;
    let mut values = Vec::new();
    for q in primes_between(p + 1, q_max) {
        let n = p * pow(q, b)?;
        let v = cx.b(n)?;
        if b <= 2 {
            if let Some(k) = known_formula(n) {
                if k.value != v {
                    return Err(Error::FormulaMismatch {
                        n,
                        formula: k.value,
                        search: v,
                    });
                }
            }
        }
        if v % p != 0 {
            holds = false;
            cx.note(format!("B({n}) = {v} is not divisible by {p}"));
        }
        values.push(v);
    }
    values.sort_unstable();
    values.dedup();
    cx.note(format!("distinct values {values:?}"));
    Ok(cx.finish(holds))
}

/// [`check_pq_divisibility`] for a single `n`, which must be `p q^b` with
/// `p < q` and `p` odd. Any other shape is refused.
pub fn check_pq_divisibility_at(n: u64, opts: &CheckOptions) -> Result<ConjectureReport> {
    const SHAPE: &str = "p*q^b with odd primes p < q";
    let f = factor(n)?;
    let (p, q, b) = match *f.pairs() {
        [(p, 1), (q, b)] if p != 2 => (p, q, b as u64),
        _ => return Err(Error::OutOfShape { n, expected: SHAPE }),
    };
    let mut cx = Ctx::new(ConjectureId::PqDivisibility, &[("p", p), ("q", q), ("b", b)], opts);
    let v = cx.b(n)?;
    Ok(cx.finish(v % p == 0))
}

/// Heights of `∏ Φ_d` over `d | n` with `ω(d)` odd, and with `ω(d)` even.
pub fn parity_products(n: u64) -> Result<(Vec<u64>, Vec<u64>)> {
    let f = factor(n)?;
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree(n));
    }
    let (mut odd, mut even) = (Vec::new(), Vec::new());
    for d in f.divisors() {
        if factor(d)?.omega() % 2 == 1 {
            odd.push(d);
        } else {
            even.push(d);
        }
    }
    Ok((odd, even))
}

/// For squarefree `n`: `B(n)` equals the height of the odd-ω product or
/// of the even-ω product.
pub fn check_parity_products(n: u64, opts: &CheckOptions) -> Result<ConjectureReport> {
    let (odd, even) = parity_products(n)?;
    let f: Factorization = factor(n)?;
    let mut cx = Ctx::new(ConjectureId::ParityProducts, &[("n", n), ("t", f.omega() as u64)], opts);
    let v = cx.b(n)?;
    let ho = cx.product("odd omega", odd)?;
    let he = cx.product("even omega", even)?;
    cx.note(match (ho == v, he == v) {
        (true, true) => "both products attain B(n)",
        (true, false) => "odd-omega product attains B(n)",
        (false, true) => "even-omega product attains B(n)",
        (false, false) => "neither product attains B(n)",
    });
    if let Some(p) = f.primes().next() {
        if v % p == 0 {
            cx.note(format!("B(n) = {v} is divisible by {p}"));
        } else {
            cx.note(format!("B(n) = {v} is not divisible by {p}"));
        }
    }
    Ok(cx.finish(ho == v || he == v))
}

/// Observed split of a parity-product sweep: how often each product
/// attains `B(n)`. Reported, not checked against any expected fraction.
pub fn parity_tally(reports: &[ConjectureReport]) -> Option<String> {
    let mut counts = [0usize; 4];
    for r in reports
        .iter()
        .filter(|r| r.conjecture_id == ConjectureId::ParityProducts)
    {
        let i = match r.notes.first().map(String::as_str) {
            Some("both products attain B(n)") => 0,
            Some("odd-omega product attains B(n)") => 1,
            Some("even-omega product attains B(n)") => 2,
            Some("neither product attains B(n)") => 3,
            _ => continue,
        };
        counts[i] += 1;
    }
    let total: usize = counts.iter().sum();
    if total == 0 {
        return None;
    }
    let even = counts[0] + counts[2];
    Some(format!(
        "of {total} n: both {}, odd only {}, even only {}, neither {}; even-omega product attains B(n) in {:.1}%",
        counts[0],
        counts[1],
        counts[2],
        counts[3],
        100.0 * even as f64 / total as f64
    ))
}

/// `p | B(p q r^b)` and `B(p q r^b) > p`; skipped unless `b >= 2`.
pub fn check_pqrb(p: u64, q: u64, r: u64, b: u64, opts: &CheckOptions) -> Result<ConjectureReport> {
    for (name, v) in [("p", p), ("q", q), ("r", r)] {
        require_prime(name, v)?;
    }
    require_increasing(&[("p", p), ("q", q), ("r", r)])?;
    let params = [("p", p), ("q", q), ("r", r), ("b", b)];
    if b < 2 {
        return Ok(ConjectureReport::skipped(ConjectureId::Pqrb, &params, "requires b > 1"));
    }
    let mut cx = Ctx::new(ConjectureId::Pqrb, &params, opts);
    let v = cx.b(p * q * pow(r, b)?)?;
    if v % p != 0 {
        cx.note(format!("{v} is not divisible by {p}"));
    }
    if v <= p {
        cx.note(format!("{v} does not exceed {p}"));
    }
    Ok(cx.finish(v % p == 0 && v > p))
}

/// Distinct values of `B(p^a q^b)` over primes `q <= q_max`, `q != p`.
///
/// The verdict is scan-consistent (`holds`) when no value first appears
/// in the second half of the scanned primes. This illustrates finiteness;
/// it proves nothing.
pub fn finite_range_scan(p: u64, a: u64, b: u64, q_max: u64, opts: &CheckOptions) -> Result<ConjectureReport> {
    require_prime("p", p)?;
    if a == 0 || b == 0 {
        return Err(Error::InvalidParams("exponents must be positive".into()));
    }
    let mut cx = Ctx::new(
        ConjectureId::FiniteRange,
        &[("p", p), ("a", a), ("b", b), ("q_max", q_max)],
        opts,
    );
    let pa = pow(p, a)?;
    let qs: Vec<u64> = primes_between(2, q_max).into_iter().filter(|&q| q != p).collect();
    let mut seen = Vec::new();
    let mut late = Vec::new();
    for (i, &q) in qs.iter().enumerate() {
        let v = cx.b(pa * pow(q, b)?)?;
        if !seen.contains(&v) {
            seen.push(v);
            if 2 * i >= qs.len() {
                late.push((q, v));
            }
        }
    }
    seen.sort_unstable();
    cx.note(format!("distinct values {seen:?}"));
    for (q, v) in &late {
        cx.note(format!("new value {v} at q = {q} in the second half"));
    }
    cx.note("scan-consistent only, not a proof");
    Ok(cx.finish(late.is_empty()))
}

/// Parameter sweep for one conjecture: every admissible instance whose
/// `n` is at most `limit`.
///
/// `PQ_DIVISIBILITY` and `FINITE_RANGE` are not swept this way; they
/// take their ranges as parameters.
pub fn sweep(id: ConjectureId, limit: u64, opts: &CheckOptions) -> Result<Vec<ConjectureReport>> {
    log::info!("sweeping {id} up to {limit}");
    let primes = primes_between(2, limit);
    let mut out = Vec::new();
    match id {
        ConjectureId::ParityProducts => {
            for n in 1..=limit {
                if factor(n)?.is_squarefree() {
                    out.push(check_parity_products(n, opts)?);
                }
            }
        }
        ConjectureId::TwoQb => {
            for &q in primes.iter().filter(|&&q| q > 2) {
                let mut b = 1;
                while (2u128 * (q as u128).pow(b as u32)) <= limit as u128 {
                    out.push(check_2qb(q, b, opts)?);
                    b += 1;
                }
            }
        }
        ConjectureId::P2q2 => {
            for (i, &p) in primes.iter().enumerate() {
                for &q in &primes[i + 1..] {
                    if (p * q) as u128 * (p * q) as u128 > limit as u128 {
                        break;
                    }
                    out.push(check_p2q2(p, q, opts)?);
                }
            }
        }
        ConjectureId::PqbStrict => {
            for (i, &p) in primes.iter().enumerate().filter(|&(_, &p)| p > 2) {
                for &q in &primes[i + 1..] {
                    let mut b = 3u32;
                    while p as u128 * (q as u128).pow(b) <= limit as u128 {
                        out.push(check_pqb_strict(p, q, b as u64, opts)?);
                        b += 1;
                    }
                }
            }
        }
        ConjectureId::Pqrb => {
            for (i, &p) in primes.iter().enumerate() {
                for (j, &q) in primes.iter().enumerate().skip(i + 1) {
                    for &r in &primes[j + 1..] {
                        let mut b = 2u32;
                        while (p * q) as u128 * (r as u128).pow(b) <= limit as u128 {
                            out.push(check_pqrb(p, q, r, b as u64, opts)?);
                            b += 1;
                        }
                    }
                }
            }
        }
        ConjectureId::PqDivisibility | ConjectureId::FiniteRange => {
            return Err(Error::InvalidParams(format!("{id} takes its range as parameters")));
        }
    }
    Ok(out)
}

/// Run one checker from an id and a flat parameter list.
pub fn check(id: ConjectureId, params: &[u64], opts: &CheckOptions) -> Result<ConjectureReport> {
    let arity = |k: usize| {
        if params.len() == k {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!(
                "{id} takes {k} parameter(s), got {}",
                params.len()
            )))
        }
    };
    match id {
        ConjectureId::P2q2 => arity(2).and_then(|_| check_p2q2(params[0], params[1], opts)),
        ConjectureId::TwoQb => arity(2).and_then(|_| check_2qb(params[0], params[1], opts)),
        ConjectureId::PqbStrict => arity(3).and_then(|_| check_pqb_strict(params[0], params[1], params[2], opts)),
        ConjectureId::PqDivisibility if params.len() == 1 => check_pq_divisibility_at(params[0], opts),
        ConjectureId::PqDivisibility => {
            arity(3).and_then(|_| check_pq_divisibility(params[0], params[1], params[2], opts))
        }
        ConjectureId::ParityProducts => arity(1).and_then(|_| check_parity_products(params[0], opts)),
        ConjectureId::Pqrb => arity(4).and_then(|_| check_pqrb(params[0], params[1], params[2], params[3], opts)),
        ConjectureId::FiniteRange => {
            arity(4).and_then(|_| finite_range_scan(params[0], params[1], params[2], params[3], opts))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> CheckOptions {
        CheckOptions::default()
    }

    #[test]
    fn p2q2_examples() {
        let r = check_p2q2(3, 5, &opts()).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert!(r.products[0].height > r.products[1].height);
        let r = check_p2q2(5, 11, &opts()).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert!(r.products[1].height > r.products[0].height);
        assert_eq!(r.reaudit().unwrap(), None);
    }

    #[test]
    fn preconditions() {
        assert!(matches!(check_p2q2(5, 3, &opts()), Err(Error::InvalidParams(_))));
        assert!(matches!(check_2qb(2, 1, &opts()), Err(Error::InvalidParams(_))));
        assert_eq!(check_pqb_strict(3, 5, 2, &opts()).unwrap().verdict, Verdict::Skipped);
        assert_eq!(check_pqrb(2, 3, 5, 1, &opts()).unwrap().verdict, Verdict::Skipped);
        assert!(matches!(
            check_parity_products(12, &opts()),
            Err(Error::NotSquarefree(12))
        ));
    }

    #[test]
    fn two_qb_small() {
        for (q, b) in [(3, 1), (3, 2), (3, 4)] {
            let r = check_2qb(q, b, &opts()).unwrap();
            assert_eq!(r.verdict, Verdict::Holds, "q={q} b={b}");
        }
    }

    #[test]
    fn divisibility_refuses_other_shapes() {
        let err = check_pq_divisibility_at(7 * 7 * 83 * 83, &opts()).unwrap_err();
        assert!(matches!(err, Error::OutOfShape { n: 337561, .. }));
        let r = check_pq_divisibility(3, 1, 20, &opts()).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert!(r.observations.iter().all(|o| o.value == 3));
    }

    #[test]
    fn finite_range_examples() {
        let r = finite_range_scan(2, 1, 1, 50, &opts()).unwrap();
        assert!(r.observations.iter().all(|o| o.value == 2));
        // B(4q) = min{4, q}: 3 at q = 3, then 4
        let r = finite_range_scan(2, 2, 1, 50, &opts()).unwrap();
        assert_eq!(r.observations[0].value, 3);
        assert!(r.observations[1..].iter().all(|o| o.value == 4));
        assert_eq!(r.verdict, Verdict::Holds);
    }

    #[test]
    fn ids_round_trip() {
        for id in ConjectureId::ALL {
            assert_eq!(id.name().parse::<ConjectureId>().unwrap(), id);
            let json = serde_json::to_string(&id).unwrap();
            assert_eq!(json, format!("\"{}\"", id.name()));
        }
    }

    #[test]
    fn parity_tally_counts_every_report() {
        let reports: Vec<_> = [30, 42, 66, 105]
            .iter()
            .map(|&n| check_parity_products(n, &opts()).unwrap())
            .collect();
        let tally = parity_tally(&reports).unwrap();
        assert!(tally.starts_with("of 4 n:"), "{tally}");
        assert_eq!(parity_tally(&[]), None);
    }
}
