//! Shared-prefix depth-first enumeration of divisor subsets.
//!
//! Divisors are visited in order of decreasing `φ(d)`. Every tree node
//! holds the product of the cyclotomic factors chosen on its path, so a
//! product is never rebuilt from scratch. Multiplying by `Φ_d` is done
//! through `Φ_d = ∏_{m | d} (x^(d/m) - 1)^μ(m)`: one linear pass per
//! binomial, numerators first so every intermediate stays in `Z[x]`.
//!
//! The last few (low-degree) levels are not expanded. Their subset
//! products are precomputed as short stencils and every leaf of that
//! subtree is measured straight from the parent product.

use std::cmp::Ordering;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::Measure;
use crate::arith::factor;
use crate::cyclotomic::cyclotomic;
use crate::error::{Error, Result};
use crate::poly::coeff::Coeff;
use crate::poly::IntPoly;

const MAX_TAIL_LEVELS: usize = 3;
const MAX_TAIL_DEGREE: u64 = 16;
const BLOCK: usize = 256;

/// Engine knobs (a subset of the public search options).
#[derive(Clone, Copy, Debug)]
pub struct EngineConfig {
    pub jobs: usize,
    pub witness_cap: usize,
    pub force_bigint: bool,
}

/// Result of one exhaustive enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngineOutput {
    pub value: u64,
    /// Lexicographically smallest maximizing subsets, each ascending.
    pub witnesses: Vec<Vec<u64>>,
    pub witness_total: u64,
    pub nodes_visited: u64,
    pub escalated: bool,
}

#[derive(Clone, Copy, Debug)]
struct Binomial {
    exp: usize,
    numerator: bool,
}

struct Plan {
    order: Vec<u64>,
    binomials: Vec<Vec<Binomial>>,
    tail_start: usize,
    tail_degree: usize,
    /// `stencils[s]` = nonzero taps of the product over tail levels in `s`.
    stencils: Vec<Vec<(usize, i64)>>,
    stencil_degree: Vec<usize>,
    /// Largest sum of `|tap|` over the stencils.
    max_tap_weight: u64,
    capacity: usize,
}

impl Plan {
    fn new(divisors: &[u64]) -> Result<Plan> {
        let mut keyed = divisors
            .iter()
            .map(|&d| Ok((factor(d)?, d)))
            .collect::<Result<Vec<_>>>()?;
        keyed.sort_by(|(fa, a), (fb, b)| fb.euler_phi().cmp(&fa.euler_phi()).then(b.cmp(a)));

        let mut binomials = Vec::with_capacity(keyed.len());
        let mut capacity = 1usize;
        let mut extra = 0usize;
        for (f, d) in &keyed {
            let primes: Vec<u64> = f.primes().collect();
            let (mut num, mut den) = (Vec::new(), Vec::new());
            for bits in 0u32..(1 << primes.len()) {
                let m: u64 = (0..primes.len())
                    .filter(|i| bits >> i & 1 == 1)
                    .map(|i| primes[i])
                    .product();
                let b = Binomial {
                    exp: (d / m) as usize,
                    numerator: bits.count_ones() % 2 == 0,
                };
                if b.numerator {
                    num.push(b);
                } else {
                    den.push(b);
                }
            }
            extra = extra.max(num.iter().map(|b| b.exp).sum());
            capacity += f.euler_phi() as usize;
            num.extend(den);
            binomials.push(num);
        }
        let order: Vec<u64> = keyed.iter().map(|(_, d)| *d).collect();

        let k = order.len();
        let mut tail = 0;
        let mut tail_degree = 0;
        while tail < k.min(MAX_TAIL_LEVELS) {
            let phi = keyed[k - 1 - tail].0.euler_phi();
            if tail_degree + phi > MAX_TAIL_DEGREE {
                break;
            }
            tail_degree += phi;
            tail += 1;
        }
        let tail_start = k - tail;
        let mut stencils: Vec<Vec<(usize, i64)>> = Vec::with_capacity(1 << tail);
        for s in 0..1usize << tail {
            let mut q = IntPoly::one();
            for (j, &d) in order[tail_start..].iter().enumerate() {
                if s >> j & 1 == 1 {
                    q = q.mul(&*cyclotomic(d)?);
                }
            }
            let words = q.to_words().expect("tail stencils have small coefficients");
            stencils.push(words.into_iter().enumerate().filter(|&(_, c)| c != 0).collect());
        }

        let stencil_degree = stencils.iter().map(|t| t.last().map_or(0, |&(j, _)| j)).collect();
        let max_tap_weight = stencils
            .iter()
            .map(|t| t.iter().map(|&(_, c)| c.unsigned_abs()).sum())
            .max()
            .unwrap_or(1);
        Ok(Plan {
            order,
            binomials,
            tail_start,
            tail_degree: tail_degree as usize,
            stencils,
            stencil_degree,
            max_tap_weight,
            capacity: capacity + extra + tail_degree as usize,
        })
    }

    fn subset(&self, mask: u64) -> Vec<u64> {
        let mut s: Vec<u64> = (0..self.order.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.order[i])
            .collect();
        s.sort_unstable();
        s
    }
}

/// Running maximum with a bounded, lexicographically ordered witness list.
#[derive(Clone, Debug)]
struct Best {
    value: u64,
    total: u64,
    kept: Vec<Vec<u64>>,
    cap: usize,
}

impl Best {
    fn new(cap: usize) -> Self {
        Best {
            value: 0,
            total: 0,
            kept: Vec::new(),
            cap,
        }
    }

    fn offer(&mut self, value: u64, mask: u64, plan: &Plan) {
        match value.cmp(&self.value) {
            Ordering::Less => return,
            Ordering::Greater => {
                self.value = value;
                self.total = 0;
                self.kept.clear();
            }
            Ordering::Equal => {}
        }
        self.total += 1;
        if self.cap == 0 {
            return;
        }
        let w = plan.subset(mask);
        if self.kept.len() == self.cap {
            if w >= *self.kept.last().unwrap() {
                return;
            }
            self.kept.pop();
        }
        let at = self.kept.binary_search(&w).unwrap_or_else(|i| i);
        self.kept.insert(at, w);
    }

    fn merge(mut self, other: Best) -> Best {
        match self.value.cmp(&other.value) {
            Ordering::Greater => self,
            Ordering::Less => other,
            Ordering::Equal => {
                self.total += other.total;
                self.kept.extend(other.kept);
                self.kept.sort_unstable();
                self.kept.dedup();
                self.kept.truncate(self.cap);
                self
            }
        }
    }
}

#[derive(Debug)]
enum Abort {
    Overflow,
    MeasureOverflow,
    /// The stopping threshold was met.
    Reached,
}

struct TaskOut {
    best: Best,
    nodes: u64,
}

/// `f *= x^e - 1`, in place.
pub(crate) fn mul_binomial<T: Coeff>(f: &mut Vec<T>, e: usize, ovf: &mut bool) {
    let total = f.len() + e;
    f.resize(total, T::zero());
    let mut start = (total - 1) / e * e;
    while start >= e {
        let width = e.min(total - start);
        let (lo, hi) = f.split_at_mut(start);
        for (d, s) in hi[..width].iter_mut().zip(&lo[start - e..start - e + width]) {
            d.rsub_assign(s, ovf);
        }
        start -= e;
    }
    let zero = T::zero();
    for d in f[..e.min(total)].iter_mut() {
        d.rsub_assign(&zero, ovf);
    }
}

/// `f /= x^e - 1`, in place. The division must be exact.
pub(crate) fn div_binomial<T: Coeff>(f: &mut Vec<T>, e: usize, ovf: &mut bool) {
    let len = f.len();
    assert!(len > e, "dividend shorter than divisor");
    let zero = T::zero();
    for d in f[..e].iter_mut() {
        d.rsub_assign(&zero, ovf);
    }
    let mut start = e;
    while start < len {
        let width = e.min(len - start);
        let (lo, hi) = f.split_at_mut(start);
        for (d, s) in hi[..width].iter_mut().zip(&lo[start - e..start - e + width]) {
            d.rsub_assign(s, ovf);
        }
        start += e;
    }
    assert!(
        *ovf || f[len - e..].iter().all(Coeff::is_zero),
        "binomial division left a remainder"
    );
    f.truncate(len - e);
}

fn measure_of<T: Coeff>(c: &[T], measure: Measure) -> Option<u64> {
    match measure {
        Measure::Height => T::slice_height(c),
        Measure::Length => T::slice_length(c),
    }
}

struct Runner<'a> {
    plan: &'a Plan,
    measure: Measure,
    stop_at: Option<u64>,
}

impl Runner<'_> {
    fn apply<T: Coeff>(&self, src: &[T], level: usize, dst: &mut Vec<T>) -> Result<(), Abort> {
        let mut ovf = false;
        dst.clear();
        dst.extend_from_slice(src);
        for b in &self.plan.binomials[level] {
            if b.numerator {
                mul_binomial(dst, b.exp, &mut ovf);
            } else {
                div_binomial(dst, b.exp, &mut ovf);
            }
            if ovf {
                return Err(Abort::Overflow);
            }
        }
        Ok(())
    }

    fn leaf_value<T: Coeff>(&self, c: &[T]) -> Result<u64, Abort> {
        match measure_of(c, self.measure) {
            Some(v) => Ok(v),
            None if T::MACHINE_WORD => Err(Abort::Overflow),
            None => Err(Abort::MeasureOverflow),
        }
    }

    /// Machine-word tail evaluation.
    ///
    /// Every product of cyclotomic polynomials is palindromic or
    /// antipalindromic, so each leaf is measured from its low half only.
    /// Returns `false` (nothing recorded) when the a-priori coefficient
    /// bound does not rule out overflow.
    fn tail_words(&self, cur: &[i64], mask: u64, out: &mut TaskOut) -> Result<bool, Abort> {
        let plan = self.plan;
        let deg = cur.len() - 1;
        let reach = ((deg + plan.tail_degree) / 2 + 1).min(cur.len());
        let h = cur[..reach].iter().map(|v| v.unsigned_abs()).max().unwrap_or(0);
        if h as u128 * plan.max_tap_weight as u128 > i64::MAX as u128 {
            return Ok(false);
        }
        let mut tmp = [0i64; BLOCK];
        for (s, taps) in plan.stencils.iter().enumerate() {
            let leaf_deg = deg + plan.stencil_degree[s];
            let half = leaf_deg / 2;
            let mut max = 0u64;
            let mut sum = 0u128;
            let mut last = 0u64;
            let mut b = 0;
            while b <= half {
                let w = BLOCK.min(half + 1 - b);
                let t = &mut tmp[..w];
                t.fill(0);
                for &(j, c) in taps {
                    let lo = j.saturating_sub(b);
                    if lo >= w || b + lo - j >= cur.len() {
                        continue;
                    }
                    let from = b + lo - j;
                    let len = (w - lo).min(cur.len() - from);
                    let src = &cur[from..from + len];
                    let dst = &mut t[lo..lo + len];
                    match c {
                        1 => dst.iter_mut().zip(src).for_each(|(d, x)| *d += x),
                        -1 => dst.iter_mut().zip(src).for_each(|(d, x)| *d -= x),
                        _ => dst.iter_mut().zip(src).for_each(|(d, x)| *d += c * x),
                    }
                }
                match self.measure {
                    Measure::Height => {
                        max = max.max(t.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0));
                    }
                    Measure::Length => {
                        sum += t.iter().map(|v| v.unsigned_abs() as u128).sum::<u128>();
                    }
                }
                last = t[w - 1].unsigned_abs();
                b += w;
            }
            let value = match self.measure {
                Measure::Height => max,
                Measure::Length => {
                    let total = if leaf_deg.is_multiple_of(2) {
                        2 * sum - last as u128
                    } else {
                        2 * sum
                    };
                    u64::try_from(total).map_err(|_| Abort::MeasureOverflow)?
                }
            };
            out.best.offer(value, mask | (s as u64) << plan.tail_start, plan);
        }
        out.nodes += plan.stencils.len() as u64;
        Ok(true)
    }

    fn tail<T: Coeff>(&self, cur: &[T], mask: u64, buf: &mut Vec<T>, out: &mut TaskOut) -> Result<(), Abort> {
        self.tail_inner(cur, mask, buf, out)?;
        match self.stop_at {
            Some(t) if out.best.value >= t => Err(Abort::Reached),
            _ => Ok(()),
        }
    }

    fn tail_inner<T: Coeff>(&self, cur: &[T], mask: u64, buf: &mut Vec<T>, out: &mut TaskOut) -> Result<(), Abort> {
        if let Some(words) = T::as_words(cur) {
            if self.tail_words(words, mask, out)? {
                return Ok(());
            }
        }
        let plan = self.plan;
        for (s, taps) in plan.stencils.iter().enumerate() {
            let value = if s == 0 {
                self.leaf_value(cur)?
            } else {
                let mut ovf = false;
                let span = taps.last().map_or(0, |&(j, _)| j);
                buf.clear();
                buf.resize(cur.len() + span, T::zero());
                for &(j, c) in taps {
                    let dst = &mut buf[j..j + cur.len()];
                    match c {
                        1 => dst.iter_mut().zip(cur).for_each(|(o, x)| o.add_assign(x, &mut ovf)),
                        -1 => dst.iter_mut().zip(cur).for_each(|(o, x)| o.sub_assign(x, &mut ovf)),
                        _ => {
                            let c = T::from_i64(c);
                            dst.iter_mut().zip(cur).for_each(|(o, x)| o.mul_add(x, &c, &mut ovf));
                        }
                    }
                }
                if ovf {
                    return Err(Abort::Overflow);
                }
                self.leaf_value(buf)?
            };
            let tail_mask = (s as u64) << plan.tail_start;
            out.best.offer(value, mask | tail_mask, plan);
        }
        out.nodes += plan.stencils.len() as u64;
        Ok(())
    }

    fn dfs<T: Coeff>(
        &self,
        level: usize,
        mask: u64,
        cur: &[T],
        scratch: &mut [Vec<T>],
        out: &mut TaskOut,
    ) -> Result<(), Abort> {
        if level == self.plan.tail_start {
            let (buf, _) = scratch.split_first_mut().expect("stencil buffer");
            return self.tail(cur, mask, buf, out);
        }
        out.nodes += 1;
        {
            let (head, rest) = scratch.split_first_mut().expect("level buffer");
            self.apply(cur, level, head)?;
            self.dfs(level + 1, mask | 1 << level, head, rest, out)?;
        }
        self.dfs(level + 1, mask, cur, scratch, out)
    }

    fn task<T: Coeff>(&self, split: usize, prefix: u64, cap: usize) -> Result<TaskOut, Abort> {
        let plan = self.plan;
        let mut cur: Vec<T> = Vec::with_capacity(plan.capacity);
        cur.push(T::one());
        let mut tmp: Vec<T> = Vec::with_capacity(plan.capacity);
        for level in 0..split {
            if prefix >> level & 1 == 1 {
                self.apply(&cur, level, &mut tmp)?;
                std::mem::swap(&mut cur, &mut tmp);
            }
        }
        let depth = plan.tail_start - split + 1;
        let mut scratch: Vec<Vec<T>> = (0..depth).map(|_| Vec::with_capacity(plan.capacity)).collect();
        let mut out = TaskOut {
            best: Best::new(cap),
            nodes: 0,
        };
        match self.dfs(split, prefix, &cur, &mut scratch, &mut out) {
            Ok(()) | Err(Abort::Reached) => Ok(out),
            Err(e) => Err(e),
        }
    }
}

/// Exact maximum of `measure` over the products `∏_{d ∈ S} Φ_d` for all
/// subsets `S` of `divisors` (the empty product is the constant 1).
pub fn subset_max(divisors: &[u64], measure: Measure, cfg: &EngineConfig) -> Result<EngineOutput> {
    if divisors.len() > 63 {
        return Err(Error::InvalidParams("at most 63 divisors are supported".into()));
    }
    let plan = Plan::new(divisors)?;
    let runner = Runner {
        plan: &plan,
        measure,
        stop_at: None,
    };
    let jobs = cfg.jobs.max(1);
    let split = (usize::BITS - (jobs - 1).leading_zeros()) as usize;
    let split = split.min(plan.tail_start);
    let cap = cfg.witness_cap;

    let run = |prefix: u64| -> Result<(TaskOut, bool)> {
        if !cfg.force_bigint {
            match runner.task::<i64>(split, prefix, cap) {
                Ok(out) => return Ok((out, false)),
                Err(Abort::Overflow) => {}
                Err(_) => return Err(Error::MeasureOverflow),
            }
        }
        match runner.task::<BigInt>(split, prefix, cap) {
            Ok(out) => Ok((out, true)),
            Err(_) => Err(Error::MeasureOverflow),
        }
    };

    let prefixes: Vec<u64> = (0..1u64 << split).collect();
    let outs: Vec<Result<(TaskOut, bool)>> = if jobs == 1 {
        prefixes.into_iter().map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))?;
        pool.install(|| prefixes.into_par_iter().map(run).collect())
    };

    let mut best = Best::new(cap);
    let mut nodes = 0;
    let mut escalated = false;
    for out in outs {
        let (task, big) = out?;
        best = best.merge(task.best);
        nodes += task.nodes;
        escalated |= big;
    }
    Ok(EngineOutput {
        value: best.value,
        witnesses: best.kept,
        witness_total: best.total,
        nodes_visited: nodes,
        escalated,
    })
}

/// Outcome of a threshold search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachOutput {
    /// First subset found whose measure is at least the threshold.
    pub witness: Option<Vec<u64>>,
    /// Measure of `witness`, or the exact maximum when none reaches.
    pub value: u64,
    pub nodes_visited: u64,
    pub escalated: bool,
}

/// Decide whether some subset product of `divisors` has measure at least
/// `threshold`, stopping at the first one. When the answer is no, the
/// whole tree has been enumerated and `value` is the exact maximum.
pub fn subset_reaching(divisors: &[u64], measure: Measure, threshold: u64, force_bigint: bool) -> Result<ReachOutput> {
    if divisors.len() > 63 {
        return Err(Error::InvalidParams("at most 63 divisors are supported".into()));
    }
    let plan = Plan::new(divisors)?;
    let runner = Runner {
        plan: &plan,
        measure,
        stop_at: Some(threshold),
    };
    let (out, escalated) = match (force_bigint, runner.task::<i64>(0, 0, 1)) {
        (false, Ok(out)) => (out, false),
        (false, Err(Abort::MeasureOverflow)) => return Err(Error::MeasureOverflow),
        _ => (
            runner.task::<BigInt>(0, 0, 1).map_err(|_| Error::MeasureOverflow)?,
            true,
        ),
    };
    let reached = out.best.value >= threshold;
    Ok(ReachOutput {
        witness: if reached {
            out.best.kept.into_iter().next()
        } else {
            None
        },
        value: out.best.value,
        nodes_visited: out.nodes,
        escalated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine(jobs: usize) -> EngineConfig {
        EngineConfig {
            jobs,
            witness_cap: 16,
            force_bigint: false,
        }
    }

    #[test]
    fn binomial_kernels_round_trip() {
        let base: Vec<i64> = vec![3, -1, 4, 1, -5, 9, 2];
        for e in 1..10 {
            let mut ovf = false;
            let mut f = base.clone();
            mul_binomial(&mut f, e, &mut ovf);
            let expect = IntPoly::from_coeffs(base.clone()).mul(&IntPoly::x_pow_minus_one(e));
            assert_eq!(IntPoly::from_coeffs(f.clone()), expect);
            div_binomial(&mut f, e, &mut ovf);
            assert_eq!(f, base);
            assert!(!ovf);
        }
    }

    #[test]
    fn plan_factors_match_cyclotomics() {
        let divs = crate::arith::divisors(180).unwrap();
        let plan = Plan::new(&divs).unwrap();
        for (level, &d) in plan.order.iter().enumerate() {
            let mut f = vec![1i64];
            let mut ovf = false;
            for b in &plan.binomials[level] {
                if b.numerator {
                    mul_binomial(&mut f, b.exp, &mut ovf);
                } else {
                    div_binomial(&mut f, b.exp, &mut ovf);
                }
            }
            assert_eq!(IntPoly::from_coeffs(f), *cyclotomic(d).unwrap(), "Φ_{d}");
        }
    }

    #[test]
    fn small_subset_maxima() {
        let out = subset_max(&[1, 2, 4], Measure::Height, &engine(1)).unwrap();
        assert_eq!(out.value, 1);
        let out = subset_max(&[1], Measure::Height, &engine(1)).unwrap();
        assert_eq!(out.value, 1);
        assert_eq!(out.witnesses, vec![vec![], vec![1]]);
        let out = subset_max(&[1, 2, 3, 6], Measure::Height, &engine(1)).unwrap();
        assert_eq!(out.value, 2);
        assert!(out.witnesses.contains(&vec![2, 3]));
    }

    #[test]
    fn parallel_split_is_deterministic() {
        let divs = crate::arith::divisors(180).unwrap();
        let one = subset_max(&divs, Measure::Height, &engine(1)).unwrap();
        for jobs in [2, 3, 8] {
            let many = subset_max(&divs, Measure::Height, &engine(jobs)).unwrap();
            assert_eq!(
                (one.value, one.witness_total, &one.witnesses),
                (many.value, many.witness_total, &many.witnesses)
            );
        }
    }

    #[test]
    fn threshold_search() {
        let divs = crate::arith::divisors(180).unwrap();
        let full = subset_max(&divs, Measure::Height, &engine(1)).unwrap();
        let hit = subset_reaching(&divs, Measure::Height, full.value, false).unwrap();
        assert_eq!(hit.value, full.value);
        let w = hit.witness.unwrap();
        assert_eq!(crate::search::verify_witness(&w, Measure::Height).unwrap(), full.value);
        let miss = subset_reaching(&divs, Measure::Height, full.value + 1, true).unwrap();
        assert_eq!(
            (miss.witness, miss.value, miss.nodes_visited),
            (None, full.value, full.nodes_visited)
        );
    }

    #[test]
    fn forced_bigint_agrees() {
        let divs = crate::arith::divisors(210).unwrap();
        let word = subset_max(&divs, Measure::Length, &engine(1)).unwrap();
        let big = subset_max(
            &divs,
            Measure::Length,
            &EngineConfig {
                force_bigint: true,
                ..engine(1)
            },
        )
        .unwrap();
        assert!(big.escalated && !word.escalated);
        assert_eq!(
            (word.value, word.witness_total, word.witnesses),
            (big.value, big.witness_total, big.witnesses)
        );
    }
}
