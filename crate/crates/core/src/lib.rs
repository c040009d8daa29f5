//! Exact computation of `B(n)`, the largest coefficient height of a divisor
//! of `x^n - 1` in `Z[x]`, together with `A(n) = H(Φ_n)` and the length
//! variant `C(n)`.
//!
//! * [`poly`]: dense integer polynomials, `i64` with escalation to bignums.
//! * [`arith`], [`cyclotomic`]: factoring, arithmetic functions, `Φ_n`.
//! * [`search`]: the subset search engine and closed forms.
//! * [`conjectures`]: checkers that report verdicts with auditable evidence.
//! * [`store`], [`table`]: JSON-lines records, checkpointed ranges, tables.
//!
//! ```
//! use cyclo_height::search::{compute_b, SearchOptions};
//!
//! assert_eq!(compute_b(93837, &SearchOptions::default()).unwrap().value, 599);
//! ```

pub mod arith;
pub mod conjectures;
pub mod cyclotomic;
pub mod error;
pub mod poly;
pub mod search;
pub mod selftest;
pub mod store;
pub mod table;
