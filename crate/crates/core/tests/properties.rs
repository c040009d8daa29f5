use cyclo_height::arith::{divisors, factor};
use cyclo_height::cyclotomic::a_function;
use cyclo_height::poly::{IntPoly, MulConfig};
use cyclo_height::search::{compute_b, compute_c, lower_bound_pq, verify_witness, Measure, SearchOptions};
use num_bigint::BigUint;
use proptest::prelude::*;

fn poly(max_len: usize) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-10i64..=10, 0..=max_len).prop_map(IntPoly::from_coeffs)
}

fn nonzero_poly(max_len: usize) -> impl Strategy<Value = IntPoly> {
    poly(max_len).prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #[test]
    fn mul_commutes(a in poly(65), b in poly(65)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn mul_associates(a in poly(65), b in poly(65), c in poly(65)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn karatsuba_matches_schoolbook(a in poly(200), b in poly(200), thr in 2usize..64) {
        let fast = a.mul_with(&b, &MulConfig { karatsuba_threshold: thr });
        let slow = a.mul_with(&b, &MulConfig { karatsuba_threshold: usize::MAX });
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn degree_adds(a in nonzero_poly(40), b in nonzero_poly(40)) {
        let p = a.mul(&b);
        prop_assert_eq!(p.degree(), Some(a.degree().unwrap() + b.degree().unwrap()));
    }

    #[test]
    fn division_round_trips(a in poly(65), b in nonzero_poly(65)) {
        prop_assert_eq!(a.mul(&b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn height_at_most_length(a in poly(65)) {
        let nonzero = a.to_bigints().iter().filter(|c| **c != 0.into()).count();
        prop_assert!(a.height() <= a.length());
        prop_assert_eq!(a.height() == a.length(), nonzero <= 1);
    }

    #[test]
    fn inflation_keeps_measures(a in poly(40), m in 1usize..7) {
        let f = a.inflate(m);
        prop_assert_eq!(f.height(), a.height());
        prop_assert_eq!(f.length(), a.length());
    }

    #[test]
    fn bigint_path_is_identical(a in poly(100), b in poly(100)) {
        let word = a.mul(&b);
        let big = a.clone().escalate().mul(&b.clone().escalate());
        prop_assert!(big.is_escalated() || big.is_zero());
        prop_assert_eq!(word.to_bigints(), big.to_bigints());
        prop_assert_eq!(&word, &big);
        if !b.is_zero() {
            prop_assert_eq!(word.exact_div(&b).unwrap().to_bigints(), big.exact_div(&b.escalate()).unwrap().to_bigints());
        }
    }
}

#[test]
fn overflow_escalates() {
    let big = IntPoly::from_coeffs(vec![i64::MAX, i64::MAX]);
    let sq = big.mul(&big);
    assert!(sq.is_escalated());
    assert_eq!(sq.exact_div(&big).unwrap(), big);
    let m = BigUint::from(i64::MAX as u64);
    assert_eq!(sq.height(), &m * &m * 2u32);
}

#[test]
fn search_invariants_up_to_200() {
    let opts = SearchOptions::exhaustive();
    for n in 1..=200u64 {
        let b = compute_b(n, &opts).unwrap();
        let c = compute_c(n, &opts).unwrap();
        assert!(c.value >= b.value, "C({n}) < B({n})");
        for d in divisors(n).unwrap() {
            assert!(b.value >= a_function(d).unwrap(), "B({n}) < A({d})");
        }
        if let Some(lb) = lower_bound_pq(n) {
            assert!(b.value >= lb, "B({n}) below min{{p^a, q^b}}");
        }
        for (r, m) in [(&b, Measure::Height), (&c, Measure::Length)] {
            assert!(!r.witnesses.is_empty() && r.witness_total >= r.witnesses.len() as u64);
            for w in &r.witnesses {
                assert!(w.windows(2).all(|p| p[0] < p[1]));
                assert!(w.iter().all(|d| n % d == 0));
                assert_eq!(verify_witness(w, m).unwrap(), r.value, "{m}({n}) witness {w:?}");
            }
        }
        assert_eq!(factor(n).unwrap().to_string(), b.factorization.to_string());
    }
}
