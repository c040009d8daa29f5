//! Values from an independent brute force (`tests/data/brute_force.py`).

use cyclo_height::search::{compute_b, compute_c, SearchOptions};

fn table(tag: &str) -> Vec<u64> {
    let text = include_str!("data/brute_force_1_100.txt");
    let line = text.lines().find_map(|l| l.strip_prefix(tag)).expect("tag present");
    line.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(',')
        .map(|v| v.trim().parse().unwrap())
        .collect()
}

#[test]
fn b_matches_brute_force() {
    let expect = table("B ");
    assert_eq!(expect.len(), 100);
    for (i, &v) in expect.iter().enumerate() {
        let n = i as u64 + 1;
        assert_eq!(compute_b(n, &SearchOptions::exhaustive()).unwrap().value, v, "B({n})");
        assert_eq!(
            compute_b(n, &SearchOptions::default()).unwrap().value,
            v,
            "B({n}) with closed forms"
        );
    }
}

#[test]
fn c_matches_brute_force() {
    let expect = table("C ");
    for (i, &v) in expect.iter().enumerate() {
        let n = i as u64 + 1;
        let r = compute_c(n, &SearchOptions::default()).unwrap();
        assert_eq!(r.value, v, "C({n})");
    }
}
