use std::process::Command;

fn run(args: &[&str]) -> (Option<i32>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cyclo-height"))
        .args(args)
        .output()
        .unwrap();
    (out.status.code(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn compute_prints_value_and_witness() {
    let (code, out) = run(&["compute", "15", "--no-closed-form"]);
    assert_eq!(code, Some(0));
    assert!(out.starts_with("B(15) = 3\n"));
    assert!(out.contains("[3, 5]"));
    let (_, out) = run(&["compute", "1", "--measure", "C"]);
    assert!(out.starts_with("C(1) = 2\n"));
}

#[test]
fn budget_is_reported() {
    let (code, _) = run(&["compute", "720", "--no-closed-form"]);
    assert_eq!(code, Some(2));
}

#[test]
fn verify_exit_status() {
    let (code, out) = run(&["verify", "P2Q2", "3", "5"]);
    assert_eq!(code, Some(0));
    assert!(out.contains("holds") && out.contains("first product strictly larger"));
    let (code, out) = run(&["verify", "PARITY_PRODUCTS", "--upto", "200", "--csv"]);
    assert_eq!(code, Some(0));
    assert!(out.lines().nth(1).unwrap().ends_with(",holds"));
    assert_eq!(run(&["verify", "PQB_STRICT", "3", "5", "2"]).0, Some(0));
    assert_eq!(run(&["verify", "NO_SUCH", "1"]).0, Some(2));
    assert_eq!(run(&["verify", "P2Q2", "3"]).0, Some(2));
}

#[test]
fn table_renderings_agree() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.jsonl");
    let p = path.to_str().unwrap();
    assert_eq!(
        run(&["range", "1", "60", "--checkpoint", p, "--no-closed-form"]).0,
        Some(0)
    );
    let (_, out) = run(&["range", "1", "60", "--checkpoint", p]);
    assert!(out.contains("computed 0"));
    for shape in ["all", "pq", "p2q", "pk", "paqb", "pqr"] {
        let (code, text) = run(&["table", "--input", p, "--shape", shape]);
        assert_eq!(code, Some(0), "{shape}");
        let (_, csv) = run(&["table", "--input", p, "--shape", shape, "--csv"]);
        let a: Vec<Vec<String>> = text
            .lines()
            .skip(1)
            .map(|l| l.split_whitespace().map(String::from).collect())
            .collect();
        let b: Vec<Vec<String>> = csv
            .lines()
            .skip(1)
            .map(|l| l.split(',').map(String::from).collect())
            .collect();
        assert_eq!(a, b, "{shape}");
    }
    let (_, pq) = run(&["table", "--input", p, "--shape", "pq", "--csv"]);
    assert!(pq.contains("\n15,3,5,3,3,yes\n"));
}
