//! Text and CSV tables over stored records and conjecture reports.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::arith::factor;
use crate::conjectures::{parity_products, ConjectureId, ConjectureReport, Verdict};
use crate::error::{Error, Result};
use crate::search::{verify_witness, Measure};
use crate::store::{RecordLine, RecordSet};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Table {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    /// Space-aligned columns, numbers right-aligned.
    pub fn to_text(&self) -> String {
        let mut width: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in width.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let numeric: Vec<bool> = (0..self.headers.len())
            .map(|i| !self.rows.is_empty() && self.rows.iter().all(|r| r[i].parse::<u64>().is_ok() || r[i] == "-"))
            .collect();
        let mut out = String::new();
        let mut line = |cells: &[String]| {
            let parts: Vec<String> = cells
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    if numeric[i] {
                        format!("{c:>w$}", w = width[i])
                    } else {
                        format!("{c:<w$}", w = width[i])
                    }
                })
                .collect();
            let _ = writeln!(out, "{}", parts.join("  ").trim_end());
        };
        line(&self.headers);
        for row in &self.rows {
            line(row);
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }
}

/// Factorization shapes for record tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    All,
    /// `p^k`
    Pk,
    /// `pq`
    Pq,
    /// `p^2 q`, either order of the primes
    P2q,
    /// `p^2 q^2`
    P2q2,
    /// `p^a q^b`, any exponents
    Paqb,
    /// `pqr`
    Pqr,
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "all" => Shape::All,
            "pk" => Shape::Pk,
            "pq" => Shape::Pq,
            "p2q" => Shape::P2q,
            "p2q2" => Shape::P2q2,
            "paqb" => Shape::Paqb,
            "pqr" => Shape::Pqr,
            _ => {
                return Err(Error::InvalidParams(format!(
                    "unknown shape `{s}` (all, pk, pq, p2q, p2q2, paqb, pqr)"
                )))
            }
        })
    }
}

fn value_cell(r: &RecordLine) -> String {
    r.value.map_or_else(|| "-".into(), |v| v.to_string())
}

fn check_cell(ok: Option<bool>) -> String {
    match ok {
        Some(true) => "yes".into(),
        Some(false) => "NO".into(),
        None => "-".into(),
    }
}

/// Table of stored records of the given shape. Shape-specific tables only
/// use `B` records and add the closed form or bound as a column.
pub fn records_table(set: &RecordSet, shape: Shape) -> Result<Table> {
    if shape == Shape::All {
        let mut t = Table::new([
            "n",
            "factorization",
            "measure",
            "value",
            "witnesses",
            "method",
            "nodes",
            "ms",
        ]);
        for r in set.iter() {
            t.push(vec![
                r.n.to_string(),
                r.factorization.clone(),
                r.measure.to_string(),
                r.value.map_or_else(|| "skipped".into(), |v| v.to_string()),
                r.witness_count.to_string(),
                r.method.map_or_else(|| "-".into(), |m| format!("{m:?}").to_lowercase()),
                r.nodes_visited.to_string(),
                r.elapsed_ms.to_string(),
            ]);
        }
        return Ok(t);
    }
    let mut t = match shape {
        Shape::Pk => Table::new(["n", "p", "k", "B(n)", "1", "match"]),
        Shape::Pq => Table::new(["n", "p", "q", "B(n)", "min{p,q}", "match"]),
        Shape::P2q => Table::new(["n", "p", "q", "B(n)", "min{p^2,q}", "match"]),
        Shape::P2q2 => Table::new(["n", "p", "q", "B(n)", "min{p^2,q^2}", "B>=bound"]),
        Shape::Paqb => Table::new(["n", "p", "a", "q", "b", "B(n)", "min{p^a,q^b}", "B>=bound"]),
        Shape::Pqr => Table::new(["n", "p", "q", "r", "B(n)", "H(odd)", "H(even)", "attained"]),
        Shape::All => unreachable!(),
    };
    for r in set.iter().filter(|r| r.measure == Measure::Height) {
        let f = factor(r.n)?;
        let v = r.value;
        let row = match (shape, f.pairs()) {
            (Shape::Pk, &[(p, k)]) => vec![
                p.to_string(),
                k.to_string(),
                value_cell(r),
                "1".into(),
                check_cell(v.map(|v| v == 1)),
            ],
            (Shape::Pq, &[(p, 1), (q, 1)]) => {
                let m = p.min(q);
                vec![
                    p.to_string(),
                    q.to_string(),
                    value_cell(r),
                    m.to_string(),
                    check_cell(v.map(|v| v == m)),
                ]
            }
            (Shape::P2q, &[(p, 2), (q, 1)] | &[(q, 1), (p, 2)]) => {
                let m = (p * p).min(q);
                vec![
                    p.to_string(),
                    q.to_string(),
                    value_cell(r),
                    m.to_string(),
                    check_cell(v.map(|v| v == m)),
                ]
            }
            (Shape::P2q2, &[(p, 2), (q, 2)]) => {
                let m = (p * p).min(q * q);
                vec![
                    p.to_string(),
                    q.to_string(),
                    value_cell(r),
                    m.to_string(),
                    check_cell(v.map(|v| v >= m)),
                ]
            }
            (Shape::Paqb, &[(p, a), (q, b)]) => {
                let m = p.pow(a).min(q.pow(b));
                vec![
                    p.to_string(),
                    a.to_string(),
                    q.to_string(),
                    b.to_string(),
                    value_cell(r),
                    m.to_string(),
                    check_cell(v.map(|v| v >= m)),
                ]
            }
            (Shape::Pqr, &[(p, 1), (q, 1), (s, 1)]) => {
                let (odd, even) = parity_products(r.n)?;
                let ho = verify_witness(&odd, Measure::Height)?;
                let he = verify_witness(&even, Measure::Height)?;
                let which = match v {
                    None => "-",
                    Some(v) if v == ho && v == he => "both",
                    Some(v) if v == ho => "odd",
                    Some(v) if v == he => "even",
                    Some(_) => "NEITHER",
                };
                vec![
                    p.to_string(),
                    q.to_string(),
                    s.to_string(),
                    value_cell(r),
                    ho.to_string(),
                    he.to_string(),
                    which.into(),
                ]
            }
            _ => continue,
        };
        let mut full = vec![r.n.to_string()];
        full.extend(row);
        t.push(full);
    }
    Ok(t)
}

/// One row per report.
pub fn reports_table(reports: &[ConjectureReport]) -> Table {
    let mut t = Table::new(["conjecture", "params", "verdict", "values", "products", "notes"]);
    for r in reports {
        let values = r
            .observations
            .iter()
            .map(|o| format!("B({})={}", o.n, o.value))
            .collect::<Vec<_>>()
            .join(" ");
        let products = r
            .products
            .iter()
            .map(|p| format!("{}={}", p.label.replace(' ', "-"), p.height))
            .collect::<Vec<_>>()
            .join(" ");
        t.push(vec![
            r.conjecture_id.to_string(),
            r.params_string(),
            r.verdict.to_string(),
            values,
            products,
            r.notes.join("; "),
        ]);
    }
    t
}

/// Shape, range, number of data points and overall verdict of a sweep.
pub fn sweep_summary(id: ConjectureId, range: &str, reports: &[ConjectureReport]) -> Table {
    let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
    let (holds, fails, skipped) = (count(Verdict::Holds), count(Verdict::Fails), count(Verdict::Skipped));
    let verdict = if fails > 0 {
        Verdict::Fails
    } else if holds > 0 {
        Verdict::Holds
    } else {
        Verdict::Skipped
    };
    let shape = match id {
        ConjectureId::P2q2 => "p^2q^2",
        ConjectureId::TwoQb => "2q^b",
        ConjectureId::PqbStrict | ConjectureId::PqDivisibility => "pq^b",
        ConjectureId::ParityProducts => "squarefree",
        ConjectureId::Pqrb => "pqr^b",
        ConjectureId::FiniteRange => "p^aq^b",
    };
    let mut t = Table::new([
        "conjecture",
        "n",
        "range",
        "data points",
        "holds",
        "fails",
        "skipped",
        "verdict",
    ]);
    t.push(vec![
        id.to_string(),
        shape.into(),
        range.into(),
        reports.iter().map(|r| r.observations.len()).sum::<usize>().to_string(),
        holds.to_string(),
        fails.to_string(),
        skipped.to_string(),
        verdict.to_string(),
    ]);
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{compute_b, SearchOptions};

    fn set(ns: &[u64]) -> RecordSet {
        let mut s = RecordSet::default();
        for &n in ns {
            let r = RecordLine::from_result(&compute_b(n, &SearchOptions::exhaustive()).unwrap());
            s.records.insert(r.key(), r);
        }
        s
    }

    #[test]
    fn pq_table_matches_formula() {
        let t = records_table(&set(&[6, 10, 12, 15, 35]), Shape::Pq).unwrap();
        assert_eq!(t.rows.len(), 4);
        assert!(t.rows.iter().all(|r| r[3] == r[4] && r[5] == "yes"));
    }

    #[test]
    fn text_and_csv_agree() {
        let t = records_table(&set(&[12, 18, 20, 30]), Shape::All).unwrap();
        let csv_rows: Vec<Vec<String>> = csv::Reader::from_reader(t.to_csv().as_bytes())
            .records()
            .map(|r| r.unwrap().iter().map(String::from).collect())
            .collect();
        let text_rows: Vec<Vec<String>> = t
            .to_text()
            .lines()
            .skip(1)
            .map(|l| l.split_whitespace().map(String::from).collect())
            .collect();
        assert_eq!(csv_rows, t.rows);
        assert_eq!(text_rows, t.rows);
    }

    #[test]
    fn shape_names() {
        assert_eq!("P2Q2".parse::<Shape>().unwrap(), Shape::P2q2);
        assert!("cube".parse::<Shape>().is_err());
    }
}
