//! Canonical text encodings of the coefficient tables.
//!
//! Two-index tables are written as `k,j,value` rows, one-index tables as
//! `k,value`, always sorted by index. Values are canonical rational
//! strings, so the same table always produces the same bytes.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::coeffs::{p_series, AlphaTable, CTable, QTable};
use crate::error::{Error, Result};
use crate::exact::BernoulliTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    Q,
    C,
    Alpha,
    P,
    Bernoulli,
}

impl TableKind {
    pub fn name(self) -> &'static str {
        match self {
            TableKind::Q => "q",
            TableKind::C => "c",
            TableKind::Alpha => "alpha",
            TableKind::P => "p",
            TableKind::Bernoulli => "bernoulli",
        }
    }

    pub fn two_index(self) -> bool {
        matches!(self, TableKind::Q | TableKind::C | TableKind::Alpha)
    }
}

impl FromStr for TableKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "q" => TableKind::Q,
            "c" => TableKind::C,
            "alpha" => TableKind::Alpha,
            "p" => TableKind::P,
            "bernoulli" => TableKind::Bernoulli,
            _ => return Err(Error::InvalidArgument(format!("unknown table {s:?}"))),
        })
    }
}

/// One table entry; `j` is absent for one-index tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub k: usize,
    pub j: Option<usize>,
    pub value: String,
}

impl Serialize for TableRow {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(if self.j.is_some() { 3 } else { 2 }))?;
        map.serialize_entry("k", &self.k)?;
        if let Some(j) = self.j {
            map.serialize_entry("j", &j)?;
        }
        map.serialize_entry("value", &self.value)?;
        map.end()
    }
}

pub fn q_rows(q: &QTable, k_max: usize) -> Vec<TableRow> {
    q.entries()
        .filter(|(k, _, _)| *k <= k_max)
        .map(|(k, j, v)| TableRow {
            k,
            j: Some(j),
            value: v.to_string(),
        })
        .collect()
}

pub fn c_rows(c: &CTable, k_max: usize) -> Vec<TableRow> {
    c.entries()
        .filter(|(k, _, _)| *k <= k_max)
        .map(|(k, j, v)| TableRow {
            k,
            j: Some(j),
            value: v.to_string(),
        })
        .collect()
}

/// Entries with `k, j <= n`.
pub fn alpha_rows(alpha: &AlphaTable, n: usize) -> Vec<TableRow> {
    alpha
        .entries()
        .filter(|(k, j, _)| *k <= n && *j <= n)
        .map(|(k, j, v)| TableRow {
            k,
            j: Some(j),
            value: v.to_string(),
        })
        .collect()
}

pub fn p_rows(k_max: usize) -> Vec<TableRow> {
    p_series(k_max)
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, v)| TableRow {
            k,
            j: None,
            value: v.to_string(),
        })
        .collect()
}

pub fn bernoulli_rows(bern: &BernoulliTable, k_max: usize) -> Vec<TableRow> {
    bern.values()
        .iter()
        .take(k_max + 1)
        .enumerate()
        .map(|(k, v)| TableRow {
            k,
            j: None,
            value: v.to_string(),
        })
        .collect()
}

pub fn render_csv(rows: &[TableRow], two_index: bool) -> String {
    let mut out = String::from(if two_index { "k,j,value\n" } else { "k,value\n" });
    for row in rows {
        match row.j {
            Some(j) => writeln!(out, "{},{},{}", row.k, j, row.value),
            None => writeln!(out, "{},{}", row.k, row.value),
        }
        .expect("write to string");
    }
    out
}

pub fn render_json(rows: &[TableRow]) -> String {
    serde_json::to_string(rows).expect("rows serialize")
}

/// Parses the output of [`render_csv`]; `#` lines and the header are skipped.
pub fn parse_csv(text: &str) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with("k,") {
            continue;
        }
        let bad = || Error::InvalidArgument(format!("malformed table line {}: {line:?}", n + 1));
        let fields: Vec<&str> = line.split(',').collect();
        let index = |s: &str| s.parse::<usize>().map_err(|_| bad());
        let row = match fields.as_slice() {
            [k, j, v] => TableRow {
                k: index(k)?,
                j: Some(index(j)?),
                value: v.to_string(),
            },
            [k, v] => TableRow {
                k: index(k)?,
                j: None,
                value: v.to_string(),
            },
            _ => return Err(bad()),
        };
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::{build_c_table, build_q_table};

    #[test]
    fn q_csv() {
        let q = build_q_table(2);
        let csv = render_csv(&q_rows(&q, 2), true);
        assert_eq!(csv, "k,j,value\n0,0,1\n1,0,1\n1,1,5\n2,0,1\n2,1,18\n2,2,60\n");
        assert_eq!(parse_csv(&csv).unwrap(), q_rows(&q, 2));
    }

    #[test]
    fn c_json() {
        let q = build_q_table(1);
        let c = build_c_table(&q).unwrap();
        assert_eq!(
            render_json(&c_rows(&c, 1)),
            r#"[{"k":1,"j":0,"value":"1/12"},{"k":1,"j":1,"value":"5/6"}]"#
        );
    }

    #[test]
    fn one_index_tables() {
        let rows = p_rows(2);
        assert_eq!(render_csv(&rows, false), "k,value\n0,1\n1,5/6\n2,385/72\n");
        assert_eq!(render_json(&rows[..1]), r#"[{"k":0,"value":"1"}]"#);
        assert!(parse_csv("k,value\n0,1,2,3\n").is_err());
    }
}
