//! On-disk cache of coefficient tables.
//!
//! Each table lives in `<dir>/<kind>.csv`: one metadata line
//! `# tautrel-cache kind=<kind> k_max=<n> version=1` followed by the CSV
//! dump from [`crate::output`]. A cached table serves every request up to
//! its `k_max`; a larger request recomputes and replaces the file. Files
//! that fail to parse are treated as absent.

use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;

use crate::coeffs::{build_c_table, build_q_table, solve_g_ode, AlphaTable, CTable, QTable};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::output::{alpha_rows, c_rows, parse_csv, q_rows, render_csv, TableKind, TableRow};

pub const CACHE_VERSION: u32 = 1;

/// Table source that reads and writes the cache when a directory is set.
#[derive(Clone, Debug, Default)]
pub struct TableCache {
    dir: Option<PathBuf>,
}

impl TableCache {
    /// Creates the directory if needed.
    pub fn new(dir: Option<PathBuf>) -> Result<Self> {
        if let Some(d) = &dir {
            fs::create_dir_all(d)
                .map_err(|e| Error::Cache(format!("cannot create {}: {e}", d.display())))?;
        }
        Ok(TableCache { dir })
    }

    pub fn uncached() -> Self {
        TableCache { dir: None }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn path(&self, kind: TableKind) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{}.csv", kind.name())))
    }

    /// Rows of a cached table of at least `need`, if present and readable.
    fn read(&self, kind: TableKind, need: usize) -> Option<(usize, Vec<TableRow>)> {
        let text = fs::read_to_string(self.path(kind)?).ok()?;
        let meta = text.lines().next()?;
        let (have, version) = parse_meta(meta, kind)?;
        if version != CACHE_VERSION || have < need {
            return None;
        }
        Some((have, parse_csv(&text).ok()?))
    }

    fn write(&self, kind: TableKind, k_max: usize, rows: &[TableRow]) -> Result<()> {
        let Some(path) = self.path(kind) else {
            return Ok(());
        };
        let mut text = format!(
            "# tautrel-cache kind={} k_max={k_max} version={CACHE_VERSION}\n",
            kind.name()
        );
        text.push_str(&render_csv(rows, true));
        let tmp = path.with_extension("csv.tmp");
        fs::write(&tmp, text)
            .and_then(|_| fs::rename(&tmp, &path))
            .map_err(|e| Error::Cache(format!("cannot write {}: {e}", path.display())))
    }

    pub fn q_table(&self, k_max: usize) -> Result<QTable> {
        if let Some(q) = self.read(TableKind::Q, k_max).and_then(|(_, rows)| {
            let entries = rows
                .into_iter()
                .map(|r| Some((r.k, r.j?, r.value.parse::<BigInt>().ok()?)))
                .collect::<Option<Vec<_>>>()?;
            QTable::from_entries(k_max, entries).ok()
        }) {
            return Ok(q);
        }
        let q = build_q_table(k_max);
        self.write(TableKind::Q, k_max, &q_rows(&q, k_max))?;
        Ok(q)
    }

    pub fn c_table(&self, k_max: usize) -> Result<CTable> {
        let k_max = k_max.max(1);
        if let Some(c) = self.read(TableKind::C, k_max).and_then(|(_, rows)| {
            let entries = rational_entries(rows)?;
            CTable::from_entries(k_max, entries).ok()
        }) {
            return Ok(c);
        }
        let c = build_c_table(&self.q_table(k_max)?)?;
        self.write(TableKind::C, k_max, &c_rows(&c, k_max))?;
        Ok(c)
    }

    /// Alpha at orders `(n, n)`.
    pub fn alpha_table(&self, n: usize) -> Result<AlphaTable> {
        let n = n.max(1);
        if let Some(alpha) = self.read(TableKind::Alpha, n).and_then(|(_, rows)| {
            let entries = rational_entries(rows)?;
            Some(AlphaTable::from_entries(n, n, entries))
        }) {
            return Ok(alpha);
        }
        let alpha = solve_g_ode(n, n)?;
        self.write(TableKind::Alpha, n, &alpha_rows(&alpha, n))?;
        Ok(alpha)
    }
}

fn rational_entries(rows: Vec<TableRow>) -> Option<Vec<(usize, usize, Rational)>> {
    rows.into_iter()
        .map(|r| Some((r.k, r.j?, r.value.parse::<Rational>().ok()?)))
        .collect()
}

fn parse_meta(line: &str, kind: TableKind) -> Option<(usize, u32)> {
    let rest = line.strip_prefix("# tautrel-cache ")?;
    let mut k_max = None;
    let mut version = None;
    let mut kind_ok = false;
    for field in rest.split_whitespace() {
        let (key, value) = field.split_once('=')?;
        match key {
            "kind" => kind_ok = value == kind.name(),
            "k_max" => k_max = value.parse().ok(),
            "version" => version = value.parse().ok(),
            _ => {}
        }
    }
    if !kind_ok {
        return None;
    }
    Some((k_max?, version?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metadata_line() {
        assert_eq!(
            parse_meta("# tautrel-cache kind=q k_max=12 version=1", TableKind::Q),
            Some((12, 1))
        );
        assert_eq!(parse_meta("# tautrel-cache kind=c k_max=12 version=1", TableKind::Q), None);
        assert_eq!(parse_meta("k,j,value", TableKind::Q), None);
    }
}
