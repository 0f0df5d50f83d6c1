//! Range-compressed bound tables and their checked-in fixtures.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::verdict::{bound_range, BoundVerdict};
use crate::error::{Error, Result};

/// A maximal run `lo..=hi` of lengths sharing one bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RangeCell {
    pub lo: usize,
    pub hi: usize,
    pub k_max: usize,
}

impl fmt::Display for RangeCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}-{}", self.lo, self.hi)
        }
    }
}

/// Parses `"lo-hi"` or `"n"`.
pub fn parse_range(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("not a range: {s:?}"));
    let s = s.trim();
    let (lo, hi) = match s.split_once('-') {
        Some((a, b)) => (
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        ),
        None => {
            let v = s.parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

/// Groups consecutive verdicts with equal bounds.
pub fn compress(verdicts: &[BoundVerdict]) -> Vec<RangeCell> {
    let mut out: Vec<RangeCell> = Vec::new();
    for v in verdicts {
        match out.last_mut() {
            Some(c) if c.k_max == v.k_max && c.hi + 1 == v.n_parties => c.hi = v.n_parties,
            _ => out.push(RangeCell {
                lo: v.n_parties,
                hi: v.n_parties,
                k_max: v.k_max,
            }),
        }
    }
    out
}

/// The homogeneous fixture tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundTable {
    I,
    II,
    III,
}

impl FromStr for BoundTable {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" | "1" => Ok(BoundTable::I),
            "II" | "2" => Ok(BoundTable::II),
            "III" | "3" => Ok(BoundTable::III),
            _ => Err(Error::Parse(format!("unknown bound table {s:?}"))),
        }
    }
}

impl fmt::Display for BoundTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundTable::I => "I",
            BoundTable::II => "II",
            BoundTable::III => "III",
        })
    }
}

/// One fixture row with its cell identifier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureCell {
    pub range: RangeCell,
    pub cell: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundFixture {
    pub local_dim: u32,
    pub cells: Vec<FixtureCell>,
}

impl BoundFixture {
    pub fn parse(text: &str) -> Result<Self> {
        let mut d = None;
        let mut cells = Vec::new();
        let mut header = false;
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(c) = line.strip_prefix('#') {
                if let Some(v) = c.trim().strip_prefix("d ") {
                    d = Some(
                        v.trim()
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad d line {raw:?}")))?,
                    );
                }
                continue;
            }
            if !header {
                if line != "N_range,k_max,cell" {
                    return Err(Error::Parse(format!("unexpected fixture header {line:?}")));
                }
                header = true;
                continue;
            }
            let f: Vec<&str> = line.split(',').collect();
            let [r, k, cell] = f.as_slice() else {
                return Err(Error::Parse(format!("bad fixture row {line:?}")));
            };
            let (lo, hi) = parse_range(r)?;
            let k_max = k
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad k in {line:?}")))?;
            cells.push(FixtureCell {
                range: RangeCell { lo, hi, k_max },
                cell: cell.trim().to_string(),
            });
        }
        Ok(BoundFixture {
            local_dim: d.ok_or_else(|| Error::Parse("fixture has no '# d' line".into()))?,
            cells,
        })
    }

    pub fn bundled(table: BoundTable) -> Self {
        let text = match table {
            BoundTable::I => include_str!("../../data/table_i.csv"),
            BoundTable::II => include_str!("../../data/table_ii.csv"),
            BoundTable::III => include_str!("../../data/table_iii.csv"),
        };
        BoundFixture::parse(text).expect("bundled fixture")
    }

    pub fn n_range(&self) -> (usize, usize) {
        (
            self.cells.first().map_or(0, |c| c.range.lo),
            self.cells.last().map_or(0, |c| c.range.hi),
        )
    }

    /// Expected bound for a single length.
    pub fn expected(&self, n: usize) -> Option<(usize, &str)> {
        self.cells
            .iter()
            .find(|c| c.range.lo <= n && n <= c.range.hi)
            .map(|c| (c.range.k_max, c.cell.as_str()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellDiff {
    pub n: usize,
    pub cell: String,
    pub expected: usize,
    pub computed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundTableDiff {
    pub table: String,
    pub local_dim: u32,
    pub computed: Vec<BoundVerdict>,
    pub compressed: Vec<RangeCell>,
    pub cell_diffs: Vec<CellDiff>,
    /// The compressed computed table equals the fixture row for row.
    pub layout_matches: bool,
}

impl BoundTableDiff {
    pub fn matches(&self) -> bool {
        self.cell_diffs.is_empty() && self.layout_matches
    }
}

/// Recomputes a fixture table and diffs it cell by cell.
pub fn diff_bound_table(table: BoundTable) -> Result<BoundTableDiff> {
    let fixture = BoundFixture::bundled(table);
    let (lo, hi) = fixture.n_range();
    let computed = bound_range(fixture.local_dim, lo..=hi)?;
    let mut cell_diffs = Vec::new();
    for v in &computed {
        match fixture.expected(v.n_parties) {
            Some((k, _)) if k == v.k_max => {}
            Some((k, cell)) => cell_diffs.push(CellDiff {
                n: v.n_parties,
                cell: cell.to_string(),
                expected: k,
                computed: v.k_max,
            }),
            None => {}
        }
    }
    let compressed = compress(&computed);
    let layout_matches = compressed.len() == fixture.cells.len()
        && compressed
            .iter()
            .zip(&fixture.cells)
            .all(|(a, b)| *a == b.range);
    Ok(BoundTableDiff {
        table: table.to_string(),
        local_dim: fixture.local_dim,
        computed,
        compressed,
        cell_diffs,
        layout_matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uniform_bounds::verdict::Provenance;

    fn v(n: usize, k: usize) -> BoundVerdict {
        BoundVerdict {
            n_parties: n,
            local_dim: 3,
            k_max: k,
            provenance: Provenance::TrivialSchmidt,
            witness: None,
        }
    }

    #[test]
    fn compress_runs() {
        let cells = compress(&[v(2, 1), v(3, 1), v(4, 2), v(5, 2), v(6, 3)]);
        assert_eq!(cells.len(), 3);
        assert_eq!(cells[0].to_string(), "2-3");
        assert_eq!(cells[2].to_string(), "6");
    }

    #[test]
    fn ranges_parse() {
        assert_eq!(parse_range("84-88").unwrap(), (84, 88));
        assert_eq!(parse_range("9").unwrap(), (9, 9));
        assert!(parse_range("9-8").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn fixtures_load() {
        let t1 = BoundFixture::bundled(BoundTable::I);
        assert_eq!(t1.local_dim, 3);
        assert_eq!(t1.cells.len(), 24);
        assert_eq!(t1.n_range(), (2, 88));
        assert_eq!(t1.expected(30), Some((13, "I.12")));
        assert_eq!(BoundFixture::bundled(BoundTable::II).n_range(), (60, 161));
        assert_eq!(BoundFixture::bundled(BoundTable::III).n_range(), (180, 276));
        assert!(BoundFixture::parse("# d 3\nfoo\n").is_err());
    }
}
