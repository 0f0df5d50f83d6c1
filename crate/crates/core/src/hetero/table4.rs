//! The `C^{d1} ⊗ (C^{d2})^{⊗2n}` table: closed-form thresholds and the extra
//! lengths certified by the shadow coefficients.

use serde::Serialize;

use super::scott::pair_family_threshold;
use super::shadow::hetero_shadow;
use super::DimensionProfile;
use crate::error::{Error, Result};
use crate::uniform_bounds::tables::parse_range;

const TABLE4_DATA: &str = include_str!("../../data/table_iv.csv");

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table4Row {
    pub d1_lo: u32,
    pub d1_hi: u32,
    pub d2: u32,
    pub threshold: usize,
    pub shadow_n: Vec<usize>,
    pub cell: String,
}

pub fn parse_table4(text: &str) -> Result<Vec<Table4Row>> {
    let mut rows = Vec::new();
    let mut header = false;
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !header {
            if line != "d1_range,d2,threshold,shadow_n,cell" {
                return Err(Error::Parse(format!("unexpected table header {line:?}")));
            }
            header = true;
            continue;
        }
        let bad = || Error::Parse(format!("bad table row {line:?}"));
        let f: Vec<&str> = line.split(',').collect();
        let [r, d2, t, shadow, cell] = f.as_slice() else {
            return Err(bad());
        };
        let (lo, hi) = parse_range(r)?;
        rows.push(Table4Row {
            d1_lo: lo as u32,
            d1_hi: hi as u32,
            d2: d2.trim().parse().map_err(|_| bad())?,
            threshold: t.trim().parse().map_err(|_| bad())?,
            shadow_n: shadow
                .split_whitespace()
                .map(|v| v.parse().map_err(|_| bad()))
                .collect::<Result<_>>()?,
            cell: cell.trim().to_string(),
        });
    }
    Ok(rows)
}

pub fn bundled_table4() -> Vec<Table4Row> {
    parse_table4(TABLE4_DATA).expect("bundled table")
}

/// `n` in `1..threshold` with some negative shadow coefficient for
/// `C^{d1} ⊗ (C^{d2})^{⊗2n}`.
pub fn shadow_certified(d1: u32, d2: u32, below: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for n in 1..below {
        let mut dims = vec![d1];
        dims.extend(std::iter::repeat_n(d2, 2 * n));
        let profile = DimensionProfile::new(dims)?;
        if !hetero_shadow(&profile)?.all_nonnegative() {
            out.push(n);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table4Entry {
    pub d1: u32,
    pub d2: u32,
    pub cell: String,
    pub expected_threshold: usize,
    pub threshold: usize,
    pub expected_shadow_n: Vec<usize>,
    pub shadow_n: Vec<usize>,
}

impl Table4Entry {
    pub fn matches(&self) -> bool {
        self.threshold == self.expected_threshold && self.shadow_n == self.expected_shadow_n
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table4Diff {
    pub entries: Vec<Table4Entry>,
}

impl Table4Diff {
    pub fn mismatches(&self) -> impl Iterator<Item = &Table4Entry> {
        self.entries.iter().filter(|e| !e.matches())
    }

    pub fn matches(&self) -> bool {
        self.mismatches().next().is_none()
    }
}

/// Recomputes every `(d1, d2)` pair of the bundled table.
pub fn diff_table4() -> Result<Table4Diff> {
    let mut entries = Vec::new();
    for row in bundled_table4() {
        for d1 in row.d1_lo..=row.d1_hi {
            let threshold = pair_family_threshold(d1, row.d2)?;
            entries.push(Table4Entry {
                d1,
                d2: row.d2,
                cell: row.cell.clone(),
                expected_threshold: row.threshold,
                threshold,
                expected_shadow_n: row.shadow_n.clone(),
                shadow_n: shadow_certified(d1, row.d2, threshold)?,
            });
        }
    }
    Ok(Table4Diff { entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_loads() {
        let rows = bundled_table4();
        assert_eq!(rows.len(), 10);
        assert_eq!(rows[0].shadow_n, vec![4]);
        assert_eq!((rows[9].d1_lo, rows[9].d1_hi, rows[9].d2), (9, 16, 4));
        assert!(parse_table4("x\n").is_err());
    }

    #[test]
    fn first_row() {
        assert_eq!(shadow_certified(3, 2, 5).unwrap(), vec![4]);
    }
}
