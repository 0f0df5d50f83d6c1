use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::alpha::first_sign_violation;
use super::lp::shadow_lp_bound;
use crate::error::{Error, Result};
use crate::exact::{fmt_rat, Rat};

/// Which test produced a [`BoundVerdict`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    TrivialSchmidt,
    /// Sign test at index `i`.
    AlphaSign(usize),
    Scott,
    /// Qubit shadow bound, reached by the exact linear program.
    Rains,
    AmeNonexistenceTable,
}

impl Provenance {
    /// Name without the index, as used in CSV cells.
    pub fn name(&self) -> &'static str {
        match self {
            Provenance::TrivialSchmidt => "trivial-Schmidt",
            Provenance::AlphaSign(_) => "alpha-sign",
            Provenance::Scott => "scott",
            Provenance::Rains => "rains",
            Provenance::AmeNonexistenceTable => "ame-nonexistence-table",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::AlphaSign(i) => write!(f, "alpha-sign({i})"),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for Provenance {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "trivial-Schmidt" => Provenance::TrivialSchmidt,
            "scott" => Provenance::Scott,
            "rains" => Provenance::Rains,
            "ame-nonexistence-table" => Provenance::AmeNonexistenceTable,
            _ => {
                let i = s
                    .strip_prefix("alpha-sign(")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|r| r.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown provenance {s:?}")))?;
                Provenance::AlphaSign(i)
            }
        })
    }
}

impl Serialize for Provenance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Upper bound on `k` for `k`-uniform states in `(C^d)^{⊗N}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundVerdict {
    #[serde(rename = "n")]
    pub n_parties: usize,
    #[serde(rename = "d")]
    pub local_dim: u32,
    pub k_max: usize,
    pub provenance: Provenance,
    #[serde(serialize_with = "ser_witness")]
    pub witness: Option<Rat>,
}

fn ser_witness<S: Serializer>(w: &Option<Rat>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match w {
        Some(r) => s.serialize_str(&fmt_rat(r)),
        None => s.serialize_none(),
    }
}

/// `(d, N)` pairs with known AME non-existence, plus the qubit rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmeNonexistenceTable {
    pub version: u32,
    entries: BTreeMap<(u32, usize), String>,
    qubit_rule: Option<String>,
}

const AME_DATA: &str = include_str!("../../data/ame_nonexistence.txt");

/// `2m+1` for `N = 6m+ℓ`, `ℓ < 5`, else `2m+2`.
pub fn qubit_shadow_bound(n: usize) -> usize {
    let (m, l) = (n / 6, n % 6);
    if l < 5 {
        2 * m + 1
    } else {
        2 * m + 2
    }
}

impl AmeNonexistenceTable {
    /// The table shipped with the crate.
    pub fn bundled() -> &'static AmeNonexistenceTable {
        static TABLE: OnceLock<AmeNonexistenceTable> = OnceLock::new();
        TABLE.get_or_init(|| AmeNonexistenceTable::parse(AME_DATA).expect("bundled AME table"))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut version = None;
        let mut entries = BTreeMap::new();
        let mut qubit_rule = None;
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let bad = || Error::Parse(format!("AME table line {}: {raw:?}", no + 1));
            let words: Vec<&str> = line.split_whitespace().collect();
            match words.as_slice() {
                ["version", v] => version = Some(v.parse().map_err(|_| bad())?),
                ["rule", "2", "qubit-shadow-bound", src] => qubit_rule = Some(src.to_string()),
                [d, n, src] => {
                    let key = (d.parse().map_err(|_| bad())?, n.parse().map_err(|_| bad())?);
                    entries.insert(key, src.to_string());
                }
                _ => return Err(bad()),
            }
        }
        Ok(AmeNonexistenceTable {
            version: version.ok_or_else(|| Error::Parse("AME table has no version".into()))?,
            entries,
            qubit_rule,
        })
    }

    /// Source tag if `(d, N)` is covered.
    pub fn lookup(&self, d: u32, n: usize) -> Option<&str> {
        if let Some(src) = self.entries.get(&(d, n)) {
            return Some(src);
        }
        match &self.qubit_rule {
            Some(src) if d == 2 && n >= 2 && qubit_shadow_bound(n) < n / 2 => Some(src),
            _ => None,
        }
    }

    pub fn contains(&self, d: u32, n: usize) -> bool {
        self.lookup(d, n).is_some()
    }

    /// Explicit entries; the qubit rule is not expanded.
    pub fn entries(&self) -> impl Iterator<Item = (u32, usize, &str)> {
        self.entries.iter().map(|(&(d, n), s)| (d, n, s.as_str()))
    }
}

/// Condition under which AME states in `(C^d)^{⊗N}` are excluded by the
/// homogeneous Scott inequality.
pub fn scott_condition(n: usize, d: u32) -> bool {
    let d = d as usize;
    if n.is_multiple_of(2) {
        n > 2 * (d * d - 1)
    } else {
        n > 2 * d * (d + 1) - 1
    }
}

fn check_nd(n: usize, d: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::range("N", n, "N >= 2"));
    }
    if d < 2 {
        return Err(Error::range("d", d, "d >= 2"));
    }
    Ok(())
}

/// Combines the sign test, the AME table, the Scott condition and, for qubits,
/// the exact shadow linear program. Ties go to the first test in that order.
pub fn k_upper_bound(n: usize, d: u32) -> Result<BoundVerdict> {
    check_nd(n, d)?;
    let half = n / 2;
    let mut best = BoundVerdict {
        n_parties: n,
        local_dim: d,
        k_max: half,
        provenance: Provenance::TrivialSchmidt,
        witness: None,
    };
    fn offer(best: &mut BoundVerdict, k: usize, provenance: Provenance, witness: Option<Rat>) {
        if k < best.k_max {
            best.k_max = k;
            best.provenance = provenance;
            best.witness = witness;
        }
    }
    if let Some(hit) = first_sign_violation(n, d)? {
        offer(
            &mut best,
            hit.index - 1,
            Provenance::AlphaSign(hit.index),
            Some(hit.value),
        );
    }
    if half >= 1 && AmeNonexistenceTable::bundled().contains(d, n) {
        offer(&mut best, half - 1, Provenance::AmeNonexistenceTable, None);
    }
    if half >= 1 && scott_condition(n, d) {
        offer(&mut best, half - 1, Provenance::Scott, None);
    }
    if d == 2 {
        let k = shadow_lp_bound(n, d, best.k_max)?;
        offer(&mut best, k, Provenance::Rains, None);
    }
    Ok(best)
}

/// [`k_upper_bound`] for every `N` in the range, in order. Runs on the current
/// rayon pool.
pub fn bound_range(d: u32, range: RangeInclusive<usize>) -> Result<Vec<BoundVerdict>> {
    let ns: Vec<usize> = range.collect();
    ns.par_iter().map(|&n| k_upper_bound(n, d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn provenance_text_round_trip() {
        for p in [
            Provenance::TrivialSchmidt,
            Provenance::AlphaSign(7),
            Provenance::Scott,
            Provenance::Rains,
            Provenance::AmeNonexistenceTable,
        ] {
            assert_eq!(p.to_string().parse::<Provenance>().unwrap(), p);
        }
        assert!("alpha-sign(x)".parse::<Provenance>().is_err());
    }

    #[test]
    fn bundled_table_contents() {
        let t = AmeNonexistenceTable::bundled();
        assert_eq!(t.version, 1);
        for n in [8, 12, 13, 14, 16, 17, 19, 21, 23] {
            assert!(t.contains(3, n));
        }
        assert_eq!(t.entries().filter(|e| e.0 == 4).count(), 12);
        assert_eq!(t.entries().filter(|e| e.0 == 5).count(), 6);
        assert!(!t.contains(3, 9));
        // qubits: N = 4 and every N >= 8
        let qubit: Vec<usize> = (2..30).filter(|&n| t.contains(2, n)).collect();
        assert_eq!(qubit, [4].into_iter().chain(8..30).collect::<Vec<_>>());
    }

    #[test]
    fn table_rejects_garbage() {
        assert!(AmeNonexistenceTable::parse("3 8 x\n").is_err());
        assert!(AmeNonexistenceTable::parse("version 1\n3 x y\n").is_err());
    }

    #[test]
    fn scott_condition_thresholds() {
        assert!(!scott_condition(16, 3) && scott_condition(18, 3));
        assert!(!scott_condition(23, 3) && scott_condition(25, 3));
        assert!(scott_condition(8, 2) && !scott_condition(11, 2));
    }

    #[test]
    fn verdict_examples() {
        assert_eq!(k_upper_bound(8, 3).unwrap().k_max, 3);
        assert_eq!(k_upper_bound(10, 2).unwrap().k_max, 3);
        let v = k_upper_bound(14, 3).unwrap();
        assert_eq!(
            (v.k_max, v.provenance),
            (6, Provenance::AmeNonexistenceTable)
        );
        assert!(v.witness.is_none());
        let v = k_upper_bound(3, 3).unwrap();
        assert_eq!((v.k_max, v.provenance), (1, Provenance::TrivialSchmidt));
        assert!(k_upper_bound(1, 3).is_err());
    }

    #[test]
    fn witness_iff_alpha_sign() {
        for v in bound_range(3, 2..=40).unwrap() {
            assert!(v.k_max <= v.n_parties / 2);
            assert_eq!(
                v.witness.is_some(),
                matches!(v.provenance, Provenance::AlphaSign(_))
            );
            if let Provenance::AlphaSign(i) = v.provenance {
                assert_eq!(v.k_max, i - 1);
            }
        }
    }

    #[test]
    fn verdict_json() {
        let v = k_upper_bound(14, 3).unwrap();
        let js = serde_json::to_value(&v).unwrap();
        assert_eq!(js["provenance"], "ame-nonexistence-table");
        assert_eq!(js["k_max"], 6);
        assert!(js["witness"].is_null());
    }
}
