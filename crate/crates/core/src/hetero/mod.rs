//! AME non-existence tests for systems with unequal local dimensions.

pub mod scott;
pub mod shadow;
pub mod table4;
pub mod verdict;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use scott::{pair_family_threshold, scott_check, scott_search, ScottWitness, DEFAULT_BUDGET};
pub use shadow::{ame_purities, hetero_shadow, HeteroShadow};
pub use table4::{diff_table4, Table4Diff, Table4Row};
pub use verdict::{ame_verdict, AmeVerdict, Certificate, ScottRoute};

/// Local dimensions `d_1..d_N` in party order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct DimensionProfile {
    dims: Vec<u32>,
}

impl DimensionProfile {
    pub fn new(dims: Vec<u32>) -> Result<Self> {
        if dims.len() < 2 {
            return Err(Error::range("N", dims.len(), "N >= 2"));
        }
        if let Some(&d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::range("local dimension", d, "d >= 2"));
        }
        Ok(DimensionProfile { dims })
    }

    pub fn homogeneous(n: usize, d: u32) -> Result<Self> {
        DimensionProfile::new(vec![d; n])
    }

    /// Parses `"<dim>x<count>,..."`, e.g. `"3x1,2x10"`.
    pub fn parse_compact(s: &str) -> Result<Self> {
        let mut dims = Vec::new();
        for term in s.split(',') {
            let term = term.trim();
            let bad = || {
                Error::Parse(format!(
                    "bad profile term {term:?} (expected <dim>x<count>)"
                ))
            };
            let (d, c) = term.split_once(['x', 'X']).ok_or_else(bad)?;
            let d: u32 = d.trim().parse().map_err(|_| bad())?;
            let c: usize = c.trim().parse().map_err(|_| bad())?;
            if c == 0 {
                return Err(bad());
            }
            dims.extend(std::iter::repeat_n(d, c));
        }
        DimensionProfile::new(dims)
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn n_parties(&self) -> usize {
        self.dims.len()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.dims.iter().all(|&d| d == self.dims[0])
    }

    pub fn total_dim(&self) -> BigInt {
        self.dims.iter().map(|&d| BigInt::from(d)).product()
    }

    /// Product of the dimensions at the given indices.
    pub fn subset_dim(&self, subset: &[usize]) -> BigInt {
        subset
            .iter()
            .fold(BigInt::one(), |acc, &i| acc * self.dims[i])
    }

    /// A `⌊N/2⌋`-subset whose dimension exceeds that of its complement, if any.
    /// Such a subset rules out any AME state by the Schmidt decomposition.
    pub fn schmidt_violation(&self) -> Option<Vec<usize>> {
        let mut order: Vec<usize> = (0..self.n_parties()).collect();
        // largest dims first, lowest index first among equals
        order.sort_by(|&a, &b| self.dims[b].cmp(&self.dims[a]).then(a.cmp(&b)));
        let mut subset: Vec<usize> = order[..self.n_parties() / 2].to_vec();
        subset.sort_unstable();
        let inside = self.subset_dim(&subset);
        (&inside * &inside > self.total_dim()).then_some(subset)
    }

    pub fn schmidt_feasible(&self) -> bool {
        self.schmidt_violation().is_none()
    }

    /// `(d1, d2, n)` when the profile is one `d1` party plus `2n` parties of a
    /// different dimension `d2`, in any order.
    pub fn as_one_plus_pairs(&self) -> Option<(u32, u32, usize)> {
        let n = self.n_parties();
        if n < 3 || n.is_multiple_of(2) {
            return None;
        }
        let mut distinct: Vec<u32> = self.dims.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != 2 {
            return None;
        }
        let count = |d: u32| self.dims.iter().filter(|&&x| x == d).count();
        let (a, b) = (distinct[0], distinct[1]);
        match (count(a), count(b)) {
            (1, m) => Some((a, b, m / 2)),
            (m, 1) => Some((b, a, m / 2)),
            _ => None,
        }
    }
}

impl TryFrom<Vec<u32>> for DimensionProfile {
    type Error = Error;
    fn try_from(dims: Vec<u32>) -> Result<Self> {
        DimensionProfile::new(dims)
    }
}

impl From<DimensionProfile> for Vec<u32> {
    fn from(p: DimensionProfile) -> Self {
        p.dims
    }
}

impl FromStr for DimensionProfile {
    type Err = Error;
    /// Accepts a JSON array or the compact form.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim_start().starts_with('[') {
            let dims: Vec<u32> =
                serde_json::from_str(s).map_err(|e| Error::Parse(format!("profile JSON: {e}")))?;
            DimensionProfile::new(dims)
        } else {
            DimensionProfile::parse_compact(s)
        }
    }
}

/// Compact form, grouping runs of equal dimensions.
impl fmt::Display for DimensionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.dims.len() {
            let mut j = i;
            while j < self.dims.len() && self.dims[j] == self.dims[i] {
                j += 1;
            }
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{}x{}", self.dims[i], j - i)?;
            first = false;
            i = j;
        }
        Ok(())
    }
}
