//! Subset inequality for AME states in heterogeneous systems.
//!
//! For a `(⌊N/2⌋+2)`-subset `A`,
//! `(∏_A d_i² / ∏ d_i)(1 - Σ_A 1/d_i²) + ⌊N/2⌋ + 1 < 0` excludes AME states.
//! The value depends only on the multiset of dimensions in `A`, which is what
//! the search enumerates.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use super::DimensionProfile;
use crate::error::{Error, Result};
use crate::exact::{serde_rat, Rat};

/// Default cap on the number of candidates [`scott_search`] may evaluate.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScottWitness {
    /// Zero-based party indices, ascending.
    pub subset: Vec<usize>,
    #[serde(with = "serde_rat")]
    pub lhs: Rat,
}

fn scott_value(profile: &DimensionProfile, dims_in_a: impl Iterator<Item = u32> + Clone) -> Rat {
    let half = profile.n_parties() / 2;
    let sq: BigInt = dims_in_a.clone().map(|d| BigInt::from(d) * d).product();
    let recip: Rat = dims_in_a
        .map(|d| Rat::new(BigInt::one(), BigInt::from(d) * d))
        .sum();
    Rat::new(sq, profile.total_dim()) * (Rat::one() - recip)
        + Rat::from_integer(BigInt::from(half + 1))
}

/// Left-hand side of the inequality for the subset `A` (zero-based indices).
pub fn scott_check(profile: &DimensionProfile, subset: &[usize]) -> Result<Rat> {
    let n = profile.n_parties();
    let size = n / 2 + 2;
    if subset.len() != size {
        return Err(Error::range("|A|", subset.len(), format!("exactly {size}")));
    }
    let mut seen = vec![false; n];
    for &i in subset {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return Err(Error::Invalid(format!(
                "subset must hold distinct indices below {n}, got {subset:?}"
            )));
        }
    }
    Ok(scott_value(
        profile,
        subset.iter().map(|&i| profile.dims()[i]),
    ))
}

/// Distinct dimensions, largest first, with the parties holding each.
fn dimension_classes(profile: &DimensionProfile) -> Vec<(u32, Vec<usize>)> {
    let mut classes: Vec<(u32, Vec<usize>)> = Vec::new();
    for (i, &d) in profile.dims().iter().enumerate() {
        match classes.iter_mut().find(|(e, _)| *e == d) {
            Some((_, idx)) => idx.push(i),
            None => classes.push((d, vec![i])),
        }
    }
    classes.sort_by(|a, b| b.0.cmp(&a.0));
    classes
}

/// Number of ways to pick `size` parties up to permuting equal dimensions.
fn count_choices(counts: &[usize], size: usize) -> u128 {
    let mut ways = vec![0u128; size + 1];
    ways[0] = 1;
    for &c in counts {
        for s in (0..=size).rev() {
            let mut acc = 0u128;
            for t in 1..=c.min(s) {
                acc = acc.saturating_add(ways[s - t]);
            }
            ways[s] = ways[s].saturating_add(acc);
        }
    }
    ways[size]
}

/// Searches all `(⌊N/2⌋+2)`-subsets, one per multiset of dimensions, in
/// lexicographic order of the per-dimension counts with the largest dimensions
/// taken first. Returns the first negative subset; each dimension contributes
/// its lowest-indexed parties. Exhausting `budget` candidates without a hit is
/// an error, never a silent `None`.
pub fn scott_search(profile: &DimensionProfile, budget: u128) -> Result<Option<ScottWitness>> {
    let n = profile.n_parties();
    let size = n / 2 + 2;
    if size > n {
        return Ok(None);
    }
    let classes = dimension_classes(profile);
    let counts: Vec<usize> = classes.iter().map(|c| c.1.len()).collect();
    let total = count_choices(&counts, size);
    // suffix[i]: parties available in classes i..
    let mut suffix = vec![0usize; counts.len() + 1];
    for i in (0..counts.len()).rev() {
        suffix[i] = suffix[i + 1] + counts[i];
    }

    let mut search = Search {
        profile,
        classes: &classes,
        suffix: &suffix,
        take: vec![0; counts.len()],
        evaluated: 0,
        total,
        budget,
    };
    search.walk(0, size)
}

struct Search<'a> {
    profile: &'a DimensionProfile,
    classes: &'a [(u32, Vec<usize>)],
    suffix: &'a [usize],
    take: Vec<usize>,
    evaluated: u128,
    total: u128,
    budget: u128,
}

impl Search<'_> {
    fn walk(&mut self, level: usize, remaining: usize) -> Result<Option<ScottWitness>> {
        if level == self.classes.len() {
            return self.leaf();
        }
        let hi = self.classes[level].1.len().min(remaining);
        let lo = remaining.saturating_sub(self.suffix[level + 1]);
        for t in (lo..=hi).rev() {
            self.take[level] = t;
            if let Some(w) = self.walk(level + 1, remaining - t)? {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }

    fn leaf(&mut self) -> Result<Option<ScottWitness>> {
        if self.evaluated == self.budget {
            return Err(Error::BudgetExceeded {
                evaluated: self.evaluated,
                total: self.total,
                budget: self.budget,
            });
        }
        self.evaluated += 1;
        let dims = self
            .classes
            .iter()
            .zip(&self.take)
            .flat_map(|(c, &t)| std::iter::repeat_n(c.0, t));
        let value = scott_value(self.profile, dims);
        if !value.is_negative() {
            return Ok(None);
        }
        let mut subset: Vec<usize> = self
            .classes
            .iter()
            .zip(&self.take)
            .flat_map(|(c, &t)| c.1[..t].iter().copied())
            .collect();
        subset.sort_unstable();
        Ok(Some(ScottWitness { subset, lhs: value }))
    }
}

/// Smallest `n` for which the closed-form Scott argument excludes AME states in
/// `C^{d1} ⊗ (C^{d2})^{⊗2n}`.
pub fn pair_family_threshold(d1: u32, d2: u32) -> Result<usize> {
    if d1 < 2 || d2 < 2 {
        return Err(Error::range("local dimension", d1.min(d2), "d >= 2"));
    }
    let (a, b) = (d1 as i64, d2 as i64);
    if a > b * b {
        return Err(Error::InfeasibleProfile(format!(
            "d1 = {d1} exceeds d2^2 = {}",
            b * b
        )));
    }
    let bound = if a < b {
        Rat::new((b.pow(4) - a).into(), (b * b - a).into()) - Rat::from_integer(2.into())
    } else {
        Rat::new((b * b * (a + 1)).into(), a.into()) - Rat::one()
    };
    // smallest integer strictly above the bound, and at least 1
    let n: BigInt = bound.floor().to_integer() + 1;
    Ok(if n < BigInt::one() {
        1
    } else {
        n.try_into().expect("threshold fits in usize")
    })
}

/// The two structured subsets behind [`pair_family_threshold`]: the `d1` party
/// with `n+1` of the others, and `n+2` of the others.
pub(crate) fn pair_family_witness(profile: &DimensionProfile) -> Option<ScottWitness> {
    let (d1, _, _) = profile.as_one_plus_pairs()?;
    let lone = profile.dims().iter().position(|&d| d == d1)?;
    let others: Vec<usize> = (0..profile.n_parties()).filter(|&i| i != lone).collect();
    let size = profile.n_parties() / 2 + 2;
    let mut with_lone: Vec<usize> = std::iter::once(lone)
        .chain(others[..size - 1].iter().copied())
        .collect();
    with_lone.sort_unstable();
    let without: Vec<usize> = others[..size].to_vec();
    [with_lone, without].into_iter().find_map(|subset| {
        let lhs = scott_check(profile, &subset).ok()?;
        lhs.is_negative().then_some(ScottWitness { subset, lhs })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    fn prof(s: &str) -> DimensionProfile {
        s.parse().unwrap()
    }

    #[test]
    fn check_examples() {
        let p = DimensionProfile::homogeneous(8, 2).unwrap();
        assert_eq!(scott_check(&p, &[0, 1, 2, 3, 4, 5]).unwrap(), rat(-3, 1));
        let p = DimensionProfile::homogeneous(4, 2).unwrap();
        assert_eq!(scott_check(&p, &[0, 1, 2, 3]).unwrap(), rat(3, 1));
        assert!(matches!(
            scott_check(&p, &[0, 1, 2]),
            Err(Error::Range { .. })
        ));
        let p = DimensionProfile::homogeneous(8, 2).unwrap();
        assert!(scott_check(&p, &[0, 0, 1, 2, 3, 4]).is_err());
        assert!(scott_check(&p, &[0, 1, 2, 3, 4, 9]).is_err());
    }

    #[test]
    fn search_examples() {
        assert!(scott_search(&prof("3x1,2x10"), DEFAULT_BUDGET)
            .unwrap()
            .is_some());
        assert!(scott_search(
            &DimensionProfile::homogeneous(43, 3).unwrap(),
            DEFAULT_BUDGET
        )
        .unwrap()
        .is_some());
        assert!(scott_search(&prof("2x2"), DEFAULT_BUDGET)
            .unwrap()
            .is_none());
        assert!(scott_search(&prof("2x4"), DEFAULT_BUDGET)
            .unwrap()
            .is_none());
    }

    #[test]
    fn search_budget() {
        let p = prof("2x1,3x1,4x1,5x1,6x1,7x1,8x1,9x1,10x1");
        let total = count_choices(&[1; 9], 6);
        assert_eq!(total, 84);
        match scott_search(&p, 3) {
            Err(Error::BudgetExceeded {
                evaluated,
                total,
                budget,
            }) => {
                assert_eq!((evaluated, total, budget), (3, 84, 3));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn homogeneous_matches_scott_condition() {
        use crate::uniform_bounds::scott_condition;
        for d in 2..=6u32 {
            for n in 2..=30usize {
                let p = DimensionProfile::homogeneous(n, d).unwrap();
                let found = scott_search(&p, DEFAULT_BUDGET).unwrap().is_some();
                assert_eq!(found, scott_condition(n, d), "d={d} N={n}");
            }
        }
    }

    #[test]
    fn thresholds() {
        assert_eq!(pair_family_threshold(3, 2).unwrap(), 5);
        assert_eq!(pair_family_threshold(2, 3).unwrap(), 10);
        assert_eq!(pair_family_threshold(2, 4).unwrap(), 17);
        assert!(matches!(
            pair_family_threshold(5, 2),
            Err(Error::InfeasibleProfile(_))
        ));
    }

    #[test]
    fn structured_witness_at_threshold() {
        for (d1, d2) in [(3u32, 2u32), (2, 3), (9, 3), (2, 4), (16, 4)] {
            let t = pair_family_threshold(d1, d2).unwrap();
            let mut dims = vec![d1];
            dims.extend(std::iter::repeat_n(d2, 2 * t));
            let p = DimensionProfile::new(dims).unwrap();
            assert!(pair_family_witness(&p).is_some(), "({d1},{d2})");
            let mut dims = vec![d1];
            dims.extend(std::iter::repeat_n(d2, 2 * (t - 1)));
            let p = DimensionProfile::new(dims).unwrap();
            assert!(pair_family_witness(&p).is_none(), "({d1},{d2}) below");
        }
    }

    /// Exhaustive over ordinary subsets, for small profiles.
    fn brute_force(p: &DimensionProfile) -> bool {
        let n = p.n_parties();
        let size = n / 2 + 2;
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == size)
            .any(|m| {
                let s: Vec<usize> = (0..n).filter(|i| m >> i & 1 == 1).collect();
                scott_check(p, &s).unwrap().is_negative()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn permutation_invariant(dims in proptest::collection::vec(2u32..6, 4..10), seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let p = DimensionProfile::new(dims.clone()).unwrap();
            let size = p.n_parties() / 2 + 2;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut perm: Vec<usize> = (0..p.n_parties()).collect();
            perm.shuffle(&mut rng);
            let subset: Vec<usize> = perm[..size].to_vec();
            let permuted: Vec<u32> = perm.iter().map(|&i| dims[i]).collect();
            let q = DimensionProfile::new(permuted).unwrap();
            let image: Vec<usize> = (0..size).collect();
            prop_assert_eq!(scott_check(&p, &subset).unwrap(), scott_check(&q, &image).unwrap());
        }

        #[test]
        fn search_is_complete(dims in proptest::collection::vec(2u32..7, 2..12)) {
            let p = DimensionProfile::new(dims).unwrap();
            let hit = scott_search(&p, DEFAULT_BUDGET).unwrap();
            prop_assert_eq!(hit.is_some(), brute_force(&p));
            if let Some(w) = hit {
                prop_assert_eq!(scott_check(&p, &w.subset).unwrap(), w.lhs.clone());
                prop_assert!(w.lhs.is_negative());
            }
        }
    }
}
